"""Explicit matrix models of det^m (x) M_{k_0} (x) ... (x) M_{k_{g-1}}^[g-1]
and of the four intertwining-operator families between them.

Basis convention: factor i (twist i) of degree k is spanned by the
monomials X^(k-j) Y^j for j = 0..k, ascending j; the tensor basis is the
mixed-radix product with factor 0 slowest.  The group acts on degree-one
monomials by (a b; c d) . X = aX + cY, (a b; c d) . Y = bX + dY, with
sigma^i applied to the matrix entries before the degree-k action of
factor i.  With these conventions every matrix is bit-reproducible.

A LinMap A from src to dst with determinant twist delta satisfies the
equivariance law rho_dst(gamma) . A = det(gamma)^delta . A . rho_src(gamma);
equivalently the source carries an extra det^delta.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg
from .field import FieldCtx, Mat2, PrimePower
from .k0 import RawTerm, VirtualRep, normalize


class DimensionLimitError(ValueError):
    """A requested explicit module exceeds the configured dimension cap."""


def max_dim() -> int:
    return int(os.environ.get("GL2MODREP_MAX_DIM", "2048"))


@dataclass(frozen=True)
class ModuleSpec:
    """det^m times one symmetric-power factor per twist 0..g-1."""

    pp: PrimePower
    m: int
    degrees: tuple[int, ...]

    def __post_init__(self):
        if len(self.degrees) != self.pp.g or any(k < 0 for k in self.degrees):
            raise ValueError(f"need {self.pp.g} non-negative degrees, got {self.degrees}")

    @property
    def dim(self) -> int:
        d = 1
        for k in self.degrees:
            d *= k + 1
        return d

    def dims(self) -> list[int]:
        return [k + 1 for k in self.degrees]

    def check_dim(self):
        if self.dim > max_dim():
            raise DimensionLimitError(
                f"module dimension {self.dim} exceeds GL2MODREP_MAX_DIM={max_dim()}")
        return self

    def k0_class(self) -> VirtualRep:
        return normalize(self.pp, [RawTerm(1, self.m, self.degrees)])

    def index(self, js) -> int:
        idx = 0
        for k, j in zip(self.degrees, js):
            idx = idx * (k + 1) + j
        return idx

    def unravel(self, idx: int):
        js = []
        for k in reversed(self.degrees):
            js.append(idx % (k + 1))
            idx //= k + 1
        return tuple(reversed(js))


@dataclass(frozen=True)
class LinMap:
    src: ModuleSpec
    dst: ModuleSpec
    mat: np.ndarray  # (dst.dim, src.dim) of F_q encodings
    det_twist: int

    def __post_init__(self):
        if self.mat.shape != (self.dst.dim, self.src.dim):
            raise ValueError(f"matrix shape {self.mat.shape} does not match specs "
                             f"({self.dst.dim}, {self.src.dim})")

    def to_json_obj(self) -> dict:
        return {
            "p": self.src.pp.p,
            "g": self.src.pp.g,
            "src": {"m": self.src.m, "ks": list(self.src.degrees)},
            "dst": {"m": self.dst.m, "ks": list(self.dst.degrees)},
            "det_twist": self.det_twist,
            "matrix": [int(x) for x in self.mat.reshape(-1)],
        }


# ---------------------------------------------------------------------------
# group actions


@lru_cache(maxsize=None)
def _sym_power_cached(ctx: FieldCtx, gamma: Mat2, k: int):
    """Matrix of the degree-k symmetric power action of gamma."""
    a, b, c, d = gamma
    if ctx.mat_det(gamma) == 0:
        raise ValueError("singular matrix has no module action")
    out = linalg.zeros((k + 1, k + 1))
    for j in range(k + 1):
        # (aX + cY)^(k-j) (bX + dY)^j, coefficients by iterated convolution
        poly = [1]
        for _ in range(k - j):
            nxt = [0] * (len(poly) + 1)
            for t, cf in enumerate(poly):
                nxt[t] = ctx.add(nxt[t], ctx.mul(cf, a))
                nxt[t + 1] = ctx.add(nxt[t + 1], ctx.mul(cf, c))
            poly = nxt
        for _ in range(j):
            nxt = [0] * (len(poly) + 1)
            for t, cf in enumerate(poly):
                nxt[t] = ctx.add(nxt[t], ctx.mul(cf, b))
                nxt[t + 1] = ctx.add(nxt[t + 1], ctx.mul(cf, d))
            poly = nxt
        for t, cf in enumerate(poly):
            out[t, j] = cf
    return out


def _factor_matrices(ctx: FieldCtx, spec: ModuleSpec, gamma: Mat2):
    return [_sym_power_cached(ctx, ctx.mat_frob(gamma, i), k)
            for i, k in enumerate(spec.degrees)]


def action_matrix(ctx: FieldCtx, spec: ModuleSpec, gamma: Mat2) -> np.ndarray:
    """Dense matrix of gamma on spec (includes the det^m scalar)."""
    spec.check_dim()
    ft = ctx.tables()
    out = linalg.kron(ft, _factor_matrices(ctx, spec, gamma))
    scal = ctx.pow(ctx.mat_det(gamma), spec.m)
    if scal != 1:
        out = ft.mul[scal, out]
    return out


def action_apply(ctx: FieldCtx, spec: ModuleSpec, gamma: Mat2, v: np.ndarray) -> np.ndarray:
    """rho_spec(gamma) @ v without forming the dense action matrix."""
    ft = ctx.tables()
    out = linalg.kron_apply(ft, _factor_matrices(ctx, spec, gamma), v)
    scal = ctx.pow(ctx.mat_det(gamma), spec.m)
    if scal != 1:
        out = ft.mul[scal, out]
    return out


def action_apply_right(ctx: FieldCtx, spec: ModuleSpec, gamma: Mat2, v: np.ndarray) -> np.ndarray:
    """v @ rho_spec(gamma), via transposed factors on the column index."""
    ft = ctx.tables()
    mats = [m.T for m in _factor_matrices(ctx, spec, gamma)]
    out = linalg.kron_apply(ft, mats, v.T).T
    scal = ctx.pow(ctx.mat_det(gamma), spec.m)
    if scal != 1:
        out = ft.mul[scal, out]
    return out


# ---------------------------------------------------------------------------
# operator constructors (matrices are built column-sparsely)


def _from_columns(src: ModuleSpec, dst: ModuleSpec, cols, det_twist: int) -> LinMap:
    dst.check_dim()
    mat = linalg.zeros((dst.dim, src.dim))
    ctx_p = src.pp.p
    for cidx, entries in enumerate(cols):
        for ridx, cf in entries:
            cf %= ctx_p
            if cf:
                mat[ridx, cidx] = cf  # prime-subfield scalars encode as themselves
    return LinMap(src, dst, mat, det_twist)


def _op_columns_theta(pp: PrimePower, degrees, alpha, beta):
    g = pp.g
    P = pp.p ** (g - beta)
    tgt = list(degrees)
    tgt[alpha] += 1
    tgt[(alpha + beta) % g] += P
    src = ModuleSpec(pp, 0, tuple(degrees))
    dst = ModuleSpec(pp, 0, tuple(tgt))
    cols = []
    for idx in range(src.dim):
        js = list(src.unravel(idx))
        out = []
        j2 = list(js)
        j2[(alpha + beta) % g] += P  # X_a * Y_{a+b}^P
        out.append((dst.index(j2), 1))
        j3 = list(js)
        j3[alpha] += 1  # -Y_a * X_{a+b}^P
        out.append((dst.index(j3), -1))
        cols.append(out)
    return src, dst, cols


def theta_op(ctx_or_pp, degrees, alpha: int, beta: int) -> LinMap:
    """Multiplication by X (x) Y^(p^(g-beta)) - Y (x) X^(p^(g-beta)) between
    the factors at twists alpha and alpha+beta; det twist p^alpha."""
    pp = _pp_of(ctx_or_pp)
    g = pp.g
    if g < 2:
        raise ValueError("two-factor operators need g > 1")
    if not (0 <= alpha <= g - 1):
        raise ValueError(f"alpha={alpha} out of range [0, {g - 1}]")
    if not (1 <= beta <= g - 1):
        raise ValueError(f"beta={beta} out of range [1, {g - 1}]")
    src, dst, cols = _op_columns_theta(pp, tuple(degrees), alpha, beta)
    return _from_columns(src, dst, cols, pp.p ** alpha)


def _op_columns_dickson(pp: PrimePower, degrees, alpha):
    q = pp.q
    tgt = list(degrees)
    tgt[alpha] += q + 1
    src = ModuleSpec(pp, 0, tuple(degrees))
    dst = ModuleSpec(pp, 0, tuple(tgt))
    cols = []
    for idx in range(src.dim):
        js = list(src.unravel(idx))
        j2 = list(js)
        j2[alpha] += q  # X * Y^q
        j3 = list(js)
        j3[alpha] += 1  # -X^q * Y
        cols.append([(dst.index(j2), 1), (dst.index(j3), -1)])
    return src, dst, cols


def dickson_op(ctx_or_pp, degrees, alpha: int) -> LinMap:
    """Multiplication by the classical degree-(q+1) invariant at twist alpha."""
    pp = _pp_of(ctx_or_pp)
    if not (0 <= alpha <= pp.g - 1):
        raise ValueError(f"alpha={alpha} out of range [0, {pp.g - 1}]")
    src, dst, cols = _op_columns_dickson(pp, tuple(degrees), alpha)
    return _from_columns(src, dst, cols, pp.p ** alpha)


def _op_columns_d(pp: PrimePower, degrees, alpha, beta):
    g = pp.g
    P = pp.p ** (g - beta)
    tgt = list(degrees)
    tgt[alpha] -= 1
    tgt[(alpha + beta) % g] += P
    if tgt[alpha] < 0:
        tgt[alpha] = 0  # degree-0 source factor: the zero map into a stand-in target
        zero_src = True
    else:
        zero_src = False
    src = ModuleSpec(pp, 0, tuple(degrees))
    dst = ModuleSpec(pp, 0, tuple(tgt))
    cols = []
    k = degrees[alpha]
    for idx in range(src.dim):
        js = list(src.unravel(idx))
        out = []
        if not zero_src:
            j = js[alpha]
            if (k - j) % pp.p:
                # d/dX (x) X^P: both Y-exponents unchanged
                out.append((dst.index(js), k - j))
            if j % pp.p:
                j3 = list(js)
                j3[alpha] -= 1
                j3[(alpha + beta) % g] += P  # d/dY (x) Y^P
                out.append((dst.index(j3), j))
        cols.append(out)
    return src, dst, cols


def d_op(ctx_or_pp, degrees, alpha: int, beta: int) -> LinMap:
    """The derivation d/dX (x) X^(p^(g-beta)) + d/dY (x) Y^(p^(g-beta))
    between the factors at twists alpha and alpha+beta; no det twist."""
    pp = _pp_of(ctx_or_pp)
    g = pp.g
    if g < 2:
        raise ValueError("two-factor operators need g > 1")
    if not (0 <= alpha <= g - 1):
        raise ValueError(f"alpha={alpha} out of range [0, {g - 1}]")
    if not (1 <= beta <= g - 1):
        raise ValueError(f"beta={beta} out of range [1, {g - 1}]")
    src, dst, cols = _op_columns_d(pp, tuple(degrees), alpha, beta)
    return _from_columns(src, dst, cols, 0)


def _op_columns_d_classical(pp: PrimePower, degrees, alpha):
    q = pp.q
    tgt = list(degrees)
    tgt[alpha] += q - 1
    src = ModuleSpec(pp, 0, tuple(degrees))
    dst = ModuleSpec(pp, 0, tuple(tgt))
    cols = []
    k = degrees[alpha]
    for idx in range(src.dim):
        js = list(src.unravel(idx))
        out = []
        j = js[alpha]
        if (k - j) % pp.p:
            # X^q d/dX keeps the Y-exponent
            out.append((dst.index(js), k - j))
        if j % pp.p:
            j3 = list(js)
            j3[alpha] += q - 1  # Y^q d/dY: Y-exponent j-1+q
            out.append((dst.index(j3), j))
        cols.append(out)
    return src, dst, cols


def d_classical_op(ctx_or_pp, degrees, alpha: int) -> LinMap:
    """The single-factor derivation X^q d/dX + Y^q d/dY at twist alpha."""
    pp = _pp_of(ctx_or_pp)
    if not (0 <= alpha <= pp.g - 1):
        raise ValueError(f"alpha={alpha} out of range [0, {pp.g - 1}]")
    src, dst, cols = _op_columns_d_classical(pp, tuple(degrees), alpha)
    return _from_columns(src, dst, cols, 0)


def _pp_of(ctx_or_pp) -> PrimePower:
    if isinstance(ctx_or_pp, PrimePower):
        return ctx_or_pp
    return ctx_or_pp.ppow


# ---------------------------------------------------------------------------
# verification and ranks


def check_equivariance(ctx: FieldCtx, lm: LinMap, gens=None) -> bool:
    """rho_dst(gamma) A == det(gamma)^delta A rho_src(gamma) on generators.

    Sufficient by multiplicativity once the generators generate the group.
    """
    if lm.mat.shape != (lm.dst.dim, lm.src.dim):
        raise ValueError("matrix/spec shape mismatch")
    ft = ctx.tables()
    for gamma in gens or ctx.gl2_generators():
        lhs = action_apply(ctx, lm.dst, gamma, lm.mat)
        rhs = action_apply_right(ctx, lm.src, gamma, lm.mat)
        scal = ctx.pow(ctx.mat_det(gamma), lm.det_twist)
        if scal != 1:
            rhs = ft.mul[scal, rhs]
        if not np.array_equal(lhs, rhs):
            return False
    return True


def rank(ctx: FieldCtx, lm: LinMap) -> int:
    # encodings below p are prime-field scalars; rank is stable under field
    # extension, so sparse elimination mod p decides it (all operator
    # constructors emit such matrices)
    if lm.mat.size and lm.mat.max(initial=0) < ctx.p:
        cols = []
        for j in range(lm.mat.shape[1]):
            nz = np.nonzero(lm.mat[:, j])[0]
            cols.append({int(r): int(lm.mat[r, j]) for r in nz})
        return linalg.sparse_rank_modp(cols, ctx.p)
    return linalg.rank(ctx.tables(), lm.mat)


def kernel_dim(ctx: FieldCtx, lm: LinMap) -> int:
    return lm.src.dim - rank(ctx, lm)


def coker_dim(ctx: FieldCtx, lm: LinMap) -> int:
    return lm.dst.dim - rank(ctx, lm)


def compose(ctx: FieldCtx, f2: LinMap, f1: LinMap) -> LinMap:
    """f2 after f1; degree vectors must match, det twists add."""
    if f2.src.degrees != f1.dst.degrees or f2.src.m != f1.dst.m:
        raise ValueError(f"cannot compose: {f1.dst} -> {f2.src}")
    mat = linalg.matmul(ctx.tables(), f2.mat, f1.mat)
    return LinMap(f1.src, f2.dst, mat, f1.det_twist + f2.det_twist)


def op_sparse_columns(pp: PrimePower, degrees, kind: str, alpha: int, beta=None):
    """(src, dst, columns, det_twist) of one operator, columns as sparse
    (row, coeff) lists with prime-field coefficients."""
    if kind == "theta":
        src, dst, cols = _op_columns_theta(pp, tuple(degrees), alpha, beta)
        return src, dst, cols, pp.p ** alpha
    if kind == "dickson":
        src, dst, cols = _op_columns_dickson(pp, tuple(degrees), alpha)
        return src, dst, cols, pp.p ** alpha
    if kind == "d":
        src, dst, cols = _op_columns_d(pp, tuple(degrees), alpha, beta)
        return src, dst, cols, 0
    if kind == "dclassical":
        src, dst, cols = _op_columns_d_classical(pp, tuple(degrees), alpha)
        return src, dst, cols, 0
    raise ValueError(f"unknown operator kind {kind!r}")


def _compose_sparse(p: int, cols2, cols1):
    out = []
    for col in cols1:
        acc: dict[int, int] = {}
        for r, c in col:
            for r2, c2 in cols2[r]:
                v = (acc.get(r2, 0) + c * c2) % p
                if v:
                    acc[r2] = v
                elif r2 in acc:
                    del acc[r2]
        out.append(sorted(acc.items()))
    return out


def operators_commute(pp: PrimePower, degrees, op1, op2) -> bool:
    """Whether two operators (kind, alpha, beta) commute on the module with
    the given degrees, comparing both composition orders column by column.

    With one factor per twist and the fixed monomial basis, the two
    composite targets coincide on the nose, so the factor-reordering
    identification is the identity permutation.
    """
    def composite(first, second):
        _, mid, cols1, tw1 = op_sparse_columns(pp, degrees, *first)
        _, dst, cols2, tw2 = op_sparse_columns(pp, mid.degrees, *second)
        return dst.degrees, _compose_sparse(pp.p, cols2, cols1), tw1 + tw2

    d12, c12, t12 = composite(op1, op2)
    d21, c21, t21 = composite(op2, op1)
    return d12 == d21 and t12 == t21 and c12 == c21


def hom_space_dim(ctx: FieldCtx, src: ModuleSpec, dst: ModuleSpec, det_power: int) -> int:
    """Dimension of {A : rho_dst(gamma) A = det(gamma)^det_power A rho_src(gamma)}.

    The diagonal generator acts diagonally on monomial bases, so its
    equivariance constraint only selects the entries whose torus weights
    match; the unipotent and Weyl constraints are then solved on that
    (much smaller) support.
    """
    src.check_dim()
    dst.check_dim()
    pp = ctx.ppow
    qm1 = pp.q - 1

    def weights(spec: ModuleSpec) -> np.ndarray:
        w = np.zeros(spec.dim, dtype=np.int64)
        for idx in range(spec.dim):
            js = spec.unravel(idx)
            e = spec.m
            for i, (k, j) in enumerate(zip(spec.degrees, js)):
                e += (k - j) * pp.p ** i
            w[idx] = e % qm1
        return w

    wsrc, wdst = weights(src), weights(dst)
    support = [(r, c) for r in range(dst.dim) for c in range(src.dim)
               if wdst[r] == (det_power + wsrc[c]) % qm1]
    if not support:
        return 0
    pos = {rc: t for t, rc in enumerate(support)}
    ft = ctx.tables()
    gens = [g for g in ctx.gl2_generators() if g != (ctx.gamma1, 0, 0, 1)]
    rows = []
    for gamma in gens:
        rho_d = action_matrix(ctx, dst, gamma)
        rho_s = action_matrix(ctx, src, gamma)
        scal = ctx.pow(ctx.mat_det(gamma), det_power)
        # equation at (r, c): sum_s rho_d[r,s] A[s,c] - scal * sum_s A[r,s] rho_s[s,c] = 0
        eq = linalg.zeros((dst.dim * src.dim, len(support)))
        for (s, c), t in pos.items():
            col = rho_d[:, s]
            nz = np.nonzero(col)[0]
            idxs = nz * src.dim + c
            eq[idxs, t] = ft.add[eq[idxs, t], col[nz]]
        for (r, s), t in pos.items():
            row = ft.neg[ft.mul[scal, rho_s[s, :]]]
            nz = np.nonzero(row)[0]
            idxs = r * src.dim + nz
            eq[idxs, t] = ft.add[eq[idxs, t], row[nz]]
        keep = np.nonzero(eq.any(axis=1))[0]
        rows.append(eq[keep])
    system = np.vstack(rows) if rows else linalg.zeros((0, len(support)))
    return len(support) - linalg.rank(ft, system)


# ---------------------------------------------------------------------------
# permutation module on the projective line


@dataclass(frozen=True)
class ProjLineModule:
    """The permutation module F[P^1(F_q)] with action (u.f)(P) = f(u^-1 P)."""

    ctx: FieldCtx

    @property
    def points(self):
        return [(0, 1)] + [(1, t) for t in range(self.ctx.q)]

    @property
    def dim(self) -> int:
        return self.ctx.q + 1

    def _act_point(self, gamma: Mat2, pt):
        a, b, c, d = gamma
        x, y = pt
        nx = self.ctx.add(self.ctx.mul(a, x), self.ctx.mul(b, y))
        ny = self.ctx.add(self.ctx.mul(c, x), self.ctx.mul(d, y))
        if nx != 0:
            inv = self.ctx.inv(nx)
            return (1, self.ctx.mul(ny, inv))
        return (0, 1)

    def matrix(self, gamma: Mat2) -> np.ndarray:
        """Permutation matrix of gamma on the delta-function basis."""
        pts = self.points
        lookup = {p: i for i, p in enumerate(pts)}
        mat = linalg.zeros((self.dim, self.dim))
        for i, p in enumerate(pts):
            mat[lookup[self._act_point(gamma, p)], i] = 1
        return mat

    def fixed_points(self, gamma: Mat2) -> int:
        return sum(1 for p in self.points if self._act_point(gamma, p) == p)


def perm_module_p1(ctx: FieldCtx) -> ProjLineModule:
    return ProjLineModule(ctx)


def verify_p1_decomposition(ctx: FieldCtx) -> bool:
    """Brauer character of F[P^1(F_q)] equals char(M_0) + char(M_{q-1}) on
    every regular class.  The permutation character of a p-regular element
    is its fixed-point count (lifted eigenvalues of each nontrivial cycle
    sum to zero)."""
    from . import brauer
    from .cyclo import CycloInt

    pp = ctx.ppow
    mod = perm_module_p1(ctx)
    for cls in brauer.regular_classes(pp):
        gamma = brauer.class_representative(ctx, cls)
        lhs = CycloInt.integer(pp.M, mod.fixed_points(gamma))
        rhs = CycloInt.integer(pp.M, 1) + brauer.char_sym(pp, pp.q - 1, cls)
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# Brauer character of an explicit matrix module (eigenvalue lifting)


def module_char_explicit(ctx: FieldCtx, spec: ModuleSpec, cls):
    """Brauer character of spec at cls straight from the matrix model:
    eigenvalue multiplicities over F_{q^2}, lifted through the dlog.

    Needs F_{q^2} lookup tables, so it is a small-q tool (q <= 27ish)."""
    from . import brauer
    from .cyclo import from_exponent_counter

    pp = ctx.ppow
    gamma = brauer.class_representative(ctx, cls)
    rho = action_matrix(ctx, spec, gamma)  # encodings live inside F_{q^2} too
    ft2 = ctx.tables2()
    # order of gamma divides the order of its eigenvalues in F_{q^2}^x
    if cls.kind == "central":
        n = (pp.q - 1) // np.gcd(cls.a, pp.q - 1) if cls.a else 1
    elif cls.kind == "split":
        from math import gcd
        na = (pp.q - 1) // gcd(cls.a, pp.q - 1) if cls.a else 1
        nb = (pp.q - 1) // gcd(cls.b, pp.q - 1) if cls.b else 1
        n = na * nb // gcd(na, nb)
    else:
        from math import gcd
        n = pp.M // gcd(cls.a, pp.M)
    items = []
    total = 0
    dim = spec.dim
    for t in range(n):
        lam_dlog = (t * (pp.M // n)) % pp.M
        lam = ctx.exp2[lam_dlog]
        shifted = ft2.add[rho, ft2.neg[np.full_like(rho, 0)]]  # copy via add of 0
        shifted = np.array(rho, copy=True)
        diag = np.arange(dim)
        shifted[diag, diag] = ft2.add[shifted[diag, diag], ft2.neg[lam]]
        mult = dim - linalg.rank(ft2, shifted)
        if mult:
            items.append((lam_dlog, mult))
            total += mult
    assert total == dim, f"matrix of class {cls} is not semisimple over F_(q^2)"
    return from_exponent_counter(pp.M, items)
