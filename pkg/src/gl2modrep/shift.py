"""Weight-shift combinatorics for holomorphic automorphic-form weights.

A weight is a pair (k, w): per prime block j a vector of integers
k_i^(j) >= 2 (i indexes the embeddings of the block, 0..f_j-1) and a
single integer w with k_i^(j) + 2 w_i^(j) - 1 = w for integral w_i^(j).
The planner decides whether a requested shift vector, with per-embedding
increments chosen from {p^beta - 1, p^beta + 1}, is admissible, and
compiles an accepted plan into the composite intertwining operator that
realizes it on the block's module (degree k - 2 per embedding), so that
injectivity can be confirmed at the matrix level.

Rejections name the first violated clause in the fixed order
(parity, range, (S), (*), (**)); (S) is the balance relation of the
two-embedding planner.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .field import PrimePower, build_field, is_prime


@dataclass(frozen=True)
class PrimeSplit:
    """Odd p with residue degrees f_1..f_r (g = sum f_j)."""

    p: int
    fs: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p) or self.p == 2:
            raise ValueError(f"p = {self.p} must be an odd prime")
        if not self.fs or any(f < 1 for f in self.fs):
            raise ValueError("residue degrees must be positive")

    @property
    def g(self) -> int:
        return sum(self.fs)


@dataclass(frozen=True)
class WeightParams:
    """Block vectors of k-entries (each >= 2) and the common weight w."""

    k: tuple[tuple[int, ...], ...]
    w: int

    def w_entry(self, j: int, i: int) -> int:
        return (self.w + 1 - self.k[j][i]) // 2


def validate_holomorphic(k_vecs, w_vecs) -> int:
    """The common w with k + 2*w_i - 1 = w, or ValueError.

    Parity of w is not enforced here (the planner does that); this
    validator is reusable for non-odd weights."""
    vals = set()
    for kv, wv in zip(k_vecs, w_vecs, strict=True):
        if len(kv) != len(wv):
            raise ValueError("k and w vectors have mismatched shapes")
        for ki, wi in zip(kv, wv):
            if ki < 2:
                raise ValueError(f"k entry {ki} < 2")
            vals.add(ki + 2 * wi - 1)
    if len(vals) != 1:
        raise ValueError(f"not holomorphic: k + 2w - 1 takes values {sorted(vals)}")
    return vals.pop()


THETA, D = "theta", "d"


@dataclass(frozen=True)
class ShiftChoice:
    """beta in [1, min f_j] plus a per-embedding selector:
    'theta' adds p^beta + 1, 'd' adds p^beta - 1."""

    beta: int
    selectors: tuple[tuple[str, ...], ...]

    def a_entry(self, p: int, j: int, i: int) -> int:
        return p ** self.beta + (1 if self.selectors[j][i] == THETA else -1)


@dataclass(frozen=True)
class OpStep:
    """One factor of the composite operator on block j."""

    kind: str        # 'theta' or 'd'
    classical: bool  # single-factor (degree shift q +/- 1) form
    alpha: int       # embedding index the operator is attached to
    beta_op: int     # two-factor operator index (f_j - beta), 0 if classical

    def name(self) -> str:
        base = "Theta" if self.kind == THETA else "D"
        sub = "" if self.classical else f"_{self.beta_op}"
        tw = f"^[{self.alpha}]" if self.alpha else ""
        return f"{base}{sub}{tw}"


@dataclass(frozen=True)
class ShiftPlan:
    split: PrimeSplit
    weight: WeightParams
    choice: ShiftChoice
    condition: str                       # "(*)" or "(**)"
    target_k: tuple[tuple[int, ...], ...]
    target_w: int
    recipe: tuple[tuple[OpStep, ...], ...]  # per block, D steps then theta steps

    def to_json_obj(self) -> dict:
        return _plan_json(self.split, self.weight, self.choice, True,
                          self.condition, None, self.target_k, self.target_w)


@dataclass(frozen=True)
class Rejection:
    split: PrimeSplit
    weight: WeightParams
    choice: ShiftChoice
    clause: str
    detail: str

    def to_json_obj(self) -> dict:
        return _plan_json(self.split, self.weight, self.choice, False,
                          None, f"{self.clause}: {self.detail}", None, None)


def _plan_json(split, weight, choice, accepted, condition, rejection, tk, tw):
    return {
        "input": {"p": split.p, "f": list(split.fs),
                  "k": [list(v) for v in weight.k], "w": weight.w},
        "beta": choice.beta,
        "choices": [list(sel) for sel in choice.selectors],
        "accepted": accepted,
        "condition": condition,
        "rejection": rejection,
        "target": None if tk is None else {"k": [list(v) for v in tk], "w": tw},
    }


def plan_general(ps: PrimeSplit, wp: WeightParams, choice: ShiftChoice):
    """Admissibility of the shift k -> k + a, w -> w + (p^beta - 1).

    Checks, in order: parity (w odd, every w_i integral), range
    (k entries >= 2, beta within [1, min f]), then the two sufficient
    conditions.  (*) constrains only the embeddings shifted by
    p^beta - 1: their k lies in (2, p+1], the embedding hit by the
    p^beta bump lies in [2, p+1], and no two such embeddings are
    linked by i = i' - beta mod f_j.  (**) asks every entry to lie in
    (2, p+1].  Accepted plans carry the operator recipe per block.
    """
    p = ps.p
    if len(wp.k) != len(ps.fs) or any(len(v) != f for v, f in zip(wp.k, ps.fs)):
        return Rejection(ps, wp, choice, "range", "k vector shape does not match residue degrees")
    if len(choice.selectors) != len(ps.fs) or any(
            len(sel) != f for sel, f in zip(choice.selectors, ps.fs)):
        return Rejection(ps, wp, choice, "range", "selector shape does not match residue degrees")
    if any(s not in (THETA, D) for sel in choice.selectors for s in sel):
        return Rejection(ps, wp, choice, "range", "selectors must be 'theta' or 'd'")
    if wp.w % 2 == 0:
        return Rejection(ps, wp, choice, "parity", f"w = {wp.w} is even")
    for j, kv in enumerate(wp.k):
        for i, ki in enumerate(kv):
            if (wp.w + 1 - ki) % 2:
                return Rejection(ps, wp, choice, "parity",
                                 f"w + 1 - k_{i}^({j + 1}) = {wp.w + 1 - ki} is odd")
    for j, kv in enumerate(wp.k):
        for i, ki in enumerate(kv):
            if ki < 2:
                return Rejection(ps, wp, choice, "range", f"k_{i}^({j + 1}) = {ki} < 2")
    f_min = min(ps.fs)
    if not (1 <= choice.beta <= f_min):
        return Rejection(ps, wp, choice, "range",
                         f"beta = {choice.beta} outside [1, {f_min}]")

    star_fail = None
    for j, (f_j, kv) in enumerate(zip(ps.fs, wp.k)):
        d_set = [i for i, s in enumerate(choice.selectors[j]) if s == D]
        for i in d_set:
            if not (2 < kv[i] <= p + 1):
                star_fail = star_fail or (
                    f"k_{i}^({j + 1}) = {kv[i]} outside (2, {p + 1}] at a d-selected embedding")
            if choice.beta < f_j:
                tgt = (i + f_j - choice.beta) % f_j
                if not (2 <= kv[tgt] <= p + 1):
                    star_fail = star_fail or (
                        f"k_{tgt}^({j + 1}) = {kv[tgt]} outside [2, {p + 1}] "
                        f"at the bumped embedding")
                for i2 in d_set:
                    if i2 != i and (i - (i2 - choice.beta)) % f_j == 0:
                        star_fail = star_fail or (
                            f"d-selected embeddings {i} and {i2} are linked "
                            f"(i = i' - beta mod f_{j + 1})")
    star_ok = star_fail is None

    bulk_fail = None
    for j, kv in enumerate(wp.k):
        for i, ki in enumerate(kv):
            if not (2 < ki <= p + 1):
                bulk_fail = bulk_fail or f"k_{i}^({j + 1}) = {ki} outside (2, {p + 1}]"
    bulk_ok = bulk_fail is None

    if not (star_ok or bulk_ok):
        return Rejection(ps, wp, choice, "(*)",
                         f"{star_fail}; (**) also fails: {bulk_fail}")
    condition = "(*)" if star_ok else "(**)"

    target_k = tuple(
        tuple(kv[i] + choice.a_entry(p, j, i) for i in range(len(kv)))
        for j, kv in enumerate(wp.k))
    target_w = wp.w + p ** choice.beta - 1
    # re-validate the target weight invariants
    assert target_w % 2 == 1
    assert all(t >= 2 and (target_w + 1 - t) % 2 == 0 for v in target_k for t in v)
    assert (target_w - wp.w) % (p - 1) == 0  # compatibility congruence comes for free

    recipe = []
    for j, f_j in enumerate(ps.fs):
        classical = choice.beta == f_j
        d_steps = [OpStep(D, classical, i, 0 if classical else f_j - choice.beta)
                   for i, s in enumerate(choice.selectors[j]) if s == D]
        t_steps = [OpStep(THETA, classical, i, 0 if classical else f_j - choice.beta)
                   for i, s in enumerate(choice.selectors[j]) if s == THETA]
        recipe.append(tuple(d_steps + t_steps))
    return ShiftPlan(ps, wp, choice, condition, target_k, target_w, tuple(recipe))


# ---------------------------------------------------------------------------
# the two-embedding planner (one inert prime of residue degree 2)


@dataclass(frozen=True)
class F2PlanResult:
    accepted: bool
    condition: str | None
    rejection: str | None
    target: tuple[int, int, int] | None  # (k0', k1', w')

    def to_json_obj(self) -> dict:
        return {
            "accepted": self.accepted,
            "condition": self.condition,
            "rejection": self.rejection,
            "target": None if self.target is None else
            {"k": [self.target[0], self.target[1]], "w": self.target[2]},
        }


def plan_f2(p: int, k0: int, k1: int, w: int, n: int, m: int, r: int, s: int,
            t: int, u: int, v: int, z: int, alpha: int = 0) -> F2PlanResult:
    """Shift planning from operator multiplicities for one degree-2 block.

    n, m: two-factor theta multiplicities at embeddings 0, 1;
    t, u: classical theta multiplicities; r, s: two-factor derivation
    multiplicities; v, z: classical derivation multiplicities.  alpha is
    the free det-twist integer entering only w'.  Requires w odd, the
    balance relation (S): (m-n)+(s-r) = (p-1)((u-t)+(z-v)), and (*) or (**).
    """
    if not is_prime(p) or p == 2:
        return F2PlanResult(False, None, f"range: p = {p} must be an odd prime", None)
    if w % 2 == 0:
        return F2PlanResult(False, None, f"parity: w = {w} is even", None)
    if (w + 1 - k0) % 2 or (w + 1 - k1) % 2:
        return F2PlanResult(False, None, "parity: w + 1 - k must be even", None)
    if k0 < 2 or k1 < 2:
        return F2PlanResult(False, None, f"range: k = ({k0}, {k1}) must be >= 2", None)
    if min(n, m, r, s, t, u, v, z) < 0:
        return F2PlanResult(False, None, "range: multiplicities must be non-negative", None)
    if (m - n) + (s - r) != (p - 1) * ((u - t) + (z - v)):
        return F2PlanResult(
            False, None,
            f"(S): (m-n)+(s-r) = {(m - n) + (s - r)} but "
            f"(p-1)((u-t)+(z-v)) = {(p - 1) * ((u - t) + (z - v))}", None)
    star = r == s == v == z == 0
    bulk = (2 < k0 <= p + 1 and 2 < k1 <= p + 1
            and r + v <= k0 - 2 and s + z <= k1 - 2)
    if not (star or bulk):
        return F2PlanResult(
            False, None,
            "(*): some of r, s, v, z nonzero; (**) also fails: needs "
            f"2 < k <= {p + 1} and r+v <= k0-2, s+z <= k1-2", None)
    k0p = k0 + (p + 1) * (n + t) + (p - 1) * (r + v) + p * (p - 1) * (u + z)
    k1p = k1 + (p + 1) * (m + u) + (p - 1) * (s + z) + p * (p - 1) * (t + v)
    wp = w + (p - 1) * (n + t + r + v + 2 * alpha + p * (u + z + 2 * alpha))
    return F2PlanResult(True, "(*)" if star else "(**)", None, (k0p, k1p, wp))


def check_c_nonzero(a: int, b: int, r: int, s: int, v: int, z: int, p: int) -> bool:
    """Whether the scalar picked up by the derivation composite
    D^z D^v D_1^s D_1^r on the highest-weight vector X^a (x) X^b is
    nonzero mod p.  The four factors are falling factorials
    a!/(a-r)!, (b+pr)!/(b+pr-s)!, (a-r+ps)!/(a-r+ps-v)!,
    (b+pr-s)!/(b+pr-s-z)!, evaluated exactly and reduced mod p."""
    c = 1
    for top, count in (
            (a, r),
            (b + p * r, s),
            (a - r + p * s, v),
            (b + p * r - s, z)):
        if top - count < 0:
            raise ValueError("negative falling-factorial range: bounds (clubs) violated")
        for x in range(top, top - count, -1):
            c = (c * x) % p
    return c % p != 0


# ---------------------------------------------------------------------------
# the 2 g^2 shift-vector tables

PolyInP = dict[int, int]  # sparse exponent -> coefficient, value sum c * p^e


def _poly_p(*terms) -> PolyInP:
    out: PolyInP = {}
    for e, c in terms:
        if c:
            out[e] = out.get(e, 0) + c
    return out


def poly_in_p_str(poly: PolyInP) -> str:
    if not poly:
        return "0"
    parts = []
    for e in sorted(poly, reverse=True):
        c = poly[e]
        if e == 0:
            parts.append(f"{c:+d}")
        else:
            pe = "p" if e == 1 else f"p^{e}"
            if c == 1:
                parts.append(f"+{pe}")
            elif c == -1:
                parts.append(f"-{pe}")
            else:
                parts.append(f"{c:+d}*{pe}")
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


def poly_in_p_eval(poly: PolyInP, p: int) -> int:
    return sum(c * p ** e for e, c in poly.items())


def shift_vector_tables(g: int, p: int | None = None):
    """The two g^2-row tables of weight-shift vectors.

    Multiplication-type rows carry +1 at the attached embedding; the
    derivation-type table replaces it with -1.  Two-factor rows (index
    beta' in [1, g-1]) also carry p^(g-beta') at embedding alpha+beta';
    classical rows carry q+1 (resp. q-1) alone.  Entries are sparse
    polynomials in p; pass a numeric p to evaluate them.
    """
    if g < 1:
        raise ValueError("g must be >= 1")

    def build(sign: int):
        rows = []
        for beta in range(1, g):
            for alpha in range(g):
                vec = [_poly_p() for _ in range(g)]
                vec[alpha] = _poly_p((0, sign))
                vec[(alpha + beta) % g] = _poly_p((g - beta, 1))
                base = "Theta" if sign > 0 else "D"
                name = f"{base}_{beta}" + (f"^[{alpha}]" if alpha else "")
                rows.append((name, tuple(vec)))
        for alpha in range(g):
            vec = [_poly_p() for _ in range(g)]
            vec[alpha] = _poly_p((g, 1), (0, sign))
            base = "Theta" if sign > 0 else "D"
            name = base + (f"^[{alpha}]" if alpha else "")
            rows.append((name, tuple(vec)))
        return rows

    theta_rows, d_rows = build(+1), build(-1)
    if p is not None:
        theta_rows = [(n, tuple(poly_in_p_eval(e, p) for e in v)) for n, v in theta_rows]
        d_rows = [(n, tuple(poly_in_p_eval(e, p) for e in v)) for n, v in d_rows]
    return theta_rows, d_rows


# ---------------------------------------------------------------------------
# compiling a plan into an explicit operator


@dataclass(frozen=True)
class CompiledBlock:
    block: int
    steps: tuple[str, ...]
    src_degrees: tuple[int, ...]
    dst_degrees: tuple[int, ...]
    det_twist: int
    src_dim: int
    rank: int
    injective: bool
    equivariant: bool | None  # None: target too large for the dense matrix check


def _op_sparse_columns(pp: PrimePower, degrees, step: OpStep):
    from . import modrep

    if step.kind == THETA:
        if step.classical:
            src, dst, cols = modrep._op_columns_dickson(pp, degrees, step.alpha)
            twist = pp.p ** step.alpha
        else:
            src, dst, cols = modrep._op_columns_theta(pp, degrees, step.alpha, step.beta_op)
            twist = pp.p ** step.alpha
    else:
        if step.classical:
            src, dst, cols = modrep._op_columns_d_classical(pp, degrees, step.alpha)
        else:
            src, dst, cols = modrep._op_columns_d(pp, degrees, step.alpha, step.beta_op)
        twist = 0
    return src, dst, cols, twist


def compile_block(p: int, f: int, k_vec, steps, check_equivariance: bool = True) -> CompiledBlock:
    """Build the composite operator for one block on degrees k_i - 2.

    Steps are applied left to right (so list D steps before theta steps to
    follow the standard recipe).  The composite is assembled column-sparsely
    with prime-field coefficients; its rank (a field-extension invariant)
    decides injectivity.  The dense matrix and the generator equivariance
    check are only materialized when the target fits the dimension cap;
    above it equivariance is reported as None (it holds by construction,
    each step being an equivariant operator).
    """
    from . import linalg, modrep

    pp = PrimePower(p, f)
    degrees = tuple(k - 2 for k in k_vec)
    if any(d < 0 for d in degrees):
        raise ValueError(f"k entries must be >= 2, got {k_vec}")
    src_spec = modrep.ModuleSpec(pp, 0, degrees)
    src_spec.check_dim()

    cur_degrees = degrees
    src_dim = src_spec.dim
    # columns of the composite, as dicts row -> coefficient mod p
    cols = [{i: 1} for i in range(src_dim)]
    twist = 0
    for step in steps:
        _, dst, op_cols, dtw = _op_sparse_columns(pp, cur_degrees, step)
        twist += dtw
        new_cols = []
        for col in cols:
            acc: dict[int, int] = {}
            for ridx, cf in col.items():
                for r2, cf2 in op_cols[ridx]:
                    val = (acc.get(r2, 0) + cf * cf2) % p
                    if val:
                        acc[r2] = val
                    elif r2 in acc:
                        del acc[r2]
            new_cols.append(acc)
        cols = new_cols
        cur_degrees = dst.degrees
    rk = linalg.sparse_rank_modp(cols, p)
    dst_spec = modrep.ModuleSpec(pp, 0, cur_degrees)
    equi: bool | None = None
    if check_equivariance and dst_spec.dim <= modrep.max_dim():
        mat = linalg.zeros((dst_spec.dim, src_dim))
        for cidx, col in enumerate(cols):
            for ridx, cf in col.items():
                mat[ridx, cidx] = cf
        lm = modrep.LinMap(src_spec, dst_spec, mat, twist)
        ctx = build_field(p, f)
        equi = modrep.check_equivariance(ctx, lm)
    return CompiledBlock(0, tuple(s.name() for s in steps), degrees,
                         cur_degrees, twist, src_dim, rk, rk == src_dim, equi)


def compile_lambda(plan: ShiftPlan, j: int, check_equivariance: bool = True) -> CompiledBlock:
    """Compile block j of an accepted plan and verify it at matrix level."""
    f = plan.split.fs[j]
    blk = compile_block(plan.split.p, f, plan.weight.k[j], plan.recipe[j],
                        check_equivariance=check_equivariance)
    # the compiled degree shift must match the planned target
    expect = tuple(t - 2 for t in plan.target_k[j])
    assert blk.dst_degrees == expect, (blk.dst_degrees, expect)
    return CompiledBlock(j, blk.steps, blk.src_degrees, blk.dst_degrees,
                         blk.det_twist, blk.src_dim, blk.rank, blk.injective,
                         blk.equivariant)
