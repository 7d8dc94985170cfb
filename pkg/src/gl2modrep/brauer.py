"""Exact Brauer-character oracle on the regular classes of GL_2(F_q).

Regular (p-regular semisimple) classes come in three families: central
diag(a,a), split diag(a,b) with a != b, and non-split iota(c) with
c in F_{q^2} outside F_q.  Classes are parameterized by discrete logs
(base gamma1 = gamma2^(q+1) for F_q^x, base gamma2 for F_{q^2}^x), which
makes the whole oracle deterministic and independent of element encodings.

Character values are sums of powers of zeta_M (M = q^2 - 1) through the
pinned multiplicative lift gamma2^e -> zeta^e.  All quotients in the
closed-form expressions are expanded as geometric sums; no division is
performed in the value ring.

Equality of virtual characters is decided exactly.  The fast path compares
per-family exponent tables (sums of zeta-monomials with symbolic class
parameter); a zero table is identically zero on the family.  Otherwise the
difference is evaluated at one representative per Galois orbit of classes
(scaling the class parameter by a unit is a ring automorphism of the value
field, so a value vanishes at one class of the orbit iff it vanishes at
all), and each representative value is tested for zero in Z[zeta_n].
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from . import cyclo
from .cyclo import CycloInt
from .field import FieldCtx, PrimePower
from .k0 import ProductTerm, RawTerm, VirtualRep, raw_to_product


@dataclass(frozen=True, order=True)
class ConjClass:
    """central: a = dlog(scalar); split: a < b the two dlogs (base gamma1);
    nonsplit: a = dlog base gamma2, canonical under d -> d*q mod M."""

    kind: str
    a: int
    b: int = 0


@lru_cache(maxsize=None)
def regular_classes(pp: PrimePower) -> tuple[ConjClass, ...]:
    q, M = pp.q, pp.M
    out = [ConjClass("central", d) for d in range(q - 1)]
    out += [ConjClass("split", da, db) for da in range(q - 1) for db in range(da + 1, q - 1)]
    seen = set()
    for d in range(M):
        if d % (q + 1) == 0:
            continue
        c = min(d, (d * q) % M)
        if c not in seen:
            seen.add(c)
            out.append(ConjClass("nonsplit", c))
    return tuple(out)


def class_representative(ctx: FieldCtx, cls: ConjClass):
    """An explicit matrix in the class (Mat2 over F_q)."""
    g1 = ctx.gamma1
    if cls.kind == "central":
        a = ctx.pow(g1, cls.a)
        return (a, 0, 0, a)
    if cls.kind == "split":
        return (ctx.pow(g1, cls.a), 0, 0, ctx.pow(g1, cls.b))
    return ctx.embed_iota(ctx.exp2[cls.a])


# ---------------------------------------------------------------------------
# canonical form of product terms: non-negative degrees, twists mod g


def _canon_term(pp: PrimePower, t: ProductTerm):
    """Fold negative degrees through the reflection identity.

    Returns None when the term vanishes (a degree -1 factor), else
    (coeff, m, factors) with all degrees >= 0.
    """
    coeff, m = t.coeff, t.m
    factors = []
    for k, tw in t.factors:
        tw %= pp.g
        while k < 0:
            if k == -1:
                return None
            coeff = -coeff
            m += (1 + k) * pp.p ** tw
            k = -k - 2
        factors.append((k, tw))
    return coeff, m, tuple(factors)


def _as_product_terms(pp: PrimePower, x) -> list[ProductTerm]:
    if isinstance(x, VirtualRep):
        if x.pp != pp:
            raise ValueError("context mismatch")
        return [ProductTerm(c, m, tuple((k, i) for i, k in enumerate(ks)))
                for (m, ks), c in x.sorted_terms()]
    out = []
    for t in x:
        if isinstance(t, RawTerm):
            out.append(raw_to_product(t))
        elif isinstance(t, ProductTerm):
            out.append(t)
        else:
            raise TypeError(f"expected RawTerm/ProductTerm, got {type(t).__name__}")
    return out


# ---------------------------------------------------------------------------
# per-class values (CycloInt in Z[zeta_M])


def _sym_monomials(pp: PrimePower, k: int, tw: int, cls: ConjClass):
    """zeta-exponent multiset of the degree-k factor at twist tw on cls,
    for k >= 0, leaving out the class parameter scaling where symbolic."""
    q, M = pp.q, pp.M
    s = pp.p ** tw
    if cls.kind == "central":
        return [((q + 1) * cls.a * k * s) % M] * 1  # times dimension k+1, handled by caller
    if cls.kind == "split":
        return [((q + 1) * s * (j * cls.a + (k - j) * cls.b)) % M for j in range(k + 1)]
    return [(cls.a * s * (q * j + (k - j))) % M for j in range(k + 1)]


def char_sym(pp: PrimePower, k: int, cls: ConjClass) -> CycloInt:
    """Brauer character of M_k on cls (any integer k)."""
    return char_term(pp, ProductTerm(1, 0, ((k, 0),)), cls)


def char_term(pp: PrimePower, t, cls: ConjClass) -> CycloInt:
    """Brauer character of one term (RawTerm or ProductTerm) on cls."""
    M = pp.M
    if isinstance(t, RawTerm):
        t = raw_to_product(t)
    canon = _canon_term(pp, t)
    if canon is None:
        return CycloInt.zero(M)
    coeff, m, factors = canon
    q = pp.q
    if cls.kind == "central":
        det_e = (q + 1) * 2 * cls.a
    elif cls.kind == "split":
        det_e = (q + 1) * (cls.a + cls.b)
    else:
        det_e = (1 + q) * cls.a
    items = {(det_e * m) % M: coeff}
    for k, tw in factors:
        if cls.kind == "central":
            e = ((q + 1) * cls.a * k * pp.p ** tw) % M
            items = {(a + e) % M: (k + 1) * c for a, c in items.items()}
            continue
        new = {}
        for e in _sym_monomials(pp, k, tw, cls):
            for a, c in items.items():
                key = (a + e) % M
                new[key] = new.get(key, 0) + c
        items = new
    return cyclo.from_exponent_counter(M, items.items())


def char_expr(pp: PrimePower, x, cls: ConjClass) -> CycloInt:
    total = CycloInt.zero(pp.M)
    for t in _as_product_terms(pp, x):
        total = total + char_term(pp, t, cls)
    return total


CharVector = dict


def char_vrep(pp: PrimePower, v) -> CharVector:
    """Full character table of a VirtualRep or term list on all regular classes."""
    return {cls: char_expr(pp, v, cls) for cls in regular_classes(pp)}


# ---------------------------------------------------------------------------
# exact equality of virtual characters


def _family_table(pp: PrimePower, terms, kind: str) -> dict:
    """Symbolic value of the expression on one class family.

    central:  key E with weight w  <->  sum w * omega^(E d)
    split:    key (A, B)           <->  sum w * omega^(A da + B db)
    nonsplit: key E                <->  sum w * zeta^(E d)
    omega = zeta^(q+1) has order q-1; exponents are reduced accordingly.
    """
    q = pp.q
    n = q - 1
    M = pp.M
    table: dict = {}
    for t in terms:
        canon = _canon_term(pp, t)
        if canon is None:
            continue
        coeff, m, factors = canon
        if kind == "central":
            e = 2 * m
            w = coeff
            for k, tw in factors:
                e += k * pp.p ** tw
                w *= k + 1
            key = e % n if n else 0
            table[key] = table.get(key, 0) + w
        elif kind == "split":
            cur = {((m % n) if n else 0, (m % n) if n else 0): coeff}
            for k, tw in factors:
                s = pp.p ** tw
                nxt = {}
                for (a, b), c in cur.items():
                    for j in range(k + 1):
                        key = ((a + j * s) % n, (b + (k - j) * s) % n) if n else (0, 0)
                        nxt[key] = nxt.get(key, 0) + c
                cur = nxt
            for key, c in cur.items():
                table[key] = table.get(key, 0) + c
        else:
            cur = {(m * (1 + q)) % M: coeff}
            for k, tw in factors:
                s = pp.p ** tw
                nxt = {}
                for a, c in cur.items():
                    for j in range(k + 1):
                        key = (a + s * (q * j + (k - j))) % M
                        nxt[key] = nxt.get(key, 0) + c
                cur = nxt
            for key, c in cur.items():
                table[key] = table.get(key, 0) + c
    return {k: v for k, v in table.items() if v}


@lru_cache(maxsize=None)
def _central_orbit_reps(n: int) -> tuple[int, ...]:
    # orbits of Z/n under unit scaling <-> divisors (gcd with n); 0 included via n
    return tuple(d % n for d in range(1, n + 1) if n % d == 0) if n > 1 else (0,)


@lru_cache(maxsize=None)
def _split_orbit_reps(n: int) -> tuple[tuple[int, int], ...]:
    units = [t for t in range(1, n) if gcd(t, n) == 1] or [1]
    seen = set()
    reps = []
    for x in range(n):
        for y in range(x + 1, n):
            if (x, y) in seen:
                continue
            orbit = set()
            for t in units:
                u, v = (t * x) % n, (t * y) % n
                orbit.add((u, v) if u <= v else (v, u))
            reps.append((x, y))
            seen |= orbit
    return tuple(reps)


@lru_cache(maxsize=None)
def _nonsplit_orbit_reps(pp: PrimePower) -> tuple[int, ...]:
    q, M = pp.q, pp.M
    return tuple(d for d in range(1, M + 1) if M % d == 0 and d % (q + 1) != 0)


def _family_zero(pp: PrimePower, table: dict, kind: str) -> bool:
    if not table:
        return True
    q, M = pp.q, pp.M
    n = q - 1
    if kind == "central":
        for d in _central_orbit_reps(n):
            if not cyclo.sparse_is_zero(max(n, 1), ((e * d, c) for e, c in table.items())):
                return False
        return True
    if kind == "split":
        for da, db in _split_orbit_reps(n):
            items = (((a * da + b * db), c) for (a, b), c in table.items())
            if not cyclo.sparse_is_zero(n, items):
                return False
        return True
    for d in _nonsplit_orbit_reps(pp):
        sub = M // d
        if not cyclo.sparse_is_zero(sub, ((e % sub, c) for e, c in table.items())):
            return False
    return True


def char_equal(pp: PrimePower, x, y) -> bool:
    """True iff x and y have equal Brauer characters on every regular class."""
    diff = _as_product_terms(pp, x)
    diff += [ProductTerm(-t.coeff, t.m, t.factors) for t in _as_product_terms(pp, y)]
    for kind in ("central", "split", "nonsplit"):
        if kind == "split" and pp.q <= 2:
            continue
        table = _family_table(pp, diff, kind)
        if not _family_zero(pp, table, kind):
            return False
    return True


# ---------------------------------------------------------------------------
# induced module from the Borel subgroup


def _p1_coset_reps(ctx: FieldCtx):
    """Coset representatives of G/B, B upper triangular: one line each."""
    reps = [(0, 1, 1, 0)]  # the line spanned by (0, 1)
    reps += [(1, 0, t, 1) for t in range(ctx.q)]  # lines spanned by (1, t)
    return reps


def induced_char(ctx: FieldCtx, k: int, cls: ConjClass) -> CycloInt:
    """Character of the module induced from the Borel character
    (a *; 0 d) -> a^k, by explicit fixed-coset enumeration."""
    pp = ctx.ppow
    gamma = class_representative(ctx, cls)
    items = []
    for rep in _p1_coset_reps(ctx):
        u = ctx.mat_mul(ctx.mat_mul(ctx.mat_inv(rep), gamma), rep)
        if u[2] == 0:  # gamma fixes the coset
            items.append((((pp.q + 1) * ctx.fq_dlog(u[0]) * k) % pp.M, 1))
    return cyclo.from_exponent_counter(pp.M, items)
