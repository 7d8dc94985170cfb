"""The Grothendieck ring K0(GL_2(F_q)): rewriting to Jordan-Hoelder standard form.

Standard basis labels are det^m (x) M_{k_0} (x) M_{k_1}^[1] (x) ... with
0 <= m < q-1 and 0 <= k_i <= p-1; a virtual representation is an integer
combination of labels.  The rewrite engine is built from three identity
families (negative-weight reflection, the twist recursion for symmetric
powers, and the two-factor product expansion) plus the relations
e^(q-1) = 1 and twist^g = identity.  The Serre-type four-term relation is
never used by the rewriter; a separate g=1 route based on it exists purely
for confluence cross-checks.

Internally labels are plain tuples (m, ks); the public VirtualRep wraps a
label -> coefficient dict.  All caches are insert-only maps from immutable
keys to immutable values, so concurrent readers are safe and redundant
writes are idempotent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from .field import PrimePower

Label = tuple[int, tuple[int, ...]]


@dataclass(frozen=True)
class BasisLabel:
    """det-power m in [0, q-1) and twisted symmetric-power degrees in [0, p-1]."""

    m: int
    ks: tuple[int, ...]

    def check(self, pp: PrimePower):
        if not (0 <= self.m < pp.q - 1):
            raise ValueError(f"det power {self.m} out of range [0, {pp.q - 1})")
        if len(self.ks) != pp.g or any(k < 0 or k > pp.p - 1 for k in self.ks):
            raise ValueError(f"degrees {self.ks} out of range for p={pp.p}, g={pp.g}")


@dataclass(frozen=True)
class RawTerm:
    """coeff * e^m * prod_i M_{ks[i]}^[i] with unrestricted integers."""

    coeff: int
    m: int
    ks: tuple[int, ...]


@dataclass(frozen=True)
class ProductTerm:
    """coeff * e^m * prod over (k, twist) factors; twists may repeat.

    More general than RawTerm: products like M_n * M_m at the same twist
    are expressible.  This is the working representation for identity
    verification and for the character oracle.
    """

    coeff: int
    m: int
    factors: tuple[tuple[int, int], ...]


def raw_to_product(t: RawTerm) -> ProductTerm:
    return ProductTerm(t.coeff, t.m, tuple((k, i) for i, k in enumerate(t.ks)))


# ---------------------------------------------------------------------------
# rewrite engine on plain label dicts


def _acc(d: dict, key, c: int):
    nc = d.get(key, 0) + c
    if nc:
        d[key] = nc
    elif key in d:
        del d[key]


@lru_cache(maxsize=None)
def _bump(pp: PrimePower, ks: tuple[int, ...], j: int):
    """Multiply the in-range monomial prod M_{ks[i]}^[i] by M_1^[j].

    Returns ((coeff, det_shift, ks'), ...) with all ks' back in range.
    A factor raised to degree p is folded on the spot; the resulting
    degree-1 factor at position j+1 recurses, and each wrap of the
    recursion turns a p-1 entry into 0 or p-2, so it terminates.
    """
    p, g = pp.p, pp.g
    k = ks[j]
    out = []
    if k + 1 <= p - 1:
        out.append((1, 0, ks[:j] + (k + 1,) + ks[j + 1:]))
    else:
        zeroed = ks[:j] + (0,) + ks[j + 1:]
        out.extend(_bump(pp, zeroed, (j + 1) % g))
        out.append((1, p ** j, ks[:j] + (p - 2,) + ks[j + 1:]))
    if k >= 1:
        out.append((1, p ** j, ks[:j] + (k - 1,) + ks[j + 1:]))
    return tuple(out)


@lru_cache(maxsize=None)
def _monomial_std(pp: PrimePower, ks: tuple[int, ...]):
    """Standard form of a monomial with degrees in [0, 2p-2].

    Each out-of-range degree c (p <= c <= 2p-2) is folded in one step into
    the pair {degree c-p plus a degree-1 bump at the next position,
    det^(1+c-p) with degree 2p-2-c}; both residual degrees land in
    [0, p-2].  Pending bumps are then applied via _bump.
    """
    p, g = pp.p, pp.g
    assert all(0 <= k <= 2 * p - 2 for k in ks)
    # (coeff, det_shift, degrees, pending bump positions)
    work = [(1, 0, ks, ())]
    for i in range(g):
        nxt = []
        for c, dm, cur, pend in work:
            ki = cur[i]
            if ki <= p - 1:
                nxt.append((c, dm, cur, pend))
            else:
                main = cur[:i] + (ki - p,) + cur[i + 1:]
                nxt.append((c, dm, main, pend + ((i + 1) % g,)))
                alt = cur[:i] + (2 * p - 2 - ki,) + cur[i + 1:]
                nxt.append((c, dm + (1 + ki - p) * p ** i, alt, pend))
        work = nxt
    out: dict[tuple[int, tuple[int, ...]], int] = {}
    while work:
        c, dm, cur, pend = work.pop()
        if not pend:
            _acc(out, (dm, cur), c)
            continue
        j, rest = pend[0], pend[1:]
        for c2, dm2, ks2 in _bump(pp, cur, j):
            work.append((c * c2, dm + dm2, ks2, rest))
    return tuple(sorted(out.items()))


@lru_cache(maxsize=None)
def _label_mul(pp: PrimePower, ks1: tuple[int, ...], ks2: tuple[int, ...]):
    """Standard form of the product of two in-range monomials.

    Per position the two-factor expansion gives
    M_a M_b = sum_j e^j M_{a+b-2j} (j up to min(a, b)), twisted by p^i in
    the det exponent; the cross product of positions yields monomials with
    degrees <= 2p-2, finished off by _monomial_std.
    """
    g = pp.g
    combos = [(0, ())]
    for i in range(g):
        a, b = ks1[i], ks2[i]
        step = []
        for dm, cs in combos:
            for j in range(min(a, b) + 1):
                step.append((dm + j * pp.p ** i, cs + (a + b - 2 * j,)))
        combos = step
    out: dict[tuple[int, tuple[int, ...]], int] = {}
    for dm, cs in combos:
        for (dm2, ks), c in _monomial_std(pp, cs):
            _acc(out, (dm + dm2, ks), c)
    return tuple(sorted(out.items()))


@lru_cache(maxsize=None)
def _sym_std(pp: PrimePower, k: int):
    """Standard form of M_k (untwisted) for any integer k, as a label dict.

    k < 0 reflects through the negative-weight identity; k >= p recurses
    through M_k = M_{k-p} M_1^[1] - e^p M_{k-2p}.
    """
    p, g, qm1 = pp.p, pp.g, pp.q - 1
    if k == -1:
        return ()
    if k < -1:
        out = {}
        for (m, ks), c in _sym_std(pp, -k - 2):
            _acc(out, ((m + 1 + k) % qm1, ks), -c)
        return tuple(sorted(out.items()))
    if k <= p - 1:
        return (((0, (k,) + (0,) * (g - 1)), 1),)
    out = {}
    for (m, ks), c in _sym_std(pp, k - p):
        for c2, dm, ks2 in _bump(pp, ks, 1 % g):
            _acc(out, ((m + dm) % qm1, ks2), c * c2)
    for (m, ks), c in _sym_std(pp, k - 2 * p):
        _acc(out, ((m + p) % qm1, ks), -c)
    return tuple(sorted(out.items()))


def _twist_label(pp: PrimePower, label: Label, n: int) -> Label:
    m, ks = label
    g, qm1 = pp.g, pp.q - 1
    n %= g
    new_ks = tuple(ks[(i - n) % g] for i in range(g))
    return ((m * pp.p ** n) % qm1, new_ks)


# ---------------------------------------------------------------------------


class VirtualRep:
    """Integer combination of standard basis labels; immutable by convention."""

    __slots__ = ("pp", "terms")

    def __init__(self, pp: PrimePower, terms: dict[Label, int]):
        self.pp = pp
        self.terms = {k: v for k, v in terms.items() if v}

    @classmethod
    def zero(cls, pp: PrimePower) -> "VirtualRep":
        return cls(pp, {})

    @classmethod
    def unit(cls, pp: PrimePower) -> "VirtualRep":
        return cls(pp, {(0, (0,) * pp.g): 1})

    @classmethod
    def det_power(cls, pp: PrimePower, m: int) -> "VirtualRep":
        return cls(pp, {(m % (pp.q - 1), (0,) * pp.g): 1})

    @classmethod
    def label(cls, pp: PrimePower, m: int, ks, coeff: int = 1) -> "VirtualRep":
        lab = BasisLabel(m % (pp.q - 1), tuple(ks))
        lab.check(pp)
        return cls(pp, {(lab.m, lab.ks): coeff})

    def _check(self, other: "VirtualRep"):
        if self.pp != other.pp:
            raise ValueError(f"context mismatch: {self.pp} vs {other.pp}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, v)
        return VirtualRep(self.pp, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, -v)
        return VirtualRep(self.pp, out)

    def __neg__(self):
        return VirtualRep(self.pp, {k: -v for k, v in self.terms.items()})

    def scale(self, n: int) -> "VirtualRep":
        return VirtualRep(self.pp, {k: n * v for k, v in self.terms.items()})

    def __mul__(self, other):
        return mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, VirtualRep):
            return NotImplemented
        return self.pp == other.pp and self.terms == other.terms

    def __hash__(self):
        return hash((self.pp, tuple(sorted(self.terms.items()))))

    def is_zero(self) -> bool:
        return not self.terms

    def labels(self):
        return [BasisLabel(m, ks) for (m, ks) in sorted(self.terms)]

    def sorted_terms(self):
        return sorted(self.terms.items())

    def to_json_obj(self) -> dict:
        return {
            "p": self.pp.p,
            "g": self.pp.g,
            "terms": [
                {"coeff": c, "m": m, "ks": list(ks)}
                for (m, ks), c in self.sorted_terms()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj) -> "VirtualRep":
        pp = PrimePower(obj["p"], obj["g"])
        terms = {}
        for t in obj["terms"]:
            lab = BasisLabel(t["m"], tuple(t["ks"]))
            lab.check(pp)
            _acc(terms, (lab.m, lab.ks), t["coeff"])
        return cls(pp, terms)

    def __repr__(self):
        return f"VirtualRep(p={self.pp.p}, g={self.pp.g}, {format_text(self)})"


def format_text(v: VirtualRep) -> str:
    """Human-readable standard form, e.g. 'M1[1] + e^1*M1[0]'."""
    if not v.terms:
        return "0"
    parts = []
    for (m, ks), c in v.sorted_terms():
        factors = []
        if m:
            factors.append(f"e^{m}")
        factors.extend(f"M{k}[{i}]" for i, k in enumerate(ks) if k)
        if not factors:
            factors.append("M0[0]")
        body = "*".join(factors)
        if c == 1:
            parts.append(body)
        elif c == -1:
            parts.append(f"-{body}")
        else:
            parts.append(f"{c}*{body}")
    return " + ".join(parts).replace("+ -", "- ")


def sym(pp: PrimePower, k: int, twist: int = 0) -> VirtualRep:
    """Standard form of M_k^[twist] for any integer k."""
    base = VirtualRep(pp, dict(_sym_std(pp, k)))
    return frobenius_twist(base, twist) if twist % pp.g else base


def frobenius_twist(v: VirtualRep, n: int) -> VirtualRep:
    out: dict[Label, int] = {}
    for lab, c in v.terms.items():
        _acc(out, _twist_label(v.pp, lab, n), c)
    return VirtualRep(v.pp, out)


def mul(a: VirtualRep, b: VirtualRep) -> VirtualRep:
    a._check(b)
    pp = a.pp
    qm1 = pp.q - 1
    out: dict[Label, int] = {}
    for (m1, ks1), c1 in a.terms.items():
        for (m2, ks2), c2 in b.terms.items():
            c = c1 * c2
            for (dm, ks), c3 in _label_mul(pp, ks1, ks2):
                _acc(out, ((m1 + m2 + dm) % qm1, ks), c * c3)
    return VirtualRep(pp, out)


def dim(v: VirtualRep) -> int:
    total = 0
    for (_, ks), c in v.terms.items():
        d = 1
        for k in ks:
            d *= k + 1
        total += c * d
    return total


def product_term_to_vrep(pp: PrimePower, t: ProductTerm) -> VirtualRep:
    v = VirtualRep.det_power(pp, t.m).scale(t.coeff)
    for k, tw in t.factors:
        v = mul(v, sym(pp, k, tw))
    return v


def normalize_products(pp: PrimePower, terms) -> VirtualRep:
    out = VirtualRep.zero(pp)
    for t in terms:
        out = out + product_term_to_vrep(pp, t)
    return out


def normalize(pp: PrimePower, terms) -> VirtualRep:
    """Standard form of a sum of RawTerms."""
    return normalize_products(pp, [raw_to_product(t) for t in terms])


def product_term_dim(t: ProductTerm) -> int:
    d = t.coeff
    for k, _ in t.factors:
        d *= k + 1  # virtual dimension of M_k is k+1 for every integer k
    return d


# ---------------------------------------------------------------------------
# g = 1 alternative route, used only for confluence cross-checks


@lru_cache(maxsize=None)
def _sym_std_sigma(pp: PrimePower, k: int):
    """Standard form of M_k for g = 1 via the four-term relation.

    Rewrites M_k = M_{k-(p-1)} + e (M_{k-(p+1)} - M_{k-2p}); independent of
    the twist recursion used by _sym_std.
    """
    if pp.g != 1:
        raise ValueError("sigma route applies to g = 1 only")
    p, qm1 = pp.p, pp.q - 1
    if k == -1:
        return ()
    if k < -1:
        out = {}
        for (m, ks), c in _sym_std_sigma(pp, -k - 2):
            _acc(out, ((m + 1 + k) % qm1, ks), -c)
        return tuple(sorted(out.items()))
    if k <= p - 1:
        return (((0, (k,)), 1),)
    out = {}
    for (m, ks), c in _sym_std_sigma(pp, k - (p - 1)):
        _acc(out, (m, ks), c)
    for (m, ks), c in _sym_std_sigma(pp, k - (p + 1)):
        _acc(out, ((m + 1) % qm1, ks), c)
    for (m, ks), c in _sym_std_sigma(pp, k - 2 * p):
        _acc(out, ((m + 1) % qm1, ks), -c)
    return tuple(sorted(out.items()))


def sym_sigma_route(pp: PrimePower, k: int) -> VirtualRep:
    return VirtualRep(pp, dict(_sym_std_sigma(pp, k)))


# ---------------------------------------------------------------------------
# identity families


IDENTITIES = ("delta", "sigma", "pi", "phi", "phiprime", "phitw")


def identity_sides(pp: PrimePower, which: str, **params):
    """(lhs, rhs) as ProductTerm lists for one instance of an identity family.

    delta(k):    M_k + e^(1+k) M_{-k-2}  =  0
    sigma(k):    M_k - e M_{k-(q+1)}  =  M_{k-(q-1)} - e M_{k-2q}
    pi(n, m):    M_n M_m  =  M_{n+m} + e M_{n-1} M_{m-1}
    phi(k):      M_k  =  M_{k-p} M_1^[1] - e^p M_{k-2p}
    phiprime(k, h):  M_k M_h^[1] - e^p M_{k-p} M_{h-1}^[1]
                       =  M_{k-p} M_{h+1}^[1] - e^p M_{k-2p} M_h^[1]
    phitw(k, h, i):  phiprime twisted to positions [i], [i+1]
    """
    q, p = pp.q, pp.p
    if which == "delta":
        k = params["k"]
        lhs = [ProductTerm(1, 0, ((k, 0),)), ProductTerm(1, 1 + k, ((-k - 2, 0),))]
        return lhs, []
    if which == "sigma":
        k = params["k"]
        lhs = [ProductTerm(1, 0, ((k, 0),)), ProductTerm(-1, 1, ((k - (q + 1), 0),))]
        rhs = [ProductTerm(1, 0, ((k - (q - 1), 0),)), ProductTerm(-1, 1, ((k - 2 * q, 0),))]
        return lhs, rhs
    if which == "pi":
        n, m = params["n"], params["m"]
        lhs = [ProductTerm(1, 0, ((n, 0), (m, 0)))]
        rhs = [ProductTerm(1, 0, ((n + m, 0),)), ProductTerm(1, 1, ((n - 1, 0), (m - 1, 0)))]
        return lhs, rhs
    if which == "phi":
        k = params["k"]
        lhs = [ProductTerm(1, 0, ((k, 0),))]
        rhs = [ProductTerm(1, 0, ((k - p, 0), (1, 1))), ProductTerm(-1, p, ((k - 2 * p, 0),))]
        return lhs, rhs
    if which == "phiprime":
        k, h = params["k"], params["h"]
        lhs = [ProductTerm(1, 0, ((k, 0), (h, 1))), ProductTerm(-1, p, ((k - p, 0), (h - 1, 1)))]
        rhs = [ProductTerm(1, 0, ((k - p, 0), (h + 1, 1))), ProductTerm(-1, p, ((k - 2 * p, 0), (h, 1)))]
        return lhs, rhs
    if which == "phitw":
        k, h, i = params["k"], params["h"], params["i"]
        ep = p ** (i + 1)
        lhs = [ProductTerm(1, 0, ((k, i), (h, i + 1))),
               ProductTerm(-1, ep, ((k - p, i), (h - 1, i + 1)))]
        rhs = [ProductTerm(1, 0, ((k - p, i), (h + 1, i + 1))),
               ProductTerm(-1, ep, ((k - 2 * p, i), (h, i + 1)))]
        return lhs, rhs
    raise ValueError(f"unknown identity {which!r}; expected one of {IDENTITIES}")


def verify_identity(pp: PrimePower, which: str, check=("normalize", "char"), **params) -> bool:
    """True iff both sides normalize to the same standard form and (when
    requested) agree as Brauer characters on every regular class."""
    lhs, rhs = identity_sides(pp, which, **params)
    if "normalize" in check:
        if normalize_products(pp, lhs) != normalize_products(pp, rhs):
            return False
    if "char" in check:
        from . import brauer

        if not brauer.char_equal(pp, lhs, rhs):
            return False
    return True
