"""Exact arithmetic in F_q and F_{q^2}, q = p^g.

Element encodings are plain integers:

* F_q elements are encoded in [0, q) as base-p digit vectors of the
  residue class of c_0 + c_1*x + ... + c_{g-1}*x^{g-1} modulo the
  defining polynomial, i.e. enc = sum c_i * p^i.
* F_{q^2} elements are encoded in [0, q^2) as a + b*q where a, b in
  [0, q) are the coordinates with respect to the basis {1, theta},
  theta a root of the defining quadratic over F_q.

Defining polynomials are pinned deterministically: among the monic
irreducible polynomials of the required degree, the one whose
non-leading coefficient vector has the smallest integer encoding
(sum of coeff_i * base^i) is chosen.  Any fixed choice works since all
embeddings iota: F_{q^2} -> M_2(F_q) are conjugate; pinning makes every
matrix bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

_MAX_Q = 1024  # desk-scale cap; q beyond a few hundred is out of scope


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class PrimePower:
    """The pair (p, g) with q = p^g and M = q^2 - 1."""

    p: int
    g: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.g < 1:
            raise ValueError(f"g = {self.g} must be >= 1")
        if self.p ** self.g > _MAX_Q:
            raise ValueError(f"q = p^g = {self.p ** self.g} exceeds supported size {_MAX_Q}")

    @property
    def q(self) -> int:
        return self.p ** self.g

    @property
    def M(self) -> int:
        return self.q * self.q - 1


# ---------------------------------------------------------------------------
# dense polynomial arithmetic over F_p (coefficient lists, low degree first)

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a, b, f, p):
    """a*b mod f over F_p; f monic."""
    n = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1 if a and b else 0)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for d in range(len(prod) - 1, n - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for j in range(n):
                prod[d - n + j] = (prod[d - n + j] - c * f[j]) % p
    return _poly_trim(prod[:n] + [0] * max(0, n - len(prod)))


def _poly_powmod(a, e, f, p):
    r = [1]
    b = list(a)
    while e:
        if e & 1:
            r = _poly_mulmod(r, b, f, p)
        b = _poly_mulmod(b, b, f, p)
        e >>= 1
    return r


def _poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        # a mod b
        inv_lead = pow(b[-1], p - 2, p)
        while len(a) >= len(b) and a:
            c = (a[-1] * inv_lead) % p
            if c:
                shift = len(a) - len(b)
                for j in range(len(b)):
                    a[shift + j] = (a[shift + j] - c * b[j]) % p
            _poly_trim(a)
            if not a:
                break
        a, b = b, a
    return a


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _poly_trim([(x - y) % p for x, y in zip(a, b)])


def _is_irreducible(f, p):
    """Rabin test for a monic polynomial f over F_p."""
    n = len(f) - 1
    if n <= 0:
        return False
    x_red = _poly_mulmod([1], [0, 1], f, p)  # x mod f
    xq = _poly_powmod([0, 1], p ** n, f, p)
    if _poly_sub(xq, x_red, p):
        return False
    for ell in prime_factors(n):
        xe = _poly_powmod([0, 1], p ** (n // ell), f, p)
        diff = _poly_sub(xe, x_red, p)
        if len(_poly_gcd(f, diff, p)) - 1 != 0:
            return False
    return True


def _smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Monic irreducible of degree n over F_p with smallest coefficient encoding."""
    for enc in range(p ** n):
        coeffs = [(enc // p ** i) % p for i in range(n)] + [1]
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")


# ---------------------------------------------------------------------------

Mat2 = tuple[int, int, int, int]
"""2x2 matrix (a, b, c, d) over F_q, row-major: rows (a b) / (c d)."""


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """Immutable arithmetic context for F_q inside F_{q^2}.

    All tables are fixed at construction; every operation is pure, so a
    context may be shared freely across threads.
    """

    ppow: PrimePower
    fq_poly: tuple[int, ...]        # degree-g defining polynomial over F_p
    fq2_poly: tuple[int, int, int]  # monic quadratic (c0, c1, 1) over F_q
    gamma2: int                     # generator of F_{q^2}^x, order M
    exp2: tuple[int, ...]           # exp2[e] = gamma2^e, length M
    dlog2: tuple[int, ...]          # dlog2[enc] for enc != 0, dlog2[0] = -1
    _tables: dict = field(default_factory=dict, repr=False, compare=False)

    # ---- F_q arithmetic (integer encodings) ----

    @property
    def p(self) -> int:
        return self.ppow.p

    @property
    def g(self) -> int:
        return self.ppow.g

    @property
    def q(self) -> int:
        return self.ppow.q

    @property
    def M(self) -> int:
        return self.ppow.M

    @property
    def gamma1(self) -> int:
        """Generator of F_q^x: gamma2^(q+1)."""
        return self.exp2[(self.q + 1) % self.M]

    def add(self, a: int, b: int) -> int:
        p = self.p
        r, mult = 0, 1
        while a or b:
            r += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return r

    def neg(self, a: int) -> int:
        p = self.p
        r, mult = 0, 1
        while a:
            r += ((p - a % p) % p) * mult
            a //= p
            mult *= p
        return r

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp2[(self.dlog2[a] + self.dlog2[b]) % self.M]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        return self.exp2[(-self.dlog2[a]) % self.M]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 0 if e else 1
        return self.exp2[(self.dlog2[a] * e) % self.M]

    def fq_elements(self) -> range:
        return range(self.q)

    def fq_dlog(self, a: int) -> int:
        """Discrete log of a in F_q^x with respect to gamma1."""
        if a == 0 or a >= self.q:
            raise ValueError(f"{a} is not in F_q^x")
        d = self.dlog2[a]
        assert d % (self.q + 1) == 0
        return d // (self.q + 1)

    # ---- F_{q^2} arithmetic: enc = a + b*q for a + b*theta ----

    def add2(self, x: int, y: int) -> int:
        q = self.q
        return self.add(x % q, y % q) + q * self.add(x // q, y // q)

    def neg2(self, x: int) -> int:
        q = self.q
        return self.neg(x % q) + q * self.neg(x // q)

    def mul2(self, x: int, y: int) -> int:
        # (a + b t)(c + d t) with t^2 = -c1 t - c0
        q = self.q
        a, b = x % q, x // q
        c, d = y % q, y // q
        c0, c1, _ = self.fq2_poly
        bd = self.mul(b, d)
        lo = self.sub(self.mul(a, c), self.mul(bd, c0))
        hi = self.sub(self.add(self.mul(a, d), self.mul(b, c)), self.mul(bd, c1))
        return lo + q * hi

    def pow2(self, x: int, e: int) -> int:
        if x == 0:
            return 0 if e else 1
        return self.exp2[(self.dlog2[x] * e) % self.M]

    def in_fq(self, x: int) -> bool:
        return x < self.q

    def frobenius(self, x: int, n: int = 1) -> int:
        """x^(p^n) for x in F_{q^2} (n reduced mod 2g; mod g on F_q)."""
        if x == 0:
            return 0
        return self.exp2[(self.dlog2[x] * pow(self.p, n % (2 * self.g), self.M)) % self.M]

    def embed_iota(self, c: int) -> Mat2:
        """Regular-representation embedding of c in F_{q^2}^x on the basis {1, theta}.

        Columns are the coordinates of c*1 and c*theta, so det iota(c) is
        the norm c^(1+q) and trace iota(c) = c + c^q.
        """
        if c == 0:
            raise ValueError("iota is only defined on nonzero elements")
        q = self.q
        a, b = c % q, c // q
        c0, c1, _ = self.fq2_poly
        # c*theta = -b*c0 + (a - b*c1) theta
        return (a, self.neg(self.mul(b, c0)),
                b, self.sub(a, self.mul(b, c1)))

    # ---- 2x2 matrices over F_q ----

    def mat_mul(self, m1: Mat2, m2: Mat2) -> Mat2:
        a, b, c, d = m1
        e, f, g_, h = m2
        return (self.add(self.mul(a, e), self.mul(b, g_)),
                self.add(self.mul(a, f), self.mul(b, h)),
                self.add(self.mul(c, e), self.mul(d, g_)),
                self.add(self.mul(c, f), self.mul(d, h)))

    def mat_det(self, m: Mat2) -> int:
        a, b, c, d = m
        return self.sub(self.mul(a, d), self.mul(b, c))

    def mat_inv(self, m: Mat2) -> Mat2:
        a, b, c, d = m
        det = self.mat_det(m)
        if det == 0:
            raise ValueError("singular matrix")
        di = self.inv(det)
        return (self.mul(d, di), self.mul(self.neg(b), di),
                self.mul(self.neg(c), di), self.mul(a, di))

    def mat_frob(self, m: Mat2, n: int) -> Mat2:
        return tuple(self.frobenius(x, n) for x in m)  # type: ignore[return-value]

    def gl2_generators(self) -> list[Mat2]:
        """diag(gamma1, 1), the standard unipotent, and the Weyl element.

        These generate GL_2(F_q): conjugating the unipotent by powers of the
        diagonal element yields (1 x; 0 1) for every x (gamma1 generates
        F_q^x), the Weyl element gives the lower unipotents, and together
        they give SL_2; the diagonal element supplies all determinants.
        Verified by explicit closure for q <= 9 in the test suite.
        """
        one = 1
        return [(self.gamma1, 0, 0, one), (one, one, 0, one), (0, one, one, 0)]

    # ---- numpy lookup tables for dense linear algebra ----

    def tables(self):
        """GFTables bundle for vectorized F_q work (built lazily, cached)."""
        t = self._tables.get("fq")
        if t is None:
            from .linalg import tables_from_ops

            t = tables_from_ops(self.q, self.add, self.mul, self.neg, self.inv)
            self._tables["fq"] = t
        return t

    def tables2(self):
        """GFTables bundle for F_{q^2}; only sensible for small q."""
        t = self._tables.get("fq2")
        if t is None:
            if self.q > 32:
                raise ValueError(f"F_{{q^2}} tables for q={self.q} exceed desk scale")
            from .linalg import tables_from_ops

            def inv2(x):
                return self.exp2[(-self.dlog2[x]) % self.M]

            t = tables_from_ops(self.q * self.q, self.add2, self.mul2, self.neg2, inv2)
            self._tables["fq2"] = t
        return t


def _build_fq2(p: int, g: int):
    """Construct the tower F_p -> F_q -> F_{q^2} with pinned polynomials."""
    fq_poly = _smallest_irreducible(p, g)
    q = p ** g

    # temporary F_q multiplication by polynomial arithmetic, used to pick the
    # quadratic and bootstrap the dlog tables
    def dec(a):
        return [(a // p ** i) % p for i in range(g)]

    def enc(cs):
        return sum((c % p) * p ** i for i, c in enumerate(cs))

    def fq_mul(a, b):
        r = _poly_mulmod(dec(a), dec(b), list(fq_poly), p)
        return enc(r + [0] * (g - len(r)))

    def fq_add(a, b):
        return enc([(x + y) % p for x, y in zip(dec(a), dec(b))])

    def fq_neg(a):
        return enc([(-x) % p for x in dec(a)])

    # smallest monic irreducible quadratic y^2 + c1 y + c0 over F_q:
    # irreducible iff it has no root in F_q
    fq2_poly = None
    for encoding in range(q * q):
        c0, c1 = encoding % q, encoding // q
        if all(fq_add(fq_add(fq_mul(y, y), fq_mul(c1, y)), c0) != 0 for y in range(q)):
            fq2_poly = (c0, c1, 1)
            break
    assert fq2_poly is not None

    c0, c1, _ = fq2_poly

    def fq2_mul(x, y):
        a, b = x % q, x // q
        c, d = y % q, y // q
        bd = fq_mul(b, d)
        lo = fq_add(fq_mul(a, c), fq_neg(fq_mul(bd, c0)))
        hi = fq_add(fq_add(fq_mul(a, d), fq_mul(b, c)), fq_neg(fq_mul(bd, c1)))
        return lo + q * hi

    M = q * q - 1
    factors = prime_factors(M)

    def order_is_M(x):
        for ell in factors:
            y, e = 1, M // ell
            b = x
            while e:
                if e & 1:
                    y = fq2_mul(y, b)
                b = fq2_mul(b, b)
                e >>= 1
            if y == 1:
                return False
        return True

    gamma2 = next(x for x in range(2, q * q) if order_is_M(x))

    exp2 = [0] * M
    exp2[0] = 1
    for e in range(1, M):
        exp2[e] = fq2_mul(exp2[e - 1], gamma2)
    dlog2 = [-1] * (q * q)
    for e, x in enumerate(exp2):
        dlog2[x] = e
    return fq_poly, fq2_poly, gamma2, tuple(exp2), tuple(dlog2)


@lru_cache(maxsize=None)
def build_field(p: int, g: int) -> FieldCtx:
    """Build (and cache) the arithmetic context for F_q, q = p^g."""
    ppow = PrimePower(p, g)
    fq_poly, fq2_poly, gamma2, exp2, dlog2 = _build_fq2(p, g)
    ctx = FieldCtx(ppow, fq_poly, fq2_poly, gamma2, exp2, dlog2)
    # generator order M is certified by construction; spot-check the tables
    assert ctx.exp2[0] == 1 and len(set(ctx.exp2)) == ctx.M
    return ctx
