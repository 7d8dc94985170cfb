"""Exact arithmetic in Z[zeta_M], the value ring for lifted character values.

Elements are canonical residues modulo the M-th cyclotomic polynomial
Phi_M, with arbitrary-precision integer coefficients.  Working modulo
Phi_M rather than x^M - 1 matters: the quotient map
Z[x]/(x^M - 1) -> Z[zeta_M] has a nontrivial kernel, and two character
values computed along different expansion routes must compare equal in
Z[zeta_M] itself.

No division is ever performed in the ring; all quotients of root-of-unity
differences are expanded upstream as geometric sums.
"""

from __future__ import annotations

from functools import lru_cache


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_divmod_exact(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Long division by a monic integer polynomial."""
    assert den[-1] == 1
    num = list(num)
    q = [0] * max(1, len(num) - len(den) + 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        if c:
            q[i] = c
            for j, d in enumerate(den):
                num[i + j] -= c * d
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_poly(M: int) -> tuple[int, ...]:
    """Coefficients of Phi_M (low degree first), by exact division of x^M - 1.

    For non-squarefree M the identity Phi_M(x) = Phi_{M/p}(x^p) (p^2 | M)
    reduces the division work to the squarefree radical.
    """
    if M < 1:
        raise ValueError("M must be positive")
    if M == 1:
        return (-1, 1)
    for p in range(2, M):
        if p * p > M:
            break
        if M % (p * p) == 0:
            inner = cyclotomic_poly(M // p)
            out = [0] * ((len(inner) - 1) * p + 1)
            for i, c in enumerate(inner):
                out[i * p] = c
            return tuple(out)
    num = [0] * M + [1]
    num[0] = -1
    for d in _divisors(M)[:-1]:
        q, r = poly_divmod_exact(num, list(cyclotomic_poly(d)))
        assert r == [0], f"Phi_{d} does not divide x^{M}-1 exactly"
        num = q
    return tuple(num)


@lru_cache(maxsize=None)
def _reduction(M: int):
    """(degree of Phi_M, rows x^e mod Phi_M for deg <= e < 2*deg-1)."""
    phi = cyclotomic_poly(M)
    deg = len(phi) - 1
    rows = []
    cur = [-c for c in phi[:-1]]  # x^deg
    rows.append(tuple(cur))
    for _ in range(deg - 2):
        cur = [0] + cur
        c = cur.pop()
        if c:
            cur = [a - c * b for a, b in zip(cur, phi[:-1])]
        rows.append(tuple(cur))
    return deg, rows


def _reduce_full(M: int, coeffs: list[int]) -> tuple[int, ...]:
    """Canonical residue of an arbitrary-degree polynomial, exponents first
    folded mod M (zeta^M = 1), then reduced mod Phi_M."""
    folded = [0] * M
    for e, c in enumerate(coeffs):
        if c:
            folded[e % M] += c
    phi = list(cyclotomic_poly(M))
    deg = len(phi) - 1
    _, rem = poly_divmod_exact(folded, phi)
    rem = rem + [0] * (deg - len(rem))
    return tuple(rem[:deg])


class CycloInt:
    """An element of Z[zeta_M] as a canonical coefficient vector."""

    __slots__ = ("M", "coeffs")

    def __init__(self, M: int, coeffs):
        deg = len(cyclotomic_poly(M)) - 1
        coeffs = tuple(coeffs)
        assert len(coeffs) == deg
        self.M = M
        self.coeffs = coeffs

    @classmethod
    def from_poly(cls, M: int, coeffs) -> "CycloInt":
        return cls(M, _reduce_full(M, list(coeffs)))

    @classmethod
    def zero(cls, M: int) -> "CycloInt":
        return cls(M, (0,) * (len(cyclotomic_poly(M)) - 1))

    @classmethod
    def integer(cls, M: int, n: int) -> "CycloInt":
        deg = len(cyclotomic_poly(M)) - 1
        if deg == 0:
            raise ValueError("Phi_1 gives a trivial quotient; M must be > 1 for values")
        return cls(M, (n,) + (0,) * (deg - 1))

    def _check(self, other: "CycloInt"):
        if not isinstance(other, CycloInt):
            raise TypeError(f"expected CycloInt, got {type(other).__name__}")
        if self.M != other.M:
            raise ValueError(f"mixed roots of unity: M={self.M} vs M={other.M}")

    def __add__(self, other):
        self._check(other)
        return CycloInt(self.M, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return CycloInt(self.M, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return CycloInt(self.M, tuple(-a for a in self.coeffs))

    def scale(self, n: int) -> "CycloInt":
        return CycloInt(self.M, tuple(n * a for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        deg, rows = _reduction(self.M)
        prod = poly_mul(list(self.coeffs), list(other.coeffs))
        out = list(prod[:deg]) + [0] * max(0, deg - len(prod))
        for e in range(deg, len(prod)):
            c = prod[e]
            if c:
                row = rows[e - deg]
                for i, r in enumerate(row):
                    if r:
                        out[i] += c * r
        return CycloInt(self.M, tuple(out))

    def __eq__(self, other):
        if not isinstance(other, CycloInt):
            return NotImplemented
        return self.M == other.M and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.M, self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __repr__(self):
        return f"CycloInt(M={self.M}, {list(self.coeffs)})"


@lru_cache(maxsize=None)
def _zeta_rows(M: int) -> tuple[tuple[int, ...], ...]:
    """Canonical vectors of zeta^e for 0 <= e < M."""
    deg = len(cyclotomic_poly(M)) - 1
    rows = []
    for e in range(M):
        v = [0] * max(e + 1, deg)
        v[e] = 1
        rows.append(_reduce_full(M, v))
    return tuple(rows)


def zeta_pow(M: int, e: int) -> CycloInt:
    """zeta_M^e as a canonical element (e reduced mod M)."""
    return CycloInt(M, _zeta_rows(M)[e % M])


def from_exponent_counter(M: int, items) -> CycloInt:
    """sum of c * zeta^e over (e, c) pairs, reduced canonically."""
    folded = [0] * M
    for e, c in items:
        if c:
            folded[e % M] += c
    return CycloInt.from_poly(M, folded)


def sparse_is_zero(M: int, items) -> bool:
    """Decide sum c*zeta_M^e = 0 in Z[zeta_M] from sparse (e, c) pairs.

    Used by the character oracle's exact fallback; avoids building
    canonical vectors when the folded polynomial is already zero.
    """
    folded = [0] * M
    nonzero = False
    for e, c in items:
        if c:
            folded[e % M] += c
    for c in folded:
        if c:
            nonzero = True
            break
    if not nonzero:
        return True
    phi = list(cyclotomic_poly(M))
    if M > 2000:
        rem = _remainder_numpy(folded, phi)
        if rem is not None:
            return not rem.any()
    _, rem = poly_divmod_exact(folded, phi)
    return all(c == 0 for c in rem)


def _remainder_numpy(num: list[int], den: list[int]):
    """int64 remainder of num by monic den, or None if coefficients might
    overflow (caller then falls back to exact Python integers)."""
    import numpy as np

    limit = 1 << 52
    if max(abs(c) for c in num) >= limit:
        return None
    r = np.asarray(num, dtype=np.int64)
    d = np.asarray(den, dtype=np.int64)
    nd = len(den)
    for i in range(len(num) - nd, -1, -1):
        c = r[i + nd - 1]
        if c:
            r[i:i + nd] -= c * d
            if abs(c) >= limit or np.abs(r[i:i + nd]).max() >= limit:
                return None
    return r[:nd - 1]
