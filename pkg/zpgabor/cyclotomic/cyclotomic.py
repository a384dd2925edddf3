"""Exact arithmetic in the cyclotomic field Q(zeta_p), p prime.

An element is stored on the power basis zeta^1 .. zeta^(p-1) with a common
denominator. Constants are folded in through 1 = -(zeta + ... + zeta^(p-1)),
so two elements are equal exactly when their coefficient vectors are equal.

Internally products and sums run in the group ring Q[Z_p] (vectors of length
p indexed by the exponent 0..p-1) and are folded back to the basis at the end.
"""
from __future__ import annotations

import cmath
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import mpmath
import sympy

from zpgabor.errors import DomainError, FieldMismatchError

RationalLike = Union[int, Fraction]

# Float embedding error stays below FLOAT_EMBEDDING_EPS * sum(|c_j|) for the
# default precision.
FLOAT_EMBEDDING_EPS = 1e-14


@lru_cache(maxsize=None)
def _is_prime(p: int) -> bool:
    return bool(sympy.isprime(p))


def check_prime(p: int) -> int:
    if isinstance(p, bool) or not isinstance(p, int) or p < 2 or not _is_prime(p):
        raise DomainError(f"p must be a prime, got {p!r}", {"p": repr(p)})
    return p


def check_odd_prime(p: int) -> int:
    check_prime(p)
    if p == 2:
        raise DomainError("p must be an odd prime, got 2", {"p": p})
    return p


def group_ring_is_zero(vec: Sequence[int]) -> bool:
    """A vector over zeta^0..zeta^(p-1) is zero in Q(zeta_p) iff it is constant."""
    first = vec[0]
    return all(v == first for v in vec)


class CycNum:
    __slots__ = ("_p", "_nums", "_den", "_hash")

    def __init__(self, p: int, coeffs: Sequence[RationalLike]):
        check_prime(p)
        if len(coeffs) != p - 1:
            raise DomainError(
                f"expected {p - 1} coefficients for p={p}, got {len(coeffs)}",
                {"p": p, "length": len(coeffs)},
            )
        fracs = [Fraction(c) for c in coeffs]
        den = lcm(*(f.denominator for f in fracs)) if fracs else 1
        self._assign(p, [f.numerator * (den // f.denominator) for f in fracs], den)

    def _assign(self, p: int, nums: Sequence[int], den: int) -> None:
        if den < 0:
            nums = [-n for n in nums]
            den = -den
        g = gcd(den, *nums)
        self._p = p
        self._nums: Tuple[int, ...] = tuple(n // g for n in nums)
        self._den: int = den // g
        self._hash: Optional[int] = None

    @classmethod
    def _make(cls, p: int, nums: Sequence[int], den: int) -> CycNum:
        obj = cls.__new__(cls)
        obj._assign(p, nums, den)
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> CycNum:
        check_prime(p)
        return cls._make(p, [0] * (p - 1), 1)

    @classmethod
    def one(cls, p: int) -> CycNum:
        return cls.from_rational(p, 1)

    @classmethod
    def from_rational(cls, p: int, value: RationalLike) -> CycNum:
        check_prime(p)
        q = Fraction(value)
        return cls._make(p, [-q.numerator] * (p - 1), q.denominator)

    @classmethod
    def root(cls, p: int, k: int) -> CycNum:
        """zeta^k."""
        check_prime(p)
        vec = [0] * p
        vec[k % p] = 1
        return cls.from_group_ring(p, vec)

    @classmethod
    def from_group_ring(cls, p: int, vec: Sequence[int], den: int = 1) -> CycNum:
        """Fold sum_j vec[j] zeta^j / den onto the canonical basis."""
        if len(vec) != p:
            raise DomainError(f"group ring vector must have length {p}", {"p": p, "length": len(vec)})
        c0 = vec[0]
        return cls._make(p, [v - c0 for v in vec[1:]], den)

    @classmethod
    def from_exponents(cls, p: int, exponents: Iterable[int]) -> CycNum:
        """sum of zeta^k over the given exponents (with multiplicity)."""
        vec = [0] * p
        for k in exponents:
            vec[k % p] += 1
        return cls.from_group_ring(p, vec)

    # -- accessors ----------------------------------------------------------

    @property
    def p(self) -> int:
        return self._p

    @property
    def numerators(self) -> Tuple[int, ...]:
        return self._nums

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(n, self._den) for n in self._nums)

    def lift(self) -> List[int]:
        """Group ring numerators over zeta^0..zeta^(p-1); divide by `denominator`."""
        return [0, *self._nums]

    # -- field operations ---------------------------------------------------

    def _coerce(self, other: object) -> Optional[CycNum]:
        if isinstance(other, CycNum):
            if other._p != self._p:
                raise FieldMismatchError(
                    f"cannot combine Q(zeta_{self._p}) with Q(zeta_{other._p})",
                    {"p": self._p, "other_p": other._p},
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.from_rational(self._p, other)
        return None

    def __add__(self, other: object) -> CycNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        den = lcm(self._den, o._den)
        a, b = den // self._den, den // o._den
        return CycNum._make(self._p, [x * a + y * b for x, y in zip(self._nums, o._nums)], den)

    __radd__ = __add__

    def __neg__(self) -> CycNum:
        return CycNum._make(self._p, [-x for x in self._nums], self._den)

    def __sub__(self, other: object) -> CycNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> CycNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> CycNum:
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycNum._make(self._p, [x * q.numerator for x in self._nums], self._den * q.denominator)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self._p
        u, v = self.lift(), o.lift()
        out = [0] * p
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if vj:
                    out[(i + j) % p] += ui * vj
        return CycNum.from_group_ring(p, out, self._den * o._den)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> CycNum:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(zeta_p)")
            return self * (1 / Fraction(other))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> CycNum:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> CycNum:
        if n < 0:
            return self.inverse() ** (-n)
        result = CycNum.one(self._p)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def galois(self, k: int) -> CycNum:
        """Image under the automorphism zeta -> zeta^k, k a unit mod p."""
        p = self._p
        if k % p == 0:
            raise DomainError(f"zeta -> zeta^{k} is not an automorphism for p={p}", {"p": p, "k": k})
        u = self.lift()
        out = [0] * p
        for j, c in enumerate(u):
            out[(j * k) % p] += c
        return CycNum.from_group_ring(p, out, self._den)

    def conj(self) -> CycNum:
        return self.galois(self._p - 1)

    def abs_sq(self) -> CycNum:
        return self * self.conj()

    def norm(self) -> Fraction:
        """Field norm: product of all Galois conjugates (a rational)."""
        result = self
        for k in range(2, self._p):
            result = result * self.galois(k)
        return result.to_rational()

    def inverse(self) -> CycNum:
        if not self:
            raise ZeroDivisionError("zero has no inverse in Q(zeta_p)")
        cofactor = CycNum.one(self._p)
        for k in range(2, self._p):
            cofactor = cofactor * self.galois(k)
        return cofactor * (1 / (self * cofactor).to_rational())

    # -- predicates ---------------------------------------------------------

    def __bool__(self) -> bool:
        return any(self._nums)

    def is_zero(self) -> bool:
        return not self

    def is_rational(self) -> bool:
        first = self._nums[0]
        return all(n == first for n in self._nums)

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise DomainError(f"{self} is not rational", {"value": str(self)})
        return Fraction(-self._nums[0], self._den)

    def is_real(self) -> bool:
        return self == self.conj()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycNum):
            return self._p == other._p and self._nums == other._nums and self._den == other._den
        if isinstance(other, (int, Fraction)):
            return self == CycNum.from_rational(self._p, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._p, self._nums, self._den))
        return self._hash

    # -- embeddings ---------------------------------------------------------

    def to_complex(self, precision: int = 15) -> Union[complex, mpmath.mpc]:
        """Embed via zeta -> exp(2 pi i / p).

        With the default precision (decimal digits) the result is a Python
        complex whose error is bounded by FLOAT_EMBEDDING_EPS * sum(|c_j|).
        Higher precisions are evaluated with mpmath and return an mpc.
        """
        p = self._p
        if precision <= 15:
            total = 0j
            for j, n in enumerate(self._nums, start=1):
                if n:
                    total += (n / self._den) * cmath.exp(2j * cmath.pi * j / p)
            return total
        with mpmath.workdps(precision):
            total = mpmath.mpc(0)
            for j, n in enumerate(self._nums, start=1):
                if n:
                    total += mpmath.mpf(n) / self._den * mpmath.expjpi(mpmath.mpf(2 * j) / p)
            return total

    def __complex__(self) -> complex:
        return complex(self.to_complex())

    # -- display ------------------------------------------------------------

    def __repr__(self) -> str:
        return f"CycNum(p={self._p}, {self})"

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.to_rational())
        vec = self.lift()
        # shift by the most common entry so the display has the fewest terms
        counts = Counter(vec)
        best = max(counts.items(), key=lambda kv: (kv[1], -abs(kv[0]), kv[0]))[0]
        terms = []
        for j, c in enumerate(vec):
            c = Fraction(c - best, self._den)
            if not c:
                continue
            base = "1" if j == 0 else ("ζ" if j == 1 else f"ζ^{j}")
            if j == 0:
                body = str(abs(c))
            elif abs(c) == 1:
                body = base
            else:
                body = f"{abs(c)}{base}"
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        text = f"-{body}" if sign == "-" else body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def cyc_from_root_power(p: int, k: int) -> CycNum:
    return CycNum.root(p, k)


def cyc_add(a: CycNum, b: CycNum) -> CycNum:
    return a + b


def cyc_mul(a: CycNum, b: CycNum) -> CycNum:
    return a * b


def cyc_neg(a: CycNum) -> CycNum:
    return -a


def cyc_conj(a: CycNum) -> CycNum:
    return a.conj()


def cyc_abs_sq(a: CycNum) -> CycNum:
    return a.abs_sq()


def gauss_sum(p: int) -> CycNum:
    """sum over t in Z_p of zeta^(t^2); its squared modulus is p."""
    check_odd_prime(p)
    return CycNum.from_exponents(p, (t * t for t in range(p)))


def cyc_to_complex(a: CycNum, precision: int = 15) -> Union[complex, mpmath.mpc]:
    return a.to_complex(precision)
