"""Scalar backends for window arithmetic.

The exact backend works in Q(zeta_p) and is authoritative. The float backend
is a complex128 shadow used for cross-checks and search prefilters; its zero
test is relative to a caller-supplied scale.
"""
from __future__ import annotations

import cmath
import math
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from zpgabor.config import get_settings
from zpgabor.cyclotomic.cyclotomic import CycNum
from zpgabor.errors import DomainError, FieldMismatchError
from zpgabor.group.group import GroupParams
from zpgabor.models.documents import Backend, CycNumDocument

Scalar = Union[CycNum, complex]
ScalarLike = Union[CycNum, complex, float, int, Fraction]

INT64_LIMIT = 2 ** 62


def _lift_matrix(values: Sequence[CycNum], p: int, growth: int) -> Tuple[np.ndarray, int]:
    """Group-ring numerators of `values` over a common denominator, one row per value.

    Falls back to an object array when `growth` times the largest entry could
    overflow int64.
    """
    den = math.lcm(*(v.denominator for v in values)) if values else 1
    rows = []
    peak = 0
    for v in values:
        scale = den // v.denominator
        row = [0] + [n * scale for n in v.numerators]
        peak = max(peak, max(abs(x) for x in row))
        rows.append(row)
    arr = np.array(rows, dtype=object).reshape(len(values), p)
    if peak * growth < INT64_LIMIT:
        arr = arr.astype(np.int64)
    return arr, den


def _fold(p: int, acc: np.ndarray, den: int) -> CycNum:
    return CycNum.from_group_ring(p, [int(x) for x in acc], den)


class TransformBackend(ABC):
    """Scalar interface shared by windows, transforms and Gabor checks"""
    kind: Backend
    authoritative: bool

    @abstractmethod
    def coerce(self, p: int, value: ScalarLike) -> Scalar:
        pass

    def zero(self, p: int) -> Scalar:
        return self.coerce(p, 0)

    def one(self, p: int) -> Scalar:
        return self.coerce(p, 1)

    @abstractmethod
    def root(self, p: int, k: int) -> Scalar:
        """zeta^k"""
        pass

    @abstractmethod
    def is_zero(self, value: Scalar, scale: float = 1.0) -> bool:
        pass

    def equal(self, a: Scalar, b: Scalar, scale: float = 1.0) -> bool:
        return self.is_zero(a - b, scale)

    @abstractmethod
    def conj(self, value: Scalar) -> Scalar:
        pass

    @abstractmethod
    def abs_sq(self, value: Scalar) -> Scalar:
        pass

    @abstractmethod
    def as_rational(self, value: Scalar) -> Optional[Union[Fraction, float]]:
        """The value as a real number if it is one (rational for the exact backend)."""
        pass

    @abstractmethod
    def magnitude(self, value: Scalar) -> float:
        pass

    def distinct(self, values: Sequence[Scalar], scale: float = 1.0) -> List[Scalar]:
        reps: List[Scalar] = []
        for v in values:
            if not any(self.equal(v, r, scale) for r in reps):
                reps.append(v)
        return reps

    @abstractmethod
    def dft(self, params: GroupParams, values: Sequence[Scalar]) -> Tuple[Scalar, ...]:
        """p^-d sum_x zeta^(-x.m) g(x) for every m."""
        pass

    @abstractmethod
    def idft(self, params: GroupParams, values: Sequence[Scalar]) -> Tuple[Scalar, ...]:
        """sum_m zeta^(x.m) G(m) for every x."""
        pass

    @abstractmethod
    def ambiguity(self, params: GroupParams, values: Sequence[Scalar], da: int, dbs: Sequence[int]) -> List[Scalar]:
        """V(da, db) = sum_y g(y - da) conj(g(y)) zeta^(y.db) for each db in dbs."""
        pass

    @abstractmethod
    def exponential_sum(
        self,
        params: GroupParams,
        indices: Sequence[int],
        m: int,
        weights: Optional[Sequence[Scalar]] = None,
    ) -> Scalar:
        """sum over x in indices of w(x) zeta^(x.m)."""
        pass

    @abstractmethod
    def to_json(self, value: Scalar) -> Any:
        pass

    @abstractmethod
    def from_json(self, p: int, obj: Any) -> Scalar:
        pass


class ExactBackend(TransformBackend):
    kind = Backend.EXACT
    authoritative = True

    def coerce(self, p: int, value: ScalarLike) -> CycNum:
        if isinstance(value, CycNum):
            if value.p != p:
                raise FieldMismatchError(
                    f"value lives in Q(zeta_{value.p}), expected Q(zeta_{p})",
                    {"p": p, "value_p": value.p},
                )
            return value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, (int, Fraction)):
            return CycNum.from_rational(p, value)
        raise DomainError(f"exact backend cannot represent {value!r}", {"value": repr(value)})

    def root(self, p: int, k: int) -> CycNum:
        return CycNum.root(p, k)

    def is_zero(self, value: CycNum, scale: float = 1.0) -> bool:
        return value.is_zero()

    def conj(self, value: CycNum) -> CycNum:
        return value.conj()

    def abs_sq(self, value: CycNum) -> CycNum:
        return value.abs_sq()

    def as_rational(self, value: CycNum) -> Optional[Fraction]:
        return value.to_rational() if value.is_rational() else None

    def magnitude(self, value: CycNum) -> float:
        return abs(value.to_complex())

    def distinct(self, values: Sequence[CycNum], scale: float = 1.0) -> List[CycNum]:
        return list(dict.fromkeys(values))

    def _transform(self, params: GroupParams, values: Sequence[CycNum], forward: bool) -> Tuple[CycNum, ...]:
        p, n = params.p, params.size
        lifted, den = _lift_matrix(values, p, n)
        cols = np.arange(p)
        sign = 1 if forward else -1
        out_den = den * n if forward else den
        out = []
        for m in range(n):
            k = params.dot_table(m)
            idx = (cols[None, :] + sign * k[:, None]) % p
            acc = np.take_along_axis(lifted, idx, axis=1).sum(axis=0)
            out.append(_fold(p, acc, out_den))
        return tuple(out)

    def dft(self, params: GroupParams, values: Sequence[CycNum]) -> Tuple[CycNum, ...]:
        return self._transform(params, values, forward=True)

    def idft(self, params: GroupParams, values: Sequence[CycNum]) -> Tuple[CycNum, ...]:
        return self._transform(params, values, forward=False)

    def ambiguity(self, params: GroupParams, values: Sequence[CycNum], da: int, dbs: Sequence[int]) -> List[CycNum]:
        p, n = params.p, params.size
        lifted, den = _lift_matrix(values, p, 1)
        peak = int(np.abs(lifted).max()) if lifted.size else 0
        if peak * peak * p * n >= INT64_LIMIT:
            lifted = lifted.astype(object)
        cols = np.arange(p)
        shifted = lifted[params.translation_table(params.neg_index(da))]
        conj = lifted[:, (-cols) % p]
        prod = np.zeros_like(lifted)
        for s in range(p):
            prod = prod + np.roll(shifted, s, axis=1) * conj[:, s:s + 1]
        out = []
        for db in dbs:
            k = params.dot_table(db)
            idx = (cols[None, :] - k[:, None]) % p
            acc = np.take_along_axis(prod, idx, axis=1).sum(axis=0)
            out.append(_fold(p, acc, den * den))
        return out

    def exponential_sum(
        self,
        params: GroupParams,
        indices: Sequence[int],
        m: int,
        weights: Optional[Sequence[ScalarLike]] = None,
    ) -> CycNum:
        p = params.p
        k = params.dot_table(m)
        if weights is None:
            return CycNum.from_exponents(p, (int(k[x]) for x in indices))
        total = CycNum.zero(p)
        for x, w in zip(indices, weights):
            total = total + self.coerce(p, w) * CycNum.root(p, int(k[x]))
        return total

    def to_json(self, value: CycNum) -> Dict[str, Any]:
        return CycNumDocument.from_cyc(value).model_dump(mode="json")

    def from_json(self, p: int, obj: Any) -> CycNum:
        if isinstance(obj, (int, str)) and not isinstance(obj, bool):
            return CycNum.from_rational(p, Fraction(obj))
        if not isinstance(obj, dict):
            raise DomainError("exact scalars must be CycNum documents", {"value": repr(obj)})
        return self.coerce(p, CycNumDocument.model_validate(obj).to_cyc())


class FloatBackend(TransformBackend):
    kind = Backend.FLOAT
    authoritative = False

    def __init__(self, tolerance: Optional[float] = None):
        self._tolerance = tolerance

    @property
    def tolerance(self) -> float:
        return self._tolerance if self._tolerance is not None else get_settings().float_tolerance

    def coerce(self, p: int, value: ScalarLike) -> complex:
        if isinstance(value, CycNum):
            if value.p != p:
                raise FieldMismatchError(
                    f"value lives in Q(zeta_{value.p}), expected Q(zeta_{p})",
                    {"p": p, "value_p": value.p},
                )
            return complex(value.to_complex())
        if isinstance(value, (int, float, complex, Fraction)):
            return complex(value)
        if isinstance(value, np.number):
            return complex(value)
        raise DomainError(f"float backend cannot represent {value!r}", {"value": repr(value)})

    def root(self, p: int, k: int) -> complex:
        return cmath.exp(2j * cmath.pi * (k % p) / p)

    def is_zero(self, value: complex, scale: float = 1.0) -> bool:
        return abs(value) <= self.tolerance * max(1.0, abs(scale))

    def conj(self, value: complex) -> complex:
        return value.conjugate()

    def abs_sq(self, value: complex) -> complex:
        return complex(abs(value) ** 2)

    def as_rational(self, value: complex) -> Optional[float]:
        if abs(value.imag) <= self.tolerance * max(1.0, abs(value.real)):
            return value.real
        return None

    def magnitude(self, value: complex) -> float:
        return abs(value)

    @staticmethod
    def _kernel(params: GroupParams, sign: int) -> np.ndarray:
        coords = params.coordinate_array
        k = (coords @ coords.T) % params.p
        return np.exp(sign * 2j * np.pi * k / params.p)

    def dft(self, params: GroupParams, values: Sequence[complex]) -> Tuple[complex, ...]:
        vec = np.asarray(values, dtype=np.complex128)
        out = self._kernel(params, -1) @ vec / params.size
        return tuple(complex(v) for v in out)

    def idft(self, params: GroupParams, values: Sequence[complex]) -> Tuple[complex, ...]:
        vec = np.asarray(values, dtype=np.complex128)
        out = self._kernel(params, 1) @ vec
        return tuple(complex(v) for v in out)

    def ambiguity(self, params: GroupParams, values: Sequence[complex], da: int, dbs: Sequence[int]) -> List[complex]:
        vec = np.asarray(values, dtype=np.complex128)
        prod = vec[params.translation_table(params.neg_index(da))] * np.conj(vec)
        p = params.p
        return [complex(np.sum(prod * np.exp(2j * np.pi * params.dot_table(db) / p))) for db in dbs]

    def exponential_sum(
        self,
        params: GroupParams,
        indices: Sequence[int],
        m: int,
        weights: Optional[Sequence[ScalarLike]] = None,
    ) -> complex:
        idx = np.asarray(list(indices), dtype=np.int64)
        phases = np.exp(2j * np.pi * params.dot_table(m)[idx] / params.p)
        if weights is None:
            return complex(np.sum(phases))
        w = np.asarray([self.coerce(params.p, x) for x in weights], dtype=np.complex128)
        return complex(np.sum(w * phases))

    def to_json(self, value: complex) -> List[float]:
        return [value.real, value.imag]

    def from_json(self, p: int, obj: Any) -> complex:
        if isinstance(obj, dict):
            return self.coerce(p, CycNumDocument.model_validate(obj).to_cyc())
        if isinstance(obj, (list, tuple)) and len(obj) == 2:
            return complex(float(obj[0]), float(obj[1]))
        if isinstance(obj, (int, float)) and not isinstance(obj, bool):
            return complex(obj)
        raise DomainError("float scalars must be [re, im] pairs", {"value": repr(obj)})


_BACKENDS: Dict[Backend, TransformBackend] = {
    Backend.EXACT: ExactBackend(),
    Backend.FLOAT: FloatBackend(),
}


def get_backend(kind: Union[Backend, str]) -> TransformBackend:
    try:
        return _BACKENDS[Backend(kind)]
    except ValueError:
        raise DomainError(f"unknown backend {kind!r}", {"known": [b.value for b in Backend]})
