"""Windows on Z_p^d and the Fourier transform with the p^-d forward factor."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Optional, Sequence, Tuple, Union

from zpgabor.errors import DomainError, FieldMismatchError
from zpgabor.fourier.backends import Scalar, ScalarLike, TransformBackend, get_backend
from zpgabor.group.group import GroupParams, Point, PointSet, check_same_params
from zpgabor.models.documents import Backend, WindowDocument
from zpgabor.models.verdict import Verdict


@dataclass(frozen=True)
class Window:
    params: GroupParams
    values: Tuple[Scalar, ...]
    backend: Backend = Backend.EXACT

    def __post_init__(self):
        object.__setattr__(self, "backend", Backend(self.backend))
        if len(self.values) != self.params.size:
            raise DomainError(
                f"window over Z_{self.params.p}^{self.params.d} needs {self.params.size} values, got {len(self.values)}",
                {"expected": self.params.size, "got": len(self.values)},
            )
        ops = self.ops
        object.__setattr__(self, "values", tuple(ops.coerce(self.params.p, v) for v in self.values))

    @property
    def ops(self) -> TransformBackend:
        return get_backend(self.backend)

    @property
    def p(self) -> int:
        return self.params.p

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_function(
        cls,
        params: GroupParams,
        fn: Callable[[Point], ScalarLike],
        backend: Backend = Backend.EXACT,
    ) -> Window:
        return cls(params, tuple(fn(pt) for pt in params.points()), backend)

    @classmethod
    def indicator(cls, E: PointSet, backend: Backend = Backend.EXACT) -> Window:
        return cls(E.params, tuple(1 if i in E else 0 for i in range(E.params.size)), backend)

    @classmethod
    def constant(cls, params: GroupParams, value: ScalarLike = 1, backend: Backend = Backend.EXACT) -> Window:
        return cls(params, (value,) * params.size, backend)

    @classmethod
    def from_document(cls, doc: WindowDocument, allow_large: bool = False) -> Window:
        params = GroupParams(doc.p, doc.d, allow_large=allow_large)
        ops = get_backend(doc.backend)
        return cls(params, tuple(ops.from_json(doc.p, v) for v in doc.values), doc.backend)

    def to_document(self) -> WindowDocument:
        ops = self.ops
        return WindowDocument(
            p=self.params.p,
            d=self.params.d,
            backend=self.backend,
            values=[ops.to_json(v) for v in self.values],
        )

    # -- queries ------------------------------------------------------------

    def __getitem__(self, x: Union[Point, int]) -> Scalar:
        return self.values[x.index if isinstance(x, Point) else x]

    @cached_property
    def scale(self) -> float:
        """Largest |value|; the float backend's zero tests are relative to it."""
        ops = self.ops
        return max((ops.magnitude(v) for v in self.values), default=0.0)

    @cached_property
    def support(self) -> PointSet:
        ops = self.ops
        scale = self.scale
        return PointSet.from_indices(
            self.params, (i for i, v in enumerate(self.values) if not ops.is_zero(v, scale))
        )

    def is_zero(self) -> bool:
        return not self.support

    def norm_sq(self) -> Scalar:
        return self.ops.ambiguity(self.params, self.values, 0, [0])[0]

    def abs_sq_values(self) -> Tuple[Scalar, ...]:
        ops = self.ops
        return tuple(ops.abs_sq(v) for v in self.values)

    # -- derived windows ----------------------------------------------------

    def _derive(self, values: Sequence[Scalar]) -> Window:
        return Window(self.params, tuple(values), self.backend)

    def translate(self, a: Point) -> Window:
        """x -> g(x - a)."""
        check_same_params(self.params, a)
        table = self.params.translation_table((-a).index)
        return self._derive([self.values[int(j)] for j in table])

    def modulate(self, b: Point) -> Window:
        """x -> g(x) zeta^(x.b)."""
        check_same_params(self.params, b)
        ops, p = self.ops, self.p
        k = self.params.dot_table(b.index)
        return self._derive([v * ops.root(p, int(k[i])) for i, v in enumerate(self.values)])

    def reflect(self) -> Window:
        """x -> g(-x)."""
        return self._derive([self.values[self.params.neg_index(i)] for i in range(self.params.size)])

    def conj(self) -> Window:
        ops = self.ops
        return self._derive([ops.conj(v) for v in self.values])

    def scaled(self, c: ScalarLike) -> Window:
        c = self.ops.coerce(self.p, c)
        return self._derive([v * c for v in self.values])

    def pointwise(self, other: Window) -> Window:
        check_same_window_space(self, other)
        return self._derive([u * v for u, v in zip(self.values, other.values)])

    def to_backend(self, kind: Union[Backend, str]) -> Window:
        kind = Backend(kind)
        if kind == self.backend:
            return self
        if kind == Backend.EXACT:
            raise DomainError("a float window cannot be promoted to the exact backend", {})
        return Window(self.params, self.values, kind)


def check_same_window_space(*windows: Window) -> None:
    check_same_params(*(w.params for w in windows))
    kinds = {w.backend for w in windows}
    if len(kinds) > 1:
        raise FieldMismatchError(
            "windows use different scalar backends",
            {"backends": sorted(k.value for k in kinds)},
        )


def dft(g: Window) -> Window:
    return Window(g.params, g.ops.dft(g.params, g.values), g.backend)


def idft(G: Window) -> Window:
    return Window(G.params, G.ops.idft(G.params, G.values), G.backend)


def plancherel_check(g: Window) -> Verdict:
    """sum_m |g^(m)|^2 = p^-d sum_x |g(x)|^2."""
    ops = g.ops
    lhs = dft(g).norm_sq()
    rhs = g.norm_sq() * Fraction(1, g.params.size) if g.backend == Backend.EXACT else g.norm_sq() / g.params.size
    passed = ops.equal(lhs, rhs, ops.magnitude(rhs))
    values = {"lhs": ops.to_json(lhs), "rhs": ops.to_json(rhs)}
    if passed:
        return Verdict(check="plancherel", passed=True, certificate=values, authoritative=ops.authoritative)
    return Verdict(check="plancherel", passed=False, witness=values, authoritative=ops.authoritative)


def convolve_autocorrelation(g: Window, a: Point) -> Scalar:
    """sum_x g(x - a) conj(g(x))."""
    check_same_params(g.params, a)
    return g.ops.ambiguity(g.params, g.values, a.index, [0])[0]


def exponential_sum(
    E: PointSet,
    m: Point,
    weights: Optional[Window] = None,
    backend: Backend = Backend.EXACT,
) -> Scalar:
    """sum over x in E of w(x) zeta^(x.m); w defaults to 1."""
    check_same_params(E, m)
    indices = E.indices()
    if weights is None:
        return get_backend(backend).exponential_sum(E.params, indices, m.index)
    check_same_params(E, weights.params)
    return weights.ops.exponential_sum(E.params, indices, m.index, [weights.values[i] for i in indices])
