"""Gabor systems G(g, A, B) = {g(x - a) zeta^(x.b)}.

Every inner product between atoms reduces to the ambiguity function
V(u, v) = sum_y g(y - u) conj(g(y)) zeta^(y.v):

    <(a, b), (a', b')> = zeta^(a'.(b - b')) V(a - a', b - b')

so orthogonality only has to be tested on (A - A) x (B - B).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from zpgabor.errors import PreconditionError
from zpgabor.fourier.backends import Scalar
from zpgabor.fourier.fourier import Window, dft
from zpgabor.group.group import GroupParams, Point, PointSet, check_same_params
from zpgabor.models.verdict import Verdict


@dataclass(frozen=True)
class Atom:
    a: Point
    b: Point

    def to_dict(self) -> Dict[str, List[int]]:
        return {"a": self.a.to_list(), "b": self.b.to_list()}


@dataclass(frozen=True)
class GaborSystem:
    g: Window
    A: PointSet
    B: PointSet
    _verdicts: Dict[bool, Verdict] = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        check_same_params(self.g.params, self.A, self.B)

    @property
    def params(self) -> GroupParams:
        return self.g.params

    @property
    def size(self) -> int:
        return self.A.size * self.B.size

    def atoms(self) -> Iterator[Atom]:
        for a in self.A:
            for b in self.B:
                yield Atom(a, b)

    def atom_window(self, atom: Atom) -> Window:
        return self.g.translate(atom.a).modulate(atom.b)


def gabor_inner(g: Window, t1: Atom, t2: Atom) -> Scalar:
    params = check_same_params(g.params, t1.a, t1.b, t2.a, t2.b)
    da = (t1.a - t2.a).index
    db = (t1.b - t2.b).index
    value = g.ops.ambiguity(params, g.values, da, [db])[0]
    return value * g.ops.root(params.p, params.dot_indices(t2.a.index, db))


def _atom_pair_for(sys: GaborSystem, da: int, db: int) -> Tuple[Atom, Atom]:
    params = sys.params
    a_pair = next((a, a2) for a in sys.A.indices() for a2 in sys.A.indices() if params.sub_indices(a, a2) == da)
    b_pair = next((b, b2) for b in sys.B.indices() for b2 in sys.B.indices() if params.sub_indices(b, b2) == db)
    return (
        Atom(params.point(a_pair[0]), params.point(b_pair[0])),
        Atom(params.point(a_pair[1]), params.point(b_pair[1])),
    )


def is_orthonormal_basis(sys: GaborSystem, scale_free: bool = False) -> Verdict:
    """Decide whether G(g, A, B) is an orthonormal basis of L^2(Z_p^d).

    In strict mode ||g||^2 must be exactly 1. In scale-free mode the system
    passes when its atoms are pairwise orthogonal, nonzero (all atoms share
    ||g||^2) and there are p^d of them.
    """
    cached = sys._verdicts.get(scale_free)
    if cached is not None:
        return cached
    g, params = sys.g, sys.params
    ops = g.ops
    mode = "scale_free" if scale_free else "strict"
    norm = g.norm_sq()
    if g.is_zero():
        verdict = Verdict(
            check="gabor_basis",
            passed=False,
            witness={"reason": "zero_window"},
            authoritative=ops.authoritative,
        )
        sys._verdicts[scale_free] = verdict
        return verdict
    if not scale_free and not ops.equal(norm, ops.one(params.p)):
        raise PreconditionError(
            "window norm is not 1; normalize it or use scale-free mode",
            {"norm_sq": str(norm)},
        )
    scale = ops.magnitude(norm)
    b_diffs = sys.B.differences()
    verdict: Optional[Verdict] = None
    for da in sys.A.differences():
        dbs = [db for db in b_diffs if da or db]
        if not dbs:
            continue
        for db, value in zip(dbs, ops.ambiguity(params, g.values, da, dbs)):
            if not ops.is_zero(value, scale):
                t1, t2 = _atom_pair_for(sys, da, db)
                verdict = Verdict(
                    check="gabor_basis",
                    passed=False,
                    witness={
                        "reason": "orthogonality",
                        "atom": t1.to_dict(),
                        "other": t2.to_dict(),
                        "inner": ops.to_json(gabor_inner(g, t1, t2)),
                    },
                    authoritative=ops.authoritative,
                )
                break
        if verdict is not None:
            break
    if verdict is None and sys.size != params.size:
        verdict = Verdict(
            check="gabor_basis",
            passed=False,
            witness={"reason": "incomplete", "atoms": sys.size, "dimension": params.size},
            authoritative=ops.authoritative,
        )
    if verdict is None:
        verdict = Verdict(
            check="gabor_basis",
            passed=True,
            certificate={"mode": mode, "atoms": sys.size, "norm_sq": ops.to_json(norm)},
            authoritative=ops.authoritative,
        )
    sys._verdicts[scale_free] = verdict
    return verdict


def gram_matrix(sys: GaborSystem) -> List[List[Scalar]]:
    """Inner products of all atoms, rows and columns in canonical (a, b) order."""
    g, params = sys.g, sys.params
    ops = g.ops
    b_diffs = sys.B.differences()
    table: Dict[Tuple[int, int], Scalar] = {}
    for da in sys.A.differences():
        for db, value in zip(b_diffs, ops.ambiguity(params, g.values, da, b_diffs)):
            table[(da, db)] = value
    atoms = [(a.index, b.index) for a in sys.A for b in sys.B]
    rows = []
    for a, b in atoms:
        row = []
        for a2, b2 in atoms:
            db = params.sub_indices(b, b2)
            value = table[(params.sub_indices(a, a2), db)]
            row.append(value * ops.root(params.p, params.dot_indices(a2, db)))
        rows.append(row)
    return rows


def fourier_dual(sys: GaborSystem) -> GaborSystem:
    """(g^, B, -A)."""
    return GaborSystem(dft(sys.g), sys.B, sys.A.negate())


def duality_check(sys: GaborSystem) -> Verdict:
    """A system and its Fourier dual are orthonormal bases together or not at all."""
    original = is_orthonormal_basis(sys, scale_free=True)
    dual = is_orthonormal_basis(fourier_dual(sys), scale_free=True)
    parts = {"system": original, "dual": dual}
    authoritative = original.authoritative and dual.authoritative
    if original.passed == dual.passed:
        return Verdict(
            check="duality",
            passed=True,
            certificate={"basis": original.passed},
            parts=parts,
            authoritative=authoritative,
        )
    return Verdict(
        check="duality",
        passed=False,
        witness={"system": original.passed, "dual": dual.passed},
        parts=parts,
        authoritative=authoritative,
    )
