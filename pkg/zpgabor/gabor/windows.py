"""Window constructors.

Irrational normalizations (1/sqrt(p), |E|^-1/2) are dropped: every window here
takes values in Q(zeta_p), and the basis decisions are made scale-free.
"""
from __future__ import annotations

import itertools
import logging
import math
from typing import Tuple

from sympy import legendre_symbol

from zpgabor.cyclotomic.cyclotomic import CycNum, check_odd_prime, check_prime, gauss_sum
from zpgabor.errors import DomainError, FieldMismatchError, SearchFailureError
from zpgabor.fourier.fourier import Window, dft, idft
from zpgabor.gabor.system import GaborSystem, is_orthonormal_basis
from zpgabor.group.group import MAX_DIMENSION, GroupParams, PointSet
from zpgabor.models.documents import Backend
from zpgabor.search.enumeration import find_spectrum, find_tiling_complement


def quadratic_character(p: int, k: int) -> int:
    """Legendre symbol (k/p): 0, 1 for nonzero squares, -1 otherwise."""
    return int(legendre_symbol(k % p, p)) if k % p else 0


def make_indicator_window(E: PointSet, backend: Backend = Backend.EXACT) -> Window:
    return Window.indicator(E, backend)


def gauss_spectrum(p: int) -> Window:
    """S(0) = sum_t zeta^(t^2), S(m) = sum_t zeta^(-m t^2): all |S(m)|^2 = p."""
    check_odd_prime(p)
    params = GroupParams(p, 1)
    values = [gauss_sum(p)] + [CycNum.from_exponents(p, (-m * t * t for t in range(p))) for m in range(1, p)]
    return Window(params, tuple(values))


def make_gauss_window(p: int) -> Window:
    """Inverse transform of the Gauss spectrum.

    f(0) = G, f(x) = G + p on nonzero squares and G - p elsewhere, G the Gauss
    sum. For p = 1 mod 4, G = sqrt(p) and f / sqrt(p) takes the values
    1 and 1 +- sqrt(p).
    """
    window = idft(gauss_spectrum(p))
    logging.debug(f"Gauss window for p={p}: {[str(v) for v in window.values]}")
    return window


def gauss_window_closed_form(p: int) -> Window:
    """G + p (x/p) with the Legendre symbol; agrees with make_gauss_window."""
    check_odd_prime(p)
    G = gauss_sum(p)
    return Window(GroupParams(p, 1), tuple(G + p * quadratic_character(p, x) for x in range(p)))


def make_flat_window(p: int) -> Window:
    """Inverse transform of f^(0) = -1, f^(m) = 1: f(0) = p - 2, f(x) = -2."""
    check_prime(p)
    params = GroupParams(p, 1)
    return idft(Window(params, tuple([-1] + [1] * (p - 1))))


def make_sign_window(p: int) -> Window:
    """h(0) = -1, h(x) = 1 elsewhere: unimodular with a non-flat transform."""
    check_prime(p)
    return Window(GroupParams(p, 1), tuple([-1] + [1] * (p - 1)))


def make_product_window(*factors: Window) -> Window:
    """g(x_1, ..., x_k) = f_1(x_1) ... f_k(x_k), the x_i blocks taken in order."""
    if not factors:
        raise DomainError("product window needs at least one factor", {})
    p = factors[0].p
    for f in factors[1:]:
        if f.p != p:
            raise FieldMismatchError(f"factors over Z_{p} and Z_{f.p}", {"p": p, "other_p": f.p})
    kinds = {f.backend for f in factors}
    if len(kinds) > 1:
        raise FieldMismatchError("factors use different scalar backends", {"backends": sorted(k.value for k in kinds)})
    d = sum(f.params.d for f in factors)
    if d > MAX_DIMENSION:
        raise DomainError(f"product dimension {d} exceeds {MAX_DIMENSION}", {"d": d})
    params = GroupParams(p, d)
    values = [math.prod(combo[1:], start=combo[0]) for combo in itertools.product(*(f.values for f in factors))]
    return Window(params, tuple(values), factors[0].backend)


def make_qr_row_window(p: int) -> Window:
    """g(k, r) = f(k) for the Gauss window f; needs p = 1 mod 4.

    Up to the factor sqrt(p) this is 1 on the row k = 0, 1 + sqrt(p) on rows
    indexed by nonzero squares and 1 - sqrt(p) on the others. Its transform is
    supported on the axis n = 0 with g^(0, 0) = sqrt(p).
    """
    check_odd_prime(p)
    if p % 4 != 1:
        raise DomainError(
            f"qr-row window requires p ≡ 1 (mod 4), got p={p}: the Gauss sum is not real",
            {"p": p, "p_mod_4": p % 4},
        )
    f = make_gauss_window(p)
    params = GroupParams(p, 2)
    return Window(params, tuple(f.values[k] for k, _ in params.coordinates))


def make_parabola(p: int) -> PointSet:
    """{(t, t^2)} in Z_p^2."""
    check_prime(p)
    params = GroupParams(p, 2)
    return PointSet.from_points(params, [(t, t * t) for t in range(p)])


def make_parabola_dual_window(p: int) -> Tuple[Window, PointSet, PointSet]:
    """The dual (p^2 (1_F)^, B, -A) of the parabola system (1_F, A, B).

    A and B are the lexicographically smallest tiling complement and spectrum
    of F. The dual system is verified before it is returned.
    """
    check_odd_prime(p)
    F = make_parabola(p)
    A = find_tiling_complement(F)
    B = find_spectrum(F)
    if A is None or B is None:
        logging.error(f"Parabola search failed for p={p}: complement={A}, spectrum={B}")
        raise SearchFailureError(
            f"no {'tiling complement' if A is None else 'spectrum'} found for the parabola at p={p}",
            {"p": p},
        )
    g = dft(Window.indicator(F)).scaled(p * p)
    dual = GaborSystem(g, B, A.negate())
    verdict = is_orthonormal_basis(dual, scale_free=True)
    if not verdict or g.support.size != p * p - p + 1:
        raise SearchFailureError(
            f"parabola dual system failed verification at p={p}",
            {"p": p, "support": g.support.size, "witness": verdict.witness},
        )
    logging.info(f"Parabola dual window for p={p}: |supp| = {g.support.size}, A = {A}, B = {B}")
    return g, B, A.negate()
