"""Complex root finding for the specialization cascade."""

from __future__ import annotations

import cmath
from collections.abc import Sequence

import numpy as np


class DegenerateLeading(ValueError):
    """Leading coefficient is zero."""


class RootFindingError(RuntimeError):
    pass


def quadratic_roots(A: complex, B: complex, C: complex) -> tuple[complex, complex]:
    """Both roots of A r^2 + B r + C, larger-magnitude root first.

    The big root comes from the cancellation-free branch of the quadratic
    formula and the small one from the product of roots C/A.
    """
    A, B, C = complex(A), complex(B), complex(C)
    if A == 0:
        raise DegenerateLeading("quadratic with zero leading coefficient")
    disc = cmath.sqrt(B * B - 4 * A * C)
    if (B.conjugate() * disc).real < 0:
        disc = -disc
    big = -(B + disc) / (2 * A)
    small = C / (A * big) if big != 0 else 0j
    return big, small


def polyval(coeffs: Sequence[complex], r: complex) -> complex:
    """Horner evaluation, coefficients highest degree first."""
    acc = 0j
    for c in coeffs:
        acc = acc * r + c
    return acc


def _polish(coeffs: np.ndarray, r: complex, steps: int = 3) -> complex:
    deriv = np.polyder(coeffs)
    best, best_res = r, abs(polyval(coeffs, r))
    for _ in range(steps):
        dp = polyval(deriv, r)
        if dp == 0:
            break
        r = r - polyval(coeffs, r) / dp
        res = abs(polyval(coeffs, r))
        if res < best_res:
            best, best_res = r, res
    return best


def poly_roots(coeffs: Sequence[complex], polish: bool = True) -> list[complex]:
    """All roots, with multiplicity, of the polynomial with the given coefficients.

    Coefficients are ordered highest degree first.  Roots are eigenvalues of
    the companion matrix, optionally refined by a few guarded Newton steps
    (a step is kept only if it lowers the residual).
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.ndim != 1 or coeffs.size == 0:
        raise ValueError("need a 1-d coefficient sequence")
    if coeffs[0] == 0:
        raise DegenerateLeading("leading coefficient is zero")
    if not np.all(np.isfinite(coeffs)):
        raise RootFindingError("non-finite coefficients")
    monic = coeffs / coeffs[0]
    try:
        roots = np.roots(monic)
    except np.linalg.LinAlgError as exc:
        raise RootFindingError(f"companion eigenvalues did not converge: {exc}") from exc
    roots = [complex(r) for r in roots]
    if polish:
        roots = [_polish(monic, r) for r in roots]
    return roots


def root_residual(coeffs: Sequence[complex], r: complex) -> float:
    """|p(r)| for the monic normalization of p."""
    coeffs = np.asarray(coeffs, dtype=complex)
    return abs(polyval(coeffs / coeffs[0], r))


def select_root(roots: Sequence[complex]) -> complex:
    """Root farthest from 0; ties broken by the larger (re, im)."""
    return max(roots, key=lambda r: (round(abs(r), 12), r.real, r.imag))
