"""Numerical specialization: parameters Π ∈ ℂ⁶ to a point Σ ∈ ℂ⁸ and back.

``solve_sigma`` runs a cascade of one-variable polynomial equations, each
solved with a residual-checked root finder, and reassembles Σ from the
intermediate quantities

    e = abcd,  f = ab/(cd),  g = ad/(bc),  p = zw,  q = z/w.

``forward_pi`` is the independent oracle: it evaluates the six defining
products (and both forms of κ) at Σ directly.
"""

from __future__ import annotations

import cmath
import itertools
import time
from dataclasses import asdict, dataclass, field, fields

import numpy as np
import scipy.sparse as sp

from .laurent import ZeroCoordinate, lp_eval
from .relations import enumerate_relations
from .roots import DegenerateLeading, poly_roots, quadratic_roots, root_residual, select_root
from .roperators import gen_factors, gen_image, generators, partner
from .tensor import bit, check_n, dimension, positions

PI_KEYS = ("delta", "delta_l", "delta_r", "kappa_l", "kappa_r", "kappa")
SIGMA_KEYS = ("a", "b", "c", "d", "x", "y", "z", "w")
# θ-coordinate -> Π field
THETA_TO_PI = {"D": "delta", "D_L": "delta_l", "D_R": "delta_r",
               "K_L": "kappa_l", "K_R": "kappa_r", "K": "kappa"}


class NoSolutionFound(RuntimeError):
    def __init__(self, msg, best=None):
        super().__init__(msg)
        self.best = best


class CascadeError(ArithmeticError):
    """A cascade step produced a zero or non-finite intermediate."""


@dataclass(frozen=True)
class Pi:
    delta: complex = 0j
    delta_l: complex = 0j
    delta_r: complex = 0j
    kappa_l: complex = 0j
    kappa_r: complex = 0j
    kappa: complex = 0j

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, complex(getattr(self, f.name)))

    def as_tuple(self) -> tuple[complex, ...]:
        return tuple(getattr(self, k) for k in PI_KEYS)


@dataclass(frozen=True)
class Sigma:
    a: complex = 1
    b: complex = 1
    c: complex = 1
    d: complex = 1
    x: complex = 1
    y: complex = 1
    z: complex = 1
    w: complex = 1

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, complex(getattr(self, f.name)))

    def as_tuple(self) -> tuple[complex, ...]:
        return tuple(getattr(self, k) for k in SIGMA_KEYS)

    def inverted(self) -> Sigma:
        return Sigma(*(1 / v for v in self.as_tuple()))


@dataclass(frozen=True)
class IntermediateSolution:
    x0: complex
    y0: complex
    e0: complex
    p0: complex
    q0: complex
    f0: complex
    g0: complex
    d0: complex


@dataclass(frozen=True)
class ForwardValues:
    delta: complex
    delta_l: complex
    delta_r: complex
    kappa_l: complex
    kappa_r: complex
    kappa_odd: complex
    kappa_even: complex

    def pi(self, n: int | None = None) -> Pi:
        """Π realized by Σ; κ taken from the form matching the parity of n (odd if None)."""
        kappa = self.kappa_even if n is not None and n % 2 == 0 else self.kappa_odd
        return Pi(self.delta, self.delta_l, self.delta_r, self.kappa_l, self.kappa_r, kappa)


@dataclass(frozen=True)
class ResidualReport:
    c1: float
    c2: float
    c3: float
    c4: float
    c5: float
    c6a: float
    c6b: float

    @property
    def max(self) -> float:
        return max(self.c1, self.c2, self.c3, self.c4, self.c5, self.c6a, self.c6b)

    def to_dict(self) -> dict[str, float]:
        out = asdict(self)
        out["max"] = self.max
        return out


@dataclass
class SolverConfig:
    x0: complex = 1
    retries: int = 5
    seed: int = 0
    root_tol: float = 1e-12
    accept_tol: float = 1e-8

    def __post_init__(self):
        if self.root_tol <= 0 or self.accept_tol <= 0:
            raise ValueError("tolerances must be positive")
        if complex(self.x0) == 0:
            raise ValueError("x0 must be nonzero")


@dataclass
class Solution:
    sigma: Sigma
    intermediate: IntermediateSolution
    residuals: ResidualReport
    pi: Pi
    x0_used: complex
    retries: int
    seconds: float = 0.0
    attempts: list[float] = field(default_factory=list)


# -- forward oracle -----------------------------------------------------------

def _br(v: complex) -> complex:
    return v + 1 / v


def forward_pi(s: Sigma) -> ForwardValues:
    vals = s.as_tuple()
    if any(v == 0 for v in vals):
        raise ZeroCoordinate("every coordinate of Σ must be nonzero")
    a, b, c, d, x, y, z, w = vals
    r_odd = x * y / (z * w)
    r_even = a * b * c * d / (x * y * z * w)
    return ForwardValues(
        delta=_br(a) * _br(b) * _br(c) * _br(d),
        delta_l=_br(x) * _br(y),
        delta_r=_br(z) * _br(w),
        kappa_l=_br(a * b / x) * _br(c * d / y),
        kappa_r=_br(a * d / w) * _br(b * c / z),
        kappa_odd=r_odd + 2 + 1 / r_odd,
        kappa_even=r_even + 2 + 1 / r_even,
    )


def residuals(s: Sigma, pi: Pi) -> ResidualReport:
    fv = forward_pi(s)
    return ResidualReport(
        c1=abs(fv.delta - pi.delta),
        c2=abs(fv.delta_l - pi.delta_l),
        c3=abs(fv.delta_r - pi.delta_r),
        c4=abs(fv.kappa_l - pi.kappa_l),
        c5=abs(fv.kappa_r - pi.kappa_r),
        c6a=abs(fv.kappa_odd - pi.kappa),
        c6b=abs(fv.kappa_even - pi.kappa),
    )


# -- cascade ------------------------------------------------------------------

def d_quartic(e: complex, f: complex, g: complex, delta: complex) -> list[complex]:
    """Coefficients (in S = d², highest first) of the equation fixing d.

    Obtained by writing (a+1/a)(b+1/b)(c+1/c)(d+1/d) = δ with a, b, c
    eliminated through e, f, g and clearing the factor d^4.
    """
    return [
        f / (e * g),
        f + 1 / e + 1 / g + f / (e * g),
        e + f + g + 1 / e + 1 / f + 1 / g - delta,
        1 / f + e + g + e * g / f,
        e * g / f,
    ]


def delta_from_quartic(e: complex, f: complex, g: complex, d: complex) -> complex:
    """Solve the d-equation for δ at a given d (inverse of :func:`d_quartic`)."""
    s = d * d
    coeffs = d_quartic(e, f, g, 0)
    return sum(cf * s ** (4 - k) for k, cf in enumerate(coeffs)) / (s * s)


def _root(coeffs, tol) -> complex:
    coeffs = [complex(c) for c in coeffs]
    if coeffs[-1] == 0 or not all(cmath.isfinite(c) for c in coeffs):
        raise CascadeError(f"cascade polynomial has zero or non-finite constant term: {coeffs}")
    if len(coeffs) == 3:
        roots = quadratic_roots(*coeffs)
    else:
        roots = poly_roots(coeffs)
    r = select_root(roots)
    scale = 1 + max(abs(c / coeffs[0]) for c in coeffs)
    if r == 0 or root_residual(coeffs, r) > tol * scale * max(1.0, abs(r)) ** (len(coeffs) - 1):
        raise CascadeError(f"root {r} fails the residual check for {coeffs}")
    return r


def cascade(pi: Pi, x0: complex, root_tol: float = 1e-12) -> IntermediateSolution:
    """Intermediate quantities (y, e, p, q, f, g, d) for a fixed nonzero x0."""
    x0 = complex(x0)
    if x0 == 0 or x0 * x0 + 1 == 0:
        raise CascadeError(f"x0 = {x0} makes x + 1/x vanish or is zero")
    y0 = _root([1, -x0 * pi.delta_l / (x0 * x0 + 1), 1], root_tol)
    e0 = x0 * x0 * y0 * y0
    p0 = _root([1, (2 - pi.kappa) * x0 * y0, e0], root_tol)
    q0 = _root([1, p0 + 1 / p0 - pi.delta_r, 1], root_tol)
    f0 = _root([1, x0 * x0 + 1 / (y0 * y0) - (x0 / y0) * pi.kappa_l, x0 * x0 / (y0 * y0)], root_tol)
    g0 = _root([1, e0 / (p0 * q0) + p0 / (e0 * q0) - pi.kappa_r / q0, 1 / (q0 * q0)], root_tol)
    s0 = _root(d_quartic(e0, f0, g0, pi.delta), root_tol)
    d0 = cmath.sqrt(s0)
    return IntermediateSolution(x0, y0, e0, p0, q0, f0, g0, d0)


def reconstruct(m: IntermediateSolution, pi: Pi) -> tuple[Sigma, ResidualReport]:
    """Assemble Σ, choosing square-root signs of a, b, c, z, w by minimal residual."""
    d2 = m.d0 * m.d0
    base = (
        cmath.sqrt(m.e0 * m.g0 / d2),
        cmath.sqrt(m.f0 * d2 / m.g0),
        cmath.sqrt(m.e0 / (m.f0 * d2)),
        cmath.sqrt(m.p0 * m.q0),
        cmath.sqrt(m.p0 / m.q0),
    )
    best = None
    for signs in itertools.product((1, -1), repeat=5):
        a, b, c, z, w = (s * v for s, v in zip(signs, base))
        sig = Sigma(a, b, c, m.d0, m.x0, m.y0, z, w)
        rep = residuals(sig, pi)
        if best is None or rep.max < best[1].max:
            best = (sig, rep)
    return best


def _random_x0(rng: np.random.Generator) -> complex:
    while True:
        v = complex(*rng.uniform(-2, 2, size=2))
        if abs(v) > 0.25 and abs(v * v + 1) > 0.25:
            return v


def solve_sigma(pi: Pi, cfg: SolverConfig | None = None) -> Solution:
    """Find Σ with forward_pi(Σ) = Π (both κ forms), retrying fresh x0 on failure."""
    cfg = cfg or SolverConfig()
    rng = np.random.default_rng(cfg.seed)
    t0 = time.perf_counter()
    x0 = complex(cfg.x0)
    best = None
    attempts = []
    for attempt in range(cfg.retries + 1):
        try:
            inter = cascade(pi, x0, cfg.root_tol)
            sig, rep = reconstruct(inter, pi)
        except (CascadeError, DegenerateLeading, ZeroDivisionError, OverflowError):
            attempts.append(float("inf"))
        else:
            attempts.append(rep.max)
            if best is None or rep.max < best.residuals.max:
                best = Solution(sig, inter, rep, pi, x0, attempt)
            if rep.max <= cfg.accept_tol:
                break
        x0 = _random_x0(rng)
    if best is None or best.residuals.max > cfg.accept_tol:
        res = best.residuals.max if best else float("inf")
        raise NoSolutionFound(f"no Σ within {cfg.accept_tol:g} after {cfg.retries} retries "
                              f"(best max residual {res:.3g})", best)
    best.seconds = time.perf_counter() - t0
    best.attempts = attempts
    return best


# -- numeric representation matrices -------------------------------------------

def numeric_r(n: int, i: int, q: complex) -> sp.csr_matrix:
    """R^q_i over ℂ built straight from its defining formula."""
    check_n(n)
    if i not in positions(n):
        raise ValueError(f"position {i} not in I_{n}")
    q = complex(q)
    if q == 0:
        raise ZeroCoordinate("q must be nonzero")
    m1, m2 = 1 << bit(i, n), 1 << bit(partner(i, n), n)
    dim = dimension(n)
    words = np.arange(dim)
    hi1 = (words & m1) != 0
    hi2 = (words & m2) != 0
    active = words[hi1 != hi2]
    alpha = np.where((active & m1) != 0, 2, 1)
    cleared = active & ~(m1 | m2)
    w12, w21 = cleared | m2, cleared | m1
    rows = np.concatenate([w12, w21])
    cols = np.concatenate([active, active])
    vals = np.concatenate([q ** (2 - alpha).astype(float), q ** (1 - alpha).astype(float)])
    return sp.csr_matrix((vals, (rows, cols)), shape=(dim, dim), dtype=complex)


def numeric_gen_direct(n: int, g: str, s: Sigma) -> sp.csr_matrix:
    point = dict(zip(SIGMA_KEYS, s.as_tuple()))
    out = None
    for p, q in gen_factors(n, g):
        # each q is a single variable
        (name,) = [k for k, e in zip(SIGMA_KEYS, next(iter(q.terms))) if e]
        m = numeric_r(n, p, point[name])
        out = m if out is None else out @ m
    return out.tocsr()


def evaluate_operator(op, s: Sigma) -> sp.csr_matrix:
    """Apply the specialization entrywise to a symbolic SparseOperator."""
    point = s.as_tuple()
    cache = {}
    rows, cols, vals = [], [], []
    for v, w, c in op.triplets():
        val = cache.get(c)
        if val is None:
            val = cache[c] = lp_eval(c, point)
        rows.append(v)
        cols.append(w)
        vals.append(val)
    dim = dimension(op.n)
    return sp.csr_matrix((np.array(vals, dtype=complex), (rows, cols)), shape=(dim, dim))


def numeric_generator_matrices(n: int, s: Sigma) -> dict[str, sp.csr_matrix]:
    check_n(n)
    if any(v == 0 for v in s.as_tuple()):
        raise ZeroCoordinate("every coordinate of Σ must be nonzero")
    return {g: evaluate_operator(gen_image(n, g), s) for g in generators(n)}


def _word_matrix(mats: dict[str, sp.csr_matrix], word, dim: int) -> sp.csr_matrix:
    out = sp.identity(dim, dtype=complex, format="csr")
    for g in word:
        out = out @ mats[g]
    return out


@dataclass
class NumericRelation:
    id: str
    family: str
    scalar: str | None
    residual: float
    scale: float
    passed: bool


@dataclass
class NumericReport:
    n: int
    tol: float
    relations: list[NumericRelation]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.relations)

    @property
    def max_residual(self) -> float:
        return max((r.residual for r in self.relations), default=0.0)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "tol": self.tol,
            "passed": self.passed,
            "max_residual": self.max_residual,
            "relations": [asdict(r) for r in self.relations],
        }


def numeric_verify(n: int, s: Sigma, pi: Pi, tol: float = 1e-6,
                   mats: dict[str, sp.csr_matrix] | None = None) -> NumericReport:
    """Check every defining relation on the specialized matrices.

    The residual of a relation is the largest entry of |lhs - Π·rhs|.
    """
    mats = mats or numeric_generator_matrices(n, s)
    dim = dimension(n)
    out = []
    for r in enumerate_relations(n):
        lhs = _word_matrix(mats, r.lhs, dim)
        rhs = _word_matrix(mats, r.rhs_word, dim)
        if r.rhs_scalar is not None:
            rhs = getattr(pi, THETA_TO_PI[r.rhs_scalar]) * rhs
        diff = abs(lhs - rhs)
        res = float(diff.max()) if diff.nnz else 0.0
        scale = max(float(abs(lhs).max()) if lhs.nnz else 0.0, 1.0)
        out.append(NumericRelation(r.id, r.family, r.rhs_scalar, res, scale, res <= tol))
    return NumericReport(n, tol, out)


def random_pi(rng: np.random.Generator, box: float = 5.0) -> Pi:
    vals = rng.uniform(-box, box, size=(6, 2))
    return Pi(*(complex(re, im) for re, im in vals))


def random_sigma(rng: np.random.Generator, rmin: float = 0.5, rmax: float = 2.0) -> Sigma:
    mod = rng.uniform(rmin, rmax, size=8)
    arg = rng.uniform(0, 2 * np.pi, size=8)
    return Sigma(*(m * cmath.exp(1j * t) for m, t in zip(mod, arg)))

