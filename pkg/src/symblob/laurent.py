"""Exact Laurent polynomials in the eight variables a, b, c, d, x, y, z, w.

A :class:`LaurentPoly` is a finite map from exponent vectors to integer
coefficients.  Exponent vectors are packed into a single Python int (16 bits
per variable, biased by 2**15) so that multiplying two monomials is one
integer addition.  Packed keys compare in the same order as the exponent
tuples compared lexicographically, which gives the canonical term order for
free.

>>> a, b = var("a"), var("b")
>>> (a + a.inv()) * (b + b.inv()) == a*b + a/b + b/a + (a*b).inv()
True
>>> str(two_bracket(a))
'a^1 + a^-1'
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping, Sequence

import numpy as np

VARIABLES = ("a", "b", "c", "d", "x", "y", "z", "w")
NVARS = len(VARIABLES)

_FIELD = 16
_HALF = 1 << (_FIELD - 1)
_MASK = (1 << _FIELD) - 1
# packed key of the exponent vector (0, ..., 0)
BIAS = sum(_HALF << (_FIELD * k) for k in range(NVARS))
MAX_EXPONENT = _HALF - 1


class ZeroCoordinate(ValueError):
    """Evaluation hit a zero coordinate under a negative exponent."""


def pack(exps: Sequence[int]) -> int:
    if len(exps) != NVARS:
        raise ValueError(f"exponent vector must have {NVARS} entries, got {len(exps)}")
    key = 0
    for e in exps:
        e = int(e)
        if not -MAX_EXPONENT <= e <= MAX_EXPONENT:
            raise OverflowError(f"exponent {e} outside supported range")
        key = (key << _FIELD) | (e + _HALF)
    return key


def unpack(key: int) -> tuple[int, ...]:
    out = []
    for _ in range(NVARS):
        out.append((key & _MASK) - _HALF)
        key >>= _FIELD
    return tuple(reversed(out))


class LaurentPoly:
    """Immutable element of Z[a^±1, ..., w^±1] in canonical form.

    ``_terms`` maps packed exponent keys to nonzero ints.  Treat instances as
    values: no method mutates them after construction.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], int] | None = None):
        packed: dict[int, int] = {}
        if terms:
            for exps, coeff in terms.items():
                k = pack(exps)
                packed[k] = packed.get(k, 0) + int(coeff)
        self._terms = {k: v for k, v in packed.items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, packed: dict[int, int]) -> LaurentPoly:
        # trusted constructor: caller guarantees packed keys; zeros are dropped here
        obj = cls.__new__(cls)
        obj._terms = {k: v for k, v in packed.items() if v}
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, value: int) -> LaurentPoly:
        return cls._raw({BIAS: int(value)})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1) -> LaurentPoly:
        return cls._raw({pack(exps): int(coeff)})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        """Exponent tuple -> coefficient, in ascending lexicographic order."""
        return {unpack(k): self._terms[k] for k in sorted(self._terms)}

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return list(self.terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_unit_monomial(self) -> bool:
        return len(self._terms) == 1 and next(iter(self._terms.values())) == 1

    def __len__(self) -> int:
        return len(self._terms)

    # -- ring operations --------------------------------------------------

    @staticmethod
    def _coerce(other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, np.integer)):
            return LaurentPoly.constant(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                k = k1 + k2 - BIAS
                out[k] = out.get(k, 0) + v1 * v2
        return LaurentPoly._raw(out)

    __rmul__ = __mul__

    def inv(self) -> LaurentPoly:
        """Inverse of a monomial ``c * m`` with ``c = ±1``."""
        if len(self._terms) != 1:
            raise ValueError("only monomials are invertible in this ring")
        (k, v), = self._terms.items()
        if v not in (1, -1):
            raise ValueError("coefficient must be a unit of Z")
        return LaurentPoly._raw({2 * BIAS - k: v})

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def invert_variables(self) -> LaurentPoly:
        """Substitute v -> 1/v for every variable at once."""
        return LaurentPoly._raw({2 * BIAS - k: v for k, v in self._terms.items()})

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            other = LaurentPoly.constant(int(other))
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- evaluation and rendering ----------------------------------------

    def evaluate(self, point: Sequence[complex]) -> complex:
        return lp_eval(self, point)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"LaurentPoly({render(self)!r})"


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({BIAS: 1})


def var(name: str) -> LaurentPoly:
    exps = [0] * NVARS
    exps[VARIABLES.index(name)] = 1
    return LaurentPoly.monomial(exps)


def gens() -> tuple[LaurentPoly, ...]:
    return tuple(var(v) for v in VARIABLES)


def lp_add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def lp_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def two_bracket(m: LaurentPoly) -> LaurentPoly:
    """The quantum integer [2]_m = m + 1/m for a unit monomial m."""
    if not isinstance(m, LaurentPoly):
        m = LaurentPoly._coerce(m)
    if not m.is_unit_monomial():
        raise ValueError(f"[2]_q needs a unit monomial, got {m}")
    return m + m.inv()


def exponent_matrix(p: LaurentPoly) -> tuple[np.ndarray, list[int]]:
    keys = list(p._terms)
    exps = np.array([unpack(k) for k in keys], dtype=np.int64).reshape(len(keys), NVARS)
    return exps, [p._terms[k] for k in keys]


def lp_eval(p: LaurentPoly, point: Sequence[complex]) -> complex:
    """Evaluate ``p`` at ``point = (a0, b0, ..., w0)`` in complex doubles."""
    point = np.asarray(point, dtype=complex)
    if point.shape != (NVARS,):
        raise ValueError(f"evaluation point needs {NVARS} coordinates")
    if not p._terms:
        return 0j
    exps, coeffs = exponent_matrix(p)
    zero = point == 0
    if zero.any() and (exps[:, zero] < 0).any():
        bad = [VARIABLES[i] for i in np.flatnonzero(zero)]
        raise ZeroCoordinate(f"coordinate(s) {bad} are zero but appear with negative exponent")
    with np.errstate(divide="ignore", invalid="ignore"):
        mons = np.prod(point[None, :] ** exps, axis=1)
    return complex(sum(complex(c) * m for c, m in zip(coeffs, mons)))


def render(p: LaurentPoly) -> str:
    """Deterministic text form, terms in descending lexicographic order.

    >>> render(2 * var("a") / var("b") + 1)
    '2*a^1*b^-1 + 1'
    """
    if not p._terms:
        return "0"
    parts = []
    for key in sorted(p._terms, reverse=True):
        coeff = p._terms[key]
        factors = [f"{v}^{e}" for v, e in zip(VARIABLES, unpack(key)) if e]
        mag = abs(coeff)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        parts.append(("-" if coeff < 0 else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_FACTOR = re.compile(r"^(?:(\d+)|([a-dxyzw])\^(-?\d+))$")


def parse(text: str) -> LaurentPoly:
    """Inverse of :func:`render`."""
    text = text.strip()
    if text == "0":
        return ZERO
    # split on binary +/- only (a '-' directly after '^' is an exponent sign)
    tokens = re.split(r"(?<!\^)\s*([+-])\s*", text)
    if tokens and tokens[0] == "":
        tokens = tokens[1:]
    else:
        tokens = ["+"] + tokens
    out = ZERO
    for sign, body in zip(tokens[0::2], tokens[1::2]):
        coeff = 1
        exps = [0] * NVARS
        for factor in body.split("*"):
            m = _FACTOR.match(factor.strip())
            if not m:
                raise ValueError(f"cannot parse term {body!r} in {text!r}")
            if m.group(1) is not None:
                coeff *= int(m.group(1))
            else:
                exps[VARIABLES.index(m.group(2))] += int(m.group(3))
        out = out + LaurentPoly.monomial(exps, -coeff if sign == "-" else coeff)
    return out


def random_unit_monomial(rng: np.random.Generator, max_exp: int = 2) -> LaurentPoly:
    return LaurentPoly.monomial(rng.integers(-max_exp, max_exp + 1, size=NVARS).tolist())


def random_poly(rng: np.random.Generator, nterms: int = 4, max_exp: int = 2,
                max_coeff: int = 5) -> LaurentPoly:
    out = ZERO
    for _ in range(nterms):
        c = int(rng.integers(-max_coeff, max_coeff + 1))
        out = out + LaurentPoly.monomial(rng.integers(-max_exp, max_exp + 1, size=NVARS).tolist(), c)
    return out


def product(items: Iterable[LaurentPoly]) -> LaurentPoly:
    out = ONE
    for p in items:
        out = out * p
    return out
