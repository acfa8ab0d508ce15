"""The local operators R^q_i, the generator images ℛ(g), and the θ-targets.

``R^q_i`` acts on the adjacent pair of positions (i, i+1); for i = 2n the
pair wraps around to (2n, -2n+1).  On a word whose two letters agree it is
zero; otherwise it maps to ``q^(2-α_i)·(…12…) + q^(1-α_i)·(…21…)`` where
"12" means letter 1 at i and letter 2 at the partner position.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, fields, replace
from functools import lru_cache

import numpy as np

from .laurent import ONE, ZERO, LaurentPoly, two_bracket, var
from .tensor import (
    OutOfRange,
    SparseOperator,
    bit,
    check_n,
    compose,
    compose_all,
    dimension,
    identity_op,
    positions,
)

a, b, c, d, x, y, z, w = (var(v) for v in "abcdxyzw")


class BadGenerator(ValueError):
    pass


def partner(i: int, n: int) -> int:
    """Second position acted on by R_i (cyclic successor of i)."""
    return -2 * n + 1 if i == 2 * n else i + 1


def cyclically_adjacent(i: int, j: int, n: int) -> bool:
    return abs(i - j) == 1 or {i, j} == {2 * n, -2 * n + 1}


@lru_cache(maxsize=None)
def build_r(n: int, i: int, q: LaurentPoly) -> SparseOperator:
    check_n(n)
    if i not in positions(n):
        raise OutOfRange(f"position {i} not in I_{n}")
    if not q.is_unit_monomial():
        raise ValueError(f"R^q_i needs a unit monomial q, got {q}")
    powers = {1: q, 0: ONE, -1: q.inv()}
    m1 = 1 << bit(i, n)
    m2 = 1 << bit(partner(i, n), n)
    both = m1 | m2
    cols = {}
    for word in range(dimension(n)):
        at_i = word & m1
        if bool(at_i) == bool(word & m2):
            continue
        alpha = 2 if at_i else 1
        w12 = (word & ~both) | m2   # letter 1 at i, 2 at partner
        w21 = (word & ~both) | m1   # letter 2 at i, 1 at partner
        cols[word] = {w12: powers[2 - alpha], w21: powers[1 - alpha]}
    return SparseOperator._raw(n, cols)


def block_matrix_oracle(q: LaurentPoly) -> np.ndarray:
    """The 4x4 local block in the basis order 11, 12, 21, 22."""
    blk = np.full((4, 4), ZERO, dtype=object)
    blk[1, 1] = q
    blk[1, 2] = ONE
    blk[2, 1] = ONE
    blk[2, 2] = q.inv()
    return blk


# -- generators -------------------------------------------------------------

_GEN = re.compile(r"^(e|f|U(\d+))$")


def parse_generator(g: str, n: int) -> tuple[str, int]:
    """Split a generator name into ('e'|'f'|'U', index) after validating it."""
    m = _GEN.match(str(g))
    if not m:
        raise BadGenerator(f"unknown generator {g!r}")
    if m.group(2) is None:
        return m.group(1), 0
    i = int(m.group(2))
    if not 1 <= i <= n - 1:
        raise BadGenerator(f"U{i} is not a generator for n={n} (need 1 <= i <= {n - 1})")
    return "U", i


def generators(n: int) -> list[str]:
    return ["e"] + [f"U{i}" for i in range(1, n)] + ["f"]


def gen_factors(n: int, g: str) -> list[tuple[int, LaurentPoly]]:
    """(position, q) pairs whose R-operators multiply to ℛ(g)."""
    kind, i = parse_generator(g, n)
    if kind == "U":
        return [(-n - i, a), (-n + i, b), (n - i, c), (n + i, d)]
    if kind == "e":
        return [(-n, x), (n, y)]
    return [(0, z), (2 * n, w)]


@lru_cache(maxsize=None)
def gen_image(n: int, g: str) -> SparseOperator:
    check_n(n)
    return compose_all([build_r(n, p, q) for p, q in gen_factors(n, g)], n)


def word_image(n: int, word) -> SparseOperator:
    word = tuple(word)
    for g in word:
        parse_generator(g, n)
    if not word:
        return identity_op(n)
    return _word_image(n, word)


@lru_cache(maxsize=256)
def _word_image(n: int, word: tuple[str, ...]) -> SparseOperator:
    if len(word) == 1:
        return gen_image(n, word[0])
    return compose(gen_image(n, word[0]), _word_image(n, word[1:]))


def q_assignment(n: int) -> dict[int, LaurentPoly]:
    """The unit monomial attached to each position by the generator images."""
    qs = {}
    for p in positions(n):
        if p < -n:
            qs[p] = a
        elif p == -n:
            qs[p] = x
        elif p < 0:
            qs[p] = b
        elif p == 0:
            qs[p] = z
        elif p < n:
            qs[p] = c
        elif p == n:
            qs[p] = y
        elif p < 2 * n:
            qs[p] = d
        else:
            qs[p] = w
    return qs


def ij_words(n: int) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """The alternating words I and J; empty U-products are dropped."""
    check_n(n)
    odd_u = [f"U{i}" for i in range(1, n) if i % 2 == 1]
    even_u = [f"U{i}" for i in range(2, n) if i % 2 == 0]
    if n % 2:
        return tuple(odd_u + ["f"]), tuple(["e"] + even_u)
    return tuple(odd_u), tuple(["e"] + even_u + ["f"])


# -- θ ------------------------------------------------------------------------

THETA_COORDS = ("D", "D_L", "D_R", "K_L", "K_R", "K")


@dataclass(frozen=True)
class ThetaAssignment:
    """Images of the six parameters D, D_L, D_R, K_L, K_R, K in the Laurent ring."""
    D: LaurentPoly
    D_L: LaurentPoly
    D_R: LaurentPoly
    K_L: LaurentPoly
    K_R: LaurentPoly
    K: LaurentPoly

    def __getitem__(self, name: str) -> LaurentPoly:
        if name not in THETA_COORDS:
            raise KeyError(name)
        return getattr(self, name)

    def perturbed(self, name: str, by: LaurentPoly | int = 1) -> ThetaAssignment:
        return replace(self, **{name: self[name] + by})

    def as_dict(self) -> dict[str, LaurentPoly]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def kappa_odd() -> LaurentPoly:
    return x * y / (z * w) + 2 + z * w / (x * y)


def kappa_even() -> LaurentPoly:
    return a * b * c * d / (x * y * z * w) + 2 + x * y * z * w / (a * b * c * d)


def theta_target(n: int) -> ThetaAssignment:
    if n < 1:
        raise OutOfRange(f"n must be >= 1, got {n}")
    return ThetaAssignment(
        D=two_bracket(a) * two_bracket(b) * two_bracket(c) * two_bracket(d),
        D_L=two_bracket(x) * two_bracket(y),
        D_R=two_bracket(z) * two_bracket(w),
        K_L=two_bracket(a * b / x) * two_bracket(c * d / y),
        K_R=two_bracket(a * d / w) * two_bracket(b * c / z),
        K=kappa_odd() if n % 2 else kappa_even(),
    )
