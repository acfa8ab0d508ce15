"""The free module V^{⊗4n} over the Laurent ring, with sparse operators.

Tensor factors are addressed by positions p in I_n = {-2n+1, ..., 2n}.  A
basis word is stored as an int in [0, 2**(4n)): slot ``s = p + 2n - 1`` lives
in bit ``4n - 1 - s`` and the bit value is ``letter - 1``.  The leftmost
factor is the most significant bit, so integer order is lexicographic word
order and agrees with Kronecker-product row ordering.

Operators are stored column-wise: ``cols[w]`` is the image of basis word ``w``
as a dict ``word -> LaurentPoly`` with no zero entries.  A missing column is
the zero vector.
"""

from __future__ import annotations

import os
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from typing import TextIO

from .laurent import BIAS, ONE, LaurentPoly, parse, render

DEFAULT_MAX_N = 5


class OutOfRange(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


def max_n() -> int:
    """Largest supported n; override with the SYMBLOB_MAX_N environment variable."""
    return int(os.environ.get("SYMBLOB_MAX_N", DEFAULT_MAX_N))


def check_n(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"n must be an int, got {type(n).__name__}")
    if n < 1:
        raise OutOfRange(f"n must be >= 1, got {n}")
    if n > max_n():
        raise OutOfRange(f"n={n} exceeds the configured maximum {max_n()} (SYMBLOB_MAX_N)")
    return n


def positions(n: int) -> range:
    return range(-2 * n + 1, 2 * n + 1)


def slot(p: int, n: int) -> int:
    if not -2 * n + 1 <= p <= 2 * n:
        raise OutOfRange(f"position {p} not in I_{n} = [{-2 * n + 1}, {2 * n}]")
    return p + 2 * n - 1


def bit(p: int, n: int) -> int:
    """Bit index holding the letter at position p."""
    return 4 * n - 1 - slot(p, n)


def dimension(n: int) -> int:
    return 1 << (4 * n)


@dataclass(frozen=True)
class BasisWord:
    n: int
    code: int

    def __post_init__(self):
        if not 0 <= self.code < dimension(self.n):
            raise OutOfRange(f"word code {self.code} out of range for n={self.n}")

    @classmethod
    def from_letters(cls, letters: Sequence[int], n: int | None = None) -> BasisWord:
        if n is None:
            if len(letters) % 4:
                raise DimensionMismatch(f"word length {len(letters)} is not a multiple of 4")
            n = len(letters) // 4
        if len(letters) != 4 * n:
            raise DimensionMismatch(f"word length {len(letters)} != 4n = {4 * n}")
        code = 0
        for letter in letters:
            if letter not in (1, 2):
                raise ValueError(f"letters must be 1 or 2, got {letter}")
            code = (code << 1) | (letter - 1)
        return cls(n, code)

    @property
    def letters(self) -> tuple[int, ...]:
        return letters(self.code, self.n)

    def at(self, p: int) -> int:
        return letter_at(self.code, p, self.n)

    def __str__(self):
        return "".join(map(str, self.letters))


def letters(code: int, n: int) -> tuple[int, ...]:
    m = 4 * n
    return tuple(((code >> (m - 1 - s)) & 1) + 1 for s in range(m))


def letter_at(code: int, p: int, n: int) -> int:
    return ((code >> bit(p, n)) & 1) + 1


def word(letters_: Sequence[int]) -> int:
    """Integer code of a word given as a letter sequence."""
    return BasisWord.from_letters(letters_).code


class TensorVector:
    """Finite 𝒜-linear combination of basis words of one fixed n."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[int, LaurentPoly] | None = None):
        self.n = n
        dim = dimension(n)
        out = {}
        for w, c in (terms or {}).items():
            w = w.code if isinstance(w, BasisWord) else int(w)
            if not 0 <= w < dim:
                raise OutOfRange(f"word code {w} out of range for n={n}")
            if not isinstance(c, LaurentPoly):
                c = LaurentPoly.constant(c)
            if c:
                out[w] = out[w] + c if w in out else c
        self._terms = {w: c for w, c in out.items() if c}

    @classmethod
    def basis(cls, n: int, w: int | BasisWord | Sequence[int]) -> TensorVector:
        if isinstance(w, BasisWord):
            w = w.code
        elif not isinstance(w, int):
            w = word(w)
        return cls(n, {w: ONE})

    @property
    def terms(self) -> dict[int, LaurentPoly]:
        return dict(sorted(self._terms.items()))

    def __iter__(self) -> Iterator[tuple[int, LaurentPoly]]:
        return iter(sorted(self._terms.items()))

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: TensorVector) -> TensorVector:
        _same_n(self.n, other.n)
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out[w] + c if w in out else c
        return TensorVector(self.n, out)

    def scale(self, c: LaurentPoly) -> TensorVector:
        return TensorVector(self.n, {w: c * v for w, v in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, TensorVector):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __repr__(self):
        body = " + ".join(f"({render(c)})*|{BasisWord(self.n, w)}>" for w, c in self)
        return f"TensorVector(n={self.n}, {body or '0'})"


def _same_n(n1: int, n2: int) -> None:
    if n1 != n2:
        raise DimensionMismatch(f"n mismatch: {n1} vs {n2}")


def _finalize(acc: dict[int, dict[int, int]]) -> dict[int, LaurentPoly]:
    col = {}
    for v, raw in acc.items():
        p = LaurentPoly._raw(raw)
        if p:
            col[v] = p
    return col


def _accumulate(acc: dict[int, dict[int, int]], c: LaurentPoly,
                image: Mapping[int, LaurentPoly]) -> None:
    # acc += c * image, done on raw term dicts to avoid temporary objects
    cterms = c._terms
    for v, d in image.items():
        slot_ = acc.get(v)
        if slot_ is None:
            slot_ = acc[v] = {}
        for k2, v2 in d._terms.items():
            for k1, v1 in cterms.items():
                k = k1 + k2 - BIAS
                slot_[k] = slot_.get(k, 0) + v1 * v2


class SparseOperator:
    """𝒜-linear endomorphism of V^{⊗4n}, stored by columns."""

    __slots__ = ("n", "_cols")

    def __init__(self, n: int, cols: Mapping[int, Mapping[int, LaurentPoly]] | None = None):
        self.n = n
        dim = dimension(n)
        clean = {}
        for w, col in (cols or {}).items():
            if not 0 <= w < dim:
                raise OutOfRange(f"column word {w} out of range for n={n}")
            c = {v: p for v, p in col.items() if p}
            if any(not 0 <= v < dim for v in c):
                raise OutOfRange(f"row word out of range in column {w}")
            if c:
                clean[w] = c
        self._cols = clean

    @classmethod
    def _raw(cls, n: int, cols: dict[int, dict[int, LaurentPoly]]) -> SparseOperator:
        obj = cls.__new__(cls)
        obj.n = n
        obj._cols = cols
        return obj

    def column(self, w: int | BasisWord) -> TensorVector:
        if isinstance(w, BasisWord):
            w = w.code
        return TensorVector(self.n, self._cols.get(w, {}))

    def columns(self) -> Iterator[tuple[int, dict[int, LaurentPoly]]]:
        for w in sorted(self._cols):
            yield w, dict(sorted(self._cols[w].items()))

    def nonzero_columns(self) -> list[int]:
        return sorted(self._cols)

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self._cols.values())

    def max_column_size(self) -> int:
        return max((len(c) for c in self._cols.values()), default=0)

    def __matmul__(self, other: SparseOperator) -> SparseOperator:
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, SparseOperator):
            return NotImplemented
        return op_eq(self, other)

    def __repr__(self):
        return f"SparseOperator(n={self.n}, columns={len(self._cols)}, nnz={self.nnz})"

    def triplets(self) -> Iterator[tuple[int, int, LaurentPoly]]:
        """(row, col, coefficient) in column-major, row-ascending order."""
        for w, col in self.columns():
            for v, c in col.items():
                yield v, w, c


def identity_op(n: int) -> SparseOperator:
    check_n(n)
    return SparseOperator._raw(n, {w: {w: ONE} for w in range(dimension(n))})


def zero_op(n: int) -> SparseOperator:
    return SparseOperator._raw(n, {})


def apply(op: SparseOperator, v: TensorVector) -> TensorVector:
    _same_n(op.n, v.n)
    acc: dict[int, dict[int, int]] = {}
    for w, c in v._terms.items():
        image = op._cols.get(w)
        if image:
            _accumulate(acc, c, image)
    return TensorVector(op.n, _finalize(acc))


def compose(f: SparseOperator, g: SparseOperator) -> SparseOperator:
    """The operator f∘g (apply g first)."""
    _same_n(f.n, g.n)
    fcols = f._cols
    out = {}
    for w, gcol in g._cols.items():
        acc: dict[int, dict[int, int]] = {}
        for u, c in gcol.items():
            image = fcols.get(u)
            if image:
                _accumulate(acc, c, image)
        col = _finalize(acc)
        if col:
            out[w] = col
    return SparseOperator._raw(f.n, out)


def compose_all(ops: Iterable[SparseOperator], n: int) -> SparseOperator:
    """Left-to-right product ops[0] ∘ ops[1] ∘ ...; identity when empty."""
    ops = list(ops)
    if not ops:
        return identity_op(n)
    out = ops[-1]
    for op in reversed(ops[:-1]):
        out = compose(op, out)
    return out


def scalar_mul(c: LaurentPoly | int, f: SparseOperator) -> SparseOperator:
    if not isinstance(c, LaurentPoly):
        c = LaurentPoly.constant(c)
    if not c:
        return zero_op(f.n)
    out = {}
    for w, col in f._cols.items():
        new = {v: c * p for v, p in col.items()}
        new = {v: p for v, p in new.items() if p}
        if new:
            out[w] = new
    return SparseOperator._raw(f.n, out)


def op_add(f: SparseOperator, g: SparseOperator) -> SparseOperator:
    _same_n(f.n, g.n)
    out = {w: dict(col) for w, col in f._cols.items()}
    for w, col in g._cols.items():
        tgt = out.setdefault(w, {})
        for v, p in col.items():
            tgt[v] = tgt[v] + p if v in tgt else p
    return SparseOperator(f.n, out)


def op_eq(f: SparseOperator, g: SparseOperator) -> bool:
    return f.n == g.n and f._cols == g._cols


def first_difference(f: SparseOperator, g: SparseOperator) -> int | None:
    """Smallest basis word whose images under f and g differ, or None."""
    _same_n(f.n, g.n)
    for w in sorted(set(f._cols) | set(g._cols)):
        if f._cols.get(w, {}) != g._cols.get(w, {}):
            return w
    return None


# -- sparse triplet serialization ------------------------------------------

def write_triplets(op: SparseOperator, fh: TextIO) -> None:
    """One ``row col coefficient`` line per nonzero entry."""
    for v, w, c in op.triplets():
        fh.write(f"{v} {w} {render(c)}\n")


def read_triplets(fh: TextIO, n: int) -> SparseOperator:
    cols: dict[int, dict[int, LaurentPoly]] = {}
    for lineno, line in enumerate(fh, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            row, col, coeff = line.split(maxsplit=2)
            p = parse(coeff)
            row, col = int(row), int(col)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
        tgt = cols.setdefault(col, {})
        tgt[row] = tgt[row] + p if row in tgt else p
    return SparseOperator(n, cols)
