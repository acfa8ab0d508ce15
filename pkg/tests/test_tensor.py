import io

import pytest
from hypothesis import given, strategies as st

from symblob import dense
from symblob.laurent import ONE, ZERO, var
from symblob.roperators import build_r, gen_image
from symblob.tensor import (
    BasisWord, DimensionMismatch, OutOfRange, SparseOperator, TensorVector, apply, check_n,
    compose, compose_all, dimension, identity_op, op_add, op_eq, read_triplets, scalar_mul,
    slot, word, write_triplets, zero_op,
)

from conftest import polys

q = var("a") * var("z").inv()


def test_slot_examples():
    assert slot(-1, 1) == 0
    assert slot(2, 1) == 3
    assert slot(0, 2) == 3
    with pytest.raises(OutOfRange):
        slot(3, 1)
    with pytest.raises(OutOfRange):
        slot(-2, 1)


def test_n_guard(monkeypatch):
    with pytest.raises(OutOfRange):
        check_n(0)
    with pytest.raises(OutOfRange):
        check_n(6)
    monkeypatch.setenv("SYMBLOB_MAX_N", "6")
    assert check_n(6) == 6
    with pytest.raises(OutOfRange):
        identity_op(0)


def test_word_letters():
    bw = BasisWord.from_letters((1, 1, 2, 1))
    assert bw.n == 1
    assert bw.letters == (1, 1, 2, 1)
    assert bw.at(-1) == 1 and bw.at(1) == 2
    assert str(bw) == "1121"
    with pytest.raises(DimensionMismatch):
        BasisWord.from_letters((1, 2, 1))
    with pytest.raises(ValueError):
        BasisWord.from_letters((1, 3, 1, 1))


def test_apply_examples():
    v = TensorVector.basis(1, (1, 1, 2, 1)).scale(q + 2)
    assert apply(identity_op(1), v) == v
    assert apply(build_r(1, 0, q), TensorVector(1)).is_zero()
    out = apply(build_r(1, 0, q), TensorVector.basis(1, (1, 1, 2, 1)))
    expected = TensorVector.basis(1, (1, 1, 2, 1)).scale(q) + TensorVector.basis(1, (1, 2, 1, 1))
    assert out == expected


def test_apply_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        apply(identity_op(1), TensorVector(2))
    with pytest.raises(DimensionMismatch):
        compose(identity_op(1), identity_op(2))


def test_compose_examples():
    g = build_r(1, 0, q)
    assert op_eq(compose(identity_op(1), g), g)
    assert op_eq(compose(g, identity_op(1)), g)
    assert op_eq(compose(g, g), scalar_mul(q + q.inv(), g))
    # positions -1 and 1 are not cyclically adjacent at n = 1
    r1, r2 = build_r(1, -1, q), build_r(1, 1, var("b"))
    assert op_eq(compose(r1, r2), compose(r2, r1))
    assert op_eq(compose_all([], 1), identity_op(1))
    assert op_eq(compose_all([r1, r2, g], 1), compose(r1, compose(r2, g)))


def test_scalar_and_equality_examples():
    g = build_r(1, 0, q)
    assert op_eq(scalar_mul(0, g), zero_op(1))
    assert op_eq(scalar_mul(1, g), g)
    assert op_eq(g, build_r(1, 0, q))
    assert not op_eq(g, build_r(1, 0, q.inv()))
    assert op_eq(op_add(g, scalar_mul(-1, g)), zero_op(1))


@st.composite
def small_ops(draw, n=1):
    dim = dimension(n)
    cols = {}
    for w in draw(st.lists(st.integers(0, dim - 1), max_size=5, unique=True)):
        rows = draw(st.lists(st.integers(0, dim - 1), min_size=1, max_size=3, unique=True))
        cols[w] = {v: draw(polys(max_terms=2)) for v in rows}
    return SparseOperator(n, cols)


@st.composite
def small_vectors(draw, n=1):
    dim = dimension(n)
    ws = draw(st.lists(st.integers(0, dim - 1), max_size=4, unique=True))
    return TensorVector(n, {w: draw(polys(max_terms=2)) for w in ws})


@given(small_ops(), small_ops(), small_ops())
def test_compose_associative(f, g, h):
    assert op_eq(compose(f, compose(g, h)), compose(compose(f, g), h))


@given(small_ops(), small_ops(), small_vectors())
def test_apply_respects_compose(f, g, v):
    assert apply(compose(f, g), v) == apply(f, apply(g, v))


@given(small_ops(), small_ops())
def test_compose_matches_dense_product(f, g):
    lhs = dense.matmul(dense.to_dense(f), dense.to_dense(g))
    assert dense.equal(lhs, dense.to_dense(compose(f, g)))


def test_dense_generator_products_n2():
    U, e, f = gen_image(2, "U1"), gen_image(2, "e"), gen_image(2, "f")
    De, Df, DU = dense.to_dense(e), dense.to_dense(f), dense.to_dense(U)
    assert dense.equal(dense.matmul(De, Df), dense.to_dense(compose(e, f)))
    assert dense.equal(dense.matmul(DU, dense.matmul(De, DU)),
                       dense.to_dense(compose(U, compose(e, U))))


@given(small_ops())
def test_symbolic_triplet_round_trip(f):
    buf = io.StringIO()
    write_triplets(f, buf)
    buf.seek(0)
    assert op_eq(read_triplets(buf, 1), f)


def test_dense_round_trip():
    g = gen_image(1, "f")
    assert op_eq(dense.from_dense(dense.to_dense(g), 1), g)


def test_zero_entries_are_pruned():
    op = SparseOperator(1, {3: {3: ZERO, 4: ONE}, 5: {5: ZERO}})
    assert dict(op.columns()) == {3: {4: ONE}}
    v = TensorVector(1, {2: ZERO})
    assert v.is_zero()


def test_word_helper():
    assert word((1, 1, 1, 1)) == 0
    assert word((2, 2, 2, 2)) == 15
    # the leftmost letter is the most significant bit
    assert word((2, 1, 1, 1)) == 8
