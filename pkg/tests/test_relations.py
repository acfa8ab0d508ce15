import numpy as np
import pytest
from hypothesis import given, settings

from symblob.laurent import ONE, LaurentPoly, random_unit_monomial, var
from symblob.relations import (
    FAMILIES, THETA_INDEPENDENT, check_commutation, check_cyclic_sandwich, check_oeo, check_relation,
    check_sandwich, check_tl_like, compute_Q, enumerate_relations, lemma_suite,
    perturbation_suite, random_theta, sandwich, verify_all,
)
from symblob.roperators import build_r, q_assignment, theta_target
from symblob.tensor import OutOfRange, compose, op_eq, positions, scalar_mul

from conftest import unit_monomials

a, b, c, d, x, y, z, w = (var(v) for v in "abcdxyzw")


def by_id(n):
    return {r.id: r for r in enumerate_relations(n)}


def test_enumerate_n1():
    rels = enumerate_relations(1)
    assert [str(r) for r in rels] == ["e e = D_L·e", "f f = D_R·f", "f e f = K·f", "e f e = K·e"]


def test_enumerate_n2():
    rels = enumerate_relations(2)
    assert len(rels) == 8
    assert {r.family for r in rels} == {"U_squared", "e_squared", "f_squared", "UeU", "UfU",
                                        "ef_commute", "IJI", "JIJ"}
    ids = by_id(2)
    assert ids["IJI"].lhs == ("U1", "e", "f", "U1")
    assert ids["JIJ"].lhs == ("e", "f", "U1", "e", "f")


def test_enumerate_n3():
    ids = by_id(3)
    assert "U_braid[1,2]" in ids and "U_braid[2,1]" in ids
    assert ids["U_braid[2,1]"].lhs == ("U2", "U1", "U2")
    assert "eU_commute[2]" in ids and "fU_commute[1]" in ids
    assert len(ids) == 13
    assert len(enumerate_relations(4)) == 19


def test_enumerate_rejects_bad_n():
    with pytest.raises(OutOfRange):
        enumerate_relations(0)


def test_check_relation_examples():
    rel = by_id(1)["e_squared"]
    assert check_relation(rel, theta_target(1), 1).passed
    bad = check_relation(rel, theta_target(1).perturbed("D_L"), 1)
    assert not bad.passed
    assert bad.witness is not None
    assert bad.lhs_column != bad.rhs_column
    row = bad.to_dict()
    assert row["witness"] == bad.witness and not row["passed"]


def test_braid_independent_of_theta():
    rng = np.random.default_rng(3)
    rel = by_id(3)["U_braid[1,2]"]
    assert check_relation(rel, random_theta(rng), 3).passed


@pytest.mark.parametrize("n", [1, 2, 3])
def test_verify_all_small(n):
    rep = verify_all(n)
    assert rep.passed, rep.failed_ids()


def test_verify_k_perturbed_n2():
    rep = verify_all(2, theta_target(2).perturbed("K"))
    assert sorted(rep.failed_ids()) == ["IJI", "JIJ"]


@pytest.mark.parametrize("n", [2, 3])
def test_theta_independent_families_random_theta(n):
    rng = np.random.default_rng(11)
    for _ in range(5):
        rep = verify_all(n, random_theta(rng))
        assert not (rep.failed_families() & set(THETA_INDEPENDENT))


def test_families_cover_theta():
    governed = {s for s in FAMILIES.values() if s}
    assert governed == {"D", "D_L", "D_R", "K_L", "K_R", "K"}


def test_perturbation_n2():
    rep = perturbation_suite(2)
    assert rep["passed"]
    assert rep["coordinates"]["D"]["failed_ids"] == ["U_squared[1]"]
    assert rep["coordinates"]["K_R"]["failed_ids"] == ["UfU"]
    assert rep["baseline_passed"]


def test_perturbation_n1_vacuous_coordinates():
    rep = perturbation_suite(1)
    assert rep["passed"]
    assert rep["coordinates"]["D"]["failing_families"] == []
    assert rep["coordinates"]["K"]["failing_families"] == ["IJI", "JIJ"]


def test_compute_Q_examples():
    ones = {p: ONE for p in positions(1)}
    assert compute_Q(1, ones) == LaurentPoly.constant(4)
    qs = {-1: x, 0: z, 1: y, 2: w}
    assert compute_Q(1, qs) == x * y / (z * w) + 2 + z * w / (x * y)
    table = dict(zip(positions(2), (a, x, b, z, c, y, d, w)))
    assert compute_Q(2, table) == a * b * c * d / (x * y * z * w) + 2 + x * y * z * w / (a * b * c * d)
    for n in (1, 2, 3, 4):
        assert compute_Q(n, q_assignment(n)) == theta_target(n).K
    with pytest.raises(OutOfRange):
        compute_Q(1, {0: x})


@pytest.mark.parametrize("n", [1, 2])
def test_check_oeo_random(n):
    rng = np.random.default_rng(n)
    for _ in range(3):
        qs = {p: random_unit_monomial(rng) for p in positions(n)}
        assert check_oeo(n, qs) == {"EOE": True, "OEO": True, "OEOE": True}


def test_check_oeo_all_ones():
    assert all(check_oeo(1, {p: ONE for p in positions(1)}).values())


@settings(max_examples=25)
@given(unit_monomials(), unit_monomials(), unit_monomials())
def test_sandwich_and_cyclic_sandwich(q, s, t):
    for m in (0, 1):
        assert check_sandwich(1, m, q, s, t)
    assert check_cyclic_sandwich(1, q, s, t)
    res = check_tl_like(1, 0, q)
    assert all(res.values())


def test_sandwich_wrong_scalar_detected():
    q, s, t = a, b, c
    assert sandwich(1, -1, 0, 1, q, s, t)
    P = compose(build_r(1, 1, s), build_r(1, -1, t))
    lhs = compose(P, compose(build_r(1, 0, q), P))
    assert not op_eq(lhs, scalar_mul(q + q.inv(), P))


def test_tl_like_guards():
    with pytest.raises(OutOfRange):
        check_tl_like(1, 2, a)
    with pytest.raises(OutOfRange):
        check_sandwich(1, -1, a, b, c)


def test_same_position_operators_do_not_commute():
    assert check_commutation(2, -3, 0, a, b)
    assert not check_commutation(1, 0, 0, a, b)


@pytest.mark.parametrize("n", [1, 2])
def test_lemma_suite(n):
    rep = lemma_suite(n, trials=5, seed=1)
    assert rep["passed"], rep["failures"]
    assert rep["checks"]["cyclic_sandwich"]["run"] == 5
    assert lemma_suite(n, trials=5, seed=1) == rep
