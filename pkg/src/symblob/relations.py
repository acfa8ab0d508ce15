"""Defining relations of the symplectic blob algebra and their checks under ℛ.

Each relation is materialized concretely as ``lhs = θ(scalar) · rhs`` with
both sides generator words; a check composes the generator images and
compares the two operators exactly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .laurent import LaurentPoly, product, random_unit_monomial, render, two_bracket
from .roperators import (
    THETA_COORDS,
    ThetaAssignment,
    build_r,
    cyclically_adjacent,
    ij_words,
    partner,
    q_assignment,
    theta_target,
    word_image,
)
from .tensor import (
    OutOfRange,
    SparseOperator,
    check_n,
    compose,
    compose_all,
    first_difference,
    op_eq,
    positions,
    scalar_mul,
)

# relation family -> θ-coordinate on its right-hand side (None: θ-independent)
FAMILIES = {
    "U_squared": "D",
    "U_braid": None,
    "U_commute": None,
    "e_squared": "D_L",
    "f_squared": "D_R",
    "UeU": "K_L",
    "UfU": "K_R",
    "eU_commute": None,
    "fU_commute": None,
    "ef_commute": None,
    "IJI": "K",
    "JIJ": "K",
}
THETA_INDEPENDENT = tuple(f for f, s in FAMILIES.items() if s is None)


@dataclass(frozen=True)
class RelationInstance:
    id: str
    family: str
    lhs: tuple[str, ...]
    rhs_scalar: str | None
    rhs_word: tuple[str, ...]

    def __str__(self):
        rhs = " ".join(self.rhs_word) or "1"
        if self.rhs_scalar:
            rhs = f"{self.rhs_scalar}·{rhs}"
        return f"{' '.join(self.lhs)} = {rhs}"


def enumerate_relations(n: int) -> list[RelationInstance]:
    check_n(n)
    rels = []

    def add(id_, family, lhs, rhs_word):
        rels.append(RelationInstance(id_, family, tuple(lhs), FAMILIES[family], tuple(rhs_word)))

    us = range(1, n)
    for i in us:
        add(f"U_squared[{i}]", "U_squared", [f"U{i}", f"U{i}"], [f"U{i}"])
    for i in us:
        for j in us:
            if abs(i - j) == 1:
                add(f"U_braid[{i},{j}]", "U_braid", [f"U{i}", f"U{j}", f"U{i}"], [f"U{i}"])
    for i in us:
        for j in us:
            if i < j and j - i != 1:
                add(f"U_commute[{i},{j}]", "U_commute", [f"U{i}", f"U{j}"], [f"U{j}", f"U{i}"])
    add("e_squared", "e_squared", ["e", "e"], ["e"])
    add("f_squared", "f_squared", ["f", "f"], ["f"])
    if n >= 2:
        add("UeU", "UeU", ["U1", "e", "U1"], ["U1"])
        add("UfU", "UfU", [f"U{n - 1}", "f", f"U{n - 1}"], [f"U{n - 1}"])
    for i in us:
        if i != 1:
            add(f"eU_commute[{i}]", "eU_commute", ["e", f"U{i}"], [f"U{i}", "e"])
    for i in us:
        if i != n - 1:
            add(f"fU_commute[{i}]", "fU_commute", ["f", f"U{i}"], [f"U{i}", "f"])
    if n > 1:
        add("ef_commute", "ef_commute", ["e", "f"], ["f", "e"])
    I, J = ij_words(n)
    add("IJI", "IJI", I + J + I, I)
    add("JIJ", "JIJ", J + I + J, J)
    return rels


@dataclass
class RelationResult:
    relation: RelationInstance
    passed: bool
    witness: int | None = None
    lhs_column: dict[int, LaurentPoly] | None = None
    rhs_column: dict[int, LaurentPoly] | None = None
    seconds: float = 0.0

    def to_dict(self) -> dict:
        out = {
            "id": self.relation.id,
            "family": self.relation.family,
            "relation": str(self.relation),
            "scalar": self.relation.rhs_scalar,
            "passed": self.passed,
            "seconds": round(self.seconds, 6),
        }
        if not self.passed:
            out["witness"] = self.witness
            out["lhs_column"] = {str(k): render(v) for k, v in sorted(self.lhs_column.items())}
            out["rhs_column"] = {str(k): render(v) for k, v in sorted(self.rhs_column.items())}
        return out


def _rhs(r: RelationInstance, theta: ThetaAssignment, n: int) -> SparseOperator:
    op = word_image(n, r.rhs_word)
    if r.rhs_scalar is None:
        return op
    return scalar_mul(theta[r.rhs_scalar], op)


def check_relation(r: RelationInstance, theta: ThetaAssignment, n: int) -> RelationResult:
    t0 = time.perf_counter()
    lhs = word_image(n, r.lhs)
    rhs = _rhs(r, theta, n)
    if op_eq(lhs, rhs):
        return RelationResult(r, True, seconds=time.perf_counter() - t0)
    wit = first_difference(lhs, rhs)
    return RelationResult(
        r, False, witness=wit,
        lhs_column=lhs.column(wit).terms, rhs_column=rhs.column(wit).terms,
        seconds=time.perf_counter() - t0,
    )


@dataclass
class VerificationReport:
    n: int
    results: list[RelationResult] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failed_ids(self) -> list[str]:
        return [r.relation.id for r in self.results if not r.passed]

    def failed_families(self) -> set[str]:
        return {r.relation.family for r in self.results if not r.passed}

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "passed": self.passed,
            "n_relations": len(self.results),
            "n_passed": sum(r.passed for r in self.results),
            "relations": [r.to_dict() for r in sorted(self.results, key=lambda r: r.relation.id)],
            "seconds": round(self.seconds, 6),
        }


def verify_all(n: int, theta: ThetaAssignment | None = None) -> VerificationReport:
    if theta is None:
        theta = theta_target(n)
    t0 = time.perf_counter()
    results = [check_relation(r, theta, n) for r in enumerate_relations(n)]
    return VerificationReport(n, results, time.perf_counter() - t0)


def random_theta(rng: np.random.Generator) -> ThetaAssignment:
    return ThetaAssignment(*(random_unit_monomial(rng) for _ in THETA_COORDS))


# -- perturbation -------------------------------------------------------------

def governed_families(coord: str, n: int) -> set[str]:
    present = {r.family for r in enumerate_relations(n)}
    return {f for f, s in FAMILIES.items() if s == coord} & present


def perturbation_suite(n: int) -> dict:
    """Perturb each θ-coordinate by +1 and record which families break.

    A coordinate is pinpointed when the failing families are exactly the ones
    whose right-hand side carries it.  At n = 1 the coordinates D, K_L, K_R
    govern no relation, so nothing may fail.
    """
    base = theta_target(n)
    baseline = verify_all(n, base)
    rows = {}
    for coord in THETA_COORDS:
        rep = verify_all(n, base.perturbed(coord))
        failing = rep.failed_families()
        expected = governed_families(coord, n)
        rows[coord] = {
            "failing_families": sorted(failing),
            "expected_families": sorted(expected),
            "failed_ids": rep.failed_ids(),
            "pinpointed": failing == expected,
            "theta_independent_pass": not (failing & set(THETA_INDEPENDENT)),
        }
    return {
        "n": n,
        "baseline_passed": baseline.passed,
        "coordinates": rows,
        "passed": baseline.passed and all(r["pinpointed"] and r["theta_independent_pass"]
                                          for r in rows.values()),
    }


# -- lemma identities --------------------------------------------------------

def compute_Q(n: int, qs: dict[int, LaurentPoly]) -> LaurentPoly:
    """(odd product)/(even product) + 2 + (even product)/(odd product)."""
    check_n(n)
    missing = set(positions(n)) - set(qs)
    if missing:
        raise OutOfRange(f"q-assignment misses positions {sorted(missing)}")
    odd = product(qs[p] for p in positions(n) if p % 2)
    even = product(qs[p] for p in positions(n) if p % 2 == 0)
    return odd / even + 2 + even / odd


def odd_even_operators(n: int, qs: dict[int, LaurentPoly]) -> tuple[SparseOperator, SparseOperator]:
    odd = compose_all([build_r(n, p, qs[p]) for p in positions(n) if p % 2], n)
    even = compose_all([build_r(n, p, qs[p]) for p in positions(n) if p % 2 == 0], n)
    return odd, even


def check_oeo(n: int, qs: dict[int, LaurentPoly]) -> dict:
    O, E = odd_even_operators(n, qs)
    Q = compute_Q(n, qs)
    OE = compose(O, E)
    return {
        "EOE": op_eq(compose(E, compose(O, E)), scalar_mul(Q, E)),
        "OEO": op_eq(compose(OE, O), scalar_mul(Q, O)),
        "OEOE": op_eq(compose(OE, OE), scalar_mul(Q, OE)),
    }


def check_tl_like(n: int, m: int, q: LaurentPoly) -> dict:
    """Square and braid identities for R^q_m, m ≠ 2n."""
    if m == 2 * n or m not in positions(n):
        raise OutOfRange(f"m={m} must lie in I_{n} without {2 * n}")
    R = build_r(n, m, q)
    out = {"square": op_eq(compose(R, R), scalar_mul(two_bracket(q), R))}
    for nb in (m - 1, m + 1):
        if nb in positions(n) and nb != 2 * n:
            S = build_r(n, nb, q)
            out[f"braid[{nb}]"] = op_eq(compose(R, compose(S, R)), R)
    return out


def sandwich(n: int, left: int, mid: int, right: int,
             q: LaurentPoly, s: LaurentPoly, t: LaurentPoly) -> bool:
    """(R^s_right R^t_left) R^q_mid (R^s_right R^t_left) = [2]_{q/(st)} R^s_right R^t_left."""
    P = compose(build_r(n, right, s), build_r(n, left, t))
    lhs = compose(P, compose(build_r(n, mid, q), P))
    return op_eq(lhs, scalar_mul(two_bracket(q / (s * t)), P))


def check_sandwich(n: int, m: int, q, s, t) -> bool:
    if not -2 * n + 1 < m < 2 * n:
        raise OutOfRange(f"sandwich needs -2n+1 < m < 2n, got m={m}")
    return sandwich(n, m - 1, m, m + 1, q, s, t)


def check_cyclic_sandwich(n: int, q, s, t) -> bool:
    """The wrap operator R^q_{2n} between R^t_{2n-1} and R^s_{-2n+1}."""
    return sandwich(n, 2 * n - 1, 2 * n, partner(2 * n, n), q, s, t)


def check_commutation(n: int, i: int, j: int, q, r) -> bool:
    Ri, Rj = build_r(n, i, q), build_r(n, j, r)
    return op_eq(compose(Ri, Rj), compose(Rj, Ri))


def lemma_suite(n: int, trials: int = 20, seed: int = 0) -> dict:
    """Run every lemma identity on ``trials`` random unit-monomial draws."""
    check_n(n)
    rng = np.random.default_rng(seed)
    pos = list(positions(n))
    counts = {k: [0, 0] for k in ("tl_square", "tl_braid", "sandwich", "cyclic_sandwich",
                                  "commutation", "oeo", "Q_matches_theta")}
    failures = []

    def record(key, ok, detail):
        counts[key][0] += 1
        if ok:
            counts[key][1] += 1
        else:
            failures.append({"check": key, **detail})

    for trial in range(trials):
        q, s, t, r = (random_unit_monomial(rng) for _ in range(4))
        for m in pos:
            if m != 2 * n:
                res = check_tl_like(n, m, q)
                record("tl_square", res.pop("square"), {"trial": trial, "m": m, "q": render(q)})
                for k, ok in res.items():
                    record("tl_braid", ok, {"trial": trial, "m": m, "which": k, "q": render(q)})
            if -2 * n + 1 < m < 2 * n:
                record("sandwich", check_sandwich(n, m, q, s, t),
                       {"trial": trial, "m": m, "q": render(q), "s": render(s), "t": render(t)})
        record("cyclic_sandwich", check_cyclic_sandwich(n, q, s, t),
               {"trial": trial, "q": render(q), "s": render(s), "t": render(t)})
        i, j = (int(v) for v in rng.choice(pos, size=2, replace=False))
        if not cyclically_adjacent(i, j, n):
            record("commutation", check_commutation(n, i, j, q, r), {"trial": trial, "i": i, "j": j})
        qs = {p: random_unit_monomial(rng) for p in pos}
        res = check_oeo(n, qs)
        record("oeo", all(res.values()), {"trial": trial, **res})
    # the position table reproduces the target for K
    record("Q_matches_theta", compute_Q(n, q_assignment(n)) == theta_target(n).K, {"n": n})
    checks = {k: {"run": v[0], "passed": v[1]} for k, v in counts.items()}
    return {
        "n": n,
        "trials": trials,
        "seed": seed,
        "checks": checks,
        "failures": failures,
        "passed": not failures,
    }

