# The local operator identities behind the representation, on random monomials.
import numpy as np

from symblob.laurent import random_unit_monomial, render
from symblob.relations import (
    check_cyclic_sandwich, check_oeo, check_sandwich, check_tl_like, compute_Q, lemma_suite,
)
from symblob.roperators import q_assignment, theta_target
from symblob.tensor import positions

rng = np.random.default_rng(0)
q, s, t = (random_unit_monomial(rng) for _ in range(3))
print("q, s, t =", render(q), "|", render(s), "|", render(t))

n = 2
print("square and braid at m=0:", check_tl_like(n, 0, q))
print("sandwich at m=1 with [2]_{q/(st)}:", check_sandwich(n, 1, q, s, t))
print("sandwich through the wrap operator:", check_cyclic_sandwich(n, q, s, t))

qs = {p: random_unit_monomial(rng) for p in positions(n)}
print("odd/even products:", check_oeo(n, qs))

# With the positions labelled as in the generator images, Q is the K target.
Q = compute_Q(n, q_assignment(n))
print("Q =", render(Q))
print("equals K:", Q == theta_target(n).K)

rep = lemma_suite(1, trials=10, seed=3)
for name, c in rep["checks"].items():
    print(f"{name:<16} {c['passed']}/{c['run']}")
