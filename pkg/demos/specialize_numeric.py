# Pick six complex parameters, find a point Σ realizing them, and check the
# resulting complex matrices satisfy the relations.
import numpy as np

from symblob.specialize import (
    Pi, forward_pi, numeric_generator_matrices, numeric_verify, random_sigma, solve_sigma,
)

rng = np.random.default_rng(1)
pi = Pi(2 + 1j, -3, 0.5j, 4 - 2j, 1, -1 + 1j)
sol = solve_sigma(pi)
print("Σ =")
for k, v in zip("abcdxyzw", sol.sigma.as_tuple()):
    print(f"  {k} = {v:.6f}")
print("residuals:", {k: f"{v:.1e}" for k, v in sol.residuals.to_dict().items()})

# forward check: evaluating the six products at Σ gives Π back
fv = forward_pi(sol.sigma)
print("delta", fv.delta, "kappa (odd form)", fv.kappa_odd, "(even form)", fv.kappa_even)

# Both κ forms agree at the solution, so the same Σ works for every n.
for n in (1, 2):
    rep = numeric_verify(n, sol.sigma, pi)
    print(f"n={n}: {len(rep.relations)} relations, max residual {rep.max_residual:.2e}")

mats = numeric_generator_matrices(2, sol.sigma)
U = mats["U1"]
print("U1 is", U.shape, "with", U.nnz, "stored entries")
print("|U1 U1 - delta U1| =", abs(U @ U - pi.delta * U).max())

# Round trip from a random Σ: the solver usually lands on a different point.
s = random_sigma(rng)
target = forward_pi(s).pi(2)
s2 = solve_sigma(target).sigma
print("same point:", np.allclose(s.as_tuple(), s2.as_tuple()),
      " same parameters:", np.allclose(forward_pi(s2).pi(2).as_tuple(), target.as_tuple()))
