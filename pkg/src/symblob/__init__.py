"""Tensor-space representation of the symplectic blob algebra over a Laurent ring.

Submodules: ``laurent`` (scalars), ``tensor`` (V^{⊗4n} and sparse operators),
``roperators`` (R-operators, generator images, θ-targets), ``relations``
(relation and lemma checks), ``specialize`` (Π -> Σ solver and numeric
matrices), ``cli``.
"""

from .laurent import LaurentPoly, lp_add, lp_eval, lp_mul, two_bracket, var
from .relations import (
    check_oeo,
    check_relation,
    compute_Q,
    enumerate_relations,
    lemma_suite,
    perturbation_suite,
    verify_all,
)
from .roperators import ThetaAssignment, build_r, gen_image, ij_words, theta_target, word_image
from .specialize import (
    NoSolutionFound,
    Pi,
    Sigma,
    SolverConfig,
    forward_pi,
    numeric_generator_matrices,
    numeric_verify,
    solve_sigma,
)
from .tensor import BasisWord, SparseOperator, TensorVector, apply, compose, identity_op, op_eq, scalar_mul

__version__ = "0.1.0"
