import numpy as np
from hypothesis import settings, strategies as st

from symblob.laurent import NVARS, LaurentPoly

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

exponents = st.tuples(*[st.integers(-3, 3)] * NVARS)


@st.composite
def unit_monomials(draw):
    return LaurentPoly.monomial(draw(exponents))


@st.composite
def polys(draw, max_terms=4):
    terms = draw(st.dictionaries(exponents, st.integers(-5, 5), max_size=max_terms))
    return LaurentPoly(terms)


@st.composite
def points(draw):
    # nonzero complex points with modulus in [0.5, 2]
    mods = draw(st.lists(st.floats(0.5, 2.0), min_size=NVARS, max_size=NVARS))
    args = draw(st.lists(st.floats(0, 2 * np.pi), min_size=NVARS, max_size=NVARS))
    return [m * complex(np.cos(t), np.sin(t)) for m, t in zip(mods, args)]
