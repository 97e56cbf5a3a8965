from fractions import Fraction

import numpy as np
from hypothesis import settings, strategies as st

from nchess.freealg import MatrixTuple, NcPoly

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(lambda c: c != 0)


@st.composite
def polys(draw, g=None, max_deg=4, max_terms=6, symmetric=False, min_deg=0):
    g = draw(st.integers(1, 3)) if g is None else g
    word = st.lists(st.integers(0, g - 1), min_size=min_deg, max_size=max_deg).map(tuple)
    terms = draw(st.dictionaries(word, coeffs, max_size=max_terms))
    p = NcPoly(g, terms)
    return p + p.T if symmetric else p


@st.composite
def sym_matrices(draw, n, bound=3):
    m = np.empty((n, n), dtype=object)
    for a in range(n):
        for b in range(a, n):
            m[a, b] = m[b, a] = Fraction(draw(st.integers(-bound, bound)))
    return m


@st.composite
def matrix_tuples(draw, g, n=None):
    n = draw(st.integers(1, 3)) if n is None else n
    return MatrixTuple([draw(sym_matrices(n)) for _ in range(g)])
