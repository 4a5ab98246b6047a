"""Shared hypothesis strategies"""

from math import gcd

from hypothesis import strategies as st

from algebra.curves import SL2Matrix, to_first_basis_vector
from algebra.laurent import LaurentPoly


def laurent_polys(max_terms: int = 5, max_exp: int = 12, max_coeff: int = 20):
    return st.dictionaries(
        st.integers(-max_exp, max_exp),
        st.integers(-max_coeff, max_coeff),
        max_size=max_terms,
    ).map(LaurentPoly)


def primitive_vectors(bound: int = 30):
    return st.tuples(st.integers(-bound, bound), st.integers(-bound, bound)).filter(
        lambda v: gcd(*v) == 1
    )


def sl2_matrices(max_length: int = 6):
    generators = [SL2Matrix.shear(1), SL2Matrix.shear(-1), SL2Matrix.lower_shear(1), SL2Matrix.lower_shear(-1)]

    def product(word):
        m = SL2Matrix.identity()
        for index in word:
            m = generators[index] @ m
        return m

    return st.lists(st.integers(0, 3), max_size=max_length).map(product)


@st.composite
def det2_pairs(draw, bound: int = 30):
    """Primitive (u, v) with |det(u, v)| = 2, built from a completion of u"""
    u = draw(primitive_vectors(bound))
    w = to_first_basis_vector(u).inverse().apply((draw(st.integers(-3, 3)), 1))
    sign = draw(st.sampled_from((1, -1)))
    v = (sign * u[0] + 2 * w[0], sign * u[1] + 2 * w[1])
    if draw(st.booleans()):
        v = (-v[0], -v[1])
    return u, v
