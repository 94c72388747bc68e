from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parafock.exactalg import GaussianRational as G
from parafock.ursingle import (
    IDENTITY,
    K,
    InvalidGroupElement,
    UrGroupElement,
    UrState,
    apply_group,
    phase,
    su2,
    ur_norm,
)

F = Fraction
frac = st.fractions(min_value=-9, max_value=9, max_denominator=7)
gauss = st.builds(G, frac, frac)
states = st.builds(UrState, gauss, gauss)

# exact unit-modulus numbers from Pythagorean triples
PYTH = [(3, 4, 5), (5, 12, 13), (8, 15, 17)]
GROUP = [
    IDENTITY,
    su2(G(F(3, 5)), G(0, F(4, 5))),
    su2(G(F(5, 13), F(12, 13)), G(0)),
    su2(G(F(1, 2), F(1, 2)), G(F(1, 2), F(-1, 2))),
    phase(G(F(8, 17), F(15, 17))),
    phase(G(0, 1)),
    K,
]


def test_norm_examples():
    assert ur_norm(UrState(1, 0)) == 1
    assert ur_norm(UrState(G(F(3, 5)), G(0, F(4, 5)))) == 1
    # |1+i|^2 + |1-i|^2 = 2 + 2
    assert ur_norm(UrState(G(1, 1), G(1, -1))) == 4


def test_identity_and_K_on_basis():
    u = UrState(G(2, 1), G(F(1, 3)))
    assert apply_group(IDENTITY, u) == u
    assert apply_group(K, UrState(1, 0)) == UrState(0, -1)
    assert apply_group(K, UrState(0, 1)) == UrState(1, 0)


@settings(max_examples=100, deadline=None)
@given(states)
def test_K_squared_is_minus_one(u):
    assert apply_group(K, apply_group(K, u)) == -u


@settings(max_examples=100, deadline=None)
@given(states, gauss)
def test_K_antilinear(u, lam):
    assert apply_group(K, u.scale(lam)) == apply_group(K, u).scale(lam.conj())


@settings(max_examples=100, deadline=None)
@given(states, st.sampled_from(GROUP))
def test_norm_preserved(u, g):
    assert ur_norm(apply_group(g, u)) == ur_norm(u)


def test_su2_matrix_action():
    g = su2(G(F(3, 5)), G(0, F(4, 5)))
    # ((a, -conj b), (b, conj a)) on (1, 0) gives the first column
    assert apply_group(g, UrState(1, 0)) == UrState(G(F(3, 5)), G(0, F(4, 5)))


@pytest.mark.parametrize(
    "element",
    [
        UrGroupElement("unitary", ((G(2), G(0)), (G(0), G(F(1, 2))))),  # det 1, not unitary
        UrGroupElement("unitary", ((G(0), G(1)), (G(1), G(0)))),  # unitary, det -1
        UrGroupElement("unitary"),
        UrGroupElement("phase", phase=G(F(1, 2))),
        UrGroupElement("phase"),
        UrGroupElement("rotation"),
    ],
)
def test_invalid_elements(element):
    with pytest.raises(InvalidGroupElement):
        apply_group(element, UrState(1, 0))


def test_su2_constructor_validates():
    with pytest.raises(InvalidGroupElement):
        su2(G(1), G(1))
