import math
from fractions import Fraction

import pytest

from parafock.conformal import build_generators, build_poincare
from parafock.exactalg import GaussianRational as G, op_apply
from parafock.fock import ModeConfig, build_basis, para_ops
from parafock.states import (
    bare_vacuum,
    check_invariance,
    interior_shells,
    lorentz_vacuum,
    neutrino,
    vacuum_coefficient,
    vacuum_term_coefficients,
    zeron,
)

I_POWERS = [G(1), G(0, 1), G(-1), G(0, -1)]


def _setup(n_max, p=1):
    b = build_basis(ModeConfig(4, p, n_max))
    return b, build_poincare(build_generators(b))


@pytest.fixture(scope="module")
def s10():
    return _setup(10)


def test_vacuum_coefficient_table():
    for mu in range(5):
        for lam in range(5):
            want = I_POWERS[(mu - lam) % 4] * Fraction((-1) ** (mu + lam), math.factorial(mu) * math.factorial(lam))
            assert vacuum_coefficient(mu, lam) == want


def test_vacuum_readback(s10):
    b, _ = s10
    w = lorentz_vacuum(b, 3)
    got = vacuum_term_coefficients(w)
    assert set(got) == {(m, l) for m in range(4) for l in range(4) if m + l <= 3}
    for (mu, lam), c in got.items():
        assert c == vacuum_coefficient(mu, lam)


def test_vacuum_support(s10):
    b, _ = s10
    w = lorentz_vacuum(b, 3)
    assert w.shell_support == frozenset({0, 2, 4, 6})
    assert w.exact_through == 6
    # p=1 terms are single occupations with dual-pairing weight (mu! lam!)^2
    assert w.pairing_value() == sum(
        Fraction(1, (math.factorial(m) * math.factorial(l)) ** 2) * (math.factorial(m) * math.factorial(l)) ** 4
        for m in range(4)
        for l in range(4 - m)
    )


@pytest.mark.parametrize("K", [3, 4, 5])
def test_vacuum_interior_clean(K):
    b, P = _setup(2 * K + 4)
    rep = check_invariance(lorentz_vacuum(b, K), P, boundary_width=4)
    assert rep.interior_clean
    assert {r.mode for r in rep.results} == {"annihilated"}
    assert len(rep.results) == 10


def test_vacuum_p2_interior_clean():
    b, P = _setup(6, p=2)
    rep = check_invariance(lorentz_vacuum(b, 2), P, boundary_width=2)
    assert rep.interior_clean


def test_bare_vacuum_not_invariant(s10):
    b, P = s10
    rep = check_invariance(bare_vacuum(b), P, boundary_width=4)
    assert not rep.interior_clean
    assert rep["N14"].mode == "violated"


def test_residual_lives_at_the_cutoff(s10):
    b, P = s10
    rep = check_invariance(lorentz_vacuum(b, 3), P, boundary_width=4)
    for r in rep.results:
        assert all(n > 6 - 4 for n in r.residual.shell_support())


@pytest.mark.parametrize("eps", [Fraction(1), Fraction(1, 2), Fraction(-3, 2)])
def test_zeron_conditions(s10, eps):
    b, P = s10
    z = zeron(b, lorentz_vacuum(b, 2), eps, 2)
    rep = check_invariance(z, P, boundary_width=2)
    assert rep.interior_clean
    assert rep["P0+P3"].recorded_constant == G(0, eps)
    assert rep["P0+P3"].mode == "eigenvalue"
    for name in ("P1", "P2", "P0-P3"):
        assert rep[name].mode == "annihilated"


def test_zeron_eps_zero_is_vacuum(s10):
    b, P = s10
    w = lorentz_vacuum(b, 2)
    z = zeron(b, w, 0, 2)
    assert z.vector == w.vector
    rep = check_invariance(z, P, boundary_width=2)
    assert len(rep.results) == 10 and rep.interior_clean


def test_neutrino_is_annihilator_image(s10):
    b, _ = s10
    z = zeron(b, lorentz_vacuum(b, 2), 1, 2)
    nu = neutrino(b, z)
    assert nu.vector == op_apply(para_ops(b).a[1], z.vector)
    assert nu.exact_through == z.exact_through - 1


def test_neutrino_residuals(s10):
    b, P = s10
    nu = neutrino(b, zeron(b, lorentz_vacuum(b, 2), 1, 2))
    rep = check_invariance(nu, P, boundary_width=2)
    for name in ("P1", "P2", "P0-P3"):
        assert rep[name].interior_clean
    # the energy condition carries a nonzero residual already on shell 1
    assert not rep["P0+P3"].interior_clean
    assert 1 in rep["P0+P3"].residual.shell_support()


def test_interior_shells():
    b, _ = _setup(6)
    w = lorentz_vacuum(b, 3)
    assert interior_shells(w, 4) == [0, 1, 2]


def test_check_guards(s10):
    b, P = s10
    w = lorentz_vacuum(b, 2)
    with pytest.raises(ValueError):
        check_invariance(w, P, boundary_width=1)
    with pytest.raises(ValueError):
        check_invariance(w, P, boundary_width=5)
    other, P2 = _setup(4)
    with pytest.raises(ValueError):
        check_invariance(w, P2, boundary_width=2)


def test_cutoff_guards(s10):
    b, _ = s10
    with pytest.raises(ValueError):
        lorentz_vacuum(b, 6)
    w = lorentz_vacuum(b, 3)
    with pytest.raises(ValueError):
        zeron(b, w, 1, 3)
    with pytest.raises(ValueError):
        zeron(b, bare_vacuum(b), 1, 1)
    bp, _ = _setup(4, p=2)
    with pytest.raises(ValueError):
        zeron(bp, lorentz_vacuum(bp, 1), 1, 1)


def test_report_json_shape(s10):
    b, P = s10
    d = check_invariance(lorentz_vacuum(b, 3), P, boundary_width=4).to_dict()
    assert d["state"] == "vacuum"
    assert {c["condition"] for c in d["conditions"]} >= {"P0", "M12"}
    assert all("residual_component_count" in s for c in d["conditions"] for s in c["shells"])
