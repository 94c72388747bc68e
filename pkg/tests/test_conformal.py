import json
from fractions import Fraction

import pytest

from parafock.conformal import (
    GENERATOR_FORMULAS,
    GENERATOR_NAMES,
    POINCARE_NAMES,
    build_generators,
    build_poincare,
    closure_report,
    closure_table,
    jacobi_check,
    rotation_closure,
)
from parafock.exactalg import GaussianRational as G, SparseOp, SparseVec, op_apply
from parafock.fock import ModeConfig, build_basis


@pytest.fixture(scope="module")
def g418():
    return build_generators(build_basis(ModeConfig(4, 1, 8)))


@pytest.fixture(scope="module")
def table418(g418):
    return closure_table(g418, depth=4)


@pytest.fixture(scope="module")
def table426():
    return closure_table(build_generators(build_basis(ModeConfig(4, 2, 6))), depth=4)


def test_fifteen_generators():
    assert len(GENERATOR_NAMES) == 15
    assert len(POINCARE_NAMES) == 10
    for pref, terms in GENERATOR_FORMULAS.values():
        assert pref in (G(Fraction(1, 2)), G(0, Fraction(1, 2)))
        assert terms


def test_generators_need_four_sorts():
    with pytest.raises(ValueError):
        build_generators(build_basis(ModeConfig(2, 1, 4)))


def test_m46_on_vacuum(g418):
    # (i/2)(n + 2p) on the vacuum: n = 0, so the eigenvalue is i p
    v = op_apply(g418["M46"], g418.basis.vacuum)
    assert v == g418.basis.vacuum.scale(G(0, 1))


def test_m46_on_vacuum_p2():
    b = build_basis(ModeConfig(4, 2, 3))
    v = op_apply(build_generators(b)["M46"], b.vacuum)
    assert v == b.vacuum.scale(G(0, 2))


def test_m12_diagonal(g418):
    # (i/2)(n1 - n2 + n3 - n4) on a one-ur state of sort 1
    b = g418.basis
    i = b.index[(1, 0, 0, 0)]
    assert op_apply(g418["M12"], SparseVec.unit(b, i)) == SparseVec.unit(b, i, G(0, Fraction(1, 2)))


def test_poincare_sums(g418):
    P = build_poincare(g418)
    assert P["P1"] == g418["M15"] + g418["N16"]
    assert P["P0"] == g418["N45"] + g418["M46"]
    assert set(P.rotations) == {"M12", "M13", "M23"}


def test_closure_p1(table418):
    assert table418.closed
    assert table418.span_rank == 16
    assert table418.nonzero("M12", "M13") == {"M23": G(-1)}
    assert table418.nonzero("M12", "M23") == {"M13": G(1)}


def test_closure_independent_of_p(table418, table426):
    assert table426.closed
    assert table418.structure_part() == table426.structure_part()
    assert set(table418.identity_part().values()) == {G(0)}
    assert set(table426.identity_part().values()) == {G(0)}


def test_antisymmetry_of_table(g418):
    t = closure_table(g418, pairs=[("M13", "M12"), ("M12", "M13")])
    a, b = t.rows[("M13", "M12")], t.rows[("M12", "M13")]
    assert a == [-x for x in b]


def test_rotation_subalgebra(g418):
    t = rotation_closure(g418)
    assert t.closed
    for (a, b), row in t.rows.items():
        nz = [x for x in row if x]
        assert len(nz) == 1 and nz[0].abs2() == 1


def test_not_in_span_detected(g418):
    # the product M12 M13 is not a generator combination
    b = g418.basis
    from parafock.exactalg import SpanSolver

    ops = [g418[n] for n in GENERATOR_NAMES] + [SparseOp.identity(b)]
    assert SpanSolver(ops, b.interior(4)).solve(g418["M12"] @ g418["M13"]) is None


def test_closure_depth_guard(g418):
    with pytest.raises(ValueError):
        closure_table(g418, depth=3)
    with pytest.raises(ValueError):
        closure_table(g418, depth=9)


def test_table_json_deterministic(table418):
    a = table418.to_json()
    assert a == table418.to_json()
    doc = json.loads(a)
    assert doc["schema"] == 1
    assert len(doc["table"]) == 105
    assert doc["table"][0]["pair"] == ["M12", "M13"]


def test_closure_report(table418):
    rep = closure_report(table418)
    assert rep.passed
    assert rep["[M12,M13]"].detail == "-1*M23"


def test_jacobi_sample(g418):
    rep = jacobi_check(g418, depth=6, triples="sample")
    assert rep.passed
    assert len(rep.records) == len(range(0, 455, 7))


def test_jacobi_depth_guard(g418):
    with pytest.raises(ValueError):
        jacobi_check(g418, depth=5)
