"""Sparse-versus-dense comparisons, one function per computation family.

Each function returns a list of ``(check id, equal)`` pairs so that the unit
tests and the acceptance run can share them.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import dense_oracle as D
from parafock import conformal, fock, states
from parafock.exactalg import GaussianRational, commutator

GREEN_CONFIGS = [(2, 1, 6), (2, 2, 6), (4, 1, 6), (4, 2, 5)]

_engines: dict = {}
_bases: dict = {}


def engine(R, p, n):
    if (R, p, n) not in _engines:
        _engines[(R, p, n)] = D.DenseEngine(R, p, n)
    return _engines[(R, p, n)]


def basis(R, p, n):
    if (R, p, n) not in _bases:
        _bases[(R, p, n)] = fock.build_basis(fock.ModeConfig(R, p, n))
    return _bases[(R, p, n)]


def _same_op(sparse_op, dense_op, space, cols=None) -> bool:
    return D.sparse_op_entries(sparse_op) == D.dense_op_entries(dense_op, space, cols)


def _pair(z: GaussianRational):
    return (z.re, z.im)


def basis_and_ladders(cfg) -> list[tuple[str, bool]]:
    b, e = basis(*cfg), engine(*cfg)
    out = [("states", set(b.states) == set(e.space.states))]
    R, p, _ = cfg
    ops = fock.para_ops(b)
    for r in range(1, R + 1):
        for al in range(1, p + 1):
            out.append((f"b{r}^{al}", _same_op(fock.green_op(b, r, al, "annihilate"), e.b[(r, al)], e.space)))
            out.append((f"b{r}^{al}+", _same_op(fock.green_op(b, r, al, "create"), e.bd[(r, al)], e.space)))
        out.append((f"a{r}", _same_op(ops.a[r], e.a[r], e.space)))
        out.append((f"a{r}+", _same_op(ops.ad[r], e.ad[r], e.space)))
        for s in range(1, R + 1):
            for kind in ("alpha", "alpha+", "tau"):
                out.append((f"{kind}{r}{s}", _same_op(fock.bilinear(b, kind, r, s), e.bilinear(kind, r, s), e.space)))
    return out


def green_relations(cfg, depth: int = 4) -> list[tuple[str, bool]]:
    """Every relation's left-hand side agrees entrywise, and the verdicts agree."""
    b, e = basis(*cfg), engine(*cfg)
    R, p, n_max = cfg
    cols = b.interior(depth)
    dcols = e.space.cols_upto(n_max - depth)
    report = fock.verify_green_relations(b, depth)
    ops = fock.para_ops(b)
    ident = D.identity(e.space)
    zero_d = ident.scale(0)
    out = []

    def compare(rel_id, s_lhs, d_lhs, d_rhs):
        same_lhs = _same_op(s_lhs, d_lhs, e.space, dcols)
        dense_pass = (d_lhs - d_rhs.cols(dcols)).is_zero()
        out.append((rel_id, same_lhs and dense_pass == report[rel_id].passed))

    for r in range(1, R + 1):
        for s in range(1, R + 1):
            for t in range(1, R + 1):
                rhs = e.a[t] if r == s else zero_d
                compare(
                    f"[a{r},tau{s}{t}]",
                    commutator(ops.a[r], fock.bilinear(b, "tau", s, t), columns=cols),
                    D.commutator(e.a[r], e.bilinear("tau", s, t), dcols),
                    rhs,
                )
                compare(
                    f"[a{r},alpha{s}{t}]",
                    commutator(ops.a[r], fock.bilinear(b, "alpha", s, t), columns=cols),
                    D.commutator(e.a[r], e.bilinear("alpha", s, t), dcols),
                    zero_d,
                )
                compare(
                    f"[a{r}+,alpha+{s}{t}]",
                    commutator(ops.ad[r], fock.bilinear(b, "alpha+", s, t), columns=cols),
                    D.commutator(e.ad[r], e.bilinear("alpha+", s, t), dcols),
                    zero_d,
                )
    for r in range(1, R + 1):
        for s in range(1, R + 1):
            for al in range(1, p + 1):
                for be in range(1, p + 1):
                    tag = f"r{r}s{s}a{al}b{be}"
                    sb, sbd = fock.green_op(b, r, al, "annihilate"), fock.green_op(b, r, al, "create")
                    tb, tbd = fock.green_op(b, s, be, "annihilate"), fock.green_op(b, s, be, "create")
                    db, dbd, eb, ebd = e.b[(r, al)], e.bd[(r, al)], e.b[(s, be)], e.bd[(s, be)]
                    if al == be:
                        rhs = ident if r == s else zero_d
                        compare(f"[b,b+]:{tag}", commutator(sb, tbd, columns=cols), D.commutator(db, ebd, dcols), rhs)
                        compare(f"[b+,b+]:{tag}", commutator(sbd, tbd, columns=cols), D.commutator(dbd, ebd, dcols), zero_d)
                        compare(f"[b,b]:{tag}", commutator(sb, tb, columns=cols), D.commutator(db, eb, dcols), zero_d)
                    else:
                        compare(f"{{b,b+}}:{tag}", commutator(sb, tbd, anti=True, columns=cols), D.commutator(db, ebd, dcols, anti=True), zero_d)
                        compare(f"{{b,b}}:{tag}", commutator(sb, tb, anti=True, columns=cols), D.commutator(db, eb, dcols, anti=True), zero_d)
                        compare(f"{{b+,b+}}:{tag}", commutator(sbd, tbd, anti=True, columns=cols), D.commutator(dbd, ebd, dcols, anti=True), zero_d)
    # a_r a_s+ |Omega> = p delta_rs |Omega>
    vac = e.vacuum()
    for r in range(1, R + 1):
        for s in range(1, R + 1):
            v = e.a[r].apply(e.ad[s].apply(vac))
            want = vac.scale(p if r == s else 0)
            dense_ok = v.entries(e.space) == want.entries(e.space)
            rid = f"a{r}a{s}+|Omega>=p*delta|Omega>"
            out.append((rid, dense_ok == report[rid].passed))
    return out


def generators(cfg=(4, 1, 8)) -> list[tuple[str, bool]]:
    b, e = basis(*cfg), engine(*cfg)
    g = conformal.build_generators(b)
    return [(name, _same_op(g[name], e.generators[name], e.space)) for name in conformal.GENERATOR_NAMES]


def closure(cfg=(4, 1, 8), depth: int = 4) -> list[tuple[str, bool]]:
    b, e = basis(*cfg), engine(*cfg)
    table = conformal.closure_table(conformal.build_generators(b), depth)
    g = e.generators
    dcols = e.space.cols_upto(cfg[2] - depth)
    names = list(conformal.GENERATOR_NAMES)
    solver = D.SpanOracle([g[n].cols(dcols) for n in names] + [D.identity(e.space).cols(dcols)])
    out = [("span_rank", solver.rank == table.span_rank)]
    for a, c in combinations(names, 2):
        dense = solver.solve(D.commutator(g[a], g[c], dcols))
        sparse = table.rows[(a, c)]
        same = (dense is None and sparse is None) or (
            dense is not None and sparse is not None and dense == [_pair(z) for z in sparse]
        )
        out.append((f"[{a},{c}]", same))
    return out


def jacobi(cfg=(4, 1, 10), depth: int = 6) -> list[tuple[str, bool]]:
    b, e = basis(*cfg), engine(*cfg)
    triples = list(combinations(conformal.GENERATOR_NAMES, 3))
    rep = conformal.jacobi_check(conformal.build_generators(b), depth, triples)
    dense = D.jacobi(e, depth, triples)
    return [(f"({a},{c},{d})", dense[(a, c, d)] == rep[f"({a},{c},{d})"].passed) for a, c, d in triples]


def _state_conditions(e, kind, P_dense, eps):
    if kind == "vacuum" or (kind == "zeron" and not eps):
        return [(n, P_dense[n], None) for n in conformal.POINCARE_NAMES]
    z = (Fraction(0), Fraction(0))
    return [
        ("P1", P_dense["P1"], z),
        ("P2", P_dense["P2"], z),
        ("P0-P3", P_dense["P0"] - P_dense["P3"], z),
        ("P0+P3", P_dense["P0"] + P_dense["P3"], (Fraction(0), Fraction(eps))),
    ]


def state_residuals(cfg=(4, 1, 10), cases=None) -> list[tuple[str, bool]]:
    """Vectors and shell-resolved residual reports of the truncated states."""
    b, e = basis(*cfg), engine(*cfg)
    P = conformal.build_poincare(conformal.build_generators(b))
    Pd = e.poincare()
    cases = cases or [
        ("vacuum", 3, None, None, 4),
        ("vacuum", 2, None, None, 2),
        ("zeron", 2, 2, Fraction(1), 2),
        ("zeron", 2, 2, Fraction(1, 2), 2),
        ("zeron", 2, 2, Fraction(0), 2),
        ("neutrino", 2, 2, Fraction(1), 2),
    ]
    out = []
    for kind, K, Kp, eps, bw in cases:
        w = states.lorentz_vacuum(b, K)
        wd = D.lorentz_vacuum(e, K)
        s, sd = w, wd
        if kind in ("zeron", "neutrino"):
            s = states.zeron(b, w, eps, Kp)
            sd = D.zeron(e, wd, eps, Kp)
            if kind == "neutrino":
                s = states.neutrino(b, s)
                sd = e.a[1].apply(sd)
        tag = f"{kind} K={K} K'={Kp} eps={eps} bw={bw}"
        out.append((f"{tag}: vector", D.sparse_vec_entries(s.vector) == sd.entries(e.space)))
        rep = states.check_invariance(s, P, bw)
        top = s.exact_through - bw
        for name, op, expected in _state_conditions(e, kind, Pd, eps):
            clean, found, counts = D.condition(e, op, sd, top, expected)
            r = rep[name]
            sparse_counts = {c["n"]: c["residual_component_count"] for c in r.shell_counts()}
            sparse_found = None if r.recorded_constant is None else _pair(r.recorded_constant)
            same = clean == r.interior_clean and counts == sparse_counts and found == sparse_found
            out.append((f"{tag}: {name}", same))
    return out


def fock_states(cfg=(2, 2, 6)) -> list[tuple[str, bool]]:
    b, e = basis(*cfg), engine(*cfg)
    b1, e1 = basis(2, 1, cfg[2]), engine(2, 1, cfg[2])
    out = []

    def dense_monomial(word, e=e):
        v = e.vacuum()
        for r in reversed(word):
            v = e.ad[r].apply(v)
        return v

    words = [(1, 1, 2), (1, 2, 1), (2, 1, 1)]
    for w in words:
        out.append((f"monomial{w}", D.sparse_vec_entries(fock.monomial_state(b, w)) == dense_monomial(w).entries(e.space)))
    dense_rank = D.exact_rank([dense_monomial(w) for w in words])
    out.append(("physical_span(1,1,2)", dense_rank == fock.physical_span(b, (1, 1, 2))))
    dense_rank1 = D.exact_rank([dense_monomial(w, e1) for w in words])
    out.append(("physical_span(1,1,2) p=1", dense_rank1 == fock.physical_span(b1, (1, 1, 2))))
    res = fock.psi121_construction(b)
    m = {w: dense_monomial(w) for w in words}
    expr = (m[(1, 2, 1)] + (m[(1, 1, 2)] + m[(2, 1, 1)]).scale(Fraction(-1, 2))).scale(Fraction(1, 8))
    combo = m[(1, 2, 1)].scale(2) + m[(1, 1, 2)].scale(-1) + m[(2, 1, 1)].scale(-1)
    out.append(("psi121 expression", D.sparse_vec_entries(res["expression"]) == expr.entries(e.space)))
    out.append(("psi121 scalar", expr.entries(e.space) == combo.scale(res["scalar"].re).entries(e.space)))
    return out


ALL = {
    "ladders": lambda: [x for cfg in GREEN_CONFIGS for x in basis_and_ladders(cfg)],
    "green": lambda: [x for cfg in GREEN_CONFIGS for x in green_relations(cfg)],
    "generators": generators,
    "closure": closure,
    "jacobi": jacobi,
    "states": state_residuals,
    "fock_states": fock_states,
}
