"""The 15 SU(2,2) generators, their Poincare combinations, and closure checks.

Generators are written as bilinear combinations in :data:`GENERATOR_FORMULAS`;
both the sparse engine here and the dense oracle build operators from that one
table.  Structure constants are discovered by exact span solving, never
assumed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .exactalg import GaussianRational, SparseOp, SpanSolver, commutator
from .fock import FockBasis, bilinear, number_ops
from .report import Report

HALF = GaussianRational(Fraction(1, 2))
I_HALF = GaussianRational(0, Fraction(1, 2))

# name -> (prefactor, [(integer coefficient, kind, r, s)])
# kinds: "n" (n_r, s unused), "tau", "alpha", "alpha+", "ntot" (n), "p" (p * identity)
GENERATOR_FORMULAS: dict[str, tuple[GaussianRational, list[tuple[int, str, int, int]]]] = {
    "M12": (I_HALF, [(1, "n", 1, 0), (-1, "n", 2, 0), (1, "n", 3, 0), (-1, "n", 4, 0)]),
    "M13": (HALF, [(-1, "tau", 1, 2), (1, "tau", 2, 1), (-1, "tau", 3, 4), (1, "tau", 4, 3)]),
    "M23": (I_HALF, [(1, "tau", 1, 2), (1, "tau", 2, 1), (1, "tau", 3, 4), (1, "tau", 4, 3)]),
    "M15": (I_HALF, [(1, "tau", 1, 2), (1, "tau", 2, 1), (-1, "tau", 3, 4), (-1, "tau", 4, 3)]),
    "M25": (HALF, [(1, "tau", 1, 2), (-1, "tau", 2, 1), (-1, "tau", 3, 4), (1, "tau", 4, 3)]),
    "M35": (I_HALF, [(1, "n", 1, 0), (-1, "n", 2, 0), (-1, "n", 3, 0), (1, "n", 4, 0)]),
    "M46": (I_HALF, [(1, "ntot", 0, 0), (2, "p", 0, 0)]),
    "N14": (I_HALF, [(1, "alpha", 1, 3), (1, "alpha+", 1, 3), (-1, "alpha", 2, 4), (-1, "alpha+", 2, 4)]),
    "N24": (HALF, [(-1, "alpha", 1, 3), (1, "alpha+", 1, 3), (-1, "alpha", 2, 4), (1, "alpha+", 2, 4)]),
    "N34": (I_HALF, [(-1, "alpha", 1, 4), (-1, "alpha+", 1, 4), (-1, "alpha", 2, 3), (-1, "alpha+", 2, 3)]),
    "N16": (HALF, [(-1, "alpha", 1, 3), (1, "alpha+", 1, 3), (1, "alpha", 2, 4), (-1, "alpha+", 2, 4)]),
    "N26": (I_HALF, [(-1, "alpha", 1, 3), (-1, "alpha+", 1, 3), (-1, "alpha", 2, 4), (-1, "alpha+", 2, 4)]),
    "N36": (HALF, [(1, "alpha", 1, 4), (-1, "alpha+", 1, 4), (1, "alpha", 2, 3), (-1, "alpha+", 2, 3)]),
    "N45": (HALF, [(1, "alpha", 1, 4), (-1, "alpha+", 1, 4), (-1, "alpha", 2, 3), (1, "alpha+", 2, 3)]),
    "N56": (I_HALF, [(1, "alpha", 1, 4), (1, "alpha+", 1, 4), (-1, "alpha", 2, 3), (-1, "alpha+", 2, 3)]),
}
GENERATOR_NAMES = tuple(GENERATOR_FORMULAS)

# Poincare generators as sums of conformal generators
POINCARE_FORMULAS: dict[str, tuple[str, ...]] = {
    "M12": ("M12",),
    "M13": ("M13",),
    "M23": ("M23",),
    "N14": ("N14",),
    "N24": ("N24",),
    "N34": ("N34",),
    "P1": ("M15", "N16"),
    "P2": ("M25", "N26"),
    "P3": ("M35", "N36"),
    "P0": ("N45", "M46"),
}
POINCARE_NAMES = tuple(POINCARE_FORMULAS)
ROTATIONS = ("M12", "M13", "M23")


def _term(basis: FockBasis, kind: str, r: int, s: int) -> SparseOp:
    if kind == "n":
        return number_ops(basis).per_sort[r]
    if kind == "ntot":
        return number_ops(basis).total
    if kind == "p":
        return SparseOp.identity(basis).scale(basis.config.p)
    if kind in ("tau", "alpha", "alpha+"):
        return bilinear(basis, kind, r, s)
    raise KeyError(f"undefined bilinear kind {kind!r}")


@dataclass
class GeneratorSet:
    basis: FockBasis
    gens: dict[str, SparseOp]

    def __getitem__(self, name: str) -> SparseOp:
        return self.gens[name]

    def __iter__(self):
        return iter(GENERATOR_NAMES)

    def __len__(self):
        return len(self.gens)


def build_generators(basis: FockBasis) -> GeneratorSet:
    if basis.config.R != 4:
        raise ValueError(f"the SU(2,2) generators need R=4 (urs and anti-urs), got R={basis.config.R}")
    if "generators" in basis._cache:
        return basis._cache["generators"]
    gens = {}
    for name, (pref, terms) in GENERATOR_FORMULAS.items():
        acc = None
        for coef, kind, r, s in terms:
            t = _term(basis, kind, r, s).scale(coef)
            acc = t if acc is None else acc + t
        gens[name] = acc.scale(pref)
    out = GeneratorSet(basis, gens)
    basis._cache["generators"] = out
    return out


@dataclass
class PoincareSet:
    basis: FockBasis
    ops: dict[str, SparseOp]

    def __getitem__(self, name: str) -> SparseOp:
        return self.ops[name]

    @property
    def rotations(self):
        return {k: self.ops[k] for k in ("M12", "M13", "M23")}

    @property
    def boosts(self):
        return {k: self.ops[k] for k in ("N14", "N24", "N34")}

    @property
    def momenta(self):
        return {k: self.ops[k] for k in ("P1", "P2", "P3")}

    @property
    def energy(self) -> SparseOp:
        return self.ops["P0"]


def build_poincare(g: GeneratorSet) -> PoincareSet:
    ops = {}
    for name, parts in POINCARE_FORMULAS.items():
        acc = g[parts[0]]
        for extra in parts[1:]:
            acc = acc + g[extra]
        ops[name] = acc
    return PoincareSet(g.basis, ops)


# ---------------------------------------------------------------------------
# closure


@dataclass
class ClosureTable:
    """Exact coefficients of [G_a, G_b] over the 15 generators plus identity."""

    config: tuple[int, int, int]
    depth: int
    names: tuple[str, ...]
    rows: dict[tuple[str, str], list[GaussianRational] | None] = field(default_factory=dict)
    span_rank: int = 0

    @property
    def columns(self) -> tuple[str, ...]:
        return self.names + ("1",)

    @property
    def closed(self) -> bool:
        return all(v is not None for v in self.rows.values())

    def missing(self) -> list[tuple[str, str]]:
        return [k for k, v in self.rows.items() if v is None]

    def nonzero(self, a: str, b: str) -> dict[str, GaussianRational]:
        row = self.rows[(a, b)]
        if row is None:
            raise KeyError(f"[{a},{b}] is not in the span")
        return {c: x for c, x in zip(self.columns, row) if x}

    def structure_part(self) -> dict[tuple[str, str], tuple[GaussianRational, ...] | None]:
        """Rows without the identity column."""
        return {k: (None if v is None else tuple(v[:-1])) for k, v in self.rows.items()}

    def identity_part(self) -> dict[tuple[str, str], GaussianRational]:
        return {k: v[-1] for k, v in self.rows.items() if v is not None}

    def to_dict(self) -> dict:
        R, p, n_max = self.config
        return {
            "schema": 1,
            "config": {"R": R, "p": p, "n_max": n_max},
            "depth": self.depth,
            "columns": list(self.columns),
            "table": [
                {
                    "pair": [a, b],
                    "in_span": row is not None,
                    "coefficients": None
                    if row is None
                    else {c: x.to_json() for c, x in zip(self.columns, row) if x},
                }
                for (a, b), row in sorted(self.rows.items(), key=lambda kv: self._order(kv[0]))
            ],
        }

    def _order(self, pair):
        return (self.names.index(pair[0]), self.names.index(pair[1]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"


def closure_table(
    g: GeneratorSet,
    depth: int = 4,
    pairs: Iterable[tuple[str, str]] | None = None,
    names: tuple[str, ...] = GENERATOR_NAMES,
) -> ClosureTable:
    """Express every commutator of the named generators in span(names + identity)."""
    if depth < 4:
        raise ValueError("closure needs depth >= 4 (a commutator of two generators moves up to 4 shells)")
    basis = g.basis
    cols = basis.interior(depth)
    if not cols:
        raise ValueError(f"interior({depth}) is empty for n_max={basis.config.n_max}")
    span_ops = [g[n] for n in names] + [SparseOp.identity(basis)]
    solver = SpanSolver(span_ops, cols)
    c = basis.config
    table = ClosureTable((c.R, c.p, c.n_max), depth, tuple(names))
    todo = list(pairs) if pairs is not None else list(combinations(names, 2))
    for a, b in todo:
        comm = commutator(g[a], g[b], columns=cols)
        table.rows[(a, b)] = solver.solve(comm)
    table.span_rank = solver.rank
    return table


def closure_report(table: ClosureTable) -> Report:
    report = Report(f"closure R={table.config[0]} p={table.config[1]} n_max={table.config[2]}")
    for (a, b), row in sorted(table.rows.items(), key=lambda kv: table._order(kv[0])):
        if row is None:
            report.add(f"[{a},{b}]", False, "NOT_IN_SPAN")
        else:
            nz = {k: str(v) for k, v in zip(table.columns, row) if v}
            report.add(f"[{a},{b}]", True, " ".join(f"{v}*{k}" for k, v in nz.items()) or "0")
    return report


def jacobi_check(
    g: GeneratorSet,
    depth: int = 6,
    triples: str | Iterable[tuple[str, str, str]] = "all",
) -> Report:
    """[[A,B],C] + [[B,C],A] + [[C,A],B] = 0 on interior(depth).

    ``triples`` is ``"all"`` (every 3-subset, 455 for 15 generators),
    ``"sample"`` (every 7th of those) or an explicit iterable of name triples.
    """
    if depth < 6:
        raise ValueError("Jacobi needs depth >= 6 (triple nesting moves up to 6 shells)")
    basis = g.basis
    cols = basis.interior(depth)
    if not cols:
        raise ValueError(f"interior({depth}) is empty for n_max={basis.config.n_max}")
    if triples == "all":
        todo = list(combinations(GENERATOR_NAMES, 3))
    elif triples == "sample":
        todo = list(combinations(GENERATOR_NAMES, 3))[::7]
    else:
        todo = [tuple(t) for t in triples]
    # commutators on the columns they are needed: interior(depth) widened by
    # the +-2 reach of the outer generator
    reach = basis.interior(depth - 2)
    comm_cache: dict[tuple[str, str], SparseOp] = {}

    def comm(a: str, b: str) -> SparseOp:
        key = (a, b)
        if key not in comm_cache:
            comm_cache[key] = commutator(g[a], g[b], columns=reach)
        return comm_cache[key]

    report = Report(f"jacobi R={basis.config.R} p={basis.config.p} n_max={basis.config.n_max}")
    report.extra["depth"] = depth
    for a, b, c in todo:
        total = (
            commutator(comm(a, b), g[c], columns=cols)
            + commutator(comm(b, c), g[a], columns=cols)
            + commutator(comm(c, a), g[b], columns=cols)
        )
        report.add(f"({a},{b},{c})", total.is_zero())
    return report


def rotation_closure(g: GeneratorSet, depth: int = 4) -> ClosureTable:
    return closure_table(g, depth, names=ROTATIONS)
