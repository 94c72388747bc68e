"""Truncated parabose Fock space built from the Green decomposition.

Modes are labelled ``(r, alpha)`` with ur sort ``r`` in ``1..R`` and Green
component ``alpha`` in ``1..p``.  Basis states are occupation vectors with total
ur number at most ``n_max``.

Green bosons use the dual-pairing normalisation

    b+ |m> = (m + 1) |m + 1>,     b |m> = |m - 1>,

which keeps every matrix element an integer and still gives ``[b, b+] = 1``.
Components with different ``alpha`` anticommute; this is realised with the
sign ``(-1)**N_beta`` summed over all components ``beta < alpha``.  Vector
"norms" in this convention are pairing values, not Euclidean norms.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .exactalg import (
    GaussianRational,
    SparseOp,
    SparseVec,
    commutator,
    exact_rank,
    op_apply,
    proportionality,
)
from .report import Report

DEFAULT_MAX_BASIS = 200_000
PHYSICAL_SORT_COUNTS = (2, 4)


class BasisTooLarge(ValueError):
    def __init__(self, size: int, limit: int):
        super().__init__(f"basis size {size} exceeds the limit {limit} (set PARAFOCK_MAX_BASIS to raise it)")
        self.size = size
        self.limit = limit


def max_basis_size() -> int:
    env = os.environ.get("PARAFOCK_MAX_BASIS")
    return int(env) if env else DEFAULT_MAX_BASIS


@dataclass(frozen=True)
class ModeConfig:
    R: int
    p: int
    n_max: int

    def __post_init__(self):
        for name in ("R", "p", "n_max"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise TypeError(f"{name} must be an integer")
        if self.R < 1:
            raise ValueError("R must be >= 1")
        if self.p < 1:
            raise ValueError("parabose order p must be >= 1")
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")

    @property
    def modes(self) -> int:
        return self.R * self.p

    @property
    def physical_sorts(self) -> bool:
        """False when R is neither 2 (urs) nor 4 (urs and anti-urs)."""
        return self.R in PHYSICAL_SORT_COUNTS

    def basis_size(self) -> int:
        m = self.modes
        return sum(math.comb(n + m - 1, m - 1) for n in range(self.n_max + 1))


def _compositions(n: int, parts: int):
    """All tuples of ``parts`` nonnegative ints summing to n, lexicographically."""
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


class FockBasis:
    """Ordered occupation basis: total ur number ascending, then lexicographic."""

    def __init__(self, config: ModeConfig, limit: int | None = None):
        limit = max_basis_size() if limit is None else limit
        size = config.basis_size()
        if size > limit:
            raise BasisTooLarge(size, limit)
        self.config = config
        self.states: list[tuple[int, ...]] = [
            occ for n in range(config.n_max + 1) for occ in _compositions(n, config.modes)
        ]
        self.index = {occ: i for i, occ in enumerate(self.states)}
        self.shells = np.fromiter((sum(s) for s in self.states), dtype=np.int64, count=len(self.states))
        self.size = len(self.states)
        self._cache: dict = {}

    def __eq__(self, other):
        if not isinstance(other, FockBasis):
            return NotImplemented
        return self.config == other.config

    def __hash__(self):
        return hash(self.config)

    def __repr__(self):
        c = self.config
        return f"FockBasis(R={c.R}, p={c.p}, n_max={c.n_max}, size={self.size})"

    def mode(self, r: int, alpha: int) -> int:
        c = self.config
        if not (1 <= r <= c.R):
            raise ValueError(f"ur sort {r} outside 1..{c.R}")
        if not (1 <= alpha <= c.p):
            raise ValueError(f"Green component {alpha} outside 1..{c.p}")
        return (r - 1) * c.p + (alpha - 1)

    def occupation(self, index: int) -> dict[tuple[int, int], int]:
        c = self.config
        occ = self.states[index]
        return {(r, a): occ[self.mode(r, a)] for r in range(1, c.R + 1) for a in range(1, c.p + 1)}

    def sort_counts(self, index: int) -> tuple[int, ...]:
        """Number of urs of each sort r (summed over Green components)."""
        p = self.config.p
        occ = self.states[index]
        return tuple(sum(occ[r * p:(r + 1) * p]) for r in range(self.config.R))

    def interior(self, depth: int) -> list[int]:
        """Indices of states at least ``depth`` shells below the cutoff."""
        top = self.config.n_max - depth
        return [i for i in range(self.size) if self.shells[i] <= top]

    def shell(self, n: int) -> list[int]:
        return [i for i in range(self.size) if self.shells[i] == n]

    @property
    def vacuum(self) -> SparseVec:
        return SparseVec.unit(self, 0)


def build_basis(config: ModeConfig, limit: int | None = None) -> FockBasis:
    return FockBasis(config, limit)


# ---------------------------------------------------------------------------
# operators


def green_op(basis: FockBasis, r: int, alpha: int, kind: str) -> SparseOp:
    """Green component ``b_r^(alpha)`` (kind='annihilate') or its creator."""
    if kind not in ("create", "annihilate"):
        raise ValueError(f"kind must be 'create' or 'annihilate', not {kind!r}")
    key = ("green", r, alpha, kind)
    if key in basis._cache:
        return basis._cache[key]
    m = basis.mode(r, alpha)
    p = basis.config.p
    n_max = basis.config.n_max
    rows, cols, vals = [], [], []
    for j, occ in enumerate(basis.states):
        # Klein sign from all components beta < alpha
        lower = sum(sum(occ[s * p:s * p + alpha - 1]) for s in range(basis.config.R))
        sign = -1 if lower % 2 else 1
        if kind == "create":
            if basis.shells[j] >= n_max:
                continue
            new = occ[:m] + (occ[m] + 1,) + occ[m + 1:]
            rows.append(basis.index[new])
            vals.append(sign * (occ[m] + 1))
        else:
            if occ[m] == 0:
                continue
            new = occ[:m] + (occ[m] - 1,) + occ[m + 1:]
            rows.append(basis.index[new])
            vals.append(sign)
        cols.append(j)
    mat = sp.csc_matrix(
        (np.array(vals, dtype=np.int64), (np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64))),
        shape=(basis.size, basis.size),
    )
    op = SparseOp(basis, mat, None, 1, (1,) if kind == "create" else (-1,))
    basis._cache[key] = op
    return op


@dataclass
class ParaOps:
    """Parabose ladder operators ``a_r``, ``a_r+`` keyed by sort (1-based)."""

    a: dict[int, SparseOp]
    ad: dict[int, SparseOp]


def para_ops(basis: FockBasis) -> ParaOps:
    if "para" in basis._cache:
        return basis._cache["para"]
    c = basis.config
    a, ad = {}, {}
    for r in range(1, c.R + 1):
        down = green_op(basis, r, 1, "annihilate")
        up = green_op(basis, r, 1, "create")
        for alpha in range(2, c.p + 1):
            down = down + green_op(basis, r, alpha, "annihilate")
            up = up + green_op(basis, r, alpha, "create")
        a[r], ad[r] = down, up
    ops = ParaOps(a, ad)
    basis._cache["para"] = ops
    return ops


_HALF = GaussianRational(Fraction(1, 2))


def bilinear(basis: FockBasis, kind: str, r: int, s: int) -> SparseOp:
    """``alpha_rs``, ``alpha+_rs`` or ``tau_rs``: half anticommutators of ladder operators.

    ``kind`` is one of ``"alpha"``, ``"alpha+"``, ``"tau"``.
    """
    key = ("bilinear", kind, r, s)
    if key in basis._cache:
        return basis._cache[key]
    ops = para_ops(basis)
    for x in (r, s):
        if not 1 <= x <= basis.config.R:
            raise ValueError(f"ur sort {x} outside 1..{basis.config.R}")
    if kind == "alpha":
        left, right = ops.a[r], ops.a[s]
    elif kind == "alpha+":
        left, right = ops.ad[r], ops.ad[s]
    elif kind == "tau":
        left, right = ops.ad[r], ops.a[s]
    else:
        raise ValueError(f"unknown bilinear kind {kind!r}")
    op = commutator(left, right, anti=True).scale(_HALF)
    basis._cache[key] = op
    return op


@dataclass
class NumberOps:
    per_sort: dict[int, SparseOp]
    total: SparseOp


def number_ops(basis: FockBasis) -> NumberOps:
    """``n_r = tau_rr - p/2`` and ``n = sum_r n_r``."""
    if "number" in basis._cache:
        return basis._cache["number"]
    p = basis.config.p
    shift = SparseOp.identity(basis).scale(Fraction(p, 2))
    per = {r: bilinear(basis, "tau", r, r) - shift for r in range(1, basis.config.R + 1)}
    total = per[1]
    for r in range(2, basis.config.R + 1):
        total = total + per[r]
    out = NumberOps(per, total)
    basis._cache["number"] = out
    return out


def monomial_state(basis: FockBasis, word: Sequence[int]) -> SparseVec:
    """``a+_{r1} a+_{r2} ... a+_{rn} |Omega>`` (rightmost creator acts first)."""
    if len(word) > basis.config.n_max:
        raise ValueError(f"word of length {len(word)} exceeds n_max={basis.config.n_max}")
    ops = para_ops(basis)
    v = basis.vacuum
    for r in reversed(word):
        if r not in ops.ad:
            raise ValueError(f"ur sort {r} outside 1..{basis.config.R}")
        v = op_apply(ops.ad[r], v)
    return v


def physical_span(basis: FockBasis, content: Sequence[int]) -> int:
    """Rank of the monomial states over all orderings of ``content``."""
    if len(content) > basis.config.n_max:
        raise ValueError("content longer than n_max")
    words = sorted(set(permutations(content)))
    return exact_rank(monomial_state(basis, w) for w in words)


def word_combination(basis: FockBasis, combo: dict[tuple[int, ...], int | Fraction]) -> SparseVec:
    """Image of a formal word combination under :func:`monomial_state`."""
    out = SparseVec(basis)
    for w, c in sorted(combo.items()):
        out = out + monomial_state(basis, w).scale(c)
    return out


def psi121_construction(basis: FockBasis) -> dict:
    """Compare the prefactored creator expression with ``2|121> - |112> - |211>``.

    The expression is ``(1/8)(a1+ a2+ a1+ - 1/2 (a1+ a1+ a2+ + a2+ a1+ a1+))|Omega>``.
    Returns both vectors and the exact scalar ``c`` with ``expr = c * combo``
    (None when not proportional or when the combination vanishes).
    """
    if basis.config.R < 2:
        raise ValueError("needs at least two ur sorts")
    half = Fraction(1, 2)
    expr = (
        monomial_state(basis, (1, 2, 1))
        - (monomial_state(basis, (1, 1, 2)) + monomial_state(basis, (2, 1, 1))).scale(half)
    ).scale(Fraction(1, 8))
    combo = word_combination(basis, {(1, 2, 1): 2, (1, 1, 2): -1, (2, 1, 1): -1})
    scalar = None if combo.is_zero() else proportionality(expr, combo)
    return {"expression": expr, "combination": combo, "scalar": scalar}


# ---------------------------------------------------------------------------
# relation checks


def _worst(residual: SparseOp):
    best = None
    for (r, c), v in residual.entries().items():
        if best is None or v.abs2() > best[2].abs2():
            best = (r, c, v)
    return best


def _record(report: Report, rel_id: str, lhs: SparseOp, rhs: SparseOp, cols: list[int]):
    residual = (lhs - rhs).restrict_columns(cols)
    if residual.is_zero():
        report.add(rel_id, True)
    else:
        r, c, v = _worst(residual)
        report.add(rel_id, False, f"worst element ({r},{c}) = {v}", row=r, col=c, value=str(v))


def verify_green_relations(basis: FockBasis, depth: int = 4) -> Report:
    """Check the trilinear relations and the Green-component table exactly.

    All identities are compared on the columns ``interior(depth)``.
    """
    c = basis.config
    cols = basis.interior(depth)
    report = Report(f"green R={c.R} p={c.p} n_max={c.n_max}")
    report.extra["interior_depth"] = depth
    report.extra["interior_columns"] = len(cols)
    if not cols:
        report.add("interior", False, f"interior({depth}) is empty for n_max={c.n_max}")
        return report
    ops = para_ops(basis)
    zero = SparseOp.zero(basis)
    ident = SparseOp.identity(basis)
    sorts = range(1, c.R + 1)

    for r in sorts:
        for s in sorts:
            for t in sorts:
                tau = bilinear(basis, "tau", s, t)
                rhs = ops.a[t] if r == s else zero
                _record(report, f"[a{r},tau{s}{t}]", commutator(ops.a[r], tau, columns=cols), rhs, cols)
                _record(
                    report,
                    f"[a{r},alpha{s}{t}]",
                    commutator(ops.a[r], bilinear(basis, "alpha", s, t), columns=cols),
                    zero,
                    cols,
                )
                _record(
                    report,
                    f"[a{r}+,alpha+{s}{t}]",
                    commutator(ops.ad[r], bilinear(basis, "alpha+", s, t), columns=cols),
                    zero,
                    cols,
                )

    comps = range(1, c.p + 1)
    for r in sorts:
        for s in sorts:
            for al in comps:
                for be in comps:
                    b_r = green_op(basis, r, al, "annihilate")
                    bd_r = green_op(basis, r, al, "create")
                    b_s = green_op(basis, s, be, "annihilate")
                    bd_s = green_op(basis, s, be, "create")
                    tag = f"r{r}s{s}a{al}b{be}"
                    if al == be:
                        rhs = ident if r == s else zero
                        _record(report, f"[b,b+]:{tag}", commutator(b_r, bd_s, columns=cols), rhs, cols)
                        _record(report, f"[b+,b+]:{tag}", commutator(bd_r, bd_s, columns=cols), zero, cols)
                        _record(report, f"[b,b]:{tag}", commutator(b_r, b_s, columns=cols), zero, cols)
                    else:
                        _record(report, f"{{b,b+}}:{tag}", commutator(b_r, bd_s, anti=True, columns=cols), zero, cols)
                        _record(report, f"{{b,b}}:{tag}", commutator(b_r, b_s, anti=True, columns=cols), zero, cols)
                        _record(report, f"{{b+,b+}}:{tag}", commutator(bd_r, bd_s, anti=True, columns=cols), zero, cols)

    report.extend(verify_vacuum(basis))
    return report


def verify_vacuum(basis: FockBasis) -> Report:
    """``b_r^(alpha)|Omega> = 0`` and ``a_r a_s+ |Omega> = p delta_rs |Omega>``."""
    c = basis.config
    report = Report("vacuum")
    omega = basis.vacuum
    ops = para_ops(basis)
    for r in range(1, c.R + 1):
        for al in range(1, c.p + 1):
            v = op_apply(green_op(basis, r, al, "annihilate"), omega)
            report.add(f"b{r}^{al}|Omega>=0", v.is_zero())
    for r in range(1, c.R + 1):
        for s in range(1, c.R + 1):
            v = op_apply(ops.a[r], op_apply(ops.ad[s], omega))
            want = omega.scale(c.p) if r == s else SparseVec(basis)
            report.add(f"a{r}a{s}+|Omega>=p*delta|Omega>", v == want)
    return report
