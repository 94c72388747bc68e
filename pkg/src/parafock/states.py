"""Truncated Lorentz vacuum, zeron and neutrino states and their residual checks.

Every state is a finite truncation of an infinite series.  ``exact_through``
is the highest ur-number shell on which the truncated vector agrees with the
full series; since the Poincare generators move at most two shells, a
residual ``G|psi> - c|psi>`` is free of truncation effects on shells
``<= exact_through - 2``.  Conditions are therefore judged on shells
``<= exact_through - boundary_width`` with ``boundary_width >= 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .conformal import POINCARE_NAMES, PoincareSet
from .exactalg import GaussianRational, I, SparseVec, op_apply, proportionality
from .fock import FockBasis, bilinear, para_ops


@dataclass
class TruncatedSeriesState:
    vector: SparseVec
    kind: str
    K: int
    exact_through: int
    K_prime: int | None = None
    epsilon: Fraction | None = None

    @property
    def basis(self) -> FockBasis:
        return self.vector.basis

    @property
    def shell_support(self) -> frozenset[int]:
        return self.vector.shell_support()

    def pairing_value(self) -> Fraction:
        """Sum of |coefficient|^2 in the dual-pairing basis (not a Hilbert norm)."""
        return sum((c.abs2() for _, c in self.vector.items()), Fraction(0))


def _require_r4(basis: FockBasis):
    if basis.config.R != 4:
        raise ValueError("Lorentz-vacuum states need R=4")


def vacuum_coefficient(mu: int, lam: int) -> GaussianRational:
    """(-1)^(mu+lam) i^(mu-lam) / (mu! lam!)."""
    sign = -1 if (mu + lam) % 2 else 1
    return I ** (mu - lam) * Fraction(sign, math.factorial(mu) * math.factorial(lam))


def bare_vacuum(basis: FockBasis) -> TruncatedSeriesState:
    """|Omega> itself; not a truncation, so it is exact on every shell."""
    return TruncatedSeriesState(basis.vacuum, "bare", 0, basis.config.n_max)


def lorentz_vacuum(basis: FockBasis, K: int) -> TruncatedSeriesState:
    """Sum over mu + lam <= K of the vacuum series terms alpha+14^mu alpha+23^lam |Omega>."""
    _require_r4(basis)
    if K < 0:
        raise ValueError("K must be >= 0")
    if 2 * K > basis.config.n_max:
        raise ValueError(f"series cutoff 2K={2 * K} exceeds n_max={basis.config.n_max}")
    up14 = bilinear(basis, "alpha+", 1, 4)
    up23 = bilinear(basis, "alpha+", 2, 3)
    powers23 = [basis.vacuum]
    for _ in range(K):
        powers23.append(op_apply(up23, powers23[-1]))
    total = SparseVec(basis)
    for lam in range(K + 1):
        v = powers23[lam]
        for mu in range(K + 1 - lam):
            if mu:
                v = op_apply(up14, v)
            total = total + v.scale(vacuum_coefficient(mu, lam))
    return TruncatedSeriesState(total, "vacuum", K, 2 * K)


def vacuum_term_coefficients(state: TruncatedSeriesState) -> dict[tuple[int, int], GaussianRational]:
    """Read the (mu, lam) series coefficients back off a p=1 vacuum vector.

    For p=1 each term is the single occupation (mu, lam, lam, mu) scaled by
    (mu! lam!)^2 in the dual-pairing convention.
    """
    basis = state.basis
    if basis.config.p != 1:
        raise ValueError("term read-back needs p=1")
    out = {}
    for lam in range(state.K + 1):
        for mu in range(state.K + 1 - lam):
            idx = basis.index[(mu, lam, lam, mu)]
            norm = (math.factorial(mu) * math.factorial(lam)) ** 2
            out[(mu, lam)] = state.vector[idx] * Fraction(1, norm)
    return out


def zeron(basis: FockBasis, omega: TruncatedSeriesState, epsilon, K_prime: int) -> TruncatedSeriesState:
    """Sum over mu <= K' of (i eps)^mu / (mu!)^2 alpha+14^mu |omega> (p=1 only)."""
    _require_r4(basis)
    if basis.config.p != 1:
        raise ValueError("the zeron series is defined for p=1")
    if omega.kind != "vacuum":
        raise ValueError("zeron must be built on a Lorentz vacuum state")
    if K_prime < 0:
        raise ValueError("K' must be >= 0")
    if 2 * (omega.K + K_prime) > basis.config.n_max:
        raise ValueError(
            f"series cutoff 2(K+K')={2 * (omega.K + K_prime)} exceeds n_max={basis.config.n_max}"
        )
    eps = Fraction(epsilon)
    up14 = bilinear(basis, "alpha+", 1, 4)
    step = GaussianRational(0, eps)
    total = SparseVec(basis)
    v = omega.vector
    for mu in range(K_prime + 1):
        if mu:
            v = op_apply(up14, v)
        total = total + v.scale(step**mu * Fraction(1, math.factorial(mu) ** 2))
    return TruncatedSeriesState(total, "zeron", omega.K, 2 * min(omega.K, K_prime), K_prime, eps)


def neutrino(basis: FockBasis, zeron_state: TruncatedSeriesState) -> TruncatedSeriesState:
    """a_1 applied to the zeron (the annihilator, as the formula is written)."""
    if zeron_state.kind != "zeron":
        raise ValueError("neutrino is built from a zeron state")
    v = op_apply(para_ops(basis).a[1], zeron_state.vector)
    return TruncatedSeriesState(
        v, "neutrino", zeron_state.K, zeron_state.exact_through - 1, zeron_state.K_prime, zeron_state.epsilon
    )


# ---------------------------------------------------------------------------
# residual checks


@dataclass
class ConditionResult:
    condition: str
    expected: GaussianRational | None  # None: any constant (ray invariance)
    recorded_constant: GaussianRational | None
    residual: SparseVec
    interior_shells: list[int]
    interior_clean: bool
    mode: str = ""  # "annihilated" | "proportional" | "eigenvalue" | "violated"

    def shell_counts(self) -> list[dict[str, int]]:
        return [{"n": n, "residual_component_count": len(v)} for n, v in self.residual.shell_parts().items()]

    def to_dict(self) -> dict[str, Any]:
        return {
            "condition": self.condition,
            "shells": self.shell_counts(),
            "interior_shells": self.interior_shells,
            "interior_clean": self.interior_clean,
            "mode": self.mode,
            "expected_constant": None if self.expected is None else self.expected.to_json(),
            "recorded_constant": None if self.recorded_constant is None else self.recorded_constant.to_json(),
        }


@dataclass
class ResidualReport:
    state_kind: str
    exact_through: int
    boundary_width: int
    results: list[ConditionResult] = field(default_factory=list)

    @property
    def interior_clean(self) -> bool:
        return bool(self.results) and all(r.interior_clean for r in self.results)

    def __getitem__(self, condition: str) -> ConditionResult:
        for r in self.results:
            if r.condition == condition:
                return r
        raise KeyError(condition)

    def to_dict(self) -> dict[str, Any]:
        return {
            "state": self.state_kind,
            "exact_through": self.exact_through,
            "boundary_width": self.boundary_width,
            "interior_clean": self.interior_clean,
            "conditions": [r.to_dict() for r in self.results],
        }


def _conditions_for(state: TruncatedSeriesState, ops: PoincareSet):
    """(name, operator, expected constant or None for 'any constant')."""
    eps = state.epsilon or Fraction(0)
    # at eps = 0 the zeron series collapses onto the vacuum itself
    if state.kind in ("vacuum", "bare") or (state.kind == "zeron" and not eps):
        return [(name, ops[name], None) for name in POINCARE_NAMES]
    return [
        ("P1", ops["P1"], GaussianRational(0)),
        ("P2", ops["P2"], GaussianRational(0)),
        ("P0-P3", ops["P0"] - ops["P3"], GaussianRational(0)),
        ("P0+P3", ops["P0"] + ops["P3"], GaussianRational(0, eps)),
    ]


def interior_shells(state: TruncatedSeriesState, boundary_width: int) -> list[int]:
    top = state.exact_through - boundary_width
    return list(range(0, top + 1))


def check_invariance(state: TruncatedSeriesState, ops: PoincareSet, boundary_width: int = 4) -> ResidualReport:
    """Shell-resolved residuals of the invariance / eigenvalue conditions.

    Vacuum states are tested for ray invariance (``G|w> = c|w>`` with ``c``
    discovered, ``c = 0`` meaning annihilation).  Zeron and neutrino states are
    tested against ``P1 = P2 = P0-P3 = 0`` and ``P0+P3 = i*eps``.
    """
    if boundary_width < 2:
        raise ValueError("boundary_width must be >= 2: generators reach two shells")
    if not (state.basis is ops.basis or state.basis == ops.basis):
        raise ValueError("state and operators live on different bases")
    shells = interior_shells(state, boundary_width)
    if not shells:
        raise ValueError(
            f"no interior shells: exact_through={state.exact_through}, boundary_width={boundary_width}"
        )
    keep = [i for i in range(state.basis.size) if state.basis.shells[i] <= shells[-1]]
    psi = state.vector
    psi_int = psi.restrict(keep)
    report = ResidualReport(state.kind, state.exact_through, boundary_width)
    for name, op, expected in _conditions_for(state, ops):
        w = op_apply(op, psi)
        w_int = w.restrict(keep)
        # constant actually realised on the interior, if any
        if psi_int.is_zero():
            found = GaussianRational(0) if w_int.is_zero() else None
        else:
            found = proportionality(w_int, psi_int)
        if expected is None:
            c = found if found is not None else GaussianRational(0)
        else:
            c = expected
        residual = w - psi.scale(c)
        clean = residual.restrict(keep).is_zero()
        if not clean:
            mode = "violated"
        elif expected is None:
            mode = "annihilated" if not c else "proportional"
        else:
            mode = "eigenvalue" if c else "annihilated"
        report.results.append(ConditionResult(name, expected, found, residual, shells, clean, mode))
    return report
