"""Single-ur states and the symmetry group Q = SU(2) x U(1) together with K.

All group elements are exact over Q(i).  SU(2) elements come from Gaussian
rationals ``a, b`` with ``|a|^2 + |b|^2 = 1`` (e.g. Pythagorean pairs).

Pauli convention: sigma_2 = ((0, -i), (i, 0)), so ``i*sigma_2 = ((0, 1), (-1, 0))``
and ``K(u1, u2) = (conj(u2), -conj(u1))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .exactalg import GaussianRational, ONE, ZERO


class InvalidGroupElement(ValueError):
    pass


@dataclass(frozen=True)
class UrState:
    u1: GaussianRational
    u2: GaussianRational

    def __post_init__(self):
        object.__setattr__(self, "u1", GaussianRational.coerce(self.u1))
        object.__setattr__(self, "u2", GaussianRational.coerce(self.u2))

    def scale(self, c) -> "UrState":
        c = GaussianRational.coerce(c)
        return UrState(self.u1 * c, self.u2 * c)

    def __neg__(self):
        return UrState(-self.u1, -self.u2)


def ur_norm(u: UrState) -> Fraction:
    """<u|u> = u1* u1 + u2* u2, exactly."""
    return u.u1.abs2() + u.u2.abs2()


Matrix2 = tuple[tuple[GaussianRational, GaussianRational], tuple[GaussianRational, GaussianRational]]


@dataclass(frozen=True)
class UrGroupElement:
    kind: Literal["unitary", "phase", "antilinearK"]
    matrix: Matrix2 | None = None
    phase: GaussianRational | None = None

    def validate(self) -> None:
        if self.kind == "unitary":
            if self.matrix is None:
                raise InvalidGroupElement("unitary element needs a matrix")
            (a, b), (c, d) = self.matrix
            if a * d - b * c != ONE:
                raise InvalidGroupElement("determinant is not 1")
            # columns orthonormal
            if a.abs2() + c.abs2() != 1 or b.abs2() + d.abs2() != 1:
                raise InvalidGroupElement("columns are not unit vectors")
            if a.conj() * b + c.conj() * d != ZERO:
                raise InvalidGroupElement("columns are not orthogonal")
        elif self.kind == "phase":
            if self.phase is None or self.phase.abs2() != 1:
                raise InvalidGroupElement("phase must have modulus 1")
        elif self.kind != "antilinearK":
            raise InvalidGroupElement(f"unknown kind {self.kind!r}")


def su2(a, b) -> UrGroupElement:
    """SU(2) element ((a, -conj b), (b, conj a)); requires |a|^2 + |b|^2 = 1."""
    a, b = GaussianRational.coerce(a), GaussianRational.coerce(b)
    g = UrGroupElement("unitary", ((a, -b.conj()), (b, a.conj())))
    g.validate()
    return g


def phase(z) -> UrGroupElement:
    g = UrGroupElement("phase", phase=GaussianRational.coerce(z))
    g.validate()
    return g


IDENTITY = UrGroupElement("unitary", ((ONE, ZERO), (ZERO, ONE)))
K = UrGroupElement("antilinearK")


def apply_group(g: UrGroupElement, u: UrState) -> UrState:
    g.validate()
    if g.kind == "unitary":
        (a, b), (c, d) = g.matrix
        return UrState(a * u.u1 + b * u.u2, c * u.u1 + d * u.u2)
    if g.kind == "phase":
        return u.scale(g.phase)
    # i sigma_2 applied to the conjugated components
    return UrState(u.u2.conj(), -u.u1.conj())
