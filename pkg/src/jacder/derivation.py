"""Polynomial derivations of Q[x, y].

A derivation is a vector field P*d/dx + Q*d/dy with polynomial components.
The Jacobian derivation of f sends h to det J(f, h), which works out to
the field -f_y*d/dx + f_x*d/dy; such fields are exactly the divergence-free
ones, and their potentials can be reconstructed by term-wise integration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from jacder.errors import NotDivergenceFree
from jacder.poly import BivarPoly, Monomial, Scalar


@dataclass(frozen=True)
class Derivation:
    """P*d/dx + Q*d/dy acting on Q[x, y]."""

    P: BivarPoly
    Q: BivarPoly

    @classmethod
    def zero(cls) -> "Derivation":
        return cls(BivarPoly.zero(), BivarPoly.zero())

    @property
    def is_zero(self) -> bool:
        return self.P.is_zero and self.Q.is_zero

    def apply(self, h: BivarPoly) -> BivarPoly:
        return self.P * h.partial_x() + self.Q * h.partial_y()

    __call__ = apply

    def bracket(self, other: "Derivation") -> "Derivation":
        """Lie bracket [self, other], again a derivation."""
        return Derivation(
            self.apply(other.P) - other.apply(self.P),
            self.apply(other.Q) - other.apply(self.Q),
        )

    def divergence(self) -> BivarPoly:
        return self.P.partial_x() + self.Q.partial_y()

    def __add__(self, other: "Derivation") -> "Derivation":
        if not isinstance(other, Derivation):
            return NotImplemented
        return Derivation(self.P + other.P, self.Q + other.Q)

    def __sub__(self, other: "Derivation") -> "Derivation":
        if not isinstance(other, Derivation):
            return NotImplemented
        return Derivation(self.P - other.P, self.Q - other.Q)

    def __neg__(self) -> "Derivation":
        return Derivation(-self.P, -self.Q)

    def __mul__(self, other: Union[BivarPoly, Scalar]) -> "Derivation":
        if isinstance(other, (BivarPoly, int, Fraction)):
            return Derivation(self.P * other, self.Q * other)
        return NotImplemented

    __rmul__ = __mul__


DX = Derivation(BivarPoly.one(), BivarPoly.zero())
DY = Derivation(BivarPoly.zero(), BivarPoly.one())


def jacobian_derivation(f: BivarPoly) -> Derivation:
    """The derivation h -> det J(f, h), componentwise -f_y*d/dx + f_x*d/dy."""
    return Derivation(-f.partial_y(), f.partial_x())


def scale_and_combine(
    a: Union[BivarPoly, Scalar],
    d1: Derivation,
    b: Union[BivarPoly, Scalar],
    d2: Derivation,
) -> Derivation:
    """a*d1 + b*d2 with polynomial or rational weights."""
    return a * d1 + b * d2


def potential(t: Derivation) -> BivarPoly:
    """The unique g with jacobian_derivation(g) = t and g(0, 0) = 0.

    Raises NotDivergenceFree when no such g exists.
    """
    if not t.divergence().is_zero:
        raise NotDivergenceFree("derivation has nonzero divergence")
    # g_x = Q integrated in x, plus the pure-y part fixed by -P on the axis x = 0
    terms = {}
    for m, c in t.Q.sorted_terms():
        terms[Monomial(m.ex + 1, m.ey)] = c / (m.ex + 1)
    g = BivarPoly(terms)
    axis = BivarPoly(
        ((0, m.ey + 1), -c / (m.ey + 1)) for m, c in t.P.sorted_terms() if m.ex == 0
    )
    return g + axis
