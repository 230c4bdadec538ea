"""Restriction of divisor classes to marked elliptic curves.

Conventions: the identity p0 of the curve's group is the point cut out by
the hyperplane/fibre part of any class (for a plane curve of degree e,
O(1)|_C = e*p0), so only exceptional labels over points of the curve
contribute a group element. The degree is always the intersection number.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .groups import INFINITE, AbelianGroup, GroupElement, group_sum, order
from .lattice import DivisorClass, MarkedCurve, intersect

__all__ = [
    "AbelianGroup",
    "GroupElement",
    "INFINITE",
    "RestrictionClass",
    "RestrictionError",
    "order",
    "restrict",
    "triviality_order",
]


class RestrictionError(ValueError):
    pass


@dataclass(frozen=True)
class RestrictionClass:
    """A line bundle on an elliptic curve: its degree and its class in Pic^0."""

    degree: Fraction
    element: GroupElement

    def __add__(self, other: "RestrictionClass") -> "RestrictionClass":
        return RestrictionClass(self.degree + other.degree, self.element + other.element)

    def __mul__(self, k: int) -> "RestrictionClass":
        return RestrictionClass(k * self.degree, k * self.element)

    __rmul__ = __mul__

    @property
    def is_trivial(self) -> bool:
        return self.degree == 0 and self.element.is_identity


def restrict(L: DivisorClass, C: MarkedCurve) -> RestrictionClass:
    """Restrict L to the elliptic curve C.

    degree = L.C, element = sum over points p_j of C of coeff_L(E_j) * (p_j - p0).
    For L = dH - sum m_j E_j this is sum m_j (p0 - p_j).
    """
    if C.restriction is None:
        raise RestrictionError(f"curve {C.name!r} carries no restriction group")
    if L.surface != C.surface:
        raise RestrictionError("class and curve live on different surfaces")
    pts = C.restriction.points
    missing = [lab for lab, _ in C.points if lab not in pts]
    if missing:
        raise RestrictionError(f"no group data for points {missing} on {C.name!r}")
    terms = []
    for lab, elem in pts.items():
        c = L[lab]
        if c.denominator != 1:
            raise RestrictionError(f"coefficient of {lab} is not integral: {c}")
        terms.append(int(c) * elem)
    return RestrictionClass(intersect(L, C.divisor), group_sum(terms, C.restriction.group))


def triviality_order(rc: RestrictionClass) -> int | float:
    """Least m >= 1 with m*rc trivial; infinite for nonzero degree or a free component."""
    if rc.degree != 0:
        return INFINITE
    return order(rc.element)


def divided_order(t: int | float, k: int) -> int | float:
    """Order of k*x when x has order t."""
    if t == INFINITE:
        return INFINITE
    return t // math.gcd(k, t)
