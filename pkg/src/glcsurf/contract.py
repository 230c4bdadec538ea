"""Numerical pullback across the contraction of a negative definite curve configuration.

For a divisor D upstairs (the strict transform of a divisor downstairs) the
pullback is D + sum b_j E_j with (D + sum b_j E_j).E_k = 0 for every
contracted E_k; negative definiteness makes the b_j unique. Volumes,
discrepancies and Cartier index estimates are all read off these b_j.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .curvecfg import INFINITE, restrict, triviality_order
from .exact import SingularMatrixError, as_fraction, lcd, solve
from .lattice import (
    DivisorClass,
    LatticeError,
    MarkedCurve,
    SurfaceLattice,
    gram_of,
    intersect,
    is_negative_definite,
)
from .positivity import PositivityReport, Verdict, same_ray


class ContractionError(ValueError):
    pass


@dataclass(frozen=True)
class Contraction:
    upstairs: SurfaceLattice
    contracted: tuple[MarkedCurve, ...]
    cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.contracted]

    @property
    def classes(self) -> list[DivisorClass]:
        return [c.divisor for c in self.contracted]

    def curve(self, name: str) -> MarkedCurve:
        for c in self.contracted:
            if c.name == name:
                return c
        raise KeyError(name)


def make_contraction(S: SurfaceLattice, curves: Sequence[MarkedCurve | str]) -> Contraction:
    curves = tuple(S.curve(c) if isinstance(c, str) else c for c in curves)
    if not curves:
        raise ContractionError("nothing to contract")
    if any(c.surface != S for c in curves):
        raise ContractionError("curves live on another surface")
    if not is_negative_definite([c.divisor for c in curves]):
        raise ContractionError(f"intersection matrix of {[c.name for c in curves]} is not negative definite")
    return Contraction(S, curves)


def pullback_coefficients(c: Contraction, D: DivisorClass, use_cache: bool = True) -> tuple[Fraction, ...]:
    """The b_j of the numerical pullback of D, one per contracted curve."""
    if D.surface != c.upstairs:
        raise LatticeError("class lives on another surface")
    key = D.coeffs
    if use_cache and key in c.cache:
        return c.cache[key]
    E = c.classes
    rhs = [-intersect(D, e) for e in E]
    try:
        b = tuple(solve(gram_of(E), rhs))
    except SingularMatrixError as exc:
        raise ContractionError("pullback system is singular") from exc
    if use_cache:
        c.cache[key] = b
    return b


def numerical_pullback(c: Contraction, D: DivisorClass, use_cache: bool = True) -> DivisorClass:
    out = D
    for b, e in zip(pullback_coefficients(c, D, use_cache), c.classes):
        if b:
            out = out + b * e
    return out


def pushforward_intersection(c: Contraction, D1: DivisorClass, D2: DivisorClass) -> Fraction:
    """Intersection number downstairs of the images of D1 and D2."""
    return intersect(numerical_pullback(c, D1), numerical_pullback(c, D2))


@dataclass(frozen=True)
class DiscrepancyTable:
    entries: tuple[tuple[str, Fraction], ...]

    def __getitem__(self, name: str) -> Fraction:
        return dict(self.entries)[name]

    @property
    def klt(self) -> bool:
        return all(a > 0 for _, a in self.entries)

    @property
    def lc(self) -> bool:
        return all(a >= 0 for _, a in self.entries)

    @property
    def classification(self) -> str:
        return "klt" if self.klt else "lc" if self.lc else "not lc"


Boundary = Sequence[tuple[MarkedCurve, object]]


def _boundary_class(c: Contraction, boundary: Boundary) -> DivisorClass:
    out = c.upstairs.zero()
    contracted = set(c.names)
    for curve, coef in boundary:
        coef = as_fraction(coef)
        if not 0 <= coef <= 1:
            raise ContractionError(f"boundary coefficient {coef} of {curve.name} is outside [0, 1]")
        if curve.name in contracted:
            raise ContractionError(f"boundary curve {curve.name} is contracted")
        out = out + coef * curve.divisor
    return out


def log_canonical_pullback(
    c: Contraction, boundary: Boundary, M_upstairs: DivisorClass | None, canonical: DivisorClass | None = None
) -> DivisorClass:
    """Pullback of K + B + M written upstairs.

    ``canonical`` overrides the lattice canonical class, e.g. on a cover
    lattice where the ramification divisor has been added by hand.
    """
    K = c.upstairs.canonical if canonical is None else canonical
    D = K + _boundary_class(c, boundary)
    if M_upstairs is not None:
        D = D + M_upstairs
    return numerical_pullback(c, D)


def log_discrepancies(
    c: Contraction, boundary: Boundary = (), M_upstairs: DivisorClass | None = None, canonical: DivisorClass | None = None
) -> DiscrepancyTable:
    """a(E_j) = 1 - mult_j, where pullback(K+B+M) = K_Y + B' + M' + sum mult_j E_j."""
    K = c.upstairs.canonical if canonical is None else canonical
    D = K + _boundary_class(c, boundary)
    if M_upstairs is not None:
        D = D + M_upstairs
    b = pullback_coefficients(c, D)
    return DiscrepancyTable(tuple((name, 1 - m) for name, m in zip(c.names, b)))


@dataclass(frozen=True)
class GlcPair:
    contraction: Contraction
    boundary: tuple[tuple[MarkedCurve, Fraction], ...]
    moduli: DivisorClass
    nef_report: PositivityReport
    ample_report: PositivityReport
    log_canonical: DivisorClass  # pullback of K + B + M
    discrepancies: DiscrepancyTable
    volume: Fraction

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(sorted({Fraction(0)} | {coef for _, coef in self.boundary}))


def glc_assemble(
    c: Contraction,
    boundary: Boundary,
    M_upstairs: DivisorClass,
    nef_report: PositivityReport,
    ample_report: PositivityReport,
    canonical: DivisorClass | None = None,
) -> GlcPair:
    """Check the generalised lc model conditions and compute its volume."""
    table = log_discrepancies(c, boundary, M_upstairs, canonical)
    if not table.lc:
        raise ContractionError(f"not generalised lc: {dict(table.entries)}")
    if nef_report is None or not nef_report.verdict.at_least(Verdict.NEF) or not same_ray(nef_report.subject, M_upstairs):
        raise ContractionError("moduli part lacks nef evidence")
    pulled = log_canonical_pullback(c, boundary, M_upstairs, canonical)
    if ample_report is None or not ample_report.verdict.at_least(Verdict.AMPLE) or not same_ray(ample_report.subject, pulled):
        raise ContractionError("K + B + M lacks an ampleness certificate")
    boundary = tuple((curve, as_fraction(x)) for curve, x in boundary)
    return GlcPair(c, boundary, M_upstairs, nef_report, ample_report, pulled, table, intersect(pulled, pulled))


def multiple_of(D: DivisorClass, E: DivisorClass) -> Fraction:
    """The m with D = m*E, e.g. the coefficient in K_X = f^*K_Z + m*E_X."""
    if D.is_zero:
        return Fraction(0)
    if E.is_zero:
        raise ContractionError("cannot divide by the zero class")
    label = next(k for k, v in E.coefficients.items() if v)
    m = D[label] / E[label]
    if D != m * E:
        raise ContractionError("class is not a multiple of the given class")
    return m


def semiample_multiple(c: Contraction, L: DivisorClass, nef_report: PositivityReport | None = None) -> int | float:
    """Least m such that m*L is trivial along every contracted elliptic curve.

    Rational contracted curves impose nothing once L is orthogonal to them.
    """
    if nef_report is not None and not (nef_report.verdict.at_least(Verdict.NEF) and same_ray(nef_report.subject, L)):
        raise ContractionError("nef report does not certify L")
    for e in c.contracted:
        if intersect(L, e.divisor) != 0:
            raise ContractionError(f"L.{e.name} != 0")
    out = 1
    for e in c.contracted:
        if e.genus == 1:
            t = triviality_order(restrict(L, e))
            if t == INFINITE:
                return INFINITE
            out = math.lcm(out, t)
    return out


def cartier_index_estimate(c: Contraction, D: DivisorClass) -> int | float:
    """Least l with l*b_j integral and l*pullback(D) trivial on contracted elliptic curves."""
    b = pullback_coefficients(c, D)
    l0 = lcd(b)
    P = l0 * numerical_pullback(c, D)
    if not P.is_integral:
        l0 *= P.denominator
        P = P.denominator * P
    out = l0
    for e in c.contracted:
        if e.genus == 1:
            t = triviality_order(restrict(P, e))
            if t == INFINITE:
                return INFINITE
            out = math.lcm(out, l0 * t)
    return out
