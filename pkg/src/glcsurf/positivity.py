"""Sufficient criteria for (very) ampleness and nefness on blown-up surfaces.

Every criterion here is one-sided: when its hypotheses fail the verdict is
``inconclusive``, never "not ample". Reports carry the exact numbers the
decision was based on so they can be recomputed.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .exact import as_fraction
from .lattice import (
    DivisorClass,
    Kind,
    LatticeError,
    MarkedCurve,
    SurfaceLattice,
    intersect,
)


class CertificateError(ValueError):
    pass


class Verdict(str, Enum):
    VIOLATED = "violated"
    INCONCLUSIVE = "inconclusive"
    NEF = "nef"
    AMPLE = "ample"
    VERY_AMPLE = "very_ample"

    @property
    def rank(self) -> int:
        return {"violated": -1, "inconclusive": 0, "nef": 1, "ample": 2, "very_ample": 3}[self.value]

    def at_least(self, other: "Verdict") -> bool:
        """Implication order: very_ample => ample => nef."""
        return self.rank >= other.rank and other.rank > 0 or self == other


@dataclass(frozen=True)
class Witness:
    label: str
    value: Fraction
    against: DivisorClass | None = None  # set when value = subject . against


@dataclass(frozen=True)
class PositivityReport:
    subject: DivisorClass
    verdict: Verdict
    criterion: str
    witnesses: tuple[Witness, ...] = ()
    notes: tuple[str, ...] = ()

    def witness(self, label: str) -> Fraction:
        for w in self.witnesses:
            if w.label == label:
                return w.value
        raise KeyError(label)

    @property
    def passed(self) -> bool:
        return self.verdict.rank > 0


def same_ray(a: DivisorClass, b: DivisorClass) -> bool:
    """True iff a = t*b for some rational t > 0."""
    if a.surface != b.surface:
        return False
    t = None
    for x, y in zip(a.coeffs, b.coeffs):
        if (x == 0) != (y == 0):
            return False
        if x:
            r = x / y
            if r <= 0 or (t is not None and r != t):
                return False
            t = r
    return t is not None


def _ray_factor(a: DivisorClass, b: DivisorClass) -> Fraction | None:
    """t with a = t*b and t > 0, else None."""
    if not same_ray(a, b):
        return None
    i = next(i for i, x in enumerate(b.coeffs) if x)
    return a.coeffs[i] / b.coeffs[i]


def _degree_witness(L: DivisorClass, c: MarkedCurve) -> Witness:
    return Witness(f"L.{c.name}", intersect(L, c.divisor), c.divisor)


def _as_positive_int(x: Fraction, what: str) -> int:
    if x.denominator != 1 or x <= 0:
        raise CertificateError(f"{what} must be a positive integer, got {x}")
    return int(x)


def _p2_shape(L: DivisorClass) -> tuple[int, dict[str, int]]:
    """Read L = dH - sum m_i E_i off a blow-up of P^2 with d, m_i > 0."""
    S = L.surface
    if S.base.kind != "P2" or S.cover_degree != 1:
        raise CertificateError("class does not live on a blow-up of P^2")
    d = _as_positive_int(L["H"], "d")
    mults = {e: _as_positive_int(-L[e], f"multiplicity at {e}") for e in S.exceptional_labels}
    return d, mults


def _check_points_on(C: MarkedCurve, labels) -> None:
    on = {lab for lab, m in C.points if m == 1}
    off = [lab for lab in labels if lab not in on]
    if off:
        raise CertificateError(f"points {off} are not smooth points of {C.name!r}")
    if C.degree is None:
        raise CertificateError(f"curve {C.name!r} has no plane degree")


def very_ample_p2_blowup(L: DivisorClass) -> PositivityReport:
    """L = dH - sum m_i E_i is very ample when d >= 1 + sum m_i (points in any position)."""
    d, mults = _p2_shape(L)
    total = sum(mults.values())
    verdict = Verdict.VERY_AMPLE if d >= 1 + total else Verdict.INCONCLUSIVE
    return PositivityReport(
        L,
        verdict,
        "p2-blowup: d >= 1 + sum m_i",
        (Witness("d", Fraction(d)), Witness("1 + sum m_i", Fraction(1 + total))),
    )


def ample_points_on_curve(L: DivisorClass, C: MarkedCurve) -> PositivityReport:
    """Ampleness for points on a plane curve of degree e.

    Needs L.C > 0 and d > (sum of the e largest multiplicities). The curve
    degree enters as e*d - sum m_i; the classical statement writes 3d, so
    e != 3 is flagged in the notes.
    """
    d, mults = _p2_shape(L)
    _check_points_on(C, mults)
    e = C.degree
    LC = intersect(L, C.divisor)
    top = sum(sorted(mults.values(), reverse=True)[:e])
    ok = LC > 0 and d > top
    notes = ("degree read as e*d - sum m_i",)
    if e != 3:
        notes += (f"e = {e} != 3: relies on the e*d reading",)
    return PositivityReport(
        L,
        Verdict.AMPLE if ok else Verdict.INCONCLUSIVE,
        "points on a plane curve: L.C > 0 and d > sum of e largest m_i",
        (Witness(f"L.{C.name}", LC, C.divisor), Witness("d", Fraction(d)), Witness("sum of e largest m_i", Fraction(top))),
        notes,
    )


def very_ample_equal_mult(L: DivisorClass, C: MarkedCurve, m: int) -> PositivityReport:
    """L = dH - m sum E_i, r points on a degree-e curve: very ample if (d+3)e > r(m+1) and r >= e^2+2."""
    d, mults = _p2_shape(L)
    if any(v != m for v in mults.values()):
        raise CertificateError(f"multiplicities are not all equal to {m}")
    _check_points_on(C, mults)
    e, r = C.degree, len(mults)
    lhs, rhs = (d + 3) * e, r * (m + 1)
    ok = lhs > rhs and r >= e * e + 2
    return PositivityReport(
        L,
        Verdict.VERY_AMPLE if ok else Verdict.INCONCLUSIVE,
        "equal multiplicities on a plane curve: (d+3)e > r(m+1), r >= e^2+2",
        (
            Witness("(d+3)e", Fraction(lhs)),
            Witness("r(m+1)", Fraction(rhs)),
            Witness("r", Fraction(r)),
            Witness("e^2+2", Fraction(e * e + 2)),
        ),
    )


def very_ample_ruled_blowup(
    L: DivisorClass, fiber_groups: Sequence[Sequence[str]] = ()
) -> PositivityReport:
    """L = aC- + bF - sum m_i E_i on a blown-up ruled surface.

    Very ample if b >= a*d + 2g + 1 + sum m_i and a - sum_{i in G} m_i >= 1
    for every set G of blown-up points sharing a fibre (points not listed in
    ``fiber_groups`` sit alone on their fibre).
    """
    S = L.surface
    if S.base.kind != "ruled" or S.cover_degree != 1:
        raise CertificateError("class does not live on a blow-up of a ruled surface")
    g, dinv = S.base.genus, S.base.invariant
    a = _as_positive_int(L["C-"], "a")
    b = _as_positive_int(L["F"], "b")
    mults = {e: _as_positive_int(-L[e], f"multiplicity at {e}") for e in S.exceptional_labels}

    seen: set[str] = set()
    groups = []
    for grp in fiber_groups:
        grp = list(grp)
        if not grp or seen & set(grp) or any(x not in mults for x in grp):
            raise CertificateError("fiber groups must partition the blown-up points")
        seen |= set(grp)
        groups.append(grp)
    groups += [[x] for x in mults if x not in seen]

    bound = a * dinv + 2 * g + 1 + sum(mults.values())
    fiber_vals = [a - sum(mults[x] for x in grp) for grp in groups]
    ok = b >= bound and all(v >= 1 for v in fiber_vals)
    witnesses = [Witness("b", Fraction(b)), Witness("ad + 2g + 1 + sum m_i", Fraction(bound))]
    witnesses += [Witness("a - sum m over " + "+".join(grp), Fraction(v)) for grp, v in zip(groups, fiber_vals)]
    return PositivityReport(
        L,
        Verdict.VERY_AMPLE if ok else Verdict.INCONCLUSIVE,
        "ruled blow-up: b >= ad + 2g + 1 + sum m_i, fibre degrees >= 1",
        tuple(witnesses),
    )


def _decompose(
    total: DivisorClass,
    ample_report: PositivityReport,
    effective: Sequence[tuple[MarkedCurve, object]],
    strict: bool,
) -> Fraction | None:
    """t > 0 with total = t*A + sum c_i C_i, or None if no such identity holds."""
    residual = total
    for c, coef in effective:
        coef = as_fraction(coef)
        if coef < 0 or (strict and coef == 0):
            raise CertificateError(f"coefficient of {c.name} must be positive")
        residual = residual - coef * c.divisor
    return _ray_factor(residual, ample_report.subject)


def _require_ample(report: PositivityReport) -> None:
    if not report.verdict.at_least(Verdict.AMPLE):
        raise CertificateError(f"ample part is only {report.verdict.value} ({report.criterion})")


def nef_against(
    L: DivisorClass,
    curves: Sequence[MarkedCurve],
    ample_part: PositivityReport | None = None,
    effective: Sequence[tuple[MarkedCurve, object]] = (),
) -> PositivityReport:
    """Nef certificate against a declared curve list.

    ``curves`` must contain every curve on which L could be nonpositive. L is
    certified nef when L.c >= 0 for each listed c and L = t*A + sum c_i C_i
    with A ample (``ample_part``), t > 0, c_i >= 0 and each C_i listed: any
    other irreducible curve then meets L positively.
    """
    if not curves:
        raise CertificateError("empty curve list")
    witnesses = tuple(_degree_witness(L, c) for c in curves)
    bad = [w for w in witnesses if w.value < 0]
    if bad:
        return PositivityReport(L, Verdict.VIOLATED, f"negative on {bad[0].label[2:]}", witnesses)
    if ample_part is None:
        return PositivityReport(L, Verdict.INCONCLUSIVE, "no decomposition supplied", witnesses)
    _require_ample(ample_part)
    listed = {c.name for c in curves}
    for c, _ in effective:
        if c.name not in listed:
            raise CertificateError(f"effective curve {c.name!r} is not in the curve list")
    t = _decompose(L, ample_part, effective, strict=False)
    if t is None:
        return PositivityReport(L, Verdict.INCONCLUSIVE, "decomposition does not match", witnesses)
    deco = tuple(Witness(f"coeff {c.name}", as_fraction(k)) for c, k in effective)
    return PositivityReport(
        L,
        Verdict.NEF,
        f"ample ({ample_part.criterion}) plus effective, nonnegative on listed curves",
        witnesses + (Witness("ample multiple t", t),) + deco,
    )


def ample_certificate(
    L: DivisorClass,
    ample_part: PositivityReport,
    effective_part: Sequence[tuple[MarkedCurve, object]],
    contracted_curves: Sequence[MarkedCurve] = (),
    k: int | None = None,
) -> PositivityReport:
    """Nakai-Moishezon certificate for the class pulled back as L.

    Checks the identity k*L = t*A + sum c_i C_i (t > 0, c_i > 0, A ample),
    L^2 > 0, L.C_i > 0 for every non-contracted C_i, and L.E = 0 for every
    contracted curve E (L is a pullback). Any curve outside the support then
    meets L positively, so L is ample on the surface where the contracted
    curves are collapsed. ``k`` defaults to the common denominator of L.
    """
    _require_ample(ample_part)
    if k is None:
        k = L.denominator
    if k < 1:
        raise CertificateError("k must be a positive integer")
    t = _decompose(k * L, ample_part, effective_part, strict=True)
    if t is None:
        raise CertificateError("identity k*L = ample + effective fails")

    contracted = {c.name for c in contracted_curves}
    witnesses = [Witness("k", Fraction(k)), Witness("ample multiple t", t)]
    witnesses += [Witness(f"coeff {c.name}", as_fraction(x)) for c, x in effective_part]
    sq = intersect(L, L)
    witnesses.append(Witness("L^2", sq, L))
    if sq <= 0:
        raise CertificateError(f"L^2 = {sq} is not positive")
    for c in contracted_curves:
        w = _degree_witness(L, c)
        witnesses.append(w)
        if w.value != 0:
            raise CertificateError(f"L is not a pullback: L.{c.name} = {w.value}")
    for c, _ in effective_part:
        if c.name in contracted:
            continue
        w = _degree_witness(L, c)
        witnesses.append(w)
        if w.value <= 0:
            raise CertificateError(f"L.{c.name} = {w.value} is not positive")
    return PositivityReport(
        L,
        Verdict.AMPLE,
        f"Nakai-Moishezon via k*L = ample ({ample_part.criterion}) + effective",
        tuple(witnesses),
        (f"contracted: {sorted(contracted)}",) if contracted else (),
    )


def pullback_report(report: PositivityReport, cover: SurfaceLattice) -> PositivityReport:
    """Transport a report to a finite cover lattice (same basis, scaled form).

    Pullback by a finite map keeps ampleness and nefness; very ampleness is
    not claimed upstairs.
    """
    if cover.basis != report.subject.surface.basis:
        raise LatticeError("cover lattice has a different basis")
    subject = DivisorClass(cover, report.subject.coeffs)
    verdict = Verdict.AMPLE if report.verdict == Verdict.VERY_AMPLE else report.verdict
    witnesses = []
    for w in report.witnesses:
        if w.against is None:
            witnesses.append(w)
        else:
            against = DivisorClass(cover, w.against.coeffs)
            witnesses.append(Witness(w.label, intersect(subject, against), against))
    return replace(
        report,
        subject=subject,
        verdict=verdict,
        criterion=f"finite pullback of: {report.criterion}",
        witnesses=tuple(witnesses),
    )
