"""Picard lattices of surfaces obtained from P^2 or a ruled surface by blow-ups.

A :class:`SurfaceLattice` is an immutable value: a list of basis labels, an
exact symmetric Gram matrix, the canonical class and the marked curves with
their current (strict transform) classes. Every construction returns a new
lattice.

>>> P = projective_plane()
>>> K = P.canonical
>>> intersect(K, K)
Fraction(9, 1)
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

from .exact import as_fraction, is_negative_definite_matrix, lcd
from .groups import AbelianGroup, GroupElement


class LatticeError(ValueError):
    pass


class Kind(str, Enum):
    HYPERPLANE = "hyperplane"
    FIBER = "fiber"
    SECTION = "section"
    EXCEPTIONAL = "exceptional"


@dataclass(frozen=True)
class BasisLabel:
    name: str
    kind: Kind = Kind.EXCEPTIONAL

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))


@dataclass(frozen=True)
class Restriction:
    """Target group of a restriction map plus the group element of each blown-up point.

    ``point_map`` sends an exceptional label E to the class p - p0, where p is
    the point of the curve lying under E and p0 the chosen identity.
    """

    group: AbelianGroup
    point_map: tuple[tuple[str, GroupElement], ...] = ()

    @property
    def points(self) -> dict[str, GroupElement]:
        return dict(self.point_map)

    def with_point(self, label: str, element: GroupElement) -> "Restriction":
        if element.group != self.group:
            raise LatticeError(f"point over {label} lives in a different group")
        return replace(self, point_map=self.point_map + ((label, element),))


# history records


@dataclass(frozen=True)
class BaseSurface:
    kind: str  # "P2", "ruled" or "custom"
    genus: int = 0
    invariant: int = 0


@dataclass(frozen=True)
class BlowUp:
    label: str
    incidences: tuple[tuple[str, int], ...] = ()


@dataclass(frozen=True)
class Cover:
    degree: int


@dataclass(frozen=True)
class CurveRecord:
    name: str
    coeffs: tuple[Fraction, ...]
    genus: int = 0
    degree: int | None = None
    restriction: Restriction | None = None
    points: tuple[tuple[str, int], ...] = ()


@dataclass(frozen=True)
class SurfaceLattice:
    basis: tuple[BasisLabel, ...]
    gram: tuple[tuple[Fraction, ...], ...]
    canonical_coeffs: tuple[Fraction, ...]
    curve_records: tuple[CurveRecord, ...] = ()
    history: tuple = ()

    def __post_init__(self):
        n = len(self.basis)
        names = [b.name for b in self.basis]
        if len(set(names)) != n:
            raise LatticeError("basis labels must be unique")
        gram = tuple(tuple(as_fraction(x) for x in row) for row in self.gram)
        if len(gram) != n or any(len(row) != n for row in gram):
            raise LatticeError("gram matrix has the wrong shape")
        if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(i)):
            raise LatticeError("gram matrix is not symmetric")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "canonical_coeffs", tuple(as_fraction(x) for x in self.canonical_coeffs))
        if len(self.canonical_coeffs) != n:
            raise LatticeError("canonical class has the wrong length")
        if any(len(c.coeffs) != n for c in self.curve_records):
            raise LatticeError("marked curve class has the wrong length")

    # lookup

    @cached_property
    def _index(self) -> dict[str, int]:
        return {b.name: i for i, b in enumerate(self.basis)}

    @cached_property
    def _rows(self) -> list[list[tuple[int, Fraction]]]:
        return [[(j, g) for j, g in enumerate(row) if g] for row in self.gram]

    @property
    def labels(self) -> list[str]:
        return [b.name for b in self.basis]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise LatticeError(f"no basis label {name!r}") from None

    def labels_of_kind(self, kind: Kind) -> list[str]:
        return [b.name for b in self.basis if b.kind == kind]

    @property
    def exceptional_labels(self) -> list[str]:
        return self.labels_of_kind(Kind.EXCEPTIONAL)

    @property
    def base(self) -> BaseSurface:
        return self.history[0] if self.history and isinstance(self.history[0], BaseSurface) else BaseSurface("custom")

    @property
    def cover_degree(self) -> int:
        out = 1
        for h in self.history:
            if isinstance(h, Cover):
                out *= h.degree
        return out

    # classes

    def __getitem__(self, name: str) -> "DivisorClass":
        i = self.index(name)
        return DivisorClass(self, tuple(Fraction(int(j == i)) for j in range(self.rank)))

    def zero(self) -> "DivisorClass":
        return DivisorClass(self, (Fraction(0),) * self.rank)

    def divisor(self, coefficients: Mapping[str, object] | None = None, **kw) -> "DivisorClass":
        """Build a class from ``{label: coefficient}`` (keyword form also accepted)."""
        coeffs = [Fraction(0)] * self.rank
        for name, c in {**(coefficients or {}), **kw}.items():
            coeffs[self.index(name)] += as_fraction(c)
        return DivisorClass(self, tuple(coeffs))

    def sum_of(self, names: Iterable[str]) -> "DivisorClass":
        out = self.zero()
        for n in names:
            out = out + self[n]
        return out

    @property
    def canonical(self) -> "DivisorClass":
        return DivisorClass(self, self.canonical_coeffs)

    # marked curves

    def _record(self, name: str) -> CurveRecord:
        for c in self.curve_records:
            if c.name == name:
                return c
        raise LatticeError(f"no marked curve {name!r}")

    def curve(self, name: str) -> "MarkedCurve":
        rec = self._record(name)
        return MarkedCurve(
            rec.name, DivisorClass(self, rec.coeffs), rec.genus, rec.degree, rec.restriction, rec.points
        )

    def curves(self, names: Iterable[str] | None = None) -> list["MarkedCurve"]:
        if names is None:
            names = [c.name for c in self.curve_records]
        return [self.curve(n) for n in names]

    @property
    def curve_names(self) -> list[str]:
        return [c.name for c in self.curve_records]

    def __repr__(self):
        return f"SurfaceLattice(rank={self.rank}, base={self.base.kind}, curves={self.curve_names})"


Scalar = Union[int, Fraction]


@dataclass(frozen=True, eq=False)
class DivisorClass:
    """Exact rational combination of the basis classes of ``surface``."""

    surface: SurfaceLattice
    coeffs: tuple[Fraction, ...]

    def _same(self, other: "DivisorClass"):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        if other.surface is not self.surface and other.surface != self.surface:
            raise LatticeError("classes live on different surfaces")
        return True

    def __eq__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return (other.surface is self.surface or other.surface == self.surface) and other.coeffs == self.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        if self._same(other) is NotImplemented:
            return NotImplemented
        return DivisorClass(self.surface, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        if self._same(other) is NotImplemented:
            return NotImplemented
        return DivisorClass(self.surface, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.surface, tuple(-a for a in self.coeffs))

    def __mul__(self, k: Scalar) -> "DivisorClass":
        if isinstance(k, DivisorClass):
            return NotImplemented
        k = as_fraction(k)
        return DivisorClass(self.surface, tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, k: Scalar) -> "DivisorClass":
        return self * (1 / as_fraction(k))

    def __matmul__(self, other: "DivisorClass") -> Fraction:
        return intersect(self, other)

    def __getitem__(self, name: str) -> Fraction:
        return self.coeffs[self.surface.index(name)]

    @property
    def coefficients(self) -> dict[str, Fraction]:
        return {b.name: c for b, c in zip(self.surface.basis, self.coeffs) if c}

    @property
    def denominator(self) -> int:
        return lcd(self.coeffs)

    @property
    def is_integral(self) -> bool:
        return self.denominator == 1

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self):
        terms = []
        for name, c in self.coefficients.items():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            terms.append(f"{sign} {name}" if a == 1 else f"{sign} {a}*{name}")
        if not terms:
            return "0"
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"DivisorClass({self})"


@dataclass(frozen=True)
class MarkedCurve:
    """A distinguished curve with its current class on ``divisor.surface``.

    ``points`` lists the exceptional labels of blow-ups centred on the curve,
    with the multiplicity of the curve at each centre.
    """

    name: str
    divisor: DivisorClass
    genus: int = 0
    degree: int | None = None
    restriction: Restriction | None = None
    points: tuple[tuple[str, int], ...] = ()

    @property
    def surface(self) -> SurfaceLattice:
        return self.divisor.surface

    @property
    def self_intersection(self) -> Fraction:
        return intersect(self.divisor, self.divisor)

    def expected_self_intersection(self) -> Fraction | None:
        """e^2 - sum m^2 for a plane curve of degree e marked on P^2 before any blow-up."""
        s = self.surface
        if self.degree is None or s.base.kind != "P2":
            return None
        return Fraction(s.cover_degree * (self.degree**2 - sum(m * m for _, m in self.points)))


# constructions


def projective_plane() -> SurfaceLattice:
    return SurfaceLattice(
        basis=(BasisLabel("H", Kind.HYPERPLANE),),
        gram=((Fraction(1),),),
        canonical_coeffs=(Fraction(-3),),
        history=(BaseSurface("P2"),),
    )


def ruled_surface(g: int, d: int) -> SurfaceLattice:
    """Ruled surface over a genus-g curve with negative section C- of square -d.

    Basis is [C-, F]; K = -2C- + (2g - 2 - d)F by adjunction on a fibre and on C-.
    """
    if g < 0 or d < 0:
        raise LatticeError("genus and invariant must be nonnegative")
    return SurfaceLattice(
        basis=(BasisLabel("C-", Kind.SECTION), BasisLabel("F", Kind.FIBER)),
        gram=((Fraction(-d), Fraction(1)), (Fraction(1), Fraction(0))),
        canonical_coeffs=(Fraction(-2), Fraction(2 * g - 2 - d)),
        history=(BaseSurface("ruled", genus=g, invariant=d),),
    )


def from_gram(
    labels: Sequence[str],
    gram: Sequence[Sequence],
    canonical: Sequence | None = None,
    kinds: Sequence[Kind] | None = None,
) -> SurfaceLattice:
    """Lattice with an arbitrary symmetric Gram matrix (no geometric history)."""
    kinds = kinds or [Kind.EXCEPTIONAL] * len(labels)
    return SurfaceLattice(
        basis=tuple(BasisLabel(n, k) for n, k in zip(labels, kinds)),
        gram=tuple(tuple(row) for row in gram),
        canonical_coeffs=tuple(canonical) if canonical is not None else (0,) * len(labels),
        history=(BaseSurface("custom"),),
    )


def mark_curve(
    S: SurfaceLattice,
    name: str,
    divisor: DivisorClass,
    genus: int = 0,
    degree: int | None = None,
    group: AbelianGroup | None = None,
) -> SurfaceLattice:
    """Return ``S`` with one more marked curve; ``group`` enables restriction to it."""
    if name in S.curve_names:
        raise LatticeError(f"curve {name!r} already marked")
    if divisor.surface != S:
        raise LatticeError("curve class lives on another surface")
    if genus not in (0, 1):
        raise LatticeError("only rational and elliptic curves are modelled")
    if group is not None and genus != 1:
        raise LatticeError("restriction groups are only attached to elliptic curves")
    rec = CurveRecord(name, divisor.coeffs, genus, degree, Restriction(group) if group else None)
    return replace(S, curve_records=S.curve_records + (rec,))


Incidence = tuple[Union[str, MarkedCurve], int]


def blow_up(
    S: SurfaceLattice,
    label: str | BasisLabel,
    incidences: Sequence[Incidence] = (),
    point: GroupElement | Mapping[str, GroupElement] | None = None,
) -> SurfaceLattice:
    """Blow up one point and return the new lattice.

    ``incidences`` lists the marked curves through the point with their
    multiplicity there; their classes become strict transforms. ``point`` is
    the group element p - p0 of the centre on curves carrying restriction
    data (a mapping keyed by curve name if several such curves pass through
    it); it defaults to the identity.
    """
    if any(isinstance(h, Cover) for h in S.history):
        raise LatticeError("cannot blow up a cover lattice")
    if isinstance(label, str):
        label = BasisLabel(label, Kind.EXCEPTIONAL)
    if label.kind != Kind.EXCEPTIONAL:
        raise LatticeError("a blow-up adds an exceptional label")
    if label.name in S._index or label.name in S.curve_names:
        raise LatticeError(f"duplicate label {label.name!r}")

    mults: dict[str, int] = {}
    for curve, m in incidences:
        name = curve.name if isinstance(curve, MarkedCurve) else curve
        S._record(name)
        if not isinstance(m, int) or isinstance(m, bool) or m < 0:
            raise LatticeError(f"multiplicity on {name!r} must be a nonnegative integer")
        if name in mults:
            raise LatticeError(f"curve {name!r} listed twice")
        if m and name in S.exceptional_labels:
            raise LatticeError("infinitely near points are not supported")
        mults[name] = m

    n = S.rank
    zero = Fraction(0)
    gram = tuple(row + (zero,) for row in S.gram) + ((zero,) * n + (Fraction(-1),),)
    canonical = S.canonical_coeffs + (Fraction(1),)

    records = []
    for rec in S.curve_records:
        m = mults.get(rec.name, 0)
        coeffs = rec.coeffs + (Fraction(-m),)
        restriction, points = rec.restriction, rec.points
        if m:
            points = points + ((label.name, m),)
            if restriction is not None:
                if m != 1:
                    raise LatticeError(f"centre must be a smooth point of {rec.name!r}")
                if isinstance(point, Mapping):
                    elem = point.get(rec.name, restriction.group.identity)
                else:
                    elem = point if point is not None else restriction.group.identity
                restriction = restriction.with_point(label.name, elem)
        records.append(replace(rec, coeffs=coeffs, restriction=restriction, points=points))
    records.append(CurveRecord(label.name, (zero,) * n + (Fraction(1),), genus=0))

    return SurfaceLattice(
        basis=S.basis + (label,),
        gram=gram,
        canonical_coeffs=canonical,
        curve_records=tuple(records),
        history=S.history + (BlowUp(label.name, tuple((k, v) for k, v in mults.items())),),
    )


def scale_cover(S: SurfaceLattice, n: int) -> SurfaceLattice:
    """Pulled-back classes under a finite cover of degree n: the form scales by n.

    Only pulled-back classes are represented (the rank is unchanged); the
    canonical vector is carried over verbatim, so ramification has to be added
    by the caller.
    """
    if not isinstance(n, int) or n < 1:
        raise LatticeError("cover degree must be a positive integer")
    return replace(
        S,
        gram=tuple(tuple(n * g for g in row) for row in S.gram),
        history=S.history + (Cover(n),),
    )


def total_transform(D: DivisorClass, target: SurfaceLattice) -> DivisorClass:
    """Pull ``D`` back to a lattice built from its surface (zeros on new labels)."""
    src = D.surface.basis
    if target.basis[: len(src)] != src:
        raise LatticeError("target lattice does not extend the source basis")
    return DivisorClass(target, D.coeffs + (Fraction(0),) * (target.rank - len(src)))


def intersect(D1: DivisorClass, D2: DivisorClass) -> Fraction:
    D1._same(D2)
    rows = D1.surface._rows
    b = D2.coeffs
    total = Fraction(0)
    for i, a in enumerate(D1.coeffs):
        if a:
            total += a * sum((g * b[j] for j, g in rows[i] if b[j]), Fraction(0))
    return total


def gram_of(classes: Sequence[DivisorClass]) -> list[list[Fraction]]:
    return [[intersect(a, b) for b in classes] for a in classes]


def is_negative_definite(classes: Sequence[DivisorClass]) -> bool:
    if not classes:
        raise LatticeError("empty list of classes")
    return is_negative_definite_matrix(gram_of(classes))


def volume_nef_big(D: DivisorClass, nef_evidence) -> Fraction:
    """Volume of a nef and big class, i.e. its self-intersection.

    ``nef_evidence`` is a positivity report on D (or a positive multiple).
    """
    from .positivity import Verdict, same_ray

    if nef_evidence is None:
        raise LatticeError("nef evidence is required")
    if not nef_evidence.verdict.at_least(Verdict.NEF):
        raise LatticeError(f"evidence verdict is {nef_evidence.verdict.value}, not nef")
    if not same_ray(nef_evidence.subject, D):
        raise LatticeError("evidence is about a different class")
    v = intersect(D, D)
    if v <= 0:
        raise LatticeError(f"class is not big: D^2 = {v}")
    return v
