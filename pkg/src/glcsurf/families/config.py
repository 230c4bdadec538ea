"""Scenario configurations and their validation."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import comb

from ..groups import AbelianGroup, GroupElement


class ConfigError(ValueError):
    """Invalid scenario configuration; ``field`` names the offending entry."""

    def __init__(self, field: str, reason: str):
        super().__init__(f"{field}: {reason}")
        self.field = field
        self.reason = reason


class Family(str, Enum):
    CALABI_YAU = "calabi_yau"
    KODAIRA_ONE = "kodaira_one"
    GENERAL_TYPE = "general_type"
    WEAK_FANO = "weak_fano"


ELEVEN = tuple(f"p{j}" for j in range(1, 12))

POINT_NAMES = {
    Family.CALABI_YAU: ELEVEN,
    Family.KODAIRA_ONE: ELEVEN,
    Family.GENERAL_TYPE: ("p",),
    Family.WEAK_FANO: ("p",),
}

PARAMETERS = {
    Family.CALABI_YAU: (),
    Family.KODAIRA_ONE: ("cover_degree",),
    Family.GENERAL_TYPE: ("r", "d"),
    Family.WEAK_FANO: (),
}


def general_type_min_d(r: int) -> int:
    return 2 * (3 * r + comb(r, 2) + 2)


@dataclass(frozen=True)
class ScenarioConfig:
    family: Family
    group: AbelianGroup
    points: dict[str, GroupElement] = field(default_factory=dict)
    parameters: dict[str, int] = field(default_factory=dict)

    def point(self, name: str) -> GroupElement:
        return self.points.get(name, self.group.identity)

    def param(self, name: str, default=None):
        return self.parameters.get(name, default)

    @property
    def label(self) -> str:
        bits = [f"{k}={v}" for k, v in sorted(self.parameters.items())]
        orders = self.group.torsion_orders
        bits.append("Z^%d" % self.group.free_rank if self.group.free_rank else "")
        bits.append("x".join(f"Z/{n}" for n in orders))
        return f"{self.family.value}[{', '.join(b for b in bits if b) or 'trivial group'}]"


def validate(cfg: ScenarioConfig, family: Family | None = None) -> ScenarioConfig:
    """Check family preconditions; fills in defaulted parameters."""
    if family is not None and cfg.family != family:
        raise ConfigError("family", f"expected {family.value}, got {cfg.family.value}")
    fam = Family(cfg.family)
    names = POINT_NAMES[fam]
    if set(cfg.points) != set(names):
        missing = sorted(set(names) - set(cfg.points))
        extra = sorted(set(cfg.points) - set(names))
        raise ConfigError("points", f"{fam.value} needs points {list(names)} (missing {missing}, unexpected {extra})")
    for name, e in cfg.points.items():
        if e.group != cfg.group:
            raise ConfigError(f"points.{name}", "element does not belong to the configured group")
    unknown = set(cfg.parameters) - set(PARAMETERS[fam])
    if unknown:
        raise ConfigError("parameters", f"unknown parameters {sorted(unknown)} for {fam.value}")
    params = dict(cfg.parameters)
    for k, v in params.items():
        if not isinstance(v, int) or isinstance(v, bool):
            raise ConfigError(f"parameters.{k}", "must be an integer")

    if fam == Family.KODAIRA_ONE:
        params.setdefault("cover_degree", 2)
        if params["cover_degree"] not in (1, 2):
            raise ConfigError("parameters.cover_degree", "only the double cover (2) or no cover (1) is modelled")
    if fam == Family.GENERAL_TYPE:
        if "r" not in params:
            raise ConfigError("parameters.r", "required")
        r = params["r"]
        if r < 4:
            raise ConfigError("parameters.r", f"r >= 4 required for the K_Z ampleness certificate (got r = {r})")
        bound = general_type_min_d(r)
        params.setdefault("d", bound)
        if params["d"] < bound:
            raise ConfigError("parameters.d", f"d >= 2(3r + r(r-1)/2 + 2) = {bound} required (got d = {params['d']})")
    return ScenarioConfig(fam, cfg.group, dict(cfg.points), params)


def _cyclic_point(n: int | None) -> tuple[AbelianGroup, GroupElement]:
    """Group and a point of order n (n=None: a point of infinite order)."""
    if n is None:
        g = AbelianGroup(1, ())
        return g, g.element(free=[1])
    if n < 1:
        raise ConfigError("n", "torsion order must be positive")
    g = AbelianGroup.cyclic(n)
    return g, (g.element(torsion=[1]) if n > 1 else g.identity)


def calabi_yau_config(n: int | None = 1) -> ScenarioConfig:
    """Ten points at p0 and an eleventh point of order n (None: non-torsion)."""
    g, x = _cyclic_point(n)
    pts = {name: g.identity for name in ELEVEN}
    pts["p11"] = x
    return ScenarioConfig(Family.CALABI_YAU, g, pts)


def kodaira_one_config(n: int | None = 1, cover_degree: int = 2) -> ScenarioConfig:
    cy = calabi_yau_config(n)
    return ScenarioConfig(Family.KODAIRA_ONE, cy.group, cy.points, {"cover_degree": cover_degree})


def general_type_config(r: int = 4, n: int | None = 1, d: int | None = None) -> ScenarioConfig:
    g, x = _cyclic_point(n)
    params = {"r": r}
    if d is not None:
        params["d"] = d
    return ScenarioConfig(Family.GENERAL_TYPE, g, {"p": x}, params)


def weak_fano_config(n: int | None = 1) -> ScenarioConfig:
    g, x = _cyclic_point(n)
    return ScenarioConfig(Family.WEAK_FANO, g, {"p": x})
