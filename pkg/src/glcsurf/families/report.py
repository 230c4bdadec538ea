from __future__ import annotations

import functools

from dataclasses import dataclass, field
from fractions import Fraction

from ..contract import GlcPair
from ..lattice import SurfaceLattice
from ..positivity import PositivityReport
from .config import ConfigError, ScenarioConfig
from .divergence import DivergenceWitness
from .ledger import Claim, Ledger


@dataclass
class ScenarioReport:
    config: ScenarioConfig
    ledger: Ledger
    surfaces: dict[str, SurfaceLattice]
    positivity: dict[str, PositivityReport]
    pair: GlcPair
    volume: Fraction
    coefficient_set: tuple[Fraction, ...]
    torsion_order: int | float
    semiample_multiple: int | float
    cartier_index: int | float
    divergence: DivergenceWitness | None  # None where no witness functional is defined
    extras: dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.ledger.passed

    @property
    def failures(self) -> list[Claim]:
        return self.ledger.failures

    def claim(self, claim_id: str) -> Claim:
        return self.ledger[claim_id]


class ScenarioAborted(RuntimeError):
    """A builder stopped early; ``ledger`` holds the claims checked so far."""

    def __init__(self, config: ScenarioConfig, ledger: Ledger, cause: Exception):
        super().__init__(f"{config.label}: {type(cause).__name__}: {cause}")
        self.config = config
        self.ledger = ledger
        self.cause = cause

    @property
    def first_failure(self) -> Claim | None:
        fails = self.ledger.failures
        return fails[0] if fails else None


def guarded(builder):
    """Run ``builder(cfg, ledger)``; geometric failures become ScenarioAborted.

    Config errors propagate unchanged so callers can tell bad input from a
    failed verification.
    """

    @functools.wraps(builder)
    def run(cfg: ScenarioConfig) -> ScenarioReport:
        led = Ledger()
        try:
            return builder(cfg, led)
        except ConfigError:
            raise
        except (ValueError, ArithmeticError, KeyError) as exc:
            raise ScenarioAborted(cfg, led, exc) from exc

    return run
