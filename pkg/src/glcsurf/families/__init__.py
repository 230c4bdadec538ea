"""Scenario builders for the four families of unbounded moduli parts."""
from .calabi_yau import build_calabi_yau
from .config import (
    ConfigError,
    Family,
    ScenarioConfig,
    calabi_yau_config,
    general_type_config,
    general_type_min_d,
    kodaira_one_config,
    validate,
    weak_fano_config,
)
from .divergence import DivergenceWitness, divergence_witness_cy, divergence_witness_wf
from .general_type import build_general_type
from .kodaira_one import build_kodaira_one
from .ledger import Claim, Ledger
from .report import ScenarioAborted, ScenarioReport
from .weak_fano import build_weak_fano

BUILDERS = {
    Family.CALABI_YAU: build_calabi_yau,
    Family.KODAIRA_ONE: build_kodaira_one,
    Family.GENERAL_TYPE: build_general_type,
    Family.WEAK_FANO: build_weak_fano,
}


def build(cfg: ScenarioConfig) -> ScenarioReport:
    return BUILDERS[Family(cfg.family)](cfg)


__all__ = [
    "BUILDERS",
    "Claim",
    "ConfigError",
    "DivergenceWitness",
    "Family",
    "Ledger",
    "ScenarioConfig",
    "ScenarioAborted",
    "ScenarioReport",
    "build",
    "build_calabi_yau",
    "build_general_type",
    "build_kodaira_one",
    "build_weak_fano",
    "calabi_yau_config",
    "divergence_witness_cy",
    "divergence_witness_wf",
    "general_type_config",
    "general_type_min_d",
    "kodaira_one_config",
    "validate",
    "weak_fano_config",
]
