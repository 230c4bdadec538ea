from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from ..groups import INFINITE

Value = Union[Fraction, float]  # float only ever holds INFINITE


def exact(v) -> Value:
    if isinstance(v, bool):
        return Fraction(int(v))
    if v == INFINITE:
        return INFINITE
    if isinstance(v, float):
        raise TypeError("floating point values are not allowed in the ledger")
    return Fraction(v)


@dataclass(frozen=True)
class Claim:
    claim_id: str
    anchor: str
    expected: Value
    computed: Value

    @property
    def passed(self) -> bool:
        return self.expected == self.computed


@dataclass
class Ledger:
    claims: list[Claim] = field(default_factory=list)

    def check(self, claim_id: str, anchor: str, expected, computed):
        """Record a claim; booleans are stored as 1/0."""
        self.claims.append(Claim(claim_id, anchor, exact(expected), exact(computed)))
        return computed

    def __iter__(self):
        return iter(self.claims)

    def __len__(self):
        return len(self.claims)

    def __getitem__(self, claim_id: str) -> Claim:
        for c in self.claims:
            if c.claim_id == claim_id:
                return c
        raise KeyError(claim_id)

    @property
    def failures(self) -> list[Claim]:
        return [c for c in self.claims if not c.passed]

    @property
    def passed(self) -> bool:
        return not self.failures
