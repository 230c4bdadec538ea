"""Finitely generated abelian groups ``Z^f + Z/n_1 + ... + Z/n_k``.

These model the degree-zero Picard group of an elliptic curve abstractly:
only orders of points and linear relations between them matter, so no
curve arithmetic is done anywhere.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

INFINITE = math.inf


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int = 0
    torsion_orders: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion_orders", tuple(int(n) for n in self.torsion_orders))
        if self.free_rank < 0:
            raise ValueError("free_rank must be nonnegative")
        if any(n < 2 for n in self.torsion_orders):
            raise ValueError("torsion orders must be >= 2")

    @classmethod
    def cyclic(cls, n: int) -> "AbelianGroup":
        """Z/n, with n = 1 giving the trivial group."""
        return cls(0, () if n == 1 else (n,))

    @property
    def exponent(self) -> int | float:
        if self.free_rank:
            return INFINITE
        return math.lcm(*self.torsion_orders) if self.torsion_orders else 1

    def element(self, free: Sequence[int] = (), torsion: Sequence[int] = ()) -> "GroupElement":
        free = tuple(free) or (0,) * self.free_rank
        torsion = tuple(torsion) or (0,) * len(self.torsion_orders)
        return GroupElement(self, free, torsion)

    @property
    def identity(self) -> "GroupElement":
        return self.element()

    def generators(self) -> list["GroupElement"]:
        gens = []
        for i in range(self.free_rank):
            gens.append(self.element(free=[int(i == j) for j in range(self.free_rank)]))
        for i in range(len(self.torsion_orders)):
            gens.append(self.element(torsion=[int(i == j) for j in range(len(self.torsion_orders))]))
        return gens


@dataclass(frozen=True)
class GroupElement:
    group: AbelianGroup
    free: tuple[int, ...]
    torsion: tuple[int, ...]

    def __post_init__(self):
        g = self.group
        if len(self.free) != g.free_rank or len(self.torsion) != len(g.torsion_orders):
            raise ValueError("coordinate lengths do not match the group")
        object.__setattr__(self, "free", tuple(int(x) for x in self.free))
        object.__setattr__(
            self, "torsion", tuple(int(x) % n for x, n in zip(self.torsion, g.torsion_orders))
        )

    def _check(self, other: "GroupElement"):
        if other.group != self.group:
            raise ValueError("elements of different groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(
            self.group,
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple(a + b for a, b in zip(self.torsion, other.torsion)),
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, tuple(-a for a in self.free), tuple(-a for a in self.torsion))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __mul__(self, k: int) -> "GroupElement":
        if not isinstance(k, int):
            raise TypeError("group elements scale by integers only")
        return GroupElement(self.group, tuple(k * a for a in self.free), tuple(k * a for a in self.torsion))

    __rmul__ = __mul__

    @property
    def is_identity(self) -> bool:
        return not any(self.free) and not any(self.torsion)


def order(x: GroupElement) -> int | float:
    """Smallest m >= 1 with m*x = 0, or ``INFINITE`` if x has a free component."""
    if any(x.free):
        return INFINITE
    out = 1
    for t, n in zip(x.torsion, x.group.torsion_orders):
        out = math.lcm(out, n // math.gcd(t, n))
    return out


def group_sum(elements, group: AbelianGroup) -> GroupElement:
    out = group.identity
    for e in elements:
        out = out + e
    return out
