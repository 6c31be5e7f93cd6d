"""Degrees of freedom left after demanding a self-dual spectral singularity.

A potential with ``n`` independent complex couplings has ``2n + 1`` real
parameters (with the wavenumber). PT symmetry makes all couplings real
(``n + 1`` parameters) and ``m22 = 0`` costs two; without PT symmetry
``m11 = m22 = 0`` costs four.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class PotentialFamily:
    """``n`` complex couplings, ``m`` of them multiplying even basis functions."""

    n: int
    m: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("need at least one coupling constant")
        if not 0 <= self.m <= self.n:
            raise DomainError("need 0 <= m <= n")


@dataclass(frozen=True)
class DofBreakdown:
    n: int
    pt_symmetric: bool
    total: int
    constraints: int

    @property
    def free(self) -> int:
        return self.total - self.constraints

    @property
    def overdetermined(self) -> bool:
        return self.free < 0


def dof_breakdown(n: int, pt_symmetric: bool) -> DofBreakdown:
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    if pt_symmetric:
        return DofBreakdown(n, True, total=n + 1, constraints=2)
    return DofBreakdown(n, False, total=2 * n + 1, constraints=4)


def dof(n: int, pt_symmetric: bool) -> int:
    """``n - 1`` with PT symmetry, ``2n - 3`` without (``-1`` for ``n = 1``)."""
    return dof_breakdown(n, pt_symmetric).free


def non_pt_gain(n: int) -> int:
    """Extra freedom from dropping PT symmetry; positive only for ``n > 2``."""
    return dof(n, False) - dof(n, True)
