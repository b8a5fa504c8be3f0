"""Row generators behind the sweep and scan-mixed commands."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .bell import analytic_max_violation, horodecki_M
from .states import entanglement_entropy, purity, random_density
from .rng import rng_substream


@dataclass(frozen=True)
class SweepRow:
    theta: float
    bound: float
    entropy: float


@dataclass(frozen=True)
class ScanRow:
    index: int
    rank: int
    purity: float
    max_chsh: float


def sweep_rows(steps: int) -> list[SweepRow]:
    """steps+1 equally spaced theta values over [0, pi]."""
    if steps < 1:
        raise DomainError("steps must be >= 1")
    rows = []
    for k in range(steps + 1):
        # pin the endpoint: k*pi/steps can overshoot pi by one ulp
        theta = math.pi if k == steps else k * math.pi / steps
        rows.append(
            SweepRow(
                theta=theta,
                bound=analytic_max_violation(theta),
                entropy=entanglement_entropy(theta),
            )
        )
    return rows


def scan_mixed(count: int, seed: int, rank: int | None = None) -> list[ScanRow]:
    """Ginibre ensemble scan: per-sample purity and Horodecki maximum 2 sqrt(M).

    Sample i draws from rng_substream(seed, i), so the scan is reproducible
    and order-independent.  With rank unset the ranks cycle 1..4 so the
    ensemble covers the whole purity range, pure projectors included.
    """
    if count < 1:
        raise DomainError("count must be >= 1")
    rows = []
    for i in range(count):
        r = rank if rank is not None else (i % 4) + 1
        rho = random_density(rng_substream(seed, i), r)
        rows.append(
            ScanRow(
                index=i,
                rank=r,
                purity=purity(rho),
                max_chsh=2.0 * math.sqrt(horodecki_M(rho)),
            )
        )
    return rows
