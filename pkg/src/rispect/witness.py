"""Disjoint-copy witnesses: how close block windows are to an l^p unit basis.

A witness family takes one normalized profile and lays down n disjoint copies;
the measured distortion compares the space norm of coefficient combinations
against the l^p norm of the coefficients, p = 1/theta.  At matched rates the
profile is an approximate eigenvector of the doubling operator and the
distortion approaches one as the window grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .shifts import geometric_window
from .spaces import SpaceSpec, space_norm
from .steps import Distribution, disjoint_sum, dyadic_embed

__all__ = [
    "WitnessFamily",
    "build_witness",
    "distortion",
    "standard_probes",
    "lp_norm",
]


@dataclass(frozen=True)
class WitnessFamily:
    """n_copies disjoint copies of a unit-norm profile in a fixed space."""

    space: SpaceSpec
    base: Distribution
    n_copies: int
    theta: float
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if self.n_copies < 1:
            raise ValueError(f"need n_copies >= 1, got {self.n_copies}")
        if not 0.0 <= self.theta <= 1.0:
            raise ValueError(f"theta={self.theta} outside [0, 1]")
        if self.base.is_zero:
            raise ValueError("witness base must be nonzero")

    @property
    def p(self) -> float:
        return math.inf if self.theta == 0.0 else 1.0 / self.theta


def build_witness(
    space: SpaceSpec, lam: float, n_copies: int, window_n: int, k: int
) -> WitnessFamily:
    """Witness from a geometric window at rate lam starting at block k.

    Requires lam in [1, 2] so theta = log2(lam) lies in [0, 1]; lam = 1 gives
    p = inf.  The base profile is normalized to unit space norm.
    """
    if not 1.0 <= lam <= 2.0:
        raise ValueError(f"lam={lam} outside [1, 2] (theta must lie in [0, 1])")
    raw = dyadic_embed(geometric_window(lam, k, window_n)).distribution()
    nrm = space_norm(space, raw)
    base = raw.scale(1.0 / nrm)
    return WitnessFamily(
        space,
        base,
        n_copies,
        math.log2(lam),
        meta={"lam": lam, "window_n": window_n, "k": k},
    )


def lp_norm(coeffs: Sequence[float], theta: float) -> float:
    """l^p norm with p = 1/theta; theta = 0 is the sup norm."""
    arr = np.abs(np.asarray(coeffs, dtype=float))
    if arr.size == 0:
        return 0.0
    if theta == 0.0:
        return float(arr.max())
    p = 1.0 / theta
    return float(np.sum(arr**p) ** (1.0 / p))


def standard_probes(
    n_copies: int, theta: float, seed: int, n_random: int = 100
) -> list[list[float]]:
    """Unit vectors, all-ones, alternating signs, a matched geometric decay,
    and seeded random normal vectors."""
    probes: list[list[float]] = [
        [1.0 if j == i else 0.0 for j in range(n_copies)] for i in range(n_copies)
    ]
    probes.append([1.0] * n_copies)
    probes.append([(-1.0) ** j for j in range(n_copies)])
    probes.append([2.0 ** (-j * theta) for j in range(n_copies)])
    for i in range(n_random):
        rng = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence((seed, 7777, i)))
        )
        probes.append([float(v) for v in rng.standard_normal(n_copies)])
    return probes


def distortion(fam: WitnessFamily, probe_coeffs: Sequence[Sequence[float]]) -> float:
    """max over probes of max(R, 1/R), R = ||sum a_j x_j|| / ||a||_p.

    Signs never matter: disjoint copies see only |a_j|.
    """
    worst = 1.0
    for a in probe_coeffs:
        if len(a) != fam.n_copies:
            raise ValueError(f"probe length {len(a)} != n_copies {fam.n_copies}")
        if not any(v != 0.0 for v in a):
            continue
        num = space_norm(fam.space, disjoint_sum(a, fam.base))
        den = lp_norm(a, fam.theta)
        ratio = num / den
        worst = max(worst, ratio, 1.0 / ratio)
    return worst
