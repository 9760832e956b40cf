"""Approximate point spectrum of the doubling operator and probe experiments.

Everything is phrased in theta = log2(lambda).  The interval assembly follows
the index case split; the probe routines produce finite-truncation evidence:
residual curves along window constructions that collapse at approximate
eigenvalues, suite-wide lower bounds elsewhere, partial sums for the kernel
functional, and the exact range identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .indices import IndexSet, WeightSeq
from .shifts import Seq, geometric_window, shift_minus, squared_window
from .spaces import SpaceSpec, block_norm
from .steps import disjoint_sum  # noqa: F401  (re-exported convenience)

__all__ = [
    "ThetaInterval",
    "SpectrumReport",
    "Verdict",
    "LambdaClass",
    "ProbeConfig",
    "ProbeResult",
    "FunctionalSumTest",
    "approx_eigenvalue_set",
    "frep_set",
    "sufficient_set_general",
    "classify_lambda",
    "residual_curve",
    "probe_lower_bound",
    "functional_bound_test",
    "kernel_witness_curve",
    "range_identity_check",
]

_BOUNDARY_TOL = 1e-12
_CONVERGED_REL = 1e-9


@dataclass(frozen=True)
class ThetaInterval:
    """Closed interval of theta = log2(lambda) values inside [0, 1]."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.lo <= self.hi <= 1.0):
            raise ValueError(f"bad theta interval [{self.lo}, {self.hi}]")

    def contains(self, theta: float) -> bool:
        return self.lo <= theta <= self.hi

    def to_p(self) -> tuple[float, float]:
        """Image under p = 1/theta (order reversing; theta=0 -> inf)."""
        p_lo = 1.0 / self.hi if self.hi > 0 else math.inf
        p_hi = 1.0 / self.lo if self.lo > 0 else math.inf
        return (p_lo, p_hi)


@dataclass(frozen=True)
class SpectrumReport:
    """Approximate eigenvalue set in theta, with its p-coordinate view."""

    eigen_set: tuple[ThetaInterval, ...]
    case_tag: str
    source: IndexSet
    sufficient_only: bool = False
    split_uncertain: bool = False

    @property
    def frep_set(self) -> tuple[tuple[float, float], ...]:
        """p-intervals, largest p last; math.inf marks an unbounded endpoint."""
        return tuple(iv.to_p() for iv in self.eigen_set)


def approx_eigenvalue_set(ix: IndexSet) -> SpectrumReport:
    """Case split on the restricted indices.

    alpha_inf <= beta0: one interval [alpha, beta].  Otherwise the middle
    (beta0, alpha_inf) consists of isomorphisms onto a closed hyperplane, and
    the set splits into [alpha, beta0] and [alpha_inf, beta].
    """
    err = float(ix.meta.get("est_error", 0.0)) if ix.meta else 0.0
    split_uncertain = abs(ix.alpha_inf - ix.beta0) < 2.0 * err
    if ix.alpha_inf <= ix.beta0:
        intervals = (ThetaInterval(ix.alpha, ix.beta),)
        case_tag = "i"
    else:
        intervals = (
            ThetaInterval(ix.alpha, ix.beta0),
            ThetaInterval(ix.alpha_inf, ix.beta),
        )
        case_tag = "ii"
    return SpectrumReport(intervals, case_tag, ix, split_uncertain=split_uncertain)


def frep_set(ix: IndexSet) -> SpectrumReport:
    """Same report; read the p-coordinate view via .frep_set."""
    return approx_eigenvalue_set(ix)


def sufficient_set_general(ix_phi: IndexSet) -> SpectrumReport:
    """Assembly from fundamental-function indices alone: always a subset of
    the true set, marked sufficient_only."""
    rep = approx_eigenvalue_set(ix_phi)
    return SpectrumReport(
        rep.eigen_set,
        rep.case_tag,
        rep.source,
        sufficient_only=True,
        split_uncertain=rep.split_uncertain,
    )


class Verdict(str, Enum):
    ISO_ONTO = "iso_onto"
    ISO_ONTO_CODIM1 = "iso_onto_codim1"
    SURJECTIVE_NOT_INJECTIVE = "surjective_not_injective"
    NOT_CLOSED = "not_closed"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class LambdaClass:
    lam: float
    theta: float
    verdict: Verdict


def classify_lambda(ix: IndexSet, lam: float) -> LambdaClass:
    """Place lambda relative to the isomorphism / closed-image regions.

    Outside [2**alpha, 2**beta] the operator is an isomorphism onto the whole
    lattice.  Inside, the window (beta0, alpha_inf) gives an isomorphism onto
    a codimension-one closed subspace, the window (beta_inf, alpha0) gives a
    surjection with one-dimensional kernel, threshold hits are 'boundary',
    and everything else has non-closed image.
    """
    if not lam > 0:
        raise ValueError(f"positive lam required, got {lam}")
    theta = math.log2(lam)
    thresholds = [ix.alpha, ix.beta]
    if ix.beta0 < ix.alpha_inf:
        thresholds += [ix.beta0, ix.alpha_inf]
    if ix.beta_inf < ix.alpha0:
        thresholds += [ix.beta_inf, ix.alpha0]
    if any(abs(theta - t) <= _BOUNDARY_TOL for t in thresholds):
        verdict = Verdict.BOUNDARY
    elif theta < ix.alpha or theta > ix.beta:
        verdict = Verdict.ISO_ONTO
    elif ix.beta0 < theta < ix.alpha_inf:
        verdict = Verdict.ISO_ONTO_CODIM1
    elif ix.beta_inf < theta < ix.alpha0:
        verdict = Verdict.SURJECTIVE_NOT_INJECTIVE
    else:
        verdict = Verdict.NOT_CLOSED
    return LambdaClass(lam, theta, verdict)


@dataclass(frozen=True)
class ProbeConfig:
    """Probe suite shape; defaults give the standard deterministic suite."""

    k_lo: int = -128
    k_hi: int = 128
    n_values: tuple[int, ...] = (8, 16, 32, 64)
    n_random: int = 200
    random_max_len: int = 16
    seed: int = 0x5EED


@dataclass(frozen=True)
class ProbeResult:
    lam: float
    theta: float
    min_ratio: float
    residuals: tuple[tuple[int, float], ...]
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if self.min_ratio < 0:
            raise ValueError("min_ratio must be nonnegative")
        ns = [n for n, _ in self.residuals]
        if ns != sorted(set(ns)):
            raise ValueError("residual entries must have strictly increasing n")


def _ratio(space: SpaceSpec, lam: float, a: Seq) -> float:
    return block_norm(space, shift_minus(a, lam)) / block_norm(space, a)


def residual_curve(
    space: SpaceSpec,
    lam: float,
    n_list: Sequence[int],
    k_search: Sequence[int],
) -> ProbeResult:
    """Best window residual per window size n.

    For each n and window start k the candidates are the geometric window's
    one-step ratio and the squared window's better of first- and second-step
    ratios; the curve records the minimum over k with its argmin.
    """
    if not lam > 0:
        raise ValueError(f"positive lam required, got {lam}")
    ks = sorted(set(int(k) for k in k_search))
    if not ks:
        raise ValueError("empty k_search")
    residuals: list[tuple[int, float]] = []
    argmin: dict[int, dict] = {}
    for n in sorted(set(int(n) for n in n_list)):
        best = math.inf
        best_k = ks[0]
        best_kind = "geometric"
        for k in ks:
            g = geometric_window(lam, k, n)
            r_geo = _ratio(space, lam, g)
            if r_geo < best:
                best, best_k, best_kind = r_geo, k, "geometric"
            sq = squared_window(lam, k, n)
            t1 = shift_minus(sq, lam)
            r1 = block_norm(space, t1) / block_norm(space, sq)
            r2 = block_norm(space, shift_minus(t1, lam)) / block_norm(space, t1)
            r_sq = min(r1, r2)
            if r_sq < best:
                best, best_k, best_kind = r_sq, k, "squared"
        residuals.append((n, best))
        argmin[n] = {"k": best_k, "construction": best_kind}
    min_ratio = min(r for _, r in residuals)
    return ProbeResult(
        lam,
        math.log2(lam),
        min_ratio,
        tuple(residuals),
        meta={"argmin": argmin, "k_search": [ks[0], ks[-1]]},
    )


def _random_probes(cfg: ProbeConfig, lam_index: int) -> list[Seq]:
    out = []
    for i in range(cfg.n_random):
        rng = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence((cfg.seed, lam_index, i)))
        )
        length = int(rng.integers(1, cfg.random_max_len + 1))
        start = int(rng.integers(cfg.k_lo, cfg.k_hi - length + 2))
        vals = rng.standard_normal(length)
        seq = Seq({start + j: float(v) for j, v in enumerate(vals)})
        if not seq.is_zero:
            out.append(seq)
    return out


def probe_lower_bound(
    space: SpaceSpec,
    lam: float,
    cfg: ProbeConfig = ProbeConfig(),
    ix: Optional[IndexSet] = None,
    lam_index: int = 0,
) -> ProbeResult:
    """Minimum of ||(shift - lam) a|| / ||a|| over the standard probe suite.

    The suite contains unit vectors across the window, geometric and squared
    windows at rates lam and (when ix is given) 2**alpha and 2**beta, and
    seeded random finite sequences.  The result upper-bounds the operator's
    lower norm bound; small values are eigenvalue evidence.
    """
    if not lam > 0:
        raise ValueError(f"positive lam required, got {lam}")
    best = math.inf
    best_probe = None

    for k in range(cfg.k_lo, cfg.k_hi + 1):
        r = _ratio(space, lam, Seq.unit(k))
        if r < best:
            best, best_probe = r, ("unit", k)

    rates = [lam]
    if ix is not None:
        rates += [2.0**ix.alpha, 2.0**ix.beta]
    rates = sorted(set(rates))

    per_n_best: dict[int, float] = {n: math.inf for n in cfg.n_values}
    for rate in rates:
        for n in sorted(cfg.n_values):
            for k in range(cfg.k_lo, cfg.k_hi + 1):
                g = geometric_window(rate, k, n)
                r = _ratio(space, lam, g)
                per_n_best[n] = min(per_n_best[n], r)
                if r < best:
                    best, best_probe = r, ("geometric", rate, k, n)
                sq = squared_window(rate, k, n)
                t1 = shift_minus(sq, lam)
                r1 = block_norm(space, t1) / block_norm(space, sq)
                r2 = block_norm(space, shift_minus(t1, lam)) / block_norm(space, t1)
                r = min(r1, r2)
                per_n_best[n] = min(per_n_best[n], r)
                if r < best:
                    best, best_probe = r, ("squared", rate, k, n)

    for i, seq in enumerate(_random_probes(cfg, lam_index)):
        r = _ratio(space, lam, seq)
        if r < best:
            best, best_probe = r, ("random", i)

    residuals = tuple((n, per_n_best[n]) for n in sorted(cfg.n_values))
    return ProbeResult(
        lam,
        math.log2(lam),
        best,
        residuals,
        meta={"best_probe": best_probe, "suite": "standard"},
    )


@dataclass(frozen=True)
class FunctionalSumTest:
    converged: bool
    partial: float
    last_increment: float


def functional_bound_test(w: WeightSeq, lam: float, M: int) -> FunctionalSumTest:
    """Partial sums of sum_{|k| <= M} lam**k / s_k.

    Bounded sums mean the coefficient functional sum_k lam**k a_k is bounded
    on the weighted lattice, which is what makes the codimension-one image
    closed.  Convergence = last increment below 1e-9 * partial.
    """
    if M < 1:
        raise ValueError(f"need M >= 1, got {M}")
    if w.k_min > -M or w.k_max < M:
        raise ValueError(f"M={M} outside weight window [{w.k_min}, {w.k_max}]")
    if not lam > 0:
        raise ValueError(f"positive lam required, got {lam}")
    partial = 1.0 / w.get(0)
    increment = partial
    for m in range(1, M + 1):
        increment = lam**m / w.get(m) + lam**-m / w.get(-m)
        partial += increment
    return FunctionalSumTest(
        converged=increment < _CONVERGED_REL * partial,
        partial=partial,
        last_increment=increment,
    )


def kernel_witness_curve(
    space: SpaceSpec, lam: float, m_values: Sequence[int]
) -> list[tuple[int, float]]:
    """Norms of the truncated kernel candidate sum_{|n| <= M} lam**(-n) e_n."""
    if not lam > 0:
        raise ValueError(f"positive lam required, got {lam}")
    out = []
    for M in sorted(set(int(m) for m in m_values)):
        a = Seq({n: lam ** (-n) for n in range(-M, M + 1)})
        out.append((M, block_norm(space, a)))
    return out


def range_identity_check(a: Seq, lam: float) -> float:
    """Relative residual of sum_k lam**k * ((shift - lam) a)_k = 0."""
    if not lam > 0:
        raise ValueError(f"positive lam required, got {lam}")
    b = shift_minus(a, lam)
    total = sum(lam**k * v for k, v in b.items())
    scale = sum(lam**k * abs(v) for k, v in a.items())
    return abs(total) / max(1.0, scale)
