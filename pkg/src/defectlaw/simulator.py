"""Constrained-ensemble simulator: a brute-force oracle for the analysis pipeline.

Synthetic component populations are drawn with alphabet sizes following
P(a) proportional to a^(-beta) (exact discrete inverse-CDF sampling), token
counts assigned by a configurable rule, and defects injected as Poisson
counts with mean proportional to each component's information content. A
Metropolis walker redistributes a fixed defect total toward the
minimum-density-cost distribution with weight exp(-beta * d/t) per
component, conserving the total exactly at every step.

Randomness comes from numpy's PCG64 generator; every entry point takes an
integer seed and is reproducible given it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from .defects import DefectRecord
from .metrics import ComponentMetrics, information_content

DEFAULT_TOKEN_FACTOR = 10.0


@dataclass
class EnsembleSpec:
    """Parameters of a synthetic component population.

    Token counts default to t = token_factor * a (rounded); pass ``t_of_a``
    to override. The rule is applied to each sampled alphabet size in
    component order and must return an integer t >= a.
    """

    M: int
    beta: float
    a_min: int = 2
    a_max: int = 1024
    token_factor: float = DEFAULT_TOKEN_FACTOR
    defect_rate: float = 0.0
    seed: int = 0
    t_of_a: Callable[[int], int] | None = None

    def __post_init__(self) -> None:
        if self.M < 1:
            raise ValueError(f"M must be >= 1, got {self.M}")
        if self.beta <= 0:
            raise ValueError(f"beta must be > 0, got {self.beta}")
        if not 2 <= self.a_min <= self.a_max:
            raise ValueError(
                f"need 2 <= a_min <= a_max, got a_min={self.a_min}, a_max={self.a_max}"
            )
        if self.token_factor < 1.0:
            raise ValueError(f"token_factor must be >= 1, got {self.token_factor}")
        if self.defect_rate < 0:
            raise ValueError(f"defect_rate must be >= 0, got {self.defect_rate}")

    def tokens_for(self, a: int) -> int:
        t = self.t_of_a(a) if self.t_of_a is not None else int(round(self.token_factor * a))
        if t < a:
            raise ValueError(f"token rule produced t={t} < a={a}")
        return t


@dataclass
class EnsembleSample:
    """A sampled synthetic system plus its realized conserved totals."""

    components: list[ComponentMetrics]
    defects: list[DefectRecord] = field(default_factory=list)
    realized_T: int = 0
    realized_I: float = 0.0


def partition_function(beta: float, alphabet_values: Sequence[int]) -> float:
    """Normalizing sum of the constrained distribution: sum of a^(-beta)."""
    if len(alphabet_values) == 0:
        raise ValueError("partition function of an empty alphabet list")
    if any(a < 1 for a in alphabet_values):
        raise ValueError("alphabet values must be >= 1")
    return float(sum(a ** -beta for a in alphabet_values))


def make_sample(components: list[ComponentMetrics]) -> EnsembleSample:
    """Wrap explicit components into a sample with consistent totals."""
    return EnsembleSample(
        components=components,
        realized_T=sum(m.t for m in components),
        realized_I=sum(m.info for m in components),
    )


def sample_powerlaw(spec: EnsembleSpec) -> EnsembleSample:
    """Draw M components with alphabet sizes from P(a) = a^(-beta) / Q.

    Sampling inverts the exact discrete CDF over a_min..a_max, so small
    ranges are reproduced exactly rather than approximated by a continuous
    law. Deterministic given spec.seed.
    """
    values = np.arange(spec.a_min, spec.a_max + 1)
    weights = values.astype(float) ** -spec.beta
    cdf = np.cumsum(weights)
    cdf /= cdf[-1]
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    draws = rng.random(spec.M)
    alphabet = values[np.searchsorted(cdf, draws, side="left")]

    width = max(6, len(str(spec.M)))
    components = []
    for i, a in enumerate(alphabet):
        a = int(a)
        t = spec.tokens_for(a)
        components.append(
            ComponentMetrics(f"sim-{i:0{width}d}", t, a, information_content(t, a))
        )
    return make_sample(components)


def inject_defects(
    sample: EnsembleSample, defect_rate: float, seed: int
) -> list[DefectRecord]:
    """Poisson defect counts with mean defect_rate * info per component.

    The mean follows the equilibrium law exactly; the realization is noisy,
    as real defect measurements are. Components with zero information
    content always receive zero defects.
    """
    if defect_rate < 0:
        raise ValueError(f"defect_rate must be >= 0, got {defect_rate}")
    rng = np.random.Generator(np.random.PCG64(seed))
    means = defect_rate * np.array([m.info for m in sample.components])
    counts = rng.poisson(means)
    return [
        DefectRecord(m.id, int(d)) for m, d in zip(sample.components, counts)
    ]


def _initial_assignment(M: int, total_D: int) -> np.ndarray:
    """Spread total_D defects as evenly as integer counts allow."""
    base, extra = divmod(total_D, M)
    d = np.full(M, base, dtype=np.int64)
    d[:extra] += 1
    return d


def metropolis_chain(
    sample: EnsembleSample,
    total_D: int,
    beta: float,
    steps: int,
    seed: int,
) -> Iterator[np.ndarray]:
    """Metropolis walk over defect assignments with the total held fixed.

    Each step proposes moving one defect from component i to component j,
    both chosen uniformly, and accepts with probability
    min(1, exp(beta/t_i - beta/t_j)), the standard ratio for the target
    weight prod_i exp(-beta * d_i / t_i). The proposal is symmetric, so the
    chain's stationary distribution over defect compositions is exactly
    that weight, and sum(d) == total_D after every step by construction.

    Yields the live count vector after each step; copy it before storing.
    """
    if total_D < 0:
        raise ValueError(f"total_D must be >= 0, got {total_D}")
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    M = len(sample.components)
    if M == 0:
        raise ValueError("cannot equilibrate an empty sample")
    d = _initial_assignment(M, total_D)
    cost = np.array([beta / m.t for m in sample.components])
    rng = np.random.Generator(np.random.PCG64(seed))

    chunk = 65536
    done = 0
    while done < steps:
        block = min(chunk, steps - done)
        pairs = rng.integers(0, M, size=(block, 2))
        uniforms = rng.random(block)
        for k in range(block):
            i, j = pairs[k]
            if i != j and d[i] > 0:
                log_ratio = cost[i] - cost[j]
                if log_ratio >= 0.0 or uniforms[k] < math.exp(log_ratio):
                    d[i] -= 1
                    d[j] += 1
            yield d
        done += block


def metropolis_equilibrate(
    sample: EnsembleSample,
    total_D: int,
    beta: float,
    steps: int,
    seed: int,
) -> list[DefectRecord]:
    """Final defect assignment after ``steps`` Metropolis moves.

    steps=0 returns the even initial assignment unchanged.
    """
    if not sample.components:
        raise ValueError("cannot equilibrate an empty sample")
    d = _initial_assignment(len(sample.components), total_D)
    for d in metropolis_chain(sample, total_D, beta, steps, seed):
        pass
    return [
        DefectRecord(m.id, int(count)) for m, count in zip(sample.components, d)
    ]
