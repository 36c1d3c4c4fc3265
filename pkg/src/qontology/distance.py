"""Total-variation tools and the inequalities that turn correlation gaps into
distance-from-uniform certificates."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .born import JointConditional, JointTable
from .chained import correlation_gap, required_pairs, wrap_pair

__all__ = [
    "FiniteDistribution",
    "uniform_distribution",
    "total_variation",
    "shift_distribution",
    "coupling_gap",
    "uniform_distance_bound",
    "tightness_distribution",
    "dirichlet_distribution",
    "random_joint_table",
    "uniformity_certificate",
]


@dataclass(frozen=True)
class FiniteDistribution:
    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.probs:
            raise ValueError("FiniteDistribution: empty support")
        total = 0.0
        for p in self.probs:
            if p < -1e-12 or p > 1.0 + 1e-12:
                raise ValueError(f"FiniteDistribution: entry {p} outside [0, 1]")
            total += p
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"FiniteDistribution: total {total} != 1")

    @property
    def size(self) -> int:
        return len(self.probs)


def uniform_distribution(size: int) -> FiniteDistribution:
    if size < 1:
        raise ValueError("uniform_distribution: size must be positive")
    return FiniteDistribution(tuple(1.0 / size for _ in range(size)))


def total_variation(p: FiniteDistribution, q: FiniteDistribution) -> float:
    if p.size != q.size:
        raise ValueError("total_variation: size mismatch")
    return 0.5 * sum(abs(a - b) for a, b in zip(p.probs, q.probs))


def shift_distribution(p: FiniteDistribution) -> FiniteDistribution:
    """Distribution of X + 1 (mod size) when X is distributed as p."""
    d = p.size
    return FiniteDistribution(tuple(p.probs[(x - 1) % d] for x in range(d)))


def coupling_gap(t: JointTable) -> float:
    """One minus the equal-outcome mass of a joint table.

    Any joint table couples its two marginals, so this gap upper-bounds the
    total variation between them.
    """
    return 1.0 - t.diagonal_sum()


def uniform_distance_bound(p: FiniteDistribution) -> float:
    """Upper bound on the distance from uniform in terms of shift sensitivity.

    Value: floor(d^2/4)/d times the total variation between p and its cyclic
    shift.  Tight for the half-loaded two-level staircase, see
    tightness_distribution.
    """
    d = p.size
    return ((d * d) // 4) / d * total_variation(shift_distribution(p), p)


def tightness_distribution(d: int) -> FiniteDistribution:
    """Mass 2/d on the first half of an even-sized range; saturates the bound."""
    if d < 2 or d % 2:
        raise ValueError("tightness_distribution: d must be even and >= 2")
    half = d // 2
    return FiniteDistribution(tuple(2.0 / d if x < half else 0.0 for x in range(d)))


def dirichlet_distribution(rng: random.Random, size: int) -> FiniteDistribution:
    """Flat Dirichlet sample via normalized exponentials."""
    draws = [rng.expovariate(1.0) for _ in range(size)]
    total = sum(draws)
    return FiniteDistribution(tuple(x / total for x in draws))


def random_joint_table(rng: random.Random, size: int) -> JointTable:
    draws = [rng.expovariate(1.0) for _ in range(size * size)]
    total = sum(draws)
    return JointTable(size, tuple(x / total for x in draws))


def uniformity_certificate(
    weights: Sequence[float],
    per_slice: Sequence[JointConditional | None],
    n: int,
    d: int,
) -> tuple[float, float]:
    """Certificate (lhs, rhs) that weighted slices sit near uniform marginals.

    lhs: the weighted sum over slices of the absolute deviation of the
    outcome-x marginal at setting pair (0, 2n-1) from 1/d, summed over the d
    block outcomes.  rhs: d/2 times the correlation gap of the weighted
    mixture of the slices.  The inequality lhs <= rhs holds whenever each
    slice obeys the no-signalling structure the model checks enforce.

    Slices with zero weight may be passed as None.
    """
    if len(weights) != len(per_slice):
        raise ValueError("uniformity_certificate: weights and slices differ in length")
    a0, b0 = wrap_pair(n)
    need = required_pairs(n)
    mix: dict[tuple[int, int], list[float]] = {
        pair: [0.0] * ((d + 1) * (d + 1)) for pair in need
    }
    lhs = 0.0
    for w, cond in zip(weights, per_slice):
        if w == 0.0:
            continue
        if cond is None:
            raise ValueError("uniformity_certificate: missing slice with nonzero weight")
        marg = cond.pair(a0, b0).marginal_x()
        lhs += w * sum(abs(marg[x] - 1.0 / d) for x in range(d))
        for pair in need:
            acc = mix[pair]
            for i, p in enumerate(cond.pair(*pair).probs):
                acc[i] += w * p
    tables = {pair: JointTable(d + 1, tuple(acc)) for pair, acc in mix.items()}
    rhs = 0.5 * d * correlation_gap(JointConditional(n, d, tables))
    return lhs, rhs
