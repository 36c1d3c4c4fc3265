"""Bipartite reference states and the overlap-parameter solver.

Both states live on a (d+1) x (d+1) lattice: coordinates 0..d-1 carry the
correlated block the chained measurements probe, coordinate d is a spare
level used only by the partner construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .linalg import ComplexVector

__all__ = [
    "OverlapParams",
    "solve_overlap",
    "overlap",
    "maximally_entangled_state",
    "overlap_partner_state",
]


@dataclass(frozen=True)
class OverlapParams:
    """Discrete parameters (d, k, xi) realizing a prescribed state overlap."""

    d: int
    k: int
    xi: float

    def __post_init__(self) -> None:
        if self.d < 2:
            raise ValueError("OverlapParams: d must be at least 2")
        if not 1 <= self.k < self.d:
            raise ValueError("OverlapParams: k must satisfy 1 <= k < d")
        if not 0.0 <= self.xi <= 1.0:
            raise ValueError("OverlapParams: xi must lie in [0, 1]")


# Relative slack applied before taking ceilings: the exact ratios sit on
# integer boundaries for many closed-form alphas (e.g. 1/sqrt(2) gives a
# ratio of 2 up to one ulp) and a bare ceil would jump a whole level.
_CEIL_SLACK = 1e-9


def _guarded_ceil(x: float) -> int:
    return math.ceil(x - _CEIL_SLACK * max(1.0, abs(x)))


def solve_overlap(alpha: float) -> OverlapParams:
    """Smallest-d parameters (d, k, xi) whose partner state has overlap alpha.

    d = ceil(1 / (1 - alpha^2)), k = ceil(alpha^2 * d), and xi solves
    (xi + k - 1) / sqrt(k d) = alpha exactly.  alpha = 0 returns (2, 1, 0).
    """
    if not 0.0 <= alpha < 1.0:
        raise ValueError("solve_overlap: alpha must lie in [0, 1)")
    if alpha == 0.0:
        return OverlapParams(2, 1, 0.0)
    d = max(2, _guarded_ceil(1.0 / (1.0 - alpha * alpha)))
    k = max(1, _guarded_ceil(alpha * alpha * d))
    xi = alpha * math.sqrt(k * d) - k + 1
    # Float noise can push xi one ulp outside [0, 1]; the solver guarantees
    # the exact value lies inside, so clamp.
    xi = min(1.0, max(0.0, xi))
    return OverlapParams(d, k, xi)


def overlap(params: OverlapParams) -> float:
    """Overlap (xi + k - 1) / sqrt(k d) realized by the partner pair."""
    return (params.xi + params.k - 1) / math.sqrt(params.k * params.d)


def maximally_entangled_state(d: int) -> ComplexVector:
    """Uniform superposition of |j>|j> over j < d on the (d+1)^2 lattice."""
    if d < 2:
        raise ValueError("maximally_entangled_state: d must be at least 2")
    big = d + 1
    amp = 1.0 / math.sqrt(d)
    out = [0j] * (big * big)
    for j in range(d):
        out[j * big + j] = amp
    return ComplexVector(tuple(out))


def overlap_partner_state(params: OverlapParams) -> ComplexVector:
    """Partner state with prescribed overlap against the entangled state.

    Amplitude xi/sqrt(k) on |0>|0>, 1/sqrt(k) on |j>|j> for 1 <= j < k, and
    sqrt(1 - xi^2)/sqrt(k) on the spare diagonal cell |d>|d>.  Normalized by
    construction; its inner product with maximally_entangled_state(d) is
    (xi + k - 1)/sqrt(k d).
    """
    d, k, xi = params.d, params.k, params.xi
    big = d + 1
    root_k = math.sqrt(k)
    out = [0j] * (big * big)
    out[0] = xi / root_k
    for j in range(1, k):
        out[j * big + j] = 1.0 / root_k
    out[d * big + d] = math.sqrt(max(0.0, 1.0 - xi * xi)) / root_k
    return ComplexVector(tuple(out))
