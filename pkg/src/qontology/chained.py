"""Chained correlation gap: definition, closed form on the entangled state,
and the large-n bound.

The gap at chain length n over d outcomes reads off 2n setting pairs: every
adjacent pair (|a - b| = 1, giving 2n - 1 terms) scores the probability of
equal outcomes, and the wrap pair (0, 2n - 1) scores outcomes shifted by one
(mod d).  Perfect correlations drive the gap to zero; small gaps force
near-uniform outcome marginals, which is what the ontology layer exploits.
Only outcomes below d enter the sums; the spare level d never fires on the
reference states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .born import JointConditional, assemble_joint_conditional
from .states import maximally_entangled_state

__all__ = [
    "adjacent_pairs",
    "wrap_pair",
    "required_pairs",
    "correlation_gap",
    "correlation_gap_closed_form",
    "quantum_bound",
    "entangled_chain_tables",
    "ChainRow",
    "evaluate_chain",
]


def adjacent_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """The 2n - 1 setting pairs at distance one, in increasing-a order."""
    if n < 1:
        raise ValueError("adjacent_pairs: n must be positive")
    out = [(0, 1)]
    for a in range(2, 2 * n, 2):
        out.append((a, a - 1))
        out.append((a, a + 1))
    return tuple(out)


def wrap_pair(n: int) -> tuple[int, int]:
    return (0, 2 * n - 1)


def required_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """Distinct setting pairs the gap reads (the wrap coincides with (0,1) at n=1)."""
    seen = dict.fromkeys(adjacent_pairs(n))
    seen[wrap_pair(n)] = None
    return tuple(seen)


def correlation_gap(cond: JointConditional) -> float:
    """Evaluate the gap on assembled tables; all required pairs must be present."""
    n, d = cond.n, cond.d
    total = 2.0 * n
    total -= cond.pair(*wrap_pair(n)).shifted_diagonal_sum(d)
    for a, b in adjacent_pairs(n):
        total -= cond.pair(a, b).diagonal_sum(d)
    return total


def correlation_gap_closed_form(n: int, d: int) -> float:
    """Gap of the d-level entangled state: 2n (1 - sin^2(pi/2n) / (d^2 sin^2(pi/2dn)))."""
    if n < 1 or d < 2:
        raise ValueError("correlation_gap_closed_form: need n >= 1 and d >= 2")
    s_top = math.sin(math.pi / (2 * n))
    s_bot = math.sin(math.pi / (2 * d * n))
    return 2.0 * n * (1.0 - (s_top * s_top) / (d * d * s_bot * s_bot))


def quantum_bound(n: int) -> float:
    """Dimension-free ceiling pi^2 / 6n for the entangled-state gap."""
    if n < 1:
        raise ValueError("quantum_bound: n must be positive")
    return math.pi * math.pi / (6.0 * n)


def entangled_chain_tables(n: int, d: int) -> JointConditional:
    """Born tables of the entangled state on exactly the pairs the gap reads."""
    return assemble_joint_conditional(
        maximally_entangled_state(d), n, d, pairs=required_pairs(n)
    )


@dataclass(frozen=True)
class ChainRow:
    n: int
    d: int
    gap: float
    closed_form: float
    bound: float

    @property
    def margin(self) -> float:
        return self.bound - self.gap


def evaluate_chain(n: int, d: int) -> ChainRow:
    """Measured gap, closed form and bound for one (n, d) cell."""
    gap = correlation_gap(entangled_chain_tables(n, d))
    return ChainRow(n, d, gap, correlation_gap_closed_form(n, d), quantum_bound(n))
