"""Outcome statistics of product projective measurements on a pure state."""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Sequence

from . import _kernels
from .linalg import ComplexVector, inner, kron_matrix, matvec, norm
from .measurements import (
    ProjectorFamily,
    alice_family,
    alice_settings,
    bob_family,
    bob_settings,
)

__all__ = [
    "JointTable",
    "JointConditional",
    "born_joint",
    "born_joint_dense",
    "assemble_joint_conditional",
]

_NEG_SLACK = 1e-12
_NORM_SLACK = 1e-10


@dataclass(frozen=True)
class JointTable:
    """Square probability table over (x, y), flat row-major in x."""

    outcomes: int
    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.probs) != self.outcomes * self.outcomes:
            raise ValueError("JointTable: length does not match outcome count")
        total = 0.0
        for p in self.probs:
            if p < -_NEG_SLACK or p > 1.0 + _NEG_SLACK:
                raise ValueError(f"JointTable: entry {p} outside [0, 1]")
            total += p
        if abs(total - 1.0) > _NORM_SLACK:
            raise ValueError(f"JointTable: total probability {total} != 1")

    def p(self, x: int, y: int) -> float:
        return self.probs[x * self.outcomes + y]

    def marginal_x(self) -> tuple[float, ...]:
        n = self.outcomes
        return tuple(sum(self.probs[x * n : (x + 1) * n]) for x in range(n))

    def marginal_y(self) -> tuple[float, ...]:
        n = self.outcomes
        return tuple(sum(self.probs[y::n]) for y in range(n))

    def diagonal_sum(self, limit: int | None = None) -> float:
        """Sum of p(x, x) for x below limit (default: all outcomes)."""
        lim = self.outcomes if limit is None else limit
        return sum(self.p(x, x) for x in range(lim))

    def shifted_diagonal_sum(self, limit: int) -> float:
        """Sum of p(x, x+1 mod limit) for x below limit."""
        return sum(self.p(x, (x + 1) % limit) for x in range(limit))


def _clamp(p: float) -> float:
    if p < 0.0:
        return 0.0
    if p > 1.0:
        return 1.0
    return p


def _check_state(state: ComplexVector, fam_a: ProjectorFamily, fam_b: ProjectorFamily) -> None:
    if state.dim != fam_a.dim * fam_b.dim:
        raise ValueError("born: state dimension does not match the two families")
    if abs(norm(state) - 1.0) > 1e-8:
        raise ValueError("born: state is not normalized")


def born_joint(state: ComplexVector, fam_a: ProjectorFamily, fam_b: ProjectorFamily) -> JointTable:
    """Joint outcome table via transition amplitudes (rank-one fast path)."""
    _check_state(state, fam_a, fam_b)
    na, nb = fam_a.dim, fam_b.dim
    amp = _kernels.amplitude_table(
        state.entries, fam_a.dim, fam_b.dim, fam_a.flat, na, fam_b.flat, nb
    )
    probs = tuple(_clamp(abs(z) ** 2) for z in amp)
    return JointTable(na, probs)


def born_joint_dense(
    state: ComplexVector, fam_a: ProjectorFamily, fam_b: ProjectorFamily
) -> JointTable:
    """Same table from explicit projector quadratic forms.

    Slow independent route kept as the oracle for the amplitude path.  The
    quadratic form of a projector is real; an imaginary part above 1e-12
    indicates a broken family and raises.
    """
    _check_state(state, fam_a, fam_b)
    na = fam_a.dim
    probs: list[float] = []
    for x in fam_a.outcomes():
        Px = fam_a.projector(x)
        for y in fam_b.outcomes():
            W = kron_matrix(Px, fam_b.projector(y))
            val = inner(state, matvec(W, state))
            if abs(val.imag) > 1e-12:
                raise ValueError("born_joint_dense: non-real quadratic form")
            probs.append(_clamp(val.real))
    return JointTable(na, tuple(probs))


@dataclass(frozen=True)
class JointConditional:
    """Family of joint tables indexed by setting pairs (a, b)."""

    n: int
    d: int
    tables: Mapping[tuple[int, int], JointTable]

    def __post_init__(self) -> None:
        object.__setattr__(self, "tables", MappingProxyType(dict(self.tables)))
        big = self.d + 1
        a_ok = set(alice_settings(self.n))
        b_ok = set(bob_settings(self.n))
        for (a, b), t in self.tables.items():
            if a not in a_ok or b not in b_ok:
                raise ValueError(f"JointConditional: setting pair ({a}, {b}) out of range")
            if t.outcomes != big:
                raise ValueError("JointConditional: table outcome count mismatch")

    def pair(self, a: int, b: int) -> JointTable:
        try:
            return self.tables[(a, b)]
        except KeyError:
            raise KeyError(f"JointConditional: pair ({a}, {b}) not assembled") from None

    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.tables))


def assemble_joint_conditional(
    state: ComplexVector,
    n: int,
    d: int,
    pairs: Sequence[tuple[int, int]] | None = None,
) -> JointConditional:
    """Outcome tables of the chained families on a state, one per (a, b).

    ``pairs=None`` assembles the full setting grid; passing the subset that a
    figure of merit actually reads keeps large-n sweeps cheap.
    """
    if state.dim != (d + 1) * (d + 1):
        raise ValueError("assemble_joint_conditional: state dimension mismatch")
    if pairs is None:
        pairs = [(a, b) for a in alice_settings(n) for b in bob_settings(n)]
    tables: dict[tuple[int, int], JointTable] = {}
    for a, b in pairs:
        if (a, b) in tables:
            continue
        tables[(a, b)] = born_joint(state, alice_family(n, d, a), bob_family(n, d, b))
    return JointConditional(n, d, tables)
