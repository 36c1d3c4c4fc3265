"""Projective measurement families for the chained-setting scenario.

Settings: one side measures at even sub-settings a in {0, 2, ..., 2n-2}, the
other at odd sub-settings b in {1, 3, ..., 2n-1}.  At sub-setting s the
outcome-j direction on the d-level block is the column j of the fractional
shift power t = s/(2n); for s = 0 this is the standard basis.  The second
side uses the entrywise conjugates of these directions (see bob_family).
Each family is completed to the full (d+1)-dimensional space with the spare
level |d> as its own outcome, so the projectors always resolve the identity.

The closed form for the direction components is evaluated in the kernel
backend; when a component denominator degenerates the explicit Fourier route
(fractional_shift_power) is used instead.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from . import _kernels
from .linalg import (
    ComplexMatrix,
    ComplexVector,
    adjoint,
    fractional_shift_power,
    identity_matrix,
    matmul,
    max_entry_delta,
)

__all__ = [
    "ProjectorFamily",
    "alice_settings",
    "bob_settings",
    "measurement_vector",
    "alice_family",
    "bob_family",
    "family_deviations",
]


def alice_settings(n: int) -> tuple[int, ...]:
    if n < 1:
        raise ValueError("alice_settings: n must be positive")
    return tuple(range(0, 2 * n, 2))


def bob_settings(n: int) -> tuple[int, ...]:
    if n < 1:
        raise ValueError("bob_settings: n must be positive")
    return tuple(range(1, 2 * n, 2))


@dataclass(frozen=True)
class ProjectorFamily:
    """Rank-one projective family on the (d+1)-level space.

    ``vectors[x]`` is the unit direction for outcome x; the projectors are
    their outer products.  ``flat`` is the concatenation of all direction
    entries, precomputed for the amplitude kernel.
    """

    dim: int
    vectors: tuple[ComplexVector, ...]
    flat: tuple[complex, ...]

    def outcomes(self) -> range:
        return range(self.dim)

    def projector(self, x: int) -> ComplexMatrix:
        v = self.vectors[x].entries
        return ComplexMatrix(
            self.dim,
            self.dim,
            tuple(a * b.conjugate() for a in v for b in v),
        )


def _block_rows(n: int, d: int, s: int) -> list[list[complex]]:
    """d x d direction components; closed form first, Fourier route on failure."""
    try:
        flat = _kernels.measurement_block(n, d, s)
        return [list(flat[j * d : (j + 1) * d]) for j in range(d)]
    except ValueError:
        M = fractional_shift_power(d, s / (2.0 * n))
        return [[M.at(m, j) for m in range(d)] for j in range(d)]


@functools.lru_cache(maxsize=512)
def _family(n: int, d: int, s: int, conjugate: bool) -> ProjectorFamily:
    big = d + 1
    if s == 0:
        rows = [[1 + 0j if m == j else 0j for m in range(d)] for j in range(d)]
    else:
        rows = _block_rows(n, d, s)
    vectors = []
    flat: list[complex] = []
    for j in range(d):
        ent = tuple(rows[j]) + (0j,)
        if conjugate:
            ent = tuple(z.conjugate() for z in ent)
        vectors.append(ComplexVector(ent))
        flat.extend(ent)
    spare = tuple(0j for _ in range(d)) + (1 + 0j,)
    vectors.append(ComplexVector(spare))
    flat.extend(spare)
    return ProjectorFamily(big, tuple(vectors), tuple(flat))


def measurement_vector(n: int, d: int, j: int, s: int) -> ComplexVector:
    """Unit direction for outcome j at sub-setting s, embedded in d+1 levels."""
    if n < 1 or d < 2:
        raise ValueError("measurement_vector: need n >= 1 and d >= 2")
    if not 0 <= j < d:
        raise ValueError("measurement_vector: outcome out of range")
    if not 0 <= s <= 2 * n - 1:
        raise ValueError("measurement_vector: sub-setting out of range")
    return _family(n, d, s, False).vectors[j]


def alice_family(n: int, d: int, a: int) -> ProjectorFamily:
    if a not in alice_settings(n):
        raise ValueError(f"alice_family: setting {a} not in the even range of n={n}")
    return _family(n, d, a, False)


def bob_family(n: int, d: int, b: int) -> ProjectorFamily:
    """Second-side family: the entrywise conjugate of the first-side directions.

    On the diagonal reference state, conjugating one side is what makes the
    equal-outcome mass depend on the setting difference b - a; with both
    sides unconjugated it would depend on b + a and the chain would not
    close.
    """
    if b not in bob_settings(n):
        raise ValueError(f"bob_family: setting {b} not in the odd range of n={n}")
    return _family(n, d, b, True)


def family_deviations(fam: ProjectorFamily) -> dict[str, float]:
    """Worst-case defects of the family, measured with explicit matrix arithmetic.

    Returns hermiticity, idempotence, pairwise orthogonality and completeness
    deviations (largest entry magnitude each).  Intended as the slow oracle
    the construction is tested against, not for hot paths.
    """
    projs = [fam.projector(x) for x in fam.outcomes()]
    herm = 0.0
    idem = 0.0
    for P in projs:
        herm = max(herm, max_entry_delta(P, adjoint(P)))
        idem = max(idem, max_entry_delta(matmul(P, P), P))
    ortho = 0.0
    for i in range(len(projs)):
        for j in range(i + 1, len(projs)):
            prod = matmul(projs[i], projs[j])
            ortho = max(ortho, max(abs(z) for z in prod.entries))
    total = [0j] * (fam.dim * fam.dim)
    for P in projs:
        for idx, z in enumerate(P.entries):
            total[idx] += z
    comp = max_entry_delta(
        ComplexMatrix(fam.dim, fam.dim, tuple(total)), identity_matrix(fam.dim)
    )
    return {
        "hermiticity": herm,
        "idempotence": idem,
        "orthogonality": ortho,
        "completeness": comp,
    }
