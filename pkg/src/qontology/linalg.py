"""Self-contained complex linear algebra on plain Python numbers.

Conventions used throughout the package:

* vectors are flat tuples of ``complex``, matrices are row-major flat tuples
  with explicit ``rows``/``cols``;
* ``inner(u, v)`` conjugates the first argument;
* ``kron(u, v)`` orders components so that entry ``i * v.dim + j`` is
  ``u[i] * v[j]`` (first factor is the slow index), and ``kron_matrix``
  follows the same convention for operators.

Everything here is deliberately free of third-party numerics: the rest of the
package builds its correctness arguments on these routines, so they stay
small enough to audit by hand.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "ComplexVector",
    "ComplexMatrix",
    "vector",
    "basis_vector",
    "matrix_from_rows",
    "identity_matrix",
    "inner",
    "norm",
    "scaled",
    "kron",
    "kron_matrix",
    "matvec",
    "matmul",
    "adjoint",
    "fourier_matrix",
    "cyclic_shift",
    "fractional_shift_power",
    "build_isometry",
    "isometry_defect",
    "max_entry_delta",
]


def _check_finite(entries: tuple[complex, ...], what: str) -> None:
    for z in entries:
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise ValueError(f"{what}: non-finite entry {z!r}")


@dataclass(frozen=True)
class ComplexVector:
    """Finite-dimensional complex vector; every entry must be finite."""

    entries: tuple[complex, ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError("ComplexVector: dimension must be positive")
        _check_finite(self.entries, "ComplexVector")

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> complex:
        return self.entries[i]


@dataclass(frozen=True)
class ComplexMatrix:
    """Row-major complex matrix with explicit shape."""

    rows: int
    cols: int
    entries: tuple[complex, ...]

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError("ComplexMatrix: shape must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("ComplexMatrix: entry count does not match shape")
        _check_finite(self.entries, "ComplexMatrix")

    def at(self, r: int, c: int) -> complex:
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> tuple[complex, ...]:
        return self.entries[r * self.cols : (r + 1) * self.cols]


def vector(entries: Iterable[complex]) -> ComplexVector:
    return ComplexVector(tuple(complex(z) for z in entries))


def basis_vector(dim: int, j: int) -> ComplexVector:
    if not 0 <= j < dim:
        raise ValueError("basis_vector: index out of range")
    return ComplexVector(tuple(1 + 0j if i == j else 0j for i in range(dim)))


def matrix_from_rows(rows: Sequence[Sequence[complex]]) -> ComplexMatrix:
    ncols = len(rows[0])
    flat: list[complex] = []
    for r in rows:
        if len(r) != ncols:
            raise ValueError("matrix_from_rows: ragged rows")
        flat.extend(complex(z) for z in r)
    return ComplexMatrix(len(rows), ncols, tuple(flat))


def identity_matrix(dim: int) -> ComplexMatrix:
    return ComplexMatrix(
        dim, dim, tuple(1 + 0j if i % (dim + 1) == 0 else 0j for i in range(dim * dim))
    )


def inner(u: ComplexVector, v: ComplexVector) -> complex:
    """Hermitian inner product, conjugate-linear in the first argument."""
    if u.dim != v.dim:
        raise ValueError("inner: dimension mismatch")
    return sum(a.conjugate() * b for a, b in zip(u.entries, v.entries))


def norm(u: ComplexVector) -> float:
    return math.sqrt(sum(abs(z) ** 2 for z in u.entries))


def scaled(u: ComplexVector, c: complex) -> ComplexVector:
    return ComplexVector(tuple(c * z for z in u.entries))


def kron(u: ComplexVector, v: ComplexVector) -> ComplexVector:
    out = [0j] * (u.dim * v.dim)
    for i, a in enumerate(u.entries):
        if a == 0:
            continue
        base = i * v.dim
        for j, b in enumerate(v.entries):
            out[base + j] = a * b
    return ComplexVector(tuple(out))


def kron_matrix(A: ComplexMatrix, B: ComplexMatrix) -> ComplexMatrix:
    rows = A.rows * B.rows
    cols = A.cols * B.cols
    out = [0j] * (rows * cols)
    for i in range(A.rows):
        for j in range(A.cols):
            a = A.at(i, j)
            if a == 0:
                continue
            for k in range(B.rows):
                base = (i * B.rows + k) * cols + j * B.cols
                for l in range(B.cols):
                    out[base + l] = a * B.at(k, l)
    return ComplexMatrix(rows, cols, tuple(out))


def matvec(M: ComplexMatrix, v: ComplexVector) -> ComplexVector:
    if M.cols != v.dim:
        raise ValueError("matvec: dimension mismatch")
    ent = v.entries
    return ComplexVector(
        tuple(
            sum(m * x for m, x in zip(M.row(r), ent)) for r in range(M.rows)
        )
    )


def matmul(A: ComplexMatrix, B: ComplexMatrix) -> ComplexMatrix:
    if A.cols != B.rows:
        raise ValueError("matmul: dimension mismatch")
    out = [0j] * (A.rows * B.cols)
    for i in range(A.rows):
        arow = A.row(i)
        for k, a in enumerate(arow):
            if a == 0:
                continue
            brow = B.row(k)
            base = i * B.cols
            for j, b in enumerate(brow):
                out[base + j] += a * b
    return ComplexMatrix(A.rows, B.cols, tuple(out))


def adjoint(M: ComplexMatrix) -> ComplexMatrix:
    out = [0j] * (M.rows * M.cols)
    for r in range(M.rows):
        for c in range(M.cols):
            out[c * M.rows + r] = M.at(r, c).conjugate()
    return ComplexMatrix(M.cols, M.rows, tuple(out))


def fourier_matrix(d: int) -> ComplexMatrix:
    """Unitary discrete Fourier matrix, F[j,k] = exp(2*pi*i*j*k/d)/sqrt(d)."""
    if d < 1:
        raise ValueError("fourier_matrix: dimension must be positive")
    s = 1.0 / math.sqrt(d)
    out = [
        s * cmath.exp(2j * math.pi * j * k / d) for j in range(d) for k in range(d)
    ]
    return ComplexMatrix(d, d, tuple(out))


def cyclic_shift(d: int) -> ComplexMatrix:
    """The shift that maps basis state j to j-1 (mod d); row l has a 1 in column l+1 mod d."""
    if d < 2:
        raise ValueError("cyclic_shift: dimension must be at least 2")
    out = [0j] * (d * d)
    for l in range(d):
        out[l * d + (l + 1) % d] = 1 + 0j
    return ComplexMatrix(d, d, tuple(out))


def fractional_shift_power(d: int, t: float) -> ComplexMatrix:
    """Power t of the cyclic shift, built literally by Fourier diagonalization.

    The shift is diagonal in the Fourier basis with eigenvalues
    exp(2*pi*i*j/d), so its power t is F . diag(exp(2*pi*i*j*t/d)) . F^dag,
    assembled here with explicit matrix products.  This is the slow, obviously
    correct route; the measurement module's closed form is checked against it.
    """
    if d < 2:
        raise ValueError("fractional_shift_power: dimension must be at least 2")
    if not 0.0 <= t <= 1.0:
        raise ValueError("fractional_shift_power: exponent must lie in [0, 1]")
    F = fourier_matrix(d)
    phases = [cmath.exp(2j * math.pi * j * t / d) for j in range(d)]
    # Scale the columns of F by the eigenvalue phases, then close with F^dag.
    scaled_cols = ComplexMatrix(
        d,
        d,
        tuple(F.at(r, c) * phases[c] for r in range(d) for c in range(d)),
    )
    return matmul(scaled_cols, adjoint(F))


def _orthonormalize(
    candidate: list[complex], against: list[list[complex]], passes: int = 2
) -> tuple[list[complex], float]:
    """Project a candidate off an orthonormal set and normalize.

    Two projection passes keep the result orthogonal to working precision even
    when the candidate starts nearly inside the span.  Returns the normalized
    residual and its pre-normalization length (0.0 when fully spanned).
    """
    v = list(candidate)
    for _ in range(passes):
        for b in against:
            c = sum(x.conjugate() * y for x, y in zip(b, v))
            if c != 0:
                v = [y - c * x for x, y in zip(b, v)]
    length = math.sqrt(sum(abs(z) ** 2 for z in v))
    if length == 0.0:
        return v, 0.0
    return [z / length for z in v], length


def _complete_basis(
    seed: list[list[complex]], dim: int, count: int
) -> list[list[complex]]:
    """Extend an orthonormal seed to count orthonormal vectors in C^dim.

    Deterministic: standard basis vectors are scanned in index order and kept
    whenever their residual is not negligible.  count may be below dim; an
    isometry only needs as many range vectors as its source has dimensions.
    """
    basis = [list(b) for b in seed]
    for j in range(dim):
        if len(basis) == count:
            break
        cand = [0j] * dim
        cand[j] = 1 + 0j
        res, length = _orthonormalize(cand, basis)
        if length > 1e-6:
            basis.append(res)
    if len(basis) != count:
        raise ValueError("basis completion failed")
    return basis


_DEGENERATE_RESIDUAL = 1e-11


def build_isometry(
    psi: ComplexVector,
    psi_prime: ComplexVector,
    phi: ComplexVector,
    phi_prime: ComplexVector,
    tol: float = 1e-9,
) -> ComplexMatrix:
    """Isometry U with U psi = phi and U psi_prime = phi_prime.

    Preconditions: all four states are normalized, the target space is at
    least as large as the source space, and the two pairwise overlaps agree
    within tol (otherwise no isometry can do both mappings and a ValueError
    is raised).  The remaining action is fixed deterministically by
    completing both orthonormal pairs with standard basis vectors in index
    order, so equal inputs always produce the identical matrix.

    When psi_prime is parallel to psi (overlap magnitude 1) the second
    constraint is implied by the first and the completion is arbitrary but
    still deterministic.
    """
    m, big = psi.dim, phi.dim
    if psi_prime.dim != m or phi_prime.dim != big:
        raise ValueError("build_isometry: dimension mismatch within a pair")
    if big < m:
        raise ValueError("build_isometry: target dimension smaller than source")
    for name, v in (
        ("psi", psi),
        ("psi_prime", psi_prime),
        ("phi", phi),
        ("phi_prime", phi_prime),
    ):
        if abs(norm(v) - 1.0) > 1e-8:
            raise ValueError(f"build_isometry: {name} is not normalized")
    a_src = inner(psi, psi_prime)
    a_tgt = inner(phi, phi_prime)
    if abs(a_src - a_tgt) > tol:
        raise ValueError(
            "build_isometry: overlap mismatch "
            f"{a_src!r} vs {a_tgt!r} exceeds tol={tol}"
        )

    src_pair = [list(psi.entries)]
    tgt_pair = [list(phi.entries)]
    res_s, len_s = _orthonormalize(list(psi_prime.entries), src_pair)
    res_t, len_t = _orthonormalize(list(phi_prime.entries), tgt_pair)
    if len_s > _DEGENERATE_RESIDUAL and len_t > _DEGENERATE_RESIDUAL:
        src_pair.append(res_s)
        tgt_pair.append(res_t)
    # else: degenerate pair, the parallel component already carries the map.

    src_basis = _complete_basis(src_pair, m, m)
    tgt_basis = _complete_basis(tgt_pair, big, m)

    out = [0j] * (big * m)
    for k in range(m):
        s = src_basis[k]
        t = tgt_basis[k]
        for r in range(big):
            tr = t[r]
            if tr == 0:
                continue
            base = r * m
            for c in range(m):
                out[base + c] += tr * s[c].conjugate()
    return ComplexMatrix(big, m, tuple(out))


def isometry_defect(U: ComplexMatrix) -> float:
    """Largest entrywise deviation of U^dag U from the identity."""
    g = matmul(adjoint(U), U)
    worst = 0.0
    for r in range(g.rows):
        for c in range(g.cols):
            want = 1.0 if r == c else 0.0
            worst = max(worst, abs(g.at(r, c) - want))
    return worst


def max_entry_delta(A: ComplexMatrix, B: ComplexMatrix) -> float:
    if A.rows != B.rows or A.cols != B.cols:
        raise ValueError("max_entry_delta: shape mismatch")
    return max(abs(a - b) for a, b in zip(A.entries, B.entries))
