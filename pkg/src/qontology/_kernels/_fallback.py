"""Pure-Python reference implementation of the hot kernels.

Both backends expose the same two functions with identical semantics:

``measurement_block(n, d, s)``
    Flat row-major d*d table whose row ``j`` is the component vector of the
    measurement direction for outcome ``j`` at sub-setting ``s`` (``1 <= s <=
    2n - 1``), evaluated from the closed form.  Raises ``ValueError`` when a
    component denominator falls below 1e-9 in magnitude; callers fall back to
    the explicit matrix-power route in that case.

``amplitude_table(state, dim_a, dim_b, vec_a, n_a, vec_b, n_b)``
    Flat row-major n_a*n_b table of transition amplitudes
    ``<u_x (x) w_y | state>`` for a bipartite state of shape dim_a*dim_b and
    two stacks of direction vectors (flat, row-major).

The compiled extension in ``_core.pyx`` mirrors this module loop for loop.
"""

from __future__ import annotations

import cmath
import math

BACKEND_NAME = "pure"

_DENOM_FLOOR = 1e-9


def measurement_block(n: int, d: int, s: int) -> list[complex]:
    if n < 1 or d < 2 or s < 1 or s >= 2 * n:
        raise ValueError("measurement_block: index out of range")
    shift = s / (2.0 * n)
    num = 1.0 - cmath.exp(1j * math.pi * s / n)
    step = 2.0 * math.pi / d
    out = [0j] * (d * d)
    for j in range(d):
        base = j * d
        for m in range(d):
            den = 1.0 - cmath.exp(1j * step * (m + shift - j))
            if abs(den) < _DENOM_FLOOR:
                raise ValueError("measurement_block: vanishing denominator")
            out[base + m] = num / (d * den)
    return out


def amplitude_table(
    state,
    dim_a: int,
    dim_b: int,
    vec_a,
    n_a: int,
    vec_b,
    n_b: int,
) -> list[complex]:
    if len(state) != dim_a * dim_b:
        raise ValueError("amplitude_table: state length mismatch")
    if len(vec_a) != n_a * dim_a or len(vec_b) != n_b * dim_b:
        raise ValueError("amplitude_table: direction stack length mismatch")
    # Contract the first factor against the state once per x, then sweep the
    # second stack.  Scanning only nonzero state entries helps a lot for the
    # sparse diagonal states this package mostly measures.
    nonzero = [
        (i // dim_b, i % dim_b, v) for i, v in enumerate(state) if v != 0
    ]
    vb_conj = [
        [vec_b[y * dim_b + j].conjugate() for j in range(dim_b)]
        for y in range(n_b)
    ]
    out = [0j] * (n_a * n_b)
    for x in range(n_a):
        row = x * dim_a
        t = [0j] * dim_b
        for i, j, v in nonzero:
            t[j] += vec_a[row + i].conjugate() * v
        base = x * n_b
        for y in range(n_b):
            yc = vb_conj[y]
            out[base + y] = sum(tj * cj for tj, cj in zip(t, yc))
    return out
