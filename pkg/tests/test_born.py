from __future__ import annotations

import math
import random

import pytest

from qontology.born import (
    JointConditional,
    JointTable,
    assemble_joint_conditional,
    born_joint,
    born_joint_dense,
)
from qontology.linalg import vector
from qontology.measurements import alice_family, bob_family
from qontology.states import maximally_entangled_state


def _rand_state(rng: random.Random, dim: int):
    raw = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(dim)]
    length = math.sqrt(sum(abs(z) ** 2 for z in raw))
    return vector(z / length for z in raw)


def test_joint_table_marginals():
    t = JointTable(2, (0.1, 0.2, 0.3, 0.4))
    assert t.marginal_x() == pytest.approx((0.3, 0.7))
    assert t.marginal_y() == pytest.approx((0.4, 0.6))
    assert t.p(1, 0) == 0.3
    assert t.diagonal_sum() == pytest.approx(0.5)
    assert t.diagonal_sum(1) == pytest.approx(0.1)
    assert t.shifted_diagonal_sum(2) == pytest.approx(0.2 + 0.3)


def test_joint_table_validation():
    with pytest.raises(ValueError):
        JointTable(2, (0.5, 0.5, 0.5))  # wrong length
    with pytest.raises(ValueError):
        JointTable(2, (0.6, 0.6, -0.1, -0.1))  # negatives
    with pytest.raises(ValueError):
        JointTable(2, (0.5, 0.3, 0.1, 0.0))  # sums to 0.9


def test_born_amplitude_route_matches_dense_route():
    rng = random.Random(4)
    for n, d in ((1, 2), (2, 3), (3, 4)):
        state = _rand_state(rng, (d + 1) * (d + 1))
        for a, b in (((0, 1)), (2 * (n - 1), 2 * n - 1)):
            fam_a = alice_family(n, d, a)
            fam_b = bob_family(n, d, b)
            fast = born_joint(state, fam_a, fam_b)
            slow = born_joint_dense(state, fam_a, fam_b)
            worst = max(abs(x - y) for x, y in zip(fast.probs, slow.probs))
            assert worst < 1e-12, (n, d, a, b)


def test_born_tables_normalize():
    rng = random.Random(6)
    for d in (2, 5):
        state = _rand_state(rng, (d + 1) * (d + 1))
        t = born_joint(state, alice_family(2, d, 2), bob_family(2, d, 3))
        assert abs(sum(t.probs) - 1.0) < 1e-10


def test_entangled_marginals_are_uniform_on_block():
    d = 4
    phi = maximally_entangled_state(d)
    for a, b in ((0, 1), (2, 3)):
        t = born_joint(phi, alice_family(2, d, a), bob_family(2, d, b))
        mx = t.marginal_x()
        for x in range(d):
            assert mx[x] == pytest.approx(1.0 / d, abs=1e-12)
        assert mx[d] == pytest.approx(0.0, abs=1e-12)  # spare level never fires


def test_state_dimension_checked():
    with pytest.raises(ValueError):
        born_joint(
            maximally_entangled_state(3),
            alice_family(2, 2, 0),
            bob_family(2, 2, 1),
        )


def test_unnormalized_state_rejected():
    bad = vector([0.5] + [0] * 8)
    with pytest.raises(ValueError, match="normalized"):
        born_joint(bad, alice_family(2, 2, 0), bob_family(2, 2, 1))


def test_assemble_full_grid_and_subset():
    d, n = 2, 2
    phi = maximally_entangled_state(d)
    full = assemble_joint_conditional(phi, n, d)
    assert len(full.pairs()) == n * n
    subset = assemble_joint_conditional(phi, n, d, pairs=[(0, 1), (2, 3)])
    assert subset.pairs() == ((0, 1), (2, 3))
    with pytest.raises(KeyError):
        subset.pair(0, 3)


def test_joint_conditional_validates_settings():
    t = JointTable(3, tuple([1.0 / 9] * 9))
    with pytest.raises(ValueError):
        JointConditional(2, 2, {(1, 1): t})  # odd a-setting
    with pytest.raises(ValueError):
        JointConditional(2, 2, {(0, 1): JointTable(2, (0.25,) * 4)})  # wrong size
