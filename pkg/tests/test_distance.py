from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qontology.born import JointTable
from qontology.chained import correlation_gap_closed_form
from qontology.distance import (
    FiniteDistribution,
    coupling_gap,
    dirichlet_distribution,
    random_joint_table,
    shift_distribution,
    tightness_distribution,
    total_variation,
    uniform_distance_bound,
    uniform_distribution,
    uniformity_certificate,
)
from qontology.chained import entangled_chain_tables, required_pairs
from qontology.born import assemble_joint_conditional
from qontology.linalg import basis_vector, kron


def _dist(weights: list[float]) -> FiniteDistribution:
    total = sum(weights)
    return FiniteDistribution(tuple(w / total for w in weights))


_weights = st.lists(
    st.floats(min_value=1e-3, max_value=1.0, allow_nan=False), min_size=2, max_size=10
)


def test_total_variation_simple_values():
    p = FiniteDistribution((1.0, 0.0))
    q = FiniteDistribution((0.0, 1.0))
    assert total_variation(p, q) == 1.0
    assert total_variation(p, p) == 0.0
    u = uniform_distribution(2)
    assert total_variation(p, u) == pytest.approx(0.5)


@given(_weights)
@settings(max_examples=200)
def test_total_variation_is_symmetric_and_bounded(w):
    p = _dist(w)
    q = _dist(list(reversed(w)))
    d1 = total_variation(p, q)
    assert d1 == total_variation(q, p)
    assert 0.0 <= d1 <= 1.0


@given(_weights, _weights, _weights)
@settings(max_examples=200)
def test_total_variation_triangle(w1, w2, w3):
    if not (len(w1) == len(w2) == len(w3)):
        return
    p, q, r = _dist(w1), _dist(w2), _dist(w3)
    assert total_variation(p, r) <= total_variation(p, q) + total_variation(q, r) + 1e-12


def test_shift_rotates_forward():
    p = FiniteDistribution((0.5, 0.3, 0.2))
    s = shift_distribution(p)
    assert s.probs == (0.2, 0.5, 0.3)


@given(_weights)
@settings(max_examples=200)
def test_coupling_bounds_marginal_distance(w):
    # build a joint table from an outer product perturbed toward the diagonal
    size = len(w)
    rng = random.Random(sum(int(x * 1e6) for x in w) % (2**32))
    t = random_joint_table(rng, size)
    lhs = total_variation(
        FiniteDistribution(t.marginal_x()), FiniteDistribution(t.marginal_y())
    )
    assert lhs <= coupling_gap(t) + 1e-12


def test_coupling_gap_tight_on_diagonal_table():
    t = JointTable(3, (0.2, 0, 0, 0, 0.5, 0, 0, 0, 0.3))
    assert coupling_gap(t) == pytest.approx(0.0)


@given(_weights)
@settings(max_examples=200)
def test_shift_bound_dominates_uniform_distance(w):
    p = _dist(w)
    lhs = total_variation(p, uniform_distribution(p.size))
    assert lhs <= uniform_distance_bound(p) + 1e-12


def test_bulk_random_suites():
    rng = random.Random(99)
    for _ in range(2000):
        size = rng.randint(2, 12)
        t = random_joint_table(rng, size)
        lhs = total_variation(
            FiniteDistribution(t.marginal_x()), FiniteDistribution(t.marginal_y())
        )
        assert lhs <= coupling_gap(t) + 1e-12
        p = dirichlet_distribution(rng, size)
        tv = total_variation(p, uniform_distribution(size))
        assert tv <= uniform_distance_bound(p) + 1e-12


def test_tightness_family():
    for d in (2, 4, 6, 8, 10, 12):
        p = tightness_distribution(d)
        tv = total_variation(p, uniform_distribution(d))
        assert abs(tv - 0.5) <= 1e-12
        assert abs(uniform_distance_bound(p) - tv) <= 1e-12
    with pytest.raises(ValueError):
        tightness_distribution(5)


def test_tightness_shift_distance_frozen():
    p = tightness_distribution(6)
    assert total_variation(shift_distribution(p), p) == pytest.approx(
        1.0 / 3.0, abs=1e-12
    )


def test_certificate_on_entangled_slice():
    # a single quantum slice has exactly uniform block marginals
    for n, d in ((2, 2), (3, 3)):
        cond = entangled_chain_tables(n, d)
        lhs, rhs = uniformity_certificate([1.0], [cond], n, d)
        assert lhs <= 1e-10
        assert rhs == pytest.approx(
            0.5 * d * correlation_gap_closed_form(n, d), abs=1e-9
        )
        assert lhs <= rhs + 1e-12


def test_certificate_on_mixed_slices():
    # second slice from a fully uncorrelated product state; the mixture still
    # obeys the certificate
    n, d = 2, 2
    quantum = entangled_chain_tables(n, d)
    product = kron(basis_vector(d + 1, 0), basis_vector(d + 1, 0))
    flat = assemble_joint_conditional(product, n, d, pairs=required_pairs(n))
    lhs, rhs = uniformity_certificate([0.6, 0.4], [quantum, flat], n, d)
    assert lhs <= rhs + 1e-12
    assert lhs > 0.1  # the product slice really is far from uniform


def test_certificate_argument_checks():
    n, d = 2, 2
    cond = entangled_chain_tables(n, d)
    with pytest.raises(ValueError):
        uniformity_certificate([1.0, 0.5], [cond], n, d)
    with pytest.raises(ValueError):
        uniformity_certificate([1.0], [None], n, d)


def test_distribution_validation():
    with pytest.raises(ValueError):
        FiniteDistribution((0.5, 0.4))
    with pytest.raises(ValueError):
        FiniteDistribution((1.5, -0.5))
    with pytest.raises(ValueError):
        uniform_distribution(0)
