"""Release gate: the numbered guarantees this package ships with.

Each test prints one [PASS]/[FAIL] line (visible under pytest -s; the -v test
names mirror them).  Tolerances here are contractual: loosening them is a
release decision, not a test fix.
"""

from __future__ import annotations

import cmath
import math
import random
import time

import pytest

from qontology.born import assemble_joint_conditional
from qontology.chained import evaluate_chain, required_pairs
from qontology.cli import main
from qontology.distance import (
    FiniteDistribution,
    coupling_gap,
    dirichlet_distribution,
    random_joint_table,
    tightness_distribution,
    total_variation,
    uniform_distance_bound,
    uniform_distribution,
    uniformity_certificate,
)
from qontology.linalg import (
    ComplexVector,
    build_isometry,
    inner,
    isometry_defect,
    matvec,
    vector,
)
from qontology.modelio import bundled_model_path, load_bundled
from qontology.ontology import analyze_pair, check_all, uniqueness_analysis
from qontology.states import (
    maximally_entangled_state,
    overlap,
    overlap_partner_state,
    solve_overlap,
)


def _verdict(num: int, text: str, ok: bool, detail: str = "") -> None:
    tail = f" ({detail})" if detail else ""
    print(f"[{'PASS' if ok else 'FAIL'}] gate {num}: {text}{tail}")
    assert ok, f"gate {num}: {text}{tail}"


@pytest.fixture(scope="module")
def full_sweep():
    """Measured-vs-closed-form chain sweep shared by gates 1 and 2."""
    start = time.perf_counter()
    rows = [evaluate_chain(n, d) for n in range(1, 65) for d in range(2, 17)]
    elapsed = time.perf_counter() - start
    return rows, elapsed


def test_gate_01_closed_form_equivalence(full_sweep):
    rows, elapsed = full_sweep
    worst = max(abs(r.gap - r.closed_form) for r in rows)
    ok = worst <= 1e-9 and elapsed < 60.0
    _verdict(
        1,
        "measured chain gap equals the closed form on {1..64}x{2..16}",
        ok,
        f"worst |delta| = {worst:.3e}, sweep took {elapsed:.1f}s",
    )


def test_gate_02_chain_gap_bound(full_sweep):
    rows, _ = full_sweep
    worst = max(r.gap - r.bound for r in rows)
    ok = all(r.gap <= r.bound + 1e-12 for r in rows)
    _verdict(
        2,
        "every grid point obeys the pi^2/6n ceiling",
        ok,
        f"worst gap - bound = {worst:.3e}",
    )


def test_gate_03_overlap_solver():
    rng = random.Random(1001)
    worst = 0.0
    ok = True
    for _ in range(1000):
        alpha = rng.uniform(0.0, 0.999)
        p = solve_overlap(alpha)
        residual = abs(overlap(p) - alpha)
        worst = max(worst, residual)
        ok = ok and p.k < p.d and 0.0 <= p.xi <= 1.0 and residual <= 1e-10
    exact = solve_overlap(0.0)
    ok = ok and (exact.d, exact.k, exact.xi) == (2, 1, 0.0)
    _verdict(
        3,
        "1000 random overlaps solve with k < d, xi in [0,1], residual <= 1e-10",
        ok,
        f"worst residual = {worst:.3e}",
    )


def _random_unit(rng: random.Random, dim: int) -> ComplexVector:
    raw = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(dim)]
    nrm = math.sqrt(sum(abs(z) ** 2 for z in raw))
    return vector([z / nrm for z in raw])


def _delta_norm(u: ComplexVector, v: ComplexVector) -> float:
    return math.sqrt(sum(abs(a - b) ** 2 for a, b in zip(u.entries, v.entries)))


def test_gate_04_isometry_construction():
    rng = random.Random(4002)
    worst_defect = 0.0
    worst_map = 0.0
    for _ in range(100):
        dim = rng.randint(2, 9)
        psi = _random_unit(rng, dim)
        while True:
            psi_p = _random_unit(rng, dim)
            c = inner(psi, psi_p)
            if abs(c) <= 0.98:
                break
        alpha = abs(c)
        gamma = cmath.phase(c) if alpha > 0 else 0.0
        params = solve_overlap(alpha)
        phi = maximally_entangled_state(params.d)
        phi_p = overlap_partner_state(params)
        target_p = ComplexVector(
            tuple(cmath.exp(1j * gamma) * z for z in phi_p.entries)
        )
        U = build_isometry(psi, psi_p, phi, target_p)
        worst_defect = max(worst_defect, isometry_defect(U))
        worst_map = max(worst_map, _delta_norm(matvec(U, psi), phi))
        worst_map = max(worst_map, _delta_norm(matvec(U, psi_p), target_p))
    ok = worst_defect <= 1e-12 and worst_map <= 1e-10
    _verdict(
        4,
        "100 random state pairs embed isometrically onto reference pairs",
        ok,
        f"worst U^dag U defect = {worst_defect:.3e}, worst mapping error = {worst_map:.3e}",
    )


def test_gate_05_distance_inequality_suites():
    rng = random.Random(505)
    violations = 0
    worst = float("-inf")
    for _ in range(10_000):
        size = rng.randint(2, 12)
        t = random_joint_table(rng, size)
        lhs = total_variation(
            FiniteDistribution(t.marginal_x()), FiniteDistribution(t.marginal_y())
        )
        margin = lhs - coupling_gap(t)
        worst = max(worst, margin)
        if margin > 1e-12:
            violations += 1
    for _ in range(10_000):
        size = rng.randint(2, 12)
        p = dirichlet_distribution(rng, size)
        margin = total_variation(p, uniform_distribution(size)) - uniform_distance_bound(p)
        worst = max(worst, margin)
        if margin > 1e-12:
            violations += 1
    tight_ok = True
    for d in (2, 4, 6, 8, 10, 12):
        p = tightness_distribution(d)
        dist = total_variation(p, uniform_distribution(d))
        tight_ok = tight_ok and abs(dist - 0.5) <= 1e-12
        tight_ok = tight_ok and abs(uniform_distance_bound(p) - 0.5) <= 1e-12
    ok = violations == 0 and tight_ok
    _verdict(
        5,
        "coupling and shift-bound inequalities hold on 2x10^4 random instances; "
        "staircase family saturates at 1/2",
        ok,
        f"violations = {violations}, worst margin = {worst:.3e}",
    )


def test_gate_06_uniformity_certificate():
    rng = random.Random(606)
    worst = float("-inf")
    violations = 0
    for _ in range(100):
        n = rng.randint(1, 8)
        d = rng.randint(2, 4)
        count = rng.randint(1, 8)
        pairs = required_pairs(n)
        states = [_random_unit(rng, (d + 1) * (d + 1)) for _ in range(count)]
        slices = [assemble_joint_conditional(s, n, d, pairs=pairs) for s in states]
        weights = dirichlet_distribution(rng, count).probs
        lhs, rhs = uniformity_certificate(weights, slices, n, d)
        margin = lhs - rhs
        worst = max(worst, margin)
        if margin > 1e-9:
            violations += 1
    ok = violations == 0
    _verdict(
        6,
        "mixture uniformity certificate holds on 100 random Born-mixture models",
        ok,
        f"violations = {violations}, worst lhs - rhs = {worst:.3e}",
    )


def test_gate_07_state_function_recovery():
    model = load_bundled("psi_ontic.json")
    reports, recovered = uniqueness_analysis(model, n=64)
    seen: set[str] = set()
    disjoint = True
    nonempty = True
    for label in model.psi_labels:
        pre = set(recovered.preimages[label])
        nonempty = nonempty and bool(pre)
        disjoint = disjoint and not (pre & seen)
        seen |= pre
    own_exact = all(recovered.own_measure[l] == 1.0 for l in model.psi_labels)
    cross_exact = all(v == 0.0 for v in recovered.cross_measure.values())
    ok = disjoint and nonempty and own_exact and cross_exact and not recovered.unmapped
    _verdict(
        7,
        "bundled rich model at n=64 recovers a state function with exact measures",
        ok,
        f"preimages = {dict(recovered.preimages)}",
    )


def test_gate_08_counterexample_models(capsys):
    static = load_bundled("constant_lambda.json")
    skew = load_bundled("correlated_settings.json")
    only_completeness = check_all(static).failing(1e-9) == ("completeness",)
    only_free_choice = check_all(skew).failing(1e-9) == ("free_choice",)

    rc_static = main(["model-check", "--model", str(bundled_model_path("constant_lambda.json"))])
    err_static = capsys.readouterr().err
    rc_skew = main(["model-check", "--model", str(bundled_model_path("correlated_settings.json"))])
    err_skew = capsys.readouterr().err
    cli_ok = (
        rc_static == 1
        and "failed completeness" in err_static
        and rc_skew == 1
        and "failed free_choice" in err_skew
    )
    ok = only_completeness and only_free_choice and cli_ok
    _verdict(
        8,
        "counterexample models fail exactly their designed check, named on exit 1",
        ok,
        f"static rc = {rc_static}, skew rc = {rc_skew}",
    )


def test_gate_09_support_trend():
    model = load_bundled("psi_ontic.json")
    margins = []
    measures = []
    for n in (4, 16, 64):
        rep = analyze_pair(model, "psi2", "psi1", n)
        assert rep.alpha == pytest.approx(1.0 / math.sqrt(2.0))
        margins.append(rep.cross_measure_margin)
        measures.append(rep.measure_on_psi)
    margin_ok = all(m <= 1e-9 for m in margins)
    monotone = all(b >= a - 1e-15 for a, b in zip(measures, measures[1:]))
    final_ok = measures[-1] >= 1.0 - 1e-9
    ok = margin_ok and monotone and final_ok
    _verdict(
        9,
        "1/sqrt(2)-overlap pair: partner-exclusion margin holds and support "
        "weight climbs to 1",
        ok,
        f"margins = {[f'{m:.2e}' for m in margins]}, measures = {measures}",
    )
