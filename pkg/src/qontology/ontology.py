"""Finite ontological models and the support analysis that recovers the state.

A model explains a catalog of preparations by a finite hidden-variable range:
each preparation fixes a prior over the range, and each hidden value fixes a
response table per setting pair.  Four checks police the hypotheses the
analysis needs:

* born consistency: priors mixed with responses reproduce the quantum tables;
* parameter independence: each side's marginal ignores the far setting;
* free choice: the declared joint over (setting, setting, hidden value)
  factorizes into its marginals;
* completeness: responses do not secretly depend on the preparation.

``analyze_pair`` then runs the uniqueness argument for one ordered catalog
pair: map the pair isometrically onto the reference entangled/partner pair,
evaluate the chained correlation gap at chain length n, certify that hidden
values supporting the first preparation answer the reference setting almost
uniformly, and collect those values into a support set whose weight under
both priors is reported.  ``recover_state_function`` intersects the support
sets over all partners into disjoint preimages, one per preparation.

Response tables are keyed by (a, b, hidden index, optional preparation
index) and stored flat in row-major (x, y) order over d + 1 outcomes.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Sequence

from .born import JointConditional, JointTable, born_joint
from .chained import correlation_gap, quantum_bound, required_pairs, wrap_pair
from .distance import uniformity_certificate
from .linalg import ComplexMatrix, ComplexVector, build_isometry, inner, matvec, norm, scaled
from .measurements import alice_family, alice_settings, bob_family, bob_settings
from .states import maximally_entangled_state, overlap_partner_state, solve_overlap

__all__ = [
    "ModelShapeError",
    "ContextMismatchError",
    "ConditionViolation",
    "FiniteOntologicalModel",
    "ModelCheckResult",
    "CHECK_NAMES",
    "uniform_setting_priors",
    "psi_ontic_model",
    "constant_lambda_model",
    "correlated_settings_model",
    "bind_to_context",
    "lambda_conditional",
    "predictive_conditional",
    "check_born_consistency",
    "check_parameter_independence",
    "check_free_choice",
    "check_completeness",
    "check_all",
    "support_threshold",
    "SupportReport",
    "analyze_pair",
    "StateFunctionResult",
    "recover_state_function",
    "uniqueness_analysis",
]


class ModelShapeError(ValueError):
    """The model's tables are missing, misshapen or incoherent."""


class ContextMismatchError(ValueError):
    """The model's declared measurement context cannot serve the request."""


CHECK_NAMES = (
    "born_consistency",
    "parameter_independence_x",
    "parameter_independence_y",
    "free_choice",
    "completeness",
)


@dataclass(frozen=True)
class ModelCheckResult:
    born_consistency: float
    parameter_independence_x: float
    parameter_independence_y: float
    free_choice: float
    completeness: float

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in CHECK_NAMES}

    def failing(self, tol: float) -> tuple[str, ...]:
        return tuple(n for n, v in self.as_dict().items() if v > tol)

    def ok(self, tol: float) -> bool:
        return not self.failing(tol)


class ConditionViolation(Exception):
    """Raised when a model breaks a hypothesis the analysis relies on."""

    def __init__(self, checks: ModelCheckResult, tol: float):
        self.checks = checks
        self.tol = tol
        self.conditions = checks.failing(tol)
        detail = ", ".join(
            f"{name}={checks.as_dict()[name]:.3e}" for name in self.conditions
        )
        super().__init__(f"model violates {detail} (tol={tol})")


ResponseKey = tuple[int, int, int, int | None]


@dataclass(frozen=True)
class FiniteOntologicalModel:
    """Immutable finite hidden-variable model over a preparation catalog."""

    n: int
    d: int
    psi_labels: tuple[str, ...]
    psi_states: tuple[ComplexVector, ...]
    lambda_labels: tuple[str, ...]
    prior: tuple[tuple[float, ...], ...]
    responses: Mapping[ResponseKey, tuple[float, ...]]
    psi_indexed: bool
    setting_prior_a: tuple[float, ...]
    setting_prior_b: tuple[float, ...]
    lambda_states: tuple[ComplexVector, ...] | None = None
    joint: tuple[Mapping[tuple[int, int, int], float], ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "responses", MappingProxyType(dict(self.responses)))
        if self.joint is not None:
            object.__setattr__(
                self, "joint", tuple(MappingProxyType(dict(j)) for j in self.joint)
            )
        _validate_model(self)

    @property
    def num_psi(self) -> int:
        return len(self.psi_labels)

    @property
    def num_lambda(self) -> int:
        return len(self.lambda_labels)

    def psi_index(self, label: str) -> int:
        try:
            return self.psi_labels.index(label)
        except ValueError:
            raise KeyError(f"unknown preparation label {label!r}") from None

    def lambda_index(self, label: str) -> int:
        try:
            return self.lambda_labels.index(label)
        except ValueError:
            raise KeyError(f"unknown hidden-value label {label!r}") from None

    def pairs_present(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted({(a, b) for (a, b, _, _) in self.responses}))

    def response_row(
        self, a: int, b: int, lam: int, psi: int | None = None
    ) -> tuple[float, ...] | None:
        key = (a, b, lam, psi if self.psi_indexed else None)
        return self.responses.get(key)

    def predictive_row(self, psi: int, a: int, b: int) -> tuple[float, ...]:
        """Prior-weighted mixture of response rows for one preparation."""
        size = (self.d + 1) * (self.d + 1)
        out = [0.0] * size
        weights = self.prior[psi]
        for lam, w in enumerate(weights):
            if w == 0.0:
                continue
            row = self.response_row(a, b, lam, psi)
            if row is None:
                raise ModelShapeError(
                    f"missing response row for pair ({a}, {b}), hidden value "
                    f"{self.lambda_labels[lam]!r}"
                    + (f", preparation {self.psi_labels[psi]!r}" if self.psi_indexed else "")
                )
            for i, p in enumerate(row):
                out[i] += w * p
        return tuple(out)


def _validate_model(m: FiniteOntologicalModel) -> None:
    if m.n < 1 or m.d < 2:
        raise ModelShapeError("model needs n >= 1 and d >= 2")
    if not m.psi_labels:
        raise ModelShapeError("empty preparation catalog")
    if len(set(m.psi_labels)) != m.num_psi:
        raise ModelShapeError("duplicate preparation labels")
    if len(m.psi_states) != m.num_psi:
        raise ModelShapeError("catalog labels and states differ in length")
    dim = m.psi_states[0].dim
    for label, s in zip(m.psi_labels, m.psi_states):
        if s.dim != dim:
            raise ModelShapeError(f"preparation {label!r} has mismatched dimension")
        if abs(norm(s) - 1.0) > 1e-8:
            raise ModelShapeError(f"preparation {label!r} is not normalized")
    if not m.lambda_labels or len(set(m.lambda_labels)) != m.num_lambda:
        raise ModelShapeError("hidden-value labels must be nonempty and unique")
    for label in m.lambda_labels:
        if "," in label:
            raise ModelShapeError("hidden-value labels must not contain commas")
    if len(m.prior) != m.num_psi:
        raise ModelShapeError("prior must have one row per preparation")
    for p, row in enumerate(m.prior):
        if len(row) != m.num_lambda:
            raise ModelShapeError("prior row length mismatch")
        total = 0.0
        for w in row:
            if w < 0.0:
                raise ModelShapeError("negative prior weight")
            total += w
        if abs(total - 1.0) > 1e-9:
            raise ModelShapeError(
                f"prior row for {m.psi_labels[p]!r} sums to {total}, not 1"
            )
    size = (m.d + 1) * (m.d + 1)
    a_ok = set(alice_settings(m.n))
    b_ok = set(bob_settings(m.n))
    indexed_seen = set()
    for (a, b, lam, psi), row in m.responses.items():
        if a not in a_ok or b not in b_ok:
            raise ModelShapeError(f"response pair ({a}, {b}) outside the setting ranges")
        if not 0 <= lam < m.num_lambda:
            raise ModelShapeError("response hidden-value index out of range")
        indexed_seen.add(psi is not None)
        if psi is not None and not 0 <= psi < m.num_psi:
            raise ModelShapeError("response preparation index out of range")
        if len(row) != size:
            raise ModelShapeError(f"response row for ({a}, {b}) has {len(row)} entries, wants {size}")
        total = 0.0
        for v in row:
            if v < -1e-12 or v > 1.0 + 1e-12:
                raise ModelShapeError(f"response probability {v} outside [0, 1]")
            total += v
        if abs(total - 1.0) > 1e-9:
            raise ModelShapeError(f"response row for ({a}, {b}) sums to {total}, not 1")
    if len(indexed_seen) > 1:
        raise ModelShapeError("cannot mix preparation-indexed and plain response keys")
    if indexed_seen == {True} and not m.psi_indexed:
        raise ModelShapeError("psi_indexed flag contradicts response keys")
    if indexed_seen == {False} and m.psi_indexed:
        raise ModelShapeError("psi_indexed flag contradicts response keys")
    for name, pri, count in (
        ("setting_prior_a", m.setting_prior_a, m.n),
        ("setting_prior_b", m.setting_prior_b, m.n),
    ):
        if len(pri) != count:
            raise ModelShapeError(f"{name} must have {count} entries")
        if any(w <= 0.0 for w in pri):
            raise ModelShapeError(f"{name} must have full support")
        if abs(sum(pri) - 1.0) > 1e-9:
            raise ModelShapeError(f"{name} does not normalize")
    if m.lambda_states is not None:
        if len(m.lambda_states) != m.num_lambda:
            raise ModelShapeError("lambda_states must cover every hidden value")
        for label, s in zip(m.lambda_labels, m.lambda_states):
            if s.dim != dim:
                raise ModelShapeError(f"backing state for {label!r} has mismatched dimension")
            if abs(norm(s) - 1.0) > 1e-8:
                raise ModelShapeError(f"backing state for {label!r} is not normalized")
    if m.joint is not None:
        if len(m.joint) != m.num_psi:
            raise ModelShapeError("joint must have one map per preparation")
        a_list = alice_settings(m.n)
        b_list = bob_settings(m.n)
        for p, jmap in enumerate(m.joint):
            total = 0.0
            lam_marg = [0.0] * m.num_lambda
            for (a, b, lam), v in jmap.items():
                if a not in a_ok or b not in b_ok or not 0 <= lam < m.num_lambda:
                    raise ModelShapeError("joint key outside declared ranges")
                if v < -1e-12:
                    raise ModelShapeError("negative joint probability")
                total += v
                lam_marg[lam] += v
            if abs(total - 1.0) > 1e-9:
                raise ModelShapeError(f"joint for {m.psi_labels[p]!r} sums to {total}, not 1")
            for lam, got in enumerate(lam_marg):
                if abs(got - m.prior[p][lam]) > 1e-9:
                    raise ModelShapeError(
                        "joint hidden-value marginal disagrees with the prior for "
                        f"{m.psi_labels[p]!r}"
                    )
            for ai, a in enumerate(a_list):
                got = sum(jmap.get((a, b, lam), 0.0) for b in b_list for lam in range(m.num_lambda))
                if abs(got - m.setting_prior_a[ai]) > 1e-9:
                    raise ModelShapeError("joint a-marginal disagrees with setting_prior_a")
            for bi, b in enumerate(b_list):
                got = sum(jmap.get((a, b, lam), 0.0) for a in a_list for lam in range(m.num_lambda))
                if abs(got - m.setting_prior_b[bi]) > 1e-9:
                    raise ModelShapeError("joint b-marginal disagrees with setting_prior_b")


def uniform_setting_priors(n: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    row = tuple(1.0 / n for _ in range(n))
    return row, row


def _born_rows(
    state: ComplexVector, n: int, d: int, pairs: Sequence[tuple[int, int]]
) -> dict[tuple[int, int], tuple[float, ...]]:
    out = {}
    for a, b in pairs:
        out[(a, b)] = born_joint(state, alice_family(n, d, a), bob_family(n, d, b)).probs
    return out


def _full_grid(n: int) -> list[tuple[int, int]]:
    return [(a, b) for a in alice_settings(n) for b in bob_settings(n)]


def psi_ontic_model(
    labels: Sequence[str],
    states: Sequence[ComplexVector],
    n: int,
    d: int,
) -> FiniteOntologicalModel:
    """One hidden value per preparation, responding with that preparation's
    own Born tables; the hidden value doubles as a backing state so the
    analysis can rebind it to any measurement context."""
    lam_labels = tuple(f"L{i}" for i in range(len(labels)))
    prior = tuple(
        tuple(1.0 if i == j else 0.0 for j in range(len(labels)))
        for i in range(len(labels))
    )
    responses: dict[ResponseKey, tuple[float, ...]] = {}
    for i, s in enumerate(states):
        for (a, b), row in _born_rows(s, n, d, _full_grid(n)).items():
            responses[(a, b, i, None)] = row
    pa, pb = uniform_setting_priors(n)
    return FiniteOntologicalModel(
        n=n,
        d=d,
        psi_labels=tuple(labels),
        psi_states=tuple(states),
        lambda_labels=lam_labels,
        prior=prior,
        responses=responses,
        psi_indexed=False,
        setting_prior_a=pa,
        setting_prior_b=pb,
        lambda_states=tuple(states),
    )


def constant_lambda_model(
    labels: Sequence[str],
    states: Sequence[ComplexVector],
    n: int,
    d: int,
) -> FiniteOntologicalModel:
    """Single hidden value shared by every preparation.

    Born consistency then forces the responses to depend on the preparation,
    so the completeness check fails whenever the catalog holds two distinct
    states; everything else passes.
    """
    responses: dict[ResponseKey, tuple[float, ...]] = {}
    for p, s in enumerate(states):
        for (a, b), row in _born_rows(s, n, d, _full_grid(n)).items():
            responses[(a, b, 0, p)] = row
    pa, pb = uniform_setting_priors(n)
    return FiniteOntologicalModel(
        n=n,
        d=d,
        psi_labels=tuple(labels),
        psi_states=tuple(states),
        lambda_labels=("L",),
        prior=tuple((1.0,) for _ in states),
        responses=responses,
        psi_indexed=True,
        setting_prior_a=pa,
        setting_prior_b=pb,
    )


def correlated_settings_model(
    labels: Sequence[str],
    states: Sequence[ComplexVector],
    n: int,
    d: int,
) -> FiniteOntologicalModel:
    """Model whose declared joint lets the hidden value lean on the a-setting.

    Each preparation splits its weight over two hidden values that share the
    preparation's Born responses, so born consistency, parameter independence
    and completeness all hold; the joint, however, skews the a-setting
    distribution oppositely on the two values (the skews average back to the
    declared uniform marginal), so only the free-choice check fails.
    """
    if n < 2:
        raise ValueError("correlated_settings_model: needs n >= 2 to skew settings")
    lam_labels = tuple(f"L{i}{tag}" for i in range(len(states)) for tag in ("a", "b"))
    num_lam = len(lam_labels)
    prior = []
    for i in range(len(states)):
        row = [0.0] * num_lam
        row[2 * i] = 0.5
        row[2 * i + 1] = 0.5
        prior.append(tuple(row))
    responses: dict[ResponseKey, tuple[float, ...]] = {}
    for i, s in enumerate(states):
        for (a, b), row in _born_rows(s, n, d, _full_grid(n)).items():
            responses[(a, b, 2 * i, None)] = row
            responses[(a, b, 2 * i + 1, None)] = row
    pa, pb = uniform_setting_priors(n)
    a_list = alice_settings(n)
    b_list = bob_settings(n)
    # Opposite skews on the two hidden values of each preparation.
    lean = [1.5 / n] + [(n - 1.5) / (n * (n - 1))] * (n - 1)
    starve = [0.5 / n] + [(n - 0.5) / (n * (n - 1))] * (n - 1)
    joint = []
    for i in range(len(states)):
        jmap: dict[tuple[int, int, int], float] = {}
        for lam, skew in ((2 * i, lean), (2 * i + 1, starve)):
            for ai, a in enumerate(a_list):
                for b in b_list:
                    jmap[(a, b, lam)] = 0.5 * skew[ai] * (1.0 / n)
        joint.append(jmap)
    return FiniteOntologicalModel(
        n=n,
        d=d,
        psi_labels=tuple(labels),
        psi_states=tuple(states),
        lambda_labels=lam_labels,
        prior=tuple(prior),
        responses=responses,
        psi_indexed=False,
        setting_prior_a=pa,
        setting_prior_b=pb,
        joint=tuple(joint),
    )


def bind_to_context(
    model: FiniteOntologicalModel,
    U: ComplexMatrix,
    n: int,
    d: int,
    pairs: Sequence[tuple[int, int]] | None = None,
) -> FiniteOntologicalModel:
    """Rebuild the responses for a new measurement context.

    Maps every backing state through the isometry U and measures it with the
    chained families at (n, d) over the given pairs (default: the pairs the
    correlation gap reads).  Catalog, priors and the declared joint carry
    over; the result drops its backing states so it cannot be rebound twice.
    """
    if model.lambda_states is None:
        raise ContextMismatchError(
            "model has no backing states; its static tables are tied to the "
            f"declared context n={model.n}, d={model.d}"
        )
    if U.cols != model.psi_states[0].dim:
        raise ContextMismatchError("isometry domain does not match the catalog dimension")
    if U.rows != (d + 1) * (d + 1):
        raise ContextMismatchError("isometry range does not match the target context")
    if pairs is None:
        pairs = required_pairs(n)
    responses: dict[ResponseKey, tuple[float, ...]] = {}
    reachable = [
        lam
        for lam in range(model.num_lambda)
        if any(row[lam] > 0.0 for row in model.prior)
    ]
    for lam in reachable:
        mapped = matvec(U, model.lambda_states[lam])
        for (a, b), row in _born_rows(mapped, n, d, pairs).items():
            responses[(a, b, lam, None)] = row
    pa, pb = uniform_setting_priors(n)
    return FiniteOntologicalModel(
        n=n,
        d=d,
        psi_labels=model.psi_labels,
        psi_states=model.psi_states,
        lambda_labels=model.lambda_labels,
        prior=model.prior,
        responses=responses,
        psi_indexed=False,
        setting_prior_a=pa,
        setting_prior_b=pb,
        joint=None,
    )


def lambda_conditional(
    model: FiniteOntologicalModel,
    lam: int,
    psi: int | None = None,
    pairs: Sequence[tuple[int, int]] | None = None,
) -> JointConditional:
    """One hidden value's response tables packaged as a JointConditional."""
    if pairs is None:
        pairs = model.pairs_present()
    tables = {}
    for a, b in pairs:
        row = model.response_row(a, b, lam, psi)
        if row is None:
            raise ModelShapeError(
                f"missing response row for pair ({a}, {b}) at hidden value "
                f"{model.lambda_labels[lam]!r}"
            )
        tables[(a, b)] = JointTable(model.d + 1, row)
    return JointConditional(model.n, model.d, tables)


def predictive_conditional(
    model: FiniteOntologicalModel,
    psi: int,
    pairs: Sequence[tuple[int, int]] | None = None,
) -> JointConditional:
    """Prior-averaged tables for one preparation."""
    if pairs is None:
        pairs = model.pairs_present()
    tables = {
        (a, b): JointTable(model.d + 1, model.predictive_row(psi, a, b))
        for a, b in pairs
    }
    return JointConditional(model.n, model.d, tables)


def check_born_consistency(
    model: FiniteOntologicalModel,
    state_map: Mapping[str, ComplexVector],
    pairs: Sequence[tuple[int, int]] | None = None,
) -> float:
    """Worst entry deviation of the prior-mixed responses from the Born
    tables of the mapped catalog states."""
    if pairs is None:
        pairs = model.pairs_present()
    worst = 0.0
    for label, state in state_map.items():
        p = model.psi_index(label)
        want = _born_rows(state, model.n, model.d, pairs)
        for (a, b), row in want.items():
            got = model.predictive_row(p, a, b)
            dev = max(abs(x - y) for x, y in zip(got, row))
            worst = max(worst, dev)
    return worst


def _row_marginals(row: tuple[float, ...], big: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    mx = tuple(sum(row[x * big : (x + 1) * big]) for x in range(big))
    my = tuple(sum(row[y::big]) for y in range(big))
    return mx, my


def check_parameter_independence(model: FiniteOntologicalModel) -> tuple[float, float]:
    """(dev_x, dev_y): how much either side's marginal reacts to the far setting.

    dev_x scans, for fixed (a, hidden value[, preparation]), the spread of the
    x-marginal across the b values present in the tables; dev_y swaps roles.
    """
    big = model.d + 1
    # marginals[(side, fixed setting, lam, psi)] -> per-outcome (min, max) envelope
    env_x: dict[tuple, list[list[float]]] = {}
    env_y: dict[tuple, list[list[float]]] = {}
    for (a, b, lam, psi), row in model.responses.items():
        mx, my = _row_marginals(row, big)
        kx = (a, lam, psi)
        ky = (b, lam, psi)
        for env, key, marg in ((env_x, kx, mx), (env_y, ky, my)):
            slot = env.get(key)
            if slot is None:
                env[key] = [[v, v] for v in marg]
            else:
                for i, v in enumerate(marg):
                    if v < slot[i][0]:
                        slot[i][0] = v
                    if v > slot[i][1]:
                        slot[i][1] = v
    dev_x = max(
        (hi - lo for slots in env_x.values() for lo, hi in slots), default=0.0
    )
    dev_y = max(
        (hi - lo for slots in env_y.values() for lo, hi in slots), default=0.0
    )
    return dev_x, dev_y


def check_free_choice(model: FiniteOntologicalModel) -> float:
    """Worst deviation of the declared joint from the product of its marginals.

    Models that declare no joint distribute settings independently by
    construction and score zero.
    """
    if model.joint is None:
        return 0.0
    a_list = alice_settings(model.n)
    b_list = bob_settings(model.n)
    worst = 0.0
    for jmap in model.joint:
        pa = {a: 0.0 for a in a_list}
        pb = {b: 0.0 for b in b_list}
        pl = [0.0] * model.num_lambda
        for (a, b, lam), v in jmap.items():
            pa[a] += v
            pb[b] += v
            pl[lam] += v
        for a in a_list:
            for b in b_list:
                for lam in range(model.num_lambda):
                    got = jmap.get((a, b, lam), 0.0)
                    dev = abs(got - pa[a] * pb[b] * pl[lam])
                    worst = max(worst, dev)
    return worst


def check_completeness(model: FiniteOntologicalModel) -> float:
    """Worst response disagreement between preparations sharing a hidden value.

    Zero for models whose responses are not preparation-indexed: those are
    complete by construction.
    """
    if not model.psi_indexed:
        return 0.0
    worst = 0.0
    pairs = model.pairs_present()
    for lam in range(model.num_lambda):
        sharing = [p for p in range(model.num_psi) if model.prior[p][lam] > 0.0]
        for i in range(len(sharing)):
            for j in range(i + 1, len(sharing)):
                for a, b in pairs:
                    r1 = model.response_row(a, b, lam, sharing[i])
                    r2 = model.response_row(a, b, lam, sharing[j])
                    if r1 is None or r2 is None:
                        continue
                    dev = max(abs(x - y) for x, y in zip(r1, r2))
                    worst = max(worst, dev)
    return worst


def check_all(
    model: FiniteOntologicalModel,
    state_map: Mapping[str, ComplexVector] | None = None,
    pairs: Sequence[tuple[int, int]] | None = None,
) -> ModelCheckResult:
    if state_map is None:
        state_map = dict(zip(model.psi_labels, model.psi_states))
    dev_x, dev_y = check_parameter_independence(model)
    return ModelCheckResult(
        born_consistency=check_born_consistency(model, state_map, pairs),
        parameter_independence_x=dev_x,
        parameter_independence_y=dev_y,
        free_choice=check_free_choice(model),
        completeness=check_completeness(model),
    )


def support_threshold(n: int, d: int) -> float:
    """Deviation budget for a hidden value to count as answering uniformly.

    The certificate admits sqrt(d pi^2 / 12n); the cap at 1/(2d) keeps the
    budget below the deviation of any hidden value that completely avoids one
    outcome, so such values are excluded at every chain length.
    """
    return min(math.sqrt(d * math.pi * math.pi / (12.0 * n)), 1.0 / (2.0 * d))


def _x_marginal(model: FiniteOntologicalModel, lam: int, psi: int | None = None) -> tuple[float, ...]:
    a0, b0 = wrap_pair(model.n)
    row = model.response_row(a0, b0, lam, psi)
    if row is None:
        raise ModelShapeError(
            f"missing response row for the wrap pair ({a0}, {b0}) at hidden value "
            f"{model.lambda_labels[lam]!r}"
        )
    big = model.d + 1
    return tuple(sum(row[x * big : (x + 1) * big]) for x in range(big))


@dataclass(frozen=True)
class SupportReport:
    """Everything the uniqueness argument establishes for one ordered pair."""

    psi_label: str
    psi_prime_label: str
    n: int
    d: int
    k: int
    xi: float
    alpha: float
    gamma: float
    threshold: float
    support_set: tuple[str, ...]
    measure_on_psi: float
    measure_on_psi_prime: float
    per_lambda_deviation: Mapping[str, float]
    chain_gap: float
    chain_bound: float
    certificate_lhs: float
    certificate_rhs: float
    predicted_partner_k: float
    cross_measure_margin: float
    checks: ModelCheckResult

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "per_lambda_deviation", MappingProxyType(dict(self.per_lambda_deviation))
        )


def analyze_pair(
    model: FiniteOntologicalModel,
    psi_label: str,
    psi_prime_label: str,
    n: int,
    tol: float = 1e-9,
) -> SupportReport:
    """Run the uniqueness argument for one ordered catalog pair at chain length n.

    Raises ConditionViolation if the model breaks any hypothesis beyond tol,
    ContextMismatchError if its tables cannot serve the pair's context, and
    ValueError for an indistinguishable pair (overlap magnitude 1).
    """
    if psi_label == psi_prime_label:
        raise ValueError("analyze_pair: the two labels must differ")
    i = model.psi_index(psi_label)
    j = model.psi_index(psi_prime_label)
    psi, psi_p = model.psi_states[i], model.psi_states[j]
    c = inner(psi, psi_p)
    alpha = abs(c)
    if alpha >= 1.0 - 1e-12:
        raise ValueError("analyze_pair: catalog states are parallel, no pair analysis")
    gamma = cmath.phase(c) if alpha > 0.0 else 0.0
    params = solve_overlap(alpha)
    d = params.d
    phi = maximally_entangled_state(d)
    phi_p = overlap_partner_state(params)
    # Route the complex phase of the overlap onto the second target so the
    # isometry constraints are exactly compatible.
    target_p = scaled(phi_p, cmath.exp(1j * gamma)) if gamma else phi_p
    U = build_isometry(psi, psi_p, phi, target_p, tol=max(tol, 1e-9))

    if model.lambda_states is not None:
        bound = bind_to_context(model, U, n, d)
        free_choice_dev = check_free_choice(model)
    else:
        if model.n != n or model.d != d:
            raise ContextMismatchError(
                f"static model context n={model.n}, d={model.d} cannot serve this "
                f"pair at n={n}, d={d}; provide backing states to allow rebinding"
            )
        bound = model
        free_choice_dev = check_free_choice(model)

    state_map = {
        label: matvec(U, s) for label, s in zip(model.psi_labels, model.psi_states)
    }
    dev_x, dev_y = check_parameter_independence(bound)
    checks = ModelCheckResult(
        born_consistency=check_born_consistency(bound, state_map),
        parameter_independence_x=dev_x,
        parameter_independence_y=dev_y,
        free_choice=free_choice_dev,
        completeness=check_completeness(bound),
    )
    if not checks.ok(tol):
        raise ConditionViolation(checks, tol)

    weights = bound.prior[i]
    slices = [
        lambda_conditional(bound, lam, psi=i if bound.psi_indexed else None)
        if w > 0.0
        else None
        for lam, w in enumerate(weights)
    ]
    lhs, rhs = uniformity_certificate(weights, slices, n, d)
    gap = correlation_gap(predictive_conditional(bound, i))
    bound_val = quantum_bound(n)

    thr = support_threshold(n, d)
    uniform = 1.0 / d
    deviations: dict[str, float] = {}
    support: list[str] = []
    m_i = 0.0
    m_j = 0.0
    for lam, label in enumerate(bound.lambda_labels):
        w_i = bound.prior[i][lam]
        w_j = bound.prior[j][lam]
        if w_i == 0.0 and w_j == 0.0:
            continue
        marg = _x_marginal(bound, lam, i if bound.psi_indexed else None)
        dev = max(abs(marg[x] - uniform) for x in range(d))
        deviations[label] = dev
        if w_i > 0.0 and dev <= thr:
            support.append(label)
            m_i += w_i
            m_j += w_j

    pk = 0.0
    for lam in range(bound.num_lambda):
        w_j = bound.prior[j][lam]
        if w_j == 0.0:
            continue
        marg = _x_marginal(bound, lam, j if bound.psi_indexed else None)
        pk += w_j * marg[params.k]

    return SupportReport(
        psi_label=psi_label,
        psi_prime_label=psi_prime_label,
        n=n,
        d=d,
        k=params.k,
        xi=params.xi,
        alpha=alpha,
        gamma=gamma,
        threshold=thr,
        support_set=tuple(support),
        measure_on_psi=m_i,
        measure_on_psi_prime=m_j,
        per_lambda_deviation=deviations,
        chain_gap=gap,
        chain_bound=bound_val,
        certificate_lhs=lhs,
        certificate_rhs=rhs,
        predicted_partner_k=pk,
        cross_measure_margin=m_j / d - pk,
        checks=checks,
    )


@dataclass(frozen=True)
class StateFunctionResult:
    """Disjoint hidden-value preimages recovered from the pairwise reports."""

    psi_labels: tuple[str, ...]
    preimages: Mapping[str, tuple[str, ...]]
    unmapped: tuple[str, ...]
    own_measure: Mapping[str, float]
    cross_measure: Mapping[tuple[str, str], float]

    def __post_init__(self) -> None:
        object.__setattr__(self, "preimages", MappingProxyType(dict(self.preimages)))
        object.__setattr__(self, "own_measure", MappingProxyType(dict(self.own_measure)))
        object.__setattr__(self, "cross_measure", MappingProxyType(dict(self.cross_measure)))


def recover_state_function(
    model: FiniteOntologicalModel,
    reports: Mapping[tuple[str, str], SupportReport],
) -> StateFunctionResult:
    """Intersect pairwise support sets into one preimage per preparation.

    Needs a report for every ordered pair of distinct catalog labels.  The
    preimage of a preparation is its intersected support minus every other
    preparation's intersected support, so preimages are disjoint by
    construction; hidden values claimed by nobody are listed as unmapped.
    """
    labels = model.psi_labels
    intersected: dict[str, set[str]] = {}
    for label in labels:
        p = model.psi_index(label)
        base = {
            bl
            for lam, bl in enumerate(model.lambda_labels)
            if model.prior[p][lam] > 0.0
        }
        for other in labels:
            if other == label:
                continue
            rep = reports.get((label, other))
            if rep is None:
                raise KeyError(f"missing report for ordered pair ({label!r}, {other!r})")
            base &= set(rep.support_set)
        intersected[label] = base
    preimages: dict[str, tuple[str, ...]] = {}
    claimed: dict[str, str] = {}
    for label in labels:
        others: set[str] = set()
        for other in labels:
            if other != label:
                others |= intersected[other]
        mine = intersected[label] - others
        preimages[label] = tuple(sorted(mine))
        for bl in mine:
            claimed[bl] = label
    unmapped = tuple(
        bl for bl in model.lambda_labels if bl not in claimed
    )
    own: dict[str, float] = {}
    cross: dict[tuple[str, str], float] = {}
    for label in labels:
        p = model.psi_index(label)
        idxs = [model.lambda_index(bl) for bl in preimages[label]]
        own[label] = sum(model.prior[p][lam] for lam in idxs)
        for other in labels:
            if other == label:
                continue
            q = model.psi_index(other)
            cross[(label, other)] = sum(model.prior[q][lam] for lam in idxs)
    return StateFunctionResult(
        psi_labels=labels,
        preimages=preimages,
        unmapped=unmapped,
        own_measure=own,
        cross_measure=cross,
    )


def uniqueness_analysis(
    model: FiniteOntologicalModel,
    n: int,
    tol: float = 1e-9,
) -> tuple[dict[tuple[str, str], SupportReport], StateFunctionResult]:
    """Pairwise reports for every ordered catalog pair plus the recovered
    state function."""
    reports: dict[tuple[str, str], SupportReport] = {}
    for a in model.psi_labels:
        for b in model.psi_labels:
            if a != b:
                reports[(a, b)] = analyze_pair(model, a, b, n, tol)
    return reports, recover_state_function(model, reports)
