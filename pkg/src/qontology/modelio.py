"""Load and save finite ontological models as JSON.

Layout of a model file:

* ``dims``: {"n": chain length, "d": block outcome count} of the declared
  measurement context;
* ``psi_catalog``: list of amplitude arrays, one per preparation, each a list
  of [re, im] pairs; ``psi_labels`` (optional) names them, default "psi<i>";
* ``lambda_range``: list of hidden-value labels (strings, no commas);
* ``prior``: map from preparation index (as a string) to a probability array
  over lambda_range;
* ``response``: map from "a,b,<lambda label>" (optionally ",<preparation
  index>") to a flattened probability table over outcome pairs, row-major in
  x: entry x*(d+1)+y is P(x, y);
* ``setting_priors``: {"a": [...], "b": [...]}, full support over the n even
  and n odd sub-settings;
* ``lambda_states`` (optional): amplitude arrays aligned with lambda_range,
  the backing states that let the analysis rebind responses to other
  measurement contexts;
* ``joint`` (optional): map from preparation index to {"a,b,<lambda label>":
  probability}, the declared joint over settings and hidden value.

Amplitude arrays are renormalized on load; a norm off by more than 1e-8 is a
format error.
"""

from __future__ import annotations

import json
import math
from importlib import resources
from pathlib import Path
from typing import Any

from .linalg import ComplexVector
from .ontology import FiniteOntologicalModel, ResponseKey

__all__ = [
    "ModelFormatError",
    "load_model",
    "save_model",
    "bundled_model_path",
    "load_bundled",
    "BUNDLED_MODELS",
]

BUNDLED_MODELS = (
    "psi_ontic.json",
    "constant_lambda.json",
    "correlated_settings.json",
)


class ModelFormatError(ValueError):
    """A model file does not follow the documented layout."""


def _fail(where: str, why: str) -> None:
    raise ModelFormatError(f"{where}: {why}")


def _need(obj: dict, key: str, where: str) -> Any:
    if key not in obj:
        _fail(where, f"missing required key {key!r}")
    return obj[key]


def _parse_amplitudes(raw: Any, where: str) -> ComplexVector:
    if not isinstance(raw, list) or not raw:
        _fail(where, "expected a nonempty list of [re, im] pairs")
    ent = []
    for i, pair in enumerate(raw):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) for x in pair)
        ):
            _fail(f"{where}[{i}]", "expected an [re, im] pair of numbers")
        z = complex(pair[0], pair[1])
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            _fail(f"{where}[{i}]", "non-finite amplitude")
        ent.append(z)
    nrm = math.sqrt(sum(abs(z) ** 2 for z in ent))
    if abs(nrm - 1.0) > 1e-8:
        _fail(where, f"amplitudes have norm {nrm}, expected 1 within 1e-8")
    return ComplexVector(tuple(z / nrm for z in ent))


def _parse_probs(raw: Any, where: str) -> tuple[float, ...]:
    if not isinstance(raw, list) or not raw:
        _fail(where, "expected a nonempty probability array")
    out = []
    for i, v in enumerate(raw):
        if not isinstance(v, (int, float)) or not math.isfinite(v):
            _fail(f"{where}[{i}]", f"expected a finite number, got {v!r}")
        out.append(float(v))
    return tuple(out)


def _parse_response_key(
    key: str, lam_lookup: dict[str, int], psi_count: int, where: str
) -> tuple[int, int, int, int | None]:
    parts = key.split(",")
    if len(parts) not in (3, 4):
        _fail(where, "key must be 'a,b,lambda' or 'a,b,lambda,psi'")
    try:
        a = int(parts[0])
        b = int(parts[1])
    except ValueError:
        _fail(where, "settings a and b must be integers")
    lam_label = parts[2]
    if lam_label not in lam_lookup:
        _fail(where, f"unknown hidden-value label {lam_label!r}")
    psi: int | None = None
    if len(parts) == 4:
        try:
            psi = int(parts[3])
        except ValueError:
            _fail(where, "preparation index must be an integer")
        if not 0 <= psi < psi_count:
            _fail(where, f"preparation index {psi} out of range")
    return a, b, lam_lookup[lam_label], psi


def load_model(path: str | Path) -> FiniteOntologicalModel:
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except OSError as e:
        raise ModelFormatError(f"{path}: cannot read ({e})") from e
    except json.JSONDecodeError as e:
        raise ModelFormatError(f"{path}: invalid JSON ({e})") from e
    if not isinstance(raw, dict):
        _fail(str(path), "top level must be an object")

    dims = _need(raw, "dims", "dims")
    if not isinstance(dims, dict):
        _fail("dims", "expected an object with n and d")
    n = _need(dims, "n", "dims")
    d = _need(dims, "d", "dims")
    if not isinstance(n, int) or not isinstance(d, int):
        _fail("dims", "n and d must be integers")

    catalog_raw = _need(raw, "psi_catalog", "psi_catalog")
    if not isinstance(catalog_raw, list) or not catalog_raw:
        _fail("psi_catalog", "expected a nonempty list")
    states = tuple(
        _parse_amplitudes(s, f"psi_catalog[{i}]") for i, s in enumerate(catalog_raw)
    )
    labels_raw = raw.get("psi_labels")
    if labels_raw is None:
        labels = tuple(f"psi{i}" for i in range(len(states)))
    else:
        if (
            not isinstance(labels_raw, list)
            or len(labels_raw) != len(states)
            or not all(isinstance(x, str) for x in labels_raw)
        ):
            _fail("psi_labels", "expected one string per catalog entry")
        labels = tuple(labels_raw)

    lam_raw = _need(raw, "lambda_range", "lambda_range")
    if not isinstance(lam_raw, list) or not all(isinstance(x, str) for x in lam_raw):
        _fail("lambda_range", "expected a list of strings")
    lam_labels = tuple(lam_raw)
    lam_lookup = {label: i for i, label in enumerate(lam_labels)}

    prior_raw = _need(raw, "prior", "prior")
    if not isinstance(prior_raw, dict):
        _fail("prior", "expected a map from preparation index to probabilities")
    prior_rows = []
    for p in range(len(states)):
        row = prior_raw.get(str(p))
        if row is None:
            _fail(f"prior[{p!r}]", "missing prior row")
        probs = _parse_probs(row, f"prior[{p!r}]")
        if len(probs) != len(lam_labels):
            _fail(f"prior[{p!r}]", "length does not match lambda_range")
        prior_rows.append(probs)

    resp_raw = _need(raw, "response", "response")
    if not isinstance(resp_raw, dict):
        _fail("response", "expected a map")
    responses: dict[ResponseKey, tuple[float, ...]] = {}
    for key, row in resp_raw.items():
        where = f"response[{key!r}]"
        parsed = _parse_response_key(key, lam_lookup, len(states), where)
        responses[parsed] = _parse_probs(row, where)

    sp_raw = _need(raw, "setting_priors", "setting_priors")
    if not isinstance(sp_raw, dict):
        _fail("setting_priors", "expected an object with keys 'a' and 'b'")
    sp_a = _parse_probs(_need(sp_raw, "a", "setting_priors"), "setting_priors['a']")
    sp_b = _parse_probs(_need(sp_raw, "b", "setting_priors"), "setting_priors['b']")

    lam_states = None
    if "lambda_states" in raw:
        ls_raw = raw["lambda_states"]
        if not isinstance(ls_raw, list) or len(ls_raw) != len(lam_labels):
            _fail("lambda_states", "expected one amplitude array per hidden value")
        lam_states = tuple(
            _parse_amplitudes(s, f"lambda_states[{i}]") for i, s in enumerate(ls_raw)
        )

    joint = None
    if "joint" in raw:
        j_raw = raw["joint"]
        if not isinstance(j_raw, dict):
            _fail("joint", "expected a map from preparation index to a table")
        maps = []
        for p in range(len(states)):
            jm = j_raw.get(str(p))
            if jm is None:
                _fail(f"joint[{p!r}]", "missing joint table")
            if not isinstance(jm, dict):
                _fail(f"joint[{p!r}]", "expected a map")
            table: dict[tuple[int, int, int], float] = {}
            for key, v in jm.items():
                where = f"joint[{p!r}][{key!r}]"
                a, b, lam, psi = _parse_response_key(key, lam_lookup, len(states), where)
                if psi is not None:
                    _fail(where, "joint keys must not carry a preparation index")
                if not isinstance(v, (int, float)) or not math.isfinite(v):
                    _fail(where, "expected a finite probability")
                table[(a, b, lam)] = float(v)
            maps.append(table)
        joint = tuple(maps)

    psi_indexed = any(k[3] is not None for k in responses)
    try:
        return FiniteOntologicalModel(
            n=n,
            d=d,
            psi_labels=labels,
            psi_states=states,
            lambda_labels=lam_labels,
            prior=tuple(prior_rows),
            responses=responses,
            psi_indexed=psi_indexed,
            setting_prior_a=sp_a,
            setting_prior_b=sp_b,
            lambda_states=lam_states,
            joint=joint,
        )
    except ValueError as e:
        raise ModelFormatError(f"{path}: {e}") from e


def _amp_list(v: ComplexVector) -> list[list[float]]:
    return [[z.real, z.imag] for z in v.entries]


def save_model(model: FiniteOntologicalModel, path: str | Path) -> None:
    """Write a model in the documented layout with stable key order."""
    doc: dict[str, Any] = {
        "dims": {"n": model.n, "d": model.d},
        "psi_labels": list(model.psi_labels),
        "psi_catalog": [_amp_list(s) for s in model.psi_states],
        "lambda_range": list(model.lambda_labels),
        "prior": {str(p): list(row) for p, row in enumerate(model.prior)},
        "response": {},
        "setting_priors": {
            "a": list(model.setting_prior_a),
            "b": list(model.setting_prior_b),
        },
    }
    resp: dict[str, list[float]] = {}
    for (a, b, lam, psi) in sorted(
        model.responses, key=lambda k: (k[0], k[1], k[2], -1 if k[3] is None else k[3])
    ):
        key = f"{a},{b},{model.lambda_labels[lam]}"
        if psi is not None:
            key += f",{psi}"
        resp[key] = list(model.responses[(a, b, lam, psi)])
    doc["response"] = resp
    if model.lambda_states is not None:
        doc["lambda_states"] = [_amp_list(s) for s in model.lambda_states]
    if model.joint is not None:
        doc["joint"] = {
            str(p): {
                f"{a},{b},{model.lambda_labels[lam]}": v
                for (a, b, lam), v in sorted(jmap.items())
            }
            for p, jmap in enumerate(model.joint)
        }
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def bundled_model_path(name: str) -> Path:
    """Filesystem path of one of the models shipped with the package."""
    if name not in BUNDLED_MODELS:
        raise KeyError(f"no bundled model named {name!r}; have {BUNDLED_MODELS}")
    return Path(str(resources.files("qontology").joinpath("models", name)))


def load_bundled(name: str) -> FiniteOntologicalModel:
    return load_model(bundled_model_path(name))
