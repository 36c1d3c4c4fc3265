"""Command-line front end.

Commands:

* ``bound-table``: sweep the chained correlation gap over n and d ranges and
  compare measured, closed-form and bound values;
* ``overlap``: solve the discrete overlap parameters for one alpha;
* ``verify-lemmas``: run the randomized total-variation inequality suites;
* ``uniqueness``: run the pair analysis and state-function recovery on a
  model file;
* ``model-check``: run the four hypothesis checks on a model file.

Ranges are written ``lo..hi`` (inclusive) or as a single integer.  Exit code
0 means every assertion the command makes holds; 1 means some failed; 2 means
the invocation itself was invalid.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from pathlib import Path
from typing import Any, Sequence

from .chained import evaluate_chain
from .distance import (
    FiniteDistribution,
    coupling_gap,
    dirichlet_distribution,
    random_joint_table,
    tightness_distribution,
    total_variation,
    uniform_distance_bound,
    uniform_distribution,
)
from .ontology import (
    CHECK_NAMES,
    ConditionViolation,
    ContextMismatchError,
    ModelShapeError,
    check_all,
    uniqueness_analysis,
)
from .modelio import ModelFormatError, load_model
from .states import overlap, solve_overlap

__all__ = ["main"]

_BOUND_SLACK = 1e-12


def _parse_range(text: str) -> list[int]:
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    else:
        lo = hi = int(text)
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def _emit(rows: list[dict[str, Any]], fmt: str, out: str | None, meta: dict[str, Any]) -> None:
    if fmt == "csv":
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            writer.writerows(rows)
        text = buf.getvalue()
    else:
        text = json.dumps({**meta, "rows": rows}, indent=1) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_bound_table(args: argparse.Namespace) -> int:
    rows = []
    failed = False
    for n in args.n:
        for d in args.d:
            r = evaluate_chain(n, d)
            ok = r.gap <= r.bound + _BOUND_SLACK and abs(r.gap - r.closed_form) <= args.tol
            failed = failed or not ok
            rows.append(
                {
                    "n": n,
                    "d": d,
                    "gap": r.gap,
                    "closed_form": r.closed_form,
                    "bound": r.bound,
                    "margin": r.margin,
                    "ok": ok,
                }
            )
    _emit(rows, args.format, args.out, {"command": "bound-table", "tol": args.tol})
    return 1 if failed else 0


def _cmd_overlap(args: argparse.Namespace) -> int:
    if not 0.0 <= args.alpha < 1.0:
        print(f"overlap: alpha must lie in [0, 1), got {args.alpha}", file=sys.stderr)
        return 2
    params = solve_overlap(args.alpha)
    realized = overlap(params)
    residual = abs(realized - args.alpha)
    rows = [
        {
            "alpha": args.alpha,
            "d": params.d,
            "k": params.k,
            "xi": params.xi,
            "realized": realized,
            "residual": residual,
        }
    ]
    _emit(rows, args.format, args.out, {"command": "overlap"})
    return 0 if residual <= args.tol else 1


def _cmd_verify_lemmas(args: argparse.Namespace) -> int:
    rng = random.Random(args.seed)
    sizes = args.d
    trials = 10000
    rows = []

    violations = 0
    worst = float("-inf")
    for _ in range(trials):
        size = rng.choice(sizes)
        t = random_joint_table(rng, size)
        lhs = total_variation(
            FiniteDistribution(t.marginal_x()), FiniteDistribution(t.marginal_y())
        )
        margin = lhs - coupling_gap(t)
        worst = max(worst, margin)
        if margin > args.tol:
            violations += 1
    rows.append(
        {"suite": "coupling", "trials": trials, "violations": violations, "max_margin": worst}
    )

    violations = 0
    worst = float("-inf")
    for _ in range(trials):
        size = rng.choice(sizes)
        p = dirichlet_distribution(rng, size)
        lhs = total_variation(p, uniform_distribution(size))
        margin = lhs - uniform_distance_bound(p)
        worst = max(worst, margin)
        if margin > args.tol:
            violations += 1
    rows.append(
        {"suite": "shift_bound", "trials": trials, "violations": violations, "max_margin": worst}
    )

    for size in sizes:
        if size % 2:
            continue
        p = tightness_distribution(size)
        dist = total_variation(p, uniform_distribution(size))
        bound = uniform_distance_bound(p)
        margin = max(abs(dist - 0.5), abs(bound - dist))
        rows.append(
            {
                "suite": f"tightness_d{size}",
                "trials": 1,
                "violations": 0 if margin <= args.tol else 1,
                "max_margin": margin,
            }
        )

    _emit(
        rows,
        args.format,
        args.out,
        {"command": "verify-lemmas", "seed": args.seed, "tol": args.tol},
    )
    return 0 if all(r["violations"] == 0 for r in rows) else 1


def _report_row(rep) -> dict[str, Any]:
    return {
        "psi": rep.psi_label,
        "psi_prime": rep.psi_prime_label,
        "n": rep.n,
        "d": rep.d,
        "k": rep.k,
        "xi": rep.xi,
        "alpha": rep.alpha,
        "gamma": rep.gamma,
        "threshold": rep.threshold,
        "chain_gap": rep.chain_gap,
        "chain_bound": rep.chain_bound,
        "certificate_lhs": rep.certificate_lhs,
        "certificate_rhs": rep.certificate_rhs,
        "measure_on_psi": rep.measure_on_psi,
        "measure_on_psi_prime": rep.measure_on_psi_prime,
        "cross_measure_margin": rep.cross_measure_margin,
        "support_set": "|".join(rep.support_set),
    }


def _cmd_uniqueness(args: argparse.Namespace) -> int:
    try:
        model = load_model(args.model)
    except ModelFormatError as e:
        print(f"uniqueness: {e}", file=sys.stderr)
        return 2
    n = args.n[-1]
    try:
        reports, recovered = uniqueness_analysis(model, n, args.tol)
    except (ConditionViolation, ContextMismatchError, ModelShapeError, ValueError) as e:
        print(f"uniqueness: {e}", file=sys.stderr)
        return 1
    if args.format == "json":
        doc = {
            "command": "uniqueness",
            "model": str(args.model),
            "n": n,
            "tol": args.tol,
            "pairs": [
                _report_row(reports[key]) for key in sorted(reports)
            ],
            "state_function": {
                "preimages": {k: list(v) for k, v in sorted(recovered.preimages.items())},
                "unmapped": list(recovered.unmapped),
                "own_measure": dict(sorted(recovered.own_measure.items())),
                "cross_measure": [
                    {"psi": a, "other": b, "measure": v}
                    for (a, b), v in sorted(recovered.cross_measure.items())
                ],
            },
        }
        text = json.dumps(doc, indent=1) + "\n"
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
    else:
        rows = [
            {"kind": "pair", **_report_row(reports[key]), "measure": ""}
            for key in sorted(reports)
        ]
        for label in recovered.psi_labels:
            rows.append(
                {
                    "kind": "preimage",
                    "psi": label,
                    "psi_prime": "",
                    "n": n,
                    "d": "",
                    "k": "",
                    "xi": "",
                    "alpha": "",
                    "gamma": "",
                    "threshold": "",
                    "chain_gap": "",
                    "chain_bound": "",
                    "certificate_lhs": "",
                    "certificate_rhs": "",
                    "measure_on_psi": "",
                    "measure_on_psi_prime": "",
                    "cross_measure_margin": "",
                    "support_set": "|".join(recovered.preimages[label]),
                    "measure": recovered.own_measure[label],
                }
            )
        _emit(rows, "csv", args.out, {})
    return 0


def _cmd_model_check(args: argparse.Namespace) -> int:
    try:
        model = load_model(args.model)
    except ModelFormatError as e:
        print(f"model-check: {e}", file=sys.stderr)
        return 2
    try:
        result = check_all(model)
    except ModelShapeError as e:
        print(f"model-check: {e}", file=sys.stderr)
        return 2
    failing = result.failing(args.tol)
    for name in CHECK_NAMES:
        value = result.as_dict()[name]
        verdict = "FAIL" if name in failing else "OK"
        print(f"{name}: {value:.6e} {verdict}")
    if failing:
        print(f"model-check: failed {', '.join(failing)}", file=sys.stderr)
        return 1
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="qontology",
        description="Chained-measurement correlation tools and ontological model checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound-table", help="sweep the correlation gap over n and d")
    p.add_argument("--n", type=_parse_range, default=list(range(1, 9)))
    p.add_argument("--d", type=_parse_range, default=list(range(2, 9)))
    p.set_defaults(func=_cmd_bound_table)

    p = sub.add_parser("overlap", help="discrete overlap parameters for one alpha")
    p.add_argument("--alpha", type=float, required=True)
    p.set_defaults(func=_cmd_overlap)

    p = sub.add_parser("verify-lemmas", help="randomized total-variation suites")
    p.add_argument("--d", type=_parse_range, default=list(range(2, 13)))
    p.add_argument("--seed", type=int, default=7)
    p.set_defaults(func=_cmd_verify_lemmas)

    p = sub.add_parser("uniqueness", help="pair analysis and state-function recovery")
    p.add_argument("--model", required=True)
    p.add_argument("--n", type=_parse_range, default=[64])
    p.set_defaults(func=_cmd_uniqueness)

    p = sub.add_parser("model-check", help="hypothesis checks on a model file")
    p.add_argument("--model", required=True)
    p.set_defaults(func=_cmd_model_check)

    for sp in sub.choices.values():
        sp.add_argument("--out", default=None)
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--tol", type=float, default=1e-9)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
