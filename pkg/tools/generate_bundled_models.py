"""Regenerate the model files shipped in src/qontology/models/.

Catalog used by all three files (3x3 lattice, so d = 2 with one spare level):
psi0 = (|00> + |11>)/sqrt(2), psi1 = |22>, psi2 = (|00> + |22>)/sqrt(2).
Pairwise overlap magnitudes: 0, 1/2 and 1/sqrt(2).
"""

from __future__ import annotations

import math
import sys
from pathlib import Path

from qontology.linalg import vector
from qontology.modelio import save_model
from qontology.ontology import (
    constant_lambda_model,
    correlated_settings_model,
    psi_ontic_model,
)

N, D = 4, 2
ROOT = Path(__file__).resolve().parent.parent / "src" / "qontology" / "models"


def catalog():
    r = 1.0 / math.sqrt(2.0)
    psi0 = [0j] * 9
    psi0[0] = psi0[4] = r
    psi1 = [0j] * 9
    psi1[8] = 1.0
    psi2 = [0j] * 9
    psi2[0] = psi2[8] = r
    return [vector(psi0), vector(psi1), vector(psi2)]


def main() -> int:
    ROOT.mkdir(parents=True, exist_ok=True)
    states = catalog()
    labels = ("psi0", "psi1", "psi2")

    save_model(psi_ontic_model(labels, states, N, D), ROOT / "psi_ontic.json")
    save_model(
        constant_lambda_model(labels[:2], states[:2], N, D),
        ROOT / "constant_lambda.json",
    )
    save_model(
        correlated_settings_model(labels[:2], states[:2], N, D),
        ROOT / "correlated_settings.json",
    )
    for name in ("psi_ontic", "constant_lambda", "correlated_settings"):
        print(f"wrote {ROOT / (name + '.json')}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
