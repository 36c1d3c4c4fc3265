from __future__ import annotations

import random

import pytest

from qontology._kernels import _fallback

_core = pytest.importorskip(
    "qontology._kernels._core", reason="compiled kernel extension not built"
)


def test_backend_names():
    assert _fallback.BACKEND_NAME == "pure"
    assert _core.BACKEND_NAME == "compiled"


def test_measurement_block_parity():
    for n, d in ((1, 2), (3, 4), (8, 7), (16, 12)):
        for s in range(1, 2 * n, max(1, n // 2)):
            a = _fallback.measurement_block(n, d, s)
            b = _core.measurement_block(n, d, s)
            assert len(a) == len(b) == d * d
            assert max(abs(x - y) for x, y in zip(a, b)) < 1e-13, (n, d, s)


def test_measurement_block_range_errors_match():
    for bad in ((0, 3, 1), (2, 1, 1), (2, 3, 0), (2, 3, 4)):
        with pytest.raises(ValueError):
            _fallback.measurement_block(*bad)
        with pytest.raises(ValueError):
            _core.measurement_block(*bad)


def test_measurement_block_denominator_floor():
    n = 10**10
    with pytest.raises(ValueError, match="denominator"):
        _fallback.measurement_block(n, 2, 1)
    with pytest.raises(ValueError, match="denominator"):
        _core.measurement_block(n, 2, 1)


def _random_problem(rng: random.Random):
    dim_a = rng.randint(2, 6)
    dim_b = rng.randint(2, 6)
    n_a = rng.randint(1, 5)
    n_b = rng.randint(1, 5)
    state = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(dim_a * dim_b)]
    # exercise the sparse scan in the fallback
    for i in range(0, len(state), 3):
        state[i] = 0j
    va = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(n_a * dim_a)]
    vb = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(n_b * dim_b)]
    return state, dim_a, dim_b, va, n_a, vb, n_b


def test_amplitude_table_parity():
    rng = random.Random(17)
    for _ in range(40):
        args = _random_problem(rng)
        a = _fallback.amplitude_table(*args)
        b = _core.amplitude_table(*args)
        assert max(abs(x - y) for x, y in zip(a, b)) < 1e-12


def test_amplitude_table_against_direct_sum():
    # third route: the naive triple loop
    rng = random.Random(23)
    state, dim_a, dim_b, va, n_a, vb, n_b = _random_problem(rng)
    got = _core.amplitude_table(state, dim_a, dim_b, va, n_a, vb, n_b)
    for x in range(n_a):
        for y in range(n_b):
            want = 0j
            for i in range(dim_a):
                for j in range(dim_b):
                    want += (
                        va[x * dim_a + i].conjugate()
                        * vb[y * dim_b + j].conjugate()
                        * state[i * dim_b + j]
                    )
            assert abs(got[x * n_b + y] - want) < 1e-12


def test_amplitude_table_length_errors():
    for impl in (_fallback, _core):
        with pytest.raises(ValueError):
            impl.amplitude_table([1j] * 5, 2, 3, [1j] * 4, 2, [1j] * 6, 2)
        with pytest.raises(ValueError):
            impl.amplitude_table([1j] * 6, 2, 3, [1j] * 3, 2, [1j] * 6, 2)


def test_selected_backend_is_compiled_by_default(monkeypatch):
    import importlib

    import qontology._kernels as k

    assert k.backend() in ("compiled", "pure")
    # forcing the pure backend must stick across a reload
    monkeypatch.setenv("QONTOLOGY_PURE", "1")
    importlib.reload(k)
    assert k.backend() == "pure"
    monkeypatch.delenv("QONTOLOGY_PURE")
    importlib.reload(k)
