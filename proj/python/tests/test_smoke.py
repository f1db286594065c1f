"""Smoke tests for the python bindings."""

import math

import pytest

import dcl


def test_version():
    assert dcl.__version__


def test_annealed_mi_endpoints():
    assert dcl.annealed_mi(0.0, 2) == 2.0
    assert dcl.annealed_mi(1.0, 2) == 0.0
    assert abs(dcl.annealed_mi(0.5, 2) - 1.0) < 1e-12
    with pytest.raises(ValueError):
        dcl.annealed_mi(1.5, 2)


def test_critical_point_and_free_energy():
    pc = dcl.critical_p(2)
    assert 0.3 < pc < 0.4
    f_depinned = dcl.free_energy(0.6, 2)
    assert abs(f_depinned - 2 * math.log(1.25)) < 1e-10
    assert dcl.free_energy(0.2, 2) < f_depinned
    assert dcl.excursion_length(pc - 1e-3, 2) > dcl.excursion_length(pc - 1e-1, 2)


def test_annealed_curve_monotone():
    curve = dcl.annealed_mi_curve(q=2, L=-1, T=64, p_grid=[0.1, 0.3, 0.5, 0.7])
    assert [p for p, _ in curve] == [0.1, 0.3, 0.5, 0.7]
    values = [i for _, i in curve]
    assert all(a >= b - 1e-12 for a, b in zip(values, values[1:]))
    assert values[0] > 1.5


def test_clifford_run_deterministic():
    a = dcl.run_clifford(L=8, T=4, p=0.5, seed=7, samples=16)
    b = dcl.run_clifford(L=8, T=4, p=0.5, seed=7, samples=16, threads=1)
    assert [r["checkpoints"] for r in a] == [r["checkpoints"] for r in b]
    # p = 0 keeps both bits of mutual information exactly.
    clean = dcl.run_clifford(L=8, T=4, p=0.0, seed=7, samples=8)
    assert all(r["checkpoints"][-1][1] == 2 for r in clean)


def test_stabilizer_state_channels():
    s = dcl.StabilizerState(2, 1)
    assert s.n_generators == 0  # maximally mixed
    assert s.entropy([0]) == 1
    s.erase_qubit(0)
    assert s.verify()


def test_finite_rate_plateau():
    val = dcl.finite_rate_mi(q=2, L=16, T=32, t_scr=16, code_rate=0.5, p=0.0)
    assert abs(val - 16.0) < 1e-9
    th1, th2 = dcl.finite_rate_thresholds(2, 0.5, 64, 7 * 64)
    assert 0 < th1 < th2 < 1


def test_fit_roundtrip():
    data = []
    for series, size in enumerate([64.0, 128.0, 256.0]):
        for i in range(11):
            p = 0.3 + 0.04 * i
            x = (p - 0.5) * size**0.5
            y = 2.0 / (1.0 + math.exp(x))
            data.append((size, p, y, 0.01, series))
    fit = dcl.fit_collapse(data, model="step", pc_range=(0.4, 0.6),
                           e1_range=(0.2, 1.0))
    assert abs(fit["pc"] - 0.5) < 0.03
    median, spread = dcl.crossing_point(data)
    assert abs(median - 0.5) < 0.03
    assert spread < 0.02
