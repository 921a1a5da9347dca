import math

import pytest

import qpair


def test_bb84_point():
    info, qber = qpair.ir_attack_exact()
    assert info == pytest.approx(0.5, abs=1e-12)
    assert qber == pytest.approx(0.25, abs=1e-12)


def test_identity_gate_matches_bb84():
    pt = qpair.run_attack(0.0, 0.0, 0.0, "zz")
    assert pt["info_per_bit"] == pytest.approx(0.5, abs=1e-12)
    assert pt["qber"] == pytest.approx(0.25, abs=1e-12)


def test_best_config_extremal_gate():
    name, pt = qpair.best_config(0.0, math.pi / 2, 0.0)
    assert name in ("zz", "xx")
    assert pt["qber"] == pytest.approx(0.5, abs=1e-9)
    assert pt["info_per_bit"] == pytest.approx(0.125, abs=1e-9)


def test_configs_and_unknown_config():
    assert qpair.configs() == ["zz", "zx", "xz", "xx", "-z", "-x", "none"]
    with pytest.raises(ValueError):
        qpair.run_attack(0.0, 0.0, 0.0, "zy")


def test_invalid_gate_parameter():
    with pytest.raises(ValueError):
        qpair.canonical_gate(-0.1, 0.0, 0.0)


def test_small_sweep_shape():
    rows = qpair.sweep(steps=2)
    assert len(rows) == 8
    assert set(rows[0][3]) == {"zz", "zx", "xz", "xx", "-z", "-x"}


def test_canonical_gate_is_unitary():
    a = qpair.canonical_gate(0.3, 1.1, 2.0)
    for i in range(4):
        for j in range(4):
            s = sum(a[k][i].conjugate() * a[k][j] for k in range(4))
            assert abs(s - (1.0 if i == j else 0.0)) < 1e-12


def test_product_state_inner_max():
    g, _ = qpair.inner_maximize([0.0, 0.0, 0.0], 0.0, restarts=5)
    assert qpair.approximation_error(g) == pytest.approx(0.0, abs=1e-6)


def test_epr_attack():
    for a1 in (0, 1):
        for a2 in (0, 1):
            r = qpair.epr_attack(a1, a2)
            assert tuple(r["eve"]) == (a1, a2)
            assert tuple(r["bob"]) == (a1, a2)
            assert r["qber"] == pytest.approx(0.0, abs=1e-12)


def test_cascade_round_trip():
    a = qpair.random_bits(2000, 1)
    b = qpair.flip_channel(a, 0.05, 2)
    corrected, report = qpair.cascade(a, b, 0.05, 4, 3)
    assert len(corrected) == len(a)
    assert report["leaked_bits"] >= qpair.shannon_reconciliation_bound(2000, 0.05)
    with pytest.raises(ValueError):
        qpair.cascade(a, b[:-1], 0.05)


def test_bounds():
    assert qpair.werner_fidelity(1, 2, 2) == pytest.approx(5 / 6, abs=1e-15)
    assert qpair.ir_bound(0.25) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        qpair.ir_bound(0.6)
