import math

import numpy as np
import pytest

import snrlab


def sylvester(n):
    h = np.array([[1.0]])
    while h.shape[0] < n:
        h = np.block([[h, h], [h, -h]])
    return h


def test_fwht_matches_dense_hadamard():
    x = np.arange(8, dtype=float) - 2.5
    np.testing.assert_allclose(snrlab.fwht(x), sylvester(8) @ x, atol=1e-12)


def test_fwht_rejects_non_power_of_two():
    with pytest.raises(snrlab.SizeError):
        snrlab.fwht([1.0, 2.0, 3.0])


def test_sensing_operator_round_trip_and_dense_form():
    op = snrlab.SensingOperator(16)
    a = op.materialize()
    np.testing.assert_array_equal(a, (sylvester(16) + 1.0) / 2.0)
    x = np.linspace(0.0, 3.0, 16)
    np.testing.assert_allclose(op.apply(x), a @ x, atol=1e-12)
    np.testing.assert_allclose(op.apply_inverse(op.apply(x)), x, atol=1e-9)


def test_permuted_operator_round_trip():
    op = snrlab.SensingOperator.with_random_permutation(32, seed=7)
    assert sorted(op.permutation) == list(range(32))
    x = np.arange(32, dtype=float)
    np.testing.assert_allclose(op.apply_inverse(op.apply(x)), x, atol=1e-9)


def test_oracle_matches_dense_propagation():
    n, sigma = 8, 3.0
    scene = snrlab.flat_scene(n, 800.0)
    a = snrlab.SensingOperator(n).materialize()
    inv = np.linalg.inv(a)
    y = a @ scene
    expected = float(np.sum((inv**2).sum(axis=0) * (y + sigma**2)))
    assert snrlab.lci_variance_oracle(scene, sigma) == pytest.approx(expected, rel=1e-10)


def test_theory_values():
    assert snrlab.snr_pai_theory(1e7, 5.0, 1024) == pytest.approx(1e7 / math.sqrt(1e7 + 1024 * 25.0))
    assert snrlab.snr_lci_bound(1e7, 5.0) == pytest.approx(1e7 / math.sqrt(2e7 + 100.0))
    assert snrlab.to_db(10.0) == pytest.approx(10.0)
    assert snrlab.snr_lci_theory(1e7, 5.0, 1024) > snrlab.snr_lci_bound(1e7, 5.0)
    with pytest.raises(snrlab.DomainError):
        snrlab.to_db(0.0)


def test_trial_and_sweep():
    scene = snrlab.random_uniform_scene(16, 10000, seed=3)
    assert scene.sum() == pytest.approx(10000.0)
    recon, power = snrlab.run_trial("pai", scene, seed=1)
    assert recon.shape == (16,) and power > 0.0

    cfg = snrlab.SweepConfig()
    cfg.architectures = ["lci", "pai"]
    cfg.log2n_min, cfg.log2n_max, cfg.trials = 2, 4, 20
    rows = snrlab.run_sweep(cfg)
    assert [(r["arch"], r["n"]) for r in rows] == [("lci", 4), ("lci", 8), ("lci", 16), ("pai", 4), ("pai", 8), ("pai", 16)]
    assert all(math.isfinite(r["snr_db"]) for r in rows)
    assert rows[0]["oracle_linear"] is not None and rows[3]["bound_linear"] is None

    csv = snrlab.sweep_csv(cfg)
    assert csv.splitlines()[0] == (
        "arch,n,trials,signal_power,noise_power,snr_linear,snr_db,"
        "theory_linear,theory_db,oracle_linear,bound_linear,seed"
    )


def test_config_errors():
    cfg = snrlab.SweepConfig()
    cfg.log2n_max = 30
    with pytest.raises(snrlab.CapacityError):
        cfg.validate()
    with pytest.raises(snrlab.UsageError):
        snrlab.SweepConfig.from_json('{"bogus": 1}')
