"""Smoke tests for the python bindings: each major operation is exercised
once against values the C++ suites verify in depth."""

import math

import numpy as np
import pytest

import symqnn as sq


def test_statevector_roundtrip():
    s = sq.init_state(2)
    assert s.n_qubits == 2
    amps = s.amplitudes
    assert amps[0] == 1.0 and sum(abs(a) for a in amps[1:]) == 0.0
    s.apply_ry(0, math.pi / 2)
    assert sq.expectation(s, sq.all_z(1)) == pytest.approx(0.0, abs=1e-12)
    assert s.norm() == pytest.approx(1.0, abs=1e-12)


def test_expectation_cosine():
    for theta in (0.3, 1.1, 2.5):
        s = sq.init_state(1)
        s.apply_ry(0, theta)
        assert sq.expectation(s, sq.all_z(1)) == pytest.approx(math.cos(theta), abs=1e-12)


def test_builders_match_published_counts():
    assert (sq.build_baseline(4, 2, 2).n_qubits, sq.build_baseline(4, 2, 2).n_params) == (8, 24)
    rot = sq.build_rotational(4, 2, include_self=True)
    assert (rot.n_qubits, rot.n_params) == (10, 30)
    full = sq.build_fully_symmetric(4, 2, include_self=True)
    assert (full.n_qubits, full.n_params) == (10, 8)
    pair_only = sq.build_fully_symmetric(4, 2, include_self=False)
    assert (pair_only.n_qubits, pair_only.n_params) == (6, 4)


def test_twirl_orbit_matches_closed_form():
    gen = sq.twirl(sq.PauliString({0: sq.PauliOp.Y}), 3, sq.Block.Pair)
    assert len(gen.orbit) == 3
    assert all(p.coefficient == pytest.approx(1 / 3) for p in gen.orbit)
    assert sq.verify_equivariance(gen, 3)


def test_invariant_features():
    pts = np.array([[1.0, 0.0], [0.0, 1.0]])
    feats = sq.inner_products_euclidean(sq.PointCloudSample(pts, 1), include_self=True)
    assert feats.full_vector() == [1.0, 1.0, 0.0]

    theta = 0.77
    rot = np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])
    rotated = sq.inner_products_euclidean(sq.PointCloudSample(pts @ rot.T, 1), include_self=True)
    assert rotated.full_vector() == pytest.approx(feats.full_vector(), abs=1e-12)


def test_minkowski_pair_mass():
    pts = np.array([[45.6, 0, 0, 45.6], [45.6, 0, 0, -45.6]])
    feats = sq.inner_products_minkowski(sq.PointCloudSample(pts, 1), include_self=False)
    assert math.sqrt(2 * feats.pair_block[0]) == pytest.approx(91.2)


def test_cobyla_quadratic():
    res = sq.minimize_cobyla(lambda x: (x[0] - 3) ** 2, [0.0])
    assert abs(res.best_point[0] - 3) < 1e-3


def test_predict_and_gradient():
    ansatz = sq.ParamCircuit.from_json(
        sq.build_fully_symmetric(3, 1, include_self=True).to_json()
    )
    cfg = sq.ExperimentConfig.preset(sq.Task.Shapes2D, sq.ModelKind.FullySymmetric)
    cfg.shapes.n_samples = 16
    cfg.shapes.n_train = 12
    ds = sq.generate_task_dataset(cfg)
    model = sq.build_model(cfg, ds)
    params = [0.3] * model.ansatz.n_params
    y = sq.predict(model, ds.samples[0], params)
    assert -1 - 1e-12 <= y <= 1 + 1e-12
    g = sq.parameter_shift_gradient(model, ds.samples[0], params, 0)
    assert math.isfinite(g)
    assert ansatz.n_params == 4


def test_small_training_run_and_roc():
    cfg = sq.ExperimentConfig.preset(sq.Task.Shapes2D, sq.ModelKind.FullySymmetric)
    cfg.shapes.n_samples = 24
    cfg.shapes.n_train = 16
    cfg.n_inits = 1
    cfg.iterations = 10
    report = sq.run_classification(cfg)
    assert report.n_params == 8
    assert report.seeds[0].status == "ok"
    assert len(report.loss_median) == len(report.seeds[0].fit.loss_history)

    assert sq.auc_from_scores([0.9, 0.8, 0.3, 0.1], [1, 1, -1, -1]) == pytest.approx(1.0)


def test_dataset_csv_roundtrip(tmp_path):
    cfg = sq.ShapeConfig()
    cfg.n_samples = 12
    cfg.seed = 4
    ds = sq.generate_shapes(cfg)
    path = str(tmp_path / "shapes.csv")
    sq.write_csv(ds, path)
    back = sq.read_csv(path)
    assert len(back.samples) == 12
    assert np.allclose(back.samples[3].points, ds.samples[3].points, atol=1e-12)


def test_cli_entry(tmp_path):
    out = str(tmp_path / "scan.json")
    code = sq.run_cli(["bp-scan", "--axis", "dimension", "--draws", "3", "--out", out])
    assert code == 0
    assert (tmp_path / "scan.json").exists()
    assert sq.run_cli(["train", "--model", "bogus"]) == 2
