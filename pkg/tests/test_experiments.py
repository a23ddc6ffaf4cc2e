import math
import os
from collections import Counter

import numpy as np
import pytest

from helpers import chi_square_ok
from mdim.experiments import (
    DegenerateSampleError,
    ExperimentConfig,
    ExperimentResult,
    check_tolerances,
    emit,
    normality_stats,
    parse_csv_betas,
    render_csv,
    render_json,
    run_experiment,
)


def small_cfg(**kw):
    base = dict(model="uniform-tree", n=60, replicates=150, seed=3)
    base.update(kw)
    return ExperimentConfig(**base)


class TestConfig:
    def test_gnp_requires_exactly_one_density(self):
        with pytest.raises(ValueError):
            ExperimentConfig("gnp", 100, 10, 1).validate()
        with pytest.raises(ValueError):
            ExperimentConfig("gnp", 100, 10, 1, c=0.5, p_exponent=1.5).validate()
        ExperimentConfig("gnp", 100, 10, 1, c=0.5).validate()
        ExperimentConfig("gnp", 100, 10, 1, p_exponent=1.5).validate()

    def test_tree_models_take_no_density(self):
        with pytest.raises(ValueError):
            ExperimentConfig("uniform-tree", 100, 10, 1, c=0.5).validate()

    def test_replicates_positive(self):
        with pytest.raises(ValueError):
            ExperimentConfig("uniform-tree", 100, 0, 1).validate()

    def test_unknown_model(self):
        with pytest.raises(ValueError):
            ExperimentConfig("zigzag", 100, 10, 1).validate()

    def test_edge_probability(self):
        assert ExperimentConfig("gnp", 200, 1, 1, c=0.5).edge_probability() == 0.5 / 200
        cfg = ExperimentConfig("gnp", 100, 1, 1, p_exponent=1.5)
        assert cfg.edge_probability() == pytest.approx(100 ** -1.5)


class TestNormalityStats:
    def test_standard_normal_calibration(self):
        rng = np.random.Generator(np.random.PCG64(12345))
        stats = normality_stats(rng.standard_normal(100_000))
        assert abs(stats.skewness) < 0.03
        assert stats.ks_statistic < 0.005

    def test_degenerate(self):
        with pytest.raises(DegenerateSampleError):
            normality_stats([5.0] * 200)

    def test_minimum_size(self):
        with pytest.raises(ValueError):
            normality_stats([1.0, 2.0] * 10)

    def test_detects_skewed_distribution(self):
        rng = np.random.Generator(np.random.PCG64(1))
        stats = normality_stats(rng.exponential(size=50_000))
        assert stats.skewness > 1.5
        assert stats.ks_statistic > 0.05


class TestRunExperiment:
    def test_uniform_tree_betas_are_reasonable(self):
        res = run_experiment(small_cfg())
        assert len(res.betas) == 150
        assert res.excluded_count == 0
        assert all(1 <= b <= 59 for b in res.included)

    def test_exact_law_matches_series_pmf(self, system30):
        from mdim.series import beta_distribution

        res = run_experiment(
            ExperimentConfig(model="uniform-tree", n=8, replicates=100_000, seed=21)
        )
        pmf = beta_distribution(system30.T, 8).pmf
        counts = Counter(res.included)
        assert chi_square_ok(counts, {b: float(p) for b, p in pmf.items()}, 100_000)

    def test_forest_model_runs(self):
        res = run_experiment(
            ExperimentConfig(model="uniform-forest", n=40, replicates=120, seed=5)
        )
        s = res.summary()
        assert s["included"] == 120
        assert 0 < s["mean_over_n"] < 1

    def test_gnp_exclusion_reporting(self):
        cfg = ExperimentConfig(model="gnp", n=4000, replicates=400, seed=2, c=0.5)
        res = run_experiment(cfg)
        s = res.summary()
        assert s["excluded"] == sum(1 for b in res.betas if b is None)
        # non-tree components above the cap are rare in this regime
        assert res.exclusion_rate < 0.01

    @pytest.mark.xfail(
        strict=True,
        reason="near c=1 unicyclic components regularly exceed any workable "
        "brute-force cap, so the <1% exclusion target is unattainable there",
    )
    def test_gnp_exclusion_near_critical(self):
        cfg = ExperimentConfig(model="gnp", n=4000, replicates=200, seed=2, c=0.9)
        res = run_experiment(cfg)
        assert res.exclusion_rate < 0.01

    def test_sparse_regime_beta_close_to_n(self):
        # the o(1) defect shrinks like n^-0.5; n must be large for the 0.99 bar
        cfg = ExperimentConfig(model="gnp", n=10_000, replicates=10, seed=2, p_exponent=1.5)
        res = run_experiment(cfg)
        assert res.summary()["mean_over_n"] > 0.99
        assert not check_tolerances(res)


class TestDeterminism:
    def test_byte_identical_reruns(self):
        a = render_csv(run_experiment(small_cfg()))
        b = render_csv(run_experiment(small_cfg()))
        assert a == b

    def test_worker_count_does_not_change_output(self):
        cfg = small_cfg(replicates=64)
        serial = render_csv(run_experiment(cfg))
        old = os.environ.get("MDIM_WORKERS")
        os.environ["MDIM_WORKERS"] = "2"
        try:
            parallel = render_csv(run_experiment(cfg))
        finally:
            if old is None:
                del os.environ["MDIM_WORKERS"]
            else:
                os.environ["MDIM_WORKERS"] = old
        assert serial == parallel


class TestEmit:
    def test_csv_round_trip(self, tmp_path):
        res = run_experiment(small_cfg())
        path = tmp_path / "out.csv"
        emit(res, "csv", str(path))
        text = path.read_text()
        betas = parse_csv_betas(text)
        assert betas == res.betas
        clone = ExperimentResult(res.config, betas, res.predicted)
        assert clone.summary() == res.summary()

    def test_json_config_echo(self):
        res = run_experiment(small_cfg())
        import json

        doc = json.loads(render_json(res))
        assert doc["schema"] == "mdim-experiment/1"
        assert doc["config"]["seed"] == 3
        assert doc["config"]["model"] == "uniform-tree"
        assert doc["config"]["n"] == 60

    def test_csv_has_stable_header(self):
        text = render_csv(run_experiment(small_cfg()))
        lines = text.splitlines()
        assert lines[0] == "replicate,beta"
        assert lines[1] == "0," + str(run_experiment(small_cfg()).betas[0])

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            emit(run_experiment(small_cfg()), "xml")


class TestVarianceScaling:
    def test_gnp_variance_per_vertex_stable(self):
        # linear-variance check on a light grid; the acceptance suite runs
        # the full-size version
        ratios = {}
        for n in (1000, 2000):
            cfg = ExperimentConfig(model="gnp", n=n, replicates=300, seed=2, c=0.5)
            ratios[n] = run_experiment(cfg).summary()["variance_over_n"]
        vals = list(ratios.values())
        assert max(vals) / min(vals) < 1.25
