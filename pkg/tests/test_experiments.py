"""Systems, binned curves, scatter quotas, Bloch constancy, configs and manifests."""
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sepscope.errors import ConfigError
from sepscope.experiments import reference
from sepscope.experiments.config import (
    ExperimentConfig,
    RunManifest,
    parse_config_text,
    write_rows_csv,
)
from sepscope.experiments.stats import BinnedCurve, ScatterSummary, correlation
from sepscope.experiments.studies import (
    balanced_scatter,
    bloch_constancy,
    eight_by_eight_ratio_curve,
    ppt_probability,
    sep_vs_ratio_curve,
)
from sepscope.experiments.systems import SYSTEMS, get_system


def test_systems_table():
    assert set(SYSTEMS) == {"two-rebit", "two-qubit", "rebit-retrit", "qubit-qutrit", "rebit-redit", "qubit-qudit"}
    s = get_system("rebit-retrit")
    assert (s.n, s.block, s.conjecture) == (6, 3, Fraction(860, 6561))
    assert s.ppt_is_separable and not get_system("qubit-qudit").ppt_is_separable
    with pytest.raises(ConfigError):
        get_system("two-qutrit")


@given(
    st.lists(st.tuples(st.floats(0, 1), st.booleans()), min_size=1, max_size=300),
    st.integers(1, 20),
)
@settings(max_examples=60, deadline=None)
def test_counting_identity(data, bins):
    x = np.array([d[0] for d in data])
    ok = np.array([d[1] for d in data])
    c = BinnedCurve.empty("x", np.linspace(0, 1, bins + 1))
    c.add(x, ok)
    assert c.total_trials == len(x)
    assert c.weighted_average() == c.overall() == Fraction(int(ok.sum()), len(x))


def test_binned_curve_merge_and_rows(tmp_path):
    edges = np.linspace(0, 1, 5)
    a, b = BinnedCurve.empty("x", edges), BinnedCurve.empty("x", edges)
    a.add([0.1, 0.3, 1.0], [True, False, True])
    b.add([0.1, np.nan], [False, True])
    m = a.merge(b)
    assert m.trials.tolist() == [2, 1, 0, 1]
    assert m.hits.tolist() == [1, 0, 0, 1]
    assert np.isnan(m.probability[2])
    text = m.to_csv(tmp_path / "c.csv").read_text().splitlines()
    assert text[0].startswith("variable,lo,hi,center") and len(text) == 5


def test_spearman_trend():
    edges = np.linspace(0, 1, 11)
    c = BinnedCurve.empty("x", edges)
    c.trials[:] = 1000
    c.hits[:] = np.arange(10) * 50
    assert c.spearman() == pytest.approx(1.0)


def test_correlation_and_pooled_range():
    rng = np.random.default_rng(0)
    x = rng.standard_normal((500, 3))
    c = correlation(x)
    assert np.allclose(np.diag(c), 1.0) and np.allclose(c, c.T)
    s = ScatterSummary.from_points(("a", "b", "c"), {"p": x, "q": x[::-1]}, pooled=True)
    assert s.pooled_correlation.shape == (6, 6)
    lo, hi = s.off_diagonal_range()
    assert -1 <= lo <= hi <= 1


def test_reference_compare():
    ref = reference.stats_for("3")[0]
    assert ref.compare([-0.01, 0.2])[0]
    assert not ref.compare([-0.2, 0.2])[0]
    mean = reference.stats_for("1")[0]
    ok, dev = mean.compare(np.array(mean.value) + 0.005)
    assert ok and dev == pytest.approx(0.005)


def test_config_parsing():
    d = parse_config_text("system = two-qubit  # comment\n\nsamples = 1e4\n")
    cfg = ExperimentConfig.from_mapping(d)
    assert cfg.samples == 10_000 and cfg.system == "two-qubit"
    with pytest.raises(ConfigError):
        parse_config_text("a = 1\na = 2")
    with pytest.raises(ConfigError):
        parse_config_text("no equals sign")
    with pytest.raises(ConfigError):
        ExperimentConfig.from_mapping({"colour": "blue"})
    with pytest.raises(ConfigError):
        ExperimentConfig(samples=0)
    with pytest.raises(ConfigError):
        ExperimentConfig.from_mapping({"samples": "many"})


def test_manifest_round_trip(tmp_path):
    m = RunManifest("ppt", {"system": "two-qubit"}, seed=3, chunk_size=10, n_chunks=2, counts={"ppt": 5})
    path = m.write(tmp_path / "run.json")
    back = RunManifest.read(path)
    assert back == m
    (tmp_path / "bad.json").write_text('{"nope": 1}')
    with pytest.raises(ConfigError):
        RunManifest.read(tmp_path / "bad.json")


def test_write_rows_csv(tmp_path):
    path = write_rows_csv(tmp_path / "r.csv", [{"a": 1, "b": "x,y"}], ["a", "b"])
    assert path.read_bytes() == b'a,b\r\n1,"x,y"\r\n'


def test_ppt_probability_determinism():
    base = dict(system="two-qubit", samples=30_000, chunk_size=4_000, seed=2)
    a = ppt_probability(ExperimentConfig(threads=1, **base))
    b = ppt_probability(ExperimentConfig(threads=3, **base))
    assert a.hits == b.hits
    assert a.within(4.0)
    assert a.row()["target"] == "8/33"


def test_balanced_scatter_quotas():
    cfg = ExperimentConfig(system="qubit-qutrit", per_class=300, chunk_size=2_000, seed=1)
    res = balanced_scatter(cfg, "ratios")
    assert res.summary.counts == {"separable": 300, "entangled": 300}
    pts = res.summary.points["separable"]
    assert np.all((pts >= 0) & (pts <= 1))
    assert np.allclose(pts[:, 1], pts[:, 0] * pts[:, 2], atol=1e-10)
    again = balanced_scatter(ExperimentConfig(system="qubit-qutrit", per_class=300, chunk_size=2_000, seed=1,
                                              threads=4), "ratios")
    assert np.array_equal(again.summary.points["entangled"], res.summary.points["entangled"])
    with pytest.raises(ValueError):
        balanced_scatter(ExperimentConfig(system="two-qubit", per_class=10), "ratios")


def test_w_scatter_pooled():
    res = balanced_scatter(ExperimentConfig(system="rebit-retrit", per_class=200, chunk_size=2_000), "w", pooled=True)
    w = res.summary.points["entangled"]
    assert np.all((w > 0) & (w <= 1))
    assert res.summary.pooled_correlation.shape == (6, 6)


def test_ratio_curves_counting_identity():
    cs = sep_vs_ratio_curve(ExperimentConfig(system="rebit-retrit", samples=20_000, bins=20))
    for c in cs.curves.values():
        assert c.total_trials == cs.samples - cs.rejected
        assert c.weighted_average() == cs.overall
    cs8 = eight_by_eight_ratio_curve(ExperimentConfig(system="rebit-redit", samples=5_000, bins=10))
    assert list(cs8.curves) == ["s2_over_s1"]
    with pytest.raises(ValueError):
        sep_vs_ratio_curve(ExperimentConfig(system="two-qubit", samples=100))


def test_bloch_constancy_two_qubit():
    rep = bloch_constancy(ExperimentConfig(system="two-qubit", samples=100_000, chunk_size=20_000))
    assert rep.curve.total_trials == 100_000
    assert rep.flat(4.0)
    assert rep.dof == int(rep.included.sum()) - 1
    rows = list(rep.rows())
    assert len(rows) == 10 and {"z", "included"} <= set(rows[0])
