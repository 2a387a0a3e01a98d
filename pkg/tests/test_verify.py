import numpy as np
import pytest

from hlsixv import verify as vf
from hlsixv.distributions import DiscreteDistribution, tv_distance


def test_tv_distance_cases():
    p = DiscreteDistribution({"a": 0.8, "b": 0.2})
    assert tv_distance(p, p) == 0.0
    q = DiscreteDistribution({"c": 1.0})
    assert tv_distance(p, q) == pytest.approx(1.0)
    r = DiscreteDistribution({"a": 0.7, "b": 0.3})
    assert tv_distance(p, r) == pytest.approx(0.1)


def test_chi_square_exact_proportional_counts():
    expected = DiscreteDistribution({"a": 0.5, "b": 0.3, "c": 0.2})
    counts = {"a": 500, "b": 300, "c": 200}
    stat, dof, p = vf.chi_square_gof(counts, expected)
    assert stat == pytest.approx(0.0, abs=1e-12)
    assert dof == 2
    assert p == pytest.approx(1.0)


def test_chi_square_hand_computed_fixture():
    # 1000 draws over 3 cells with expected (0.5, 0.3, 0.2):
    # chi2 = (480-500)^2/500 + (330-300)^2/300 + (190-200)^2/200
    expected = DiscreteDistribution({"a": 0.5, "b": 0.3, "c": 0.2})
    counts = {"a": 480, "b": 330, "c": 190}
    stat, dof, p = vf.chi_square_gof(counts, expected)
    hand = 400 / 500 + 900 / 300 + 100 / 200
    assert stat == pytest.approx(hand, abs=1e-9)
    assert dof == 2


def test_chi_square_zero_probability_outcome_errors():
    expected = DiscreteDistribution({"a": 1.0})
    with pytest.raises(ValueError):
        vf.chi_square_gof({"a": 5, "z": 1}, expected)


def test_chi_square_pooling():
    expected = DiscreteDistribution({"a": 0.96} | {f"t{i}": 0.001 for i in range(40)})
    counts = {"a": 96, **{f"t{i}": 0 for i in range(40)}}
    counts["t0"] = 4
    stat, dof, p = vf.chi_square_gof(counts, expected)
    assert dof >= 1
    with pytest.raises(ValueError):
        vf.chi_square_gof({"x": 1}, DiscreteDistribution({"x": 1.0}))


def test_two_sample_chi_square_behaviour():
    rng = np.random.default_rng(1)
    same1 = {k: int(v) for k, v in zip("abcd", rng.multinomial(5000, [0.4, 0.3, 0.2, 0.1]))}
    same2 = {k: int(v) for k, v in zip("abcd", rng.multinomial(5000, [0.4, 0.3, 0.2, 0.1]))}
    _, _, p_same = vf.two_sample_chi_square(same1, same2)
    assert p_same > 1e-3
    diff = {k: int(v) for k, v in zip("abcd", rng.multinomial(5000, [0.1, 0.2, 0.3, 0.4]))}
    _, _, p_diff = vf.two_sample_chi_square(same1, diff)
    assert p_diff < 1e-6


def test_check_support_and_height_small():
    r = vf.check_support_match(2, 1, "++-", 0.4, (0.4, 0.3), (0.5,))
    assert r.passed and r.mode == "exact"
    r2 = vf.check_height_match(1, 2, "+--", 0.4, (0.4,), (0.5, 0.3))
    assert r2.passed


def test_height_match_specializes_to_horizontal_line_theorem():
    """For ascending S the first M coordinates give the single-line statement:
    (N - lambda'_1(m, N))_m and (h(m+1, N))_m share one joint law."""
    from hlsixv import hl_process as hl
    from hlsixv import six_vertex as sv

    t, a, b = 0.4, (0.45, 0.3), (0.5, 0.35)
    M, N = 2, 2
    spec = hl.HLProcessSpec(t=t, a=a, b=b, S="++--")
    cap = hl.minimal_row_cap(spec)
    cols = hl.exact_first_column_distribution(spec, cap)
    shifted = cols.map_keys(lambda v: tuple(N - c for c in v[:M]))
    params = sv.SixVertexParams(t=t, a=a, b=b)
    heights = sv.joint_height_distribution(
        params, M, N, [(m + 1, N) for m in range(1, M + 1)]
    )
    assert tv_distance(shifted, heights) < 1e-9


def test_check_moment_match_small():
    r = vf.check_moment_match(1, (1,), 1, 0.5, (0.5,), (0.5,))
    assert r.passed
    assert r.details["hl"] == pytest.approx(4 / 7, abs=1e-9)


def test_report_serialization():
    r = vf.check_support_match(1, 1, "+-", 0.25, (0.5,), (0.5,))
    d = r.to_json_dict()
    assert d["passed"] is True
    assert set(d) >= {"name", "mode", "statistic", "threshold", "runtime"}


def test_check_rsk_field_small():
    r = vf.check_rsk_field((1.0, 0.7), 0.5, (0.6, 1.2), samples=8000, seed=2)
    assert r.passed, r.details


def test_check_plancherel_small():
    r = vf.check_plancherel_marginal(
        (1.0, 0.8), 0.5, 0.6, level=2, K=64, samples=30000, seed=3
    )
    assert r.passed, r.details
    assert r.details["tv_2K"] < r.details["tv_K"]
