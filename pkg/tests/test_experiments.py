import json

import pytest

from kappagen import experiments


def test_table1_formula_and_exact_columns_agree():
    report = experiments.run_table1(n_sort=50_000)
    assert len(report.records) == 5
    for rec in report.records:
        # All five pairs have p1 + p2 = 1, so a zero-diagonal table exists and
        # the LP lower bound must land on the closed form.
        assert rec["exact_lower"] == pytest.approx(rec["formula_lower"], abs=1e-5)
        assert rec["exact_upper"] == pytest.approx(rec["formula_upper"], abs=1e-12)
        assert rec["sorting_lower"] == pytest.approx(rec["formula_lower"], abs=0.02)
        assert rec["sorting_upper"] == pytest.approx(rec["formula_upper"], abs=0.02)
    assert report.meta["n_sort"] == 50_000


# (exact_lower, exact_upper, p0zero_lower) per row, frozen from the closed
# forms: upper = (sum_i min(pa_i, pb_i) - pc) / (1 - pc), p0zero = -pc/(1-pc),
# and exact_lower = (p0min - pc)/(1 - pc) with p0min = max(0, max_i(pa_i+pb_i)-1).
TABLE2_EXPECTED = (
    (-0.3158, 0.7368, -1.6316),
    (-0.9231, 0.6154, -0.9231),
    (-0.1765, 0.8529, -1.9412),
    (-0.1142, 0.1643, -0.1142),
    (-0.2500, 0.7917, -1.0833),
    (-0.1111, 0.2222, -0.1111),
    (-0.3333, 1.0000, -0.6667),
    (-0.1765, 0.4118, -0.1765),
)


def test_table2_exact_columns_frozen():
    report = experiments.run_table2(n_sort=20_000)
    assert len(report.records) == 8
    for rec, (lo, hi, p0z) in zip(report.records, TABLE2_EXPECTED):
        assert rec["exact_lower"] == pytest.approx(lo, abs=5e-5)
        assert rec["exact_upper"] == pytest.approx(hi, abs=5e-5)
        assert rec["p0zero_lower"] == pytest.approx(p0z, abs=5e-5)
        assert rec["p0zero_upper"] == rec["exact_upper"]


def test_table3_deterministic_and_order_independent():
    single = experiments.run_table3(reps=200, k_values=(4,))
    pair = experiments.run_table3(reps=200, k_values=(3, 4))
    again = experiments.run_table3(reps=200, k_values=(3, 4))
    assert pair.records == again.records
    # Streams are keyed on (seed, K, rep), so the K=4 row does not depend on
    # which other K values ran.
    assert single.records[0] == pair.records[1]
    assert pair.records[0]["k"] == 3
    assert 0.0 <= pair.records[0]["pct_p0_zero_feasible"] <= 100.0


def test_table3_rate_rises_with_k():
    report = experiments.run_table3(reps=300, k_values=(3, 8))
    r3, r8 = (rec["pct_p0_zero_feasible"] for rec in report.records)
    assert r8 > r3
    assert r8 > 99.0


def test_table4_deterministic_and_reports_deviations():
    report = experiments.run_table4(n=300, seed=1)
    again = experiments.run_table4(n=300, seed=1)
    assert len(report.records) == 4
    for rec, dup, config in zip(report.records, again.records,
                                experiments.TABLE4_CONFIGS):
        assert rec == dup
        assert rec["d"] == len(config["pmat"])
        assert rec["kmat_spec"] == [list(r) for r in config["kmat"]]
        assert rec["max_abs_kappa_dev"] < 0.25
        assert rec["max_abs_marginal_dev"] < 0.1
    assert report.records[0]["seed"] == 1
    assert report.records[3]["seed"] == 4


def test_pathology_records():
    report = experiments.run_pathology(n_sort=300_000)
    inversion, ends, middle = report.records
    assert inversion["case"] == "sorting-inversion"
    assert inversion["exact_lower"] == pytest.approx(-0.26 / 0.74, abs=5e-5)
    assert inversion["exact_upper"] == pytest.approx(0.34 / 0.74, abs=1e-9)
    assert inversion["sorting_lower"] > 0 > inversion["sorting_upper"]

    # Both tables: p0 = 0.8, pc = 0.33, so kappa = 0.47/0.67; the label-score
    # correlations have opposite signs.
    for rec in (ends, middle):
        assert rec["kappa"] == pytest.approx(0.47 / 0.67, abs=1e-12)
    assert ends["pearson"] == pytest.approx(4.75 / 5.25, abs=1e-9)
    assert middle["pearson"] == pytest.approx(-0.65 / 1.05, abs=1e-9)


def test_report_render_and_to_dict():
    report = experiments.run_table3(reps=50, k_values=(3,))
    text = report.render()
    lines = text.splitlines()
    assert lines[0] == report.title
    assert "pct_p0_zero_feasible" in lines[1]
    assert len(lines) == 3 + len(report.records)

    payload = report.to_dict()
    json.dumps(payload)  # everything must be JSON-native
    assert payload["title"] == report.title
    assert payload["records"][0]["k"] == 3

    # Heterogeneous records share one column grid.
    mixed = experiments.run_pathology(n_sort=10_000).render()
    header = mixed.splitlines()[1]
    assert "kappa" in header and "sorting_lower" in header
