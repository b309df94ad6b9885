import numpy as np
import pytest

from conftest import random_interior_table
from kappagen.errors import (InfeasibleTargetError, UndefinedKappaError,
                             ValidationError)
from kappagen.metrics import (binary_kappa_from_rho, binary_rho_from_kappa,
                              binary_scale_factor, expected_agreement,
                              kappa_from_ratings, kappa_from_summary,
                              kappa_from_table)
from kappagen.types import SquareTable


def test_kappa_from_summary_hand_value():
    s = kappa_from_summary(0.8, 0.33)
    assert s.kappa == pytest.approx(0.47 / 0.67, abs=1e-15)
    assert (s.p0, s.pc) == (0.8, 0.33)


def test_kappa_from_summary_rejects_degenerate_chance():
    with pytest.raises(UndefinedKappaError):
        kappa_from_summary(1.0, 1.0)
    with pytest.raises(UndefinedKappaError):
        kappa_from_summary(0.9, 1.0 - 1e-14)


def test_expected_agreement_dot_product():
    assert expected_agreement([0.16, 0.29, 0.29, 0.26],
                              [0.27, 0.33, 0.07, 0.33]) == pytest.approx(0.2450)
    with pytest.raises(ValidationError):
        expected_agreement([0.5, 0.5], [0.2, 0.3, 0.5])


def test_kappa_from_table_hand_oracle():
    # p0 = 0.6, pa = (0.5, 0.5), pb = (0.4, 0.6), pc = 0.5
    t = [[0.25, 0.25], [0.15, 0.35]]
    s = kappa_from_table(t)
    assert s.p0 == pytest.approx(0.60)
    assert s.pc == pytest.approx(0.50)
    assert s.kappa == pytest.approx(0.2)


def test_kappa_identical_raters_is_one():
    s = kappa_from_ratings([1, 2, 3, 2, 1], [1, 2, 3, 2, 1])
    assert s.kappa == pytest.approx(1.0)


def test_kappa_from_ratings_matches_table_route():
    rng = np.random.default_rng(3)
    x = rng.integers(1, 5, size=200)
    y = rng.integers(1, 5, size=200)
    via_ratings = kappa_from_ratings(x, y)
    via_table = kappa_from_table(SquareTable.from_ratings(x, y, 4))
    assert via_ratings.kappa == via_table.kappa


def test_kappa_counts_and_probability_tables_agree():
    counts = np.array([[12, 3, 5], [2, 20, 1], [4, 2, 15]], dtype=float)
    assert kappa_from_table(counts).kappa == pytest.approx(
        kappa_from_table(counts / counts.sum()).kappa)


# Hand-computed slopes: C = 2 sqrt(p1 p2 q1 q2) / (1 - p1 p2 - q1 q2).
@pytest.mark.parametrize("p1,p2,c", [
    (0.1, 0.9, 0.18 / 0.82),
    (0.2, 0.8, 0.32 / 0.68),
    (0.3, 0.7, 0.42 / 0.58),
    (0.4, 0.6, 0.48 / 0.52),
    (0.5, 0.5, 1.0),
    (0.3, 0.3, 1.0),
])
def test_binary_scale_factor_values(p1, p2, c):
    assert binary_scale_factor(p1, p2).c == pytest.approx(c, abs=1e-15)


def test_binary_scale_factor_is_one_iff_marginals_match():
    grid = np.linspace(0.05, 0.95, 19)
    for p1 in grid:
        for p2 in grid:
            c = binary_scale_factor(p1, p2).c
            assert 0.0 < c <= 1.0 + 1e-15
            if abs(p1 - p2) > 1e-12:
                assert c < 1.0
            else:
                assert c == pytest.approx(1.0, abs=1e-12)


def test_binary_scale_factor_rejects_boundary():
    with pytest.raises(ValidationError):
        binary_scale_factor(0.0, 0.5)
    with pytest.raises(ValidationError):
        binary_scale_factor(0.5, 1.0)


def _table_rho(cells: np.ndarray) -> float:
    # Pearson correlation of the two category-2 indicators.
    p1 = cells[1, :].sum()
    p2 = cells[:, 1].sum()
    cov = cells[1, 1] - p1 * p2
    return float(cov / np.sqrt(p1 * (1 - p1) * p2 * (1 - p2)))


def test_kappa_equals_scaled_correlation_on_random_binary_tables():
    rng = np.random.default_rng(11)
    for _ in range(300):
        cells = random_interior_table(rng, 2)
        kappa = kappa_from_table(cells).kappa
        rho = _table_rho(cells)
        c = binary_scale_factor(cells[1, :].sum(), cells[:, 1].sum()).c
        assert kappa == pytest.approx(rho * c, abs=1e-12)
        assert abs(kappa) <= abs(rho) + 1e-12


def test_binary_rho_kappa_round_trip():
    rng = np.random.default_rng(4)
    for _ in range(100):
        p1, p2 = rng.uniform(0.05, 0.95, size=2)
        scale = binary_scale_factor(p1, p2)
        rho = rng.uniform(-0.1, 0.1)  # safely interior for any marginals
        kappa = binary_kappa_from_rho(rho, p1, p2)
        assert kappa == pytest.approx(rho * scale.c, abs=1e-15)
        assert binary_rho_from_kappa(kappa, p1, p2) == pytest.approx(rho, abs=1e-12)


def test_binary_maps_reject_infeasible_targets():
    with pytest.raises(InfeasibleTargetError, match="feasible range"):
        binary_kappa_from_rho(-1.8, 0.1, 0.9)
    with pytest.raises(InfeasibleTargetError, match="feasible range"):
        binary_rho_from_kappa(0.9, 0.2, 0.8)  # upper kappa limit is 0.1176
