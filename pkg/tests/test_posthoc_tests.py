"""Tests for the Kruskal-Wallis, Dunn and Holm procedures."""
import math

import numpy as np
import pytest

from analysis.posthoc_tests import dunn_holm, holm_adjust, kruskal_wallis, significance_stars


def two_sided(z):
    return math.erfc(abs(z) / math.sqrt(2.0))


class TestDunnHolm:
    def test_identical_groups(self) -> None:
        table = dunn_holm([[0.5, 0.5, 0.5], [0.5, 0.5, 0.5], [0.5, 0.5, 0.5]])
        assert (table["p_raw"] == 1.0).all()
        assert (table["p_adjusted"] == 1.0).all()

    def test_separated_groups_by_hand(self) -> None:
        # mean ranks 2, 5, 8; variance 9 * 10 / 12 = 7.5; sigma = sqrt(7.5 * 2 / 3) = sqrt(5)
        table = dunn_holm([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
        sigma = math.sqrt(5.0)
        z = {(0, 1): -3 / sigma, (0, 2): -6 / sigma, (1, 2): -3 / sigma}
        raw = {pair: two_sided(value) for pair, value in z.items()}
        # Holm: smallest p times 3, the tied pair times 2
        expected = {(0, 2): min(1.0, 3 * raw[(0, 2)]),
                    (0, 1): min(1.0, max(3 * raw[(0, 2)], 2 * raw[(0, 1)])),
                    (1, 2): min(1.0, max(3 * raw[(0, 2)], 2 * raw[(1, 2)]))}
        for _, row in table.iterrows():
            pair = (int(row["group_a"]), int(row["group_b"]))
            assert row["z"] == pytest.approx(z[pair], abs=1e-12)
            assert row["p_raw"] == pytest.approx(raw[pair], abs=1e-12)
            assert row["p_adjusted"] == pytest.approx(expected[pair], abs=1e-12)

    def test_reference_mode(self) -> None:
        table = dunn_holm([[1, 2, 3], [4, 5, 6], [7, 8, 9]], reference=1)
        assert [(int(a), int(b)) for a, b in zip(table["group_a"], table["group_b"])] == [(1, 0), (1, 2)]
        p = two_sided(3 / math.sqrt(5.0))
        assert table["p_adjusted"].tolist() == pytest.approx([2 * p, 2 * p], abs=1e-12)

    def test_ties_are_corrected(self) -> None:
        table = dunn_holm([[1, 1, 2], [2, 3, 3]])
        # 6 values with three tie pairs: variance = 6 * 7 / 12 - 3 * 6 / 60
        variance = 3.5 - 0.3
        mean_a, mean_b = (1.5 + 1.5 + 3.5) / 3, (3.5 + 5.5 + 5.5) / 3
        expected = (mean_a - mean_b) / math.sqrt(variance * (2.0 / 3))
        assert table.loc[0, "z"] == pytest.approx(expected, abs=1e-12)

    def test_rejects_small_groups(self) -> None:
        with pytest.raises(ValueError):
            dunn_holm([[1.0, 2.0], [3.0]])
        with pytest.raises(ValueError):
            dunn_holm([[1.0, 2.0]])


class TestHolm:
    def test_two_values(self) -> None:
        np.testing.assert_allclose(holm_adjust([0.01, 0.04]), [0.02, 0.04])

    def test_keeps_order_monotone_and_bounded(self, rng) -> None:
        for _ in range(100):
            raw = rng.random(int(rng.integers(1, 12))) ** 3
            adjusted = holm_adjust(raw)
            order = np.argsort(raw, kind="mergesort")
            assert np.all(np.diff(adjusted[order]) >= -1e-15)
            assert np.all(adjusted >= raw - 1e-15)
            assert np.all(adjusted <= 1.0)

    def test_empty(self) -> None:
        assert holm_adjust([]).size == 0


class TestKruskalWallis:
    def test_identical_observations(self) -> None:
        assert kruskal_wallis([[0.3, 0.3], [0.3, 0.3]]) == (0.0, 1.0)

    def test_separated_groups(self) -> None:
        h, p = kruskal_wallis([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
        # H = 12 / (N (N + 1)) * sum(n_i * R_i^2) - 3 (N + 1) with rank sums 6, 15, 24
        assert h == pytest.approx(12 / 90 * (36 + 225 + 576) / 3 - 30, abs=1e-12)
        assert p < 0.05


class TestSignificanceStars:
    @pytest.mark.parametrize("p,stars", [(0.0005, "***"), (0.001, "**"), (0.005, "**"), (0.01, "*"),
                                         (0.049, "*"), (0.05, ""), (0.5, ""), (float("nan"), "")])
    def test_thresholds(self, p: float, stars: str) -> None:
        assert significance_stars(p) == stars
