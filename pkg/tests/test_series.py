from fractions import Fraction

import pytest
from oracles import count_monomials, count_symmetric_power, hgenerators, partition_count

from higgscoha.ktheory import CurveModel
from higgscoha.tautalg.series import QSeries, free_series, poincare_coh_positive_rank, poincare_coh_torsion


def test_qseries_arithmetic():
    a = QSeries((1, 2, 3), 2)
    b = QSeries((1, -1, 0, 5), 3)
    assert (a + b).order == 2
    assert (a + b).coeffs == (2, 1, 3)
    assert (a * b).coeffs == (1, 1, 1)
    assert (a * Fraction(1, 2)).coeffs == (Fraction(1, 2), 1, Fraction(3, 2))
    assert a[2] == 3
    with pytest.raises(IndexError):
        a[3]
    assert str(QSeries((1, -1, 0, Fraction(1, 2)), 3)) == "1 - q + (1/2)q^3"
    assert str(QSeries.zero(2)) == "0"
    assert a.evaluate(2) == 1 + 4 + 12
    assert QSeries((1, Fraction(1, 2)), 1).to_json() == [1, "1/2"]


def test_positive_rank_examples():
    assert poincare_coh_positive_rank(CurveModel(0), 4).coeffs == (1, 0, 2, 0, 5)
    assert poincare_coh_positive_rank(CurveModel(1), 1).coeffs == (1, 2)
    for g in range(4):
        assert poincare_coh_positive_rank(CurveModel(g), 0).coeffs == (1,)


def test_positive_rank_closed_form():
    # (1+q)^{2g}/(1-q^2) * prod_{i>=2} (1+q^{2i-1})^{2g} / ((1-q^{2i})(1-q^{2i-2}))
    n = 10
    for g in range(4):
        evens = [2] + [d for i in range(2, n) for d in (2 * i, 2 * i - 2)]
        odds = [1] * (2 * g) + [2 * i - 1 for i in range(2, n) for _ in range(2 * g)]
        closed = free_series([e for e in evens if e <= n], [o for o in odds if o <= n], n)
        assert poincare_coh_positive_rank(CurveModel(g), n) == closed


def test_positive_rank_matches_monomial_count():
    for g in range(4):
        series = poincare_coh_positive_rank(CurveModel(g), 10)
        assert list(series.coeffs) == count_monomials(hgenerators(g, 10), 10)


def test_torsion_examples():
    assert str(poincare_coh_torsion(CurveModel(2), 1, 4)) == "1 + 4q + 2q^2 + 4q^3 + 2q^4"
    assert poincare_coh_torsion(CurveModel(2), 0, 5).coeffs == (1, 0, 0, 0, 0, 0)
    assert poincare_coh_torsion(CurveModel(0), 2, 2).coeffs == (1, 0, 2)


def test_torsion_matches_symmetric_power_count():
    for g in range(3):
        for d in range(5):
            series = poincare_coh_torsion(CurveModel(g), d, 8)
            assert list(series.coeffs) == count_symmetric_power(g, d, 8)


def test_torsion_genus_zero_is_even_and_counts_partitions():
    # at g = 0 everything is even, so the alternating sum equals the plain sum;
    # in large degree S^d(Q[z] + Q[z]w) stabilises, and its total count up to
    # degree 2n is the number of pairs of partitions with <= d parts in total
    for d in range(1, 4):
        s = poincare_coh_torsion(CurveModel(0), d, 9)
        assert all(s[k] == 0 for k in range(1, 10, 2))
        assert s.evaluate(-1) == s.evaluate(1)
    # d = 1: one class in each even degree 2k (z^k) plus w z^(k-1)
    assert poincare_coh_torsion(CurveModel(0), 1, 8).coeffs == (1, 0, 2, 0, 2, 0, 2, 0, 2)
    # large d, degree 2k < 2d: coefficient counts bipartitions of k
    bipartitions = [sum(partition_count(i) * partition_count(k - i) for i in range(k + 1)) for k in range(4)]
    s = poincare_coh_torsion(CurveModel(0), 8, 6)
    assert [s[2 * k] for k in range(4)] == bipartitions


def test_invalid_arguments():
    with pytest.raises(ValueError):
        poincare_coh_torsion(CurveModel(1), -1, 3)
    with pytest.raises(ValueError):
        poincare_coh_positive_rank(CurveModel(1), -1)
