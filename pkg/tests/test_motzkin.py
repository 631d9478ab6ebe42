from fractions import Fraction as F

import pytest

from nwalk.intset import IntSet, sumset
from nwalk.series import RationalSeries
from nwalk.walks import NStepSet, count_by_dp, classical_count, floor_nonneg, reach_layers
from nwalk.motzkin import (MotzkinTypeId, shape_type, motzkin_type, walk_series_by_type,
                           bridge_series_by_extraction, FIGURE_MATRICES, transition_matrices,
                           meander_vector_series, meander_series, kernel_entry,
                           motzkin_kernel_roots, meander_closed_form, quartic_residual,
                           closed_form_checks, gamma, motzkin_asymptotics, map_to_2d)

I, II = MotzkinTypeId.TypeI, MotzkinTypeId.TypeII
M = NStepSet.motzkin()
STEPS = M.sets


def test_type_examples():
    assert motzkin_type([{1}, {-1, 1}]) is II
    assert motzkin_type([{0, 1}]) is I
    assert motzkin_type([{0, 1}, {-1}], "meander") is II
    assert motzkin_type([{-1}], "meander") is None
    with pytest.raises(ValueError):
        motzkin_type([{2}])


def _walks(n):
    """All Motzkin walks of length <= n with unconstrained and floored reach."""
    stack = [((), IntSet({0}), IntSet({0}))]
    while stack:
        w, r, f = stack.pop()
        yield w, r, f
        if len(w) < n:
            for s in STEPS:
                stack.append((w + (s,), sumset(r, s), floor_nonneg(sumset(f, s))))


def test_type_partition_walks_up_to_6():
    seen = 0
    for w, r, f in _walks(6):
        assert shape_type(r) is not None
        if len(w) <= 5:
            assert motzkin_type(w) is shape_type(r)
            alive = motzkin_type(w, "meander")
            if alive is not None:
                assert alive is shape_type(f)
        seen += 1
    assert seen == sum(7 ** k for k in range(7))


def test_walk_series_by_type():
    MI, MII, Mt = walk_series_by_type(10)
    assert Mt.coefficients(0, 4) == [1, 7, 49, 343]
    assert Mt.coefficients() == [7 ** n for n in range(10)]
    assert MII.coefficients(0, 3) == [1, 4, 16]
    assert MI == Mt - MII


def test_bridges_by_extraction():
    assert bridge_series_by_extraction(14).coefficients() == count_by_dp(M, 13, "bridge")


def _poly_from_text(text, x, y):
    return eval(text.replace("^", "**"), {"x": x, "y": y})


def test_matrices_equal_figure():
    A, B, C = transition_matrices()
    points = [(F(2), F(3)), (F(-1, 2), F(5, 7)), (F(3, 4), F(-2))]
    for name, mat in zip("ABC", (A, B, C)):
        fig = FIGURE_MATRICES[name]
        for r in range(2):
            for c in range(2):
                for x, y in points:
                    assert mat[r][c].evaluate(x, y) == _poly_from_text(fig[r][c], x, y), (name, r, c)


def test_figure_entries_from_text():
    assert FIGURE_MATRICES["A"][0][0] == "x^-1*y^-1 + 1 + x*y + x^-1*y"
    assert FIGURE_MATRICES["C"] == [["2 + 2*x*y", "1"], ["2", "x*y + 2 + 3*y"]]


def _dp_by_type(order):
    out = {I: [], II: []}
    for layer in reach_layers(M, order - 1, floored=True):
        tot = {I: 0, II: 0}
        for (lo, m), c in layer.items():
            tot[shape_type(IntSet.from_mask(lo, m))] += c
        for k in out:
            out[k].append(tot[k])
    return out


def test_meander_vector_matches_dp():
    order = 14
    V2, V1 = meander_vector_series(order)
    dp = _dp_by_type(order)
    assert V2.totals() == dp[II]
    assert V1.totals() == dp[I]
    # M+_I is divisible by y: the stored quotient has no negative y powers
    assert all(j >= 0 for c in V1.coeffs for (_, j) in c)
    tot = meander_series(order)
    assert tot.coefficients(0, 8) == [1, 6, 40, 272, 1872, 12960, 90048, 627072]
    assert tot.coefficients() == count_by_dp(M, order - 1, "meander")
    assert tot.coefficients() == classical_count(M.top_steps(), order - 1)
    assert M.top_steps() == {1: 4, 0: 2, -1: 1}


def test_meander_series_specializations():
    order = 12
    exc = meander_series(order, x=0, y=1)
    assert exc.coefficients(0, 8) == [1, 4, 28, 188, 1320, 9252, 65056, 457068]
    assert exc.coefficients() == count_by_dp(M, order - 1, "excursion")
    zero = meander_series(order, x=0, y=0)
    expect = [layer.get((0, 1), 0) for layer in reach_layers(M, order - 1, floored=True)]
    assert zero.coefficients() == expect


def test_kernel_roots():
    order = 16
    X1, X2, Y1, Y2 = motzkin_kernel_roots(order, 1)
    assert kernel_entry(0, X1, 1).is_zero()
    assert kernel_entry(1, X2, 1).is_zero()
    for y in (F(2), F(1, 3)):
        X1y, X2y, _, _ = motzkin_kernel_roots(order, y)
        assert kernel_entry(0, X1y, y).is_zero()
        assert kernel_entry(1, X2y, y).is_zero()
    assert all(Y2[n] >= 0 for n in range(1, 11))
    assert Y1.valuation >= 1 and Y2.valuation >= 1
    with pytest.raises(ValueError):
        motzkin_kernel_roots(order, 0)


def test_closed_form_and_quartic():
    assert meander_closed_form(3).coefficients() == [1, 6, 40]
    report = closed_form_checks(20)
    assert report["ok"]
    assert report["meander_closed_form"]["first_mismatch"] is None
    assert report["excursion_quartic"]["first_nonzero"] is None
    E = RationalSeries(count_by_dp(M, 14, "excursion"), 0, 15)
    assert quartic_residual(E).is_zero()
    with pytest.raises(ValueError):
        closed_form_checks(10)


def test_quartic_detects_wrong_series():
    E = RationalSeries(count_by_dp(M, 14, "excursion"), 0, 15)
    bad = E + RationalSeries.t(15, 9)
    assert not quartic_residual(bad).is_zero()


def test_gamma_and_asymptotics():
    g = gamma()
    assert abs(g - 0.6183) < 1e-3
    assert 1024 * g ** 4 - 8019 * g ** 2 + 2916 == pytest.approx(0, abs=1e-9)
    assert motzkin_asymptotics("walk", 5) == 7 ** 5
    n = 120
    mea = count_by_dp(M, n, "meander", "typed")[n]
    exc = count_by_dp(M, n, "excursion", "typed")[n]
    assert float(mea) / 7 ** n == pytest.approx(0.75, abs=0.01)
    assert float(exc) / 7 ** n == pytest.approx(9 / 16, abs=0.01)
    assert float(exc) / motzkin_asymptotics("excursion", n) == pytest.approx(1, abs=1e-6)


def test_map_to_2d():
    assert map_to_2d([{-1, 0, 1}, {0}]) == ((-1, 1), (0, 0))
