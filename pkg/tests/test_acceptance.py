"""Acceptance suite: nine end-to-end criteria, one PASS/FAIL line each.

Run with pytest (the lines appear in the terminal summary) or as a script:

    python3 tests/test_acceptance.py
"""
import math
import os
import random
import sys
import time
from fractions import Fraction as F

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from nwalk.intset import IntSet, SumsetType, EMPTY
from nwalk.walks import NStepSet, count_by_dp, oracle_tallies, CLASSES
from nwalk.series import RationalSeries
from nwalk import dyck, motzkin
from nwalk.typelab import build_automaton, infer_types, bridge_series_from_automaton
from nwalk.montecarlo import SimConfig, estimate_class_probability, statistic_histograms
from nwalk.appendix import oracle_check

DYCK = NStepSet.dyck()
MOTZKIN = NStepSet.motzkin()


REPORT = []      # printed again in the pytest terminal summary (see conftest.py)


def _report(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    REPORT.append(line)
    print(line, flush=True)
    return line


# -- criteria -----------------------------------------------------------------

def criterion_1():
    """Golden series: DP, closed forms and the automaton pipeline agree."""
    t0 = time.time()
    order = 9
    even = lambda c: [c[i] for i in range(0, len(c), 2)]
    gold = {
        "bridge": [1, 7, 63, 583, 5407],
        "meander": [1, 2, 6, 16, 48],
        "excursion": [1, 4, 28, 224, 1888],
        "excursion_zero": [1, 2, 8, 40, 224],
    }
    dp_b = count_by_dp(DYCK, order - 1, "bridge")
    dp_m = count_by_dp(DYCK, 4, "meander")
    dp_e = count_by_dp(DYCK, order - 1, "excursion")
    zero = [layer_count for layer_count in _dyck_zero_excursions(order - 1)]
    closed = dyck.unweighted_closed_forms(order)
    bridge_cf = dyck.bridge_gf_series_unweighted(order).coefficients()
    auto = bridge_series_from_automaton(build_automaton(DYCK), order).coefficients()
    kernel_exc = dyck.meander_gf_series(dyck.UNWEIGHTED, 0, 1, order).coefficients()
    kernel_zero = dyck.D00_series(dyck.UNWEIGHTED, order).coefficients()
    checks = [
        even(dp_b) == even(bridge_cf) == even(auto) == gold["bridge"],
        dp_m == closed["meander"].coefficients(0, 5) == gold["meander"],
        even(dp_e) == even(closed["excursion"].coefficients()) == even(kernel_exc) == gold["excursion"],
        even(zero) == even(closed["excursion_zero"].coefficients()) == even(kernel_zero)
        == gold["excursion_zero"],
    ]
    dt = time.time() - t0
    return all(checks) and dt < 5, f"4 series agree={all(checks)}, {dt:.2f}s (< 5s)"


def _dyck_zero_excursions(n_max):
    from nwalk.walks import reach_layers
    return [layer.get((0, 1), 0) for layer in reach_layers(DYCK, n_max, floored=True)]


def criterion_2():
    """Exhaustive enumeration equals DP for every class."""
    t0 = time.time()
    bad = []
    for S, top, name in ((DYCK, 10, "Dyck"), (MOTZKIN, 8, "Motzkin")):
        dp = {cls: count_by_dp(S, top, cls) for cls in CLASSES}
        for n in range(top + 1):
            tally = oracle_tallies(S, n)
            bad += [(name, n, cls) for cls in CLASSES if tally[cls] != dp[cls][n]]
    dt = time.time() - t0
    return not bad and dt < 60, f"mismatches={len(bad)}, {dt:.1f}s (< 60s)"


def criterion_3():
    """Motzkin meander closed form to order 20; quartic kills excursions mod t^15."""
    t0 = time.time()
    rep = motzkin.closed_form_checks(20)
    E = RationalSeries(count_by_dp(MOTZKIN, 14, "excursion"), 0, 15)
    quartic = motzkin.quartic_residual(E).is_zero()
    ok = rep["meander_closed_form"]["ok"] and rep["excursion_quartic"]["ok"] and quartic
    dt = time.time() - t0
    return ok and dt < 30, (f"meander order 20 ok={rep['meander_closed_form']['ok']}, "
                            f"quartic mod t^15 ok={quartic}, {dt:.1f}s (< 30s)")


def criterion_4():
    """Relative error of the asymptotic formulas shrinks monotonically."""
    worst, notes = 0.0, []
    ok = True
    for fam, S, f in (("dyck", DYCK, dyck.asymptotic_eval),
                      ("motzkin", MOTZKIN, motzkin.motzkin_asymptotics)):
        for cls in CLASSES:
            c = count_by_dp(S, 80, cls, state_mode="typed")
            errs = [abs(float(c[n]) / f(cls, n) - 1) for n in range(20, 81, 2)]
            if cls == "walk":
                # the formula is exact here; errors are rounding noise
                mono = all(e < 1e-12 for e in errs)
            else:
                mono = all(b < a for a, b in zip(errs, errs[1:]))
            ok &= mono and errs[-1] < 0.05
            worst = max(worst, errs[-1])
            if not mono:
                notes.append(f"{fam}/{cls} not monotone")
    g = motzkin.gamma()
    root = abs(1024 * g ** 4 - 8019 * g ** 2 + 2916) < 1e-8
    ok &= root and abs(g - 0.6183) < 1e-3
    detail = f"8 rows monotone, max error at n=80 {worst:.1e}, gamma={g:.7f}"
    return ok, detail + ("; " + ", ".join(notes) if notes else "")


def criterion_5():
    """Limit proportions of bridges, meanders and excursions."""
    t0 = time.time()
    out = []
    ok = True
    for S, n, lim in ((DYCK, 200, {"bridge": 1, "meander": 0.5, "excursion": 0.25}),
                      (MOTZKIN, 120, {"bridge": 1, "meander": 0.75, "excursion": 9 / 16})):
        total = count_by_dp(S, n, "walk", "typed")[n]
        for cls, target in lim.items():
            r = float(F(count_by_dp(S, n, cls, "typed")[n], total))
            ok &= abs(r - target) < 0.02
            out.append(f"{r:.3f}")
    dt = time.time() - t0
    return ok and dt < 120, f"Dyck n=200 {'/'.join(out[:3])}, Motzkin n=120 {'/'.join(out[3:])}, {dt:.1f}s"


def criterion_6():
    """Simulation against exact values and the returns limit law."""
    t0 = time.time()
    third = NStepSet.dyck(F(1, 3), F(1, 3), F(1, 3))
    cfg = SimConfig(third, 150, 100000, seed=2024)
    p, _ = estimate_class_probability(cfg, "excursion")
    exact = float(count_by_dp(third, 150, "excursion", "typed")[150])
    sigma = math.sqrt(exact * (1 - exact) / cfg.runs)
    ok1 = abs(p - exact) <= 4 * sigma and abs(p - 0.25) < 0.01
    half = dyck.DyckWeights(F(1, 2), F(1, 2), F(0))
    cfg2 = SimConfig(NStepSet.dyck(F(1, 2), F(1, 2), F(0)), 150, 2 * 10 ** 8, seed=2024)
    h = statistic_histograms(cfg2, "returns_to_zero", min_accepted=10 ** 5)
    tv = h.tv(dyck.returns_pmf(half, 400))
    dt = time.time() - t0
    ok = ok1 and tv < 0.02 and dt < 180
    return ok, (f"excursion {p:.4f} vs exact {exact:.4f} ({abs(p - exact) / sigma:.1f} sigma), "
                f"returns TV {tv:.4f} over {h.accepted} excursions, {dt:.0f}s")


def _eval_text(text, x, y):
    return eval(text.replace("^", "**"), {"x": x, "y": y})


def _random_step_sets(seed, count):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        steps = set()
        for _ in range(rng.randint(2, 3)):
            lo = rng.randint(-2, 1)
            hi = lo + rng.randint(0, 3)
            steps.add(frozenset({lo, hi} | {x for x in range(lo, hi) if rng.random() < 0.5}))
        S = NStepSet([(IntSet(s), 1) for s in steps])
        if len(S) >= 2 and S.lowest < 0 < max(s.max for s in S.sets):
            out.append(S)
    return out


def criterion_7():
    """Type inference, the Motzkin matrices and bridge extraction."""
    dyck_types = infer_types(DYCK)
    ok_d = dyck_types == [SumsetType(2, 0, EMPTY, IntSet({0}), EMPTY)]
    ok_m = len(infer_types(MOTZKIN)) == 2
    A, B, C = motzkin.transition_matrices()
    pts = [(F(2), F(3)), (F(-1, 2), F(5, 7)), (F(3, 4), F(-2))]
    ok_mat = all(mat[r][c].evaluate(x, y) == _eval_text(motzkin.FIGURE_MATRICES[name][r][c], x, y)
                 for name, mat in zip("ABC", (A, B, C))
                 for r in range(2) for c in range(2) for x, y in pts)
    sets = [DYCK, MOTZKIN] + _random_step_sets(2024, 5)
    ok_b = all(bridge_series_from_automaton(build_automaton(S), 16).coefficients()
               == count_by_dp(S, 15, "bridge") for S in sets)
    ok = ok_d and ok_m and ok_mat and ok_b
    return ok, (f"Dyck 1 type={ok_d}, Motzkin 2 types={ok_m}, matrices match={ok_mat}, "
                f"bridges to order 16 on {len(sets)} sets={ok_b}")


PROPERTY_TESTS = [
    "test_sumset_commutative", "test_sumset_associative", "test_sumset_identity_and_absorbing",
    "test_sumset_size_and_norm", "test_conjugation_duality_random",
    "test_type_normalization_equivalence", "test_meanders_equal_classical_top_paths",
    "test_excursion_symmetry_under_negation", "test_parity_vanishing",
]


def criterion_8():
    """Property suites (each at least 200 random cases)."""
    import test_properties as tp
    names = [n for n in dir(tp) if n.startswith("test_")]
    failed = []
    for name in names:
        try:
            getattr(tp, name)()
        except Exception as e:          # noqa: BLE001 - report and continue
            failed.append(f"{name}: {type(e).__name__}")
    missing = [n for n in PROPERTY_TESTS if n not in names]
    ok = not failed and not missing and tp.N >= 200
    return ok, f"{len(names)} suites x {tp.N} cases, failures={failed or 0}, missing={missing or 0}"


def criterion_9():
    """Every weight-pattern row with a printed closed formula matches DP for n <= 14."""
    rows = oracle_check(None, 14)
    bad = [f"{r['row']} (n={r['first_mismatch']})" for r in rows if r["status"] != "pass"]
    return not bad, f"{len(rows) - len(bad)}/{len(rows)} rows match" + (
        f"; failing: {', '.join(bad)}" if bad else "")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


# -- pytest wrappers ----------------------------------------------------------

@pytest.mark.parametrize("k", range(1, 9))
def test_criterion(k):
    ok, detail = CRITERIA[k - 1]()
    _report(k, ok, detail)
    assert ok, detail


@pytest.mark.xfail(strict=True, reason=(
    "weight-pattern row E: the printed closed formula 3^(n+1) - 2^n - delta_{n,0} disagrees with "
    "exact counts (1, 2, 7, 23, ...) from n = 1; the counts follow 3^n - 2^(n-1) instead"))
def test_criterion_9():
    ok, detail = criterion_9()
    _report(9, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for k, fn in enumerate(CRITERIA, 1):
        try:
            ok, detail = fn()
        except Exception as e:          # noqa: BLE001
            ok, detail = False, f"{type(e).__name__}: {e}"
        _report(k, ok, detail)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
