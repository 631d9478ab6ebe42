from math import comb

import pytest

from nwalk.walks import oracle_tallies
from nwalk.appendix import REGISTRY, formula_rows, oracle_check, trinomial

# the printed formula for row E is off by one index; see the README
KNOWN_BAD = {"E"}


@pytest.mark.parametrize("name", [r.name for r in formula_rows() if r.name not in KNOWN_BAD])
def test_formula_rows_match_dp(name):
    (res,) = oracle_check(name, 14)
    assert res["status"] == "pass", res


@pytest.mark.xfail(strict=True, reason="printed closed formula for row E disagrees with exact counts from n = 1")
def test_row_e_formula():
    (res,) = oracle_check("E", 14)
    assert res["status"] == "pass"


def test_row_e_actual_counts():
    (res,) = oracle_check("E", 14)
    assert res["first_mismatch"] == 1
    # what the counts actually are: 3^n - 2^(n-1) for n >= 1
    assert res["dp"] == [1] + [3 ** n - 2 ** (n - 1) for n in range(1, 15)]


def test_examples():
    a1 = REGISTRY["A1"]
    assert a1.weights == (1, 0, 0, 0, 0, 1, 0)
    assert a1.dp(8) == [1, 0, 2, 0, 6, 0, 20, 0, 70]
    assert REGISTRY["D"].dp(6) == [2 ** n - (1 - (-1) ** n) // 2 for n in range(7)]
    assert REGISTRY["MB1"].dp(9) == [comb(n, n // 2) for n in range(10)]


@pytest.mark.parametrize("name", ["A1", "C1", "E", "G2", "I5", "MB2", "MT3", "MQ1"])
def test_dp_agrees_with_enumeration(name):
    row = REGISTRY[name]
    dp = row.dp(7)
    for n in range(8):
        assert oracle_tallies(row.step_set, n)[row.cls] == dp[n]


def test_dp_only_rows():
    rows = [r for r in REGISTRY.values() if r.formula is None]
    assert rows
    for r in rows:
        res = r.check(6)
        assert res["status"] == "dp-only" and res["dp"][0] == 1
    assert len(formula_rows()) + len(rows) == len(REGISTRY)


def test_unknown_row():
    with pytest.raises(KeyError):
        oracle_check("Z9")


def test_trinomial():
    assert [trinomial(n, n) for n in range(7)] == [1, 1, 3, 7, 19, 51, 141]
    assert trinomial(3, 7) == 0 and trinomial(2, -1) == 0
