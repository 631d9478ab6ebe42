"""Registry of 0/1-weighted Motzkin subclasses with OEIS tags and formulas.

Weights are listed in the order (p1, p-1, p0, p-1,0, p0,1, p-1,1, p-1,0,1),
matching NStepSet.MOTZKIN_STEPS.  Rows without a closed formula are kept as
DP-only dumps; the OEIS links are conjectural (first terms only).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable

from .walks import NStepSet, count_by_dp


def trinomial(n: int, k: int) -> int:
    """[x^k] (1 + x + x^2)^n."""
    if k < 0 or k > 2 * n:
        return 0
    return sum(comb(n, i) * comb(n - i, k - 2 * i) for i in range(k // 2 + 1) if k - 2 * i <= n - i)


def _central_even(n):
    return comb(n, n // 2) if n % 2 == 0 else 0


def _a005773(n):
    return trinomial(n, n - 1) + trinomial(n, n)


@dataclass(frozen=True)
class AppendixRow:
    name: str
    weights: tuple
    cls: str                       # "excursion" or "meander"
    oeis: str
    formula_text: str | None = None
    formula: Callable | None = None

    @property
    def step_set(self) -> NStepSet:
        return NStepSet.motzkin(self.weights)

    def dp(self, n_max: int):
        return [int(c) for c in count_by_dp(self.step_set, n_max, self.cls)]

    def predicted(self, n_max: int):
        if self.formula is None:
            return None
        return [self.formula(n) for n in range(n_max + 1)]

    def check(self, n_max: int = 14) -> dict:
        got = self.dp(n_max)
        exp = self.predicted(n_max)
        if exp is None:
            return {"row": self.name, "status": "dp-only", "dp": got}
        bad = [n for n in range(n_max + 1) if got[n] != exp[n]]
        return {"row": self.name, "status": "pass" if not bad else "fail",
                "first_mismatch": bad[0] if bad else None, "dp": got, "formula": exp}


def _rows():
    R = []

    def add(name, w, cls, oeis, text=None, f=None):
        R.append(AppendixRow(name, tuple(w), cls, oeis, text, f))

    # excursions, p-1,1 = 1
    c_tail = "C(n, n/2) for n even, 0 for n odd"
    add("A1", [1, 0, 0, 0, 0, 1, 0], "excursion", "A126869", c_tail, _central_even)
    add("A2", [0, 1, 0, 0, 0, 1, 0], "excursion", "A126869", c_tail, _central_even)
    add("B1", [1, 0, 1, 0, 0, 1, 0], "excursion", "A002426", "[x^n](1+x+x^2)^n",
        lambda n: trinomial(n, n))
    add("B2", [0, 1, 1, 0, 0, 1, 0], "excursion", "A002426", "[x^n](1+x+x^2)^n",
        lambda n: trinomial(n, n))
    c_form = "2^n - (2n+1-(-1)^n)/4"
    add("C1", [0, 0, 0, 1, 0, 1, 0], "excursion", "A084174", c_form,
        lambda n: 2 ** n - (2 * n + 1 - (-1) ** n) // 4)
    add("C2", [0, 0, 0, 0, 1, 1, 0], "excursion", "A084174", c_form,
        lambda n: 2 ** n - (2 * n + 1 - (-1) ** n) // 4)
    add("D", [0, 0, 0, 0, 0, 1, 1], "excursion", "A051049", "2^n - (1-(-1)^n)/2",
        lambda n: 2 ** n - (1 - (-1) ** n) // 2)
    add("E", [0, 0, 1, 0, 0, 1, 1], "excursion", "A083313", "3^(n+1) - 2^n - delta_{n,0}",
        lambda n: 3 ** (n + 1) - 2 ** n - (1 if n == 0 else 0))
    # excursions, p-1,1 = 0
    binom_half = "C(n, floor(n/2))"
    for i, w in enumerate([[1, 0, 0, 1, 0, 0, 0], [0, 1, 0, 0, 1, 0, 0],
                           [1, 0, 0, 0, 0, 0, 1], [0, 1, 0, 0, 0, 0, 1]], 1):
        add(f"F{i}", w, "excursion", "A001405", binom_half, lambda n: comb(n, n // 2))
    for i, w in enumerate([[1, 0, 1, 1, 1, 0, 0], [1, 0, 1, 0, 1, 0, 1],
                           [0, 1, 1, 1, 1, 0, 0], [0, 1, 1, 1, 0, 0, 1]], 1):
        add(f"G{i}", w, "excursion", "A001700", "C(2n+1, n+1)", lambda n: comb(2 * n + 1, n + 1))
    for i, w in enumerate([[0, 0, 1, 1, 1, 0, 0], [0, 0, 1, 1, 0, 0, 1],
                           [0, 0, 1, 0, 1, 0, 1], [0, 0, 0, 1, 1, 0, 1]], 1):
        add(f"H{i}", w, "excursion", "A000244", "3^n", lambda n: 3 ** n)
    tri_text = "[x^(n-1)](1+x+x^2)^n + [x^n](1+x+x^2)^n"
    for i, w in enumerate([[1, 0, 1, 1, 0, 0, 0], [0, 1, 1, 0, 1, 0, 0],
                           [1, 0, 0, 1, 1, 0, 0], [0, 1, 0, 1, 1, 0, 0],
                           [1, 0, 1, 0, 0, 0, 1], [0, 1, 1, 0, 0, 0, 1],
                           [0, 1, 0, 1, 0, 0, 1], [1, 0, 0, 0, 1, 0, 1]], 1):
        add(f"I{i}", w, "excursion", "A005773", tri_text, _a005773)
    # excursions tied to other lattice paths (no formula)
    for i, w in enumerate([[1, 0, 0, 1, 0, 0, 1], [0, 1, 0, 0, 1, 0, 1]], 1):
        add(f"J{i}", w, "excursion", "A151281")
    for i, w in enumerate([[1, 0, 1, 1, 0, 0, 1], [0, 1, 1, 0, 1, 0, 1],
                           [1, 0, 0, 1, 1, 0, 1], [0, 1, 0, 1, 1, 0, 1]], 1):
        add(f"K{i}", w, "excursion", "A129637")
    for i, w in enumerate([[1, 0, 1, 1, 1, 0, 1], [0, 1, 1, 1, 1, 0, 1]], 1):
        add(f"L{i}", w, "excursion", "A151251")
    # meanders
    for i, w in enumerate([[0, 1, 0, 0, 0, 1, 0], [0, 1, 0, 0, 0, 0, 1]], 1):
        add(f"MB{i}", w, "meander", "A001405", binom_half, lambda n: comb(n, n // 2))
    for i, w in enumerate([[1, 1, 1, 1, 0, 0, 0], [0, 1, 1, 1, 1, 0, 0],
                           [0, 1, 1, 1, 0, 1, 0], [0, 1, 1, 1, 0, 0, 1]], 1):
        add(f"MC{i}", w, "meander", "A001700", "C(2n+1, n+1)", lambda n: comb(2 * n + 1, n + 1))
    for i, w in enumerate([[1, 1, 0, 1, 0, 0, 0], [0, 1, 1, 0, 1, 0, 0],
                           [0, 1, 0, 1, 1, 0, 0], [0, 1, 1, 0, 0, 1, 0],
                           [0, 1, 0, 1, 0, 1, 0], [0, 1, 1, 0, 0, 0, 1],
                           [0, 1, 0, 1, 0, 0, 1]], 1):
        add(f"MT{i}", w, "meander", "A005773", tri_text, _a005773)
    for i, w in enumerate([[1, 1, 0, 0, 1, 0, 0], [1, 1, 0, 0, 0, 1, 0],
                           [0, 1, 0, 0, 1, 1, 0], [1, 1, 0, 0, 0, 0, 1],
                           [0, 1, 0, 0, 1, 0, 1], [0, 1, 0, 0, 0, 1, 1]], 1):
        add(f"MH{i}", w, "meander", "A151281")
    for i, w in enumerate([[1, 1, 0, 0, 1, 1, 0], [1, 1, 0, 0, 1, 0, 1],
                           [1, 1, 0, 0, 0, 1, 1], [0, 1, 0, 0, 1, 1, 1]], 1):
        add(f"MO{i}", w, "meander", "A151162")
    for i, w in enumerate([[1, 1, 1, 1, 1, 0, 0], [1, 1, 1, 1, 0, 1, 0],
                           [0, 1, 1, 1, 1, 1, 0], [1, 1, 1, 1, 0, 0, 1],
                           [0, 1, 1, 1, 1, 0, 1], [0, 1, 1, 1, 0, 1, 1]], 1):
        add(f"MP{i}", w, "meander", "A151251")
    for i, w in enumerate([[1, 1, 1, 0, 1, 1, 0], [1, 1, 0, 1, 1, 1, 0],
                           [1, 1, 1, 0, 1, 0, 1], [1, 1, 0, 1, 1, 0, 1],
                           [1, 1, 1, 0, 0, 1, 1], [1, 1, 0, 1, 0, 1, 1],
                           [0, 1, 1, 0, 1, 1, 1], [0, 1, 0, 1, 1, 1, 1]], 1):
        add(f"MQ{i}", w, "meander", "A151253")
    add("MR", [1, 1, 0, 0, 1, 1, 1], "meander", "A151254")
    return R


REGISTRY = {r.name: r for r in _rows()}


def formula_rows():
    return [r for r in REGISTRY.values() if r.formula is not None]


def oracle_check(pattern: str | None = None, n_max: int = 14):
    """Check one row (by name) or all formula rows against DP counts."""
    if pattern is not None:
        if pattern not in REGISTRY:
            raise KeyError(f"unknown weight-pattern row {pattern!r}; known: {', '.join(REGISTRY)}")
        return [REGISTRY[pattern].check(n_max)]
    return [r.check(n_max) for r in formula_rows()]
