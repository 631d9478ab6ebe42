"""The Motzkin N-step set {-1},{0},{1},{-1,0},{0,1},{-1,1},{-1,0,1}.

Reach sets are either intervals of norm >= 1 (type I) or step-2
progressions (type II).  Walk series are rational, meanders satisfy a 2x2
kernel equation; this module checks the printed closed forms against DP.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from math import sqrt, pi

from scipy.optimize import brentq

from .intset import IntSet, sumset
from .series import RationalSeries, LaurentPoly, BivariateSeries, series_sqrt, \
    algebraic_residual, poly_t
from .walks import NStepSet, floor_nonneg, count_by_dp


class MotzkinTypeId(enum.Enum):
    TypeI = "I"
    TypeII = "II"

    def __str__(self):
        return self.value


TYPE_II_STEPS = frozenset(IntSet(s) for s in ({-1}, {0}, {1}, {-1, 1}))
_M1 = IntSet({-1})


def shape_type(reach: IntSet):
    """Classify a reach set by shape; None if it is neither type."""
    if not reach:
        return None
    elems = list(reach)
    gaps = {b - a for a, b in zip(elems, elems[1:])}
    if len(elems) >= 2 and gaps == {1}:
        return MotzkinTypeId.TypeI
    if len(elems) == 1 or gaps == {2}:
        return MotzkinTypeId.TypeII
    return None


def motzkin_type(walk, variant: str = "walk"):
    """Type of a Motzkin walk following the transition rules.

    For the meander variant the floored reach is tracked; returns None once
    the meander dies.
    """
    steps = [s if isinstance(s, IntSet) else IntSet(s) for s in walk]
    for s in steps:
        if s not in _MOTZKIN_SETS:
            raise ValueError(f"{s} is not a Motzkin step")
    if variant == "walk":
        if all(s in TYPE_II_STEPS for s in steps):
            return MotzkinTypeId.TypeII
        return MotzkinTypeId.TypeI
    if variant != "meander":
        raise ValueError("variant is 'walk' or 'meander'")
    tag = MotzkinTypeId.TypeII
    reach = IntSet({0})
    for s in steps:
        nxt = floor_nonneg(sumset(reach, s))
        if not nxt:
            return None
        if tag is MotzkinTypeId.TypeII:
            # {0} + {-1,0} floors back to {0}, so the walk stays type II
            if s not in TYPE_II_STEPS and nxt != IntSet({0}):
                tag = MotzkinTypeId.TypeI
        elif reach == IntSet({0, 1}) and s == _M1:
            tag = MotzkinTypeId.TypeII
        reach = nxt
    return tag


_MOTZKIN_SETS = frozenset(IntSet(s) for s in NStepSet.MOTZKIN_STEPS)


# ---------------------------------------------------------------------------
# walks


def walk_polys(weights=None):
    """(P_II, P_21, P_I): type II -> II, II -> I and I -> I step polynomials
    with x^min y^max of each step."""
    S = NStepSet.motzkin(weights)
    p2, p21, p1 = LaurentPoly(), LaurentPoly(), LaurentPoly()
    for s, w in S.steps:
        m = LaurentPoly.mono(w, s.min, s.max)
        p1 = p1 + m
        if s in TYPE_II_STEPS:
            p2 = p2 + m
        else:
            p21 = p21 + m
    return p2, p21, p1


def _apply(poly: LaurentPoly, d: dict, out: dict):
    for (i1, j1), v1 in d.items():
        for (i2, j2), v2 in poly.terms.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, 0) + v1 * v2


def walk_series_by_type(order: int, weights=None, bivariate: bool = False):
    """(M_I, M_II, M) at x = y = 1, or as BivariateSeries if bivariate."""
    p2, p21, p1 = walk_polys(weights)
    m2, m1 = [{(0, 0): Fraction(1)}], [{}]
    for _ in range(1, order):
        n2, n1 = {}, {}
        _apply(p2, m2[-1], n2)
        _apply(p21, m2[-1], n1)
        _apply(p1, m1[-1], n1)
        m2.append(n2)
        m1.append(n1)
    MI, MII = BivariateSeries(m1, order), BivariateSeries(m2, order)
    M = MI + MII
    if bivariate:
        return MI, MII, M
    return MI.evaluate(), MII.evaluate(), M.evaluate()


def bridge_series_by_extraction(order: int, weights=None) -> RationalSeries:
    """[x<=0 y>=0] ((M_II(x,y) + M_II(-x,y))/2 + M_I(x,y)) at x = y = 1."""
    MI, MII, _ = walk_series_by_type(order, weights, bivariate=True)
    even = (MII + MII.flip_x()).scale(Fraction(1, 2))
    F = (even + MI).select(lambda i, j: i <= 0 and j >= 0)
    return F.evaluate()


# ---------------------------------------------------------------------------
# meanders


FIGURE_MATRICES = {
    # [to][from] with rows/cols (II, I); the vector is (M+_II, M+_I / y)
    "A": [["x^-1*y^-1 + 1 + x*y + x^-1*y", "0"],
          ["x^-1*y^-1 + 1 + x^-1", "x^-1*y^-1 + 1 + x*y + x^-1 + y + 2*x^-1*y"]],
    "B": [["x*y^-1 + 1 + 2*x*y", "0"],
          ["y^-1 + 2", "y^-1 + 2 + x*y + 3*y"]],
    "C": [["2 + 2*x*y", "1"],
          ["2", "x*y + 2 + 3*y"]],
}


def transition_matrices(weights=None):
    """(A, B, C) for the Motzkin meander automaton, indexed [to][from] with
    state 0 = type II and state 1 = type I."""
    from .typelab import build_automaton
    aut = build_automaton(NStepSet.motzkin(weights), variant="meander")
    order = _state_order(aut)
    A, B, C = aut.matrices()

    def perm(M):
        return [[M[order[r]][order[c]] for c in range(2)] for r in range(2)]

    zero = [[LaurentPoly() for _ in range(2)] for _ in range(2)]
    return perm(A), perm(B.get(0, zero)), perm(C.get(0, zero))


def _state_order(aut):
    """Automaton state indices for (type II, type I)."""
    if len(aut.types) != 2:
        raise RuntimeError(f"expected two Motzkin types, found {len(aut.types)}")
    ii = [i for i, T in enumerate(aut.types) if T.g == 2]
    if len(ii) != 1:
        raise RuntimeError("could not identify the 2-periodic Motzkin type")
    return [ii[0], 1 - ii[0]]


def meander_vector_series(order: int, weights=None):
    """(M+_II, M+_I / y) as BivariateSeries in x^min y^max, from the
    functional equation: A for min > 0, B for min = 0 with the larger
    maximum, C for the minimal configurations {0} and {0,1}."""
    A, B, C = transition_matrices(weights)
    layers = [[{(0, 0): Fraction(1)}, {}]]
    for _ in range(1, order):
        prev = layers[-1]
        nxt = [{}, {}]
        for f in range(2):
            for (i, j), v in prev[f].items():
                M = A if i > 0 else (B if j > 0 else C)
                for to in range(2):
                    if M[to][f].is_zero():
                        continue
                    _apply(M[to][f], {(i, j): v}, nxt[to])
        layers.append(nxt)
    return (BivariateSeries([L[0] for L in layers], order),
            BivariateSeries([L[1] for L in layers], order))


def meander_series(order: int, weights=None, x=1, y=1) -> RationalSeries:
    """M+(x,y;t) = M+_II + y * (M+_I / y) at rational x, y (x = 0 allowed)."""
    V2, V1 = meander_vector_series(order, weights)
    y = Fraction(y)
    return V2.evaluate(x, y) + V1.evaluate(x, y) * y


# ---------------------------------------------------------------------------
# kernel roots and closed forms


def kernel_entry(k: int, X: RationalSeries, y) -> RationalSeries:
    """1 - t A_kk(X, y) for k = 0 (type II) or 1 (type I), unweighted."""
    y = Fraction(y)
    order = X.order
    one = RationalSeries.const(1, order)
    inv = one / X
    terms = inv / y + one + X * y + inv * y
    if k == 1:
        terms = terms + inv + one * y + inv * y
    return one - RationalSeries.t(order) * terms


def motzkin_kernel_roots(order: int, y=1):
    """(X1, X2, Y1, Y2): X1, X2 at rational y != 0."""
    y = Fraction(y)
    if y == 0:
        raise ValueError("X1, X2 need y != 0")
    pad = order + 2
    t = RationalSeries.t(pad)
    one = RationalSeries.const(1, pad)
    t2 = t * t
    X1 = (one - t - series_sqrt(one - 4 * y * y * t2 - 3 * t2 - 2 * t)) / (2 * y * t)
    X2 = (one - (y + 1) * t - series_sqrt(one - 7 * y * y * t2 - 2 * y * t2 - 3 * t2
                                           - 2 * y * t - 2 * t)) / (2 * y * t)
    Y1 = (t - one + series_sqrt(one - 2 * t - 7 * t2)) / (4 * t)
    Y2 = (one - 2 * t - series_sqrt(one - 4 * t - 12 * t2)) / (8 * t)
    return tuple(r.truncate(order) for r in (X1, X2, Y1, Y2))


def meander_closed_form(order: int) -> RationalSeries:
    """(10t - 1 + sqrt((1+2t)(1-6t))) / (8t(1-7t))."""
    pad = order + 2
    t = RationalSeries.t(pad)
    one = RationalSeries.const(1, pad)
    r = series_sqrt((one + 2 * t) * (one - 6 * t))
    return ((10 * t - one + r) / (8 * t * (one - 7 * t))).truncate(order)


def _pmul(*polys):
    out = [Fraction(1)]
    for p in polys:
        nxt = [Fraction(0)] * (len(out) + len(p) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(p):
                nxt[i + j] += a * b
        out = nxt
    return out


def excursion_quartic():
    """Ascending-in-t coefficient lists of the quartic P0 + P1 E + ... + P4 E^4."""
    a, b, c = [1, 2], [-1, 7], [-1, 4]   # 2t+1, 7t-1, 4t-1
    p4 = _pmul([0, 0, 0, 0, 0, 256], a, a, b, b, c, c)
    p3 = _pmul([0, 0, 16], a, b, c, [1, -15, 69, -85, -192, 564])
    p2 = [-1, 27, -303, 1742, -4624, -864, 36720, -68144, -44448, 197264]
    p1 = [2, -45, 375, -1256, 121, 8901, -14436, -12220, 36000]
    p0 = [-1, 18, -108, 170, 591, -1901, -456, 4288]
    return [p0, p1, p2, p3, p4]


def quartic_residual(E: RationalSeries) -> RationalSeries:
    coeffs = [poly_t(p, E.order) for p in excursion_quartic()]
    return algebraic_residual(coeffs, E)


def _first_mismatch(a, b, order):
    for n in range(order):
        if a[n] != b[n]:
            return n
    return None


def closed_form_checks(order: int = 20) -> dict:
    """Meander closed form vs DP and the excursion quartic at the DP series."""
    if order < 15:
        raise ValueError("closed-form checks need order >= 15")
    S = NStepSet.motzkin()
    meanders = count_by_dp(S, order - 1, "meander", state_mode="typed")
    excursions = count_by_dp(S, order - 1, "excursion", state_mode="typed")
    M = RationalSeries(meanders, 0, order)
    E = RationalSeries(excursions, 0, order)
    cf = meander_closed_form(order)
    res = quartic_residual(E)
    bad_m = _first_mismatch(cf, M, order)
    bad_q = next((n for n in range(order) if res[n] != 0), None)
    return {
        "order": order,
        "meander_closed_form": {"ok": bad_m is None, "first_mismatch": bad_m,
                                "dp": [int(c) for c in meanders[:8]],
                                "closed_form": [int(c) for c in cf.coefficients(0, 8)]},
        "excursion_quartic": {"ok": bad_q is None, "first_nonzero": bad_q,
                              "residual": [str(res[n]) for n in range(order)]},
        "ok": bad_m is None and bad_q is None,
    }


# ---------------------------------------------------------------------------
# asymptotics


def gamma() -> float:
    """Positive root in (0, 1) of 1024 g^4 - 8019 g^2 + 2916."""
    return brentq(lambda g: 1024 * g ** 4 - 8019 * g ** 2 + 2916, 0.0, 1.0, xtol=1e-15)


def motzkin_asymptotics(cls: str, n: int) -> float:
    if n < 1:
        raise ValueError("n must be positive")
    if cls == "walk":
        return float(7 ** n)
    six = 6.0 ** n
    if cls == "bridge":
        return 7.0 ** n - sqrt(3 / pi) * six / sqrt(n)
    if cls == "meander":
        return 0.75 * 7.0 ** n + 3 * sqrt(3) / (2 * sqrt(pi)) * six / sqrt(n ** 3)
    if cls == "excursion":
        return 9 / 16 * 7.0 ** n - gamma() * six / sqrt(pi * n ** 3)
    raise ValueError(f"unknown class {cls!r}")


def map_to_2d(walk):
    """phi(s) = (min s, max s); the two (-1, 1) colours are kept apart by the
    step set itself."""
    return tuple((IntSet(s).min, IntSet(s).max) for s in walk)
