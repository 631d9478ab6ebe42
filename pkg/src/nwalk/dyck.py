"""Closed forms and asymptotics for the Dyck step set {{-1}, {1}, {-1,1}}.

Weights are (p_m1, p_p1, p_m1p1) for the steps {-1}, {1}, {-1,1}.  Series
are exact (``RationalSeries``); asymptotic and limit-law evaluators return
floats.  Regime boundaries are decided with exact rational comparisons.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt, pi
from collections import namedtuple

import numpy as np

from .intset import IntSet
from .series import RationalSeries, LaurentPoly, BivariateSeries, series_sqrt
from .walks import NStepSet, parse_weight


@dataclass(frozen=True)
class DyckWeights:
    p_m1: Fraction = Fraction(1)
    p_p1: Fraction = Fraction(1)
    p_m1p1: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ("p_m1", "p_p1", "p_m1p1"):
            object.__setattr__(self, name, parse_weight(getattr(self, name)))

    @classmethod
    def parse(cls, text: str):
        parts = [p for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError("Dyck weights are three rationals p_-1,p_1,p_-1_1")
        return cls(*parts)

    @property
    def total(self):
        return self.p_m1 + self.p_p1 + self.p_m1p1

    @property
    def q(self):
        return self.p_p1 + self.p_m1p1

    @property
    def is_probability(self):
        return self.total == 1

    def swapped(self):
        return DyckWeights(self.p_p1, self.p_m1, self.p_m1p1)

    def step_set(self) -> NStepSet:
        return NStepSet.dyck(self.p_m1, self.p_p1, self.p_m1p1)

    def require_probability(self):
        if not self.is_probability:
            raise ValueError(f"weights must sum to 1 (they sum to {self.total})")


UNWEIGHTED = DyckWeights()

MinMax = namedtuple("MinMax", "S K0 K1")


def minmax_polynomial(w: DyckWeights = UNWEIGHTED) -> MinMax:
    """S(x,y) and the kernel K = xy(1 - t S) = K0 - t*K1 as Laurent polynomials."""
    S = (LaurentPoly.mono(w.p_m1, -1, -1) + LaurentPoly.mono(w.p_p1, 1, 1)
         + LaurentPoly.mono(w.p_m1p1, -1, 1))
    xy = LaurentPoly.mono(1, 1, 1)
    return MinMax(S, xy, xy * S)


def walk_series(w: DyckWeights, order: int) -> BivariateSeries:
    """D(x,y;t) = 1/(1 - tS), min marked by x and max by y."""
    return BivariateSeries.geometric(minmax_polynomial(w).S, order)


# ---------------------------------------------------------------------------
# kernel roots and meander series


def catalan_of(z: RationalSeries) -> RationalSeries:
    """(1 - sqrt(1 - 4z)) / (2z) for a series z with z(0) = 0."""
    if z.is_zero():
        return RationalSeries.const(1, z.order)
    if z.valuation < 1:
        raise ValueError("catalan_of needs z(0) = 0")
    one = RationalSeries.const(1, z.order)
    return (one - series_sqrt(one - 4 * z)) / (2 * z)


def _t(order):
    return RationalSeries.t(order)


def Y_series(w: DyckWeights, order: int) -> RationalSeries:
    """Root of K(1, Y) = 0: Y = p_m1 t Cat(p_m1 q t^2)."""
    t = _t(order + 2)
    return (w.p_m1 * t * catalan_of(w.p_m1 * w.q * t * t)).truncate(order)


def X_series(w: DyckWeights, y, order: int) -> RationalSeries:
    """Root of K(X, y) = 0 at a fixed nonzero rational y."""
    y = parse_weight(y) if not isinstance(y, Fraction) else y
    if y == 0:
        raise ValueError("X(y,t) needs y != 0")
    u = w.p_m1 + w.p_m1p1 * y * y
    t = _t(order + 2)
    return (u / y * t * catalan_of(w.p_p1 * u * t * t)).truncate(order)


def kernel_roots(w: DyckWeights, y, order: int):
    return Y_series(w, order), X_series(w, y, order)


def kernel_value(w: DyckWeights, x: RationalSeries | Fraction, y, order: int) -> RationalSeries:
    """K(x,y) = xy - t(p_m1 + p_p1 x^2 y^2 + p_m1p1 y^2) as a series."""
    t = _t(order)
    one = RationalSeries.const(1, order)
    x = x if isinstance(x, RationalSeries) else one * x
    y = y if isinstance(y, RationalSeries) else one * y
    return x * y - t * (one * w.p_m1 + w.p_p1 * x * x * y * y + w.p_m1p1 * y * y)


def D00_series(w: DyckWeights, order: int) -> RationalSeries:
    """Excursions ending with reach {0}: Y/(p_m1 t) = Cat(p_m1 q t^2)."""
    t = _t(order + 2)
    return catalan_of(w.p_m1 * w.q * t * t).truncate(order)


def meander_gf_series(w: DyckWeights, x, y, order: int) -> RationalSeries:
    """D+(x,y;t): meanders with x^min y^max of the floored reach, at rational x, y."""
    x, y = Fraction(x), Fraction(y)
    if y == 0:
        return D00_series(w, order)
    pad = order + 3
    Y = Y_series(w, pad)
    X = X_series(w, y, pad)
    one = RationalSeries.const(1, pad)
    first = (one * x - X) / (one - X * X)
    second = one * y - x * Y - X * Y + x * y * X
    # K(x,y) vanishes at t = 0 when x = 0, costing one order of precision
    return (first * second / kernel_value(w, x, y, pad)).truncate(order)


def excursion_gf_printed(w: DyckWeights, y, order: int) -> RationalSeries:
    """The excursion form with denominator p_m1*t, as printed in the source
    (differs from the kernel form by (p_m1 + p_m1p1 y^2)/p_m1)."""
    y = Fraction(y)
    pad = order + 3
    Y = Y_series(w, pad)
    X = X_series(w, y, pad)
    one = RationalSeries.const(1, pad)
    return (X / (one - X * X) * (one * y - X * Y) / (w.p_m1 * _t(pad))).truncate(order)


def bridge_gf_series_unweighted(order: int) -> RationalSeries:
    """(1 - 6t^2) / (sqrt(1 - 8t^2) (1 - 9t^2))."""
    t = _t(order)
    one = RationalSeries.const(1, order)
    t2 = t * t
    return (one - 6 * t2) / (series_sqrt(one - 8 * t2) * (one - 9 * t2))


def unweighted_closed_forms(order: int) -> dict:
    """The three unweighted meander/excursion closed forms as series."""
    pad = order + 3
    t = _t(pad)
    one = RationalSeries.const(1, pad)
    t2 = t * t
    r = series_sqrt(one - 8 * t2)
    forms = {
        "meander": -(one - 4 * t - r) / (4 * t * (one - 3 * t)),
        "excursion": (one - 8 * t2 - (one - 12 * t2) * r) / (8 * t2 * (one - 9 * t2)),
        "excursion_zero": (one - r) / (4 * t2),
    }
    return {k: v.truncate(order) for k, v in forms.items()}


def meander_probability_gf(p_m1, order: int) -> RationalSeries:
    """D+(1,1;t) when the weights sum to 1; depends on p_m1 only."""
    p = Fraction(p_m1)
    pad = order + 3
    t = _t(pad)
    one = RationalSeries.const(1, pad)
    r = series_sqrt(one - 4 * p * (1 - p) * t * t)
    return (-(one - 2 * (1 - p) * t - r) / (2 * (1 - p) * t * (one - t))).truncate(order)


# ---------------------------------------------------------------------------
# asymptotics


def asymptotic_eval(cls: str, n: int) -> float:
    """Unweighted Dyck asymptotic formulas (leading and second order term)."""
    if n < 1:
        raise ValueError("n must be positive")
    even = 1 if n % 2 == 0 else 0
    sgn = 1 if even else -1
    r8 = 8 ** (n / 2)
    if cls == "walk":
        return float(3 ** n)
    if cls == "bridge":
        return even * (3 ** n - 2 * sqrt(2) / sqrt(pi) * r8 / sqrt(n))
    if cls == "meander":
        return 3 ** n / 2 + (3 * sqrt(2) * (1 + sgn) + 4 * (1 - sgn)) / sqrt(pi) * r8 / sqrt(n ** 3)
    if cls == "excursion":
        return even * (3 ** n / 4 + EXCURSION_CONSTANT * r8 / sqrt(pi * n ** 3))
    raise ValueError(f"unknown class {cls!r}")


# second order constant of the unweighted excursion count; the exact counts
# converge to 4*sqrt(2), not sqrt(8)
EXCURSION_CONSTANT = 4 * sqrt(2)


def excursion_regime(w: DyckWeights) -> int:
    """Which of the four excursion-probability regimes the weights fall in."""
    w.require_probability()
    hi, lo = max(w.p_m1, w.p_p1), min(w.p_m1, w.p_p1)
    half = Fraction(1, 2)
    if hi < half:
        return 1
    if hi == half and lo < half:
        return 2
    if hi == half and lo == half:
        return 3
    if hi > half:
        if hi + lo > 1:
            raise ValueError("regime undefined for p_-1 + p_1 > 1")
        return 4
    raise ValueError("weights outside every regime")


def excursion_prob_asym(w: DyckWeights, n: int) -> float:
    """Asymptotic probability that a walk of length 2n is an excursion.

    The formula is symmetric under p_-1 <-> p_1; the larger of the two plays
    the role of p_-1 below.
    """
    regime = excursion_regime(w)
    a = float(max(w.p_m1, w.p_p1))   # role of p_-1
    b = float(min(w.p_m1, w.p_p1))   # role of p_1
    c = float(w.p_m1p1)
    if regime == 1:
        return (1 - 2 * b) * (1 - 2 * a) / ((1 - b) * (1 - a))
    if regime == 2:
        return (1 - 2 * b) / ((1 - b) * sqrt(pi * n))
    if regime == 3:
        return 1 / sqrt(pi * n ** 3)
    rho = 4 * a * (1 - a)
    if Fraction(max(w.p_m1, w.p_p1)) + min(w.p_m1, w.p_p1) == 1:
        gamma = 1 / sqrt(pi)
    else:
        gamma = (2 * a / sqrt(pi)
                 * (sqrt(c * a * (1 - a) * (a - b)) - a * (1 - a) + (1 - b) / 2)
                 / ((1 - b) * (2 * a - 1) ** 2))
    return gamma * rho ** n / sqrt(n ** 3)


def excursion_limit(w: DyckWeights) -> float:
    """Limit excursion probability in regime 1 (0 elsewhere)."""
    if excursion_regime(w) != 1:
        return 0.0
    return excursion_prob_asym(w, 1)


# ---------------------------------------------------------------------------
# drift and the 2D picture


@dataclass(frozen=True)
class DriftVector:
    delta_x: Fraction
    delta_y: Fraction


def drift_vector(w: DyckWeights) -> DriftVector:
    """Expected change of (min, max) per step, for probability weights."""
    w.require_probability()
    return DriftVector(w.p_p1 - w.p_m1p1 - w.p_m1, w.p_p1 + w.p_m1p1 - w.p_m1)


def map_to_2d(walk):
    """phi(s) = (min s, max s) for each step."""
    out = []
    for s in walk:
        s = s if isinstance(s, IntSet) else IntSet(s)
        out.append((s.min, s.max))
    return tuple(out)


# ---------------------------------------------------------------------------
# limit laws


def _X_float(w: DyckWeights, y: float, t: float) -> float:
    u = float(w.p_m1) + float(w.p_m1p1) * y * y
    p1 = float(w.p_p1)
    if p1 == 0:
        return u * t / y
    return (1 - sqrt(1 - 4 * p1 * u * t * t)) / (2 * p1 * y * t)


def _Y_float(w: DyckWeights, t: float) -> float:
    q, pm = float(w.q), float(w.p_m1)
    if q == 0:
        return pm * t
    return (1 - sqrt(max(0.0, 1 - 4 * pm * q * t * t))) / (2 * q * t)


def D00_value(w: DyckWeights, t: float) -> float:
    """D+(0,0;t) at a numeric t inside (or on) the disc of convergence."""
    z = float(w.p_m1 * w.q) * t * t
    if z == 0:
        return 1.0
    return (1 - sqrt(max(0.0, 1 - 4 * z))) / (2 * z)


def _float_series_div(a, b):
    n = len(a)
    out = np.zeros(n)
    for k in range(n):
        out[k] = (a[k] - np.dot(b[1:k + 1], out[k - 1::-1][:k])) / b[0]
    return out


def _float_sqrt_affine(A, B, n):
    """Coefficients of sqrt(A + B u) in u (A > 0)."""
    out = np.zeros(n)
    c = sqrt(A)
    ratio = B / A
    coef = 1.0
    for k in range(n):
        out[k] = c * coef
        coef *= (0.5 - k) / (k + 1) * ratio
    return out


def maxlaw_regime(w: DyckWeights) -> int:
    """Drift case of the final-max law (1 discrete, 2 Rayleigh, 3 normal*Rayleigh, 4 normal)."""
    d = drift_vector(w)
    if d.delta_y < 0:
        return 1
    if d.delta_y == 0:
        if d.delta_x != 0:
            return 2
        raise ValueError("zero drift in both coordinates: no limit law stated")
    if d.delta_x == 0:
        return 3
    return 4


def maxlaw_discrete_pmf(w: DyckWeights, k_max: int = 200):
    """Limit law of half the final maximum of an excursion, negative y-drift.

    Returns (pmf array over k = 0..k_max, mean of that pmf).  The pmf is the
    expansion in u = y^2 of
        (p_m1 + p_m1p1) / (p_m1 + p_m1p1 u) * h(u) / (h(u) - u)
    normalized at u = 1, where X(y, r1)^2 = h(y^2)/y^2 and
    r1 = (4 p_m1 (1 - p_m1))^(-1/2).  Convergence of the finite-n law is
    slow, roughly O(1/sqrt(n)) in total variation.
    """
    w.require_probability()
    if w.p_m1p1 == 0:
        raise ValueError("the final-max law needs p_-1,1 != 0")
    if maxlaw_regime(w) != 1:
        raise ValueError(f"discrete final-max law needs negative y-drift; regime is {maxlaw_regime(w)}")
    pm, pp, pc = float(w.p_m1), float(w.p_p1), float(w.p_m1p1)
    r1 = 1 / sqrt(4 * pm * (1 - pm))
    n = k_max + 1
    g = np.zeros(n)
    g[0], g[1 if n > 1 else 0] = pm, (pc if n > 1 else pm)
    # y X(y) = g(u) r1 Cat(pp g(u) r1^2)
    if pp == 0:
        cat = np.zeros(n)
        cat[0] = 1.0
    else:
        sq = _float_sqrt_affine(1 - 4 * pp * pm * r1 * r1, -4 * pp * pc * r1 * r1, n)
        num = -sq
        num[0] += 1.0
        den = np.zeros(n)
        den[0] = 2 * pp * pm * r1 * r1
        if n > 1:
            den[1] = 2 * pp * pc * r1 * r1
        # num has zero constant term; divide by u-free denominator
        cat = _float_series_div(num, den)
    yX = np.convolve(g * r1, cat)[:n]
    h = np.convolve(yX, yX)[:n]
    hm = h.copy()
    if n > 1:
        hm[1] -= 1.0
    omega = _float_series_div(h, np.convolve(hm, g)[:n])
    # value at u = 1 from the closed form
    X1 = _X_float(w, 1.0, r1)
    h1 = X1 * X1
    omega1 = h1 / ((h1 - 1) * (pm + pc))
    pmf = omega / omega1
    mean = float(np.dot(np.arange(n), pmf))
    return pmf, mean


def maxlaw_mean_printed(w: DyckWeights) -> float:
    """Closed-form mean of the final max in the discrete case.

    This is the mean of the full maximum, i.e. twice the mean of the pmf
    returned by maxlaw_discrete_pmf.
    """
    pm, pp, pc = float(w.p_m1), float(w.p_p1), float(w.p_m1p1)
    return (2 * (1 - pm) / (2 * pm - 1)
            + 2 * (2 * pm - pp) / ((2 * pm - 1) * (1 - pp)) * sqrt(pm * pc * (1 - pm) / (pm - pp)))


def maxlaw_moments(w: DyckWeights, n: int):
    """(mean, variance) of half the final max for excursions of length 2n,
    zero x-drift case."""
    if maxlaw_regime(w) != 3:
        raise ValueError("moment formulas are for zero x-drift and nonzero y-drift")
    pm = float(w.p_m1)
    mu = 1 - 2 * pm
    return mu * n - pm * sqrt(pi * n), pm * (2 - pm * pi) * n


def returns_regime(w: DyckWeights) -> int:
    w.require_probability()
    pm, pp = w.p_m1, w.p_p1
    half = Fraction(1, 2)
    cases = []
    if pp <= pm < half:
        cases.append(1)
    if pm < half and pp == half:
        cases.append(2)
    if pp < half and pm == half:
        cases.append(3)
    if pp + pm == 1:
        cases.append(4)
    if pm < half < pp < 1 and pm + pp < 1:
        cases.append(5)
    if pp < half < pm < 1 and pm + pp < 1:
        cases.append(6)
    if pm < pp < half:
        # mirror image of case 1 is not listed; the geometric law still holds
        cases.append(1)
    if len(cases) != 1:
        raise ValueError(f"weights match returns cases {cases or 'none'}")
    return cases[0]


def returns_mixing(w: DyckWeights) -> float:
    """zeta in the mixed law (1 + (k-1) zeta) / 2^(k+1) of case 6.

    With Delta = sqrt(1 - t^2/rho1), D+(0,0) = 2 - 2 Delta + ... and
    D+(0,1) = d0 + d1 Delta + ...; zeta = -d0/d1.
    """
    pm, pc = float(w.p_m1), float(w.p_m1p1)
    q = 1 - pm
    t = 1 / sqrt(4 * pm * q)
    X = _X_float(w, 1.0, t)
    s = pm + pc
    alpha = X / ((1 - X * X) * t * s)
    beta = X * X / ((1 - X * X) * t * s)
    d0 = alpha - beta / (2 * q * t)
    d1 = beta / (2 * q * t)
    return -d0 / d1


def returns_eta_printed(w: DyckWeights) -> float:
    pm, pp = float(w.p_m1), float(w.p_p1)
    return (pm * (pm - pp) - sqrt(pm * (1 - pm) * (1 - pp - pm) * (pm - pp))) / (pm * (1 - pp))


def returns_pmf(w: DyckWeights, k_max: int = 1000):
    """Limit law of the number of returns to {0} in an excursion (k = 0..k_max)."""
    case = returns_regime(w)
    k = np.arange(k_max + 1, dtype=float)
    half_pow = np.power(0.5, k + 1)
    if case in (1, 5):
        if case == 1:
            d = D00_value(w, 1.0)
        else:
            pp = float(w.p_p1)
            d = D00_value(w, 1 / sqrt(4 * pp * (1 - pp)))
        return (1 / d) * np.power(1 - 1 / d, k)
    if case == 2:
        pm = float(w.p_m1)
        return (1 - pm) * np.power(pm, k)
    if case == 3:
        return half_pow
    if case == 4:
        return k * half_pow
    zeta = returns_mixing(w)
    return (1 + (k - 1) * zeta) * half_pow


def returns_pmf_printed_case6(w: DyckWeights, k_max: int = 1000):
    """The case-6 law exactly as printed, (1 + eta^(k-1)) / 2^(k+1), for k >= 1."""
    eta = returns_eta_printed(w)
    k = np.arange(k_max + 1, dtype=float)
    out = (1 + np.power(eta, np.maximum(k - 1, 0))) * np.power(0.5, k + 1)
    out[0] = 0.0
    return out


# ---------------------------------------------------------------------------
# exact finite-n distributions (Dyck floored sets are step-2 progressions)


def _scaled(w: DyckWeights):
    from math import lcm
    d = lcm(w.p_m1.denominator, w.p_p1.denominator, w.p_m1p1.denominator)
    return int(w.p_m1 * d), int(w.p_p1 * d), int(w.p_m1p1 * d), d


def meander_layer(w: DyckWeights, n: int, track_returns: bool = False):
    """Exact weights of Dyck meanders of length n keyed by (min, max[, returns]).

    Returns (dict, denominator**n); returns count the times t >= 1 at which
    the floored reach is {0}.
    """
    a, b, c, d = _scaled(w)
    layer = {(0, 0, 0) if track_returns else (0, 0): 1}
    for _ in range(n):
        nxt = {}
        for key, v in layer.items():
            lo, hi = key[0], key[1]
            r = key[2] if track_returns else None
            moves = []
            # {-1}
            if a and hi >= 1:
                nlo = lo - 1 if lo >= 1 else lo + 1
                moves.append((nlo, hi - 1, a))
            if b:
                moves.append((lo + 1, hi + 1, b))
            if c:
                nlo = lo - 1 if lo >= 1 else lo + 1
                moves.append((nlo, hi + 1, c))
            for nlo, nhi, wt in moves:
                if track_returns:
                    k = (nlo, nhi, r + (1 if nlo == nhi == 0 else 0))
                else:
                    k = (nlo, nhi)
                nxt[k] = nxt.get(k, 0) + v * wt
        layer = nxt
    return layer, d ** n


def final_max_distribution(w: DyckWeights, n: int):
    """Exact law of half the final max among excursions of length 2n."""
    layer, _ = meander_layer(w, 2 * n)
    tot = {}
    for (lo, hi), v in layer.items():
        if lo == 0:
            tot[hi // 2] = tot.get(hi // 2, 0) + v
    z = sum(tot.values())
    return {k: Fraction(v, z) for k, v in sorted(tot.items())}


def returns_distribution(w: DyckWeights, n: int):
    """Exact law of the number of returns among excursions of length 2n."""
    layer, _ = meander_layer(w, 2 * n, track_returns=True)
    tot = {}
    for (lo, hi, r), v in layer.items():
        if lo == 0:
            tot[r] = tot.get(r, 0) + v
    z = sum(tot.values())
    return {k: Fraction(v, z) for k, v in sorted(tot.items())}


def total_variation(p: dict, q) -> float:
    """TV distance between a dict law and an array (or dict) law."""
    if not isinstance(q, dict):
        q = {k: float(v) for k, v in enumerate(q)}
    keys = set(p) | set(q)
    return 0.5 * sum(abs(float(p.get(k, 0)) - float(q.get(k, 0))) for k in keys)
