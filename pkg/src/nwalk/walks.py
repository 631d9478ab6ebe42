"""Reachable-set dynamics and exact counting of nondeterministic walks.

A step is a nonempty finite set of integers; a walk takes any element of each
step.  The reach of a walk is the Minkowski sum of its steps.  For meanders
the reach is intersected with the nonnegative integers after every step.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
import re

from .intset import IntSet, sumset, ZERO, EMPTY

CLASSES = ("walk", "bridge", "meander", "excursion")


def parse_weight(text) -> Fraction:
    if isinstance(text, Fraction):
        w = text
    elif isinstance(text, int):
        w = Fraction(text)
    else:
        t = str(text).strip()
        if not re.fullmatch(r"\d+(/\d+)?", t):
            raise ValueError(f"bad weight {text!r}: expected a nonnegative rational like 1/3")
        w = Fraction(t)
    if w < 0:
        raise ValueError(f"negative weight {w}")
    return w


def parse_walk(text: str) -> list:
    """'{2};{-1,1}' -> [IntSet, IntSet]. Empty text is the empty walk."""
    text = text.strip()
    if not text:
        return []
    return [IntSet.parse(p) for p in text.split(";")]


class NStepSet:
    """Finite set of steps with exact nonnegative weights."""

    def __init__(self, steps):
        agg = {}
        for item in steps:
            if isinstance(item, tuple):
                s, w = item
            else:
                s, w = item, 1
            s = IntSet.parse(s) if isinstance(s, str) else IntSet(s)
            if not s:
                raise ValueError("steps must be nonempty sets")
            agg[s] = agg.get(s, Fraction(0)) + parse_weight(w)
        if not agg:
            raise ValueError("a step set needs at least one step")
        self.steps = tuple(sorted(agg.items(), key=lambda sw: (len(sw[0]), sw[0].elements)))

    @classmethod
    def parse(cls, steps: str, weights: str | None = None):
        sets = [IntSet.parse(p) for p in steps.split(";") if p.strip()]
        if weights is None or not str(weights).strip():
            ws = [1] * len(sets)
        else:
            ws = [parse_weight(w) for w in str(weights).split(",")]
            if len(ws) != len(sets):
                raise ValueError(f"{len(sets)} steps but {len(ws)} weights")
        return cls(list(zip(sets, ws)))

    @classmethod
    def dyck(cls, p_m1=1, p_p1=1, p_m1p1=1):
        return cls([({-1}, p_m1), ({1}, p_p1), ({-1, 1}, p_m1p1)])

    # weight order follows the usual listing (p1, p-1, p0, p-10, p01, p-11, p-101)
    MOTZKIN_STEPS = ({1}, {-1}, {0}, {-1, 0}, {0, 1}, {-1, 1}, {-1, 0, 1})

    @classmethod
    def motzkin(cls, weights=None):
        ws = [1] * 7 if weights is None else list(weights)
        if len(ws) != 7:
            raise ValueError("Motzkin step set takes 7 weights")
        return cls(list(zip(cls.MOTZKIN_STEPS, ws)))

    # -- accessors ---------------------------------------------------------
    def __iter__(self):
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)

    @property
    def sets(self):
        return [s for s, _ in self.steps]

    def weight(self, s) -> Fraction:
        s = IntSet.parse(s) if isinstance(s, str) else IntSet(s)
        return dict(self.steps).get(s, Fraction(0))

    @property
    def total_weight(self) -> Fraction:
        return sum((w for _, w in self.steps), Fraction(0))

    @property
    def unweighted(self) -> bool:
        return all(w == 1 for _, w in self.steps)

    def positive(self):
        """Same step set without zero-weight steps."""
        return NStepSet([(s, w) for s, w in self.steps if w])

    def mirrored(self):
        """Each step s replaced by -s, keeping its weight."""
        return NStepSet([(IntSet(-e for e in s), w) for s, w in self.steps])

    def top_steps(self) -> dict:
        """Multiset of step maxima with aggregated weights."""
        out = {}
        for s, w in self.steps:
            out[s.max] = out.get(s.max, Fraction(0)) + w
        return out

    @property
    def lowest(self) -> int:
        return min(s.min for s, _ in self.steps)

    @property
    def max_norm(self) -> int:
        return max(s.max - s.min for s, _ in self.steps)

    def scaled(self):
        """(integer weights, common denominator)."""
        d = lcm(*(w.denominator for _, w in self.steps))
        return [(s, int(w * d)) for s, w in self.steps], d

    def spec(self) -> str:
        return ";".join(str(s) for s, _ in self.steps)

    def __eq__(self, other):
        return isinstance(other, NStepSet) and self.steps == other.steps

    def __hash__(self):
        return hash(self.steps)

    def __repr__(self):
        return "NStepSet(" + ", ".join(f"{s}:{w}" for s, w in self.steps) + ")"


@dataclass(frozen=True)
class ReachState:
    unconstrained: IntSet = ZERO
    floored: IntSet = ZERO
    length: int = 0


@dataclass(frozen=True)
class WalkClass:
    is_bridge: bool
    is_meander: bool
    is_excursion: bool

    def __post_init__(self):
        if self.is_excursion and not self.is_meander:
            raise ValueError("an excursion is always a meander")

    def member(self, cls: str) -> bool:
        if cls == "walk":
            return True
        return {"bridge": self.is_bridge, "meander": self.is_meander,
                "excursion": self.is_excursion}[cls]


def floor_nonneg(s: IntSet) -> IntSet:
    return IntSet(e for e in s if e >= 0)


def step_reach(state: ReachState, s) -> ReachState:
    s = s if isinstance(s, IntSet) else IntSet(s)
    return ReachState(sumset(state.unconstrained, s),
                      floor_nonneg(sumset(state.floored, s)),
                      state.length + 1)


def reach_trace(walk) -> list:
    states = [ReachState()]
    for s in walk:
        states.append(step_reach(states[-1], s))
    return states


def classify_walk(walk) -> WalkClass:
    state = ReachState()
    meander = True
    for s in walk:
        state = step_reach(state, s)
        if not state.floored:
            meander = False
    return WalkClass(0 in state.unconstrained, meander,
                     meander and 0 in state.floored)


# ---------------------------------------------------------------------------
# full-set dynamic programming over (min, bitmask) states


def _step_masks(steps):
    out = []
    for s, w in steps:
        lo, mask = s.to_mask()
        bits = [i for i in range(mask.bit_length()) if mask >> i & 1]
        out.append((lo, bits, w))
    return out


def _apply(mask, bits):
    m = 0
    for b in bits:
        m |= mask << b
    return m


def reach_layers(S: NStepSet, n_max: int, floored: bool = False):
    """Yield, for n = 0..n_max, the dict {(min, mask): scaled weight}.

    Weights are integers (scaled by the common denominator per step); with
    floored=True the reach is clipped to Z>=0 and dead walks are dropped.
    """
    steps, _ = S.scaled()
    sm = _step_masks([(s, w) for s, w in steps if w])
    layer = {(0, 1): 1}
    yield layer
    for _ in range(n_max):
        nxt = {}
        for (lo, mask), c in layer.items():
            for slo, bits, w in sm:
                m = _apply(mask, bits)
                nlo = lo + slo
                if floored and nlo < 0:
                    m >>= -nlo
                    if not m:
                        continue
                    tz = (m & -m).bit_length() - 1
                    m >>= tz
                    nlo = tz
                key = (nlo, m)
                nxt[key] = nxt.get(key, 0) + c * w
        layer = nxt
        yield layer


def _finish(raw, d):
    if d == 1:
        return list(raw)
    return [Fraction(c, d ** n) for n, c in enumerate(raw)]


def count_all_full(S: NStepSet, n_max: int) -> dict:
    """Counts of every class for n = 0..n_max by the full-set DP."""
    _, d = S.scaled()
    walk, bridge, meander, exc = [], [], [], []
    for layer in reach_layers(S, n_max):
        walk.append(sum(layer.values()))
        bridge.append(sum(c for (lo, m), c in layer.items() if lo <= 0 and m >> -lo & 1))
    for layer in reach_layers(S, n_max, floored=True):
        meander.append(sum(layer.values()))
        exc.append(sum(c for (lo, m), c in layer.items() if lo == 0))
    return {"walk": _finish(walk, d), "bridge": _finish(bridge, d),
            "meander": _finish(meander, d), "excursion": _finish(exc, d)}


def count_by_dp(S: NStepSet, n_max: int, cls: str = "walk",
                state_mode: str = "full", automaton=None):
    """Total weight of length-n walks of the class, for n = 0..n_max.

    state_mode "full" hashes whole reach sets; "typed" keys states by
    (type, min, norm) through a type automaton (inferred when not given).
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if cls not in CLASSES:
        raise ValueError(f"unknown class {cls!r}; expected one of {CLASSES}")
    if state_mode in ("full", "full-set"):
        _, d = S.scaled()
        if cls in ("walk", "bridge"):
            layers = reach_layers(S, n_max)
        else:
            layers = reach_layers(S, n_max, floored=True)
        raw = []
        for layer in layers:
            if cls in ("walk", "meander"):
                raw.append(sum(layer.values()))
            elif cls == "bridge":
                raw.append(sum(c for (lo, m), c in layer.items() if lo <= 0 and m >> -lo & 1))
            else:
                raw.append(sum(c for (lo, m), c in layer.items() if lo == 0))
        return _finish(raw, d)
    if state_mode in ("typed", "type-compressed"):
        from .typelab import typed_count
        return typed_count(S, n_max, cls, automaton=automaton)
    raise ValueError(f"unknown state mode {state_mode!r}")


# ---------------------------------------------------------------------------
# brute-force enumeration with plain Python sets


class OracleCapExceeded(ValueError):
    pass


def oracle_cost(S: NStepSet, n: int) -> int:
    k = len(S.positive())
    return sum(k ** i for i in range(1, n + 1))


def _oracle_walks(S: NStepSet, n: int, cap: int):
    cost = oracle_cost(S, n)
    if cost > cap:
        raise OracleCapExceeded(f"enumeration needs {cost} step applications, cap is {cap}")
    steps = [(frozenset(s.elements), w) for s, w in S.steps if w]

    def rec(prefix, reach, floored, alive, weight):
        if len(prefix) == n:
            yield prefix, reach, floored, alive, weight
            return
        for s, w in steps:
            r = frozenset(x + y for x in reach for y in s)
            f = frozenset(v for v in (x + y for x in floored for y in s) if v >= 0)
            yield from rec(prefix + (s,), r, f, alive and bool(f), weight * w)

    yield from rec((), frozenset({0}), frozenset({0}), True, Fraction(1))


def enumerate_oracle(S: NStepSet, n: int, cap: int = 10 ** 8) -> list:
    """Every length-n walk with its class and weight, by direct set arithmetic."""
    out = []
    for prefix, reach, floored, alive, weight in _oracle_walks(S, n, cap):
        walk = tuple(IntSet(s) for s in prefix)
        out.append((walk, WalkClass(0 in reach, alive, alive and 0 in floored), weight))
    return out


def oracle_tallies(S: NStepSet, n: int, cap: int = 10 ** 8) -> dict:
    """Class tallies of all length-n walks by exhaustive enumeration.

    Walks are enumerated depth first; the last step is not materialized,
    its class is read off the parent's sets.
    """
    if n == 0:
        return {c: Fraction(1) for c in CLASSES}
    cost = oracle_cost(S, n)
    if cost > cap:
        raise OracleCapExceeded(f"enumeration needs {cost} step applications, cap is {cap}")
    scaled, d = S.scaled()
    steps = [(frozenset(s.elements), frozenset(-e for e in s.elements), s.max, w)
             for s, w in scaled if w]
    tally = dict.fromkeys(CLASSES, 0)

    def leaves(reach, floored, weight):
        fmax = max(floored) if floored else None
        for s, neg, smax, w in steps:
            ww = weight * w
            tally["walk"] += ww
            if not neg.isdisjoint(reach):
                tally["bridge"] += ww
            if fmax is not None and fmax + smax >= 0:
                tally["meander"] += ww
                if not neg.isdisjoint(floored):
                    tally["excursion"] += ww

    def rec(depth, reach, floored, weight):
        # floored is empty once the walk stopped being a meander
        if depth == n - 1:
            leaves(reach, floored, weight)
            return
        for s, _, _, w in steps:
            r = frozenset([x + y for x in reach for y in s])
            f = frozenset([v for v in [x + y for x in floored for y in s] if v >= 0])
            rec(depth + 1, r, f, weight * w)

    rec(0, frozenset((0,)), frozenset((0,)), 1)
    return {c: Fraction(v, d ** n) if d != 1 else Fraction(v) for c, v in tally.items()}


# ---------------------------------------------------------------------------
# classical one-dimensional paths


def classical_count(top_steps, n_max: int, cls: str = "meander"):
    """Weighted classical meanders or excursions with steps {height: weight}.

    ``top_steps`` may be a dict or an iterable of (step, weight) pairs;
    repeated steps add up.
    """
    if cls not in ("meander", "excursion"):
        raise ValueError("classical_count handles meanders and excursions")
    items = top_steps.items() if isinstance(top_steps, dict) else top_steps
    agg = {}
    for j, w in items:
        agg[int(j)] = agg.get(int(j), Fraction(0)) + parse_weight(w)
    agg = {j: w for j, w in agg.items() if w}
    d = lcm(*(w.denominator for w in agg.values())) if agg else 1
    ws = [(j, int(w * d)) for j, w in agg.items()]
    layer = {0: 1}
    raw = [1]
    for _ in range(n_max):
        nxt = {}
        for h, c in layer.items():
            for j, w in ws:
                if h + j >= 0:
                    nxt[h + j] = nxt.get(h + j, 0) + c * w
        layer = nxt
        raw.append(sum(layer.values()) if cls == "meander" else layer.get(0, 0))
    return _finish(raw, d)


def total_weights(S: NStepSet, n_max: int):
    tw = S.total_weight
    return [tw ** n for n in range(n_max + 1)]
