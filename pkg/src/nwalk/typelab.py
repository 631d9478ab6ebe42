"""Type automata for arbitrary step sets.

Reachable sets of long walks fall into finitely many periodic families
(``SumsetType``).  This module infers those families from explored reach
sets, builds the automaton whose states are types and whose letters are
steps, exports the transition matrices, and uses the automaton for
type-compressed counting and for the bridge extraction pipeline.

Two variants exist.  The walk variant tracks the unconstrained reach; the
meander variant tracks the reach floored at 0 and therefore needs extra
boundary transitions for states whose minimum is below ``c = -min min S``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
import json

import numpy as np

from .intset import (IntSet, SumsetType, EMPTY, ZERO, sumset, normalize, norm, shift,
                     fit_shape, type_instance, type_locate, _max_or, _proper_offsets)
from .series import LaurentPoly, BivariateSeries, RationalSeries, extract
from .walks import NStepSet, CLASSES, _finish


class InferenceFailure(RuntimeError):
    """Raised when no finite type list explains the explored reach sets."""

    def __init__(self, message, unmatched=()):
        self.unmatched = [IntSet(s) for s in unmatched]
        shown = ", ".join(str(s) for s in self.unmatched[:20])
        more = f" (+{len(self.unmatched) - 20} more)" if len(self.unmatched) > 20 else ""
        super().__init__(f"{message}; unmatched reach sets: {shown}{more}" if shown else message)


class ClosureError(RuntimeError):
    """A type/step combination leads outside the automaton."""


def _cut(s: IntSet) -> IntSet:
    return IntSet(e for e in s if e >= 0)


def _step_span(S: NStepSet) -> int:
    return max(max(abs(e) for e in s) for s, _ in S.steps) + S.max_norm


# ---------------------------------------------------------------------------
# exploration and candidate periodic shapes


def explore_reach_sets(S: NStepSet, max_norm: int, floored: bool = False,
                       min_cap: int | None = None, limit: int = 200_000):
    """Breadth-first exploration of reach sets up to the given norm.

    Walk variant: sets are normalized to min 0.  Floored variant: actual
    floored sets with min <= min_cap.  Returns (sets, truncated) where
    truncated says whether any successor was cut off by the caps.
    """
    steps = [s for s, _ in S.steps]
    start = ZERO
    seen = {start}
    queue = deque([start])
    truncated = False
    while queue:
        r = queue.popleft()
        for s in steps:
            nxt = sumset(r, s)
            if floored:
                nxt = _cut(nxt)
                if not nxt:
                    continue
                if nxt.min > min_cap:
                    truncated = True
                    continue
            else:
                nxt = normalize(nxt)
            if norm(nxt) > max_norm:
                truncated = True
                continue
            if nxt not in seen:
                if len(seen) >= limit:
                    raise InferenceFailure(f"more than {limit} distinct reach sets below norm {max_norm}")
                seen.add(nxt)
                queue.append(nxt)
    return seen, truncated


def periodic_fit(s: IntSet):
    """Smallest period g with a clean fit (small pruning masks), or None."""
    s = normalize(s)
    n = norm(s)
    if n < 4:
        return None
    for g in range(1, n // 4 + 1):
        f = fit_shape(s, g)
        if f is None:
            continue
        a, b, c, _ = f
        if _max_or(a) < n // 4 and _max_or(c) < n // 4:
            return g, a, b, c
    return None


def _min_k(g, a, c):
    k = 0
    while k * g <= _max_or(a) + _max_or(c):
        k += 1
    return k


# ---------------------------------------------------------------------------
# automaton


@dataclass
class TypeAutomaton:
    step_set: NStepSet
    variant: str                      # "walk" or "meander"
    types: list                       # proper SumsetType per state
    initial: int
    transitions: dict                 # (state, step index) -> (state, dmin, dmax)
    horizon: int                      # j-range checked beyond k for stability
    exact_index: dict = field(default_factory=dict)   # normalized set -> state
    priority: list = field(default_factory=list)      # periodic states in lookup order
    _boundary_cache: dict = field(default_factory=dict, repr=False)

    # -- basic queries ----------------------------------------------------
    @property
    def steps(self):
        return [s for s, _ in self.step_set.steps]

    @property
    def c(self) -> int:
        return max(0, -self.step_set.lowest)

    def __len__(self):
        return len(self.types)

    def sigma(self, i) -> int:
        T = self.types[i]
        if T.g == 0:
            return norm(T.b)
        return norm(type_instance(T, T.k))

    def is_periodic(self, i) -> bool:
        return self.types[i].g > 0

    def locate(self, s: IntSet):
        """(state, j, m) for a reach set, or None when no state contains it."""
        for i in self.priority:
            loc = type_locate(self.types[i], s)
            if loc is not None:
                return i, loc[0], loc[1]
        if s:
            i = self.exact_index.get(normalize(s))
            if i is not None:
                return i, 0, s.min
        return None

    def representative(self, i, j=None, lo=0) -> IntSet:
        """Member of state i with index j (default k) and minimum lo."""
        T = self.types[i]
        if T.g == 0:
            return shift(T.b, lo)
        base = type_instance(T, T.k if j is None else j)
        return shift(base, lo - base.min)

    def member_with(self, i, lo, nrm) -> IntSet:
        """Member of state i with the given minimum and norm."""
        T = self.types[i]
        if T.g == 0:
            if nrm != norm(T.b):
                raise ValueError("norm does not match the exact state")
            return shift(T.b, lo)
        alpha, beta = _proper_offsets(T)
        num = nrm + alpha + beta - T.b.max
        j = num // T.g
        if num % T.g == 0 and j >= T.k:
            return self.representative(i, j, lo)
        # near j = k pruning can swallow an end of the member, so the norm is
        # no longer linear in j; look the index up directly
        for j in range(T.k, T.k + self.horizon + 1):
            base = type_instance(T, j)
            if base and norm(base) == nrm:
                return shift(base, lo - base.min)
        raise ValueError("norm not realized by this type")

    def walk_state(self, walk):
        """Automaton state reached by a walk (following transitions)."""
        q = self.initial
        idx = {s: n for n, s in enumerate(self.steps)}
        for s in walk:
            q = self.transitions[(q, idx[IntSet(s)])][0]
        return q

    # -- meander boundary ---------------------------------------------------
    def boundary_step(self, i, lo, nrm, si):
        """Floored successor of the member (state i, min lo, norm nrm) under
        step si, as (state, new min, new norm) or None if the walk dies."""
        key = (i, lo, nrm, si)
        hit = self._boundary_cache.get(key)
        if hit is not None or key in self._boundary_cache:
            return hit
        r = _cut(sumset(self.member_with(i, lo, nrm), self.steps[si]))
        if not r:
            out = None
        else:
            loc = self.locate(r)
            if loc is None:
                raise ClosureError(f"floored set {r} (state {i}, step {self.steps[si]}) "
                                   "is outside the automaton")
            out = (loc[0], r.min, norm(r))
        self._boundary_cache[key] = out
        return out

    def boundary_table(self):
        """Boundary transitions for minima 0..c-1.

        For periodic states two cases are listed: a generic (large) index
        and the smallest index k; indices whose outcome differs from both
        are reported separately."""
        rows = []
        for i, T in enumerate(self.types):
            for ell in range(self.c):
                for si, s in enumerate(self.steps):
                    cases = [("k", T.k)] if T.g == 0 else \
                        [("generic", T.k + self.horizon), ("k", T.k)]
                    generic = None
                    for label, j in cases:
                        r0 = self.representative(i, j, ell)
                        r = _cut(sumset(r0, s))
                        if not r:
                            continue
                        loc = self.locate(r)
                        if loc is None:
                            raise ClosureError(f"floored set {r} is outside the automaton")
                        row = {"ell": ell, "from": i, "step": str(s), "to": loc[0],
                               "dmin": r.min - ell, "dmax": r.max - r0.max, "j": label}
                        rows.append(row)
                        if label == "generic":
                            generic = (row["to"], row["dmin"], row["dmax"])
                    if T.g > 0:
                        for j in range(T.k + 1, T.k + self.horizon):
                            r0 = self.representative(i, j, ell)
                            r = _cut(sumset(r0, s))
                            got = None
                            if r:
                                loc = self.locate(r)
                                got = (loc[0], r.min - ell, r.max - r0.max) if loc else None
                            if got != generic:
                                rows.append({"ell": ell, "from": i, "step": str(s),
                                             "to": None if got is None else got[0],
                                             "dmin": None if got is None else got[1],
                                             "dmax": None if got is None else got[2],
                                             "j": j})
        return rows

    # -- export ---------------------------------------------------------------
    def matrices(self):
        """A (generic), B_ell (boundary, large index), C_ell (boundary, smallest
        index) as nested lists of LaurentPoly, indexed [to][from]."""
        n = len(self.types)
        sig = [self.sigma(i) for i in range(n)]
        weights = [w for _, w in self.step_set.steps]

        def zero():
            return [[LaurentPoly() for _ in range(n)] for _ in range(n)]

        A = zero()
        for (i, si), (t, dmin, dmax) in self.transitions.items():
            if weights[si]:
                A[t][i] = A[t][i] + LaurentPoly.mono(weights[si], dmin, dmax + sig[i] - sig[t])
        B, C = {}, {}
        if self.variant == "meander":
            idx = {str(s): k for k, s in enumerate(self.steps)}
            for row in self.boundary_table():
                if row["j"] not in ("generic", "k"):
                    continue
                w = weights[idx[row["step"]]]
                if not w:
                    continue
                target = B if row["j"] == "generic" else C
                M = target.setdefault(row["ell"], zero())
                i, t = row["from"], row["to"]
                M[t][i] = M[t][i] + LaurentPoly.mono(
                    w, row["ell"] + row["dmin"], row["dmax"] + sig[i] - sig[t])
        return A, B, C

    def to_dict(self):
        A, B, C = self.matrices()

        def mat(M):
            return [[str(e) for e in row] for row in M]

        return {
            "variant": self.variant,
            "steps": [str(s) for s in self.steps],
            "weights": [f"{w.numerator}/{w.denominator}" if w.denominator != 1 else str(w.numerator)
                        for _, w in self.step_set.steps],
            "initial": self.initial,
            "states": [dict(self.types[i].to_dict(), sigma=self.sigma(i))
                       for i in range(len(self.types))],
            "transitions": [{"from": i, "step": str(self.steps[si]), "to": t,
                             "dmin": dmin, "dmax": dmax}
                            for (i, si), (t, dmin, dmax) in sorted(self.transitions.items())],
            "boundary": self.boundary_table() if self.variant == "meander" else [],
            "matrices": {"A": mat(A),
                         "B": {str(l): mat(M) for l, M in sorted(B.items())},
                         "C": {str(l): mat(M) for l, M in sorted(C.items())}},
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    # -- structure ------------------------------------------------------------
    def loop_free_acyclic(self) -> bool:
        n = len(self.types)
        succ = {i: set() for i in range(n)}
        for (i, _), (t, _, _) in self.transitions.items():
            if t != i:
                succ[i].add(t)
        color = [0] * n

        def dfs(u):
            color[u] = 1
            for v in succ[u]:
                if color[v] == 1 or (color[v] == 0 and not dfs(v)):
                    return False
            color[u] = 2
            return True

        return all(color[u] or dfs(u) for u in range(n))


def export_transition_system(aut: TypeAutomaton) -> dict:
    return aut.to_dict()


# ---------------------------------------------------------------------------
# inference


def _fix_thresholds(cands, steps, horizon, k_cap):
    """Smallest k per candidate so that every step maps all members with
    index in [k, k + horizon] into one single candidate family."""
    ks = [_min_k(g, a, c) for g, a, b, c in cands]

    def build():
        return [SumsetType(g, ks[i], a, b, c) for i, (g, a, b, c) in enumerate(cands)]

    def target_of(types, r):
        for i, T in enumerate(types):
            if type_locate(T, r) is not None:
                return i
        return None

    changed = True
    while changed:
        changed = False
        types = build()
        for i in range(len(cands)):
            while True:
                T = types[i]
                ok = True
                for s in steps:
                    tgt = set()
                    for j in range(T.k, T.k + horizon + 1):
                        tgt.add(target_of(types, sumset(type_instance(T, j), s)))
                        if None in tgt or len(tgt) > 1:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    break
                ks[i] += 1
                if ks[i] > k_cap:
                    raise InferenceFailure(f"no stable threshold for candidate type {T} within k <= {k_cap}")
                types = build()
                changed = True
    return build()


def infer_types(S: NStepSet, max_states: int = 64, max_norm: int = 60,
                variant: str = "walk"):
    """Proper types describing all reach sets of the step set.

    Returns the automaton's type list; raises InferenceFailure listing the
    reach sets that no candidate explains.
    """
    return build_automaton(S, max_states=max_states, max_norm=max_norm, variant=variant).types


def build_automaton(S: NStepSet, types=None, max_states: int = 64, max_norm: int = 60,
                    variant: str = "walk") -> TypeAutomaton:
    """Infer (or take) periodic types and build the deterministic automaton.

    ``types`` may give the periodic types explicitly; sets they do not cover
    become exact (g = 0) states.
    """
    if variant not in ("walk", "meander"):
        raise ValueError("variant must be 'walk' or 'meander'")
    steps = [s for s, _ in S.steps]
    span = _step_span(S)
    c = max(0, -S.lowest)
    floored = variant == "meander"

    if types is None:
        sets, _ = explore_reach_sets(S, max_norm)
        shapes = set(sets)
        if floored:
            # away from 0 floored sets evolve like walk reach sets, so the
            # walk shapes are kept and the low floored sets are added
            low, _ = explore_reach_sets(S, max_norm, floored=True, min_cap=c + span + 2)
            shapes |= {normalize(s) for s in low}
            # large sets sitting at a low minimum get cut into new shapes
            frontier = {s for s in shapes if norm(s) >= max_norm // 2}
            while frontier:
                new = set()
                for r in frontier:
                    for ell in range(c):
                        for st in steps:
                            x = _cut(sumset(shift(r, ell), st))
                            if x and max_norm // 2 <= norm(x) <= max_norm + span:
                                x = normalize(x)
                                if x not in shapes:
                                    new.add(x)
                shapes |= new
                frontier = new
        cands, unmatched = {}, []
        for s in shapes:
            if norm(s) >= max_norm // 2:
                f = periodic_fit(s)
                if f is None:
                    unmatched.append(s)
                else:
                    cands[f] = True
        if unmatched:
            raise InferenceFailure("large reach sets without a periodic pattern",
                                   sorted(unmatched, key=lambda x: (norm(x), x.elements)))
        cand_list = sorted(cands, key=lambda f: (f[0], len(f[1]) + len(f[3]), str(f)))
        amax = max([_max_or(a) + _max_or(cc) for _, a, _, cc in cand_list] + [0])
        gmin = min([f[0] for f in cand_list] + [1])
        horizon = (amax + 2 * span) // gmin + 4
        periodic = _fix_thresholds(cand_list, steps, horizon, k_cap=max_norm)
    else:
        periodic = [t for t in types if t.g > 0]
        amax = max([_max_or(t.a) + _max_or(t.c) for t in periodic] + [0])
        gmin = min([t.g for t in periodic] + [1])
        horizon = (amax + 2 * span) // gmin + 4

    # abstract BFS from {0}; periodic states keep their candidate index
    cand_types = list(periodic)
    state_of = {}            # ("p", idx) or ("e", normalized set) -> state id
    types_out = []
    exact_index = {}

    def locate_key(r):
        for idx, T in enumerate(cand_types):
            if type_locate(T, r) is not None:
                return ("p", idx)
        return ("e", normalize(r))

    def intern(key):
        if key in state_of:
            return state_of[key]
        if key[0] == "e":
            e = key[1]
            if norm(e) > max_norm:
                raise InferenceFailure("reach set beyond the norm cap is not covered by any type", [e])
            T = SumsetType(0, 0, EMPTY, e, EMPTY)
        else:
            T = cand_types[key[1]]
        if len(types_out) >= max_states:
            raise InferenceFailure(f"more than {max_states} states",
                                   [k[1] for k in state_of if k[0] == "e"])
        state_of[key] = len(types_out)
        types_out.append(T)
        if key[0] == "e":
            exact_index[key[1]] = state_of[key]
        queue.append(key)
        return state_of[key]

    queue = deque()
    transitions = {}
    initial = intern(locate_key(ZERO))
    pending_boundary = []
    while queue:
        key = queue.popleft()
        i = state_of[key]
        T = types_out[i]
        reps = [type_instance(T, j) for j in range(T.k, T.k + horizon + 1)] if T.g else [T.b]
        for si, s in enumerate(steps):
            targets = {locate_key(sumset(r, s)) for r in reps}
            if len(targets) != 1:
                raise InferenceFailure(f"state {T} under step {s} splits between states",
                                       [sumset(r, s) for r in reps])
            (tk,) = targets
            transitions[(i, si)] = (intern(tk), s.min, s.max)
            if floored:
                # floored successors of low-minimum members must exist too
                for ell in range(c):
                    for r in reps:
                        rr = _cut(sumset(shift(r, ell - r.min), s))
                        if rr:
                            intern(locate_key(rr))

    # periodic lookup priority follows the candidate order
    priority = [state_of[("p", idx)] for idx in range(len(cand_types)) if ("p", idx) in state_of]
    aut = TypeAutomaton(S, variant, types_out, initial, transitions, horizon,
                        exact_index=exact_index, priority=priority)
    if variant == "walk" and not aut.loop_free_acyclic():
        raise InferenceFailure("walk automaton has a cycle through distinct states")
    return aut


# ---------------------------------------------------------------------------
# type-compressed counting


def _contains_zero_mask(aut: TypeAutomaton, i, mins, norms):
    """Boolean grid: does the member with (min, norm) contain 0?"""
    T = aut.types[i]
    x = -mins[:, None]
    nr = norms[None, :]
    inside = (x >= 0) & (x <= nr)
    if T.g == 0:
        elems = set(T.b)
        hit = np.vectorize(lambda v: v in elems)(np.clip(x, 0, None))
        return inside & hit & (nr == norm(T.b))
    alpha, beta = _proper_offsets(T)
    v = x + alpha
    res = np.isin(np.mod(v, T.g), list(T.b))
    not_a = ~np.isin(v, list(T.a)) if T.a else True
    not_c = ~np.isin(nr + beta - x, list(T.c)) if T.c else True
    return inside & res & not_a & not_c


def _shift_add(dst, src, dr, dc, w, box):
    """dst[r+dr, c+dc] += w * src[r, c] for (r, c) in box."""
    r0, r1, c0, c1 = box
    R, Cn = dst.shape
    rs, re = max(r0, -dr), min(r1, R - dr)
    cs, ce = max(c0, -dc), min(c1, Cn - dc)
    if rs >= re or cs >= ce:
        return None
    block = src[rs:re, cs:ce]
    dst[rs + dr:re + dr, cs + dc:ce + dc] += block if w == 1 else block * w
    return (rs + dr, re + dr, cs + dc, ce + dc)


def _union(b1, b2):
    if b1 is None:
        return b2
    if b2 is None:
        return b1
    return (min(b1[0], b2[0]), max(b1[1], b2[1]), min(b1[2], b2[2]), max(b1[3], b2[3]))


def typed_layers(S: NStepSet, n_max: int, aut: TypeAutomaton):
    """Yield per length a list of object arrays (one per state) indexed by
    (min - min_offset, norm), with integer scaled weights, plus the offset."""
    scaled, d = S.scaled()
    weights = [w for _, w in scaled]
    steps = aut.steps
    nst = len(aut.types)
    meander = aut.variant == "meander"
    lo_min = 0 if meander else n_max * min(0, min(s.min for s in steps))
    # flooring can lift the minimum up to the maximum
    top = max(s.max if meander else s.min for s in steps)
    hi_min = n_max * max(0, top) + (aut.c if meander else 0)
    hi_norm = n_max * S.max_norm + max(aut.sigma(i) for i in range(nst))
    R, C = hi_min - lo_min + 1, hi_norm + 1

    def fresh():
        return [np.zeros((R, C), dtype=object) for _ in range(nst)]

    cur = fresh()
    boxes = [None] * nst
    q0 = aut.initial
    n0 = aut.sigma(q0)
    cur[q0][0 - lo_min, n0] = 1
    boxes[q0] = (-lo_min, -lo_min + 1, n0, n0 + 1)
    yield cur, lo_min
    cb = aut.c
    for _ in range(n_max):
        nxt = fresh()
        nboxes = [None] * nst
        for i in range(nst):
            box = boxes[i]
            if box is None:
                continue
            r0, r1, c0, c1 = box
            gen_box = box
            if meander:
                # rows with min >= c evolve generically
                gen_box = (max(r0, cb - lo_min), r1, c0, c1) if r1 > cb - lo_min else None
            if gen_box is not None:
                for si, s in enumerate(steps):
                    w = weights[si]
                    if not w:
                        continue
                    t, dmin, dmax = aut.transitions[(i, si)]
                    # without flooring, norms of sumsets simply add
                    nb = _shift_add(nxt[t], cur[i], dmin, dmax - dmin, w, gen_box)
                    nboxes[t] = _union(nboxes[t], nb)
            if meander:
                for lo in range(max(r0 + lo_min, 0), min(r1 + lo_min, cb)):
                    row = cur[i][lo - lo_min]
                    for col in range(c0, c1):
                        v = row[col]
                        if not v:
                            continue
                        for si, s in enumerate(steps):
                            w = weights[si]
                            if not w:
                                continue
                            res = aut.boundary_step(i, lo, col, si)
                            if res is None:
                                continue
                            t, nlo, nn = res
                            nxt[t][nlo - lo_min, nn] += v * w
                            nboxes[t] = _union(nboxes[t], (nlo - lo_min, nlo - lo_min + 1, nn, nn + 1))
        cur, boxes = nxt, nboxes
        yield cur, lo_min


def typed_count(S: NStepSet, n_max: int, cls: str = "walk", automaton=None):
    """count_by_dp in type-compressed mode."""
    if cls not in CLASSES:
        raise ValueError(f"unknown class {cls!r}")
    variant = "walk" if cls in ("walk", "bridge") else "meander"
    aut = automaton
    if aut is None or aut.variant != variant:
        aut = build_automaton(S, variant=variant)
    if aut.step_set.sets != S.sets:
        raise ClosureError("automaton was built for a different step set")
    # the automaton's own weights are irrelevant here; use S
    _, d = S.scaled()
    raw = []
    masks = None
    for layer, lo_min in typed_layers(S, n_max, aut):
        if cls in ("walk", "meander"):
            raw.append(sum(int(a.sum()) for a in layer))
        elif cls == "excursion":
            raw.append(sum(int(a[0 - lo_min].sum()) for a in layer))
        else:
            if masks is None:
                R, C = layer[0].shape
                mins = np.arange(R) + lo_min
                norms = np.arange(C)
                masks = [_contains_zero_mask(aut, i, mins, norms) for i in range(len(layer))]
            raw.append(sum(int(a[m].sum()) for a, m in zip(layer, masks)))
    return _finish(raw, d)


# ---------------------------------------------------------------------------
# bridges through extraction


def state_series(aut: TypeAutomaton, order: int):
    """Per-state series F_q(x, y; t) = sum over walks ending in q of
    weight * x^min * y^max * t^length, from the generic transitions."""
    if aut.variant != "walk":
        raise ValueError("bridge extraction needs the walk automaton")
    n = len(aut.types)
    weights = [w for _, w in aut.step_set.steps]
    layers = [[{} for _ in range(n)]]
    layers[0][aut.initial] = {(0, 0): Fraction(1)}
    for _ in range(1, order):
        prev = layers[-1]
        nxt = [{} for _ in range(n)]
        for (i, si), (t, dmin, dmax) in aut.transitions.items():
            w = weights[si]
            if not w or not prev[i]:
                continue
            d = nxt[t]
            for (a, b), v in prev[i].items():
                k = (a + dmin, b + dmax)
                d[k] = d.get(k, 0) + v * w
        layers.append(nxt)
    return [BivariateSeries([layers[n_][q] for n_ in range(order)], order) for q in range(n)]


def bridge_part(aut: TypeAutomaton, q: int, F: BivariateSeries) -> BivariateSeries:
    """Monomials of F_q (x^min y^max) whose reach set contains 0."""
    F = extract(extract(F, "x<=0"), "y>=0")
    T = aut.types[q]
    if T.g == 0:
        elems = set(T.b)
        return F.select(lambda i, j: -i in elems)
    alpha, beta = _proper_offsets(T)
    # 0 = min + x lies in the member iff x + alpha has residue in b,
    # is not bottom-pruned and max + beta is not top-pruned
    F = extract(F, "x-residue", g=T.g, residues=[alpha - r for r in T.b])
    bad_min = {alpha - e for e in T.a}
    bad_max = {e - beta for e in T.c}
    return F.select(lambda i, j: i not in bad_min and j not in bad_max)


def bridge_series_from_automaton(aut: TypeAutomaton, order: int) -> RationalSeries:
    total = None
    for q, F in enumerate(state_series(aut, order)):
        part = bridge_part(aut, q, F).evaluate(1, 1)
        total = part if total is None else total + part
    return total
