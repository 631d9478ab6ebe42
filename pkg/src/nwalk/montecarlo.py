"""Seeded simulation of random N-walks under probability weights.

Steps are drawn by inverse CDF on raw 64-bit outputs of PCG64: step i is
chosen when T_{i-1} <= u < T_i with T_i = ceil(F_i * 2^64) for the exact
cumulative weight F_i.  Runs are grouped in chunks of ``CHUNK`` and chunk c
uses the substream SeedSequence(seed, spawn_key=(c,)), so results depend only
on (seed, config).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .intset import IntSet
from .walks import NStepSet, CLASSES, reach_trace

CHUNK = 1 << 18
_DYCK_KINDS = {IntSet({-1}): 0, IntSet({1}): 1, IntSet({-1, 1}): 2}


@dataclass(frozen=True)
class SimConfig:
    step_set: NStepSet
    n: int
    runs: int
    seed: int = 0

    def __post_init__(self):
        if self.step_set.total_weight != 1:
            raise ValueError(f"weights must sum to 1 (they sum to {self.step_set.total_weight})")
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.n < 0:
            raise ValueError("n must be >= 0")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def thresholds(S: NStepSet) -> np.ndarray:
    """uint64 thresholds T_i for the cumulative weights F_i < 1."""
    out, acc = [], Fraction(0)
    for _, w in S.steps:
        acc += w
        if acc >= 1:
            break
        out.append(-((-acc.numerator * 2 ** 64) // acc.denominator))
    return np.array(out, dtype=np.uint64)


def draw_indices(rng: np.random.Generator, T: np.ndarray, size) -> np.ndarray:
    u = rng.bit_generator.random_raw(size)
    if len(T) <= 4:
        idx = np.zeros(u.shape, dtype=np.int8)
        for t in T:
            idx += u >= t
        return idx
    return np.searchsorted(T, u, side="right").astype(np.int16)


def _rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(chunk,))))


def sample_walk(cfg: SimConfig, run: int = 0):
    """One walk (list of IntSet) and its ReachState trace; run selects the substream."""
    rng = np.random.Generator(np.random.PCG64(
        np.random.SeedSequence(cfg.seed, spawn_key=(2 ** 32 + run,))))
    idx = draw_indices(rng, thresholds(cfg.step_set), cfg.n)
    steps = cfg.step_set.sets
    walk = [steps[i] for i in idx]
    return walk, reach_trace(walk)


def _is_dyck(S: NStepSet) -> bool:
    return all(s in _DYCK_KINDS for s in S.sets)


def _chunks(runs):
    c = 0
    while runs > 0:
        size = min(CHUNK, runs)
        yield c, size
        runs -= size
        c += 1


# ---------------------------------------------------------------------------
# per-chunk engines; each returns a dict of integer tallies


def _dyck_chunk(S, n, rng, size, floored_only):
    """Dyck-type step sets: reach sets are step-2 progressions (lo, hi).

    With floored_only, dead meanders are dropped as they die, so the cost is
    proportional to the total lifetime rather than runs * n.
    """
    T = thresholds(S)
    kinds = np.array([_DYCK_KINDS[s] for s in S.sets], dtype=np.int8)
    lo = np.zeros(size, dtype=np.int32)
    hi = np.zeros(size, dtype=np.int32)
    ret = np.zeros(size, dtype=np.int32)
    if not floored_only:
        ulo = np.zeros(size, dtype=np.int32)
        uhi = np.zeros(size, dtype=np.int32)
    for _ in range(n):
        if len(lo) == 0:
            break
        k = kinds[draw_indices(rng, T, len(lo) if floored_only else size)]
        down = k != 1
        up = k != 0
        if not floored_only:
            ulo += np.where(down, -1, 1)
            uhi += np.where(up, 1, -1)
        nlo = np.where(down, np.where(lo >= 1, lo - 1, lo + 1), lo + 1)
        nhi = np.where(up, hi + 1, hi - 1)
        if floored_only:
            keep = nhi >= 0
            lo, hi, ret = nlo[keep], nhi[keep], ret[keep]
        else:
            # dead meanders stay at hi = -1
            nhi[hi < 0] = -1
            lo, hi = nlo, nhi
        ret += (lo == 0) & (hi == 0)
    out = {"runs": size, "meander": int(np.count_nonzero(hi >= 0))}
    if not floored_only:
        out["bridge"] = int(np.count_nonzero((ulo <= 0) & (uhi >= 0) & (ulo % 2 == 0)))
    exc = (hi >= 0) & (lo == 0)
    out["excursion"] = int(np.count_nonzero(exc))
    empty = np.zeros(0, dtype=np.int64)
    out["final_max"] = np.bincount(hi[exc]) if exc.any() else empty
    out["returns_to_zero"] = np.bincount(ret[exc]) if exc.any() else empty
    return out


def _advance(R, idx, steps, W):
    """Apply step idx[r] to row r of the boolean reach matrix R."""
    new = np.zeros_like(R)
    for k, s in enumerate(steps):
        rows = idx == k
        if not rows.any():
            continue
        sub = R[rows]
        acc = np.zeros_like(sub)
        for e in s:
            if e >= 0:
                acc[:, e:] |= sub[:, :W - e]
            else:
                acc[:, :W + e] |= sub[:, -e:]
        new[rows] = acc
    return new


SUBBATCH = 1 << 13


def _generic_chunk(S, n, rng, size, floored_only):
    """Arbitrary step sets, in fixed sub-batches to bound memory."""
    acc = {}
    done = 0
    while done < size:
        b = min(SUBBATCH, size - done)
        _merge(acc, _generic_batch(S, n, rng, b, floored_only))
        done += b
    return acc


def _generic_batch(S, n, rng, size, floored_only):
    """Reach sets as boolean rows."""
    T = thresholds(S)
    steps = S.sets
    smin = min(s.min for s in steps)
    smax = max(s.max for s in steps)
    out = {"runs": size}
    idx_all = None
    if not floored_only and n:
        # both passes must see the same walks
        idx_all = draw_indices(rng, T, (n, size))
    if not floored_only:
        off = max(0, -smin) * n
        W = off + max(0, smax) * n + 1
        R = np.zeros((size, W), dtype=bool)
        R[:, off] = True
        for t in range(n):
            R = _advance(R, idx_all[t], steps, W)
        out["bridge"] = int(np.count_nonzero(R[:, off]))
    W = max(0, smax) * n + 1
    F = np.zeros((size, W), dtype=bool)
    F[:, 0] = True
    ret = np.zeros(size, dtype=np.int32)
    rows = np.arange(size)
    for t in range(n):
        if len(F) == 0:
            break
        idx = draw_indices(rng, T, len(F)) if idx_all is None else idx_all[t][rows]
        new = _advance(F, idx, steps, W)
        keep = new.any(axis=1)
        F, rows = new[keep], rows[keep]
        ret = ret[keep] + (F[:, 0] & ~F[:, 1:].any(axis=1))
    out["meander"] = len(F)
    exc = F[:, 0]
    out["excursion"] = int(np.count_nonzero(exc))
    if exc.any():
        top = W - 1 - np.argmax(F[exc][:, ::-1], axis=1)
        out["final_max"] = np.bincount(top)
        out["returns_to_zero"] = np.bincount(ret[exc])
    else:
        out["final_max"] = out["returns_to_zero"] = np.zeros(0, dtype=np.int64)
    return out


def _merge(acc, part):
    for k, v in part.items():
        if isinstance(v, np.ndarray):
            cur = acc.get(k, np.zeros(0, dtype=np.int64))
            m = max(len(cur), len(v))
            cur = np.pad(cur, (0, m - len(cur)))
            acc[k] = cur + np.pad(v, (0, m - len(v)))
        else:
            acc[k] = acc.get(k, 0) + v
    return acc


def simulate(cfg: SimConfig, floored_only: bool = False, min_accepted: int | None = None):
    """Integer tallies over cfg.runs runs (or fewer once min_accepted
    excursions are collected, checked at chunk boundaries)."""
    engine = _dyck_chunk if _is_dyck(cfg.step_set) else _generic_chunk
    acc = {}
    for c, size in _chunks(cfg.runs):
        _merge(acc, engine(cfg.step_set, cfg.n, _rng(cfg.seed, c), size, floored_only))
        if min_accepted is not None and acc["excursion"] >= min_accepted:
            break
    return acc


def estimate_class_probability(cfg: SimConfig, cls: str):
    """(estimate, binomial standard error)."""
    if cls not in CLASSES:
        raise ValueError(f"unknown class {cls!r}")
    if cls == "walk" or cfg.n == 0:
        return 1.0, 0.0
    tallies = simulate(cfg, floored_only=cls != "bridge")
    p = tallies[cls] / tallies["runs"]
    return p, math.sqrt(p * (1 - p) / tallies["runs"])


@dataclass
class Histogram:
    statistic: str
    counts: np.ndarray
    accepted: int
    runs: int
    conditioned: bool = True
    meta: dict = field(default_factory=dict)

    @property
    def pmf(self) -> np.ndarray:
        return self.counts / self.accepted

    @property
    def mean(self) -> float:
        return float(np.dot(np.arange(len(self.counts)), self.counts) / self.accepted)

    @property
    def stderr(self) -> float:
        k = np.arange(len(self.counts))
        var = float(np.dot(k * k, self.counts) / self.accepted) - self.mean ** 2
        return math.sqrt(max(var, 0.0) / self.accepted)

    def halved(self) -> "Histogram":
        """Fold bins 2k into k (Dyck maxima are even after even lengths)."""
        c = self.counts
        out = np.zeros((len(c) + 1) // 2, dtype=np.int64)
        np.add.at(out, np.arange(len(c)) // 2, c)
        return Histogram(self.statistic + "/2", out, self.accepted, self.runs,
                         self.conditioned, dict(self.meta))

    def tv(self, pmf) -> float:
        p = self.pmf
        q = np.asarray(pmf, dtype=float)
        m = max(len(p), len(q))
        p = np.pad(p, (0, m - len(p)))
        q = np.pad(q, (0, m - len(q)))
        return 0.5 * float(np.abs(p - q).sum())

    def to_csv(self) -> str:
        lines = ["bin,count"]
        lines += [f"{k},{int(v)}" for k, v in enumerate(self.counts)]
        return "\n".join(lines) + "\n"


STATISTICS = ("final_max", "returns_to_zero")


def statistic_histograms(cfg: SimConfig, statistic: str, conditioned_on_excursion: bool = True,
                         min_accepted: int | None = None) -> Histogram:
    """Histogram of a statistic over excursions (rejection sampling).

    Only excursion-conditioned histograms are produced; the acceptance count
    is reported on the result.
    """
    if statistic not in STATISTICS:
        raise ValueError(f"statistic must be one of {STATISTICS}")
    if not conditioned_on_excursion:
        raise ValueError("only excursion-conditioned statistics are supported")
    tallies = simulate(cfg, floored_only=True, min_accepted=min_accepted)
    if tallies["excursion"] == 0:
        raise RuntimeError(f"no excursions among {tallies['runs']} runs; nothing to histogram")
    return Histogram(statistic, tallies[statistic].astype(np.int64), tallies["excursion"],
                     tallies["runs"])
