"""Finite integer sets under Minkowski sum, and the periodic set families
("types") used to compress reachable-point sets.

An ``IntSet`` is an immutable sorted tuple of distinct integers.  A
``SumsetType`` ``(g, k, a, b, c)`` stands for the family

    { (j x {0, g} + b) bottom-pruned by a, top-pruned by c, shifted by m
      : j >= k, m in Z }

whose members are determined by their minimum and maximum.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from functools import reduce
import heapq
from bisect import bisect_left


class IntSet:
    __slots__ = ("elements", "_hash")

    def __init__(self, elements=()):
        self.elements = tuple(sorted(set(int(e) for e in elements)))
        self._hash = hash(self.elements)

    # -- construction helpers -------------------------------------------
    @classmethod
    def from_mask(cls, lo: int, mask: int) -> "IntSet":
        """Build from a bitmask where bit i stands for lo + i."""
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(lo + i)
            mask >>= 1
            i += 1
        obj = cls.__new__(cls)
        obj.elements = tuple(out)
        obj._hash = hash(obj.elements)
        return obj

    @classmethod
    def parse(cls, text: str) -> "IntSet":
        """Parse the brace literal used on the command line, e.g. ``{-1,1}``."""
        t = text.strip()
        if not (t.startswith("{") and t.endswith("}")):
            raise ValueError(f"not an integer set literal: {text!r}")
        body = t[1:-1].strip()
        if not body:
            return cls()
        parts = [p.strip() for p in body.split(",")]
        if any(not re.fullmatch(r"[+-]?\d+", p) for p in parts):
            raise ValueError(f"not an integer set literal: {text!r}")
        return cls(int(p) for p in parts)

    def to_mask(self):
        """Return (min, bitmask relative to min); (0, 0) for the empty set."""
        if not self.elements:
            return 0, 0
        lo = self.elements[0]
        m = 0
        for e in self.elements:
            m |= 1 << (e - lo)
        return lo, m

    # -- accessors ---------------------------------------------------------
    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        i = bisect_left(self.elements, x)
        return i < len(self.elements) and self.elements[i] == x

    def _as_set(self):
        return frozenset(self.elements)

    def __bool__(self):
        return bool(self.elements)

    @property
    def min(self) -> int:
        if not self.elements:
            raise ValueError("min of empty set")
        return self.elements[0]

    @property
    def max(self) -> int:
        if not self.elements:
            raise ValueError("max of empty set")
        return self.elements[-1]

    def __eq__(self, other):
        if isinstance(other, IntSet):
            return self.elements == other.elements
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.elements < other.elements

    def __repr__(self):
        return "IntSet({" + ",".join(map(str, self.elements)) + "})"

    def __str__(self):
        return "{" + ",".join(map(str, self.elements)) + "}"

    def __add__(self, other):
        if isinstance(other, IntSet):
            return sumset(self, other)
        if isinstance(other, int):
            return shift(self, other)
        return NotImplemented

    __radd__ = __add__


EMPTY = IntSet()
ZERO = IntSet((0,))


def _intset(s) -> IntSet:
    return s if isinstance(s, IntSet) else IntSet(s)


def shift(s: IntSet, m: int) -> IntSet:
    return IntSet(e + m for e in _intset(s))


def sumset(s, t) -> IntSet:
    """Minkowski sum {x + y}.  The empty set is absorbing."""
    s, t = _intset(s), _intset(t)
    if not s or not t:
        return EMPTY
    ls, ms = s.to_mask()
    lt, mt = t.to_mask()
    acc = 0
    for e in t:
        acc |= ms << (e - lt)
    return IntSet.from_mask(ls + lt, acc)


def nfold_sumset(n: int, s) -> IntSet:
    """n-fold sum of s with itself; 0 x s = {0} by convention."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    s = _intset(s)
    result = ZERO
    base = s
    # binary powering in the sumset monoid
    while n:
        if n & 1:
            result = sumset(result, base)
        n >>= 1
        if n:
            base = sumset(base, base)
    return result


def norm(s) -> int:
    s = _intset(s)
    return s.max - s.min if s else 0


def prune_bottom(s, t) -> IntSet:
    """s minus (min(s) + t)."""
    s, t = _intset(s), _intset(t)
    if not s:
        return EMPTY
    lo = s.min
    drop = {lo + x for x in t}
    return IntSet(e for e in s if e not in drop)


def prune_top(s, t) -> IntSet:
    """s minus (max(s) - t)."""
    s, t = _intset(s), _intset(t)
    if not s:
        return EMPTY
    hi = s.max
    drop = {hi - x for x in t}
    return IntSet(e for e in s if e not in drop)


def conjugate(s) -> IntSet:
    """Reflect s inside [min, max].  The empty set maps to itself."""
    s = _intset(s)
    if not s:
        return EMPTY
    c = s.min + s.max
    return IntSet(c - e for e in s)


def equivalent(s, t) -> bool:
    """True iff s = t + {m} for some integer m."""
    s, t = _intset(s), _intset(t)
    if not s or not t:
        return not s and not t
    return shift(t, s.min - t.min) == s


def normalize(s) -> IntSet:
    """Shift so the minimum is 0."""
    s = _intset(s)
    return shift(s, -s.min) if s else EMPTY


def _max_or(s: IntSet, default=-1) -> int:
    return s.max if s else default


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class SumsetType:
    g: int
    k: int
    a: IntSet
    b: IntSet
    c: IntSet

    def __post_init__(self):
        if self.g < 0 or self.k < 0:
            raise ValueError("g and k must be nonnegative")
        for name in ("a", "b", "c"):
            v = getattr(self, name)
            if not isinstance(v, IntSet):
                object.__setattr__(self, name, IntSet(v))

    @property
    def proper(self) -> bool:
        return is_proper(self)

    def __str__(self):
        return f"({self.g},{self.k},{self.a},{self.b},{self.c})"

    def to_dict(self):
        return {"g": self.g, "k": self.k, "a": list(self.a), "b": list(self.b),
                "c": list(self.c)}


def is_proper(T: SumsetType) -> bool:
    if T.g == 0:
        return T.k == 0 and not T.a and not T.c and bool(T.b) and T.b.min == 0
    if T.a and T.a.min < 0:
        return False
    if T.c and T.c.min < 0:
        return False
    if not T.b or T.b.min != 0 or T.b.max > T.g - 1:
        return False
    return T.k * T.g > _max_or(T.a) + _max_or(T.c)


def _base(T: SumsetType, j: int) -> IntSet:
    core = sumset(nfold_sumset(j, IntSet((0, T.g))), T.b)
    return prune_top(prune_bottom(core, T.a), T.c)


def type_instance(T: SumsetType, j: int, m: int = 0) -> IntSet:
    """The member j x {0,g} + b, pruned by a and c, shifted by m."""
    if j < T.k:
        raise ValueError(f"index j={j} below the type's lower bound k={T.k}")
    return shift(_base(T, j), m)


def _proper_offsets(T: SumsetType):
    """(alpha, beta): the distance from the unpruned bottom to the real
    minimum, and from the real maximum to the unpruned top.  Constant over
    all members of a proper type with g > 0."""
    a_max = _max_or(T.a)
    alpha = 0
    while alpha % T.g not in T.b or alpha in T.a:
        alpha += 1
        if alpha > a_max + T.g:
            return None
    beta = 0
    while (T.b.max - beta) % T.g not in T.b or beta in T.c:
        beta += 1
        if beta > _max_or(T.c) + T.g:
            return None
    return alpha, beta


def type_member(T: SumsetType, s) -> bool:
    return type_locate(T, s) is not None


def type_locate(T: SumsetType, s):
    """Return (j, m) with s == type_instance(T, j, m), or None."""
    s = _intset(s)
    if not s:
        return None
    if T.g == 0:
        base = _base(T, 0)
        if not base or len(base) != len(s):
            return None
        m = s.min - base.min
        return (T.k if T.k >= 0 else 0, m) if shift(base, m) == s else None
    if is_proper(T):
        # at j = k top pruning may still reach the bottom element when a is
        # empty (max(empty) = -1), so that member is compared directly
        base = _base(T, T.k)
        if base and norm(base) == norm(s) and shift(base, s.min - base.min) == s:
            return T.k, s.min - base.min
        off = _proper_offsets(T)
        if off is None:
            return None
        alpha, beta = off
        num = norm(s) + alpha + beta - T.b.max
        if num < 0 or num % T.g:
            return None
        j = num // T.g
        if j < T.k:
            return None
        m = s.min - alpha
        return (j, m) if type_instance(T, j, m) == s else None
    # general (improper) type: scan the indices whose norm could match
    n = norm(s)
    limit = T.k + (n + _max_or(T.a, 0) + _max_or(T.c, 0) + abs(_max_or(T.b, 0))) // T.g + 3
    for j in range(T.k, limit + 1):
        base = _base(T, j)
        if base and norm(base) == n:
            m = s.min - base.min
            if shift(base, m) == s:
                return j, m
    return None


# ---------------------------------------------------------------------------
# shape fitting and normalization


def fit_shape(s, g: int):
    """Express the normalized set s as a proper-style pattern of period g.

    Returns (a, b, c, j) with s (shifted to min 0) equal to
    prune_top(prune_bottom(j x {0,g} + b, a), c), where b lies in [0, g-1]
    with 0 in b, a and c are nonnegative masks and no element of a or c is
    attributed to the wrong half.  Returns None when s is not a sub-pattern
    of any g-periodic progression starting at its minimum.
    """
    s = normalize(s)
    if not s or g <= 0:
        return None
    n = s.max
    elems = set(s)
    # residues observed away from the ends decide the pattern
    lo_q, hi_q = n // 4, n - n // 4
    middle = [e for e in s if lo_q <= e <= hi_q] or list(s)
    b = IntSet(sorted({e % g for e in middle} | {0}))
    if any(e % g not in b for e in s):
        return None
    # the smallest top Z >= n with Z = max(b) (mod g)
    z = n + ((b.max - n) % g)
    j = (z - b.max) // g
    half = z / 2
    a_list, c_list = [], []
    for x in range(0, z + 1):
        if x % g in b and x not in elems:
            if x < half:
                a_list.append(x)
            else:
                c_list.append(z - x)
    return IntSet(a_list), b, IntSet(c_list), j


def normalize_type(T: SumsetType):
    """Return (proper type T', threshold) such that the members of T with
    index j >= threshold are exactly the members of T' (index offsets
    realigned so T'.k corresponds to the threshold)."""
    if T.g == 0:
        r = _base(T, 0)
        if not r:
            raise ValueError("type has only empty members")
        return SumsetType(0, 0, EMPTY, normalize(r), EMPTY), T.k
    if not T.b:
        raise ValueError("type has only empty members")
    span = (norm(T.b) + _max_or(T.a, 0) + _max_or(T.c, 0) + abs(T.b.min)
            + abs(_max_or(T.a, 0)) + 4 * T.g)
    j_sep = T.k + 4 * (span // T.g + 2)
    fits = {}
    for j in range(T.k, j_sep + 4):
        base = _base(T, j)
        f = fit_shape(base, T.g) if base else None
        fits[j] = f
    ref = fits[j_sep + 3]
    if ref is None:
        raise ValueError(f"type {T} has no periodic normal form")
    a2, b2, c2, jref = ref
    delta = jref - (j_sep + 3)
    threshold = j_sep + 3
    # walk down while the fit keeps the same shape and a consistent index
    j = j_sep + 2
    while j >= T.k:
        f = fits[j]
        if f is None or f[:3] != (a2, b2, c2) or f[3] - j != delta:
            break
        threshold = j
        j -= 1
    while (threshold + delta) * T.g <= _max_or(a2) + _max_or(c2):
        threshold += 1
    return SumsetType(T.g, threshold + delta, a2, b2, c2), threshold


def type_normalize(T: SumsetType):
    if is_proper(T):
        return T, T.k
    return normalize_type(T)


# ---------------------------------------------------------------------------


def frobenius_number(s) -> int:
    """Largest integer not representable as a nonnegative combination of s.

    Uses shortest paths over residues modulo the smallest generator.
    Returns -1 when every nonnegative integer is representable.
    """
    s = sorted(set(int(x) for x in _intset(s)))
    if not s or s[0] <= 0:
        raise ValueError("generators must be positive")
    if reduce(gcd, s) != 1:
        raise ValueError("generators must have gcd 1")
    a0 = s[0]
    if a0 == 1:
        return -1
    dist = [None] * a0
    dist[0] = 0
    heap = [(0, 0)]
    while heap:
        d, r = heapq.heappop(heap)
        if d != dist[r]:
            continue
        for x in s[1:]:
            nd, nr = d + x, (r + x) % a0
            if dist[nr] is None or nd < dist[nr]:
                dist[nr] = nd
                heapq.heappush(heap, (nd, nr))
    return max(dist) - a0
