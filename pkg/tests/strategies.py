from fractions import Fraction

from hypothesis import strategies as st

from nwalk.intset import IntSet, SumsetType
from nwalk.walks import NStepSet


def intsets(lo=-10, hi=10, min_size=0, max_size=6):
    return st.frozensets(st.integers(lo, hi), min_size=min_size, max_size=max_size).map(IntSet)


def nonempty_intsets(lo=-10, hi=10, max_size=6):
    return intsets(lo, hi, 1, max_size)


weights = st.fractions(min_value=0, max_value=3, max_denominator=6)
positive_weights = st.fractions(min_value=Fraction(1, 6), max_value=3, max_denominator=6)


@st.composite
def step_sets(draw, max_norm=3, max_steps=4, lo=-2, hi=2, min_steps=1, weighted=True):
    """Random step sets with steps inside [lo, hi] of norm <= max_norm."""
    n = draw(st.integers(min_steps, max_steps))
    steps = {}
    for _ in range(n):
        a = draw(st.integers(lo, hi))
        b = draw(st.integers(a, min(hi, a + max_norm)))
        inner = draw(st.frozensets(st.integers(a, b), max_size=max_norm + 1))
        s = IntSet(inner | {a, b})
        steps[s] = draw(positive_weights) if weighted else 1
    return NStepSet(list(steps.items()))


@st.composite
def sumset_types(draw, max_g=4):
    g = draw(st.integers(0, max_g))
    k = draw(st.integers(0, 3))
    a = draw(intsets(0, 4, 0, 3))
    c = draw(intsets(0, 4, 0, 3))
    b = draw(intsets(0, max(g, 3) + 2, 1, 4))
    return SumsetType(g, k, a, b, c)
