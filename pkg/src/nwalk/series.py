"""Truncated power/Laurent series with exact rational coefficients.

``RationalSeries`` is univariate in t.  ``BivariateSeries`` is a power
series in t whose coefficients are Laurent polynomials in x and y, stored
sparsely as {(i, j): coefficient}.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt
import numbers


def _frac(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, numbers.Rational):
        return Fraction(c.numerator, c.denominator)
    raise TypeError(f"exact rational expected, got {type(c).__name__}")


def frac_str(c: Fraction) -> str:
    c = _frac(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _rational_sqrt(c: Fraction) -> Fraction:
    c = _frac(c)
    if c < 0:
        raise ValueError("square root of a negative leading coefficient")
    p, q = c.numerator, c.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp != p or rq * rq != q:
        raise ValueError(f"leading coefficient {c} is not a rational square")
    return Fraction(rp, rq)


class RationalSeries:
    """sum_{i} coeffs[i] t^(valuation + i), known modulo t^order."""

    __slots__ = ("valuation", "coeffs", "order")

    def __init__(self, coeffs=(), valuation: int = 0, order: int | None = None):
        cs = [_frac(c) for c in coeffs]
        if order is None:
            order = valuation + len(cs)
        keep = max(order - valuation, 0)
        cs = cs[:keep] + [Fraction(0)] * (keep - len(cs))
        # strip leading zeros so the leading coefficient is nonzero
        lead = 0
        while lead < len(cs) and cs[lead] == 0:
            lead += 1
        self.valuation = valuation + lead if lead < len(cs) else order
        self.coeffs = cs[lead:]
        self.order = order

    # -- constructors ----------------------------------------------------
    @classmethod
    def const(cls, c, order: int):
        return cls([c], 0, order)

    @classmethod
    def t(cls, order: int, power: int = 1):
        return cls([1], power, max(order, power))

    @classmethod
    def poly(cls, coeffs, order: int):
        """Polynomial c0 + c1 t + ... truncated at order."""
        return cls(coeffs, 0, order)

    @classmethod
    def zero(cls, order: int):
        return cls([], 0, order)

    # -- access ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, n: int) -> Fraction:
        if n >= self.order:
            raise IndexError(f"coefficient t^{n} beyond truncation order {self.order}")
        if n < self.valuation:
            return Fraction(0)
        return self.coeffs[n - self.valuation]

    def coefficients(self, start: int = 0, stop: int | None = None):
        stop = self.order if stop is None else stop
        return [self[n] for n in range(start, stop)]

    def __repr__(self):
        return f"RationalSeries(val={self.valuation}, order={self.order}, {self.coeffs[:8]}...)"

    def __str__(self):
        body = ""
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = self.valuation + i
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            cs = frac_str(abs(c))
            term = cs if not mono else (mono if abs(c) == 1 else f"{cs}*{mono}")
            if not body:
                body = ("-" if c < 0 else "") + term
            else:
                body += (" - " if c < 0 else " + ") + term
        return f"{body or '0'} + O(t^{self.order})"

    def to_json(self):
        return {"valuation": self.valuation if self.coeffs else 0,
                "coefficients": [frac_str(c) for c in
                                 (self.coeffs if self.coeffs else [])],
                "order": self.order}

    @classmethod
    def from_json(cls, d):
        return cls([Fraction(c) for c in d["coefficients"]], d["valuation"], d.get("order"))

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RationalSeries):
            return other
        return RationalSeries([_frac(other)], 0, self.order)

    def __add__(self, other):
        other = self._coerce(other)
        order = min(self.order, other.order)
        v = min(self.valuation, other.valuation, order)
        cs = [self[n] + other[n] for n in range(v, order)]
        return RationalSeries(cs, v, order)

    __radd__ = __add__

    def __neg__(self):
        return RationalSeries([-c for c in self.coeffs], self.valuation, self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, RationalSeries):
            c = _frac(other)
            return RationalSeries([x * c for x in self.coeffs], self.valuation, self.order)
        va, vb = self.valuation, other.valuation
        order = min(va + other.order, vb + self.order)
        if self.is_zero() or other.is_zero():
            return RationalSeries([], 0, order)
        n = order - (va + vb)
        if n <= 0:
            return RationalSeries([], 0, order)
        a, b = self.coeffs[:n], other.coeffs[:n]
        out = [Fraction(0)] * n
        for i, x in enumerate(a):
            if x == 0:
                continue
            lim = n - i
            for j, y in enumerate(b[:lim]):
                if y:
                    out[i + j] += x * y
        return RationalSeries(out, va + vb, order)

    __rmul__ = __mul__

    def shift(self, k: int):
        """Multiply by t^k."""
        return RationalSeries(self.coeffs, self.valuation + k, self.order + k)

    def truncate(self, order: int):
        return RationalSeries(self.coeffs, self.valuation, min(order, self.order))

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of a series that vanishes to its truncation order")
        v = self.valuation
        rel = self.order - v
        a = self.coeffs
        inv0 = 1 / a[0]
        out = [inv0]
        for n in range(1, rel):
            s = Fraction(0)
            for k in range(1, min(n, len(a) - 1) + 1):
                if a[k]:
                    s += a[k] * out[n - k]
            out.append(-s * inv0)
        return RationalSeries(out, -v, -v + rel)

    def __truediv__(self, other):
        if not isinstance(other, RationalSeries):
            c = _frac(other)
            if c == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / c)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            if isinstance(n, int):
                return (self ** (-n)).inverse()
            raise TypeError("integer exponents only")
        if n == 0:
            return RationalSeries([1], 0, self.order - self.valuation)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, RationalSeries):
            return NotImplemented
        order = min(self.order, other.order)
        lo = min(self.valuation, other.valuation)
        return all(self[n] == other[n] for n in range(lo, order))

    def __hash__(self):
        return hash((self.valuation, tuple(self.coeffs)))

    def eval_float(self, t: float) -> float:
        return sum(float(c) * t ** (self.valuation + i) for i, c in enumerate(self.coeffs))


def series_sqrt(a: RationalSeries) -> RationalSeries:
    """Square root by Newton iteration, s <- (s + a/s)/2, doubling precision."""
    if a.is_zero():
        raise ValueError("square root of a series that vanishes to its truncation order")
    v = a.valuation
    if v % 2:
        raise ValueError("square root needs an even valuation")
    rel = a.order - v
    u = RationalSeries(a.coeffs, 0, rel)  # unit part
    s = RationalSeries([_rational_sqrt(u.coeffs[0])], 0, 1)
    prec = 1
    half = Fraction(1, 2)
    while prec < rel:
        prec = min(2 * prec, rel)
        s = RationalSeries(s.coeffs, 0, prec)
        s = (s + u.truncate(prec) / s) * half
    return RationalSeries(s.coeffs, v // 2, v // 2 + rel)


def algebraic_residual(coeffs, E: RationalSeries) -> RationalSeries:
    """Evaluate sum_i coeffs[i] * E^i with Horner's scheme."""
    if not coeffs:
        return RationalSeries.zero(E.order)
    acc = coeffs[-1] if isinstance(coeffs[-1], RationalSeries) else \
        RationalSeries.const(coeffs[-1], E.order)
    for c in reversed(coeffs[:-1]):
        acc = acc * E + c
    return acc


def poly_t(coeffs, order: int) -> RationalSeries:
    """Polynomial in t given by ascending coefficients."""
    return RationalSeries.poly(coeffs, order)


# ---------------------------------------------------------------------------
# Laurent polynomials in x, y and bivariate series


class LaurentPoly:
    """Finite sum of c * x^i * y^j with exact rational c."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        for k, v in (terms or {}).items():
            v = _frac(v)
            if v:
                t[(int(k[0]), int(k[1]))] = v
        self.terms = t

    @classmethod
    def mono(cls, c=1, i=0, j=0):
        return cls({(i, j): c})

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly({(0, 0): other})
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return LaurentPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly({(0, 0): other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            c = _frac(other)
            return LaurentPoly({k: v * c for k, v in self.terms.items()})
        t = {}
        for (i1, j1), v1 in self.terms.items():
            for (i2, j2), v2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                t[k] = t.get(k, 0) + v1 * v2
        return LaurentPoly(t)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly({(0, 0): other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def evaluate(self, x, y):
        total = Fraction(0)
        for (i, j), v in self.terms.items():
            total += v * _frac(x) ** i * _frac(y) ** j
        return total

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j), v in sorted(self.terms.items()):
            mono = []
            if i:
                mono.append("x" if i == 1 else f"x^{i}")
            if j:
                mono.append("y" if j == 1 else f"y^{j}")
            m = "*".join(mono)
            if not m:
                parts.append(frac_str(v))
            elif v == 1:
                parts.append(m)
            else:
                parts.append(f"{frac_str(v)}*{m}")
        return " + ".join(parts)

    def to_json(self):
        return [[i, j, frac_str(v)] for (i, j), v in sorted(self.terms.items())]


class BivariateSeries:
    """sum_n t^n P_n(x, y), known for n < order; P_n stored as dicts."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order: int):
        cs = [dict(c) for c in coeffs[:order]]
        cs += [{} for _ in range(order - len(cs))]
        self.coeffs = [{k: v for k, v in c.items() if v} for c in cs]
        self.order = order

    @classmethod
    def zero(cls, order):
        return cls([], order)

    @classmethod
    def const(cls, poly, order):
        p = poly if isinstance(poly, LaurentPoly) else LaurentPoly({(0, 0): poly})
        return cls([dict(p.terms)], order)

    @classmethod
    def geometric(cls, step_poly: LaurentPoly, order: int):
        """1 / (1 - t * step_poly), e.g. the walk series of a step set."""
        out = [{(0, 0): 1}]
        for _ in range(1, order):
            prev = out[-1]
            nxt = {}
            for (i1, j1), v1 in prev.items():
                for (i2, j2), v2 in step_poly.terms.items():
                    k = (i1 + i2, j1 + j2)
                    nxt[k] = nxt.get(k, 0) + v1 * v2
            out.append(nxt)
        return cls(out, order)

    def __getitem__(self, n):
        return LaurentPoly(self.coeffs[n])

    def __add__(self, other):
        order = min(self.order, other.order)
        out = []
        for n in range(order):
            d = dict(self.coeffs[n])
            for k, v in other.coeffs[n].items():
                d[k] = d.get(k, 0) + v
            out.append(d)
        return BivariateSeries(out, order)

    def __neg__(self):
        return BivariateSeries([{k: -v for k, v in c.items()} for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return BivariateSeries([{k: v * c for k, v in d.items()} for d in self.coeffs], self.order)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            other = BivariateSeries.const(other, self.order)
        if not isinstance(other, BivariateSeries):
            return self.scale(_frac(other))
        order = min(self.order, other.order)
        out = [{} for _ in range(order)]
        for n1 in range(order):
            a = self.coeffs[n1]
            if not a:
                continue
            for n2 in range(order - n1):
                b = other.coeffs[n2]
                if not b:
                    continue
                d = out[n1 + n2]
                for (i1, j1), v1 in a.items():
                    for (i2, j2), v2 in b.items():
                        k = (i1 + i2, j1 + j2)
                        d[k] = d.get(k, 0) + v1 * v2
        return BivariateSeries(out, order)

    __rmul__ = __mul__

    def times_t(self, poly: LaurentPoly | None = None):
        """Multiply by t (and optionally by a Laurent polynomial)."""
        src = self
        if poly is not None:
            src = self * poly
        return BivariateSeries([{}] + src.coeffs[:-1], self.order)

    def __eq__(self, other):
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        order = min(self.order, other.order)
        return all(self.coeffs[n] == other.coeffs[n] for n in range(order))

    def select(self, pred):
        """Keep the monomials x^i y^j for which pred(i, j) holds."""
        return BivariateSeries([{k: v for k, v in c.items() if pred(*k)} for c in self.coeffs],
                               self.order)

    def flip_x(self):
        """Substitute x -> -x."""
        return BivariateSeries([{(i, j): (-v if i % 2 else v) for (i, j), v in c.items()}
                                for c in self.coeffs], self.order)

    def evaluate(self, x=1, y=1) -> RationalSeries:
        x, y = _frac(x), _frac(y)
        cs = []
        for c in self.coeffs:
            total = Fraction(0)
            for (i, j), v in c.items():
                total += v * x ** i * y ** j
            cs.append(total)
        return RationalSeries(cs, 0, self.order)

    def totals(self):
        """Coefficient sums at x = y = 1."""
        return [sum(c.values()) for c in self.coeffs]


def extract(f: BivariateSeries, selector: str, **params) -> BivariateSeries:
    """Coefficientwise selection.

    selector: "x>0", "x<=0", "y<0", "y>=0", "x-residue" (params g and
    residues, keeps i mod g in residues), or "coefficient" (params i and/or
    j, keeps only that exponent).
    """
    if selector == "x>0":
        return f.select(lambda i, j: i > 0)
    if selector == "x<=0":
        return f.select(lambda i, j: i <= 0)
    if selector == "y<0":
        return f.select(lambda i, j: j < 0)
    if selector == "y>=0":
        return f.select(lambda i, j: j >= 0)
    if selector == "x-residue":
        g = params["g"]
        if g < 1:
            raise ValueError("residue extraction needs g >= 1")
        rs = params.get("residues")
        if rs is None:
            rs = [params["r"]]
        rs = {r % g for r in rs}
        return f.select(lambda i, j: i % g in rs)
    if selector == "coefficient":
        xi, yj = params.get("i"), params.get("j")
        return f.select(lambda i, j: (xi is None or i == xi) and (yj is None or j == yj))
    raise ValueError(f"unknown selector {selector!r}")
