"""Exact Laurent polynomials, truncated series, rational functions, and the
re-expansion-at-a-point operation.

Everything in here is exact: coefficients live in one of the rings from
:mod:`euler_tower.rings` and no operation ever touches floating point.  The
one genuinely load-bearing algorithm is :func:`reexpand`, which rewrites a
polynomial P(t) as sum_j a_j (t - c)^j by repeated synthetic division
(Taylor shift).  The coefficient list at c = -1 is the tower of higher
Euler characteristics: a_0 the Euler characteristic, a_1 the secondary one,
and so on.  :func:`laurent_expand` extends this to rational functions,
where a pole at the center produces finitely many negative-index
("lower") coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .rings import QQ, SYMBOLS, ZZ, SymPoly


class LaurentPolynomial:
    """Finitely supported map from integer exponents to ring coefficients.

    Canonical sparse form: no stored coefficient is zero, and the zero
    polynomial has empty support.  Instances are immutable by convention;
    all arithmetic returns new objects.
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs=None):
        self.ring = ring
        clean = {}
        if coeffs:
            for e, c in coeffs.items():
                c = ring.coerce(c)
                if c != ring.zero:
                    clean[int(e)] = c
        self.coeffs = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, ring):
        return cls(ring)

    @classmethod
    def one(cls, ring):
        return cls(ring, {0: ring.one})

    @classmethod
    def constant(cls, ring, c):
        return cls(ring, {0: c})

    @classmethod
    def variable(cls, ring):
        return cls(ring, {1: ring.one})

    @classmethod
    def monomial(cls, ring, exponent: int, coeff):
        return cls(ring, {exponent: coeff})

    @classmethod
    def from_dense(cls, ring, coeffs: Sequence, start: int = 0):
        return cls(ring, {start + i: c for i, c in enumerate(coeffs)})

    # -- basic queries -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self):
        return tuple(sorted(self.coeffs))

    def degree(self):
        return max(self.coeffs) if self.coeffs else None

    def valuation(self):
        return min(self.coeffs) if self.coeffs else None

    def coefficient(self, exponent: int):
        return self.coeffs.get(exponent, self.ring.zero)

    def to_dense(self) -> list:
        """Dense ascending coefficient list; requires nonnegative support."""
        if self.coeffs and min(self.coeffs) < 0:
            raise ValueError("negative exponents have no dense form")
        top = self.degree()
        if top is None:
            return [self.ring.zero]
        return [self.coefficient(i) for i in range(top + 1)]

    # -- arithmetic ---------------------------------------------------------

    def _check_ring(self, other):
        if other.ring is not self.ring:
            raise ValueError("mixed coefficient rings")

    def __add__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        self._check_ring(other)
        out = dict(self.coeffs)
        zero = self.ring.zero
        for e, c in other.coeffs.items():
            s = out.get(e, zero) + c
            if s == zero:
                out.pop(e, None)
            else:
                out[e] = s
        res = LaurentPolynomial.__new__(LaurentPolynomial)
        res.ring, res.coeffs = self.ring, out
        return res

    def __neg__(self):
        res = LaurentPolynomial.__new__(LaurentPolynomial)
        res.ring = self.ring
        res.coeffs = {e: -c for e, c in self.coeffs.items()}
        return res

    def __sub__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentPolynomial):
            try:
                scalar = self.ring.coerce(other)
            except TypeError:
                return NotImplemented
            return LaurentPolynomial(self.ring, {e: c * scalar for e, c in self.coeffs.items()})
        self._check_ring(other)
        zero = self.ring.zero
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                s = out.get(e, zero) + c1 * c2
                if s == zero:
                    out.pop(e, None)
                else:
                    out[e] = s
        res = LaurentPolynomial.__new__(LaurentPolynomial)
        res.ring, res.coeffs = self.ring, out
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = LaurentPolynomial.one(self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shifted(self, n: int):
        """Multiply by t^n (n may be negative)."""
        return LaurentPolynomial(self.ring, {e + n: c for e, c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.ring is other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.ring), tuple(sorted((e, str(c)) for e, c in self.coeffs.items()))))

    def map_coefficients(self, fn, ring=None):
        return LaurentPolynomial(ring or self.ring, {e: fn(c) for e, c in self.coeffs.items()})

    def to_ring(self, ring):
        return LaurentPolynomial(ring, dict(self.coeffs))

    def evaluate(self, x):
        """Substitute t = x.  Negative exponents require an invertible x."""
        x = self.ring.coerce(x)
        total = self.ring.zero
        neg = [e for e in self.coeffs if e < 0]
        if neg:
            xinv = self.ring.invert_unit(x)
            for e in neg:
                total = total + self.coeffs[e] * xinv ** (-e)
        for e in sorted(self.coeffs):
            if e >= 0:
                total = total + self.coeffs[e] * x**e
        return total

    # -- rendering ----------------------------------------------------------

    def sparse_pairs(self) -> list:
        """Exponent-ascending [exponent, coefficient-string] pairs."""
        return [[e, str(self.coeffs[e])] for e in sorted(self.coeffs)]

    def render(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        bits = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            cs = str(c)
            negative = cs.startswith("-")
            body = cs[1:] if negative else cs
            if " " in body:  # multi-term SymPoly coefficient
                body, negative = f"({cs})", False
            if e != 0:
                if body == "1":
                    body = ""
                power = var if e == 1 else f"{var}^{e}"
                body = f"{body}*{power}" if body else power
            if not bits:
                bits.append(f"-{body}" if negative else body)
            else:
                bits.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(bits)

    def __repr__(self):
        return f"LaurentPolynomial({self.ring.name}, {self.render()})"


class TruncatedSeries:
    """Power series known exactly up to a stated truncation order.

    ``coeffs[k]`` is the coefficient of t^k for k = 0..order; nothing is
    ever claimed past ``order``, and binary operations truncate to the
    smaller operand order rather than silently extending.
    """

    __slots__ = ("ring", "order", "coeffs")

    def __init__(self, ring, coeffs: Sequence, order: int | None = None):
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("series order must be nonnegative")
        self.ring = ring
        self.order = order
        padded = [ring.coerce(c) for c in coeffs[: order + 1]]
        padded += [ring.zero] * (order + 1 - len(padded))
        self.coeffs = padded

    @classmethod
    def from_polynomial(cls, p: LaurentPolynomial, order: int):
        if p.valuation() is not None and p.valuation() < 0:
            raise ValueError("series truncation needs nonnegative support")
        return cls(p.ring, [p.coefficient(i) for i in range(order + 1)], order)

    def coefficient(self, k: int):
        if k > self.order:
            raise ValueError(f"coefficient {k} beyond truncation order {self.order}")
        return self.coeffs[k] if k >= 0 else self.ring.zero

    def _check(self, other):
        if other.ring is not self.ring:
            raise ValueError("mixed coefficient rings")

    def __add__(self, other):
        self._check(other)
        order = min(self.order, other.order)
        return TruncatedSeries(
            self.ring, [self.coeffs[k] + other.coeffs[k] for k in range(order + 1)], order
        )

    def __neg__(self):
        return TruncatedSeries(self.ring, [-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        order = min(self.order, other.order)
        zero = self.ring.zero
        out = [zero] * (order + 1)
        for i, ci in enumerate(self.coeffs[: order + 1]):
            if ci == zero:
                continue
            for j in range(order + 1 - i):
                cj = other.coeffs[j]
                if cj != zero:
                    out[i + j] = out[i + j] + ci * cj
        return TruncatedSeries(self.ring, out, order)

    def invert(self):
        """Multiplicative inverse; constant term must be a unit."""
        try:
            c0inv = self.ring.invert_unit(self.coeffs[0])
        except ValueError:
            raise ValueError("inversion of series with non-unit constant term") from None
        zero = self.ring.zero
        out = [c0inv] + [zero] * self.order
        for n in range(1, self.order + 1):
            acc = zero
            for k in range(1, n + 1):
                if self.coeffs[k] != zero:
                    acc = acc + self.coeffs[k] * out[n - k]
            out[n] = -(c0inv * acc)
        return TruncatedSeries(self.ring, out, self.order)

    def power(self, n: int):
        """Integer power; negative exponents invert first."""
        if n < 0:
            return self.invert().power(-n)
        result = TruncatedSeries(self.ring, [self.ring.one], self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.ring is other.ring and self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self):
        return f"TruncatedSeries(order={self.order}, {self.coeffs})"


# -- univariate polynomial division over QQ ---------------------------------


def poly_divmod(a: LaurentPolynomial, b: LaurentPolynomial):
    """Long division in QQ[t] for nonnegative-support polynomials."""
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    for p in (a, b):
        if p.valuation() is not None and p.valuation() < 0:
            raise ValueError("division needs ordinary polynomials")
    rem = {e: Fraction(c) for e, c in a.coeffs.items()}
    quot: dict = {}
    db = b.degree()
    lead = b.coefficient(db)
    while rem:
        dr = max(rem)
        if dr < db:
            break
        factor = rem[dr] / lead
        quot[dr - db] = factor
        for e, c in b.coeffs.items():
            k = e + dr - db
            v = rem.get(k, Fraction(0)) - factor * c
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return LaurentPolynomial(QQ, quot), LaurentPolynomial(QQ, rem)


def poly_gcd(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    """Monic gcd in QQ[t] by the Euclidean algorithm."""
    while not b.is_zero:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a.is_zero:
        return a
    lead = a.coefficient(a.degree())
    return a * (1 / Fraction(lead))


def poly_exact_div(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    q, r = poly_divmod(a, b)
    if not r.is_zero:
        raise ValueError("division was not exact")
    return q


class RationalFunction:
    """A reduced fraction of polynomials over QQ with monic denominator.

    The normal form (gcd cancelled, denominator monic) makes ``==`` decide
    equality of rational functions, and guarantees that a zero of the
    denominator really is a pole.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPolynomial, den: LaurentPolynomial):
        num = num.to_ring(QQ) if num.ring is not QQ else num
        den = den.to_ring(QQ) if den.ring is not QQ else den
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        for p in (num, den):
            if p.valuation() is not None and p.valuation() < 0:
                raise ValueError("numerator and denominator must be ordinary polynomials")
        if num.is_zero:
            self.num = num
            self.den = LaurentPolynomial.one(QQ)
            return
        g = poly_gcd(num, den)
        if g.degree():
            num = poly_exact_div(num, g)
            den = poly_exact_div(den, g)
        lead = den.coefficient(den.degree())
        scale = 1 / Fraction(lead)
        self.num = num * scale
        self.den = den * scale

    @classmethod
    def from_polynomial(cls, p: LaurentPolynomial):
        return cls(p, LaurentPolynomial.one(QQ))

    @classmethod
    def constant(cls, c):
        return cls.from_polynomial(LaurentPolynomial.constant(QQ, Fraction(c)))

    @property
    def is_polynomial(self) -> bool:
        return self.den == LaurentPolynomial.one(QQ)

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        d = self.den.evaluate(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num.evaluate(x) / d

    def render(self, var: str = "t") -> str:
        if self.is_polynomial:
            return self.num.render(var)
        return f"({self.num.render(var)}) / ({self.den.render(var)})"

    def __repr__(self):
        return f"RationalFunction({self.render()})"


@dataclass(frozen=True)
class TaylorCoefficients:
    """Coefficients of an expansion sum_j a_j (t - center)^j.

    ``coeffs[i]`` is the coefficient of (t - center)^(min_degree + i).  A
    negative ``min_degree`` only arises from rational functions with a pole
    at the center; polynomial expansions always start at 0.
    """

    ring: object
    center: object
    min_degree: int
    coeffs: tuple

    def __getitem__(self, j: int):
        i = j - self.min_degree
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.zero

    @property
    def max_degree(self) -> int:
        return self.min_degree + len(self.coeffs) - 1

    def as_list(self) -> list:
        return list(self.coeffs)

    def order_of_vanishing(self):
        """Smallest index with a nonzero coefficient, or None if all vanish."""
        for i, c in enumerate(self.coeffs):
            if c != self.ring.zero:
                return self.min_degree + i
        return None


def _divide_by_linear(coeffs: list, c, zero):
    """One synthetic-division step: divide sum a_i t^i by (t - c).

    Returns (quotient coefficients ascending, remainder).  Exact in any
    commutative ring containing c.
    """
    if len(coeffs) == 1:
        return [], coeffs[0]
    quot = [zero] * (len(coeffs) - 1)
    acc = coeffs[-1]
    quot[-1] = acc
    for i in range(len(coeffs) - 2, 0, -1):
        acc = coeffs[i] + c * acc
        quot[i - 1] = acc
    rem = coeffs[0] + c * quot[0]
    return quot, rem


def reexpand(p: LaurentPolynomial, center) -> TaylorCoefficients:
    """Taylor-shift a polynomial to powers of (t - center), exactly.

    Computed by iterated synthetic division, which stays inside the
    coefficient ring (an integer input with integer center never sees a
    fraction, and never a float).  Input must have nonnegative support;
    Laurent input belongs to :func:`laurent_expand`.
    """
    val = p.valuation()
    if val is not None and val < 0:
        raise ValueError("laurent input requires pole-aware expansion")
    ring = p.ring
    try:
        c = ring.coerce(center)
    except TypeError:
        if ring is ZZ and isinstance(center, Fraction):
            ring = QQ
            p = p.to_ring(QQ)
            c = QQ.coerce(center)
        else:
            raise
    work = p.to_dense() if not p.is_zero else [ring.zero]
    out = []
    for _ in range(len(work)):
        work, rem = _divide_by_linear(work, c, ring.zero)
        out.append(rem)
    return TaylorCoefficients(ring=ring, center=c, min_degree=0, coeffs=tuple(out))


def chi_from_betti(betti: Sequence[int], j: int) -> int:
    """The j-th higher Euler characteristic of a Betti vector.

    sum_i (-1)^(i-j) C(i, j) b_i -- the binomial form, equal to coefficient
    j of the expansion of sum b_i t^i about t = -1.
    """
    if j < 0:
        raise ValueError("index must be nonnegative")
    total = 0
    for i, b in enumerate(betti):
        if i >= j:
            total += (-1) ** (i - j) * math.comb(i, j) * b
    return total


def alt_chi(betti: Sequence[int], j: int) -> int:
    """Power-weighted alternative: sum_i (-1)^(i-j) i^j b_i, with 0^0 = 1.

    Agrees with :func:`chi_from_betti` at j = 0 and j = 1 but diverges from
    it for j >= 2; kept as a separate surface, never mixed in.
    """
    if j < 0:
        raise ValueError("index must be nonnegative")
    return sum((-1) ** abs(i - j) * i**j * b for i, b in enumerate(betti))


def laurent_expand(f: RationalFunction, center, order: int) -> TaylorCoefficients:
    """Expand a rational function about a point, poles included.

    Substitutes t = u + center exactly, pulls the u-power out of the
    denominator, inverts the remaining unit series, and returns the
    coefficients from -m (m the pole multiplicity, 0 if none) up to
    ``order``.  Multiplying back against the denominator reproduces the
    numerator to the stated order.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    c = Fraction(center)
    if f.num.is_zero:
        return TaylorCoefficients(
            ring=QQ, center=c, min_degree=0, coeffs=(Fraction(0),) * (order + 1)
        )
    num_u = reexpand(f.num, c).coeffs
    den_u = reexpand(f.den, c).coeffs
    m = next(i for i, x in enumerate(den_u) if x != 0)
    series_order = order + m
    num_series = TruncatedSeries(QQ, list(num_u), series_order)
    den_unit = TruncatedSeries(QQ, list(den_u[m:]), series_order)
    expansion = num_series * den_unit.invert()
    return TaylorCoefficients(
        ring=QQ, center=c, min_degree=-m, coeffs=tuple(expansion.coeffs)
    )
