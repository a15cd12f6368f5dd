"""Formal K-theoretic higher Euler characteristics.

Complexes here carry, per degree, an element of the free commutative ring
on named generators; that ring is a faithful home for every identity these
invariants satisfy, because the identities are polynomial relations among
classes and never inspect the objects themselves.  Cones consequently
forget the map entirely (degree i picks up the classes of degrees i and
i-1), and the Adams-operation check works purely with ranks of graded
symmetric powers.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .polycore import LaurentPolynomial, TruncatedSeries, reexpand
from .rings import SYMBOLS, SymPoly, parse_sympoly


class K0Complex:
    """Finitely supported map from integer degree to a formal class."""

    __slots__ = ("classes",)

    def __init__(self, classes: dict | None = None):
        clean = {}
        for i, value in (classes or {}).items():
            value = SYMBOLS.coerce(value)
            if value:
                clean[int(i)] = value
        self.classes = clean

    def at(self, i: int) -> SymPoly:
        return self.classes.get(i, SYMBOLS.zero)

    @property
    def is_trivial(self) -> bool:
        return not self.classes

    def degrees(self):
        return sorted(self.classes)

    def generators(self) -> set:
        names = set()
        for value in self.classes.values():
            names |= value.generators()
        return names

    def __eq__(self, other):
        if not isinstance(other, K0Complex):
            return NotImplemented
        return self.classes == other.classes

    def __repr__(self):
        return f"K0Complex({{{', '.join(f'{i}: {v}' for i, v in sorted(self.classes.items()))}}})"


def k0_poincare(m: K0Complex) -> LaurentPolynomial:
    """Class-valued rank polynomial sum_i [M_i] t^i."""
    return LaurentPolynomial(SYMBOLS, dict(m.classes))


def k0_chi_j(m: K0Complex, j: int) -> SymPoly:
    """j-th expansion coefficient of the class polynomial at t = -1.

    Nonnegative support uses the closed binomial form; Laurent support is
    re-expanded through the unit series (u - 1)^(-s), which exists because
    u - 1 has unit constant term at u = 0.
    """
    if j < 0:
        raise ValueError("index must be nonnegative")
    if m.is_trivial:
        return SYMBOLS.zero
    low = min(m.classes)
    if low >= 0:
        total = SYMBOLS.zero
        for i, value in m.classes.items():
            if i >= j:
                total = total + (-1) ** (i - j) * math.comb(i, j) * value
        return total
    s = -low
    shifted = k0_shift(m, low)  # now concentrated in degrees >= 0
    q = reexpand(k0_poincare(shifted), -1)
    q_series = TruncatedSeries(SYMBOLS, list(q.coeffs), j)
    unit = TruncatedSeries(SYMBOLS, [SymPoly.const(-1), SymPoly.const(1)], j)
    return (q_series * unit.power(-s)).coefficient(j)


def k0_tensor(m: K0Complex, n: K0Complex) -> K0Complex:
    """Degree-n class is the convolution sum_{i+j=n} [M_i] [N_j]."""
    out: dict = {}
    for i, a in m.classes.items():
        for j, b in n.classes.items():
            out[i + j] = out.get(i + j, SYMBOLS.zero) + a * b
    return K0Complex(out)


def cone_self(m: K0Complex) -> K0Complex:
    """Cone of any self-map: degree i holds [M_i] + [M_{i-1}].

    The map is irrelevant at class level, so none is taken; the class
    polynomial picks up a factor (1 + t).
    """
    out: dict = {}
    for i, value in m.classes.items():
        out[i] = out.get(i, SYMBOLS.zero) + value
        out[i + 1] = out.get(i + 1, SYMBOLS.zero) + value
    return K0Complex(out)


def iterated_cone(m: K0Complex, times: int) -> K0Complex:
    for _ in range(times):
        m = cone_self(m)
    return m


def k0_shift(m: K0Complex, n: int) -> K0Complex:
    """Shifted complex M[n]_i = M_{i+n}, so t^n P_{M[n]} = P_M."""
    return K0Complex({i - n: v for i, v in m.classes.items()})


def unit_complex() -> K0Complex:
    return K0Complex({0: SymPoly.const(1)})


def _sym_rank(n: int, j: int) -> int:
    """Rank of the j-th symmetric power of a free module of rank n."""
    if j == 0:
        return 1
    if n == 0:
        return 0
    return math.comb(n + j - 1, j)


def graded_sym_cone_ranks(n: int, k: int) -> list:
    """Ranks of S^k applied to the two-term cone on a rank-n free module.

    The cone has an even part of rank n in degree 0 and an odd part of
    rank n in degree 1; the Koszul rule makes degree i of the graded
    symmetric power S^(k-i)(even) tensor Lambda^i(odd).
    """
    return [_sym_rank(n, k - i) * math.comb(n, i) for i in range(k + 1)]


def adams_grayson(n: int, k: int) -> int:
    """Secondary Euler characteristic of S^k of the cone on rank n.

    Evaluates sum_i (-1)^(i-1) i rank_i over the graded symmetric power;
    the result realizes the k-th Adams operation on the class of a free
    module, hence always equals n.
    """
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    ranks = graded_sym_cone_ranks(n, k)
    return sum((-1) ** (i + 1) * i * r for i, r in enumerate(ranks))


def specialize_rank(m: K0Complex, rank_map: dict) -> dict:
    """Integer rank vector under a generator -> rank assignment.

    The assignment extends to the unique ring homomorphism into ZZ, so
    every class-level identity descends to the integers.
    """
    values = {}
    for name, r in rank_map.items():
        r = int(r)
        if r < 0:
            raise ValueError(f"rank for generator {name!r} must be nonnegative")
        values[str(name)] = r
    out = {}
    for i, value in m.classes.items():
        try:
            out[i] = value.substitute(values)
        except KeyError as exc:
            raise ValueError(f"generator {exc.args[0]!r} has no assigned rank") from None
    return out


# -- text format ---------------------------------------------------------------
#
#   DEGREE: LINEAR-COMBINATION      e.g.   1: 3*g1*g2 - 2*g3 + 1
#
# '#' comments and blank lines are ignored.


def parse_k0_complex(text: str) -> K0Complex:
    classes: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if ":" not in body:
            raise ValueError(f"line {lineno}: expected 'degree: combination'")
        head, _, tail = body.partition(":")
        try:
            degree = int(head.strip())
        except ValueError:
            raise ValueError(f"line {lineno}: bad degree {head.strip()!r}") from None
        if degree in classes:
            raise ValueError(f"line {lineno}: duplicate degree {degree}")
        try:
            classes[degree] = parse_sympoly(tail)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return K0Complex(classes)


def serialize_k0_complex(m: K0Complex) -> str:
    if m.is_trivial:
        return "0: 0\n"
    return "\n".join(f"{i}: {m.classes[i]}" for i in m.degrees()) + "\n"


def parse_rank_map(text: str) -> dict:
    """Comma-separated assignments such as ``g1=2,g2=0``."""
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        name, eq, value = part.partition("=")
        if not eq:
            raise ValueError(f"bad rank assignment {part!r}; expected name=value")
        try:
            out[name.strip()] = int(value.strip())
        except ValueError:
            raise ValueError(f"bad rank value in {part!r}") from None
    if not out:
        raise ValueError("empty rank map")
    return out
