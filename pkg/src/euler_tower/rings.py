"""Exact coefficient rings for the polynomial tower.

Three rings are provided, all with canonical forms and decidable equality:

* ``ZZ``      -- arbitrary-precision integers (plain ``int``).
* ``QQ``      -- exact rationals (``fractions.Fraction``).
* ``SYMBOLS`` -- the free commutative ring on named generators over the
  integers.  Its elements (:class:`SymPoly`) double as integer polynomials
  in named variables and as formal classes of objects in a Grothendieck
  group, so one implementation serves both roles.

A ring object only supplies the constants and coercion; arithmetic happens
on the elements themselves through the usual operators.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping


class SymPoly:
    """An element of the free commutative ring on string generators over ZZ.

    Internally a map from monomials to nonzero integer coefficients, where a
    monomial is a sorted tuple of generator names with repetition (so
    ``3*a*b^2`` is stored as ``{("a", "b", "b"): 3}`` and the ring unit is
    the empty tuple).  Canonical form is maintained by every operation,
    which makes ``==`` a decision procedure for ring equality.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, int] | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    key = tuple(sorted(mono))
                    clean[key] = clean.get(key, 0) + c
                    if not clean[key]:
                        del clean[key]
        self.terms = clean

    @classmethod
    def const(cls, n: int) -> "SymPoly":
        return cls({(): int(n)}) if n else cls()

    @classmethod
    def gen(cls, name: str) -> "SymPoly":
        if not name or not name[0].isalpha() and name[0] != "_":
            raise ValueError(f"bad generator name {name!r}")
        return cls({(name,): 1})

    # -- ring structure -------------------------------------------------

    def _coerced(self, other):
        if isinstance(other, SymPoly):
            return other
        if isinstance(other, int):
            return SymPoly.const(other)
        return None

    def __add__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, 0) + c
            if not out[mono]:
                del out[mono]
        res = SymPoly.__new__(SymPoly)
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = SymPoly.__new__(SymPoly)
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __sub__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(sorted(m1 + m2))
                out[mono] = out.get(mono, 0) + c1 * c2
                if not out[mono]:
                    del out[mono]
        res = SymPoly.__new__(SymPoly)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("SymPoly powers must be nonnegative integers")
        result = SymPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- structure queries ----------------------------------------------

    def generators(self) -> set:
        return {name for mono in self.terms for name in mono}

    def constant_term(self) -> int:
        return self.terms.get((), 0)

    def is_constant(self) -> bool:
        return all(mono == () for mono in self.terms)

    def coefficient_of(self, mono) -> int:
        return self.terms.get(tuple(sorted(mono)), 0)

    def total_degree(self):
        """Max monomial length, or None for the zero element."""
        if not self.terms:
            return None
        return max(len(m) for m in self.terms)

    def substitute(self, values: Mapping[str, object]):
        """Evaluate by assigning every generator a value.

        Values may be ints, Fractions or SymPolys; the result lives in
        whatever those values generate.  Raises KeyError naming the first
        generator without an assignment.
        """
        for name in sorted(self.generators()):
            if name not in values:
                raise KeyError(name)
        total = 0
        for mono, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
            term = c
            for name in mono:
                term = term * values[name]
            total = total + term
        return total

    def split_variable(self, name: str) -> dict:
        """View the element as a polynomial in one generator.

        Returns a map from the exponent of ``name`` to the SymPoly
        coefficient (which no longer mentions ``name``).
        """
        out: dict = {}
        for mono, c in self.terms.items():
            exp = sum(1 for g in mono if g == name)
            rest = tuple(g for g in mono if g != name)
            bucket = out.setdefault(exp, {})
            bucket[rest] = bucket.get(rest, 0) + c
        return {e: SymPoly(t) for e, t in out.items() if any(t.values())}

    def univariate_coeffs(self, name: str) -> list:
        """Dense integer coefficient list for an element of ZZ[name]."""
        extra = self.generators() - {name}
        if extra:
            raise ValueError(f"not univariate in {name!r}: also mentions {sorted(extra)}")
        if not self.terms:
            return [0]
        split = self.split_variable(name)
        top = max(split)
        return [split.get(e, SymPoly()).constant_term() for e in range(top + 1)]

    # -- rendering --------------------------------------------------------

    @staticmethod
    def _mono_str(mono) -> str:
        parts = []
        i = 0
        while i < len(mono):
            j = i
            while j < len(mono) and mono[j] == mono[i]:
                j += 1
            parts.append(mono[i] if j - i == 1 else f"{mono[i]}^{j - i}")
            i = j
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for mono in sorted(self.terms, key=lambda m: (len(m), m)):
            c = self.terms[mono]
            if mono == ():
                body = str(abs(c))
            else:
                body = self._mono_str(mono)
                if abs(c) != 1:
                    body = f"{abs(c)}*{body}"
            if not bits:
                bits.append(body if c > 0 else f"-{body}")
            else:
                bits.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(bits)

    def __repr__(self):
        return f"SymPoly({self})"


def parse_sympoly(text: str) -> SymPoly:
    """Parse linear-combination syntax such as ``3*g1*g2 - 2*g3 + 1``.

    Accepts optional ``^k`` powers on generators.  Inverse of ``str``.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty expression")
    total = SymPoly()
    pos, n = 0, len(s)
    first = True
    while pos < n:
        while pos < n and s[pos].isspace():
            pos += 1
        if pos >= n:
            break
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif not first:
            raise ValueError(f"expected '+' or '-' at position {pos} in {text!r}")
        first = False
        while pos < n and s[pos].isspace():
            pos += 1
        coeff = None
        mono: list = []
        while True:
            while pos < n and s[pos].isspace():
                pos += 1
            start = pos
            if pos < n and s[pos].isdigit():
                while pos < n and s[pos].isdigit():
                    pos += 1
                if coeff is not None or mono:
                    raise ValueError(f"unexpected number at position {start} in {text!r}")
                coeff = int(s[start:pos])
            elif pos < n and (s[pos].isalpha() or s[pos] == "_"):
                while pos < n and (s[pos].isalnum() or s[pos] == "_"):
                    pos += 1
                name = s[start:pos]
                power = 1
                if pos < n and s[pos] == "^":
                    pos += 1
                    pstart = pos
                    while pos < n and s[pos].isdigit():
                        pos += 1
                    if pos == pstart:
                        raise ValueError(f"missing exponent at position {pstart} in {text!r}")
                    power = int(s[pstart:pos])
                mono.extend([name] * power)
            else:
                raise ValueError(f"unexpected character at position {pos} in {text!r}")
            save = pos
            while pos < n and s[pos].isspace():
                pos += 1
            if pos < n and s[pos] == "*":
                pos += 1
                continue
            pos = save
            break
        if coeff is None and not mono:
            raise ValueError(f"empty term at position {pos} in {text!r}")
        term = SymPoly.const(sign * (1 if coeff is None else coeff))
        for name in mono:
            term = term * SymPoly.gen(name)
        total = total + term
    return total


class IntegerRing:
    """ZZ with Python ints as elements."""

    name = "ZZ"
    zero = 0
    one = 1

    def coerce(self, x):
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return int(x)
        raise TypeError(f"cannot coerce {x!r} into ZZ")

    def invert_unit(self, x):
        if x in (1, -1):
            return x
        raise ValueError(f"{x!r} is not a unit in ZZ")


class RationalRing:
    """QQ with fractions.Fraction as elements."""

    name = "QQ"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into QQ")

    def invert_unit(self, x):
        x = Fraction(x)
        if x == 0:
            raise ValueError("0 is not a unit in QQ")
        return 1 / x

    def __repr__(self):
        return self.name


class SymbolRing:
    """Free commutative ring on named generators, SymPoly elements."""

    name = "ZZ[symbols]"

    def __init__(self):
        self.zero = SymPoly()
        self.one = SymPoly.const(1)

    def coerce(self, x):
        if isinstance(x, SymPoly):
            return x
        if isinstance(x, int):
            return SymPoly.const(x)
        if isinstance(x, Fraction) and x.denominator == 1:
            return SymPoly.const(int(x))
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def invert_unit(self, x):
        if isinstance(x, SymPoly) and x.is_constant() and x.constant_term() in (1, -1):
            return x
        raise ValueError(f"{x!r} is not a unit in {self.name}")


IntegerRing.__repr__ = lambda self: self.name
SymbolRing.__repr__ = lambda self: self.name

ZZ = IntegerRing()
QQ = RationalRing()
SYMBOLS = SymbolRing()
