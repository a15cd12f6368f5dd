"""Topological front end: simplicial complexes, a small space-expression
algebra at the Betti level, the Kervaire semi-characteristic, circle-factor
order bounds, and symmetric-product generating functions.

Spaces enter either as facet lists (turned into oriented boundary matrices
and handed to :mod:`euler_tower.chain`) or as expressions over a library of
standard atoms whose rational Betti vectors are known; products multiply
rank polynomials (Kunneth at the level of ranks) and disjoint unions add
them.  No attempt is made to triangulate products or to model fibrations,
which genuinely do not respect these invariants.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .chain import ChainComplex, HomologySummary, IntegerMatrix, homology
from .polycore import LaurentPolynomial, TruncatedSeries, chi_from_betti, reexpand
from .rings import SYMBOLS, ZZ, SymPoly


def normalize_betti(betti: Sequence[int]) -> tuple:
    """Trim trailing zeros; reject negatives."""
    b = [int(x) for x in betti]
    if any(x < 0 for x in b):
        raise ValueError("Betti numbers must be nonnegative")
    while b and b[-1] == 0:
        b.pop()
    return tuple(b)


def betti_poincare(betti: Sequence[int]) -> LaurentPolynomial:
    return LaurentPolynomial(ZZ, {i: x for i, x in enumerate(betti)})


# -- simplicial complexes ------------------------------------------------------


class SimplicialComplex:
    """A facet list over labeled vertices, normalized to maximal faces.

    Vertex labels sort numerically when they all look like integers and
    lexicographically otherwise; boundary matrices use that order, so the
    homology output is deterministic for a fixed input.
    """

    __slots__ = ("vertices", "facets")

    def __init__(self, vertices, facets):
        self.vertices = tuple(vertices)
        self.facets = tuple(facets)

    @classmethod
    def from_facets(cls, facet_lists) -> "SimplicialComplex":
        labels = set()
        raw = []
        for facet in facet_lists:
            facet = [str(v) for v in facet]
            if not facet:
                raise ValueError("facets must be nonempty")
            if len(set(facet)) != len(facet):
                raise ValueError(f"repeated vertex in facet {facet}")
            labels.update(facet)
            raw.append(frozenset(facet))
        if not raw:
            raise ValueError("a simplicial complex needs at least one facet")
        if all(v.lstrip("-").isdigit() for v in labels):
            vertices = tuple(sorted(labels, key=int))
        else:
            vertices = tuple(sorted(labels))
        index = {v: k for k, v in enumerate(vertices)}
        maximal = [f for f in set(raw) if not any(f < g for g in raw)]
        facets = sorted(
            (tuple(sorted(index[v] for v in f)) for f in maximal),
            key=lambda t: (len(t), t),
        )
        return cls(vertices, facets)

    def faces_by_dim(self) -> list:
        """All faces grouped by dimension, each group sorted."""
        seen = set()
        for facet in self.facets:
            for size in range(1, len(facet) + 1):
                seen.update(combinations(facet, size))
        top = max(len(f) for f in self.facets) - 1
        return [sorted(f for f in seen if len(f) == k + 1) for k in range(top + 1)]

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.vertices == other.vertices and self.facets == other.facets

    def __repr__(self):
        return f"SimplicialComplex({len(self.vertices)} vertices, {len(self.facets)} facets)"


def parse_facets(text: str) -> SimplicialComplex:
    """One facet per line, whitespace-separated labels, '#' comments."""
    facets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        labels = body.split()
        if len(set(labels)) != len(labels):
            raise ValueError(f"line {lineno}: repeated vertex in facet")
        facets.append(labels)
    if not facets:
        raise ValueError("no facets found")
    return SimplicialComplex.from_facets(facets)


def serialize_facets(k: SimplicialComplex) -> str:
    return "\n".join(" ".join(k.vertices[i] for i in f) for f in k.facets) + "\n"


def boundary_complex(k: SimplicialComplex) -> ChainComplex:
    """Oriented simplicial chain complex over the sorted vertex order."""
    faces = k.faces_by_dim()
    ranks = {dim: len(fs) for dim, fs in enumerate(faces)}
    diffs = {}
    for dim in range(1, len(faces)):
        rows = {f: r for r, f in enumerate(faces[dim - 1])}
        mat = [[0] * len(faces[dim]) for _ in faces[dim - 1]]
        for col, face in enumerate(faces[dim]):
            for j in range(len(face)):
                sub = face[:j] + face[j + 1 :]
                mat[rows[sub]][col] = (-1) ** j
        diffs[dim] = IntegerMatrix(len(faces[dim - 1]), len(faces[dim]), mat)
    return ChainComplex(ranks, diffs)


def homology_of_complex(k: SimplicialComplex) -> HomologySummary:
    return homology(boundary_complex(k))


def betti_of_complex(k: SimplicialComplex) -> tuple:
    """Betti vector of the geometric realization; torsion is reported by
    :func:`homology_of_complex` separately."""
    return homology_of_complex(k).betti_vector()


# -- space expressions ---------------------------------------------------------
#
# Grammar:  expr := term ('+' term)* ; term := factor ('*' factor)* ;
#           factor := atom | '(' expr ')'
# Atoms:    pt | S(n) | T(n) | Sg(g) | CP(n), with '*' products (Kunneth)
#           and '+' disjoint unions.

_ATOMS = ("pt", "S", "T", "Sg", "CP")


def _tokenize_space(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
        elif ch in "()*+":
            tokens.append((ch, pos))
            pos += 1
        elif ch.isdigit():
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            tokens.append(("int", int(text[start:pos]), start))
        elif ch.isalpha():
            start = pos
            while pos < len(text) and text[pos].isalnum():
                pos += 1
            tokens.append(("name", text[start:pos], start))
        else:
            raise ValueError(f"unexpected character {ch!r} at position {pos}")
    return tokens


def parse_space_expr(text: str):
    """Parse into an AST of ('atom', kind, n) / ('product', l, r) / ('union', l, r)."""
    tokens = _tokenize_space(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def expect(kind):
        nonlocal pos
        tok = peek()
        if tok is None or tok[0] != kind:
            where = tok[-1] if tok else len(text)
            raise ValueError(f"expected {kind!r} at position {where}")
        pos += 1
        return tok

    def parse_factor():
        nonlocal pos
        tok = peek()
        if tok is None:
            raise ValueError(f"unexpected end of expression at position {len(text)}")
        if tok[0] == "(":
            pos += 1
            node = parse_expr()
            expect(")")
            return node
        if tok[0] == "name":
            name = tok[1]
            if name not in _ATOMS:
                raise ValueError(f"unknown atom {name!r} at position {tok[2]}")
            pos += 1
            if name == "pt":
                return ("atom", "pt", 0)
            expect("(")
            arg = expect("int")
            expect(")")
            return ("atom", name, arg[1])
        raise ValueError(f"unexpected token at position {tok[-1]}")

    def parse_term():
        node = parse_factor()
        while peek() and peek()[0] == "*":
            expect("*")
            node = ("product", node, parse_factor())
        return node

    def parse_expr():
        node = parse_term()
        while peek() and peek()[0] == "+":
            expect("+")
            node = ("union", node, parse_term())
        return node

    node = parse_expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input at position {tokens[pos][-1]}")
    return node


def _atom_poincare(kind: str, n: int) -> LaurentPolynomial:
    if kind == "pt":
        return LaurentPolynomial.one(ZZ)
    if kind == "S":
        return LaurentPolynomial(ZZ, {0: 1}) + LaurentPolynomial(ZZ, {n: 1})
    if kind == "T":
        return LaurentPolynomial(ZZ, {0: 1, 1: 1}) ** n
    if kind == "Sg":
        return LaurentPolynomial(ZZ, {0: 1, 1: 2 * n, 2: 1})
    if kind == "CP":
        return LaurentPolynomial(ZZ, {2 * i: 1 for i in range(n + 1)})
    raise ValueError(f"unknown atom {kind!r}")


def poincare_of_expr(expr) -> LaurentPolynomial:
    tag = expr[0]
    if tag == "atom":
        return _atom_poincare(expr[1], expr[2])
    left = poincare_of_expr(expr[1])
    right = poincare_of_expr(expr[2])
    return left * right if tag == "product" else left + right


def betti_of_expr(expr) -> tuple:
    return normalize_betti(poincare_of_expr(expr).to_dense())


# -- classical invariants --------------------------------------------------------


def kervaire(betti: Sequence[int], dim: int) -> int:
    """Kervaire semi-characteristic sum_{i<=n} (-1)^i b_i mod 2, dim = 2n+1.

    For duality-symmetric Betti vectors this is the parity of the secondary
    Euler characteristic.
    """
    if dim % 2 == 0:
        raise ValueError("semi-characteristic requires odd dimension")
    b = [int(x) for x in betti]
    if len(b) > dim + 1:
        raise ValueError(f"Betti vector longer than dimension {dim} allows")
    n = (dim - 1) // 2
    return sum((-1) ** i * x for i, x in enumerate(b[: n + 1])) % 2


def torus_order(betti: Sequence[int]) -> int:
    """Multiplicity of t = -1 as a root of the rank polynomial.

    Bounds the number of circle factors of a product; an upper bound only,
    since any factor whose own polynomial vanishes at -1 also contributes.
    """
    b = normalize_betti(betti)
    if not b:
        raise ValueError("zero Betti vector has no torus order")
    return reexpand(betti_poincare(b), -1).order_of_vanishing()


# -- symmetric products ------------------------------------------------------------


def macdonald_sym(betti: Sequence[int], order: int, signed: bool = True) -> list:
    """Graded rank polynomials of the symmetric powers, as a t-series.

    Expands prod_j (1 - z^j t)^((-1)^(j+1) b_j) to the given order in t;
    coefficient r is the signed polynomial sum_i (-1)^i b_i(Sym^r) z^i.
    With ``signed=False`` the factors use -z in place of z, producing the
    classical unsigned convention (so (1 + z^j t) factors for odd j); the
    two conventions exchange under z -> -z.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    b = normalize_betti(betti)
    z = SymPoly.gen("z")
    base = z if signed else -z
    series = TruncatedSeries(SYMBOLS, [SymPoly.const(1)], order)
    for j, bj in enumerate(b):
        if not bj:
            continue
        factor = TruncatedSeries(SYMBOLS, [SymPoly.const(1), -(base**j)], order)
        exponent = bj if j % 2 else -bj
        series = series * factor.power(exponent)
    return list(series.coeffs)


def sym_betti_vector(signed_poly: SymPoly) -> tuple:
    """Recover Betti numbers b_i = (-1)^i [z^i] from a signed polynomial."""
    coeffs = signed_poly.univariate_coeffs("z")
    out = []
    for i, c in enumerate(coeffs):
        v = (-1) ** i * c
        if v < 0:
            raise ValueError("not a signed Betti polynomial")
        out.append(v)
    return normalize_betti(out)


@dataclass(frozen=True)
class GenfunCheck:
    """Per-order comparison of chi(Sym^r) against the (1-t)^(-chi) series."""

    chi: int
    from_sym: tuple
    from_genfun: tuple

    @property
    def orders(self) -> tuple:
        return tuple(
            (r, a, b, a == b)
            for r, (a, b) in enumerate(zip(self.from_sym, self.from_genfun))
        )

    @property
    def all_agree(self) -> bool:
        return self.from_sym == self.from_genfun


def euler_sym_genfun(betti: Sequence[int], order: int) -> GenfunCheck:
    """Compute chi(Sym^r) two ways and report agreement order by order.

    Route one evaluates the symmetric-power polynomials at z = 1; route
    two expands (1 - t)^(-chi) directly.
    """
    b = normalize_betti(betti)
    chi = chi_from_betti(b, 0)
    sym = macdonald_sym(b, order)
    from_sym = tuple(p.substitute({"z": 1}) for p in sym)
    one_minus_t = TruncatedSeries(ZZ, [1, -1], order)
    from_genfun = tuple(one_minus_t.power(-chi).coeffs)
    return GenfunCheck(chi=chi, from_sym=from_sym, from_genfun=from_genfun)
