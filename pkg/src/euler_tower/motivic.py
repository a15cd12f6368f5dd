"""A variety-expression DSL and evaluators for motivic measures.

Expressions are formal combinations of a fixed atom library (point, affine
and projective spaces, the torus, smooth proper curves by genus, and the
Lefschetz class).  Every measure is a ring homomorphism on the expression
algebra: products multiply, sums and differences add and subtract, and no
geometric containment is ever checked for a difference, because a
homomorphism could not see it anyway.

The Hodge measure lands in ZZ[u, v]; the Poincare measure is its diagonal
specialization v = u (the unique homomorphic extension compatible with the
smooth proper case), and the compactly-supported Euler characteristic is
the value at u = v = -1.  Re-expanding the Hodge polynomial in powers of
(v - u) produces the higher Hodge coefficients, whose zeroth entry is the
Poincare measure again.
"""

from __future__ import annotations

from .polycore import LaurentPolynomial, reexpand
from .rings import SYMBOLS, SymPoly


_BARE_ATOMS = ("pt", "Gm", "L")
_PARAM_ATOMS = ("A", "P", "C")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
        elif ch in "()*+-":
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


def parse_variety_expr(text: str):
    """Parse ``expr := term (('+'|'-') term)*; term := factor ('*' factor)*``.

    Differences are formal Grothendieck-ring subtraction.  Returns an AST
    of ('atom', kind, n) and ('product' | 'sum' | 'difference', left, right).
    """
    tokens = _tokenize(text)
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
            pos += 1
            if name in _BARE_ATOMS:
                return ("atom", name, 0)
            if name in _PARAM_ATOMS:
                expect("(")
                arg = expect("int")
                expect(")")
                return ("atom", name, arg[1])
            raise ValueError(f"unknown atom {name!r} at position {tok[2]}")
        raise ValueError(f"unexpected token at position {tok[-1]}")

    def parse_term():
        node = parse_factor()
        while peek() and peek()[0] == "*":
            expect("*")
            node = ("product", node, parse_factor())
        return node

    def parse_expr():
        node = parse_term()
        while peek() and peek()[0] in "+-":
            op = peek()[0]
            expect(op)
            node = ("sum" if op == "+" else "difference", node, parse_term())
        return node

    node = parse_expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input at position {tokens[pos][-1]}")
    return node


def _hodge_atom(kind: str, n: int) -> SymPoly:
    u = SymPoly.gen("u")
    v = SymPoly.gen("v")
    uv = u * v
    if kind == "pt":
        return SymPoly.const(1)
    if kind == "L":
        return uv
    if kind == "A":
        return uv**n
    if kind == "P":
        total = SymPoly.const(0)
        for i in range(n + 1):
            total = total + uv**i
        return total
    if kind == "Gm":
        return uv - 1
    if kind == "C":
        return 1 + n * u + n * v + uv
    raise ValueError(f"unknown atom {kind!r}")


def _evaluate(expr, atom_fn):
    tag = expr[0]
    if tag == "atom":
        return atom_fn(expr[1], expr[2])
    left = _evaluate(expr[1], atom_fn)
    right = _evaluate(expr[2], atom_fn)
    if tag == "product":
        return left * right
    if tag == "sum":
        return left + right
    if tag == "difference":
        return left - right
    raise ValueError(f"unknown node {tag!r}")


def measure_hodge(expr) -> SymPoly:
    """Hodge characteristic in ZZ[u, v]; sum of h^{p,q} u^p v^q on atoms."""
    return SYMBOLS.coerce(_evaluate(expr, _hodge_atom))


def measure_poincare(expr) -> SymPoly:
    """Poincare characteristic in ZZ[t], the diagonal u = v = t of Hodge."""
    t = SymPoly.gen("t")
    return SYMBOLS.coerce(measure_hodge(expr).substitute({"u": t, "v": t}))


def measure_chi_c(expr) -> int:
    """Euler characteristic with compact support: the Hodge value at (-1, -1)."""
    return measure_hodge(expr).substitute({"u": -1, "v": -1})


def _count_atom(kind: str, n: int) -> SymPoly:
    q = SymPoly.gen("q")
    if kind == "C" and n >= 1:
        raise ValueError("not in the Lefschetz subring")
    if kind == "pt":
        return SymPoly.const(1)
    if kind == "L":
        return q
    if kind == "A":
        return q**n
    if kind == "P":
        total = SymPoly.const(0)
        for i in range(n + 1):
            total = total + q**i
        return total
    if kind == "Gm":
        return q - 1
    if kind == "C":  # genus 0 is the projective line
        return 1 + q
    raise ValueError(f"unknown atom {kind!r}")


def point_count(expr) -> SymPoly:
    """Counting polynomial in q, with the Lefschetz class sent to q.

    Only defined on the subring generated by powers of the Lefschetz
    class; curves of positive genus are refused.
    """
    return SYMBOLS.coerce(_evaluate(expr, _count_atom))


def hodge_higher(expr, center=None) -> list:
    """Coefficients of the Hodge polynomial expanded in powers of (v - center).

    By default the center is u itself, giving the expansion
    mu_H = sum_j chi_j (v - u)^j with chi_j in ZZ[u]; chi_0 is the diagonal
    specialization, i.e. the Poincare characteristic in the variable u.
    """
    if center is None:
        center = SymPoly.gen("u")
    h = measure_hodge(expr)
    as_v_poly = LaurentPolynomial(SYMBOLS, h.split_variable("v"))
    return list(reexpand(as_v_poly, center).coeffs)


def higher_measure_coefficients(expr, measure=measure_poincare) -> list:
    """Coefficient list of a measure valued in univariate polynomials.

    Index 0 is itself a measure (multiplicative); the higher indices are
    merely additive.
    """
    value = SYMBOLS.coerce(measure(expr))
    gens = sorted(value.generators())
    if len(gens) > 1:
        raise ValueError(f"measure value is not univariate: {gens}")
    if not gens:
        return [value.constant_term()]
    return value.univariate_coeffs(gens[0])
