"""Bounded chain complexes of finitely generated free abelian groups.

Complexes are graded homologically (the differential lowers degree by one)
and d.d = 0 is checked at construction, never assumed.  Homology ranks and
torsion come from Smith normal form over arbitrary-precision integers;
entry growth during elimination is real, so no fixed-width arithmetic
appears anywhere in this module.

The constructions the higher-Euler-characteristic identities quantify over
are all here: tensor product with the Koszul sign, mapping cones, shifts,
and direct sums, plus the tau filtration level counting how many leading
expansion coefficients of the rank polynomial vanish at t = -1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .polycore import LaurentPolynomial, RationalFunction, laurent_expand, reexpand
from .rings import QQ, ZZ


class IntegerMatrix:
    """Immutable dense matrix with arbitrary-precision integer entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        entries = tuple(tuple(int(x) for x in row) for row in entries)
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError(f"expected {rows}x{cols} entries")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows_list):
        rows_list = [list(r) for r in rows_list]
        rows = len(rows_list)
        cols = len(rows_list[0]) if rows else 0
        return cls(rows, cols, rows_list)

    @classmethod
    def zero(cls, rows: int, cols: int):
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def entry(self, i: int, j: int) -> int:
        return self.entries[i][j]

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntegerMatrix(
                self.rows, self.cols, [[x * other for x in row] for row in self.entries]
            )
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} times {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            srow = self.entries[i]
            out.append(
                [
                    sum(srow[k] * other.entries[k][j] for k in range(self.cols))
                    for j in range(other.cols)
                ]
            )
        return IntegerMatrix(self.rows, other.cols, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __neg__(self):
        return self * -1

    def __eq__(self, other):
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"IntegerMatrix({self.rows}x{self.cols}, {list(map(list, self.entries))})"


def kron(a: IntegerMatrix, b: IntegerMatrix) -> IntegerMatrix:
    """Kronecker product; basis pair (i, j) maps to index i * dim_b + j."""
    out = []
    for p in range(a.rows):
        for q in range(b.rows):
            out.append(
                [
                    a.entries[p][r] * b.entries[q][s]
                    for r in range(a.cols)
                    for s in range(b.cols)
                ]
            )
    return IntegerMatrix(a.rows * b.rows, a.cols * b.cols, out)


def assemble_blocks(grid, row_sizes, col_sizes) -> IntegerMatrix:
    """Dense matrix from a grid of optional blocks (None means zero)."""
    total_r, total_c = sum(row_sizes), sum(col_sizes)
    out = [[0] * total_c for _ in range(total_r)]
    r0 = 0
    for bi, rsize in enumerate(row_sizes):
        c0 = 0
        for bj, csize in enumerate(col_sizes):
            block = grid[bi][bj]
            if block is not None:
                if (block.rows, block.cols) != (rsize, csize):
                    raise ValueError("block shape mismatch")
                for i in range(rsize):
                    row = out[r0 + i]
                    for j in range(csize):
                        row[c0 + j] = block.entries[i][j]
            c0 += csize
        r0 += rsize
    return IntegerMatrix(total_r, total_c, out)


def _min_abs_pivot(a, t, m, n):
    """Smallest-absolute-value nonzero entry in the trailing submatrix.

    Scans rows before columns, so ties resolve deterministically.
    """
    best = None
    best_pos = None
    for i in range(t, m):
        for j in range(t, n):
            v = abs(a[i][j])
            if v and (best is None or v < best):
                best, best_pos = v, (i, j)
    return best_pos


def smith_normal_form(mat: IntegerMatrix):
    """Rank and invariant factors d_1 | d_2 | ... of an integer matrix.

    Smallest-pivot elimination with an explicit divisibility fix-up; the
    pivot choice makes the run deterministic, which golden tests rely on.
    """
    m, n = mat.rows, mat.cols
    a = [list(row) for row in mat.entries]
    factors = []
    t = 0
    while t < min(m, n):
        pos = _min_abs_pivot(a, t, m, n)
        if pos is None:
            break
        pi, pj = pos
        if pi != t:
            a[t], a[pi] = a[pi], a[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
        p = a[t][t]
        clean = True
        for i in range(t + 1, m):
            if a[i][t]:
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    clean = False  # leftover remainder smaller than the pivot
        for j in range(t + 1, n):
            if a[t][j]:
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    clean = False
        if not clean:
            continue
        # pivot row and column are clear; enforce the divisibility chain
        fix = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % p:
                    fix = i
                    break
            if fix is not None:
                break
        if fix is not None:
            a[t] = [x + y for x, y in zip(a[t], a[fix])]
            continue
        factors.append(p)
        t += 1
    return t, tuple(factors)


@dataclass(frozen=True)
class HomologySummary:
    """Betti ranks and torsion invariant factors, per degree."""

    low: int
    high: int
    betti: dict
    torsion: dict

    def betti_rank(self, i: int) -> int:
        return self.betti.get(i, 0)

    def torsion_at(self, i: int) -> tuple:
        return self.torsion.get(i, ())

    def betti_vector(self) -> tuple:
        """Dense Betti list from degree 0 upward (only for nonnegative support)."""
        if self.betti and min(self.betti) < 0:
            raise ValueError("complex has negative-degree homology")
        top = max((i for i, b in self.betti.items() if b), default=-1)
        return tuple(self.betti.get(i, 0) for i in range(top + 1))


class ChainComplex:
    """A bounded complex ... -> C_{i+1} -> C_i -> C_{i-1} -> ...

    ``ranks`` maps degree to the rank of the free abelian group there and
    ``diffs[i]`` is the matrix of d_i : C_i -> C_{i-1}, of shape
    ranks(i-1) x ranks(i).  Construction rejects anything with d.d != 0.
    """

    __slots__ = ("ranks", "diffs", "low", "high")

    def __init__(self, ranks: dict, diffs: dict | None = None):
        clean_ranks = {}
        for i, r in ranks.items():
            i, r = int(i), int(r)
            if r < 0:
                raise ValueError(f"negative rank at degree {i}")
            if r:
                clean_ranks[i] = r
        self.ranks = clean_ranks
        self.low = min(clean_ranks) if clean_ranks else 0
        self.high = max(clean_ranks) if clean_ranks else -1
        clean_diffs = {}
        for i, mat in (diffs or {}).items():
            i = int(i)
            want = (clean_ranks.get(i - 1, 0), clean_ranks.get(i, 0))
            if (mat.rows, mat.cols) != want:
                raise ValueError(
                    f"differential at degree {i} has shape {mat.rows}x{mat.cols}, expected {want[0]}x{want[1]}"
                )
            if not mat.is_zero:
                clean_diffs[i] = mat
        self.diffs = clean_diffs
        for i in list(clean_diffs):
            if i + 1 in clean_diffs:
                if not (clean_diffs[i] * clean_diffs[i + 1]).is_zero:
                    raise ValueError(f"d.d != 0 between degrees {i + 1} and {i - 1}")

    def rank(self, i: int) -> int:
        return self.ranks.get(i, 0)

    def d(self, i: int) -> IntegerMatrix:
        got = self.diffs.get(i)
        if got is not None:
            return got
        return IntegerMatrix.zero(self.rank(i - 1), self.rank(i))

    def degrees(self):
        return range(self.low, self.high + 1)

    @property
    def is_trivial(self) -> bool:
        return not self.ranks

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return self.ranks == other.ranks and self.diffs == other.diffs

    def __repr__(self):
        return f"ChainComplex(ranks={self.ranks})"


def one_term(rank: int, degree: int = 0) -> ChainComplex:
    return ChainComplex({degree: rank})


def two_term(matrix: IntegerMatrix, top_degree: int = 1) -> ChainComplex:
    """The complex Z^cols --matrix--> Z^rows in degrees (top, top-1)."""
    return ChainComplex(
        {top_degree: matrix.cols, top_degree - 1: matrix.rows}, {top_degree: matrix}
    )


def homology(c: ChainComplex) -> HomologySummary:
    """Betti ranks and torsion via Smith normal form of the differentials.

    rank H_i = rank C_i - rank d_i - rank d_{i+1}; the torsion of H_i is
    the set of invariant factors of d_{i+1} exceeding 1.
    """
    snf_rank = {}
    snf_factors = {}
    for i in range(c.low, c.high + 2):
        r, factors = smith_normal_form(c.d(i))
        snf_rank[i] = r
        snf_factors[i] = factors
    betti = {}
    torsion = {}
    for i in c.degrees():
        b = c.rank(i) - snf_rank.get(i, 0) - snf_rank.get(i + 1, 0)
        if b:
            betti[i] = b
        tor = tuple(f for f in snf_factors.get(i + 1, ()) if f > 1)
        if tor:
            torsion[i] = tor
    return HomologySummary(low=c.low, high=c.high, betti=betti, torsion=torsion)


def poincare(c: ChainComplex) -> LaurentPolynomial:
    """Rank generating polynomial sum_i rank(C_i) t^i."""
    return LaurentPolynomial(ZZ, dict(c.ranks))


def homological_poincare(c: ChainComplex) -> LaurentPolynomial:
    """sum_i rank(H_i) t^i; invariant under quasi-isomorphism, unlike poincare."""
    return LaurentPolynomial(ZZ, homology(c).betti)


def _chi_of_laurent(p: LaurentPolynomial, j: int) -> int:
    """Coefficient j of the expansion of a Laurent polynomial about t = -1."""
    if p.is_zero:
        return 0
    val = p.valuation()
    if val >= 0:
        return reexpand(p, -1)[j]
    s = -val
    num = p.shifted(s).to_ring(QQ)
    den = LaurentPolynomial.monomial(QQ, s, Fraction(1))
    coeff = laurent_expand(RationalFunction(num, den), -1, max(j, 0))[j]
    if coeff.denominator != 1:
        raise RuntimeError("expansion of an integer Laurent polynomial left QQ")
    return int(coeff)


def chi_j(c: ChainComplex, j: int) -> int:
    """j-th higher Euler characteristic of the rank polynomial at t = -1."""
    if j < 0:
        raise ValueError("index must be nonnegative")
    return _chi_of_laurent(poincare(c), j)


def chi_h_j(c: ChainComplex, j: int) -> int:
    """Homological variant: expansion coefficients of the Betti polynomial."""
    if j < 0:
        raise ValueError("index must be nonnegative")
    return _chi_of_laurent(homological_poincare(c), j)


def tensor(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    """Tensor product with the Koszul sign d(x o y) = dx o y + (-1)^|x| x o dy.

    Degree-n part is the direct sum of A_i o B_{n-i}, blocks ordered by
    ascending i; the rank polynomial multiplies on the nose.
    """
    if a.is_trivial or b.is_trivial:
        return ChainComplex({})
    ranks = {}
    for i in a.degrees():
        for j in b.degrees():
            if a.rank(i) and b.rank(j):
                ranks[i + j] = ranks.get(i + j, 0) + a.rank(i) * b.rank(j)
    def blocks_of(n):
        return [i for i in a.degrees() if a.rank(i) and b.rank(n - i)]
    diffs = {}
    for n in range(min(ranks), max(ranks) + 1):
        dom = blocks_of(n)
        cod = blocks_of(n - 1)
        if not dom or not cod:
            continue
        row_sizes = [a.rank(i) * b.rank(n - 1 - i) for i in cod]
        col_sizes = [a.rank(i) * b.rank(n - i) for i in dom]
        grid = [[None] * len(dom) for _ in cod]
        for cj, i in enumerate(dom):
            if i - 1 in cod:
                grid[cod.index(i - 1)][cj] = kron(a.d(i), IntegerMatrix.identity(b.rank(n - i)))
            if i in cod:
                sign = -1 if i % 2 else 1
                grid[cod.index(i)][cj] = sign * kron(IntegerMatrix.identity(a.rank(i)), b.d(n - i))
        diffs[n] = assemble_blocks(grid, row_sizes, col_sizes)
    return ChainComplex(ranks, diffs)


def cone(a: ChainComplex, b: ChainComplex, maps: dict) -> ChainComplex:
    """Mapping cone of a chain map f : A -> B given degreewise by ``maps``.

    Cone_i = B_i (+) A_{i-1} with differential [[d_B, f], [0, -d_A]].  The
    chain-map condition d_B f = f d_A is checked degree by degree and the
    first failure is reported.
    """
    def f(i):
        got = maps.get(i)
        if got is None:
            return IntegerMatrix.zero(b.rank(i), a.rank(i))
        if (got.rows, got.cols) != (b.rank(i), a.rank(i)):
            raise ValueError(
                f"chain map at degree {i} has shape {got.rows}x{got.cols}, "
                f"expected {b.rank(i)}x{a.rank(i)}"
            )
        return got

    lo = min(a.low, b.low) - 1
    hi = max(a.high, b.high) + 1
    for i in range(lo, hi + 1):
        if b.d(i) * f(i) != f(i - 1) * a.d(i):
            raise ValueError(f"not a chain map at degree {i}")
    ranks = {}
    for i in range(lo, hi + 2):
        r = b.rank(i) + a.rank(i - 1)
        if r:
            ranks[i] = r
    diffs = {}
    for i in ranks:
        grid = [[b.d(i), f(i - 1)], [None, -a.d(i - 1)]]
        diffs[i] = assemble_blocks(
            grid, [b.rank(i - 1), a.rank(i - 2)], [b.rank(i), a.rank(i - 1)]
        )
    return ChainComplex(ranks, diffs)


def cone_self(c: ChainComplex, maps: dict | None = None) -> ChainComplex:
    """Cone of a self-map of C (the zero map unless ``maps`` says otherwise)."""
    return cone(c, c, maps or {})


def iterated_cone(c: ChainComplex, times: int) -> ChainComplex:
    for _ in range(times):
        c = cone_self(c)
    return c


def identity_maps(c: ChainComplex) -> dict:
    return {i: IntegerMatrix.identity(c.rank(i)) for i in c.degrees() if c.rank(i)}


def shift(c: ChainComplex, n: int) -> ChainComplex:
    """Shifted complex C[n]_i = C_{i+n}, differentials twisted by (-1)^n."""
    sign = -1 if n % 2 else 1
    ranks = {i - n: r for i, r in c.ranks.items()}
    diffs = {i - n: sign * m for i, m in c.diffs.items()}
    return ChainComplex(ranks, diffs)


def direct_sum(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    lo = min(a.low, b.low)
    hi = max(a.high, b.high)
    ranks = {}
    diffs = {}
    for i in range(lo, hi + 1):
        if a.rank(i) + b.rank(i):
            ranks[i] = a.rank(i) + b.rank(i)
    for i in range(lo, hi + 1):
        grid = [[a.d(i), None], [None, b.d(i)]]
        diffs[i] = assemble_blocks(grid, [a.rank(i - 1), b.rank(i - 1)], [a.rank(i), b.rank(i)])
    return ChainComplex(ranks, diffs)


def is_acyclic(c: ChainComplex) -> bool:
    """True when every homology group vanishes, torsion included."""
    h = homology(c)
    return not h.betti and not h.torsion


TAU_INFINITE = math.inf


def tau_level(c: ChainComplex):
    """Largest n with chi_0 .. chi_n all zero.

    None when chi_0 != 0 already; the infinite sentinel when the rank
    polynomial itself is zero (every coefficient vanishes).
    """
    p = poincare(c)
    if p.is_zero:
        return TAU_INFINITE
    val = p.valuation()
    shifted = p.shifted(-val) if val < 0 else p
    ord_vanish = reexpand(shifted, -1).order_of_vanishing()
    if ord_vanish is None:
        # nonzero polynomial: some expansion coefficient is nonzero
        raise RuntimeError("nonzero polynomial with identically zero expansion")
    return None if ord_vanish == 0 else ord_vanish - 1


# -- complex file format ------------------------------------------------------
#
#   degrees LOW HIGH
#   ranks r_LOW ... r_HIGH
#   d I          (then ranks(I-1) rows of ranks(I) integers)
#
# '#' starts a comment; blank lines are ignored.  Differentials that are
# zero (or have an empty shape) are omitted.


def parse_complex(text: str) -> ChainComplex:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body))
    if not lines:
        raise ValueError("empty complex file")

    def fail(lineno, msg):
        raise ValueError(f"line {lineno}: {msg}")

    idx = 0
    lineno, body = lines[idx]
    parts = body.split()
    if parts[0] != "degrees" or len(parts) != 3:
        fail(lineno, "expected 'degrees LOW HIGH'")
    try:
        low, high = int(parts[1]), int(parts[2])
    except ValueError:
        fail(lineno, "degree bounds must be integers")
    if high < low:
        fail(lineno, "HIGH must be at least LOW")
    idx += 1
    if idx >= len(lines):
        raise ValueError("missing 'ranks' line")
    lineno, body = lines[idx]
    parts = body.split()
    if parts[0] != "ranks":
        fail(lineno, "expected 'ranks ...'")
    if len(parts) - 1 != high - low + 1:
        fail(lineno, f"expected {high - low + 1} ranks for degrees {low}..{high}")
    try:
        rank_list = [int(x) for x in parts[1:]]
    except ValueError:
        fail(lineno, "ranks must be integers")
    if any(r < 0 for r in rank_list):
        fail(lineno, "ranks must be nonnegative")
    ranks = {low + k: r for k, r in enumerate(rank_list)}
    idx += 1
    diffs = {}
    while idx < len(lines):
        lineno, body = lines[idx]
        parts = body.split()
        if parts[0] != "d" or len(parts) != 2:
            fail(lineno, "expected 'd I'")
        try:
            i = int(parts[1])
        except ValueError:
            fail(lineno, "differential degree must be an integer")
        if not (low < i <= high):
            fail(lineno, f"differential degree {i} outside {low + 1}..{high}")
        if i in diffs:
            fail(lineno, f"duplicate differential at degree {i}")
        nrows = ranks.get(i - 1, 0)
        ncols = ranks.get(i, 0)
        if nrows == 0 or ncols == 0:
            fail(lineno, f"differential at degree {i} has empty shape; omit it")
        idx += 1
        rows = []
        for k in range(nrows):
            if idx >= len(lines):
                fail(lineno, f"differential at degree {i}: expected {nrows} rows")
            rl, rbody = lines[idx]
            try:
                row = [int(x) for x in rbody.split()]
            except ValueError:
                fail(rl, "matrix rows must be integers")
            if len(row) != ncols:
                fail(rl, f"expected {ncols} entries, got {len(row)}")
            rows.append(row)
            idx += 1
        diffs[i] = IntegerMatrix(nrows, ncols, rows)
    try:
        return ChainComplex(ranks, diffs)
    except ValueError as exc:
        raise ValueError(str(exc)) from None


def serialize_complex(c: ChainComplex) -> str:
    if c.is_trivial:
        return "degrees 0 0\nranks 0\n"
    out = [f"degrees {c.low} {c.high}"]
    out.append("ranks " + " ".join(str(c.rank(i)) for i in c.degrees()))
    for i in sorted(c.diffs):
        out.append(f"d {i}")
        for row in c.diffs[i].entries:
            out.append(" ".join(str(x) for x in row))
    return "\n".join(out) + "\n"
