"""Series Euler characteristics of finite categories from hom-count data.

A finite category enters as its n x n matrix of hom-set sizes A (diagonal
at least 1, for identities).  The chain-counting series

    f(t) = 1^T (I - t(A - I))^{-1} 1

is rational: its k-th coefficient at t = 0 counts composable chains of k
non-identity morphisms, and its value at t = -1 is the series Euler
characteristic.  Everything is computed exactly over QQ[t]: determinants
by fraction-free (Bareiss) elimination, the solve by Cramer's rule, and
the expansion about t = -1 through the shared pole-aware machinery, which
is where negative-index ("lower") Euler characteristics appear whenever
the reduced denominator vanishes at -1.

Hom-count matrices are taken at face value; no attempt is made to check
that a category with those counts exists, since every invariant here
depends on the matrix alone.
"""

from __future__ import annotations

from fractions import Fraction

from .chain import IntegerMatrix
from .polycore import (
    LaurentPolynomial,
    RationalFunction,
    TaylorCoefficients,
    laurent_expand,
    poly_exact_div,
)
from .rings import QQ

POLE = "pole"


def check_hom_matrix(a) -> list:
    """Validate and normalize an n x n hom-count matrix."""
    rows = [list(int(x) for x in row) for row in a]
    n = len(rows)
    if n == 0:
        raise ValueError("hom-count matrix must be nonempty")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ValueError(f"row {i} has {len(row)} entries, expected {n}")
        if any(x < 0 for x in row):
            raise ValueError(f"row {i} has a negative hom count")
        if row[i] < 1:
            raise ValueError(f"object {i} lacks an identity morphism (diagonal entry 0)")
    return rows


def _poly_det(rows) -> LaurentPolynomial:
    """Determinant of a matrix over QQ[t] by Bareiss elimination.

    Fraction-free: every division is exact (asserted), which keeps the
    intermediate entries small and the run deterministic.
    """
    n = len(rows)
    a = [row[:] for row in rows]
    sign = 1
    prev = LaurentPolynomial.one(QQ)
    for k in range(n - 1):
        if a[k][k].is_zero:
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero), None)
            if swap is None:
                return LaurentPolynomial.zero(QQ)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = poly_exact_div(num, prev)
            a[i][k] = LaurentPolynomial.zero(QQ)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def _chain_matrix(a) -> list:
    """The matrix I - t(A - I) over QQ[t]."""
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            delta = 1 if i == j else 0
            row.append(LaurentPolynomial(QQ, {0: delta, 1: -(a[i][j] - delta)}))
        out.append(row)
    return out


def series_function(a) -> RationalFunction:
    """The rational chain-counting series of a hom-count matrix.

    Computed by Cramer's rule: numerator is the sum over columns of the
    determinant with that column replaced by the all-ones vector.
    """
    a = check_hom_matrix(a)
    m = _chain_matrix(a)
    n = len(a)
    den = _poly_det(m)
    ones = LaurentPolynomial.one(QQ)
    num = LaurentPolynomial.zero(QQ)
    for col in range(n):
        replaced = [
            [ones if j == col else m[i][j] for j in range(n)] for i in range(n)
        ]
        num = num + _poly_det(replaced)
    return RationalFunction(num, den)


def chain_count(a, k: int) -> int:
    """Number of composable chains of k non-identity morphisms: 1^T (A-I)^k 1."""
    a = check_hom_matrix(a)
    n = len(a)
    m = IntegerMatrix.from_rows([[x - (1 if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(a)])
    power = IntegerMatrix.identity(n)
    for _ in range(k):
        power = power * m
    return sum(x for row in power.entries for x in row)


def int_matrix_det(a) -> Fraction:
    """Determinant over QQ by Gaussian elimination (test oracle companion)."""
    n = len(a)
    work = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for k in range(n):
        pivot = next((i for i in range(k, n) if work[i][k] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            work[k], work[pivot] = work[pivot], work[k]
            det = -det
        det *= work[k][k]
        inv = 1 / work[k][k]
        for i in range(k + 1, n):
            factor = work[i][k] * inv
            if factor:
                work[i] = [x - factor * y for x, y in zip(work[i], work[k])]
    return det


def inverse_entry_sum(a) -> Fraction:
    """Sum of all entries of A^{-1}, i.e. 1^T A^{-1} 1; A must be invertible."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(1)] for row in a]
    for k in range(n):
        pivot = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        if pivot != k:
            aug[k], aug[pivot] = aug[pivot], aug[k]
        inv = 1 / aug[k][k]
        aug[k] = [x * inv for x in aug[k]]
        for i in range(n):
            if i != k and aug[i][k]:
                factor = aug[i][k]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[k])]
    return sum(row[n] for row in aug)


def chi_series(a):
    """Series Euler characteristic: f(-1), or the flag "pole".

    When det(A) is nonzero the value must equal the sum of the entries of
    A^{-1}; that identity is cross-checked on every call.
    """
    a = check_hom_matrix(a)
    f = series_function(a)
    if f.den.evaluate(Fraction(-1)) == 0:
        return POLE
    value = f.evaluate(Fraction(-1))
    if int_matrix_det(a) != 0:
        expected = inverse_entry_sum(a)
        if value != expected:
            raise RuntimeError(
                f"series value {value} disagrees with entry sum of the inverse {expected}"
            )
    return value


def chi_laurent(a, order: int) -> TaylorCoefficients:
    """Higher and lower Euler characteristics: the expansion of f about -1.

    The minimum index is negative exactly when :func:`chi_series` reports
    a pole.
    """
    return laurent_expand(series_function(a), Fraction(-1), order)


# -- text format ---------------------------------------------------------------
#
#   first line n, then n rows of n nonnegative integers; '#' comments.


def parse_hom_matrix(text: str) -> list:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body))
    if not lines:
        raise ValueError("empty matrix file")
    lineno, body = lines[0]
    try:
        n = int(body)
    except ValueError:
        raise ValueError(f"line {lineno}: expected the matrix size") from None
    if n < 1:
        raise ValueError(f"line {lineno}: size must be positive")
    if len(lines) - 1 != n:
        raise ValueError(f"expected {n} matrix rows, found {len(lines) - 1}")
    rows = []
    for lineno, body in lines[1:]:
        try:
            row = [int(x) for x in body.split()]
        except ValueError:
            raise ValueError(f"line {lineno}: rows must hold integers") from None
        if len(row) != n:
            raise ValueError(f"line {lineno}: expected {n} entries, got {len(row)}")
        rows.append(row)
    return check_hom_matrix(rows)


def serialize_hom_matrix(a) -> str:
    a = check_hom_matrix(a)
    lines = [str(len(a))]
    lines.extend(" ".join(str(x) for x in row) for row in a)
    return "\n".join(lines) + "\n"
