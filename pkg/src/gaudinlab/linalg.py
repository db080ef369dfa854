"""Exact rational linear algebra: sparse kernels, dense matrices,
characteristic polynomials.

Everything here works over int/Fraction and never rounds.  The sparse
eliminator keeps a reduced echelon set of pivot rows (pivot normalized
to 1, no pivot column appearing in another pivot row), processing input
rows by increasing fill, which is enough to keep the structured bracket
matrices from exploding.  Floating point appears in exactly one place:
approximating the non-rational roots of an exact characteristic
polynomial.
"""

from __future__ import annotations

from fractions import Fraction

import numpy

Coeff = int | Fraction


class SparseRationalMatrix:
    """Sparse exact matrix; rows are equations, columns are unknowns."""

    def __init__(self, nrows: int, ncols: int, entries: dict[tuple[int, int], Coeff]):
        self.nrows = nrows
        self.ncols = ncols
        self.entries = {k: v for k, v in entries.items() if v != 0}
        for (i, j) in self.entries:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise ValueError("entry (%d, %d) out of shape" % (i, j))
        self._pivots = None

    @classmethod
    def from_columns(cls, columns: list[dict[int, Coeff]], nrows: int):
        entries = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                entries[(i, j)] = v
        return cls(nrows, len(columns), entries)

    def _echelon(self):
        if self._pivots is not None:
            return self._pivots
        rows: list[dict[int, Coeff]] = [dict() for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        order = sorted(range(self.nrows), key=lambda i: (len(rows[i]), i))
        pivots: dict[int, dict[int, Coeff]] = {}
        occupancy: dict[int, set[int]] = {}
        for i in order:
            row = dict(rows[i])
            while True:
                hit = None
                for col in row:
                    if col in pivots:
                        hit = col if hit is None or col < hit else hit
                if hit is None:
                    break
                f = row[hit]
                for col, v in pivots[hit].items():
                    nv = row.get(col, 0) - f * v
                    if nv:
                        row[col] = nv
                    else:
                        row.pop(col, None)
            row = {c: v for c, v in row.items() if v != 0}
            if not row:
                continue
            pcol = min(row)
            inv = Fraction(1) / Fraction(row[pcol])
            prow = {c: v * inv for c, v in row.items()}
            # keep the reduced invariant: purge pcol from older pivot rows
            for other in list(occupancy.get(pcol, ())):
                orow = pivots[other]
                f = orow[pcol]
                for c, v in prow.items():
                    nv = orow.get(c, 0) - f * v
                    if nv:
                        orow[c] = nv
                        occupancy.setdefault(c, set()).add(other)
                    else:
                        orow.pop(c, None)
                        if c in occupancy:
                            occupancy[c].discard(other)
            occupancy.pop(pcol, None)
            pivots[pcol] = prow
            for c in prow:
                if c != pcol:
                    occupancy.setdefault(c, set()).add(pcol)
        self._pivots = pivots
        return pivots

    def rank(self) -> int:
        return len(self._echelon())

    def kernel(self) -> list[dict[int, Fraction]]:
        """Basis of the nullspace, one vector per free column.

        Vectors are normalized with a 1 at their free column and are
        returned in increasing free-column order.  rank + nullity ==
        ncols is asserted.
        """
        pivots = self._echelon()
        free = [c for c in range(self.ncols) if c not in pivots]
        basis = []
        for fcol in free:
            vec = {fcol: Fraction(1)}
            for pcol, prow in pivots.items():
                v = prow.get(fcol)
                if v:
                    vec[pcol] = -Fraction(v)
            basis.append(vec)
        assert len(pivots) + len(basis) == self.ncols
        return basis

    def in_span_of_columns(self, vec: dict[int, Coeff]) -> bool:
        """Exact membership of a row-indexed vector in the column span."""
        aug = SparseRationalMatrix.from_columns(
            [self._column(j) for j in range(self.ncols)] + [dict(vec)], self.nrows)
        return aug.rank() == self.rank()

    def _column(self, j):
        return {i: v for (i, jj), v in self.entries.items() if jj == j}


def rational_kernel(matrix: SparseRationalMatrix) -> list[dict[int, Fraction]]:
    return matrix.kernel()


class Matrix:
    """Small dense exact matrix (rationals)."""

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        self.rows = [list(r) for r in rows]
        self.n = len(self.rows)
        for r in self.rows:
            if len(r) != self.n:
                raise ValueError("matrix must be square")

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n):
        return cls([[0] * n for _ in range(n)])

    def __add__(self, other):
        return Matrix([[a + b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Matrix([[a - b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.rows, other.rows)])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Matrix([[v * other for v in r] for r in self.rows])
        n = self.n
        cols = list(zip(*other.rows))
        return Matrix([[sum(a * b for a, b in zip(row, col)) for col in cols]
                       for row in self.rows])

    def __rmul__(self, c):
        return self * c

    def __eq__(self, other):
        return isinstance(other, Matrix) and all(
            a == b for r1, r2 in zip(self.rows, other.rows) for a, b in zip(r1, r2))

    __hash__ = None

    def is_zero(self):
        return all(v == 0 for r in self.rows for v in r)

    def trace(self):
        return sum(self.rows[i][i] for i in range(self.n))

    def commutes_with(self, other) -> bool:
        return (self * other - other * self).is_zero()

    def charpoly(self) -> list[Fraction]:
        """Monic characteristic polynomial, highest power first.

        Faddeev-LeVerrier recursion; exact over the rationals.
        """
        n = self.n
        coeffs = [Fraction(1)]
        m = Matrix.identity(n)
        for k in range(1, n + 1):
            m = self * m
            c = Fraction(-m.trace(), k)
            coeffs.append(c)
            if k < n:
                m = m + Matrix.identity(n) * c
        return coeffs

    def eval_poly(self, coeffs) -> "Matrix":
        """Evaluate a polynomial (highest power first) at this matrix."""
        acc = Matrix.zero(self.n)
        for c in coeffs:
            acc = acc * self + Matrix.identity(self.n) * c
        return acc

    def kernel_dim(self) -> int:
        sp = SparseRationalMatrix(self.n, self.n, {
            (i, j): v for i, r in enumerate(self.rows) for j, v in enumerate(r) if v
        })
        return self.n - sp.rank()


# -- polynomial helpers (coefficient lists, highest power first) --------

def poly_trim(p):
    p = [Fraction(c) for c in p]
    if not p:
        return [Fraction(0)]
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def poly_derivative(p):
    p = poly_trim(p)
    n = len(p) - 1
    if n == 0:
        return [Fraction(0)]
    return [c * (n - i) for i, c in enumerate(p[:-1])]


def poly_divmod(a, b):
    a = poly_trim(a)
    b = poly_trim(b)
    if b == [Fraction(0)]:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [Fraction(0)], a
    q = []
    r = a[:]
    for _ in range(len(a) - len(b) + 1):
        f = r[0] / b[0]
        q.append(f)
        for i in range(len(b)):
            r[i] -= f * b[i]
        r = r[1:]
    return poly_trim(q), poly_trim(r)


def poly_gcd(a, b):
    a = poly_trim(a)
    b = poly_trim(b)
    while poly_trim(b) != [Fraction(0)]:
        _, r = poly_divmod(a, b)
        a, b = b, r
    a = poly_trim(a)
    if a[0] != 0:
        a = [c / a[0] for c in a]
    return a


def squarefree_part(p):
    """p / gcd(p, p'), monic."""
    p = poly_trim(p)
    g = poly_gcd(p, poly_derivative(p))
    q, r = poly_divmod(p, g)
    if poly_trim(r) != [Fraction(0)]:
        raise AssertionError("gcd does not divide the polynomial")
    if q[0] != 0:
        q = [c / q[0] for c in q]
    return q


def poly_eval(p, x):
    acc = Fraction(0)
    for c in p:
        acc = acc * x + c
    return acc


def rational_roots(p) -> list[tuple[Fraction, int]]:
    """Rational roots with multiplicities, verified exactly.

    Float roots only nominate candidates (multiple roots carry large
    float noise, so every root's real part is rationalized at several
    denominator scales); a candidate counts only if the exact polynomial
    vanishes on it.
    """
    p = poly_trim(p)
    roots = []
    approx = numpy.roots([float(c) for c in p]) if len(p) > 1 else []
    candidates = set()
    for z in approx:
        for scale in (1, 6, 60, 10 ** 4, 10 ** 6):
            candidates.add(Fraction(complex(z).real).limit_denominator(scale))
    for cand in sorted(candidates):
        mult = 0
        while len(p) > 1 and poly_eval(p, cand) == 0:
            p, r = poly_divmod(p, [Fraction(1), -cand])
            assert poly_trim(r) == [Fraction(0)]
            mult += 1
        if mult:
            roots.append((cand, mult))
    return roots


def poly_residual_after(p, roots):
    """Deflate known rational roots out of p."""
    p = poly_trim(p)
    for val, mult in roots:
        for _ in range(mult):
            p, r = poly_divmod(p, [Fraction(1), -val])
            assert poly_trim(r) == [Fraction(0)]
    return p
