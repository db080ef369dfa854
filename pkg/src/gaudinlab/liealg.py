"""Structure data for gl_r and sl_r over exact rationals.

Every basis element is stored as an integer r x r matrix; brackets and
the invariant form <x, y> = Tr(xy) are computed from the matrices once
and tabulated.  Algebras are interned by (kind, rank), so the rewriting
caches that other modules hang off an algebra are shared process-wide.

Basis conventions:

* gl_r: matrix units E[i,j], 1 <= i, j <= r, ordered lexicographically
  on (i, j).
* sl_r: the off-diagonal matrix units together with the coweights
  H[i] = E[i,i] - E[i+1,i+1], i < r.  H[i] sorts at the diagonal slot
  (i, i), so the total order is again lexicographic on (i, j).

Structure constants for both bases are integers, which keeps most of
the downstream arithmetic in plain ints; rationals only enter through
dual bases and symmetrization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

Coeff = int | Fraction

_REGISTRY: dict[tuple[str, int], "LieAlgebra"] = {}

# Generator ids downstream pack a basis label into the low bits; keep the
# dimension inside that budget.
MAX_DIM = 63


def _mat_mul(a, b, r):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(r)) for j in range(r))
        for i in range(r)
    )


def _mat_trace(a, r):
    return sum(a[i][i] for i in range(r))


def _mat_sub(a, b, r):
    return tuple(tuple(a[i][j] - b[i][j] for j in range(r)) for i in range(r))


class LieAlgebra:
    """Interned structure-constant table for gl_r or sl_r.

    Use :func:`build_algebra`; the constructor itself does not validate
    interning.  Relevant attributes:

    * ``names`` -- printable labels, e.g. ``E[1,2]`` or ``H[1]``;
    * ``mats`` -- the defining r x r integer matrices;
    * ``form`` -- Gram matrix of the trace form on the basis;
    * ``cartan`` -- indices of the Cartan generators.
    """

    def __init__(self, kind: str, rank: int):
        if kind not in ("gl", "sl"):
            raise ValueError("kind must be 'gl' or 'sl'")
        if rank < 1 or (kind == "sl" and rank < 2):
            raise ValueError("invalid rank %r for kind %r" % (rank, kind))
        self.kind = kind
        self.rank = rank
        self.names: list[str] = []
        self.mats: list[tuple[tuple[int, ...], ...]] = []
        self.slots: list[tuple[int, int]] = []  # (i, j) sort key per label
        cartan = []
        r = rank
        for i in range(1, r + 1):
            for j in range(1, r + 1):
                if kind == "gl":
                    self.names.append("E[%d,%d]" % (i, j))
                    self.mats.append(self._unit(i, j))
                    self.slots.append((i, j))
                    if i == j:
                        cartan.append(len(self.names) - 1)
                elif i != j:
                    self.names.append("E[%d,%d]" % (i, j))
                    self.mats.append(self._unit(i, j))
                    self.slots.append((i, j))
                elif i < r:
                    self.names.append("H[%d]" % i)
                    m = _mat_sub(self._unit(i, i), self._unit(i + 1, i + 1), r)
                    self.mats.append(m)
                    self.slots.append((i, i))
                    cartan.append(len(self.names) - 1)
        self.dim = len(self.names)
        if self.dim > MAX_DIM:
            raise ValueError("rank too large: dimension %d exceeds %d" % (self.dim, MAX_DIM))
        self.cartan = tuple(cartan)
        self._index = {n: k for k, n in enumerate(self.names)}
        self._bracket = {}
        for a in range(self.dim):
            for b in range(self.dim):
                comm = _mat_sub(
                    _mat_mul(self.mats[a], self.mats[b], r),
                    _mat_mul(self.mats[b], self.mats[a], r),
                    r,
                )
                self._bracket[(a, b)] = tuple(sorted(self.coords(comm).items()))
        self.form = tuple(
            tuple(_mat_trace(_mat_mul(self.mats[a], self.mats[b], r), r) for b in range(self.dim))
            for a in range(self.dim)
        )
        self._form_inv = _invert(self.form, self.dim)
        self._dual = None
        self._triple = None
        # scratch space for loop-level rewriting caches owned by other modules
        self.caches: dict[str, dict] = {}
        self._verify()

    def _unit(self, i, j):
        r = self.rank
        return tuple(
            tuple(1 if (p, q) == (i - 1, j - 1) else 0 for q in range(r)) for p in range(r)
        )

    def coords(self, mat) -> dict[int, Coeff]:
        """Coordinates of an r x r matrix in the chosen basis.

        For sl_r the matrix must be traceless; the diagonal part is
        re-expressed through the H[i] by partial sums.
        """
        r = self.rank
        out: dict[int, Coeff] = {}
        if self.kind == "gl":
            for i in range(r):
                for j in range(r):
                    if mat[i][j]:
                        out[self._index["E[%d,%d]" % (i + 1, j + 1)]] = mat[i][j]
            return out
        if _mat_trace(mat, r) != 0:
            raise ValueError("matrix is not traceless")
        for i in range(r):
            for j in range(r):
                if i != j and mat[i][j]:
                    out[self._index["E[%d,%d]" % (i + 1, j + 1)]] = mat[i][j]
        acc = 0
        for i in range(r - 1):
            acc += mat[i][i]
            if acc:
                out[self._index["H[%d]" % (i + 1)]] = acc
        return out

    def index(self, name: str) -> int:
        return self._index[name]

    def bracket_basis(self, a: int, b: int):
        """[x_a, x_b] as a tuple of (label, integer coefficient)."""
        return self._bracket[(a, b)]

    def form_basis(self, a: int, b: int) -> int:
        return self.form[a][b]

    def basis_element(self, a: int) -> "LieElement":
        return LieElement(self, {a: 1})

    def _verify(self):
        dim = self.dim
        for a in range(dim):
            for b in range(dim):
                lhs = dict(self._bracket[(a, b)])
                rhs = {c: -v for c, v in self._bracket[(b, a)]}
                if lhs != rhs:
                    raise AssertionError("bracket table not antisymmetric")
        # Jacobi and ad-invariance of the form, on the tabulated constants.
        for a in range(dim):
            for b in range(dim):
                ab = self._bracket[(a, b)]
                for c in range(dim):
                    acc: dict[int, Coeff] = {}
                    for d, v in ab:
                        for e, w in self._bracket[(d, c)]:
                            acc[e] = acc.get(e, 0) + v * w
                    for d, v in self._bracket[(b, c)]:
                        for e, w in self._bracket[(d, a)]:
                            acc[e] = acc.get(e, 0) + v * w
                    for d, v in self._bracket[(c, a)]:
                        for e, w in self._bracket[(d, b)]:
                            acc[e] = acc.get(e, 0) + v * w
                    if any(acc.values()):
                        raise AssertionError("Jacobi identity fails in bracket table")
                    inv = sum(v * self.form[d][c] for d, v in ab)
                    inv += sum(v * self.form[b][d] for d, v in self._bracket[(a, c)])
                    if inv != 0:
                        raise AssertionError("trace form is not ad-invariant")

    def __reduce__(self):
        return (build_algebra, (self.kind, self.rank))

    def __repr__(self):
        return "%s_%d" % (self.kind, self.rank)


def build_algebra(kind: str, rank: int) -> LieAlgebra:
    """Return the interned gl_rank / sl_rank instance."""
    key = (kind, rank)
    alg = _REGISTRY.get(key)
    if alg is None:
        alg = LieAlgebra(kind, rank)
        _REGISTRY[key] = alg
    return alg


def _invert(rows, n):
    """Exact inverse of an n x n matrix given as nested tuples."""
    aug = [[Fraction(rows[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[col])]
    return tuple(tuple(aug[i][n + j] for j in range(n)) for i in range(n))


class LieElement:
    """A finite-dimensional algebra element, sparse over the basis."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: LieAlgebra, coeffs: dict[int, Coeff]):
        self.alg = alg
        self.coeffs = {k: v for k, v in coeffs.items() if v != 0}

    @classmethod
    def zero(cls, alg):
        return cls(alg, {})

    @classmethod
    def from_matrix(cls, alg, mat):
        return cls(alg, alg.coords(mat))

    def as_matrix(self):
        r = self.alg.rank
        rows = [[0] * r for _ in range(r)]
        for a, v in self.coeffs.items():
            m = self.alg.mats[a]
            for i in range(r):
                for j in range(r):
                    if m[i][j]:
                        rows[i][j] += v * m[i][j]
        return tuple(tuple(row) for row in rows)

    def __add__(self, other):
        _same_alg(self, other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return LieElement(self.alg, out)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, c):
        return LieElement(self.alg, {k: c * v for k, v in self.coeffs.items()})

    __mul__ = __rmul__

    def __eq__(self, other):
        return (isinstance(other, LieElement)
                and (self.alg.kind, self.alg.rank) == (other.alg.kind, other.alg.rank)
                and self.coeffs == other.coeffs)

    __hash__ = None

    def __bool__(self):
        return bool(self.coeffs)

    def bracket(self, other: "LieElement") -> "LieElement":
        _same_alg(self, other)
        out: dict[int, Coeff] = {}
        for a, va in self.coeffs.items():
            for b, vb in other.coeffs.items():
                for c, w in self.alg.bracket_basis(a, b):
                    out[c] = out.get(c, 0) + va * vb * w
        return LieElement(self.alg, out)

    def pair(self, other: "LieElement") -> Coeff:
        """Trace-form pairing <x, y> = Tr(xy)."""
        _same_alg(self, other)
        acc = 0
        for a, va in self.coeffs.items():
            row = self.alg.form[a]
            for b, vb in other.coeffs.items():
                acc += va * vb * row[b]
        return acc

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for a in sorted(self.coeffs):
            v = self.coeffs[a]
            name = self.alg.names[a]
            parts.append(name if v == 1 else "%s*%s" % (v, name))
        return " + ".join(parts)


def _same_alg(x, y):
    if x.alg is not y.alg:
        raise ValueError("elements belong to different algebras")


def bracket(x: LieElement, y: LieElement) -> LieElement:
    return x.bracket(y)


def dual_basis(alg: LieAlgebra) -> list[tuple[LieElement, LieElement]]:
    """Pairs (x_a, x^a) with <x_a, x^b> = delta_ab for the trace form."""
    if alg._dual is None:
        inv = alg._form_inv
        pairs = []
        for a in range(alg.dim):
            dual = LieElement(alg, {b: inv[b][a] for b in range(alg.dim)})
            pairs.append((alg.basis_element(a), dual))
        for a, (xa, xd) in enumerate(pairs):
            for b in range(alg.dim):
                expect = 1 if a == b else 0
                if xd.pair(alg.basis_element(b)) != expect:
                    raise AssertionError("dual basis fails the pairing identity")
        alg._dual = pairs
    return alg._dual


@dataclass(frozen=True)
class PrincipalTriple:
    """A principal sl2-triple (e, h, f) of sl_r with slice data.

    ``zf_basis`` spans the centralizer of f (the powers f, f^2, ...,
    f^(r-1)); ``v_basis`` extends it to a basis of sl_r by ad_h
    eigenvectors picked greedily from the standard basis, so the
    complement is ad_h-stable.  ``decomp`` lists, per basis label, the
    centralizer component (as an element re-expanded over the standard
    basis) and the pairing <v-component, f> used by the slice
    projection.
    """

    alg: LieAlgebra
    e: LieElement
    h: LieElement
    f: LieElement
    zf_basis: tuple[LieElement, ...]
    v_basis: tuple[LieElement, ...]
    decomp: tuple[tuple[LieElement, Coeff], ...]


def principal_triple(alg: LieAlgebra) -> PrincipalTriple:
    """Principal triple for sl_r: e = sum E[i,i+1], f = sum i(r-i) E[i+1,i]."""
    if alg.kind != "sl":
        raise ValueError("principal triple requires kind 'sl'")
    if alg._triple is not None:
        return alg._triple
    r = alg.rank
    e = LieElement(alg, {alg.index("E[%d,%d]" % (i, i + 1)): 1 for i in range(1, r)})
    f = LieElement(alg, {alg.index("E[%d,%d]" % (i + 1, i)): i * (r - i) for i in range(1, r)})
    h = e.bracket(f)
    if h.bracket(e) != 2 * e or h.bracket(f) != (-2) * f:
        raise AssertionError("triple relations fail")
    fm = f.as_matrix()
    power = fm
    zf = []
    for _ in range(1, r):
        zf.append(LieElement.from_matrix(alg, power))
        power = _mat_mul(power, fm, r)
    if any(power[i][j] for i in range(r) for j in range(r)):
        raise AssertionError("f is not nilpotent of order r")
    for z in zf:
        if f.bracket(z):
            raise AssertionError("zf_basis must centralize f")
    # Greedy rank extension over the standard basis keeps V ad_h-stable,
    # because every standard basis vector is an ad_h eigenvector.
    columns = [_coeff_vector(z, alg.dim) for z in zf]
    v_basis = []
    for a in range(alg.dim):
        cand = _coeff_vector(alg.basis_element(a), alg.dim)
        if _extends_rank(columns, cand):
            columns.append(cand)
            v_basis.append(alg.basis_element(a))
    if len(columns) != alg.dim:
        raise AssertionError("slice decomposition is not a direct sum")
    for v in v_basis:
        hv = h.bracket(v)
        if hv and not _is_multiple(hv, v):
            raise AssertionError("complement is not ad_h-stable")
    # Decompose each basis vector as (centralizer part) + (complement part).
    basis_order = list(zf) + v_basis
    mat = tuple(
        tuple(_coeff_vector(basis_order[j], alg.dim)[i] for j in range(alg.dim))
        for i in range(alg.dim)
    )
    inv = _invert(mat, alg.dim)
    decomp = []
    for a in range(alg.dim):
        coords = [inv[i][a] for i in range(alg.dim)]
        zpart = LieElement.zero(alg)
        for i, z in enumerate(zf):
            if coords[i]:
                zpart = zpart + coords[i] * z
        vpart = alg.basis_element(a) - zpart
        decomp.append((zpart, vpart.pair(f)))
    triple = PrincipalTriple(alg, e, h, f, tuple(zf), tuple(v_basis), tuple(decomp))
    alg._triple = triple
    return triple


def _coeff_vector(x: LieElement, dim):
    return [x.coeffs.get(a, 0) for a in range(dim)]


def _extends_rank(columns, cand):
    """Exact incremental rank test: does cand leave the span of columns?"""
    work = [list(map(Fraction, c)) for c in columns] + [list(map(Fraction, cand))]
    n = len(work)
    dim = len(cand)
    row = 0
    for col in range(dim):
        piv = next((i for i in range(row, n) if work[i][col]), None)
        if piv is None:
            continue
        work[row], work[piv] = work[piv], work[row]
        for i in range(row + 1, n):
            if work[i][col]:
                fac = work[i][col] / work[row][col]
                work[i] = [v - fac * w for v, w in zip(work[i], work[row])]
        row += 1
    return row == n


def _is_multiple(x: LieElement, y: LieElement) -> bool:
    if set(x.coeffs) != set(y.coeffs):
        return False
    ratios = {Fraction(x.coeffs[a]) / Fraction(y.coeffs[a]) for a in x.coeffs}
    return len(ratios) == 1
