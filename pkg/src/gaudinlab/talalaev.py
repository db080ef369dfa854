"""Commuting families in U(gl_r ⊗ t⁻¹C[t⁻¹]) from a determinant-type
generating operator.

The generating object is D = Tr A_r (L(z)⁽¹⁾ − ∂_z)···(L(z)⁽ʳ⁾ − ∂_z),
a differential operator in z whose coefficients live in the enveloping
algebra.  L(z) is the r×r matrix whose (j,i) entry is Σ_n z^{n−1}
e_ij[−n], L⁽ⁱ⁾ is its copy acting on the i-th factor of (C^r)^⊗r, and
A_r is the antisymmetrizer.  After dividing by (−1)^r the operator is
monic, D = ∂_z^r + Σ_{n,k} Q_{n,k} z^{n−1} ∂_z^{r−k}, and the Q_{n,k}
pairwise commute.

z is handled as a cut power series: products drop z-powers above a
declared bound and record that they did.  The bound needed to read the
coefficients of z^{n−1} for n ≤ M exactly is M + r, because moving one
∂_z past the z-coefficients consumes one unit of ∂-power per unit drop
of z-power, and there are only r of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import comb, perm

from gaudinlab.liealg import LieAlgebra
from gaudinlab.pbw import Coeff, PBWPoly


class DiffPoly:
    """Polynomial in z and ∂_z with PBWPoly coefficients.

    Terms are stored normally ordered, coefficient · z^n · ∂_z^p, keyed
    by (p, n).  zmax bounds the z-powers kept; `truncated` records that
    a product ever dropped a term over the bound.
    """

    __slots__ = ("alg", "terms", "zmax", "truncated")

    def __init__(self, alg: LieAlgebra, terms: dict[tuple[int, int], PBWPoly],
                 zmax: int | None = None, truncated: bool = False):
        self.alg = alg
        self.terms = {k: v for k, v in terms.items() if v}
        self.zmax = zmax
        self.truncated = truncated

    @classmethod
    def zero(cls, alg, zmax=None):
        return cls(alg, {}, zmax)

    @classmethod
    def const(cls, alg, c: Coeff, zmax=None):
        return cls(alg, {(0, 0): PBWPoly.const(alg, c)}, zmax)

    @classmethod
    def from_pbw(cls, u: PBWPoly, zmax=None, dpow: int = 0, zpow: int = 0):
        return cls(u.alg, {(dpow, zpow): u}, zmax)

    def coeff(self, dpow: int, zpow: int) -> PBWPoly:
        return self.terms.get((dpow, zpow), PBWPoly.zero(self.alg))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, DiffPoly) and self.alg is other.alg
                and self.terms == other.terms)

    __hash__ = None

    def _merge_zmax(self, other):
        if self.zmax is None:
            return other.zmax
        if other.zmax is None:
            return self.zmax
        if self.zmax != other.zmax:
            raise ValueError("mixed z cutoffs")
        return self.zmax

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return DiffPoly(self.alg, out, self._merge_zmax(other),
                        self.truncated or other.truncated)

    def __neg__(self):
        return DiffPoly(self.alg, {k: -v for k, v in self.terms.items()},
                        self.zmax, self.truncated)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return DiffPoly.zero(self.alg, self.zmax)
            return DiffPoly(self.alg, {k: v * other for k, v in self.terms.items()},
                            self.zmax, self.truncated)
        zmax = self._merge_zmax(other)
        truncated = self.truncated or other.truncated
        out: dict[tuple[int, int], PBWPoly] = {}
        for (p, n), u in self.terms.items():
            for (q, m), v in other.terms.items():
                uv = u * v
                if not uv:
                    continue
                # ∂^p z^m = Σ_j C(p,j) m!/(m-j)! z^(m-j) ∂^(p-j)
                for j in range(min(p, m) + 1):
                    zp = n + m - j
                    if zmax is not None and zp > zmax:
                        truncated = True
                        continue
                    key = (p + q - j, zp)
                    t = uv * (comb(p, j) * perm(m, j))
                    s = out.get(key)
                    s = t if s is None else s + t
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
        return DiffPoly(self.alg, out, zmax, truncated)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def text(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (p, n) in sorted(self.terms):
            head = "".join(["z^%d " % n if n else "", "d^%d " % p if p else ""])
            bits.append("%s(%s)" % (head, self.terms[(p, n)].text()))
        return " + ".join(bits)

    def __repr__(self):
        return "DiffPoly(%s)" % self.text()


class MatrixOperator:
    """Square matrix over DiffPoly acting on (C^r)^⊗factors.

    Rows and columns are index tuples of length `factors` with entries
    in 0..rank-1; only nonzero entries are stored.
    """

    __slots__ = ("alg", "rank", "factors", "entries", "zmax")

    def __init__(self, alg: LieAlgebra, rank: int, factors: int,
                 entries: dict[tuple[tuple[int, ...], tuple[int, ...]], DiffPoly],
                 zmax: int | None = None):
        self.alg = alg
        self.rank = rank
        self.factors = factors
        self.entries = {k: v for k, v in entries.items() if v}
        self.zmax = zmax

    @property
    def size(self) -> int:
        return self.rank ** self.factors

    def entry(self, row: tuple[int, ...], col: tuple[int, ...]) -> DiffPoly:
        return self.entries.get((row, col), DiffPoly.zero(self.alg, self.zmax))

    def __eq__(self, other):
        return (isinstance(other, MatrixOperator) and self.rank == other.rank
                and self.factors == other.factors and self.entries == other.entries)

    __hash__ = None

    def trace(self) -> DiffPoly:
        acc = DiffPoly.zero(self.alg, self.zmax)
        for (row, col), v in self.entries.items():
            if row == col:
                acc = acc + v
        return acc

    def truncated(self) -> bool:
        return any(v.truncated for v in self.entries.values())


def op_multiply(amat: MatrixOperator, bmat: MatrixOperator) -> MatrixOperator:
    if amat.factors != bmat.factors or amat.rank != bmat.rank:
        raise ValueError("operator shapes do not match")
    by_row: dict[tuple[int, ...], list] = {}
    for (row, col), v in bmat.entries.items():
        by_row.setdefault(row, []).append((col, v))
    out: dict[tuple, DiffPoly] = {}
    for (row, mid), a in amat.entries.items():
        for col, b in by_row.get(mid, ()):
            p = a * b
            if not p:
                continue
            key = (row, col)
            s = out.get(key)
            s = p if s is None else s + p
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    zmax = amat.zmax if amat.zmax is not None else bmat.zmax
    return MatrixOperator(amat.alg, amat.rank, amat.factors, out, zmax)


def build_L(alg: LieAlgebra, cutoff: int) -> MatrixOperator:
    """The generating matrix: entry (j,i) carries Σ_{n≤cutoff} z^{n−1} e_ij[−n]."""
    if alg.kind != "gl":
        raise ValueError("the determinant construction needs a gl algebra")
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    r = alg.rank
    zmax = cutoff - 1
    entries = {}
    for jrow in range(1, r + 1):
        for icol in range(1, r + 1):
            label = alg.index("E[%d,%d]" % (icol, jrow))
            terms = {(0, n - 1): PBWPoly.gen(alg, label, n) for n in range(1, cutoff + 1)}
            entries[((jrow - 1,), (icol - 1,))] = DiffPoly(alg, terms, zmax)
    return MatrixOperator(alg, r, 1, entries, zmax)


def _perm_sign(t: tuple[int, ...]) -> int:
    s = 1
    for i in range(len(t)):
        for j in range(i + 1, len(t)):
            if t[i] > t[j]:
                s = -s
    return s


def antisymmetrizer(r: int, alg: LieAlgebra, zmax: int | None = None) -> MatrixOperator:
    """Projector onto Λ^r C^r inside (C^r)^⊗r, as an r^r × r^r matrix.

    Entries are sgn(row)·sgn(col)/r! on pairs of repetition-free index
    tuples and zero elsewhere; idempotent with trace 1.
    """
    fact = 1
    for i in range(2, r + 1):
        fact *= i
    entries = {}
    perms = [tuple(p) for p in permutations(range(r))]
    for row in perms:
        srow = _perm_sign(row)
        for col in perms:
            c = Fraction(srow * _perm_sign(col), fact)
            entries[(row, col)] = DiffPoly.const(alg, c, zmax)
    return MatrixOperator(alg, r, r, entries, zmax)


def lift_factor(op: MatrixOperator, slot: int, factors: int) -> MatrixOperator:
    """Place a 1-factor operator at tensor slot `slot` (1-based) of `factors`."""
    if op.factors != 1:
        raise ValueError("can only lift 1-factor operators")
    if not 1 <= slot <= factors:
        raise ValueError("slot out of range")
    r = op.rank
    entries = {}
    rest = [()]
    for _ in range(factors - 1):
        rest = [t + (i,) for t in rest for i in range(r)]
    for ((a,), (b,)), v in op.entries.items():
        for ctx in rest:
            row = ctx[:slot - 1] + (a,) + ctx[slot - 1:]
            col = ctx[:slot - 1] + (b,) + ctx[slot - 1:]
            entries[(row, col)] = v
    return MatrixOperator(op.alg, r, factors, entries, op.zmax)


@dataclass
class QFamily:
    """The extracted coefficients Q_{n,k}, keyed by (n, k)."""

    rank: int
    z_order: int
    q: dict[tuple[int, int], PBWPoly]

    def items(self):
        return sorted(self.q.items())

    def to_json(self, commute_report=None):
        return {
            "rank": self.rank,
            "z_order": self.z_order,
            "Q": {"%d,%d" % nk: p.to_json() for nk, p in self.items()},
            "commute_report": commute_report if commute_report is not None else [],
        }


def compute_Q(alg: LieAlgebra, z_order: int, cutoff: int | None = None) -> QFamily:
    """Run the construction and read off Q_{n,k} for n ≤ z_order, k ≤ r.

    The operator is normalized by (−1)^r, checked to be monic in ∂_z,
    and Q_{n,k} is the coefficient of z^{n−1} ∂_z^{r−k}.  Each nonzero
    Q_{n,k} is checked to be weight-homogeneous of weight n+k−1 with at
    most k enveloping factors.
    """
    if alg.kind != "gl":
        raise ValueError("the determinant construction needs a gl algebra")
    if z_order < 1:
        raise ValueError("z_order must be at least 1")
    r = alg.rank
    if cutoff is None:
        cutoff = z_order + r
    if cutoff < z_order:
        raise ValueError("cutoff below requested z order")
    lmat = build_L(alg, cutoff)
    zmax = lmat.zmax
    ddiag = DiffPoly(alg, {(1, 0): PBWPoly.const(alg, -1)}, zmax)
    acc = antisymmetrizer(r, alg, zmax)
    diag = [()]
    for _ in range(r):
        diag = [t + (i,) for t in diag for i in range(r)]
    for i in range(1, r + 1):
        factor = lift_factor(lmat, i, r)
        entries = dict(factor.entries)
        for idx in diag:
            key = (idx, idx)
            entries[key] = entries.get(key, DiffPoly.zero(alg, zmax)) + ddiag
        factor = MatrixOperator(alg, r, r, entries, zmax)
        acc = op_multiply(acc, factor)
    dop = acc.trace() * ((-1) ** r)
    for (p, n), u in dop.terms.items():
        if p == r:
            if not (n == 0 and u == PBWPoly.const(alg, 1)):
                raise AssertionError("operator is not monic in the derivative")
        if p > r:
            raise AssertionError("derivative order exceeds the rank")
    q: dict[tuple[int, int], PBWPoly] = {}
    for n in range(1, z_order + 1):
        for k in range(1, r + 1):
            u = dop.coeff(r - k, n - 1)
            if u:
                if u.is_weight_homogeneous() != n + k - 1:
                    raise AssertionError("Q_{%d,%d} has mixed weight" % (n, k))
                if u.degree() > k:
                    raise AssertionError("Q_{%d,%d} exceeds degree %d" % (n, k, k))
            q[(n, k)] = u
    return QFamily(rank=r, z_order=z_order, q=q)


def check_pairwise_commute(fam: QFamily) -> list[dict]:
    """Exact commutators of every unordered pair of family members.

    Each report row carries the pair, a zero verdict, and the number of
    monomial products expanded.  The family passes iff every verdict is
    zero.
    """
    keys = sorted(fam.q)
    report = []
    for a in range(len(keys)):
        for b in range(a, len(keys)):
            u = fam.q[keys[a]]
            v = fam.q[keys[b]]
            c = u.commutator(v)
            report.append({
                "pair": [list(keys[a]), list(keys[b])],
                "zero": not c,
                "monomials": 2 * len(u.terms) * len(v.terms),
            })
    return report


def all_commute(report: list[dict]) -> bool:
    return all(row["zero"] for row in report)
