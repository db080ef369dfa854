"""Specialization at distinct points and quadratic Gaudin Hamiltonians.

The homomorphism U(g⁻) → U(g)^⊗n sends x[−m] to Σ_i z_i^{−m} x⁽ⁱ⁾ for a
tuple of nonzero pairwise-distinct rational points z_i (so the z_i = 0
pole is excluded; the Hamiltonians only see differences z_i − z_k).
Tensor factors over distinct sites commute; within a site, words in the
finite-dimensional generators are kept in the same insertion normal
form as the loop enveloping algebra, at depth zero.

H_i = Σ_{k≠i} Σ_a x_a⁽ⁱ⁾ x^{a,(k)} / (z_i − z_k) over dual-basis pairs,
which is basis-independent.  Matrices act on (C^r)^⊗n through the
defining representation of each site.
"""

from __future__ import annotations

from fractions import Fraction

import numpy

from gaudinlab.liealg import Coeff, LieAlgebra, LieElement, dual_basis
from gaudinlab.linalg import (Matrix, poly_residual_after, rational_roots,
                              squarefree_part)
from gaudinlab.loopsym import gid_depth, gid_label
from gaudinlab.pbw import PBWPoly, _mono_mul


class SiteConfig:
    """Evaluation points: nonzero, pairwise distinct rationals."""

    __slots__ = ("points",)

    def __init__(self, points):
        pts = tuple(Fraction(z) for z in points)
        if not pts:
            raise ValueError("need at least one site")
        if any(z == 0 for z in pts):
            raise ValueError("points must be nonzero")
        if len(set(pts)) != len(pts):
            raise ValueError("points must be pairwise distinct")
        self.points = pts

    @property
    def n(self) -> int:
        return len(self.points)

    def __repr__(self):
        return "SiteConfig(%s)" % (self.points,)


class TensorPoly:
    """Element of U(g)^⊗n: site-tuples of normal words with rational
    coefficients."""

    __slots__ = ("alg", "n", "terms")

    def __init__(self, alg: LieAlgebra, n: int,
                 terms: dict[tuple[tuple[int, ...], ...], Coeff]):
        self.alg = alg
        self.n = n
        self.terms = {m: c for m, c in terms.items() if c != 0}

    @classmethod
    def zero(cls, alg, n):
        return cls(alg, n, {})

    @classmethod
    def const(cls, alg, n, c):
        return cls(alg, n, {((),) * n: c})

    @classmethod
    def site_element(cls, x: LieElement, site: int, n: int):
        """x⁽ˢⁱᵗᵉ⁾ for a Lie algebra element, site being 1-based."""
        if not 1 <= site <= n:
            raise ValueError("site out of range")
        blank = ((),) * n
        out = {}
        for a, v in x.coeffs.items():
            key = blank[:site - 1] + ((a,),) + blank[site:]
            out[key] = v
        return cls(x.alg, n, out)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, TensorPoly) and self.alg is other.alg
                and self.n == other.n and self.terms == other.terms)

    __hash__ = None

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TensorPoly.const(self.alg, self.n, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return TensorPoly(self.alg, self.n, out)

    def __neg__(self):
        return TensorPoly(self.alg, self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return TensorPoly.zero(self.alg, self.n)
            return TensorPoly(self.alg, self.n,
                              {m: c * other for m, c in self.terms.items()})
        alg = self.alg
        out: dict[tuple, Coeff] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                # sites are independent; within a site use the depth-0
                # normal ordering of the enveloping rewriter
                parts = [((), 1)]
                for s in range(self.n):
                    prod = _mono_mul(alg, m1[s], m2[s])
                    parts = [(acc + (w,), cc * cw)
                             for acc, cc in parts for w, cw in prod.items()]
                base = c1 * c2
                for key, cc in parts:
                    s = out.get(key, 0) + base * cc
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
        return TensorPoly(alg, self.n, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def commutator(self, other: "TensorPoly") -> "TensorPoly":
        return self * other - other * self

    def text(self) -> str:
        if not self.terms:
            return "0"
        names = self.alg.names
        bits = []
        for key in sorted(self.terms):
            c = self.terms[key]
            factors = []
            for s, word in enumerate(key):
                factors.extend("%s(%d)" % (names[g], s + 1) for g in word)
            body = "*".join(factors) if factors else "1"
            bits.append("%s * %s" % (c, body) if c != 1 else body)
        return " + ".join(bits)

    def __repr__(self):
        return "TensorPoly(%s)" % self.text()


def evaluate(u: PBWPoly, cfg: SiteConfig) -> TensorPoly:
    """Specialize a loop-algebra element at the points of cfg.

    Algebra homomorphism with x[−m] ↦ Σ_i z_i^{−m} x⁽ⁱ⁾; words map to
    ordered products.
    """
    alg = u.alg
    n = cfg.n
    images: dict[int, TensorPoly] = {}
    acc_total = TensorPoly.zero(alg, n)
    for mono, c in u.terms.items():
        acc = TensorPoly.const(alg, n, c)
        for g in mono:
            img = images.get(g)
            if img is None:
                m = gid_depth(g)
                lab = gid_label(g)
                terms = {}
                blank = ((),) * n
                for i, z in enumerate(cfg.points):
                    key = blank[:i] + ((lab,),) + blank[i + 1:]
                    terms[key] = Fraction(1) / z ** m
                img = TensorPoly(alg, n, terms)
                images[g] = img
            acc = acc * img
        acc_total = acc_total + acc
    return acc_total


def quadratic_hamiltonian(cfg: SiteConfig, i: int, alg: LieAlgebra) -> TensorPoly:
    """H_i = Σ_{k≠i} Σ_a x_a⁽ⁱ⁾ x^{a,(k)} / (z_i − z_k)."""
    n = cfg.n
    if n < 2:
        raise ValueError("need at least two sites")
    if not 1 <= i <= n:
        raise ValueError("site index out of range")
    pairs = dual_basis(alg)
    blank = ((),) * n
    out: dict[tuple, Coeff] = {}
    zi = cfg.points[i - 1]
    for k in range(1, n + 1):
        if k == i:
            continue
        w = Fraction(1) / (zi - cfg.points[k - 1])
        for xa, xdual in pairs:
            for la, ca in xa.coeffs.items():
                for lb, cb in xdual.coeffs.items():
                    key = list(blank)
                    key[i - 1] = (la,)
                    key[k - 1] = (lb,)
                    key = tuple(key)
                    s = out.get(key, 0) + w * ca * cb
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
    return TensorPoly(alg, n, out)


def global_element(x: LieElement, n: int) -> TensorPoly:
    """Δ(x) = Σ_i x⁽ⁱ⁾."""
    acc = TensorPoly.zero(x.alg, n)
    for i in range(1, n + 1):
        acc = acc + TensorPoly.site_element(x, i, n)
    return acc


def rep_matrix(t: TensorPoly, max_size: int = 4096) -> Matrix:
    """Act on (C^r)^⊗n with every site in the defining representation."""
    alg = t.alg
    r = alg.rank
    n = t.n
    size = r ** n
    if size > max_size:
        raise ValueError("representation size %d exceeds bound %d" % (size, max_size))
    rows = [[Fraction(0)] * size for _ in range(size)]
    for key, c in t.terms.items():
        site_mats = []
        for word in key:
            m = [[Fraction(1) if p == q else Fraction(0) for q in range(r)]
                 for p in range(r)]
            for g in word:
                gm = alg.mats[g]
                m = [[sum(m[p][u] * gm[u][q] for u in range(r)) for q in range(r)]
                     for p in range(r)]
            site_mats.append(m)
        for row in range(size):
            ridx = _digits(row, r, n)
            for col in range(size):
                cidx = _digits(col, r, n)
                v = c
                for s in range(n):
                    v *= site_mats[s][ridx[s]][cidx[s]]
                    if v == 0:
                        break
                if v:
                    rows[row][col] += v
    return Matrix(rows)


def _digits(x: int, base: int, width: int) -> tuple[int, ...]:
    out = []
    for _ in range(width):
        out.append(x % base)
        x //= base
    return tuple(reversed(out))


def spectrum(m: Matrix) -> dict:
    """Exact characteristic data of a rational matrix.

    Rational eigenvalues are found and verified exactly; whatever is
    left of the characteristic polynomial is reported with float
    approximations of its roots.  Diagonalizability is decided exactly:
    the squarefree part of the characteristic polynomial must
    annihilate the matrix.
    """
    cp = m.charpoly()
    rats = rational_roots(cp)
    residual = poly_residual_after(cp, rats)
    floats = []
    if len(residual) > 1:
        for z in numpy.roots([float(c) for c in residual]):
            zz = complex(z)
            floats.append(zz.real if abs(zz.imag) < 1e-9 else zz)
        floats.sort(key=lambda w: (w.real, w.imag))
    diag = m.eval_poly(squarefree_part(cp)).is_zero()
    return {
        "size": m.n,
        "charpoly": cp,
        "rational": rats,
        "residual": residual,
        "residual_roots_float": floats,
        "diagonalizable": diag,
    }


def joint_diagonalizable(mats: list[Matrix]) -> bool:
    """Exact verdict: pairwise commuting and each matrix annihilated by
    the squarefree part of its characteristic polynomial."""
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if not mats[i].commutes_with(mats[j]):
                return False
    for m in mats:
        if not m.eval_poly(squarefree_part(m.charpoly())).is_zero():
            return False
    return True
