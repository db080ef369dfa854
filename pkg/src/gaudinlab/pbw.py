"""Normal-ordered arithmetic in the enveloping algebra of a negative
loop algebra.

A basis word is a nondecreasing tuple of gids (same packing as the
commutative side, depth-major then label).  Multiplication rewrites
y * x with y > x as x * y + [y, x]; since a bracket of generators is a
linear combination of single generators, every rewriting step either
keeps the degree and removes an inversion or strictly drops the degree,
so the process terminates.  The worker below multiplies a normal word
by one generator at a time and is memoized per algebra, which is what
makes the large commutator sweeps affordable.

Degree is a filtration here, not a grading: products have lower-order
corrections.  Weight (total depth) is a true grading.  gr_top extracts
the top-degree part as a commutative polynomial; symmetrize is the
inverse convention used to lift, averaging all orderings of a word.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from gaudinlab.liealg import Coeff, LieAlgebra, LieElement
from gaudinlab.loopsym import (
    GID_SHIFT,
    SymPoly,
    bracket_gids,
    gid_depth,
    gid_label,
    _format_terms,
    _terms_to_json,
)


def _mono_times_gen(alg: LieAlgebra, mono: tuple[int, ...], g: int) -> dict:
    """Right-multiply a normal word by one generator, returning a normal form.

    For mono = rest * x with x > g the product is (rest * g) * x plus
    rest * [x, g]; both recursions shrink the (degree, inversions)
    measure.
    """
    cache = alg.caches.setdefault("mtg", {})
    key = (mono, g)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if not mono or mono[-1] <= g:
        res = {mono + (g,): 1}
    else:
        rest, x = mono[:-1], mono[-1]
        acc: dict[tuple[int, ...], Coeff] = {}
        for m2, c2 in _mono_times_gen(alg, rest, g).items():
            for m3, c3 in _mono_times_gen(alg, m2, x).items():
                acc[m3] = acc.get(m3, 0) + c2 * c3
        for g2, w in bracket_gids(alg, x, g):
            for m4, c4 in _mono_times_gen(alg, rest, g2).items():
                acc[m4] = acc.get(m4, 0) + w * c4
        res = {m: c for m, c in acc.items() if c != 0}
    cache[key] = res
    return res


def _mono_mul(alg: LieAlgebra, m1: tuple[int, ...], m2: tuple[int, ...]) -> dict:
    cache = alg.caches.setdefault("mm", {})
    key = (m1, m2)
    hit = cache.get(key)
    if hit is not None:
        return hit
    cur = {m1: 1}
    for g in m2:
        nxt: dict[tuple[int, ...], Coeff] = {}
        for m, c in cur.items():
            for mm, cc in _mono_times_gen(alg, m, g).items():
                nxt[mm] = nxt.get(mm, 0) + c * cc
        cur = {m: c for m, c in nxt.items() if c != 0}
    cache[key] = cur
    return cur


def normal_form(alg: LieAlgebra, word) -> "PBWPoly":
    """Normal-order an arbitrary word of gids."""
    return PBWPoly(alg, _mono_mul(alg, (), tuple(word)))


class PBWPoly:
    """Sparse element of the enveloping algebra in PBW normal form."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: LieAlgebra, terms: dict[tuple[int, ...], Coeff]):
        self.alg = alg
        self.terms = {m: c for m, c in terms.items() if c != 0}

    @classmethod
    def zero(cls, alg):
        return cls(alg, {})

    @classmethod
    def const(cls, alg, c):
        return cls(alg, {(): c})

    @classmethod
    def gen(cls, alg, label: int, depth: int):
        from gaudinlab.loopsym import pack
        return cls(alg, {(pack(depth, label),): 1})

    @classmethod
    def from_lie(cls, x: LieElement, depth: int):
        from gaudinlab.loopsym import pack
        return cls(x.alg, {(pack(depth, a),): v for a, v in x.coeffs.items()})

    @classmethod
    def from_sym_monomials(cls, p: SymPoly):
        """Reinterpret commutative monomials as normal words (no averaging)."""
        return cls(p.alg, dict(p.terms))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, PBWPoly) and self.alg is other.alg
                and self.terms == other.terms)

    __hash__ = None

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PBWPoly.const(self.alg, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return PBWPoly(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return PBWPoly(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PBWPoly(self.alg, {m: c * other for m, c in self.terms.items()})
        alg = self.alg
        out: dict[tuple[int, ...], Coeff] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c = c1 * c2
                for m, w in _mono_mul(alg, m1, m2).items():
                    out[m] = out.get(m, 0) + c * w
        return PBWPoly(alg, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def commutator(self, other: "PBWPoly") -> "PBWPoly":
        return self * other - other * self

    def degree(self):
        return max((len(m) for m in self.terms), default=0)

    def weight_of(self, mono):
        return sum(gid_depth(g) for g in mono)

    def is_weight_homogeneous(self):
        ws = {self.weight_of(m) for m in self.terms}
        return ws.pop() if len(ws) == 1 else None

    def gr_top(self) -> SymPoly:
        """Top filtration part as a commutative polynomial."""
        d = self.degree()
        return SymPoly(self.alg, {m: c for m, c in self.terms.items() if len(m) == d})

    def dt(self) -> "PBWPoly":
        """x[-m] -> -m x[-(m+1)] extended as a derivation of the product."""
        alg = self.alg
        bump = 1 << GID_SHIFT
        out: dict[tuple[int, ...], Coeff] = {}
        for mono, c in self.terms.items():
            for i, g in enumerate(mono):
                word = mono[:i] + (g + bump,) + mono[i + 1:]
                w = -c * gid_depth(g)
                for m, cc in _mono_mul(alg, (), word).items():
                    out[m] = out.get(m, 0) + w * cc
        return PBWPoly(alg, out)

    def adjoint(self, x: LieElement) -> "PBWPoly":
        """Derivation y[-m] -> [x, y][-m] of the zero-depth adjoint action."""
        alg = self.alg
        out: dict[tuple[int, ...], Coeff] = {}
        for mono, c in self.terms.items():
            for i, g in enumerate(mono):
                depth_bits = (gid_depth(g)) << GID_SHIFT
                for a, va in x.coeffs.items():
                    for b, w in alg.bracket_basis(a, gid_label(g)):
                        word = mono[:i] + (depth_bits | b,) + mono[i + 1:]
                        cc = c * va * w
                        for m, u in _mono_mul(alg, (), word).items():
                            out[m] = out.get(m, 0) + cc * u
        return PBWPoly(alg, out)

    def text(self) -> str:
        return _format_terms(self.alg, self.terms)

    def to_json(self):
        return _terms_to_json(self.alg, self.terms)

    def __repr__(self):
        return self.text()


def normal_product(u: PBWPoly, v: PBWPoly) -> PBWPoly:
    return u * v


def commutator(u: PBWPoly, v: PBWPoly) -> PBWPoly:
    return u * v - v * u


def gr_top(u: PBWPoly) -> SymPoly:
    return u.gr_top()


def adjoint_action(x: LieElement, u: PBWPoly) -> PBWPoly:
    return u.adjoint(x)


def d_t_env(u: PBWPoly) -> PBWPoly:
    return u.dt()


def symmetrize(p: SymPoly) -> PBWPoly:
    """Symmetrization lift: average all orderings of each monomial.

    gr_top(symmetrize(p)) == p for homogeneous p; the lift lands in the
    same weight component.
    """
    alg = p.alg
    out: dict[tuple[int, ...], Coeff] = {}
    for mono, c in p.terms.items():
        d = len(mono)
        if d == 0:
            out[()] = out.get((), 0) + c
            continue
        # Each distinct ordering stands for rep = prod(multiplicity!)
        # identical-letter orderings out of the d! total.
        counts: dict[int, int] = {}
        for g in mono:
            counts[g] = counts.get(g, 0) + 1
        rep = 1
        for k in counts.values():
            rep *= factorial(k)
        scale = Fraction(rep, factorial(d)) * c
        for word in _multiset_permutations(mono):
            for m, w in _mono_mul(alg, (), word).items():
                out[m] = out.get(m, 0) + scale * w
    return PBWPoly(alg, out)


def _multiset_permutations(mono):
    """Distinct orderings of a sorted tuple."""
    words = []

    def rec(remaining, prefix):
        if not remaining:
            words.append(tuple(prefix))
            return
        last = None
        for i, g in enumerate(remaining):
            if g == last:
                continue
            last = g
            rec(remaining[:i] + remaining[i + 1:], prefix + [g])

    rec(list(mono), [])
    return words


def naive_normal_order(alg: LieAlgebra, word) -> tuple[PBWPoly, int]:
    """Uncached bubble rewriting used by the soundness tests.

    Returns the normal form and the number of rewrite steps taken.
    Each step replaces one adjacent inversion, spawning a word with one
    fewer inversion and words of strictly smaller degree; the measure
    (degree, inversions) drops lexicographically on every spawn, which
    is asserted here.
    """
    def inversions(w):
        return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])

    steps = 0
    out: dict[tuple[int, ...], Coeff] = {}
    stack = [(tuple(word), 1)]
    while stack:
        w, c = stack.pop()
        pos = next((i for i in range(len(w) - 1) if w[i] > w[i + 1]), None)
        if pos is None:
            out[w] = out.get(w, 0) + c
            continue
        steps += 1
        parent = (len(w), inversions(w))
        swapped = w[:pos] + (w[pos + 1], w[pos]) + w[pos + 2:]
        assert (len(swapped), inversions(swapped)) < parent
        stack.append((swapped, c))
        for g, v in bracket_gids(alg, w[pos], w[pos + 1]):
            spawned = w[:pos] + (g,) + w[pos + 2:]
            assert (len(spawned), inversions(spawned)) < parent
            stack.append((spawned, c * v))
    return PBWPoly(alg, out), steps
