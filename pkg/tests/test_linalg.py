import random
from fractions import Fraction

from gaudinlab.linalg import (Matrix, SparseRationalMatrix, poly_derivative,
                              poly_divmod, poly_eval, poly_gcd,
                              poly_residual_after, rational_roots,
                              squarefree_part)

F = Fraction


def _poly_mul(a, b):
    out = [F(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def test_rank_and_kernel_small():
    m = SparseRationalMatrix(3, 4, {
        (0, 0): F(1), (0, 1): F(2), (0, 3): F(1),
        (1, 0): F(2), (1, 1): F(4), (1, 3): F(2),
        (2, 2): F(5),
    })
    assert m.rank() == 2
    ker = m.kernel()
    assert len(ker) == 2
    for v in ker:
        for i in range(3):
            s = sum(m.entries.get((i, j), F(0)) * c for j, c in v.items())
            assert s == 0


def test_rank_nullity_random():
    rng = random.Random(301)
    for _ in range(20):
        nr, nc = rng.randint(1, 6), rng.randint(1, 6)
        entries = {}
        for i in range(nr):
            for j in range(nc):
                if rng.random() < 0.4:
                    entries[(i, j)] = F(rng.randint(-3, 3))
        m = SparseRationalMatrix(nr, nc, entries)
        ker = m.kernel()
        assert m.rank() + len(ker) == nc
        for v in ker:
            for i in range(nr):
                assert sum(entries.get((i, j), F(0)) * c
                           for j, c in v.items()) == 0


def test_in_span_of_columns():
    cols = [{0: F(1), 1: F(1)}, {1: F(1), 2: F(1)}]
    m = SparseRationalMatrix.from_columns(cols, 3)
    assert m.in_span_of_columns({0: F(2), 1: F(3), 2: F(1)})
    assert not m.in_span_of_columns({0: F(1)})


def test_charpoly_and_cayley_hamilton():
    m = Matrix([[F(0), F(1)], [F(-2), F(3)]])
    assert m.charpoly() == [F(1), F(-3), F(2)]
    rng = random.Random(302)
    for _ in range(5):
        a = Matrix([[F(rng.randint(-2, 2)) for _ in range(3)] for _ in range(3)])
        assert a.eval_poly(a.charpoly()).is_zero()


def test_matrix_algebra():
    a = Matrix([[F(1), F(2)], [F(0), F(1)]])
    b = Matrix([[F(1), F(0)], [F(3), F(1)]])
    assert (a * b - b * a).trace() == 0
    assert not a.commutes_with(b)
    assert a.commutes_with(a * a)
    assert (a - a).is_zero()
    assert Matrix.identity(2).kernel_dim() == 0
    assert Matrix.zero(2).kernel_dim() == 2


def test_poly_divmod_and_gcd():
    x3m1 = [F(1), F(0), F(0), F(-1)]
    q, r = poly_divmod(x3m1, [F(1), F(-1)])
    assert q == [F(1), F(1), F(1)]
    assert r == [F(0)]
    a = _poly_mul(_poly_mul([F(1), F(-1)], [F(1), F(-1)]), [F(1), F(2)])
    b = _poly_mul([F(1), F(-1)], [F(1), F(3)])
    g = poly_gcd(a, b)
    # gcd is only defined up to a scalar
    assert len(g) == 2 and g[1] / g[0] == F(-1)


def test_squarefree_part():
    p = _poly_mul(_poly_mul([F(1), F(-1)], [F(1), F(-1)]), [F(1), F(-1)])
    p = _poly_mul(p, _poly_mul([F(1), F(2)], [F(1), F(2)]))
    sf = squarefree_part(p)
    assert sf == _poly_mul([F(1), F(-1)], [F(1), F(2)])


def test_derivative_and_eval():
    p = [F(2), F(0), F(-1)]  # 2x^2 - 1
    assert poly_derivative(p) == [F(4), F(0)]
    assert poly_eval(p, F(3)) == 17


def test_rational_roots_with_multiplicity():
    half = [F(1), F(-1, 2)]
    p = _poly_mul(_poly_mul(_poly_mul(half, half), half), [F(1), F(2)])
    roots = rational_roots(p)
    assert dict(roots) == {F(1, 2): 3, F(-2): 1}
    assert poly_residual_after(p, roots) == [F(1)]


def test_rational_roots_leaves_irrational_residual():
    p = _poly_mul([F(1), F(0), F(-2)], [F(1), F(-3)])  # (x^2-2)(x-3)
    roots = rational_roots(p)
    assert dict(roots) == {F(3): 1}
    assert poly_residual_after(p, roots) == [F(1), F(0), F(-2)]
