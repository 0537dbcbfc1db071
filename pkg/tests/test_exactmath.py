"""Exact linear algebra: frozen examples plus randomized property checks.

The HNF oracle below is an independent implementation (pairwise extended
euclid, no transform tracking) used to cross-check the canonical form.
"""

import random
from fractions import Fraction
from math import gcd

from tropint.exactmath import (
    clear_denominators,
    det_int,
    hnf,
    hnf_basis,
    integer_kernel,
    lattice_index,
    member_of_span,
    primitive_vector,
    rank_int,
    saturate,
    solve_integer,
    solve_rational,
    vec_dot,
)

import pytest


def _xgcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def oracle_hnf(rows):
    """Row HNF via pairwise extended euclid; returns the nonzero rows."""
    mat = [list(r) for r in rows]
    if not mat:
        return ()
    n = len(mat[0])
    piv = 0
    for col in range(n):
        for i in range(piv + 1, len(mat)):
            if mat[i][col] == 0:
                continue
            if mat[piv][col] == 0:
                mat[piv], mat[i] = mat[i], mat[piv]
                continue
            g, s, t = _xgcd(mat[piv][col], mat[i][col])
            p, q = mat[piv][col] // g, mat[i][col] // g
            new_piv = [s * a + t * b for a, b in zip(mat[piv], mat[i])]
            new_i = [-q * a + p * b for a, b in zip(mat[piv], mat[i])]
            mat[piv], mat[i] = new_piv, new_i
        if mat[piv][col] == 0:
            continue
        if mat[piv][col] < 0:
            mat[piv] = [-a for a in mat[piv]]
        for i in range(piv):
            q = mat[i][col] // mat[piv][col]
            mat[i] = [a - q * b for a, b in zip(mat[i], mat[piv])]
        piv += 1
        if piv == len(mat):
            break
    return tuple(tuple(r) for r in mat[:piv])


def frac_det(rows):
    mat = [[Fraction(x) for x in r] for r in rows]
    n = len(mat)
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if mat[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        det *= mat[col][col]
        for i in range(col + 1, n):
            c = mat[i][col] / mat[col][col]
            mat[i] = [a - c * b for a, b in zip(mat[i], mat[col])]
    return det


def random_matrix(rng, m, n, lo=-9, hi=9):
    return tuple(tuple(rng.randint(lo, hi) for _ in range(n)) for _ in range(m))


def test_primitive_vector():
    assert primitive_vector((4, -6, 2)) == (2, -3, 1)
    assert primitive_vector((0, 0, -5)) == (0, 0, -1)
    with pytest.raises(ValueError):
        primitive_vector((0, 0, 0))


def test_clear_denominators():
    w, d = clear_denominators((Fraction(1, 2), Fraction(-2, 3), 1))
    assert (w, d) == ((3, -4, 6), 6)
    w, d = clear_denominators((2, 0, -3))
    assert (w, d) == ((2, 0, -3), 1)


def test_hnf_frozen():
    h, u = hnf(((2, 4, 4), (-6, 6, 12), (10, 4, 16)))
    # diagonal product 2*2*156 = |det M| = 624, entries above pivots reduced
    assert h == ((2, 0, 120), (0, 2, 20), (0, 0, 156))
    m = ((2, 4, 4), (-6, 6, 12), (10, 4, 16))
    for i in range(3):
        for j in range(3):
            assert sum(u[i][k] * m[k][j] for k in range(3)) == h[i][j]
    assert abs(frac_det(u)) == 1


def test_hnf_matches_oracle_and_transform():
    rng = random.Random(20240801)
    for _ in range(120):
        m = rng.randint(1, 5)
        n = rng.randint(1, 5)
        mat = random_matrix(rng, m, n)
        h, u = hnf(mat)
        nonzero = tuple(r for r in h if any(r))
        assert nonzero == oracle_hnf(mat)
        assert all(not any(r) for r in h[len(nonzero):])
        for i in range(m):
            for j in range(n):
                assert sum(u[i][k] * mat[k][j] for k in range(m)) == h[i][j]
        assert abs(frac_det(u)) == 1


def test_rank_and_det():
    assert rank_int(((1, 2), (2, 4))) == 1
    assert rank_int(()) == 0
    assert det_int(((3, 1), (1, 2))) == 5
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(1, 5)
        mat = random_matrix(rng, n, n)
        assert det_int(mat) == frac_det(mat)


def test_integer_kernel_properties():
    rng = random.Random(99)
    for _ in range(100):
        m = rng.randint(1, 4)
        n = rng.randint(1, 5)
        mat = random_matrix(rng, m, n, -6, 6)
        ker = integer_kernel(mat, n)
        assert len(ker) == n - rank_int(mat)
        for v in ker:
            assert all(vec_dot(row, v) == 0 for row in mat)
        if ker:
            assert rank_int(ker) == len(ker)
            # saturation: primitive combinations stay inside
            combo = ker[0]
            assert vec_dot(combo, combo) > 0
    assert integer_kernel((), 3) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    # saturated: kernel of (1, 1) contains (1, -1), not just (2, -2)
    assert integer_kernel(((2, 2),), 2) == ((1, -1),)


def test_saturate():
    assert saturate(((2, 0, 0), (0, 3, 3)), 3) == ((1, 0, 0), (0, 1, 1))
    assert saturate(((2, 4),), 2) == ((1, 2),)
    assert saturate((), 3) == ()
    full = saturate(((1, 0), (1, 1)), 2)
    assert full == ((1, 0), (0, 1))


def test_solve_rational():
    x, ker = solve_rational(((1, 2), (3, 4)), (5, 6))
    assert x == (Fraction(-4), Fraction(9, 2))
    assert ker == ()
    assert solve_rational(((1, 1), (2, 2)), (1, 3)) is None
    x, ker = solve_rational(((1, 1, 1),), (3,))
    assert sum(x) == 3 and len(ker) == 2
    for v in ker:
        assert sum(v) == 0


def test_solve_integer():
    assert solve_integer(((2,),), (3,)) is None
    x = solve_integer(((2, 3),), (1,))
    assert 2 * x[0] + 3 * x[1] == 1
    assert solve_integer(((1, 1), (2, 2)), (1, 3)) is None
    rng = random.Random(13)
    for _ in range(100):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        mat = random_matrix(rng, m, n, -5, 5)
        xs = tuple(rng.randint(-4, 4) for _ in range(n))
        rhs = tuple(vec_dot(row, xs) for row in mat)
        got = solve_integer(mat, rhs)
        assert got is not None
        assert all(vec_dot(row, got) == rhs[i] for i, row in enumerate(mat))


def test_member_of_span():
    assert member_of_span(((1, 0, 1), (0, 1, 1)), (2, 3, 5))
    assert not member_of_span(((1, 0, 1), (0, 1, 1)), (0, 0, 1))
    assert member_of_span((), (0, 0))
    assert not member_of_span((), (1, 0))


def test_lattice_index():
    assert lattice_index(((2, 0), (0, 1)), ((1, 0), (0, 1))) == 2
    assert lattice_index(((1, 1), (1, -1)), ((1, 0), (0, 1))) == 2
    assert lattice_index(((3, 3),), ((1, 1),)) == 3
    assert lattice_index((), ()) == 1
    with pytest.raises(ValueError):
        lattice_index(((1, 0),), ((0, 1),))
    with pytest.raises(ValueError):
        lattice_index(((1, 0), (0, 1)), ((2, 0), (0, 1)))


def test_hnf_basis_canonical_for_equal_lattices():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(1, 4)
        mat = random_matrix(rng, n, n, -4, 4)
        basis = hnf_basis(mat)
        # random unimodular rescramble: elementary row ops preserve the lattice
        scr = [list(r) for r in mat]
        for _ in range(8):
            i, j = rng.randrange(n), rng.randrange(n)
            if i != j:
                c = rng.randint(-3, 3)
                scr[i] = [a + c * b for a, b in zip(scr[i], scr[j])]
        assert hnf_basis(scr) == basis
