import pytest

from tropint.exactmath import det_int
from tropint.linspace import (
    build_fnk,
    build_lnk,
    combination_name,
    diagonal_divisors_rn,
    fnk_cycle,
    parse_symbol,
    relations_check,
    rewrite_diagonal,
    rn_cycle,
    star_diagonal,
    symbol_name,
    symbol_ray,
    DiagonalRepresentation,
)
from tropint.polyhedra import (
    TropicalGeometryError,
    VerificationError,
    cone_from_generators,
    cross,
    cycles_equal,
    diagonal_cycle,
    is_balanced,
    make_cell,
)


def test_symbol_table():
    assert symbol_ray(2, ("T", 1)) == (-1, 0, 0, 0)
    assert symbol_ray(2, ("T", 0)) == (1, 1, 0, 0)
    assert symbol_ray(2, ("B", 0)) == (0, 0, 1, 1)
    assert symbol_ray(2, ("B", 2)) == (0, 0, 0, -1)
    assert symbol_ray(2, ("D", 0)) == (1, 1, 1, 1)
    assert symbol_ray(3, ("D", 2)) == (0, -1, 0, 0, -1, 0)
    for name in ["A", "B", "D", "T1", "B2", "D3"]:
        assert symbol_name(parse_symbol(name)) == name
    assert combination_name({("T", 1): 1, ("B", 0): 1, ("T", 0): -2}) == "T1+B-2A"
    assert combination_name({}) == "0"


def test_lnk_shape():
    l32 = build_lnk(3, 2)
    assert l32.dim == 2 and l32.ambient_dim == 3
    assert len(l32.cells) == 6
    closure = l32.complex().all_cells()
    assert len(closure) == 11  # 6 facets + 4 rays + origin
    rays = [c for c in closure if c.dim == 1]
    assert len(rays) == 4
    assert {r.rays[0] for r in rays} == {(1, 1, 1), (-1, 0, 0), (0, -1, 0), (0, 0, -1)}

    origin = build_lnk(3, 0)
    assert origin.cells == ((make_cell(3, [(0, 0, 0)]), 1),)

    l22 = build_lnk(2, 2)
    for p in [(5, 7), (-3, 2), (0, -9), (-1, -1)]:
        assert l22.complex().find_cell_containing(p) is not None


def test_lnk_balanced():
    for n in range(1, 4):
        for k in range(n + 1):
            assert is_balanced(build_lnk(n, k))


def test_fnk_counts_and_refinement():
    assert len(build_fnk(1, 1).maximal) == 6
    assert len(build_fnk(2, 2).maximal) == 24
    assert len(build_fnk(3, 3).maximal) == 80
    for (n, k) in [(1, 1), (2, 1), (2, 2)]:
        fan = build_fnk(n, k)
        assert fan.is_simplicial_fan()
        assert all(c.dim == 2 * k for c in fan.maximal)
        lnk = build_lnk(n, k)
        assert cycles_equal(fnk_cycle(n, k), cross(lnk, lnk))


def test_fnn_unimodular():
    for n in range(1, 4):
        for cone in build_fnk(n, n).maximal:
            assert abs(det_int(cone.rays)) == 1


def test_fnn_never_mixes_top_rays():
    # no cone may see both (-e_0 | 0) and (0 | -e_0)
    for n in range(1, 4):
        a = symbol_ray(n, ("T", 0))
        b = symbol_ray(n, ("B", 0))
        for cone in build_fnk(n, n).maximal:
            assert not (cone.contains_direction(a) and cone.contains_direction(b))


def test_diagonal_is_subfan():
    from itertools import combinations

    for (n, k) in [(2, 1), (2, 2), (3, 2)]:
        closure = build_fnk(n, k).all_cells()
        for size in range(k + 1):
            for subset in combinations(range(n + 1), size):
                dcone = cone_from_generators(
                    2 * n, [symbol_ray(n, ("D", mu)) for mu in subset]
                )
                assert dcone in closure


def test_diagonal_divisor_product_small():
    for (n, k) in [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2)]:
        expr = diagonal_divisors_rn(n, k)
        assert expr.degree() == n + k
        got = expr.apply(fnk_cycle(n, n))
        assert cycles_equal(got, diagonal_cycle(build_lnk(n, n - k)))


def _combo_set(rep):
    return [
        (alpha, tuple(tuple(sorted(f.items())) for f in factors))
        for alpha, factors in rep.tuples
    ]


def test_rewrite_single_function_cases():
    r10 = rewrite_diagonal(1, 0)
    assert r10.tuples == ((1, ({("T", 1): 1, ("B", 0): 1},)),)
    assert r10.verified

    r21 = rewrite_diagonal(2, 1)
    assert r21.tuples == (
        (1, ({("T", 1): 1, ("T", 2): 1, ("B", 0): 1, ("T", 0): -1, ("D", 0): -1},)),
    )

    r32 = rewrite_diagonal(3, 2)
    (coeff, (combo,)) = r32.tuples[0]
    assert coeff == 1
    assert combo == {
        ("T", 1): 1,
        ("T", 2): 1,
        ("T", 3): 1,
        ("B", 0): 1,
        ("T", 0): -2,
        ("D", 0): -2,
    }
    assert r32.describe() == ["+1 (T1+T2+T3+B-2A-2D)"]


def test_rewrite_trivial_and_expanded_cases():
    assert rewrite_diagonal(2, 2).tuples == ((1, ()),)
    r20 = rewrite_diagonal(2, 0)
    assert _combo_set(r20) == [
        (1, ((( ("B", 0), 1),), ((("B", 0), 1),))),
        (1, ((( ("T", 1), 1),), ((("B", 0), 1),))),
        (1, ((( ("T", 1), 1),), ((("T", 2), 1),))),
        (1, ((( ("T", 2), 1),), ((("B", 0), 1),))),
    ]


def test_rewrite_two_step_case():
    r31 = rewrite_diagonal(3, 1)
    assert len(r31.tuples) == 12
    combos = _combo_set(r31)
    b = ((("B", 0), 1),)
    ad = ((("D", 0), 1), (("T", 0), 1))
    assert (1, (b, b)) in combos
    assert (-1, (b, ad)) in combos
    assert (1, (ad, ad)) in combos
    assert sum(alpha for alpha, _ in combos) == 1 + 3 + 3 - 1 - 3 + 1


def test_rewrite_verification_is_hard_error():
    base = rewrite_diagonal(1, 0)
    wrong = DiagonalRepresentation(
        1,
        1,
        ((1, ({("B", 0): 2},)),),
        diagonal_divisors_rn(1, 1),  # wrong degree on purpose: A+D only
        base.space,
    )
    with pytest.raises(VerificationError):
        wrong.verify()


def test_relations_examples():
    l31 = build_lnk(3, 1)
    assert relations_check(3, 1, l31, "a")
    assert relations_check(3, 1, l31, "b", vs=[("T", 1), ("D", 0)])
    assert relations_check(3, 1, l31, "b", vs=[("T", 2), ("T", 3)])
    assert relations_check(3, 1, l31, "c", vs=[("T", 1)], s=1)
    l22 = build_lnk(2, 2)
    assert relations_check(2, 2, l22, "a")
    assert relations_check(2, 2, l22, "b", vs=[("T", 1), ("T", 2), ("D", 0)])


def test_relations_parameter_validation():
    l31 = build_lnk(3, 1)
    with pytest.raises(TropicalGeometryError):
        relations_check(3, 1, l31, "b", vs=[("T", 1), ("T", 1)])
    with pytest.raises(TropicalGeometryError):
        relations_check(3, 1, l31, "b", vs=[("T", 1)])  # r would be 0
    with pytest.raises(TropicalGeometryError):
        relations_check(3, 1, l31, "c", vs=[("T", 1)], s=0)
    with pytest.raises(TropicalGeometryError):
        relations_check(3, 1, l31, "d")
    with pytest.raises(TropicalGeometryError):
        relations_check(3, 1, l31, "b", vs=[("B", 1), ("T", 1)])


def test_star_diagonal_origin_matches_base():
    origin = make_cell(2, [(0, 0)])
    rep = star_diagonal(2, 1, origin)
    assert rep.tuples == rewrite_diagonal(2, 1).tuples
    assert rep.verified


def test_star_diagonal_at_ray_and_maximal():
    ray = cone_from_generators(2, [(-1, 0)])
    rep = star_diagonal(2, 1, ray)
    assert rep.verified
    ((cell, w),) = rep.space.cells
    assert w == 1 and cell.lineality == ((1, 0),)

    quad = cone_from_generators(2, [(-1, 0), (0, -1)])
    full = star_diagonal(2, 2, quad)
    assert full.verified
    ((cell, w),) = full.space.cells
    assert cell.dim == 2 and len(cell.lineality) == 2


def test_star_diagonal_rejects_non_cells():
    with pytest.raises(TropicalGeometryError):
        star_diagonal(2, 1, cone_from_generators(2, [(1, 0)]))


def test_rn_cycle_balanced_and_full():
    for n in (1, 2, 3):
        c = rn_cycle(n)
        assert is_balanced(c)
        assert c.dim == n and len(c.cells) == 1


def test_partial_products_over_f22():
    # A and D carry -e_0 in the first block, so (A+D) is max(0, x_1, x_2)
    # in the first factor and cuts it down to L^2_1; the mirror pair (B+D)
    # does the same to the second factor.  Applying both gives L^2_1 x L^2_1.
    from tropint.functions import CartierExpression
    from tropint.linspace import fnk_cycle, symbol_function

    bd = symbol_function(2, {("B", 0): 1, ("D", 0): 1})
    ad = symbol_function(2, {("T", 0): 1, ("D", 0): 1})
    l21 = build_lnk(2, 1)
    first = CartierExpression([(1, [ad])]).apply(fnk_cycle(2, 2))
    assert cycles_equal(first, cross(l21, rn_cycle(2)))
    mirror = CartierExpression([(1, [bd])]).apply(fnk_cycle(2, 2))
    assert cycles_equal(mirror, cross(rn_cycle(2), l21))
    second = CartierExpression([(1, [bd, ad])]).apply(fnk_cycle(2, 2))
    assert cycles_equal(second, cross(l21, l21))


def _diagonal_of_subcycle(n, k, c):
    from tropint.functions import CartierExpression
    from tropint.linspace import symbol_function

    rep = rewrite_diagonal(n, k)
    bd = symbol_function(n, {("B", 0): 1, ("D", 0): 1})
    expr = CartierExpression(
        [(alpha, list(phis) + [bd] * k) for alpha, phis in rep.expression.terms]
    )
    return expr.apply(cross(c, rn_cycle(n)))


def test_diagonal_of_subcycles():
    # the h-tuples against (B+D)^k recover the diagonal of any subcycle
    from tropint.polyhedra import make_cycle, scale_cycle

    line = make_cycle(3, 1, [
        (cone_from_generators(3, [(1, 1, 0)]), 1),
        (cone_from_generators(3, [(-1, -1, 0)]), 1),
    ])
    curve = make_cycle(3, 1, [
        (cone_from_generators(3, [(-2, -3, 0)]), 1),
        (cone_from_generators(3, [(2, 2, -1)]), 1),
        (cone_from_generators(3, [(0, 1, 1)]), 1),
    ])
    for c in [line, curve, build_lnk(3, 2)]:
        assert cycles_equal(_diagonal_of_subcycle(3, 1, c), diagonal_cycle(c))
    doubled = scale_cycle(build_lnk(3, 1), 2)
    assert cycles_equal(_diagonal_of_subcycle(3, 2, doubled), diagonal_cycle(doubled))
