"""Piecewise linear functions on polyhedral carriers and their divisors.

A PLFunction stores one integer covector and one rational offset per
maximal carrier cell.  Functions are only ever evaluated on their carrier;
off the support of a cell the stored covector is an arbitrary extension,
so two representations agreeing on every cell describe the same function.
"""

from fractions import Fraction

from .exactmath import (
    member_of_span,
    solve_integer,
    vec_dot,
    vec_sub,
)
from .polyhedra import (
    Complex,
    TropicalGeometryError,
    VerificationError,
    add_cycles,
    check_cover,
    common_refinement,
    cut_cell_by_hom_forms,
    empty_cycle,
    facet_data,
    intersect_cells,
    lattice_normal,
    make_cell,
    make_cycle,
    refine_complexes,
    scale_cycle,
)


class UnbalancedCycleError(TropicalGeometryError):
    """A divisor was taken on a cycle that fails the balancing condition."""


class PLFunction:
    """A piecewise integer-affine function on a polyhedral carrier."""

    __slots__ = ("carrier", "cells", "forms", "_by_cell")

    def __init__(self, cells, forms):
        if len(cells) != len(forms):
            raise TropicalGeometryError("one form per carrier cell required")
        if not cells:
            raise TropicalGeometryError("carrier must have at least one cell")
        order = sorted(range(len(cells)), key=lambda i: cells[i].key())
        self.cells = tuple(cells[i] for i in order)
        self.forms = tuple(
            (tuple(int(c) for c in forms[i][0]), Fraction(forms[i][1]))
            for i in order
        )
        self.carrier = Complex(self.cells[0].ambient_dim, self.cells)
        if len(self.carrier.maximal) != len(self.cells):
            raise TropicalGeometryError("carrier cells must be distinct")
        self._by_cell = {c: f for c, f in zip(self.cells, self.forms)}

    @property
    def ambient_dim(self):
        return self.carrier.ambient_dim

    def form_on(self, cell):
        return self._by_cell[cell]

    def form_at(self, point):
        cell = self.carrier.find_cell_containing(point)
        if cell is None:
            raise TropicalGeometryError("point lies outside the carrier")
        return self._by_cell[cell]

    def value(self, point):
        cov, off = self.form_at(point)
        return sum(c * Fraction(x) for c, x in zip(cov, point)) + off

    def validate(self):
        """Check that the cellwise forms glue to a continuous function."""
        cells = self.cells
        for i in range(len(cells)):
            for j in range(i + 1, len(cells)):
                inter = intersect_cells(cells[i], cells[j])
                if inter.is_empty:
                    continue
                dc = vec_sub(self.forms[i][0], self.forms[j][0])
                do = self.forms[i][1] - self.forms[j][1]
                for v in inter.vertices:
                    if vec_dot(dc, v) + do != 0:
                        raise VerificationError("forms disagree on a shared face")
                for r in inter.rays + inter.lineality:
                    if vec_dot(dc, r) != 0:
                        raise VerificationError("forms disagree on a shared face")
        return True

    def __repr__(self):
        return "PLFunction(ambient=%d, %d cells)" % (self.ambient_dim, len(self.cells))


def affine_function(ambient_dim, covector, offset=0):
    """The globally affine function x -> covector.x + offset."""
    space = make_cell(
        ambient_dim,
        vertices=[(0,) * ambient_dim],
        lineality=[
            tuple(1 if i == j else 0 for j in range(ambient_dim))
            for i in range(ambient_dim)
        ],
    )
    return PLFunction((space,), ((covector, offset),))


def ray_function(fan, values):
    """The function linear on each cone of a pointed simplicial fan taking
    prescribed integer values on its rays (zero where unspecified)."""
    if hasattr(fan, "cells"):  # a cycle: use its complex
        fan = fan.complex()
    if not fan.is_simplicial_fan():
        raise TropicalGeometryError("carrier is not a pointed simplicial fan")
    values = {tuple(r): int(v) for r, v in values.items()}
    cells = fan.maximal
    forms = []
    for cone in cells:
        rhs = tuple(values.get(r, 0) for r in cone.rays)
        cov = solve_integer(cone.rays, rhs)
        if cov is None:
            raise TropicalGeometryError(
                "no integer linear form takes these ray values on %r" % (cone,)
            )
        forms.append((cov, 0))
    return PLFunction(cells, forms)


def max_poly_function(carrier, forms):
    """The pointwise maximum of affine forms, on a carrier it is linear on.

    `forms` is a list of (integer covector, rational offset) pairs.  On
    each maximal carrier cell one of the forms must dominate all others;
    otherwise the carrier does not refine the corner locus and an error is
    raised.
    """
    if hasattr(carrier, "cells"):
        carrier = carrier.complex()
    forms = [(tuple(int(c) for c in cov), Fraction(off)) for cov, off in forms]
    if not forms:
        raise TropicalGeometryError("empty maximum")
    cells = carrier.maximal
    chosen = []
    for cell in cells:
        winner = None
        for cov, off in forms:
            ok = True
            for cov2, off2 in forms:
                dc = vec_sub(cov, cov2)
                do = off - off2
                if any(vec_dot(dc, v) + do < 0 for v in cell.vertices):
                    ok = False
                elif any(vec_dot(dc, r) < 0 for r in cell.rays):
                    ok = False
                elif any(vec_dot(dc, l) != 0 for l in cell.lineality):
                    ok = False
                if not ok:
                    break
            if ok:
                winner = (cov, off)
                break
        if winner is None:
            raise TropicalGeometryError("function is not linear on a carrier cell")
        chosen.append(winner)
    return PLFunction(cells, chosen)


def add_functions(f, g):
    """Pointwise sum, carried by the common refinement of both carriers."""
    if f.carrier is g.carrier or f.cells == g.cells:
        return PLFunction(
            f.cells,
            tuple(
                (
                    tuple(a + b for a, b in zip(cf[0], cg[0])),
                    cf[1] + cg[1],
                )
                for cf, cg in zip(f.forms, g.forms)
            ),
        )
    refined, pairs = refine_complexes(f.carrier, g.carrier)
    cells = refined.maximal
    for side in (f, g):
        for big in side.cells:
            check_cover(big, [c for c in cells if big.contains_cell(c)])
    forms = []
    for cell in cells:
        cf = f.form_on(pairs[cell][0])
        cg = g.form_on(pairs[cell][1])
        forms.append((tuple(a + b for a, b in zip(cf[0], cg[0])), cf[1] + cg[1]))
    return PLFunction(cells, forms)


def scale_function(f, c):
    c = int(c)
    return PLFunction(
        f.cells,
        tuple((tuple(c * a for a in cov), c * off) for cov, off in f.forms),
    )


def pullback_function(matrix, translation, phi, source=None):
    """Pull a PL function back along x -> matrix.x + translation.

    `source` is an optional complex on the domain whose cells are refined
    by the preimages of the carrier cells of phi; by default the whole
    domain is used.  The image of the source must land in the carrier.
    """
    n = len(matrix[0]) if matrix else 0
    m = len(matrix)
    if translation is None:
        translation = (0,) * m
    if phi.ambient_dim != m:
        raise TropicalGeometryError("function carrier does not match the target")
    if source is None:
        source = Complex(
            n,
            [
                make_cell(
                    n,
                    vertices=[(0,) * n],
                    lineality=[
                        tuple(1 if i == j else 0 for j in range(n)) for i in range(n)
                    ],
                )
            ],
        )
    elif hasattr(source, "cells"):
        source = source.complex()

    def pull_form(form):
        a, b = form[:-1], form[-1]
        cov = tuple(
            sum(a[i] * matrix[i][j] for i in range(m)) for j in range(n)
        )
        return cov + (vec_dot(a, translation) + b,)

    cells = []
    forms = []
    for s in source.maximal:
        pieces = {}
        for target_cell, (cov, off) in zip(phi.cells, phi.forms):
            ineqs = [pull_form(f) for f in target_cell.hom_facets]
            eqs = [pull_form(e) for e in target_cell.hom_eqs]
            piece = cut_cell_by_hom_forms(s, ineqs, eqs)
            if piece.is_empty or piece.dim != s.dim:
                continue
            if piece not in pieces:
                new_cov = tuple(
                    sum(cov[i] * matrix[i][j] for i in range(m)) for j in range(n)
                )
                new_off = vec_dot(cov, translation) + off
                pieces[piece] = (new_cov, new_off)
        check_cover(s, list(pieces))
        for piece, form in pieces.items():
            cells.append(piece)
            forms.append(form)
    # a piece can arise from two source cells only if they overlap; carriers
    # are complexes, so identical pieces carry identical forms
    seen = {}
    for c, f in zip(cells, forms):
        seen.setdefault(c, f)
    cells = list(seen)
    forms = [seen[c] for c in cells]
    return PLFunction(cells, forms)


def divisor(phi, x, validate_cover=True):
    """The divisor cycle phi . x supported on the codimension-one cells.

    The cycle is refined along the carrier of phi; each codimension-one
    cell tau of the refinement receives the weight
        sum_sigma w(sigma) phi_sigma(u_sigma/tau) - phi_tau(sum_sigma w(sigma) u_sigma/tau)
    and cells of weight zero are dropped.  Raises UnbalancedCycleError when
    the weighted normal vectors around some tau do not sum into its span.
    """
    if x.is_empty or x.dim == 0:
        return empty_cycle(x.ambient_dim)
    if phi.ambient_dim != x.ambient_dim:
        raise TropicalGeometryError("function and cycle live in different spaces")
    refined = common_refinement(x, phi.carrier)
    cells = [c for c, _ in refined.cells]
    weights = [w for _, w in refined.cells]
    covs = []
    for cell in cells:
        cov, _ = phi.form_at(cell.relint_point())
        covs.append(cov)
    n = x.ambient_dim
    items = []
    for tau, around in facet_data(cells).items():
        total = [0] * n
        val = 0
        for idx, form in around:
            u = lattice_normal(cells[idx], tau, form)
            w = weights[idx]
            val += w * vec_dot(covs[idx], u)
            for i in range(n):
                total[i] += w * u[i]
        total = tuple(total)
        if not member_of_span(tau.direction_lattice(), total):
            raise UnbalancedCycleError(
                "cycle is not balanced around a codimension-one cell"
            )
        weight = val - vec_dot(covs[around[0][0]], total)
        if weight:
            items.append((tau, weight))
    return make_cycle(x.ambient_dim, x.dim - 1, items)


class CartierExpression:
    """An integer combination of products of PL functions.

    Terms are (coefficient, factors) pairs; applying the expression to a
    cycle applies each factor of a term in turn as a divisor, scales by
    the coefficient, and sums the results.
    """

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = tuple(
            (int(c), tuple(factors)) for c, factors in terms
        )

    def __len__(self):
        return len(self.terms)

    def degree(self):
        """Number of divisor applications each term performs."""
        degrees = {len(factors) for _, factors in self.terms}
        if len(degrees) != 1:
            raise TropicalGeometryError("mixed-degree expression")
        return degrees.pop()

    def apply(self, x):
        result = None
        for coeff, factors in self.terms:
            cur = x
            for phi in factors:
                cur = divisor(phi, cur)
                if cur.is_empty:
                    break
            cur = scale_cycle(cur, coeff)
            result = cur if result is None else add_cycles(result, cur)
        if result is None:
            result = empty_cycle(x.ambient_dim)
        return result


def apply_expression(expr, x):
    return expr.apply(x)
