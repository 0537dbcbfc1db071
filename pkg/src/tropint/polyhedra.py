"""Rational polyhedral cells, complexes and weighted balanced cycles.

Cells are kept in a canonical V-representation (vertices, primitive rays,
HNF lineality basis, everything reduced modulo lineality) so that equality
of cells is structural equality of the underlying sets.  The H-representation
(facet inequalities and span equations of the homogenization) is derived
once per cell by an exact double description pass and cached.

Conventions:
  * a cell with no vertices is the empty cell;
  * a cone is a cell whose single vertex is the origin;
  * all weights are (possibly negative) nonzero ints.
"""

from fractions import Fraction

from .exactmath import (
    clear_denominators,
    integer_kernel,
    is_zero,
    lattice_index,
    member_of_span,
    primitive_vector,
    rank_int,
    saturate,
    solve_integer,
    solve_rational,
    vec_dot,
    vec_neg,
)


class TropicalGeometryError(ValueError):
    """Input violates a precondition of a geometric operation."""


class VerificationError(RuntimeError):
    """An internal exactness or consistency re-check failed."""


# ---------------------------------------------------------------------------
# double description primitives (generator form)


def _combine(p, m, a):
    # nonnegative combination of p (a.p > 0) and m (a.m < 0) lying on a = 0
    w = tuple(vec_dot(a, p) * x - vec_dot(a, m) * y for x, y in zip(m, p))
    return None if is_zero(w) else primitive_vector(w)


def _cut_halfspace(rays, lin, a):
    """Generators of (cone(rays)+lin) intersected with {x : a.x >= 0}."""
    pivot = None
    for l in lin:
        if vec_dot(a, l) != 0:
            pivot = l
            break
    if pivot is not None:
        if vec_dot(a, pivot) < 0:
            pivot = vec_neg(pivot)
        pa = vec_dot(a, pivot)
        newlin = []
        for l in lin:
            if l is pivot:
                continue
            d = vec_dot(a, l)
            w = tuple(pa * x - d * y for x, y in zip(l, pivot))
            if not is_zero(w):
                newlin.append(primitive_vector(w))
        newrays = set()
        for r in rays:
            d = vec_dot(a, r)
            w = tuple(pa * x - d * y for x, y in zip(r, pivot))
            if not is_zero(w):
                newrays.add(primitive_vector(w))
        newrays.add(pivot)
        return tuple(newrays), tuple(newlin)
    pos, zero, neg = [], [], []
    for r in rays:
        d = vec_dot(a, r)
        (pos if d > 0 else zero if d == 0 else neg).append(r)
    if not neg:
        return tuple(rays), tuple(lin)
    new = set(pos) | set(zero)
    for p in pos:
        for m in neg:
            w = _combine(p, m, a)
            if w is not None:
                new.add(w)
    return tuple(new), tuple(lin)


def _cut_hyperplane(rays, lin, a):
    """Generators of (cone(rays)+lin) intersected with {x : a.x == 0}."""
    pivot = None
    for l in lin:
        if vec_dot(a, l) != 0:
            pivot = l
            break
    if pivot is not None:
        pa = vec_dot(a, pivot)
        newlin = []
        for l in lin:
            if l is pivot:
                continue
            d = vec_dot(a, l)
            w = tuple(pa * x - d * y for x, y in zip(l, pivot))
            if not is_zero(w):
                newlin.append(primitive_vector(w))
        newrays = set()
        for r in rays:
            d = vec_dot(a, r)
            w = tuple(pa * x - d * y for x, y in zip(r, pivot))
            if not is_zero(w):
                newrays.add(primitive_vector(w))
        return tuple(newrays), tuple(newlin)
    pos, zero, neg = [], [], []
    for r in rays:
        d = vec_dot(a, r)
        (pos if d > 0 else zero if d == 0 else neg).append(r)
    new = set(zero)
    for p in pos:
        for m in neg:
            w = _combine(p, m, a)
            if w is not None:
                new.add(w)
    return tuple(new), tuple(lin)


def _dual_generators(hgens, hlin, dim):
    """Generators of {a : a.g >= 0 for g in hgens, a.l == 0 for l in hlin}."""
    rays = ()
    lin = tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim))
    for l in hlin:
        rays, lin = _cut_hyperplane(rays, lin, l)
    for g in hgens:
        rays, lin = _cut_halfspace(rays, lin, g)
    return rays, lin


def _pivot_col(row):
    for j, x in enumerate(row):
        if x != 0:
            return j
    return None


def _reduce_mod(v, basis):
    """Canonical representative of v modulo span(basis rows), primitivized.

    basis rows must be an echelon (HNF) integer basis.  Returns None when
    v lies in the span.
    """
    if not basis:
        w, _ = clear_denominators(v)
        return None if is_zero(w) else primitive_vector(w)
    w = [Fraction(x) for x in v]
    for row in basis:
        p = _pivot_col(row)
        if w[p] != 0:
            c = w[p] / row[p]
            w = [a - c * b for a, b in zip(w, row)]
    wi, _ = clear_denominators(w)
    return None if is_zero(wi) else primitive_vector(wi)


# ---------------------------------------------------------------------------
# cells

_CELL_POOL = {}
_INTERSECT_MEMO = {}
_NORMAL_MEMO = {}
_BUILD_MEMO = {}


def clear_caches():
    _CELL_POOL.clear()
    _INTERSECT_MEMO.clear()
    _NORMAL_MEMO.clear()
    _BUILD_MEMO.clear()


class Cell:
    """A rational polyhedron in canonical V-representation."""

    __slots__ = (
        "ambient_dim",
        "vertices",
        "rays",
        "lineality",
        "dim",
        "hom_facets",
        "hom_eqs",
        "_hash",
        "_hom_gens",
        "_hom_lin",
        "_facet_cells",
        "_dirlat",
        "_relint",
    )

    def __init__(self, ambient_dim, vertices, rays, lineality, dim, hom_facets, hom_eqs):
        self.ambient_dim = ambient_dim
        self.vertices = vertices
        self.rays = rays
        self.lineality = lineality
        self.dim = dim
        self.hom_facets = hom_facets
        self.hom_eqs = hom_eqs
        self._hash = hash((ambient_dim, vertices, rays, lineality))
        self._hom_gens = None
        self._hom_lin = None
        self._facet_cells = None
        self._dirlat = None
        self._relint = None

    @property
    def is_empty(self):
        return not self.vertices

    @property
    def is_cone(self):
        return len(self.vertices) == 1 and all(x == 0 for x in self.vertices[0])

    def key(self):
        return (self.ambient_dim, self.vertices, self.rays, self.lineality)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self is other or (
            isinstance(other, Cell) and self.key() == other.key()
        )

    def __repr__(self):
        if self.is_empty:
            return "Cell(empty, ambient=%d)" % self.ambient_dim
        return "Cell(dim=%d, V=%s, R=%s, L=%s)" % (
            self.dim,
            [tuple(map(str, v)) for v in self.vertices],
            list(self.rays),
            list(self.lineality),
        )

    # -- derived data -------------------------------------------------

    def hom_gens(self):
        if self._hom_gens is None:
            gens = []
            for v in self.vertices:
                w, _ = clear_denominators(tuple(v) + (1,))
                gens.append(primitive_vector(w))
            for r in self.rays:
                gens.append(tuple(r) + (0,))
            self._hom_gens = tuple(gens)
        return self._hom_gens

    def hom_lin(self):
        if self._hom_lin is None:
            self._hom_lin = tuple(tuple(l) + (0,) for l in self.lineality)
        return self._hom_lin

    def contains_point(self, p):
        if self.is_empty:
            return False
        w, _ = clear_denominators(tuple(p) + (1,))
        for e in self.hom_eqs:
            if vec_dot(e, w) != 0:
                return False
        for f in self.hom_facets:
            if vec_dot(f, w) < 0:
                return False
        return True

    def contains_direction(self, r):
        if self.is_empty:
            return False
        w = tuple(r) + (0,)
        for e in self.hom_eqs:
            if vec_dot(e, w) != 0:
                return False
        for f in self.hom_facets:
            if vec_dot(f, w) < 0:
                return False
        return True

    def contains_cell(self, other):
        if other.is_empty:
            return True
        if self.is_empty:
            return False
        return (
            all(self.contains_point(v) for v in other.vertices)
            and all(self.contains_direction(r) for r in other.rays)
            and all(
                self.contains_direction(l) and self.contains_direction(vec_neg(l))
                for l in other.lineality
            )
        )

    def relint_point(self):
        """A rational point in the relative interior."""
        if self.is_empty:
            raise TropicalGeometryError("empty cell has no relative interior")
        if self._relint is None:
            n = self.ambient_dim
            k = len(self.vertices)
            p = [Fraction(0)] * n
            for v in self.vertices:
                for i in range(n):
                    p[i] += Fraction(v[i], k)
            for r in self.rays:
                for i in range(n):
                    p[i] += r[i]
            self._relint = tuple(p)
        return self._relint

    def direction_lattice(self):
        """HNF basis of the saturated lattice of directions along the cell."""
        if self._dirlat is None:
            dirs = []
            v0 = self.vertices[0]
            for v in self.vertices[1:]:
                w, _ = clear_denominators(tuple(a - b for a, b in zip(v, v0)))
                dirs.append(w)
            dirs.extend(self.rays)
            dirs.extend(self.lineality)
            self._dirlat = saturate(dirs, self.ambient_dim)
        return self._dirlat

    def facet_cells(self):
        """List of (facet cell, homogeneous facet inequality) pairs."""
        if self._facet_cells is None:
            out = []
            for f in self.hom_facets:
                verts = tuple(
                    v
                    for v, g in zip(self.vertices, self.hom_gens())
                    if vec_dot(f, g) == 0
                )
                if not verts:
                    continue  # face at infinity of the homogenization
                rays = tuple(r for r in self.rays if vec_dot(f, tuple(r) + (0,)) == 0)
                child = make_cell(self.ambient_dim, verts, rays, self.lineality)
                out.append((child, f))
            self._facet_cells = tuple(out)
        return self._facet_cells

    def face_at(self, p):
        """The unique face containing p in its relative interior."""
        if not self.contains_point(p):
            raise TropicalGeometryError("point not in cell")
        w, _ = clear_denominators(tuple(p) + (1,))
        tight = [f for f in self.hom_facets if vec_dot(f, w) == 0]
        verts = tuple(
            v
            for v, g in zip(self.vertices, self.hom_gens())
            if all(vec_dot(f, g) == 0 for f in tight)
        )
        rays = tuple(
            r
            for r in self.rays
            if all(vec_dot(f, tuple(r) + (0,)) == 0 for f in tight)
        )
        return make_cell(self.ambient_dim, verts, rays, self.lineality)


def _intern(cell):
    got = _CELL_POOL.get(cell.key())
    if got is not None:
        return got
    _CELL_POOL[cell.key()] = cell
    return cell


def _empty_cell(ambient_dim):
    cell = Cell(ambient_dim, (), (), (), -1, (), ())
    return _intern(cell)


def _build_from_hom(ambient_dim, hgens, hlin):
    """Canonical cell from homogeneous generators (last coordinate is t)."""
    n1 = ambient_dim + 1
    hgens = tuple(g for g in hgens if not is_zero(g))
    hlin = tuple(l for l in hlin if not is_zero(l))
    if not any(g[-1] > 0 for g in hgens):
        return _empty_cell(ambient_dim)
    memo_key = (ambient_dim, frozenset(hgens), frozenset(hlin))
    got = _BUILD_MEMO.get(memo_key)
    if got is not None:
        return got
    rows = list(hgens) + list(hlin)
    eqs = integer_kernel(rows, n1)
    drays, _ = _dual_generators(hgens, hlin, n1)
    dual_rank = rank_int(rows)
    facets = set()
    for d in drays:
        tight = [g for g in hgens if vec_dot(g, d) == 0] + list(hlin)
        if rank_int(tight) == dual_rank - 1:
            dd = _reduce_mod(d, eqs)
            if dd is not None:
                facets.add(dd)
    facets = tuple(sorted(facets))
    plin = integer_kernel(list(facets) + list(eqs), n1)
    for l in plin:
        if l[-1] != 0:
            raise VerificationError("lineality escaped the homogenization slice")
    primal_rank = rank_int(list(facets) + list(eqs))
    verts = set()
    rays = set()
    for g in hgens:
        tight = [f for f in facets if vec_dot(f, g) == 0] + list(eqs)
        if rank_int(tight) != primal_rank - 1:
            continue
        gg = _reduce_mod(g, plin)
        if gg is None:
            continue
        t = gg[-1]
        if t > 0:
            verts.add(tuple(Fraction(x, t) for x in gg[:-1]))
        else:
            rays.add(gg[:-1])
    if not verts:
        cell = _empty_cell(ambient_dim)
        _BUILD_MEMO[memo_key] = cell
        return cell
    lin0 = tuple(l[:-1] for l in plin)
    dim = (n1 - len(eqs)) - 1
    cell = Cell(
        ambient_dim,
        tuple(sorted(verts)),
        tuple(sorted(rays)),
        lin0,
        dim,
        facets,
        eqs,
    )
    cell = _intern(cell)
    _BUILD_MEMO[memo_key] = cell
    return cell


def make_cell(ambient_dim, vertices=(), rays=(), lineality=()):
    """Canonical cell from arbitrary generators.

    An input without vertices but with rays or lineality is taken to be a
    cone at the origin.
    """
    vertices = tuple(tuple(Fraction(x) for x in v) for v in vertices)
    rays = tuple(tuple(int(x) for x in r) for r in rays)
    lineality = tuple(tuple(int(x) for x in l) for l in lineality)
    if not vertices:
        if not rays and not lineality:
            return _empty_cell(ambient_dim)
        vertices = (tuple(Fraction(0) for _ in range(ambient_dim)),)
    hgens = []
    for v in vertices:
        w, _ = clear_denominators(tuple(v) + (1,))
        hgens.append(primitive_vector(w))
    for r in rays:
        if not is_zero(r):
            hgens.append(primitive_vector(r) + (0,))
    hlin = [primitive_vector(l) + (0,) for l in lineality if not is_zero(l)]
    return _build_from_hom(ambient_dim, tuple(hgens), tuple(hlin))


def cone_from_generators(ambient_dim, rays, lineality=()):
    """Canonical cone spanned by the given ray and lineality generators.

    No generators at all yields the trivial cone, the origin.
    """
    if not rays and not lineality:
        return make_cell(ambient_dim, ((0,) * ambient_dim,))
    return make_cell(ambient_dim, (), rays, lineality)


def intersect_cells(a, b):
    """Exact intersection of two cells in the same ambient space."""
    if a.ambient_dim != b.ambient_dim:
        raise TropicalGeometryError("ambient dimension mismatch")
    if a.is_empty or b.is_empty:
        return _empty_cell(a.ambient_dim)
    memo_key = (a, b)
    got = _INTERSECT_MEMO.get(memo_key)
    if got is not None:
        return got
    rays, lin = a.hom_gens(), a.hom_lin()
    for e in b.hom_eqs:
        rays, lin = _cut_hyperplane(rays, lin, e)
    for f in b.hom_facets:
        rays, lin = _cut_halfspace(rays, lin, f)
    out = _build_from_hom(a.ambient_dim, rays, lin)
    _INTERSECT_MEMO[memo_key] = out
    _INTERSECT_MEMO[(b, a)] = out
    return out


def _cut_cell(cell, h):
    """cell intersected with the homogeneous halfspace {h >= 0}."""
    rays, lin = _cut_halfspace(cell.hom_gens(), cell.hom_lin(), h)
    return _build_from_hom(cell.ambient_dim, rays, lin)


def cut_cell_by_hom_forms(cell, ineqs, eqs=()):
    """cell intersected with homogeneous halfspaces and hyperplanes."""
    rays, lin = cell.hom_gens(), cell.hom_lin()
    for e in eqs:
        rays, lin = _cut_hyperplane(rays, lin, e)
    for f in ineqs:
        rays, lin = _cut_halfspace(rays, lin, f)
    return _build_from_hom(cell.ambient_dim, rays, lin)


def cross_cells(a, b):
    """Product cell inside the concatenated ambient space."""
    if a.is_empty or b.is_empty:
        return _empty_cell(a.ambient_dim + b.ambient_dim)
    za = (0,) * a.ambient_dim
    zb = (0,) * b.ambient_dim
    verts = [va + vb for va in a.vertices for vb in b.vertices]
    rays = [r + zb for r in a.rays] + [za + r for r in b.rays]
    lin = [l + zb for l in a.lineality] + [za + l for l in b.lineality]
    return make_cell(a.ambient_dim + b.ambient_dim, verts, rays, lin)


def is_face(cell, face):
    """True iff `face` is a face of `cell` (the empty cell counts)."""
    if face.is_empty:
        return True
    if not cell.contains_cell(face):
        return False
    return cell.face_at(face.relint_point()) == face


def map_cell(cell, matrix, translation=None):
    """Image of a cell under an integer-affine map."""
    m = len(matrix)
    if translation is None:
        translation = (0,) * m
    verts = [
        tuple(vec_dot(row, v) + t for row, t in zip(matrix, translation))
        for v in cell.vertices
    ]
    rays = [tuple(vec_dot(row, r) for row in matrix) for r in cell.rays]
    lin = [tuple(vec_dot(row, l) for row in matrix) for l in cell.lineality]
    return make_cell(m, verts, rays, lin)


def lattice_normal(sigma, tau, facet_form):
    """Primitive lattice normal vector of sigma modulo its facet tau.

    Returns an integer vector u generating the direction lattice of sigma
    over that of tau and pointing from tau into sigma.  `facet_form` is the
    homogeneous inequality of sigma that is tight on tau.
    """
    memo_key = (sigma, tau)
    got = _NORMAL_MEMO.get(memo_key)
    if got is not None:
        return got
    bs = sigma.direction_lattice()
    bt = tau.direction_lattice()
    d = len(bs)
    n = sigma.ambient_dim
    cols = tuple(tuple(bs[i][j] for i in range(d)) for j in range(n))
    coords = []
    for row in bt:
        sol = solve_rational(cols, row)
        if sol is None:
            raise VerificationError("facet lattice does not embed")
        x = sol[0]
        if any(c.denominator != 1 for c in x):
            raise VerificationError("facet lattice is not saturated in the cell lattice")
        coords.append(tuple(int(c) for c in x))
    ker = integer_kernel(coords, d) if coords else integer_kernel((), d)
    if len(ker) != 1:
        raise VerificationError("facet is not of codimension one")
    xi = primitive_vector(ker[0])
    y = solve_integer((xi,), (1,))
    if y is None:
        raise VerificationError("no lattice vector maps onto the quotient generator")
    u = tuple(sum(y[i] * bs[i][j] for i in range(d)) for j in range(n))
    s = vec_dot(facet_form, tuple(u) + (0,))
    if s == 0:
        raise VerificationError("lattice normal degenerated onto the facet")
    if s < 0:
        u = vec_neg(u)
    _NORMAL_MEMO[memo_key] = u
    return u


# ---------------------------------------------------------------------------
# complexes


class Complex:
    """A polyhedral complex given by its maximal cells."""

    __slots__ = ("ambient_dim", "maximal", "_closure")

    def __init__(self, ambient_dim, maximal):
        cells = tuple(sorted({c for c in maximal if not c.is_empty}, key=Cell.key))
        self.ambient_dim = ambient_dim
        self.maximal = cells
        self._closure = None
        for c in cells:
            if c.ambient_dim != ambient_dim:
                raise TropicalGeometryError("mixed ambient dimensions in complex")

    @property
    def dim(self):
        return max((c.dim for c in self.maximal), default=-1)

    def all_cells(self):
        """Every cell of the complex, closed under taking faces."""
        if self._closure is None:
            seen = set(self.maximal)
            frontier = list(self.maximal)
            while frontier:
                cell = frontier.pop()
                for child, _ in cell.facet_cells():
                    if child not in seen:
                        seen.add(child)
                        frontier.append(child)
            self._closure = tuple(sorted(seen, key=Cell.key))
        return self._closure

    def find_cell_containing(self, p):
        for c in self.maximal:
            if c.contains_point(p):
                return c
        return None

    def contains_cell(self, cell):
        return any(c.contains_cell(cell) for c in self.maximal)

    def validate(self):
        """Check the pairwise face condition exactly; raise on violation."""
        cells = self.maximal
        for i in range(len(cells)):
            for j in range(i + 1, len(cells)):
                inter = intersect_cells(cells[i], cells[j])
                if inter.is_empty:
                    continue
                if not is_face(cells[i], inter) or not is_face(cells[j], inter):
                    raise TropicalGeometryError(
                        "cells intersect in a non-face: %r vs %r" % (cells[i], cells[j])
                    )
        return True

    def is_simplicial_fan(self):
        for c in self.maximal:
            if not c.is_cone or c.lineality or len(c.rays) != c.dim:
                return False
        return True


def facet_data(cells):
    """Facet adjacency of a family of equal-dimensional cells.

    Returns a dict mapping each facet cell to a list of (cell index,
    homogeneous facet inequality) pairs for the cells it bounds.
    """
    out = {}
    for i, cell in enumerate(cells):
        for child, form in cell.facet_cells():
            out.setdefault(child, []).append((i, form))
    return out


def localize_complex(complex_, x):
    """Star of a complex at a point, with the originating maximal cells.

    Returns (star_complex, pairs) where pairs is a list of
    (star cell, original maximal cell) used to transport cellwise data.
    """
    x = tuple(Fraction(v) for v in x)
    pairs = []
    for cell in complex_.maximal:
        if not cell.contains_point(x):
            continue
        star = star_cell(cell, x)
        pairs.append((star, cell))
    if not pairs:
        raise TropicalGeometryError("point lies outside the complex")
    return Complex(complex_.ambient_dim, [p[0] for p in pairs]), pairs


def star_cell(cell, x):
    """Cone of directions from x into the cell."""
    rays = list(cell.rays)
    for v in cell.vertices:
        w, _ = clear_denominators(tuple(a - b for a, b in zip(v, x)))
        if not is_zero(w):
            rays.append(primitive_vector(w))
    return make_cell(cell.ambient_dim, (), rays, cell.lineality)


# ---------------------------------------------------------------------------
# tropical cycles


class TropicalCycle:
    """A weighted pure-dimensional polyhedral complex."""

    __slots__ = ("ambient_dim", "dim", "cells", "_complex")

    def __init__(self, ambient_dim, dim, cells):
        self.ambient_dim = ambient_dim
        self.dim = dim
        self.cells = cells
        self._complex = None

    @property
    def is_empty(self):
        return not self.cells

    def complex(self):
        if self._complex is None:
            self._complex = Complex(self.ambient_dim, [c for c, _ in self.cells])
        return self._complex

    def weight_of(self, cell):
        for c, w in self.cells:
            if c == cell:
                return w
        return 0

    def __eq__(self, other):
        if not isinstance(other, TropicalCycle):
            return NotImplemented
        if self.ambient_dim != other.ambient_dim:
            return False
        if self.is_empty and other.is_empty:
            return True
        return self.dim == other.dim and self.cells == other.cells

    def __hash__(self):
        return hash((self.ambient_dim, self.dim if self.cells else -1, self.cells))

    def __repr__(self):
        if self.is_empty:
            return "TropicalCycle(empty, ambient=%d)" % self.ambient_dim
        return "TropicalCycle(ambient=%d, dim=%d, %d cells)" % (
            self.ambient_dim,
            self.dim,
            len(self.cells),
        )


def make_cycle(ambient_dim, dim, items):
    """Canonical cycle from (cell, weight) pairs; merges and prunes."""
    acc = {}
    for cell, w in items:
        if w == 0 or cell.is_empty:
            continue
        acc[cell] = acc.get(cell, 0) + w
    cells = []
    for cell in sorted(acc, key=Cell.key):
        w = acc[cell]
        if w == 0:
            continue
        if cell.ambient_dim != ambient_dim:
            raise TropicalGeometryError("cell ambient dimension mismatch")
        if cell.dim != dim:
            raise TropicalGeometryError(
                "cycle is not pure: cell of dim %d in a dim %d cycle" % (cell.dim, dim)
            )
        cells.append((cell, w))
    if not cells:
        return empty_cycle(ambient_dim)
    return TropicalCycle(ambient_dim, dim, tuple(cells))


def empty_cycle(ambient_dim, dim=-1):
    return TropicalCycle(ambient_dim, dim, ())


def scale_cycle(x, c):
    if c == 0 or x.is_empty:
        return empty_cycle(x.ambient_dim, x.dim)
    return TropicalCycle(x.ambient_dim, x.dim, tuple((cell, c * w) for cell, w in x.cells))


def cross(x, y):
    """Cartesian product cycle in the concatenated ambient space."""
    amb = x.ambient_dim + y.ambient_dim
    if x.is_empty or y.is_empty:
        return empty_cycle(amb)
    items = [
        (cross_cells(cx, cy), wx * wy)
        for cx, wx in x.cells
        for cy, wy in y.cells
    ]
    return make_cycle(amb, x.dim + y.dim, items)


def _hyperplane_key(form):
    v = primitive_vector(form)
    for entry in v:
        if entry != 0:
            return v if entry > 0 else vec_neg(v)
    raise ValueError("zero form")


def assemble_cycle(ambient_dim, dim, contributions):
    """Sum of weighted cells as a face-to-face cycle.

    The cells may overlap arbitrarily; they are split along the facet and
    span hyperplanes of every contributing cell, the pieces of a common
    hyperplane arrangement are matched up and their weights added.
    """
    contributions = [(c, w) for c, w in contributions if w != 0 and not c.is_empty]
    if not contributions:
        return empty_cycle(ambient_dim, dim)
    hyperplanes = set()
    for cell, _ in contributions:
        for f in cell.hom_facets:
            hyperplanes.add(_hyperplane_key(f))
        for e in cell.hom_eqs:
            hyperplanes.add(_hyperplane_key(e))
    hyperplanes = sorted(hyperplanes)
    acc = {}
    for cell, w in contributions:
        pieces = [cell]
        for h in hyperplanes:
            nxt = []
            for p in pieces:
                lin_hit = any(vec_dot(h, l) != 0 for l in p.hom_lin())
                if not lin_hit:
                    signs = [vec_dot(h, g) for g in p.hom_gens()]
                    if all(s >= 0 for s in signs):
                        nxt.append(p)
                        continue
                    if all(s <= 0 for s in signs):
                        nxt.append(p)
                        continue
                for hh in (h, vec_neg(h)):
                    q = _cut_cell(p, hh)
                    if not q.is_empty and q.dim == dim:
                        nxt.append(q)
            pieces = nxt
        for p in pieces:
            acc[p] = acc.get(p, 0) + w
    return make_cycle(ambient_dim, dim, acc.items())


def add_cycles(x, y):
    if x.ambient_dim != y.ambient_dim:
        raise TropicalGeometryError("ambient dimension mismatch")
    if x.is_empty:
        return y
    if y.is_empty:
        return x
    if x.dim != y.dim:
        raise TropicalGeometryError("cannot add cycles of different dimensions")
    return assemble_cycle(
        x.ambient_dim, x.dim, list(x.cells) + list(y.cells)
    )


def cycles_equal(x, y):
    """True iff the cycles agree cellwise on a common refinement."""
    if x.ambient_dim != y.ambient_dim:
        raise TropicalGeometryError("ambient dimension mismatch")
    if x.is_empty or y.is_empty:
        return x.is_empty and y.is_empty
    if x.dim != y.dim:
        return False
    return add_cycles(x, scale_cycle(y, -1)).is_empty


def degree(x):
    """Total weight of a zero-dimensional cycle."""
    if x.is_empty:
        return 0
    if x.dim != 0:
        raise TropicalGeometryError("degree requires a zero-dimensional cycle")
    return sum(w for _, w in x.cells)


class ZeroCycleSummary:
    """Points and weights of a zero-dimensional cycle."""

    __slots__ = ("points", "weights")

    def __init__(self, cycle):
        if not cycle.is_empty and cycle.dim != 0:
            raise TropicalGeometryError("not a zero-dimensional cycle")
        self.points = tuple(c.vertices[0] for c, _ in cycle.cells)
        self.weights = tuple(w for _, w in cycle.cells)

    @property
    def degree(self):
        return sum(self.weights)


def common_refinement(x, carrier):
    """Refine the cycle x along the cells of a complex covering it.

    `carrier` may be a Complex or a TropicalCycle (its complex is used).
    Raises if the carrier does not cover the support of x.
    """
    if isinstance(carrier, TropicalCycle):
        carrier = carrier.complex()
    if x.is_empty:
        return x
    if all(
        any(c.contains_cell(sigma) for c in carrier.maximal) for sigma, _ in x.cells
    ):
        return x
    items = []
    for sigma, w in x.cells:
        pieces = {}
        for c in carrier.maximal:
            piece = intersect_cells(sigma, c)
            if not piece.is_empty and piece.dim == sigma.dim:
                pieces[piece] = w
        check_cover(sigma, list(pieces))
        items.extend(pieces.items())
    return make_cycle(x.ambient_dim, x.dim, items)


def check_cover(sigma, pieces):
    """Verify that equal-dimensional pieces of sigma tile all of it.

    Pieces must be mutually face-to-face.  An interior facet of the union
    belongs to exactly two pieces; one hit by a single piece that is not on
    the boundary of sigma witnesses a hole.
    """
    if not pieces:
        raise TropicalGeometryError("carrier does not cover cycle")
    if len(pieces) == 1 and pieces[0] == sigma:
        return
    census = {}
    for p in pieces:
        for child, _ in p.facet_cells():
            census[child] = census.get(child, 0) + 1
    boundary = None
    for child, count in census.items():
        if count == 2:
            continue
        if count > 2:
            raise VerificationError("refinement pieces overlap")
        if boundary is None:
            boundary = [fc for fc, _ in sigma.facet_cells()]
        if not any(fc.contains_cell(child) for fc in boundary):
            raise TropicalGeometryError("carrier does not cover cycle")


def refine_complexes(f, g):
    """Common refinement of two complexes on the union of their pieces.

    Returns (complex, pairs) where pairs maps each refined maximal cell to
    one (f cell, g cell) pair containing it.
    """
    items = {}
    for cf in f.maximal:
        for cg in g.maximal:
            piece = intersect_cells(cf, cg)
            if not piece.is_empty:
                items.setdefault(piece, (cf, cg))
    if not items:
        raise TropicalGeometryError("carriers do not overlap")
    maxdim = max(c.dim for c in items)
    kept = {c: p for c, p in items.items() if c.dim == maxdim}
    return Complex(f.ambient_dim, list(kept)), kept


def is_balanced(x):
    """Exact balancing check around every codimension-one cell."""
    if x.is_empty or x.dim == 0:
        return True
    cells = [c for c, _ in x.cells]
    weights = [w for _, w in x.cells]
    n = x.ambient_dim
    for tau, around in facet_data(cells).items():
        total = [0] * n
        for idx, form in around:
            u = lattice_normal(cells[idx], tau, form)
            for i in range(n):
                total[i] += weights[idx] * u[i]
        if not member_of_span(tau.direction_lattice(), tuple(total)):
            return False
    return True


def star(x, tau, point):
    """Star fan of the cycle x at a point in the relative interior of tau."""
    point = tuple(Fraction(v) for v in point)
    if tau.is_empty:
        raise TropicalGeometryError("cannot take the star at the empty cell")
    if not tau.contains_point(point) or tau.face_at(point) != tau:
        raise TropicalGeometryError("point is not in the relative interior of the cell")
    found = False
    items = []
    for sigma, w in x.cells:
        if sigma.contains_cell(tau):
            if is_face(sigma, tau) or sigma == tau:
                found = True
            items.append((star_cell(sigma, point), w))
    if not found:
        raise TropicalGeometryError("cell does not belong to the cycle")
    return make_cycle(x.ambient_dim, x.dim, items)


def stellar_subdivide(x, ray):
    """Subdivide a fan cycle along the ray through `ray`.

    Every cone containing the ray is replaced by the cones spanned by the
    ray together with its facets not containing it; weights, support and
    balancing are unchanged.
    """
    ray = primitive_vector(tuple(int(v) for v in ray))
    if any(not c.is_cone for c, _ in x.cells):
        raise TropicalGeometryError("stellar subdivision requires a fan cycle")
    if not any(c.contains_direction(ray) for c, _ in x.cells):
        raise TropicalGeometryError("ray does not lie in the support")
    items = []
    for sigma, w in x.cells:
        if not sigma.contains_direction(ray) or member_of_span(sigma.lineality, ray):
            items.append((sigma, w))
            continue
        for child, _ in sigma.facet_cells():
            if child.contains_direction(ray):
                continue
            piece = make_cell(
                x.ambient_dim, (), child.rays + (ray,), sigma.lineality
            )
            items.append((piece, w))
    return make_cycle(x.ambient_dim, x.dim, items)


def pushforward_cycle(matrix, x, translation=None, target_dim=None):
    """Push a cycle forward along an integer-affine map.

    Cells whose image drops dimension are discarded; the remaining images
    are refined to a common complex and weighted with lattice indices.
    """
    m = len(matrix) if matrix else target_dim
    if x.is_empty:
        return empty_cycle(m)
    contributions = []
    for sigma, w in x.cells:
        image = map_cell(sigma, matrix, translation)
        if image.dim < sigma.dim:
            continue
        fsub = [
            tuple(vec_dot(row, b) for row in matrix) for b in sigma.direction_lattice()
        ]
        idx = lattice_index(fsub, image.direction_lattice())
        contributions.append((image, w * idx))
    return assemble_cycle(m, x.dim, contributions)


def diagonal_cycle(x):
    """The image of x under v -> (v, v), weights preserved."""
    n = x.ambient_dim
    rows = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    return pushforward_cycle(rows + rows, x, target_dim=2 * n)


def support_covers(x, carrier):
    """True iff the support of x lies inside the support of the carrier."""
    try:
        common_refinement(x, carrier)
        return True
    except TropicalGeometryError:
        return False
