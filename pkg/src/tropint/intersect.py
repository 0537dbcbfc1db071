"""Intersection products, push-forwards and pull-backs of tropical cycles.

The product of two cycles inside an ambient linear space (or star, or
product of such) is computed by crossing them, applying a verified
diagonal representation, and pushing forward along the first projection.
An AmbientContext bundles the ambient cycle with its representation;
product contexts pull the factor representations back along the
coordinate projections.
"""

from .functions import CartierExpression, pullback_function
from .linspace import build_lnk, rewrite_diagonal, star_diagonal
from .polyhedra import (
    TropicalGeometryError,
    VerificationError,
    cross,
    cycles_equal,
    diagonal_cycle,
    empty_cycle,
    pushforward_cycle,
    support_covers,
    vec_dot,
)

_CONTEXT_CACHE = {}


class Morphism:
    """An integer-affine map between ambient spaces of cycles."""

    __slots__ = ("matrix", "translation", "source_dim", "target_dim")

    def __init__(self, matrix, translation=None, source_dim=None):
        self.matrix = tuple(tuple(int(x) for x in row) for row in matrix)
        if self.matrix:
            widths = {len(row) for row in self.matrix}
            if len(widths) != 1:
                raise TropicalGeometryError("matrix rows have unequal length")
            source_dim = widths.pop()
        elif source_dim is None:
            raise TropicalGeometryError("empty matrix needs an explicit source_dim")
        self.source_dim = source_dim
        self.target_dim = len(self.matrix)
        if translation is None:
            translation = (0,) * self.target_dim
        self.translation = tuple(translation)
        if len(self.translation) != self.target_dim:
            raise TropicalGeometryError("translation length must match target")

    def apply(self, point):
        return tuple(
            vec_dot(row, point) + t for row, t in zip(self.matrix, self.translation)
        )

    def __repr__(self):
        return "Morphism(%r, %r)" % (self.matrix, self.translation)


def identity_morphism(n):
    return Morphism([tuple(1 if j == i else 0 for j in range(n)) for i in range(n)])


def projection_morphism(dims, index):
    """Projection of R^{d_0} x ... x R^{d_r} onto its index-th factor."""
    offset = sum(dims[:index])
    total = sum(dims)
    return Morphism(
        [
            tuple(1 if j == offset + i else 0 for j in range(total))
            for i in range(dims[index])
        ]
    )


def diagonal_morphism(n):
    rows = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    return Morphism(rows + rows)


def pushforward(f, x, validate=False, source=None, target=None):
    """Push the cycle x forward along the morphism f.

    Cells mapping to lower dimension are discarded; surviving images carry
    their lattice index as multiplicity.  Optional source/target cycles
    restrict where x and its image may live.
    """
    if not x.is_empty and x.ambient_dim != f.source_dim:
        raise TropicalGeometryError("cycle does not live in the source of the map")
    if validate and source is not None and not support_covers(x, source):
        raise TropicalGeometryError("cycle leaves the declared source support")
    out = pushforward_cycle(
        f.matrix, x, translation=f.translation, target_dim=f.target_dim
    )
    if validate and target is not None and not support_covers(out, target):
        raise TropicalGeometryError("image leaves the declared target support")
    return out


def graph(f, x):
    """The graph of f over the cycle x, inside R^{source} x R^{target}."""
    n = f.source_dim
    rows = [
        tuple(1 if j == i else 0 for j in range(n)) for i in range(n)
    ] + list(f.matrix)
    translation = (0,) * n + f.translation
    return pushforward_cycle(rows, x, translation=translation)


def _pull_expression(expr, matrix):
    pulled = []
    for coeff, factors in expr.terms:
        pulled.append(
            (coeff, [pullback_function(matrix, None, phi) for phi in factors])
        )
    return CartierExpression(pulled)


class AmbientContext:
    """An ambient cycle together with a diagonal representation.

    `stages` is a sequence of Cartier expressions; applying them in order
    to [ambient x ambient] cuts out the diagonal.  Splitting the
    representation into stages keeps products of contexts small: the sum
    over one factor's tuples is collapsed before the next factor's tuples
    are applied.
    """

    __slots__ = ("ambient", "stages", "label", "verified", "_support_ok")

    def __init__(self, ambient, stages, label=None, verify=True):
        self.ambient = ambient
        self.stages = tuple(stages)
        self.label = label
        self.verified = False
        self._support_ok = set()
        if verify:
            self.verify()

    def verify(self):
        got = self.apply_diagonal(cross(self.ambient, self.ambient))
        if not cycles_equal(got, diagonal_cycle(self.ambient)):
            raise VerificationError(
                "ambient context failed its diagonal identity"
            )
        self.verified = True
        return True

    def apply_diagonal(self, z):
        for stage in self.stages:
            z = stage.apply(z)
            if z.is_empty:
                break
        return z

    def covers(self, x):
        if x in self._support_ok:
            return True
        ok = support_covers(x, self.ambient)
        if ok:
            self._support_ok.add(x)
        return ok


def linear_space_context(n, m):
    """Context for the linear space L^n_m inside R^n (cached)."""
    key = ("lnk", n, m)
    got = _CONTEXT_CACHE.get(key)
    if got is None:
        rep = rewrite_diagonal(n, n - m)
        got = AmbientContext(
            build_lnk(n, m), (rep.expression,), label=key, verify=False
        )
        got.verified = rep.verified  # the representation was verified on build
        _CONTEXT_CACHE[key] = got
    return got


def star_context(n, m, tau):
    """Context for the star of L^n_m at one of its cells."""
    key = ("star", n, m, tau.key())
    got = _CONTEXT_CACHE.get(key)
    if got is None:
        rep = star_diagonal(n, m, tau)
        got = AmbientContext(rep.space, (rep.expression,), label=key, verify=False)
        got.verified = rep.verified
        _CONTEXT_CACHE[key] = got
    return got


def product_context(cx, cy, verify=True):
    """Context for the product of two ambient cycles.

    Each factor's stages are pulled back along the corresponding pair of
    coordinate projections of (X x Y) x (X x Y); their concatenation
    represents the diagonal of the product.
    """
    key = None
    if cx.label is not None and cy.label is not None:
        key = ("product", cx.label, cy.label)
        got = _CONTEXT_CACHE.get(key)
        if got is not None:
            if verify and not got.verified:
                got.verify()
            return got
    ax = cx.ambient.ambient_dim
    ay = cy.ambient.ambient_dim
    total = 2 * (ax + ay)

    def proj(offset, count):
        return tuple(
            tuple(1 if j == offset + i else 0 for j in range(total))
            for i in range(count)
        )

    # (u, v, u', v') -> (u, u') and -> (v, v')
    px = proj(0, ax) + proj(ax + ay, ax)
    py = proj(ax, ay) + proj(2 * ax + ay, ay)
    stages = [ _pull_expression(stage, px) for stage in cx.stages ]
    stages += [ _pull_expression(stage, py) for stage in cy.stages ]
    out = AmbientContext(
        cross(cx.ambient, cy.ambient), stages, label=key, verify=verify
    )
    if key is not None:
        _CONTEXT_CACHE[key] = out
    return out


def intersect_cycles(d1, d2, ctx, validate_support=True):
    """The stable intersection of d1 and d2 inside the context's ambient.

    Crosses the cycles, applies the diagonal representation, and pushes
    forward along the first projection.  The result is empty whenever the
    expected dimension dim d1 + dim d2 - dim ambient is negative.
    """
    n = ctx.ambient.ambient_dim
    if d1.is_empty or d2.is_empty:
        return empty_cycle(n)
    if d1.ambient_dim != n or d2.ambient_dim != n:
        raise TropicalGeometryError("cycles do not live in the ambient space")
    if validate_support and not (ctx.covers(d1) and ctx.covers(d2)):
        raise TropicalGeometryError("cycle support leaves the ambient space")
    expected = d1.dim + d2.dim - ctx.ambient.dim
    if expected < 0:
        return empty_cycle(n)
    z = ctx.apply_diagonal(cross(d1, d2))
    rows = tuple(
        tuple(1 if j == i else 0 for j in range(2 * n)) for i in range(n)
    )
    out = pushforward_cycle(rows, z, target_dim=n)
    if not out.is_empty and out.dim != expected:
        raise VerificationError("intersection product has unexpected dimension")
    return out


def pullback_cycle(f, c, ctx_source, ctx_target, validate=True):
    """Pull the cycle c back along f relative to the two contexts.

    Computed as the first projection of Gamma_f . (X x c) inside the
    product context; the expected dimension is
    dim X + dim c - dim Y.
    """
    x = ctx_source.ambient
    y = ctx_target.ambient
    if f.source_dim != x.ambient_dim or f.target_dim != y.ambient_dim:
        raise TropicalGeometryError("morphism does not match the contexts")
    if validate:
        image = pushforward(f, x)
        if not support_covers(image, y):
            raise TropicalGeometryError("morphism does not map source into target")
        if not c.is_empty and not ctx_target.covers(c):
            raise TropicalGeometryError("cycle support leaves the target space")
    prod = product_context(ctx_source, ctx_target, verify=False)
    g = graph(f, x)
    if g.is_empty or c.is_empty:
        return empty_cycle(x.ambient_dim)
    z = intersect_cycles(g, cross(x, c), prod, validate_support=False)
    rows = tuple(
        tuple(1 if j == i else 0 for j in range(x.ambient_dim + y.ambient_dim))
        for i in range(x.ambient_dim)
    )
    return pushforward_cycle(rows, z, target_dim=x.ambient_dim)
