"""Tropical linear spaces, their diagonal refinements and rewritings.

L^n_k is the k-dimensional fan on the rays -e_0, ..., -e_n (with
e_0 = -e_1 - ... - e_n), all weights one.  F^n_k refines L^n_k x L^n_k so
that the diagonal becomes a subfan; its rays are named by symbols

    T_i = (-e_i | 0)    A = T_0
    B_i = (0 | -e_i)    B = B_0
    D_i = (-e_i | -e_i) D = D_0

and every cone is the span of a set of symbol rays.  The rewriting
procedure expresses the diagonal of L^n_m as a sum of products of m ray
function combinations applied to [L^n_m x L^n_m]; each emitted
representation is re-verified by direct divisor computation, which is the
source of truth.
"""

from itertools import combinations
from math import comb

from .functions import CartierExpression, ray_function
from .polyhedra import (
    Complex,
    TropicalGeometryError,
    VerificationError,
    common_refinement,
    cone_from_generators,
    cross,
    cycles_equal,
    diagonal_cycle,
    is_face,
    localize_complex,
    make_cell,
    make_cycle,
)

_LNK_CACHE = {}
_FNK_CACHE = {}
_REWRITE_CACHE = {}


def neg_e(n, i):
    """-e_i in R^n, where e_0 = -e_1 - ... - e_n."""
    if i == 0:
        return (1,) * n
    return tuple(-1 if j == i - 1 else 0 for j in range(n))


def symbol_ray(n, sym):
    """The ray of R^{2n} a symbol stands for."""
    kind, i = sym
    zero = (0,) * n
    if kind == "T":
        return neg_e(n, i) + zero
    if kind == "B":
        return zero + neg_e(n, i)
    if kind == "D":
        return neg_e(n, i) + neg_e(n, i)
    raise ValueError("unknown symbol %r" % (sym,))


def symbol_name(sym):
    kind, i = sym
    if sym == ("T", 0):
        return "A"
    if sym == ("B", 0):
        return "B"
    if sym == ("D", 0):
        return "D"
    return "%s%d" % (kind, i)


def parse_symbol(name):
    if name == "A":
        return ("T", 0)
    if name == "B":
        return ("B", 0)
    if name == "D":
        return ("D", 0)
    if name[:1] in ("T", "B", "D") and name[1:].isdigit():
        return (name[0], int(name[1:]))
    raise TropicalGeometryError("unknown symbol name %r" % (name,))


def _display_rank(sym):
    kind, i = sym
    if kind == "T" and i > 0:
        return (0, i)
    if sym == ("B", 0):
        return (1, 0)
    if kind == "B":
        return (2, i)
    if sym == ("T", 0):
        return (3, 0)
    return (4, i)


def combination_name(combo):
    """Readable form of an integer combination of symbols."""
    parts = []
    for sym in sorted(combo, key=_display_rank):
        c = combo[sym]
        if c == 0:
            continue
        name = symbol_name(sym)
        if c == 1:
            parts.append("+" + name)
        elif c == -1:
            parts.append("-" + name)
        else:
            parts.append("%+d%s" % (c, name))
    if not parts:
        return "0"
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out


def rn_cycle(n):
    """[R^n] with weight one."""
    return make_cycle(
        n,
        n,
        [
            (
                make_cell(
                    n,
                    vertices=[(0,) * n],
                    lineality=[
                        tuple(1 if i == j else 0 for j in range(n)) for i in range(n)
                    ],
                ),
                1,
            )
        ],
    )


def build_lnk(n, k):
    """The tropical linear space L^n_k as a weight-one fan cycle."""
    if not 0 <= k <= n:
        raise TropicalGeometryError("need 0 <= k <= n")
    got = _LNK_CACHE.get((n, k))
    if got is not None:
        return got
    rays = [neg_e(n, i) for i in range(n + 1)]
    cells = [
        (cone_from_generators(n, [rays[i] for i in subset]), 1)
        for subset in combinations(range(n + 1), k)
    ]
    out = make_cycle(n, k, cells)
    _LNK_CACHE[(n, k)] = out
    return out


def build_fnk(n, k):
    """The refinement F^n_k of L^n_k x L^n_k, as a complex of symbol cones.

    Cones containing both T_i and B_i for some i are recursively split
    along D_i; the result is simplicial and unimodular with the diagonal
    as a subfan.
    """
    if not 0 <= k <= n:
        raise TropicalGeometryError("need 0 <= k <= n")
    got = _FNK_CACHE.get((n, k))
    if got is not None:
        return got
    final = set()
    for isub in combinations(range(n + 1), k):
        for jsub in combinations(range(n + 1), k):
            stack = [frozenset({("T", i) for i in isub} | {("B", j) for j in jsub})]
            while stack:
                s = stack.pop()
                pair = next(
                    (i for i in range(n + 1) if ("T", i) in s and ("B", i) in s),
                    None,
                )
                if pair is None:
                    final.add(s)
                else:
                    stack.append(s - {("T", pair)} | {("D", pair)})
                    stack.append(s - {("B", pair)} | {("D", pair)})
    cones = [
        cone_from_generators(2 * n, [symbol_ray(n, sym) for sym in s]) for s in final
    ]
    out = Complex(2 * n, cones)
    _FNK_CACHE[(n, k)] = out
    return out


def fnk_cycle(n, k):
    """F^n_k with weight one on every maximal cone."""
    return make_cycle(
        2 * n, 2 * k, [(c, 1) for c in build_fnk(n, k).maximal]
    )


def symbol_function(n, combo):
    """Integer combination of symbol ray functions on F^n_n."""
    fan = build_fnk(n, n)
    values = {symbol_ray(n, sym): c for sym, c in combo.items()}
    return ray_function(fan, values)


def diagonal_divisors_rn(n, k):
    """The product (T_1+B) ... (T_n+B) (A+D)^k on F^n_n.

    Applied to [F^n_n] it yields the diagonal of L^n_{n-k}.
    """
    if not 0 <= k <= n:
        raise TropicalGeometryError("need 0 <= k <= n")
    factors = [
        symbol_function(n, {("T", i): 1, ("B", 0): 1}) for i in range(1, n + 1)
    ]
    factors.extend(
        symbol_function(n, {("T", 0): 1, ("D", 0): 1}) for _ in range(k)
    )
    return CartierExpression([(1, factors)])


class DiagonalRepresentation:
    """A verified representation of a diagonal as sums of divisor products.

    `tuples` is a sequence of (coefficient, factor combinations) where each
    factor combination maps symbols to integers; `expression` carries the
    corresponding PL functions.  Applying the expression to `base`
    (by default [space x space]) reproduces diagonal_cycle(space) exactly.
    The full product form uses the complete fan [R^n x R^n] as its base.
    """

    __slots__ = (
        "n", "space_dim", "tuples", "expression", "space", "base", "verified",
    )

    def __init__(self, n, space_dim, tuples, expression, space, base=None):
        self.n = n
        self.space_dim = space_dim
        self.tuples = tuples
        self.expression = expression
        self.space = space
        self.base = base
        self.verified = False

    def verify(self):
        product = self.base
        if product is None:
            product = cross(self.space, self.space)
        got = self.expression.apply(product)
        expect = diagonal_cycle(self.space)
        if not cycles_equal(got, expect):
            raise VerificationError(
                "diagonal representation failed its defining identity"
            )
        self.verified = True
        return True

    def describe(self):
        lines = []
        for coeff, factors in self.tuples:
            names = " * ".join("(%s)" % combination_name(f) for f in factors) or "1"
            lines.append("%+d %s" % (coeff, names))
        return lines


def rewrite_diagonal(n, k):
    """Rewrite the diagonal of L^n_{n-k} over [L^n_{n-k} x L^n_{n-k}].

    Expands (T_1+B)...(T_n+B)(A+D)^k, deletes monomials that vanish by the
    relations between the symbol divisors, and factors (B+D)^k out of each
    surviving monomial, processing correction terms in increasing (A+D)
    degree.  Emits tuples of n-k factor combinations whose weighted sum
    applied to [L^n_{n-k} x L^n_{n-k}] is the diagonal; the identity is
    re-verified numerically before the representation is returned.
    """
    if not 0 <= k <= n:
        raise TropicalGeometryError("need 0 <= k <= n")
    got = _REWRITE_CACHE.get((n, k))
    if got is not None:
        return got
    c = n - k
    space = build_lnk(n, c)
    if c == 0:
        rep = DiagonalRepresentation(
            n, 0, ((1, ()),), CartierExpression([(1, ())]), space
        )
        rep.verify()
        _REWRITE_CACHE[(n, k)] = rep
        return rep
    # states (S, s, t): the monomial T_S B^s (A+D)^{t+k}, |S| + s + t = n;
    # monomials with more than n-k distinct T/D factors already vanish
    states = {}
    for size in range(c + 1):
        for s_set in combinations(range(1, n + 1), size):
            states[(frozenset(s_set), n - size, 0)] = 1
    emitted = []
    for t in range(n + 1):
        layer = sorted(
            (key for key in states if key[2] == t),
            key=lambda key: (sorted(key[0]), key[1]),
        )
        for key in layer:
            alpha = states.pop(key)
            if alpha == 0:
                continue
            s_set, s, tt = key
            if s < k:
                continue  # vanishing monomial, nothing to emit or correct
            factors = (
                [{("T", i): 1} for i in sorted(s_set)]
                + [{("B", 0): 1}] * (s - k)
                + [{("T", 0): 1, ("D", 0): 1}] * tt
            )
            emitted.append((alpha, tuple(factors)))
            for sp in range(1, k + 1):
                if s - sp < k:
                    break  # the remaining corrections vanish by the relations
                nk = (s_set, s - sp, tt + sp)
                states[nk] = states.get(nk, 0) - alpha * comb(k, sp)
    if c == 1:
        merged = {}
        for alpha, factors in emitted:
            for sym, coeff in factors[0].items():
                merged[sym] = merged.get(sym, 0) + alpha * coeff
        merged = {sym: coeff for sym, coeff in merged.items() if coeff}
        tuples = ((1, (merged,)),)
    else:
        tuples = tuple(
            (alpha, tuple(dict(f) for f in factors)) for alpha, factors in emitted
        )
    expression = CartierExpression(
        [
            (alpha, [symbol_function(n, f) for f in factors])
            for alpha, factors in tuples
        ]
    )
    rep = DiagonalRepresentation(n, c, tuples, expression, space)
    rep.verify()
    _REWRITE_CACHE[(n, k)] = rep
    return rep


def relations_check(n, m, c_cycle, which, vs=(), s=0):
    """Check one of the vanishing relations on C x [R^n], C inside L^n_m.

    which = 'a': A . B . (C x R^n)
    which = 'b': v_1 ... v_{m+r} . (C x R^n), r > 0 distinct v's from
                 {T_1, ..., T_n, D}
    which = 'c': B . D^s . v_1 ... v_{m-s+r} . (C x R^n), r, s > 0
    Returns True iff the product is the empty cycle.
    """
    vs = tuple(tuple(v) for v in vs)
    allowed = {("T", i) for i in range(1, n + 1)} | {("D", 0)}
    if which in ("b", "c"):
        if len(set(vs)) != len(vs) or not set(vs) <= allowed:
            raise TropicalGeometryError("v's must be distinct T_1..T_n or D")
    if c_cycle.is_empty:
        return True
    if not 0 <= m <= n:
        raise TropicalGeometryError("need 0 <= m <= n")
    common_refinement(c_cycle, build_lnk(n, m).complex())  # support check
    if which == "a":
        factors = [{("T", 0): 1}, {("B", 0): 1}]
    elif which == "b":
        if len(vs) <= m:
            raise TropicalGeometryError("relation (b) needs more than m factors")
        factors = [{v: 1} for v in vs]
    elif which == "c":
        if s < 1:
            raise TropicalGeometryError("relation (c) needs s > 0")
        if len(vs) <= m - s:
            raise TropicalGeometryError("relation (c) needs more than m-s v factors")
        factors = [{("B", 0): 1}] + [{("D", 0): 1}] * s + [{v: 1} for v in vs]
    else:
        raise TropicalGeometryError("relation must be one of 'a', 'b', 'c'")
    expr = CartierExpression(
        [(1, [symbol_function(n, f) for f in factors])]
    )
    return expr.apply(cross(c_cycle, rn_cycle(n))).is_empty


def star_diagonal(n, k, tau):
    """Diagonal representation for the star of L^n_k at a cell tau.

    The rewriting tuples for the diagonal of L^n_k are restricted to the
    star: each factor keeps its covectors on the cones of F^n_n around
    (x, x) for a relative interior point x of tau.  The restricted identity
    is verified against the diagonal of the star fan before returning.
    """
    from .functions import PLFunction
    from .polyhedra import star

    space = build_lnk(n, k)
    if tau.is_empty or not any(
        sigma == tau or is_face(sigma, tau) for sigma, _ in space.cells
    ):
        raise TropicalGeometryError("tau is not a cell of the linear space")
    base = rewrite_diagonal(n, n - k)
    x = tau.relint_point()
    star_space = star(space, tau, x)
    if tau.dim == 0:
        rep = DiagonalRepresentation(
            n, k, base.tuples, base.expression, star_space
        )
        rep.verify()
        return rep
    point = tuple(x) + tuple(x)
    fan = build_fnk(n, n)
    local, pairs = localize_complex(fan, point)
    transported = {cell: orig for cell, orig in pairs}

    def restrict(phi):
        cells = []
        forms = []
        for cell in local.maximal:
            cov, _ = phi.form_on(transported[cell])
            cells.append(cell)
            forms.append((cov, 0))
        return PLFunction(cells, forms)

    expression = CartierExpression(
        [
            (alpha, [restrict(phi) for phi in phis])
            for alpha, phis in base.expression.terms
        ]
    )
    rep = DiagonalRepresentation(n, k, base.tuples, expression, star_space)
    rep.verify()
    return rep
