"""Exact integer and rational linear algebra.

All vectors are tuples of ints (lattice vectors) or Fractions (rational
points).  Matrices are tuples of row tuples.  Nothing here ever touches
floating point; every result is exact.
"""

from fractions import Fraction
from math import gcd


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, a):
    return tuple(c * x for x in a)


def vec_neg(a):
    return tuple(-x for x in a)


def vec_dot(a, b):
    total = 0
    for x, y in zip(a, b):
        total += x * y
    return total


def is_zero(a):
    return all(x == 0 for x in a)


def vec_gcd(a):
    g = 0
    for x in a:
        g = gcd(g, abs(x) if isinstance(x, int) else 0)
    return g


def primitive_vector(v):
    """Scale an integer vector down to its primitive representative.

    Raises ValueError on the zero vector.
    """
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in v)


def clear_denominators(v):
    """Return (w, d) with w an integer vector, d > 0 and w == d*v."""
    d = 1
    for x in v:
        if isinstance(x, Fraction):
            den = x.denominator
            d = d * den // gcd(d, den)
    return tuple(int(x * d) for x in v), d


def as_fractions(v):
    return tuple(Fraction(x) for x in v)


# ---------------------------------------------------------------------------
# Hermite normal form


def hnf(rows):
    """Row Hermite normal form with transform.

    Returns (H, U) where H = U * M, U is unimodular, H is in row echelon
    form with positive pivots and entries above each pivot reduced into
    [0, pivot).  Zero rows of H sit at the bottom.  H is the canonical
    representative of the row lattice of M.
    """
    rows = [list(r) for r in rows]
    m = len(rows)
    n = len(rows[0]) if m else 0
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    piv_row = 0
    for col in range(n):
        # find a row at or below piv_row with a nonzero entry in col
        best = None
        for i in range(piv_row, m):
            if rows[i][col] != 0:
                if best is None or abs(rows[i][col]) < abs(rows[best][col]):
                    best = i
        if best is None:
            continue
        rows[piv_row], rows[best] = rows[best], rows[piv_row]
        u[piv_row], u[best] = u[best], u[piv_row]
        # euclidean elimination below the pivot
        while True:
            done = True
            for i in range(piv_row + 1, m):
                if rows[i][col] != 0:
                    q = rows[i][col] // rows[piv_row][col]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[piv_row])]
                    u[i] = [a - q * b for a, b in zip(u[i], u[piv_row])]
                    if rows[i][col] != 0:
                        rows[i], rows[piv_row] = rows[piv_row], rows[i]
                        u[i], u[piv_row] = u[piv_row], u[i]
                        done = False
            if done:
                break
        if rows[piv_row][col] < 0:
            rows[piv_row] = [-a for a in rows[piv_row]]
            u[piv_row] = [-a for a in u[piv_row]]
        p = rows[piv_row][col]
        for i in range(piv_row):
            q = rows[i][col] // p
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[piv_row])]
                u[i] = [a - q * b for a, b in zip(u[i], u[piv_row])]
        piv_row += 1
        if piv_row == m:
            break
    h = tuple(tuple(r) for r in rows)
    return h, tuple(tuple(r) for r in u)


def hnf_basis(rows):
    """Nonzero rows of the HNF: canonical basis of the row lattice."""
    if not rows:
        return ()
    h, _ = hnf(rows)
    return tuple(r for r in h if not is_zero(r))


def rank_int(rows):
    """Rank over Q of a matrix with integer or Fraction entries.

    Fraction-free forward elimination; eliminated rows are divided by
    their gcd to keep entries small.
    """
    mat = []
    for r in rows:
        if all(type(x) is int for x in r):
            row = list(r)
        else:
            row = list(clear_denominators(r)[0])
        if any(row):
            mat.append(row)
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(mat)):
            if mat[i][col]:
                piv = i
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        prow = mat[rank]
        pv = prow[col]
        for i in range(rank + 1, len(mat)):
            v = mat[i][col]
            if v:
                new = [pv * a - v * b for a, b in zip(mat[i], prow)]
                g = 0
                for x in new:
                    g = gcd(g, x)
                    if g == 1:
                        break
                mat[i] = [x // g for x in new] if g > 1 else new
        rank += 1
        if rank == len(mat):
            break
    return rank


def det_int(rows):
    """Determinant of a square integer matrix (Bareiss, fraction free)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = None
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    swap = i
                    break
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Kernels, saturation, solving


def integer_kernel(rows, dim=None):
    """Basis of the saturated lattice {x in Z^dim : M x = 0}.

    `rows` are the rows of M; `dim` is the number of columns (needed when
    `rows` is empty).
    """
    rows = tuple(tuple(r) for r in rows)
    if not rows:
        if dim is None:
            raise ValueError("dim required for empty matrix")
        return tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim))
    # transpose: left kernel of M^T equals right kernel of M
    cols = len(rows[0])
    mt = tuple(tuple(rows[i][j] for i in range(len(rows))) for j in range(cols))
    h, u = hnf(mt)
    out = tuple(u[i] for i in range(len(h)) if is_zero(h[i]))
    return hnf_basis(out) if out else ()


def saturate(rows, dim):
    """Canonical HNF basis of Z^dim intersected with the span of `rows`."""
    rows = [r for r in rows if not is_zero(r)]
    if not rows:
        return ()
    ker = integer_kernel(rows, dim)
    if not ker:
        return tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim))
    return integer_kernel(ker, dim)


def solve_rational(rows, rhs):
    """Solve M x = rhs exactly over the rationals.

    Returns (x, kernel_basis) with x a tuple of Fractions and kernel_basis
    a tuple of rational vectors spanning the solution space of M x = 0, or
    None when the system is inconsistent.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    mat = [list(map(Fraction, rows[i])) + [Fraction(rhs[i])] for i in range(m)]
    piv_cols = []
    rank = 0
    for col in range(n):
        piv = None
        for i in range(rank, m):
            if mat[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for i in range(m):
            if i != rank and mat[i][col] != 0:
                c = mat[i][col]
                mat[i] = [a - c * b for a, b in zip(mat[i], mat[rank])]
        piv_cols.append(col)
        rank += 1
    for i in range(rank, m):
        if mat[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for r, col in enumerate(piv_cols):
        x[col] = mat[r][n]
    free = [c for c in range(n) if c not in piv_cols]
    kernel = []
    for fcol in free:
        v = [Fraction(0)] * n
        v[fcol] = Fraction(1)
        for r, col in enumerate(piv_cols):
            v[col] = -mat[r][fcol]
        kernel.append(tuple(v))
    return tuple(x), tuple(kernel)


def solve_integer(rows, rhs):
    """One integer solution x of M x = rhs, or None if none exists."""
    m = len(rows)
    if m == 0:
        return ()
    n = len(rows[0])
    # row HNF of M^T: H = U * M^T, so M x = rhs becomes H^T z = rhs with
    # x = U^T z; H^T is lower triangular, solve by forward substitution.
    mt = tuple(tuple(rows[i][j] for i in range(m)) for j in range(n))
    h, u = hnf(mt)
    z = [0] * n
    residual = list(rhs)
    for i in range(n):
        col_i = tuple(h[i][j] for j in range(m))
        lead = None
        for j in range(m):
            if col_i[j] != 0:
                lead = j
                break
        if lead is None:
            continue
        if residual[lead] % col_i[lead] != 0:
            return None
        t = residual[lead] // col_i[lead]
        z[i] = t
        residual = [residual[j] - t * col_i[j] for j in range(m)]
    if any(residual):
        return None
    x = [0] * n
    for i in range(n):
        if z[i]:
            for j in range(n):
                x[j] += z[i] * u[i][j]
    return tuple(x)


def member_of_span(rows, v):
    """True iff v lies in the rational span of `rows`."""
    rows = [r for r in rows if not is_zero(r)]
    if not rows:
        return is_zero(v)
    cols = len(v)
    mat = tuple(tuple(rows[i][j] for i in range(len(rows))) for j in range(cols))
    return solve_rational(mat, v) is not None


def lattice_index(sub_basis, basis):
    """Index of the lattice generated by sub_basis inside that of basis.

    Both inputs must be linearly independent families spanning the same
    rational subspace, with the first generating a sublattice of the
    second; otherwise a ValueError is raised.
    """
    sub_basis = tuple(tuple(r) for r in sub_basis)
    basis = tuple(tuple(r) for r in basis)
    if len(sub_basis) != len(basis):
        raise ValueError("sublattice span mismatch")
    r = len(basis)
    if r == 0:
        return 1
    if rank_int(basis) != r or rank_int(sub_basis) != r:
        raise ValueError("lattice bases must be linearly independent")
    cols = len(basis[0])
    mat = tuple(tuple(basis[i][j] for i in range(r)) for j in range(cols))
    coords = []
    for b in sub_basis:
        sol = solve_rational(mat, b)
        if sol is None:
            raise ValueError("sublattice span mismatch")
        coords.append(sol[0])
    det = _det_fraction(coords)
    if det == 0:
        raise ValueError("sublattice span mismatch")
    if det.denominator != 1:
        raise ValueError("first family is not a sublattice of the second")
    return abs(int(det))


def _det_fraction(rows):
    n = len(rows)
    mat = [list(r) for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = None
        for i in range(col, n):
            if mat[i][col] != 0:
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        det *= mat[col][col]
        inv = 1 / mat[col][col]
        for i in range(col + 1, n):
            if mat[i][col] != 0:
                c = mat[i][col] * inv
                mat[i] = [a - c * b for a, b in zip(mat[i], mat[col])]
    return det
