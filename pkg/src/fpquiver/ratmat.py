"""Exact linear algebra over the rationals.

Matrices are lists of rows of Fractions.  Elimination is fraction-free
(Bareiss) on a denominator-cleared copy, so intermediate entries stay
integers of controlled size; kernels, solutions and reduced bases are then
read off the echelon form.
"""

from fractions import Fraction
from math import gcd


def mat(rows):
    """Normalized copy with Fraction entries."""
    return [[Fraction(x) for x in row] for row in rows]


def zeros(r, c):
    return [[Fraction(0)] * c for _ in range(r)]


def identity(n):
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def shape(a):
    return (len(a), len(a[0]) if a else 0)


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def mat_mul(a, b):
    if a and b and len(a[0]) != len(b):
        raise ValueError("shape mismatch in matrix product")
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def mat_eq(a, b):
    return shape(a) == shape(b) and all(
        x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb)
    )


def is_zero(a):
    return all(x == 0 for row in a for x in row)


def _integer_rows(a):
    """Per-row denominator clearing; keeps row space and kernel."""
    out = []
    for row in a:
        d = 1
        for x in row:
            fx = Fraction(x)
            d = d * fx.denominator // gcd(d, fx.denominator)
        out.append([int(Fraction(x) * d) for x in row])
    return out


def echelon(a):
    """Fraction-free row echelon form: (integer matrix, pivot columns).

    Bareiss elimination; the returned rows span the same row space as the
    input and zero rows are trimmed.
    """
    m = _integer_rows(a)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    prev = 1
    for c in range(cols):
        p = None
        for i in range(r, rows):
            if m[i][c] != 0:
                p = i
                break
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m[:r], pivots


def rank(a):
    return len(echelon(a)[1])


def rref(a):
    """Reduced row echelon form over Fractions: (rows, pivot columns)."""
    e, pivots = echelon(a)
    m = mat(e)
    for r in range(len(m) - 1, -1, -1):
        c = pivots[r]
        m[r] = [x / m[r][c] for x in m[r]]
        for i in range(r):
            f = m[i][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
    return m, pivots


def kernel_basis(a, cols=None):
    """Basis of {x : a x = 0} as length-``cols`` vectors."""
    if cols is None:
        cols = len(a[0]) if a else 0
    if not a or cols == 0:
        return identity(cols)
    m, pivots = rref(a)
    free = [c for c in range(cols) if c not in pivots]
    out = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        out.append(v)
    return out


def solve(a, b):
    """One solution of a x = b, or None."""
    cols = len(a[0]) if a else 0
    aug = [list(map(Fraction, row)) + [Fraction(bb)] for row, bb in zip(a, b)]
    if not aug:
        return [Fraction(0)] * cols
    m, pivots = rref(aug)
    x = [Fraction(0)] * cols
    for r, pc in enumerate(pivots):
        if pc == cols:
            return None
        x[pc] = m[r][cols]
    return x


def span_basis(vectors):
    """Reduced basis of the span of the given row vectors."""
    vecs = [v for v in vectors if any(Fraction(x) != 0 for x in v)]
    if not vecs:
        return []
    m, _ = rref(vecs)
    return [row for row in m if any(x != 0 for x in row)]


def in_span(vectors, v):
    base = span_basis(vectors)
    return span_basis(base + [list(v)]) == base or (
        not any(Fraction(x) != 0 for x in v)
    )


def coords_in_span(vectors, v):
    """Coefficients expressing v over the given vectors, or None."""
    if not vectors:
        return [] if all(Fraction(x) == 0 for x in v) else None
    return solve(transpose(mat(vectors)), v)


def sum_spaces(u, v):
    return span_basis(list(u) + list(v))


def intersect_spaces(u, v):
    """Zassenhaus: rref of [[U U],[V 0]]; zero-left rows carry the meet."""
    if not u or not v:
        return []
    n = len(u[0])
    block = [list(row) + list(row) for row in u]
    block += [list(row) + [Fraction(0)] * n for row in v]
    m, _ = rref(block)
    out = []
    for row in m:
        if all(x == 0 for x in row[:n]) and any(x != 0 for x in row[n:]):
            out.append(row[n:])
    return span_basis(out)


def complement_basis(u, n):
    """Coordinate vectors extending span(u) to the full space."""
    base = span_basis(u) if u else []
    out = []
    for c in range(n):
        e = [Fraction(1) if i == c else Fraction(0) for i in range(n)]
        if not in_span(base + out, e):
            out.append(e)
    return out
