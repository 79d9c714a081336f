"""Dense exact linear algebra over the rationals.

Matrices are lists of row lists of Fraction, vectors are lists of Fraction.
Sizes in this package stay in the low hundreds, so the plain Gauss-Jordan
kernel below is fast enough and keeps every result exact.
"""

from fractions import Fraction

F0 = Fraction(0)
F1 = Fraction(1)


def zeros(rows, cols):
    return [[F0] * cols for _ in range(rows)]


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = F1
    return m


def mat_copy(a):
    return [row[:] for row in a]


def transpose(a):
    if not a:
        return []
    return [[a[i][j] for i in range(len(a))] for j in range(len(a[0]))]


def mat_mul(a, b):
    n, k = len(a), len(b)
    cols = len(b[0]) if b else 0
    out = zeros(n, cols)
    for i in range(n):
        arow = a[i]
        orow = out[i]
        for t in range(k):
            c = arow[t]
            if c:
                brow = b[t]
                for j in range(cols):
                    if brow[j]:
                        orow[j] += c * brow[j]
    return out


def mat_vec(a, v):
    out = []
    for row in a:
        s = F0
        for c, x in zip(row, v):
            if c and x:
                s += c * x
        out.append(s)
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[c * x for x in row] for row in a]


def mat_eq(a, b):
    return a == b


def mat_is_zero(a):
    return all(all(x == 0 for x in row) for row in a)


def vec_add(u, v):
    return [x + y for x, y in zip(u, v)]


def vec_sub(u, v):
    return [x - y for x, y in zip(u, v)]


def vec_scale(u, c):
    return [c * x for x in u]


def vec_is_zero(u):
    return all(x == 0 for x in u)


def vec_dot(u, v):
    s = F0
    for x, y in zip(u, v):
        if x and y:
            s += x * y
    return s


def rref(a):
    """Reduced row echelon form.  Returns (matrix, pivot column list)."""
    m = [list(map(Fraction, row)) for row in a]
    if not m:
        return m, []
    rows, cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if m[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = F1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a):
    return len(rref(a)[1])


def nullspace(a):
    """Basis of the right nullspace, one vector per free column."""
    if not a:
        return []
    cols = len(a[0])
    r, pivots = rref(a)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [F0] * cols
        v[fc] = F1
        for i, pc in enumerate(pivots):
            v[pc] = -r[i][fc]
        basis.append(v)
    return basis


def solve(a, b):
    """One solution of a x = b, or None if the system is inconsistent."""
    sols = solve_matrix(a, [[x] for x in b])
    if sols is None:
        return None
    return [row[0] for row in sols]


def solve_matrix(a, b):
    """One solution X of a X = b for a matrix right-hand side, or None."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    nrhs = len(b[0]) if b else 0
    aug = [list(a[i]) + list(b[i]) for i in range(rows)]
    r, pivots = rref(aug)
    for i in range(len(pivots)):
        if pivots[i] >= cols:
            return None
    # rows beyond the pivot rows must be entirely zero on the rhs too
    for i in range(len(pivots), rows):
        if any(r[i][cols + j] != 0 for j in range(nrhs)):
            return None
    x = zeros(cols, nrhs)
    for i, pc in enumerate(pivots):
        for j in range(nrhs):
            x[pc][j] = r[i][cols + j]
    return x


def column_stack(blocks):
    """Concatenate matrices horizontally (same row count)."""
    blocks = [b for b in blocks if b and b[0]]
    if not blocks:
        return []
    rows = len(blocks[0])
    out = []
    for i in range(rows):
        row = []
        for b in blocks:
            row.extend(b[i])
        out.append(row)
    return out
