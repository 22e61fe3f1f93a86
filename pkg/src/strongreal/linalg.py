"""Matrix kernels over small finite fields.

Matrices are tuples of tuples of packed field ints and all arithmetic goes
through a GFTable.  Elimination uses a deterministic pivot rule (first
nonzero entry in column order) so ranks, nullspace bases, and inverses are
reproducible.
"""

from __future__ import annotations

from .errors import ZeroInputError
from .fields import GFTable

Matrix = tuple


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero_matrix(rows: int, cols: int) -> Matrix:
    return tuple((0,) * cols for _ in range(rows))


def mat_mul(F: GFTable, A: Matrix, B: Matrix) -> Matrix:
    mul = F.mul
    add = F.add
    Bt = tuple(zip(*B))
    out = []
    for row in A:
        out_row = []
        for col in Bt:
            acc = 0
            for a, b in zip(row, col):
                if a and b:
                    acc = add[acc][mul[a][b]]
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def mat_add(F: GFTable, A: Matrix, B: Matrix) -> Matrix:
    add = F.add
    return tuple(
        tuple(add[a][b] for a, b in zip(ra, rb)) for ra, rb in zip(A, B)
    )


def mat_scale(F: GFTable, c: int, A: Matrix) -> Matrix:
    row = F.mul[c]
    return tuple(tuple(row[a] for a in r) for r in A)


def mat_neg(F: GFTable, A: Matrix) -> Matrix:
    neg = F.neg
    return tuple(tuple(neg[a] for a in r) for r in A)


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A))


def conj_matrix(F: GFTable, A: Matrix) -> Matrix:
    conj = F.conj
    return tuple(tuple(conj[a] for a in r) for r in A)


def conj_transpose(F: GFTable, A: Matrix) -> Matrix:
    conj = F.conj
    return tuple(tuple(conj[a] for a in col) for col in zip(*A))


def mat_pow(F: GFTable, A: Matrix, k: int) -> Matrix:
    out = identity(len(A))
    base = A
    while k:
        if k & 1:
            out = mat_mul(F, out, base)
        base = mat_mul(F, base, base)
        k >>= 1
    return out


def _eliminate(F: GFTable, rows):
    """Row reduce in place; returns ordered list of (pivot_row, pivot_col)."""
    add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = inv[rows[r][c]]
        if pv != 1:
            prow = mul[pv]
            rows[r] = [prow[x] for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                factor = neg[rows[i][c]]
                frow = mul[factor]
                src = rows[r]
                dst = rows[i]
                rows[i] = [add[dst[j]][frow[src[j]]] for j in range(n)]
        pivots.append((r, c))
        r += 1
        if r == m:
            break
    return pivots


def mat_rank(F: GFTable, A) -> int:
    rows = [list(r) for r in A]
    if not rows:
        return 0
    return len(_eliminate(F, rows))


def nullspace(F: GFTable, A):
    """Basis of {x : A x = 0}, deterministic order (one vector per free col)."""
    rows = [list(r) for r in A]
    if not rows:
        return []
    n = len(rows[0])
    pivots = _eliminate(F, rows)
    pivot_cols = {c: r for r, c in pivots}
    neg = F.neg
    basis = []
    for free in range(n):
        if free in pivot_cols:
            continue
        vec = [0] * n
        vec[free] = 1
        for c, r in pivot_cols.items():
            vec[c] = neg[rows[r][free]]
        basis.append(tuple(vec))
    return basis


def mat_inv(F: GFTable, A: Matrix) -> Matrix:
    n = len(A)
    rows = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(A)]
    pivots = _eliminate(F, rows)
    if sum(1 for _, c in pivots if c < n) < n:
        raise ZeroInputError("matrix is singular")
    return tuple(tuple(rows[i][n:]) for i in range(n))


def mat_det(F: GFTable, A: Matrix) -> int:
    add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    rows = [list(r) for r in A]
    n = len(rows)
    det = 1
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, n) if rows[i][c]), None)
        if pivot is None:
            return 0
        if pivot != r:
            rows[r], rows[pivot] = rows[pivot], rows[r]
            det = neg[det]
        det = mul[det][rows[r][c]]
        pv = inv[rows[r][c]]
        prow = mul[pv]
        rows[r] = [prow[x] for x in rows[r]]
        for i in range(r + 1, n):
            if rows[i][c]:
                factor = neg[rows[i][c]]
                frow = mul[factor]
                src = rows[r]
                rows[i] = [add[rows[i][j]][frow[src[j]]] for j in range(n)]
        r += 1
    return det


def is_hermitian(F: GFTable, J: Matrix) -> bool:
    return conj_transpose(F, J) == J


def is_unitary(F: GFTable, g: Matrix, J: Matrix) -> bool:
    return mat_mul(F, mat_mul(F, conj_transpose(F, g), J), g) == J


# ---------------------------------------------------------------------------
# characteristic polynomial, exact over any characteristic


def charpoly(F: GFTable, A: Matrix):
    """Monic characteristic polynomial det(tI - A), low-degree coefficients.

    Returns (c_0, ..., c_(n-1)); the leading 1 is implicit.  Uses a memoized
    Laplace expansion over column subsets, fine for the small n used here.
    """
    n = len(A)
    add, mul, neg = F.add, F.mul, F.neg

    def padd(a, b):
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = add[out[i]][x]
        return tuple(out)

    def pmul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                row = mul[x]
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add[out[i + j]][row[y]]
        return tuple(out)

    def pneg(a):
        return tuple(neg[x] for x in a)

    # entry (i, j) of tI - A as a linear polynomial
    ent = [
        [(neg[A[i][j]], 1 if i == j else 0) for j in range(n)] for i in range(n)
    ]
    memo = {0: (1,)}

    def det(mask):
        got = memo.get(mask)
        if got is not None:
            return got
        cols = [j for j in range(n) if mask >> j & 1]
        row = n - len(cols)
        acc = (0,)
        for pos, j in enumerate(cols):
            term = pmul(ent[row][j], det(mask & ~(1 << j)))
            acc = padd(acc, term if pos % 2 == 0 else pneg(term))
        memo[mask] = acc
        return acc

    full = det((1 << n) - 1)
    full = full + (0,) * (n + 1 - len(full))
    assert full[n] == 1
    return tuple(full[:n])
