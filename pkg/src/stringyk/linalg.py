"""Small exact linear algebra over any field with Python arithmetic.

Works uniformly for Fraction and Cyclo entries; matrices are lists of
row lists.  Sizes here never exceed a few dozen, so plain Gaussian
elimination is all that is needed.
"""

from __future__ import annotations

from fractions import Fraction



def mat_mul(A, B):
    rows, mid, cols = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = A[i][0] * B[0][j]
            for k in range(1, mid):
                acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(A, v):
    out = []
    for row in A:
        acc = row[0] * v[0]
        for k in range(1, len(v)):
            acc = acc + row[k] * v[k]
        out.append(acc)
    return out


def identity_matrix(n: int, one=Fraction(1), zero=Fraction(0)):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_trace(A):
    acc = A[0][0]
    for i in range(1, len(A)):
        acc = acc + A[i][i]
    return acc


def _echelon(rows: list[list], width: int) -> tuple[list[list], list[int]]:
    """In-place reduced row echelon on the first `width` columns; returns pivots."""
    pivots = []
    r = 0
    for col in range(width):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][col].inverse() if hasattr(rows[r][col], "inverse") \
            else 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    return rows, pivots


def rank(A) -> int:
    if not A:
        return 0
    rows = [list(r) for r in A]
    _, pivots = _echelon(rows, len(A[0]))
    return len(pivots)


def kernel_basis(A, zero, one):
    """Basis of the right kernel of A (columns = unknowns)."""
    if not A:
        return []
    ncols = len(A[0])
    rows = [list(r) for r in A]
    rows, pivots = _echelon(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [zero] * ncols
        vec[f] = one
        for i, p in enumerate(pivots):
            vec[p] = -rows[i][f]
        basis.append(vec)
    return basis


def solve(A, b):
    """One solution x of A x = b, or None if inconsistent."""
    if not A:
        return [] if not b else None
    ncols = len(A[0])
    rows = [list(r) + [bv] for r, bv in zip(A, b)]
    rows, pivots = _echelon(rows, ncols)
    zero = b[0] - b[0]
    for i in range(len(pivots), len(rows)):
        if rows[i][ncols]:
            return None
    sol = [zero] * ncols
    for i, p in enumerate(pivots):
        sol[p] = rows[i][ncols]
    return sol


def column_space_basis(columns):
    """A maximal independent subset of the given column vectors (as a list)."""
    if not columns:
        return []
    dim = len(columns[0])
    chosen: list = []
    chosen_echelon: list[list] = []
    for col in columns:
        vec = list(col)
        for row in chosen_echelon:
            lead = next(i for i, x in enumerate(row) if x)
            if vec[lead]:
                f = vec[lead]
                vec = [x - f * y for x, y in zip(vec, row)]
        if any(vec):
            lead = next(i for i, x in enumerate(vec) if x)
            inv = vec[lead].inverse() if hasattr(vec[lead], "inverse") else 1 / vec[lead]
            chosen_echelon.append([x * inv for x in vec])
            chosen.append(list(col))
    return chosen


def coordinates_in_span(basis_columns, target):
    """Coordinates of target in the span of basis columns, or None."""
    if not basis_columns:
        return None if any(target) else []
    A = [[basis_columns[j][i] for j in range(len(basis_columns))]
         for i in range(len(target))]
    return solve(A, list(target))


def restricted_trace(M, subspace_columns):
    """Trace of M on an M-invariant subspace spanned by the given columns.

    Raises ValueError if the subspace is not M-invariant.
    """
    if not subspace_columns:
        zero = M[0][0] - M[0][0] if M else Fraction(0)
        return zero
    images = [mat_vec(M, list(col)) for col in subspace_columns]
    acc = None
    for j, img in enumerate(images):
        coords = coordinates_in_span(subspace_columns, img)
        if coords is None:
            raise ValueError("subspace is not invariant under the operator")
        acc = coords[j] if acc is None else acc + coords[j]
    return acc
