"""Exact linear algebra over Z and Q on plain lists of lists."""

from __future__ import annotations

from fractions import Fraction


def smith_normal_form(matrix, with_left: bool = False):
    """Diagonal of the Smith normal form of an integer matrix.

    Returns the nonzero invariant factors ``d_1 | d_2 | ... | d_r`` (all
    positive).  With ``with_left=True`` also returns a unimodular ``U`` such
    that ``U @ A`` has its last ``len(A) - r`` rows equal to zero; those rows
    of ``U`` span the integer left kernel of ``A``.
    """
    a = [[int(x) for x in row] for row in matrix]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    U = [[int(i == j) for j in range(nr)] for i in range(nr)] if with_left else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        ra, rs = a[dst], a[src]
        for k in range(nc):
            if rs[k]:
                ra[k] += q * rs[k]
        if U is not None:
            ua, us = U[dst], U[src]
            for k in range(nr):
                if us[k]:
                    ua[k] += q * us[k]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]

    def add_col(dst, src, q):
        for row in a:
            if row[src]:
                row[dst] += q * row[src]

    diag = []
    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            changed = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            p = a[t][t]
            bad = next((i for i in range(t + 1, nr) if any(a[i][j] % p for j in range(t + 1, nc))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        diag.append(a[t][t])
        t += 1
    if with_left:
        return diag, U
    return diag


def integer_left_kernel(matrix, ncols: int | None = None) -> list:
    """A Z-basis of ``{x in Z^m : x A = 0}`` for an ``m x n`` integer matrix ``A``."""
    m = len(matrix)
    if m == 0:
        return []
    if (ncols if ncols is not None else len(matrix[0])) == 0:
        return [[int(i == j) for j in range(m)] for i in range(m)]
    diag, U = smith_normal_form(matrix, with_left=True)
    return [U[i] for i in range(len(diag), m)]


def quotient_invariants(relations, nbasis: int):
    """Invariant factors of ``Z^nbasis / rowspan(relations)``.

    Torsion factors (>= 2) come first in divisibility order, followed by one
    ``0`` per free summand.
    """
    rows = [r for r in relations if any(r)]
    diag = smith_normal_form(rows) if rows else []
    torsion = [d for d in diag if d > 1]
    return torsion + [0] * (nbasis - len(diag))


def rational_row_echelon(rows):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rational_rank(rows) -> int:
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    return len(rational_row_echelon(rows)[1])


def spans_everything(rows, ncols: int, integral: bool) -> bool:
    """Whether ``rows`` span ``Z^ncols`` (integral) or ``Q^ncols``."""
    if ncols == 0:
        return True
    rows = [r for r in rows if any(r)]
    if integral:
        if not rows:
            return False
        diag = smith_normal_form(rows)
        return len(diag) == ncols and all(d == 1 for d in diag)
    return rational_rank(rows) == ncols
