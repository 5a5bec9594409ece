"""Dense exact linear algebra over Q.

Small systems only (a few dozen unknowns); all entries are ``Fraction``.
"""
from __future__ import annotations

from fractions import Fraction


def rref(rows, ncols):
    """Reduced row echelon form of an augmented matrix, in place.

    ``rows`` are lists of length ``ncols + 1`` (last column is the right-hand
    side).  Returns the list of pivot columns.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = 1 / Fraction(prow[c])
        if inv != 1:
            for j in range(c, ncols + 1):
                if prow[j]:
                    prow[j] *= inv
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for j in range(c, ncols + 1):
                        if prow[j]:
                            row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


class Solution:
    """Affine solution set ``x0 + span(kernel)`` of a linear system."""

    def __init__(self, particular, kernel, rank):
        self.particular = particular
        self.kernel = kernel
        self.rank = rank

    @property
    def dim(self):
        return len(self.kernel)


def solve(A, b):
    """Solve ``A x = b`` exactly.

    Returns ``(solution or None, rank of A)``; ``None`` means inconsistent.
    """
    ncols = len(A[0]) if A else 0
    rows = [[Fraction(v) for v in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    pivots = rref(rows, ncols)
    rank = len(pivots)
    for row in rows[rank:]:
        if row[ncols] != 0:
            return None, rank
    x0 = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x0[c] = rows[i][ncols]
    pivset = set(pivots)
    kernel = []
    for f in range(ncols):
        if f in pivset:
            continue
        k = [Fraction(0)] * ncols
        k[f] = Fraction(1)
        for i, c in enumerate(pivots):
            k[c] = -rows[i][f]
        kernel.append(k)
    return Solution(x0, kernel, rank), rank


def rank(A):
    if not A:
        return 0
    ncols = len(A[0])
    rows = [[Fraction(v) for v in row] + [Fraction(0)] for row in A]
    return len(rref(rows, ncols))


def strict_feasible_point(constraints, nvars):
    """Find ``t`` with ``a . t + c > 0`` for every ``(a, c)``, or ``None``.

    Fourier-Motzkin elimination; fine for the handful of variables that
    show up as deformation parameters.
    """
    cons = [([Fraction(x) for x in a], Fraction(c)) for a, c in constraints]
    return _fm(cons, nvars)


def _fm(cons, nvars):
    if nvars == 0:
        return [] if all(c > 0 for _, c in cons) else None
    k = nvars - 1
    lower, upper, rest = [], [], []
    for a, c in cons:
        if a[k] > 0:
            lower.append((a, c))
        elif a[k] < 0:
            upper.append((a, c))
        else:
            rest.append((a[:k], c))
    # a_k t_k > -(a'.t' + c)  gives a lower bound, and symmetrically
    for al, cl in lower:
        for au, cu in upper:
            sl, su = al[k], -au[k]
            combined = [al[j] * su + au[j] * sl for j in range(k)]
            rest.append((combined, cl * su + cu * sl))
    sub = _fm(rest, k)
    if sub is None:
        return None
    lo = hi = None
    for a, c in lower:
        v = -(sum(a[j] * sub[j] for j in range(k)) + c) / a[k]
        lo = v if lo is None else max(lo, v)
    for a, c in upper:
        v = (sum(a[j] * sub[j] for j in range(k)) + c) / (-a[k])
        hi = v if hi is None else min(hi, v)
    if lo is None and hi is None:
        tk = Fraction(0)
    elif hi is None:
        tk = lo + 1
    elif lo is None:
        tk = hi - 1
    else:
        tk = (lo + hi) / 2
    return sub + [tk]
