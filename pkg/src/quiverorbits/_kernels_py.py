"""Pure-Python mod-p elimination kernels; same contract as the compiled ``_kernels``."""

import numpy as np


def rref_mod_p(a, p):
    """
    Reduced row echelon form of an integer matrix over F_p.

    Returns ``(r, pivots)`` where ``r`` is an int64 array with entries in
    ``[0, p)`` and ``pivots`` lists the pivot column of each nonzero row.
    """
    rows = [[int(x) % p for x in row] for row in np.asarray(a).tolist()]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else np.asarray(a).shape[1]
    pivots = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        piv = None
        for k in range(r, nrows):
            if rows[k][col]:
                piv = k
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], p - 2, p)
        prow = [(x * inv) % p for x in rows[r]]
        rows[r] = prow
        for k in range(nrows):
            if k != r:
                f = rows[k][col]
                if f:
                    rk = rows[k]
                    rows[k] = [(x - f * y) % p for x, y in zip(rk, prow)]
        pivots.append(col)
        r += 1
    out = np.array(rows, dtype=np.int64).reshape(nrows, ncols)
    return out, tuple(pivots)


def rank_mod_p(a, p):
    rows = [[int(x) % p for x in row] for row in np.asarray(a).tolist()]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = None
        for k in range(rank, len(rows)):
            if rows[k][col]:
                piv = k
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        inv = pow(prow[col], p - 2, p)
        for k in range(rank + 1, len(rows)):
            f = rows[k][col]
            if f:
                f = (f * inv) % p
                rows[k] = [(x - f * y) % p for x, y in zip(rows[k], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank
