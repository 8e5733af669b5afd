"""
Exact linear algebra over Q and F_p.

Matrices are sequences of rows.  Over F_p entries are ints in ``[0, p)``; over
Q they are ``Fraction`` (or int).  Rank and row reduction over F_p go through
the compiled kernel when it is importable, otherwise through the pure-Python
fallback; set ``QUIVERORBITS_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels_py

__all__ = [
    "FieldSpec", "QQ", "GF", "rank", "rref", "nullspace", "left_nullspace",
    "matmul", "zeros", "identity", "backend", "use_backend", "is_prime",
]


def _load_compiled():
    try:
        from . import _kernels
    except ImportError:
        return None
    return _kernels


_compiled = None if os.environ.get("QUIVERORBITS_PURE") else _load_compiled()
_kernels = _compiled or _kernels_py


def backend() -> str:
    return "cython" if _kernels is not _kernels_py else "python"


def use_backend(name: str) -> None:
    """Switch the mod-p kernel between ``"cython"`` and ``"python"``."""
    global _kernels
    if name == "python":
        _kernels = _kernels_py
    elif name == "cython":
        compiled = _compiled or _load_compiled()
        if compiled is None:
            raise RuntimeError("compiled kernel is not built")
        _kernels = compiled
    else:
        raise ValueError(f"unknown backend {name!r}")


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str            # "rationals" | "prime_field"
    characteristic: int  # 0 for rationals

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise ValueError("the rationals have characteristic 0")
        elif self.kind == "prime_field":
            if not is_prime(self.characteristic):
                raise ValueError(f"{self.characteristic} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def p(self) -> int:
        return self.characteristic

    @property
    def is_finite(self) -> bool:
        return self.characteristic > 0

    def __call__(self, x):
        """Coerce an integer or rational into the field."""
        if self.characteristic:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return int(x) % self.p
        return Fraction(x)

    def inv(self, x):
        if self.characteristic:
            return pow(x, -1, self.p)
        return 1 / Fraction(x)

    def __str__(self) -> str:
        return f"GF({self.p})" if self.characteristic else "QQ"


QQ = FieldSpec("rationals", 0)


def GF(p: int) -> FieldSpec:
    return FieldSpec("prime_field", p)


def zeros(m: int, n: int, field: FieldSpec):
    z = field(0)
    return tuple(tuple(z for _ in range(n)) for _ in range(m))


def identity(n: int, field: FieldSpec):
    return tuple(tuple(field(int(i == j)) for j in range(n)) for i in range(n))


def matmul(a, b, field: FieldSpec, ncols: int | None = None):
    """``a @ b``; pass ``ncols`` when ``b`` may have no rows."""
    if ncols is None:
        ncols = len(b[0]) if b else 0
    rows = []
    for row in a:
        out = []
        for j in range(ncols):
            s = 0
            for k, x in enumerate(row):
                if x:
                    s += x * b[k][j]
            out.append(s % field.p if field.p else Fraction(s))
        rows.append(tuple(out))
    return tuple(rows)


def _as_int_rows(mat: Sequence[Sequence[Fraction]]):
    rows = []
    for row in mat:
        den = 1
        for x in row:
            den = den * Fraction(x).denominator // _gcd(den, Fraction(x).denominator)
        rows.append([int(Fraction(x) * den) for x in row])
    return rows


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _bareiss_rank(rows: list[list[int]]) -> int:
    # fraction-free elimination: every intermediate entry stays an integer
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((k for k in range(rank, nrows) if m[k][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pr = m[rank]
        for k in range(rank + 1, nrows):
            rk = m[k]
            m[k] = [(pr[col] * rk[j] - rk[col] * pr[j]) // prev for j in range(ncols)]
        prev = pr[col]
        rank += 1
        if rank == nrows:
            break
    return rank


def rank(mat, field: FieldSpec) -> int:
    if len(mat) == 0 or len(mat[0]) == 0:
        return 0
    if field.characteristic:
        return int(_kernels.rank_mod_p(np.asarray(mat, dtype=np.int64), field.p))
    return _bareiss_rank(_as_int_rows(mat))


def _rref_rational(mat, ncols):
    rows = [[Fraction(x) for x in row] for row in mat]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((k for k in range(r, len(rows)) if rows[k][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col] != 0:
                f = rows[k][col]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows], tuple(pivots)


def rref(mat, ncols: int, field: FieldSpec):
    """Return ``(rows, pivots)``; ``rows`` holds only the nonzero rows."""
    if len(mat) == 0 or ncols == 0:
        return [], ()
    if field.characteristic:
        arr, pivots = _kernels.rref_mod_p(np.asarray(mat, dtype=np.int64).reshape(len(mat), ncols),
                                          field.p)
        rows = [tuple(int(x) for x in row) for row in arr[:len(pivots)].tolist()]
        return rows, tuple(pivots)
    rows, pivots = _rref_rational(mat, ncols)
    return rows[:len(pivots)], pivots


def nullspace(mat, ncols: int, field: FieldSpec) -> list[tuple]:
    """Basis of ``{x : mat @ x = 0}`` as a list of length-``ncols`` vectors."""
    rows, pivots = rref(mat, ncols, field)
    free = [j for j in range(ncols) if j not in pivots]
    one, zero = field(1), field(0)
    basis = []
    for f in free:
        x = [zero] * ncols
        x[f] = one
        for row, pc in zip(rows, pivots):
            x[pc] = field(-row[f])
        basis.append(tuple(x))
    return basis


def left_nullspace(mat, nrows: int, ncols: int, field: FieldSpec) -> list[tuple]:
    """Basis of ``{y : y @ mat = 0}`` as a list of length-``nrows`` vectors."""
    transposed = [tuple(mat[i][j] for i in range(nrows)) for j in range(ncols)]
    return nullspace(transposed, nrows, field)
