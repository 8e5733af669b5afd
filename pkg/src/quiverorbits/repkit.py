"""
Explicit quiver representations over Q or F_p.

A :class:`Rep` stores one matrix per arrow, aligned with ``quiver.arrows``; the
matrix of ``i -> j`` has ``dims[j]`` rows and ``dims[i]`` columns.  Isomorphism
classes are never compared matrix-wise: :func:`identify` recovers the
multiplicity vector from Hom dimensions against the indecomposables.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .dynkin import AdaptedWord, Quiver, adapted_word
from .linalg import FieldSpec, GF, left_nullspace, nullspace, rank, rref

__all__ = [
    "Rep", "IsoClass", "GuardError", "zero_rep", "simple_rep", "direct_sum",
    "hom_dim", "hom_basis", "euler_form", "ext_dim", "ext_basis", "extension_rep",
    "reflection_functor", "coreflection_functor", "indecomposable",
    "rep_of_class", "identify", "hom_table", "hom_vector", "extension_classes",
    "random_rep", "is_morphism",
]

Matrix = tuple[tuple, ...]

EXT_GUARD_BITS = 22


class GuardError(RuntimeError):
    """A desk-scale guard refused a computation that would be too large."""


@dataclass(frozen=True)
class Rep:
    quiver: Quiver
    field: FieldSpec
    dims: tuple[int, ...]
    maps: tuple[Matrix, ...]

    def __post_init__(self):
        if len(self.dims) != self.quiver.n or any(x < 0 for x in self.dims):
            raise ValueError(f"bad dimension vector {self.dims} for {self.quiver}")
        if len(self.maps) != len(self.quiver.arrows):
            raise ValueError("need exactly one matrix per arrow")
        for (i, j), m in zip(self.quiver.arrows, self.maps):
            rows, cols = self.dims[j - 1], self.dims[i - 1]
            if len(m) != rows or any(len(r) != cols for r in m):
                raise ValueError(f"matrix on {i}->{j} must be {rows}x{cols}")

    def map(self, arrow: tuple[int, int]) -> Matrix:
        return self.maps[self.quiver.arrows.index(arrow)]

    @cached_property
    def arrays(self) -> tuple[np.ndarray, ...]:
        dtype = np.int64 if self.field.characteristic else object
        out = []
        for (i, j), m in zip(self.quiver.arrows, self.maps):
            a = np.zeros((self.dims[j - 1], self.dims[i - 1]), dtype=dtype)
            if a.size:
                a[:, :] = m
            out.append(a)
        return tuple(out)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)


@dataclass(frozen=True)
class IsoClass:
    """The module ``e(c) = sum_t c_t e_{alpha^t}`` for an adapted word."""
    word: AdaptedWord
    c: tuple[int, ...]

    def __post_init__(self):
        if len(self.c) != self.word.nu or any(x < 0 for x in self.c):
            raise ValueError(f"multiplicity vector {self.c} invalid for nu={self.word.nu}")

    @property
    def dims(self) -> tuple[int, ...]:
        return self.word.dimension_of(self.c)


def _empty(m: int, n: int, field: FieldSpec) -> Matrix:
    z = field(0)
    return tuple(tuple(z for _ in range(n)) for _ in range(m))


def zero_rep(quiver: Quiver, dims: Sequence[int], field: FieldSpec) -> Rep:
    dims = tuple(dims)
    return Rep(quiver, field, dims,
               tuple(_empty(dims[j - 1], dims[i - 1], field) for i, j in quiver.arrows))


def simple_rep(quiver: Quiver, i: int, field: FieldSpec) -> Rep:
    return zero_rep(quiver, tuple(int(k == i) for k in range(1, quiver.n + 1)), field)


def direct_sum(reps: Sequence[Rep]) -> Rep:
    """Block-diagonal direct sum."""
    first = reps[0]
    quiver, field = first.quiver, first.field
    dims = tuple(sum(r.dims[k] for r in reps) for k in range(quiver.n))
    maps = []
    zero = field(0)
    for a, (i, j) in enumerate(quiver.arrows):
        rows = []
        col_off = 0
        total_cols = dims[i - 1]
        for r in reps:
            m = r.maps[a]
            w = r.dims[i - 1]
            for row in m:
                rows.append((zero,) * col_off + tuple(row) + (zero,) * (total_cols - col_off - w))
            col_off += w
        maps.append(tuple(rows))
    return Rep(quiver, field, dims, tuple(maps))


def _check_pair(r1: Rep, r2: Rep) -> None:
    if r1.quiver != r2.quiver:
        raise ValueError("representations live on different quivers")
    if r1.field != r2.field:
        raise ValueError(f"representations over different fields ({r1.field}, {r2.field})")


def _offsets(r1: Rep, r2: Rep) -> list[int]:
    # unknown g_k (dims2[k] x dims1[k]) occupies columns off[k] .. off[k+1]
    off = [0]
    for a, b in zip(r1.dims, r2.dims):
        off.append(off[-1] + a * b)
    return off


def _constraints(r1: Rep, r2: Rep) -> np.ndarray:
    """
    Matrix of ``g -> (f2_a g_i - g_j f1_a)_a`` on row-major vectorised ``g``.

    Its kernel is Hom(r1, r2); its cokernel is Ext^1(r1, r2).
    """
    off = _offsets(r1, r2)
    d1, d2 = r1.dims, r2.dims
    dtype = np.int64 if r1.field.characteristic else object
    nrows = sum(d2[j - 1] * d1[i - 1] for i, j in r1.quiver.arrows)
    out = np.zeros((nrows, off[-1]), dtype=dtype)
    row = 0
    for a, (i, j) in enumerate(r1.quiver.arrows):
        f1, f2 = r1.arrays[a], r2.arrays[a]
        h = d2[j - 1] * d1[i - 1]
        if h:
            # block-filled equivalents of kron(f2, I) and kron(I, f1^T)
            if d2[i - 1]:
                blk = np.zeros((d2[j - 1], d1[i - 1], d2[i - 1], d1[i - 1]), dtype=dtype)
                for c in range(d1[i - 1]):
                    blk[:, c, :, c] = f2
                out[row:row + h, off[i - 1]:off[i]] = blk.reshape(h, -1)
            if d1[j - 1]:
                blk = np.zeros((d2[j - 1], d1[i - 1], d2[j - 1], d1[j - 1]), dtype=dtype)
                for r in range(d2[j - 1]):
                    blk[r, :, r, :] = f1.T
                out[row:row + h, off[j - 1]:off[j]] -= blk.reshape(h, -1)
        row += h
    return out


def hom_dim(r1: Rep, r2: Rep) -> int:
    _check_pair(r1, r2)
    m = _constraints(r1, r2)
    if m.shape[1] == 0:
        return 0
    if m.shape[0] == 0:
        return m.shape[1]
    if r1.field.characteristic:
        return m.shape[1] - rank(m, r1.field)
    return m.shape[1] - rank(m.tolist(), r1.field)


def _unvec(x: Sequence, r1: Rep, r2: Rep) -> tuple[Matrix, ...]:
    off = _offsets(r1, r2)
    out = []
    for k in range(r1.quiver.n):
        rows, cols = r2.dims[k], r1.dims[k]
        flat = x[off[k]:off[k + 1]]
        out.append(tuple(tuple(flat[r * cols:(r + 1) * cols]) for r in range(rows)))
    return tuple(out)


def hom_basis(r1: Rep, r2: Rep) -> list[tuple[Matrix, ...]]:
    """Basis of Hom(r1, r2); each morphism is a tuple of per-vertex matrices."""
    _check_pair(r1, r2)
    m = _constraints(r1, r2)
    ncols = m.shape[1]
    if ncols == 0:
        return []
    mat = m.tolist() if m.shape[0] else []
    if r1.field.characteristic:
        mat = [[x % r1.field.p for x in row] for row in mat]
    return [_unvec(x, r1, r2) for x in nullspace(mat, ncols, r1.field)]


def is_morphism(g: Sequence[Matrix], r1: Rep, r2: Rep) -> bool:
    f = r1.field
    for a, (i, j) in enumerate(r1.quiver.arrows):
        lhs = _mul(r2.maps[a], g[i - 1], f, r1.dims[i - 1])
        rhs = _mul(g[j - 1], r1.maps[a], f, r1.dims[i - 1])
        if lhs != rhs:
            return False
    return True


def _mul(a: Matrix, b: Matrix, field: FieldSpec, ncols: int) -> Matrix:
    p = field.p
    out = []
    for row in a:
        r = []
        for c in range(ncols):
            s = sum(x * b[k][c] for k, x in enumerate(row) if x)
            r.append(s % p if p else field(s))
        out.append(tuple(r))
    return tuple(out)


def euler_form(quiver: Quiver, d1: Sequence[int], d2: Sequence[int]) -> int:
    """``<d1, d2> = sum_i d1_i d2_i - sum_{i->j} d1_i d2_j``."""
    if len(d1) != quiver.n or len(d2) != quiver.n:
        raise ValueError(f"dimension vectors must have length {quiver.n}")
    return (sum(a * b for a, b in zip(d1, d2))
            - sum(d1[i - 1] * d2[j - 1] for i, j in quiver.arrows))


def ext_dim(r1: Rep, r2: Rep) -> int:
    e = hom_dim(r1, r2) - euler_form(r1.quiver, r1.dims, r2.dims)
    if e < 0:
        raise ArithmeticError(f"negative Ext dimension {e}: hom computation is inconsistent")
    return e


def ext_basis(quot: Rep, sub: Rep) -> list[tuple[Matrix, ...]]:
    """
    Cocycles ``eps = (eps_a : quot_i -> sub_j)_a`` whose classes form a basis of
    Ext^1(quot, sub).  The basis consists of coordinate vectors complementary to
    the pivots of the coboundary space.
    """
    _check_pair(quot, sub)
    m = _constraints(quot, sub)       # rows: cochains on arrows, cols: on vertices
    nrows = m.shape[0]
    if nrows == 0:
        return []
    field = quot.field
    if m.shape[1]:
        cols = m.T.tolist()
        if field.characteristic:
            cols = [[x % field.p for x in row] for row in cols]
        _, pivots = rref(cols, nrows, field)
    else:
        pivots = ()
    basis = []
    zero, one = field(0), field(1)
    for k in range(nrows):
        if k in pivots:
            continue
        x = [zero] * nrows
        x[k] = one
        basis.append(_split_arrows(x, quot, sub))
    return basis


def _split_arrows(x: Sequence, quot: Rep, sub: Rep) -> tuple[Matrix, ...]:
    out = []
    pos = 0
    for i, j in quot.quiver.arrows:
        rows, cols = sub.dims[j - 1], quot.dims[i - 1]
        out.append(tuple(tuple(x[pos + r * cols:pos + (r + 1) * cols]) for r in range(rows)))
        pos += rows * cols
    return tuple(out)


def extension_rep(quot: Rep, sub: Rep, eps: Sequence[Matrix]) -> Rep:
    """Middle term with block maps ``[[f_sub, eps], [0, f_quot]]``; ``sub`` sits first."""
    field = quot.field
    zero = field(0)
    dims = tuple(a + b for a, b in zip(sub.dims, quot.dims))
    maps = []
    for a, (i, j) in enumerate(quot.quiver.arrows):
        fs, fq, e = sub.maps[a], quot.maps[a], eps[a]
        rows = [tuple(fs[r]) + tuple(e[r]) for r in range(sub.dims[j - 1])]
        rows += [(zero,) * sub.dims[i - 1] + tuple(fq[r]) for r in range(quot.dims[j - 1])]
        maps.append(tuple(rows))
    return Rep(quot.quiver, field, dims, tuple(maps))


def reflection_functor(rep: Rep, i: int) -> Rep:
    """
    Sink reflection at ``i``: the new space at ``i`` is the kernel of
    ``sum_{a: j->i} V_j -> V_i``, mapping to each ``V_j`` by projection.
    """
    q = rep.quiver
    if not q.is_sink(i):
        raise ValueError(f"vertex {i} is not a sink of {q}")
    field = rep.field
    incoming = [(a, arr[0]) for a, arr in enumerate(q.arrows) if arr[1] == i]
    width = sum(rep.dims[j - 1] for _, j in incoming)
    big = [sum((tuple(rep.maps[a][r]) for a, _ in incoming), ()) for r in range(rep.dims[i - 1])]
    kernel = nullspace(big, width, field) if big else [
        tuple(field(int(k == m)) for k in range(width)) for m in range(width)]
    new_q = q.reflected(i)
    dims = list(rep.dims)
    dims[i - 1] = len(kernel)
    maps = list(rep.maps)
    pos = 0
    for a, j in incoming:
        dj = rep.dims[j - 1]
        maps[a] = tuple(tuple(vec[pos + r] for vec in kernel) for r in range(dj))
        pos += dj
    return Rep(new_q, field, tuple(dims), tuple(maps))


def coreflection_functor(rep: Rep, i: int) -> Rep:
    """
    Source reflection at ``i``: the new space at ``i`` is the cokernel of
    ``V_i -> sum_{a: i->j} V_j``, receiving each ``V_j`` through the quotient.
    """
    q = rep.quiver
    if not q.is_source(i):
        raise ValueError(f"vertex {i} is not a source of {q}")
    field = rep.field
    outgoing = [(a, arr[1]) for a, arr in enumerate(q.arrows) if arr[0] == i]
    height = sum(rep.dims[j - 1] for _, j in outgoing)
    di = rep.dims[i - 1]
    big = [row for a, _ in outgoing for row in rep.maps[a]]
    if di:
        coker = left_nullspace(big, height, di, field)
    else:
        coker = [tuple(field(int(k == m)) for k in range(height)) for m in range(height)]
    new_q = q.reflected(i)
    dims = list(rep.dims)
    dims[i - 1] = len(coker)
    maps = list(rep.maps)
    pos = 0
    for a, j in outgoing:
        dj = rep.dims[j - 1]
        maps[a] = tuple(tuple(y[pos + c] for c in range(dj)) for y in coker)
        pos += dj
    return Rep(new_q, field, tuple(dims), tuple(maps))


@lru_cache(maxsize=None)
def indecomposable(aw: AdaptedWord, t: int, field: FieldSpec) -> Rep:
    """
    The indecomposable ``e_{alpha^t}`` (``t`` is 0-based): the simple at
    ``word[t]`` over the ``t``-th reflected quiver, pulled back to the original
    quiver by source reflections at ``word[t-1], ..., word[0]``.
    """
    if not 0 <= t < aw.nu:
        raise IndexError(f"root position {t} out of range 0..{aw.nu - 1}")
    rep = simple_rep(aw.quivers[t], aw.word[t], field)
    for k in range(t - 1, -1, -1):
        rep = coreflection_functor(rep, aw.word[k])
    if rep.quiver.arrows != aw.quiver.arrows or rep.dims != aw.root_order[t]:
        raise AssertionError(f"reflection chain for root {aw.root_order[t]} gave {rep.dims}")
    return rep


def rep_of_class(cls: IsoClass, field: FieldSpec) -> Rep:
    aw = cls.word
    parts = [indecomposable(aw, t, field) for t, m in enumerate(cls.c) for _ in range(m)]
    if not parts:
        return zero_rep(aw.quiver, (0,) * aw.n, field)
    return direct_sum(parts)


@lru_cache(maxsize=None)
def hom_table(aw: AdaptedWord, field: FieldSpec) -> tuple[tuple[int, ...], ...]:
    """``H[s][t] = dim Hom(e_{alpha^s}, e_{alpha^t})``."""
    inds = [indecomposable(aw, t, field) for t in range(aw.nu)]
    return tuple(tuple(hom_dim(a, b) for b in inds) for a in inds)


def hom_vector(rep: Rep, aw: AdaptedWord | None = None) -> tuple[int, ...]:
    aw = aw or adapted_word(rep.quiver)
    return tuple(hom_dim(indecomposable(aw, s, rep.field), rep) for s in range(aw.nu))


def identify(rep: Rep, aw: AdaptedWord | None = None) -> IsoClass:
    """
    Solve ``H c = h`` with ``h_s = [e_{alpha^s}, rep]``.  ``H`` is upper
    unitriangular in the adapted order, so back substitution is exact.
    """
    aw = aw or adapted_word(rep.quiver)
    h = hom_vector(rep, aw)
    H = hom_table(aw, rep.field)
    nu = aw.nu
    c = [0] * nu
    for s in range(nu - 1, -1, -1):
        c[s] = h[s] - sum(H[s][t] * c[t] for t in range(s + 1, nu))
        if c[s] < 0:
            raise ValueError(f"hom counts {h} do not come from a module (c[{s}] = {c[s]})")
    if aw.dimension_of(c) != rep.dims:
        raise ValueError(f"identified class {c} has the wrong dimension vector")
    return IsoClass(aw, tuple(c))


def _projective_points(e: int, p: int) -> Iterator[tuple[int, ...]]:
    # one representative per line: first nonzero coordinate equal to 1
    for lead in range(e):
        for tail in itertools.product(range(p), repeat=e - lead - 1):
            yield (0,) * lead + (1,) + tail


def extension_classes(aw: AdaptedWord, s: int, t: int, p: int) -> list[tuple[IsoClass, int]]:
    """
    Tally the middle terms of the nonzero classes in Ext^1(e_{alpha^t}, e_{alpha^s})
    over F_p.  Scalar multiples give isomorphic middle terms, so one representative
    per line is identified and weighted by ``p - 1``.  Counts sum to ``p^e - 1``.
    """
    field = GF(p)
    sub = indecomposable(aw, s, field)
    quot = indecomposable(aw, t, field)
    basis = ext_basis(quot, sub)
    e = len(basis)
    if e == 0:
        return []
    if e * math.log2(p) > EXT_GUARD_BITS:
        raise GuardError(f"Ext space F_{p}^{e} exceeds the 2^{EXT_GUARD_BITS} enumeration guard")
    tally: dict[tuple[int, ...], int] = {}
    for coeffs in _projective_points(e, p):
        eps = tuple(
            tuple(tuple(sum(cf * b[a][r][k] for cf, b in zip(coeffs, basis)) % p
                        for k in range(len(basis[0][a][r])))
                  for r in range(len(basis[0][a])))
            for a in range(len(aw.quiver.arrows))
        )
        cls = identify(extension_rep(quot, sub, eps), aw)
        tally[cls.c] = tally.get(cls.c, 0) + (p - 1)
    return [(IsoClass(aw, c), n) for c, n in sorted(tally.items())]


def random_rep(quiver: Quiver, dims: Sequence[int], field: FieldSpec, rng,
               arrows: Iterable[tuple[int, int]] | None = None) -> Rep:
    """Uniformly random matrices on ``arrows`` (default: all), zero elsewhere."""
    allowed = set(quiver.arrows if arrows is None else arrows)
    hi = field.p if field.characteristic else 7
    lo = 0 if field.characteristic else -hi
    maps = []
    for i, j in quiver.arrows:
        rows, cols = dims[j - 1], dims[i - 1]
        if (i, j) in allowed:
            maps.append(tuple(tuple(field(int(rng.integers(lo, hi))) for _ in range(cols))
                              for _ in range(rows)))
        else:
            maps.append(_empty(rows, cols, field))
    return Rep(quiver, field, tuple(dims), tuple(maps))
