"""
Orbit catalogs of ``E_d``, the degeneration order, elementary operations,
supports ``J(c)``, the smoothness classifier and F_q point counts.

The degeneration order is decided by Hom counts against the indecomposables
(Bongartz); closure containment is never computed geometrically.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .dynkin import AdaptedWord, homogeneity_solutions
from .laurent import LaurentPoly, gl_order
from .linalg import GF, QQ, FieldSpec
from .repkit import (GuardError, extension_classes, hom_table, identify,
                     indecomposable, random_rep)

__all__ = [
    "OrbitCatalog", "ElementaryOp", "SmoothnessRow", "catalog", "orbit_dim",
    "leq", "leq_dual", "elementary_ops", "ops_at", "support", "cmin",
    "is_rationally_smooth", "smoothness_row", "aut_order", "group_order",
    "point_counts", "s_set", "c_ij", "hasse", "leq_matrix", "generic_class",
    "chain_witness",
]

log = logging.getLogger(__name__)

Vector = tuple[int, ...]


@dataclass(frozen=True)
class OrbitCatalog:
    word: AdaptedWord
    d: Vector
    classes: tuple[Vector, ...]

    @property
    def quiver(self):
        return self.word.quiver

    @property
    def dim_Ed(self) -> int:
        return sum(self.d[i - 1] * self.d[j - 1] for i, j in self.quiver.arrows)

    @property
    def dim_Gd(self) -> int:
        return sum(x * x for x in self.d)

    @cached_property
    def H(self) -> tuple[tuple[int, ...], ...]:
        return hom_table(self.word, QQ)

    def index(self, c: Sequence[int]) -> int:
        return self.classes.index(tuple(c))

    def check(self, c: Sequence[int]) -> Vector:
        c = tuple(c)
        if len(c) != self.word.nu or self.word.dimension_of(c) != self.d:
            raise ValueError(f"class {c} is not of homogeneity {self.d}")
        return c

    def __len__(self):
        return len(self.classes)


def catalog(aw: AdaptedWord, d: Sequence[int]) -> OrbitCatalog:
    d = tuple(d)
    return OrbitCatalog(aw, d, tuple(homogeneity_solutions(aw, d)))


def _self_hom(H, c: Vector) -> int:
    return sum(c[s] * c[t] * H[s][t] for s in range(len(c)) if c[s]
               for t in range(len(c)) if c[t])


def orbit_dim(cat: OrbitCatalog, c: Sequence[int]) -> int:
    """``d(c) = dim G_d - [e(c), e(c)]``."""
    c = cat.check(c)
    return cat.dim_Gd - _self_hom(cat.H, c)


def _homs_into(H, c: Vector) -> list[int]:
    # [e_{alpha^s}, e(c)] for every s
    nu = len(c)
    return [sum(H[s][t] * c[t] for t in range(nu)) for s in range(nu)]


def _homs_from(H, c: Vector) -> list[int]:
    # [e(c), e_{alpha^s}] for every s
    nu = len(c)
    return [sum(c[t] * H[t][s] for t in range(nu)) for s in range(nu)]


def leq(cat: OrbitCatalog, cprime: Sequence[int], c: Sequence[int]) -> bool:
    """``c' <= c`` iff ``[e_a, e(c')] >= [e_a, e(c)]`` for every indecomposable ``e_a``."""
    cprime, c = cat.check(cprime), cat.check(c)
    return all(x >= y for x, y in zip(_homs_into(cat.H, cprime), _homs_into(cat.H, c)))


def leq_dual(cat: OrbitCatalog, cprime: Sequence[int], c: Sequence[int]) -> bool:
    """The contravariant form: ``[e(c'), e_a] >= [e(c), e_a]`` for every ``e_a``."""
    cprime, c = cat.check(cprime), cat.check(c)
    return all(x >= y for x, y in zip(_homs_from(cat.H, cprime), _homs_from(cat.H, c)))


def leq_matrix(cat: OrbitCatalog) -> np.ndarray:
    """Boolean matrix ``M[a, b] = classes[a] <= classes[b]``."""
    profiles = [_homs_into(cat.H, c) for c in cat.classes]
    n = len(cat.classes)
    out = np.zeros((n, n), dtype=bool)
    for a in range(n):
        for b in range(n):
            out[a, b] = all(x >= y for x, y in zip(profiles[a], profiles[b]))
    return out


@dataclass(frozen=True)
class ElementaryOp:
    """
    A non-split sequence ``0 -> e_{alpha^s} -> V -> e_{alpha^t} -> 0`` with
    ``V = e(middle)``.  ``e_value`` and ``ext_poly`` are filled in by
    :func:`quiverorbits.hall.annotate_ops`.
    """
    s: int
    t: int
    middle: Vector
    op: tuple[int, ...]
    case_formula_agrees: bool = True
    ext_poly: LaurentPoly | None = None
    e_value: Fraction | None = None

    @property
    def regular(self) -> bool:
        if self.e_value is None:
            raise ValueError("e_value has not been computed for this operation")
        return self.e_value != 0


def _case_formula(nu: int, s: int, t: int, middle: Vector) -> tuple[int, ...]:
    # literal reading: -1 at s and t, +1 wherever e_{alpha^r} is a summand of V
    return tuple(-1 if r in (s, t) else (1 if middle[r] else 0) for r in range(nu))


def elementary_ops(aw: AdaptedWord, p: int = 11, check_prime: int | None = 13,
                   skip_guarded: bool = False) -> list[ElementaryOp]:
    """
    Every elementary operation, enumerated over F_p.  The set of middle
    classes is re-derived over ``check_prime`` and must agree.  With
    ``skip_guarded`` the pairs whose Ext space exceeds the enumeration guard
    are logged and left out instead of raising.
    """
    H = hom_table(aw, QQ)
    nu = aw.nu
    arrows = aw.quiver.arrows
    ops = []
    for s in range(nu):
        for t in range(nu):
            a, b = aw.root_order[t], aw.root_order[s]
            euler = (sum(x * y for x, y in zip(a, b))
                     - sum(a[i - 1] * b[j - 1] for i, j in arrows))
            if H[t][s] - euler <= 0:
                continue
            try:
                middles = [cls.c for cls, _ in extension_classes(aw, s, t, p)]
                again = ([cls.c for cls, _ in extension_classes(aw, s, t, check_prime)]
                         if check_prime is not None else middles)
            except GuardError:
                if not skip_guarded:
                    raise
                log.warning("skipping (%d, %d): Ext space beyond the enumeration guard", s, t)
                continue
            if check_prime is not None:
                if set(again) != set(middles):
                    raise ArithmeticError(
                        f"middle terms for ({s}, {t}) differ between F_{p} and F_{check_prime}")
            for m in middles:
                op = tuple(m[r] - (r == s) - (r == t) for r in range(nu))
                agrees = op == _case_formula(nu, s, t, m)
                if not agrees:
                    log.info("op vector for (%d, %d) -> %s differs from the literal case formula",
                             s, t, m)
                ops.append(ElementaryOp(s, t, m, op, agrees))
    return ops


def ops_at(c: Sequence[int], ops: Iterable[ElementaryOp]) -> list[ElementaryOp]:
    """``Op(c)``: operations with ``c + op`` still nonnegative."""
    return [u for u in ops if all(x + y >= 0 for x, y in zip(c, u.op))]


def support(aw: AdaptedWord, c: Sequence[int], field: FieldSpec = QQ) -> tuple[tuple[int, int], ...]:
    """``J(c)``: arrows on which some summand of ``e(c)`` acts nonzero."""
    used = set()
    for t, m in enumerate(c):
        if m:
            rep = indecomposable(aw, t, field)
            for a, mat in zip(rep.quiver.arrows, rep.maps):
                if any(x for row in mat for x in row):
                    used.add(a)
    return tuple(a for a in aw.quiver.arrows if a in used)


def dim_E_J(cat: OrbitCatalog, J: Iterable[tuple[int, int]]) -> int:
    return sum(cat.d[i - 1] * cat.d[j - 1] for i, j in J)


def cmin(cat: OrbitCatalog) -> Vector:
    """The semisimple class: ``d_i`` copies of each simple."""
    c = [0] * cat.word.nu
    for i in range(1, cat.word.n + 1):
        c[cat.word.simple_position(i)] = cat.d[i - 1]
    return tuple(c)


def is_rationally_smooth(cat: OrbitCatalog, c: Sequence[int]) -> bool:
    """The closure of ``O_c`` is (rationally) smooth iff it fills ``E_d(J(c))``."""
    c = cat.check(c)
    return orbit_dim(cat, c) == dim_E_J(cat, support(cat.word, c))


def aut_order(aw: AdaptedWord, c: Sequence[int]) -> LaurentPoly:
    """``|Aut e(c)|`` over F_q."""
    H = hom_table(aw, QQ)
    nu = len(c)
    exponent = sum(c[s] * c[t] * H[s][t] for s in range(nu) for t in range(s + 1, nu))
    out = LaurentPoly.monomial(exponent)
    for m in c:
        if m:
            out = out * gl_order(m)
    return out


def group_order(d: Sequence[int]) -> LaurentPoly:
    out = LaurentPoly.const(1)
    for x in d:
        out = out * gl_order(x)
    return out


@dataclass(frozen=True)
class PointCounts:
    orbit_counts: dict            # c' -> Q_{c'}(q) for every c' <= c
    projective_count: LaurentPoly  # P_c(q)
    euler_char: Fraction


def point_counts(cat: OrbitCatalog, c: Sequence[int]) -> PointCounts:
    """
    ``Q_{c'} = |G_d| / a_{c'}`` for ``c' <= c`` and
    ``P_c = (sum_{c_min < c' <= c} Q_{c'}) / (q - 1)``; ``chi = P_c(1)``.
    """
    c = cat.check(c)
    G = group_order(cat.d)
    bottom = cmin(cat)
    counts = {}
    total = LaurentPoly()
    for cp in cat.classes:
        if leq(cat, cp, c):
            Q = G.exact_div(aut_order(cat.word, cp))
            counts[cp] = Q
            if cp != bottom:
                total = total + Q
    P = total.exact_div(LaurentPoly({1: 1, 0: -1}))
    return PointCounts(counts, P, P(1))


@dataclass(frozen=True)
class SmoothnessRow:
    c: Vector
    J: tuple[tuple[int, int], ...]
    dim_EdJ: int
    d_c: int
    rationally_smooth: bool
    euler_char: Fraction
    point_count: LaurentPoly


def smoothness_row(cat: OrbitCatalog, c: Sequence[int]) -> SmoothnessRow:
    c = cat.check(c)
    J = support(cat.word, c)
    dJ = dim_E_J(cat, J)
    dc = orbit_dim(cat, c)
    pc = point_counts(cat, c)
    return SmoothnessRow(c, J, dJ, dc, dc == dJ, pc.euler_char, pc.projective_count)


def c_ij(cat: OrbitCatalog, i: int, j: int) -> Vector:
    """``c_min`` with one ``S_i + S_j`` pair glued into ``e_{alpha_i + alpha_j}``."""
    aw = cat.word
    c = list(cmin(cat))
    c[aw.simple_position(i)] -= 1
    c[aw.simple_position(j)] -= 1
    root = tuple(int(k in (i - 1, j - 1)) for k in range(aw.n))
    c[aw.index_of(root)] += 1
    return tuple(c)


def s_set(cat: OrbitCatalog, c: Sequence[int], ops: Iterable[ElementaryOp]) -> set[Vector]:
    """``{c' : c' = c_min + op for some operation, and c' <= c}``."""
    c = cat.check(c)
    bottom = cmin(cat)
    out = set()
    for u in ops:
        cand = tuple(x + y for x, y in zip(bottom, u.op))
        if all(x >= 0 for x in cand) and leq(cat, cand, c):
            out.add(cand)
    return out


def hasse(cat: OrbitCatalog) -> list[tuple[Vector, Vector]]:
    """Covering pairs ``(lower, upper)`` of the degeneration order."""
    M = leq_matrix(cat)
    n = len(cat.classes)
    edges = []
    for a in range(n):
        for b in range(n):
            if a == b or not M[a, b]:
                continue
            if any(M[a, k] and M[k, b] for k in range(n) if k not in (a, b)):
                continue
            edges.append((cat.classes[a], cat.classes[b]))
    return edges


def chain_witness(cat: OrbitCatalog, ops: Sequence[ElementaryOp],
                  cprime: Sequence[int], c: Sequence[int]) -> ElementaryOp | None:
    """An operation ``u`` in ``Op(c')`` with ``c' + op_u <= c``, if one exists."""
    for u in ops_at(cprime, ops):
        nxt = tuple(x + y for x, y in zip(cprime, u.op))
        if leq(cat, nxt, c):
            return u
    return None


def generic_class(cat: OrbitCatalog, J: Iterable[tuple[int, int]], rng,
                  p: int = 10007, samples: int = 8) -> Vector:
    """
    Class of a generic point of ``E_d(J)``: random matrices over F_p on ``J``,
    zero elsewhere; the maximum under the order across ``samples`` draws.
    """
    field = GF(p)
    best = None
    for _ in range(samples):
        rep = random_rep(cat.quiver, cat.d, field, rng, arrows=J)
        c = identify(rep, cat.word).c
        if best is None or leq(cat, best, c):
            best = c
    return best

