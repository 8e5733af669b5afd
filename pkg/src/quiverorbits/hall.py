"""
Counting over F_p: submodules, filtrations and extension classes, exact
interpolation of the counts, and the Omega coefficients built from them.

Counts are polynomial in the field size on Dynkin quivers, so every quantity
here is sampled at a handful of primes and interpolated exactly.  Filtrations
list their quotients top first: ``quotients[0]`` is ``top / W``.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .dynkin import AdaptedWord
from .laurent import LaurentPoly, newton_interpolate
from .linalg import GF, FieldSpec, is_prime, nullspace, rref
from .orbits import (ElementaryOp, OrbitCatalog, aut_order, cmin, dim_E_J,
                     is_rationally_smooth, leq, ops_at, orbit_dim, support)
from .repkit import (GuardError, IsoClass, Rep, _projective_points, extension_classes, hom_basis,
                     hom_dim, hom_table, identify, indecomposable, rep_of_class)

__all__ = [
    "DEFAULT_PRIMES", "MAX_TOTAL_DIM", "DEGREE_GUARD", "Settings", "settings",
    "configure", "Interpolation",
    "InterpolationError", "OmegaCoeff", "MainCheck", "SumCheck",
    "subrepresentations", "count_submodules", "count_submodules_hom",
    "filtration_count", "interpolate", "ext_poly", "reduced_ext",
    "annotate_ops", "riedtmann_check", "omega", "theorem_main_check",
    "smoothness_sum_check", "hall_number",
]

log = logging.getLogger(__name__)

DEFAULT_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
                  67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131)
MAX_TOTAL_DIM = 6
DEGREE_GUARD = 24

Vector = tuple[int, ...]
Subspace = tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]  # RREF rows, pivots


@dataclass
class Settings:
    """Process-wide sampling defaults; change them through :func:`configure`."""
    primes: tuple[int, ...] = DEFAULT_PRIMES
    max_dim: int = MAX_TOTAL_DIM
    degree_guard: int = DEGREE_GUARD


settings = Settings()


def configure(primes: Sequence[int] | None = None, max_dim: int | None = None,
              degree_guard: int | None = None) -> Settings:
    """Override the sample primes and guards and drop every memoised count."""
    if primes is not None:
        primes = tuple(primes)
        if len(primes) < 7 or any(not is_prime(p) for p in primes) or len(set(primes)) != len(primes):
            raise ValueError("need at least 7 distinct primes (4 to fit, 2 to check, 1 held out)")
        settings.primes = primes
    if max_dim is not None:
        if max_dim > MAX_TOTAL_DIM:
            log.warning("raising the enumeration guard to total dimension %d", max_dim)
        settings.max_dim = max_dim
    if degree_guard is not None:
        settings.degree_guard = degree_guard
    for fn in (_filtrations, _ext_tally, _omega):
        fn.cache_clear()
    return settings


class InterpolationError(ArithmeticError):
    """Sampled counts did not settle on a polynomial below the degree guard."""


# subspace enumeration

@lru_cache(maxsize=None)
def _grassmannian(n: int, k: int, p: int) -> tuple[Subspace, ...]:
    """All ``k``-dimensional subspaces of F_p^n, one RREF basis each."""
    out = []
    for pivots in itertools.combinations(range(n), k):
        free = [(r, j) for r, pc in enumerate(pivots) for j in range(pc + 1, n)
                if j not in pivots]
        for vals in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, j), v in zip(free, vals):
                rows[r][j] = v
            out.append((tuple(tuple(r) for r in rows), pivots))
    return tuple(out)


def _reduce(v: list[int], sub: Subspace, p: int) -> list[int]:
    rows, pivots = sub
    v = list(v)
    for row, pc in zip(rows, pivots):
        f = v[pc]
        if f:
            v = [(x - f * y) % p for x, y in zip(v, row)]
    return v


def _apply(mat, vec, p: int) -> list[int]:
    return [sum(a * b for a, b in zip(row, vec)) % p for row in mat]


def _stable(rep: Rep, a: int, src: Subspace, dst: Subspace, p: int) -> bool:
    f = rep.maps[a]
    return all(not any(_reduce(_apply(f, b, p), dst, p)) for b in src[0])


def _vertex_order(rep: Rep) -> list[int]:
    # targets before sources, so each new vertex can be checked against its
    # already-chosen targets
    q = rep.quiver
    order, seen = [], set()
    while len(order) < q.n:
        for v in range(1, q.n + 1):
            if v not in seen and all(j in seen for i, j in q.arrows if i == v):
                order.append(v)
                seen.add(v)
                break
    return order


def subrepresentations(rep: Rep, dims: Sequence[int]) -> Iterator[tuple[Subspace, ...]]:
    """Arrow-stable subspace tuples ``(W_1, ..., W_n)`` with ``dim W_i = dims[i]``."""
    p = rep.field.p
    if not p:
        raise ValueError("subrepresentations are enumerated over finite fields only")
    if any(k < 0 or k > d for k, d in zip(dims, rep.dims)):
        return
    order = _vertex_order(rep)
    arrows = list(enumerate(rep.quiver.arrows))
    chosen: dict[int, Subspace] = {}

    def walk(pos: int):
        if pos == len(order):
            yield tuple(chosen[v] for v in range(1, rep.quiver.n + 1))
            return
        v = order[pos]
        checks = [(a, j) for a, (i, j) in arrows if i == v]
        for W in _grassmannian(rep.dims[v - 1], dims[v - 1], p):
            if all(_stable(rep, a, W, chosen[j], p) for a, j in checks):
                chosen[v] = W
                yield from walk(pos + 1)
        chosen.pop(v, None)

    yield from walk(0)


def _sub_rep(rep: Rep, W: Sequence[Subspace]) -> Rep:
    p = rep.field.p
    maps = []
    for a, (i, j) in enumerate(rep.quiver.arrows):
        src, dst = W[i - 1], W[j - 1]
        cols = [[v[pc] for pc in dst[1]] for v in (_apply(rep.maps[a], b, p) for b in src[0])]
        maps.append(tuple(tuple(col[r] for col in cols) for r in range(len(dst[1]))))
    return Rep(rep.quiver, rep.field, tuple(len(w[1]) for w in W), tuple(maps))


def _quotient_rep(rep: Rep, W: Sequence[Subspace]) -> Rep:
    # coordinates on top/W are the non-pivot coordinates after reduction
    p = rep.field.p
    comp = [tuple(k for k in range(d) if k not in w[1]) for d, w in zip(rep.dims, W)]
    maps = []
    for a, (i, j) in enumerate(rep.quiver.arrows):
        f = rep.maps[a]
        cols = []
        for k in comp[i - 1]:
            v = _reduce([row[k] for row in f], W[j - 1], p)
            cols.append([v[m] for m in comp[j - 1]])
        maps.append(tuple(tuple(col[r] for col in cols) for r in range(len(comp[j - 1]))))
    return Rep(rep.quiver, rep.field, tuple(len(c) for c in comp), tuple(maps))


def _matches(rep: Rep, aw: AdaptedWord, c: Vector) -> bool:
    """``rep`` is isomorphic to ``e(c)``; stops at the first differing Hom count."""
    if rep.dims != aw.dimension_of(c):
        return False
    H = hom_table(aw, rep.field)
    for s in range(aw.nu):
        want = sum(H[s][t] * c[t] for t in range(aw.nu))
        if hom_dim(indecomposable(aw, s, rep.field), rep) != want:
            return False
    return True


def _guard(rep: Rep, max_dim: int | None) -> None:
    max_dim = settings.max_dim if max_dim is None else max_dim
    if rep.total_dim > max_dim:
        raise GuardError(f"total dimension {rep.total_dim} exceeds the enumeration guard {max_dim}")


def _vec(cls) -> Vector:
    return tuple(cls.c) if isinstance(cls, IsoClass) else tuple(cls)


def count_submodules(top: Rep, sub_class, quot_class, aw: AdaptedWord | None = None,
                     max_dim: int | None = None) -> int:
    """
    Number of subrepresentations ``W`` of ``top`` with ``W = e(sub)`` and
    ``top/W = e(quot)``, by Grassmannian enumeration.
    """
    aw = aw or getattr(sub_class, "word", None)
    sub, quot = _vec(sub_class), _vec(quot_class)
    ds, dq = aw.dimension_of(sub), aw.dimension_of(quot)
    if tuple(x + y for x, y in zip(ds, dq)) != top.dims:
        raise ValueError(f"dimension vectors {ds} + {dq} do not add up to {top.dims}")
    _guard(top, max_dim)
    n = 0
    for W in subrepresentations(top, ds):
        if _matches(_quotient_rep(top, W), aw, quot) and _matches(_sub_rep(top, W), aw, sub):
            n += 1
    return n


def count_submodules_hom(top: Rep, sub_class, quot_class, aw: AdaptedWord | None = None) -> int:
    """
    The same count through morphisms: kernels of the surjections
    ``top -> e(quot)`` with kernel ``e(sub)``, divided by ``|Aut e(quot)|``.
    Cost grows with ``p^dim Hom`` instead of the Grassmannians.
    """
    aw = aw or getattr(sub_class, "word", None)
    sub, quot = _vec(sub_class), _vec(quot_class)
    ds, dq = aw.dimension_of(sub), aw.dimension_of(quot)
    if tuple(x + y for x, y in zip(ds, dq)) != top.dims:
        raise ValueError(f"dimension vectors {ds} + {dq} do not add up to {top.dims}")
    f: FieldSpec = top.field
    p = f.p
    M = rep_of_class(IsoClass(aw, quot), f)
    basis = hom_basis(top, M)
    hits = 0
    seen: dict[tuple, bool] = {}   # kernel -> kernel is e(sub); few distinct kernels
    # g and a nonzero multiple of g share kernel and surjectivity: one per line
    for coeffs in _projective_points(len(basis), p):
        g = [tuple(tuple(sum(cf * b[k][r][col] for cf, b in zip(coeffs, basis)) % p
                         for col in range(top.dims[k]))
                   for r in range(dq[k]))
             for k in range(aw.n)]
        W = []
        for k in range(aw.n):
            ker = nullspace(g[k], top.dims[k], f) if dq[k] else [
                tuple(int(r == c) for c in range(top.dims[k])) for r in range(top.dims[k])]
            if len(ker) != ds[k]:
                break  # not surjective at vertex k
            rows, piv = rref(ker, top.dims[k], f)
            W.append((tuple(tuple(r) for r in rows), piv))
        else:
            key = tuple(W)
            if key not in seen:
                seen[key] = _matches(_sub_rep(top, W), aw, sub)
            hits += seen[key] * (p - 1)
    if not any(dq):
        hits = int(_matches(top, aw, sub))   # only the zero map, with kernel top
    aut = aut_order(aw, quot)(p)
    if hits % aut:
        raise ArithmeticError(f"{hits} epimorphisms is not a multiple of |Aut| = {aut}")
    return int(hits // aut)


def filtration_count(top: Rep, quotients: Sequence, aw: AdaptedWord | None = None,
                     max_dim: int | None = None) -> int:
    """
    Number of chains ``top = W_0 > W_1 > ... > W_k = 0`` with
    ``W_{r-1}/W_r = e(quotients[r-1])``; the first quotient is the top one.
    """
    qs = tuple(_vec(c) for c in quotients)
    aw = aw or next((c.word for c in quotients if isinstance(c, IsoClass)), None)
    total = [sum(col) for col in zip(*(aw.dimension_of(c) for c in qs))] if qs else []
    if tuple(total) != top.dims:
        raise ValueError(f"quotient dimensions add up to {tuple(total)}, not {top.dims}")
    _guard(top, max_dim)
    return _filtrations(aw, identify(top, aw).c, qs, top.field.p)


@lru_cache(maxsize=None)
def _filtrations(aw: AdaptedWord, top: Vector, qs: tuple[Vector, ...], p: int) -> int:
    qs = tuple(c for c in qs if any(c))
    if not qs:
        return int(not any(top))
    if len(qs) == 1:
        return int(top == qs[0])
    rep = rep_of_class(IsoClass(aw, top), GF(p))
    head, rest = qs[0], qs[1:]
    dims = tuple(d - x for d, x in zip(rep.dims, aw.dimension_of(head)))
    n = 0
    for W in subrepresentations(rep, dims):
        if _matches(_quotient_rep(rep, W), aw, head):
            n += _filtrations(aw, identify(_sub_rep(rep, W), aw).c, rest, p)
    return n


def hall_number(aw: AdaptedWord, top, quot, sub, p: int, max_dim: int | None = None) -> int:
    """``F^{top}_{quot, sub}(p)`` on the canonical representative of ``top``."""
    rep = rep_of_class(IsoClass(aw, _vec(top)), GF(p))
    _guard(rep, max_dim)
    return _filtrations(aw, _vec(top), (_vec(quot), _vec(sub)), p)


# interpolation

@dataclass(frozen=True)
class Interpolation:
    poly: LaurentPoly
    samples: dict = field(default_factory=dict)  # prime -> raw count
    fit_primes: tuple[int, ...] = ()
    check_primes: tuple[int, ...] = ()
    counter: Callable[[int], int] | None = field(default=None, compare=False, repr=False)

    def reproduces_samples(self) -> bool:
        return all(self.poly(p) == v for p, v in self.samples.items())

    def held_out(self, counter: Callable[[int], int] | None = None) -> tuple[int, int, int]:
        """Evaluate at the first unused prime: ``(p, raw, predicted)``."""
        counter = counter or self.counter
        used = set(self.samples)
        p = next(x for x in settings.primes + DEFAULT_PRIMES if x not in used)
        return p, int(counter(p)), self.poly(p)


def interpolate(counter: Callable[[int], int], degree_guard: int | None = None,
                primes: Sequence[int] | None = None, start: int = 4,
                n_check: int = 2) -> Interpolation:
    """
    Fit the counts at the first ``m`` primes and confirm at ``n_check`` more,
    growing ``m`` until the fit holds.  Zero is a valid answer.
    """
    primes = settings.primes if primes is None else tuple(primes)
    degree_guard = settings.degree_guard if degree_guard is None else degree_guard
    samples: dict[int, int] = {}

    def at(p: int) -> int:
        if p not in samples:
            samples[p] = int(counter(p))
        return samples[p]

    m = start
    while m - 1 <= degree_guard:
        if m + n_check > len(primes):
            break
        fit = tuple(primes[:m])
        check = tuple(primes[m:m + n_check])
        poly = newton_interpolate({p: at(p) for p in fit})
        if all(poly(p) == at(p) for p in check):
            return Interpolation(poly, dict(samples), fit, check, counter)
        m += 1
    raise InterpolationError(
        f"no polynomial of degree <= {degree_guard} fits the samples {sorted(samples.items())}")


# extensions

@lru_cache(maxsize=None)
def _ext_tally(aw: AdaptedWord, s: int, t: int, p: int) -> dict:
    return {cls.c: n for cls, n in extension_classes(aw, s, t, p)}


def ext_poly(aw: AdaptedWord, s: int, t: int, middle, degree_guard: int | None = None) -> Interpolation:
    """``E^{middle}_{b(t), b(s)}(q)``: nonzero classes in Ext^1(e_t, e_s) with middle term ``middle``."""
    m = _vec(middle)
    return interpolate(lambda p: _ext_tally(aw, s, t, p).get(m, 0), degree_guard)


def reduced_ext(E: LaurentPoly) -> tuple[LaurentPoly, Fraction]:
    """``e = E / (q - 1)`` and its value at 1."""
    e = E.exact_div(LaurentPoly({1: 1, 0: -1}, E.var))
    return e, e(1)


def annotate_ops(aw: AdaptedWord, ops: Sequence[ElementaryOp],
                 degree_guard: int | None = None) -> list[ElementaryOp]:
    """Fill in ``ext_poly`` and ``e_value`` for every operation."""
    out = []
    for u in ops:
        E = ext_poly(aw, u.s, u.t, u.middle, degree_guard).poly
        _, e1 = reduced_ext(E)
        out.append(ElementaryOp(u.s, u.t, u.middle, u.op, u.case_formula_agrees, E, e1))
    return out


@dataclass(frozen=True)
class RiedtmannReport:
    s: int
    t: int
    middle: Vector
    hall: LaurentPoly
    ext: LaurentPoly
    method: str
    passed: bool
    interpolations: tuple = ()


def riedtmann_check(aw: AdaptedWord, s: int, t: int, middle,
                    max_dim: int | None = None,
                    degree_guard: int | None = None) -> RiedtmannReport:
    """
    ``F^{middle}_{b(t), b(s)} a_{b(t)} a_{b(s)} = E^{middle}_{b(t), b(s)} a_{middle}``.
    Small middle terms are counted by subspace enumeration, larger ones through
    epimorphisms.
    """
    m = _vec(middle)
    nu = aw.nu
    bs = tuple(int(r == s) for r in range(nu))
    bt = tuple(int(r == t) for r in range(nu))
    limit = settings.max_dim if max_dim is None else max_dim
    method = "grassmannian" if sum(aw.dimension_of(m)) <= limit else "hom"

    def count(p: int) -> int:
        if method == "grassmannian":
            return hall_number(aw, m, bt, bs, p, max_dim)
        top = rep_of_class(IsoClass(aw, m), GF(p))
        return count_submodules_hom(top, bs, bt, aw)

    Fi = interpolate(count, degree_guard)
    Ei = ext_poly(aw, s, t, m, degree_guard)
    F, E = Fi.poly, Ei.poly
    ok = F * aut_order(aw, bt) * aut_order(aw, bs) == E * aut_order(aw, m)
    if not ok:
        log.warning("Riedtmann identity fails for (%d, %d) -> %s: F = %s, E = %s", s, t, m, F, E)
    return RiedtmannReport(s, t, m, F, E, method, ok, (Fi, Ei))


# Omega coefficients

@dataclass(frozen=True)
class OmegaCoeff:
    cprime: Vector
    c: Vector
    poly: LaurentPoly            # in u, lowest exponent 0
    value_at_1: Fraction
    derivative_at_1: Fraction    # d/du at u = 1
    hall: Interpolation | None = None

    @property
    def dv_at_1(self) -> Fraction:
        """d/dv at v = 1, with u = v^2."""
        return 2 * self.derivative_at_1


def omega(cat: OrbitCatalog, cprime, c, max_dim: int | None = None,
          degree_guard: int | None = None) -> OmegaCoeff:
    cprime, c = cat.check(_vec(cprime)), cat.check(_vec(c))
    return _omega(cat, cprime, c, max_dim, degree_guard)


@lru_cache(maxsize=None)
def _omega(cat: OrbitCatalog, cprime: Vector, c: Vector, max_dim: int,
           degree_guard: int) -> OmegaCoeff:
    aw = cat.word
    if not leq(cat, cprime, c):
        zero = LaurentPoly(var="u")
        return OmegaCoeff(cprime, c, zero, Fraction(0), Fraction(0))
    nu = aw.nu
    pieces = tuple(tuple(cprime[t] if r == t else 0 for r in range(nu))
                   for t in range(nu - 1, -1, -1) if cprime[t])
    rep = rep_of_class(IsoClass(aw, c), GF(2))
    _guard(rep, max_dim)
    interp = interpolate(lambda p: _filtrations(aw, c, pieces, p), degree_guard)
    num = interp.poly
    for piece in pieces:
        num = num * aut_order(aw, piece)
    R = num.exact_div(aut_order(aw, c))
    poly = R.invert_variable("u").normalized()
    return OmegaCoeff(cprime, c, poly, poly(1), poly.derivative()(1), interp)


@dataclass(frozen=True)
class MainCheck:
    cprime: Vector
    c: Vector
    value_at_1: Fraction
    D: Fraction                   # d/dv at v = 1
    connecting: tuple             # regular operations with c = c' + op
    predicted: Fraction
    multiple: bool                # more than one connecting operation
    passed: bool


def theorem_main_check(cat: OrbitCatalog, ops: Sequence[ElementaryOp], cprime, c,
                       max_dim: int | None = None) -> MainCheck:
    """
    For ``c' < c``: ``Omega(1) = 0`` and the v-derivative at 1 is nonzero
    exactly when a regular operation at ``c'`` lands on ``c``, where it equals
    ``-2 c'_s c'_t e``.  Contributions of several such operations are summed.
    """
    cprime, c = _vec(cprime), _vec(c)
    om = omega(cat, cprime, c, max_dim)
    D = om.dv_at_1
    conn = tuple(u for u in ops_at(cprime, ops) if u.regular
                 and tuple(x + y for x, y in zip(cprime, u.op)) == c)
    predicted = sum((-2 * cprime[u.s] * cprime[u.t] * u.e_value for u in conn), Fraction(0))
    multiple = len(conn) > 1
    if multiple:
        log.warning("%d regular operations connect %s to %s", len(conn), cprime, c)
    passed = om.value_at_1 == 0 and (D != 0) == bool(conn) and D == predicted
    return MainCheck(cprime, c, om.value_at_1, D, conn, predicted, multiple, passed)


@dataclass(frozen=True)
class SumCheck:
    c: Vector
    lhs: Fraction
    rhs: int
    passed: bool
    lower: Vector            # the starting class c' of the sum


def smoothness_sum_check(cat: OrbitCatalog, c, max_dim: int | None = None) -> list[SumCheck]:
    """
    ``-sum_{c_min < c'' <= c} dOmega^{c''}_{c_min}/du (1) = dim E_d(J(c))``, and for
    smooth ``c``, ``-sum_{c' < c'' <= c} dOmega^{c''}_{c'}/du (1) = d(c) - d(c')``
    for every ``c' <= c``.
    """
    c = cat.check(_vec(c))

    def total(lower: Vector) -> Fraction:
        return -sum((omega(cat, lower, x, max_dim).derivative_at_1 for x in cat.classes
                     if x != lower and leq(cat, lower, x) and leq(cat, x, c)), Fraction(0))

    bottom = cmin(cat)
    lhs = total(bottom)
    rhs = dim_E_J(cat, support(cat.word, c))
    out = [SumCheck(c, lhs, rhs, lhs == rhs, bottom)]
    if is_rationally_smooth(cat, c):
        dc = orbit_dim(cat, c)
        for lower in cat.classes:
            if leq(cat, lower, c):
                lhs = total(lower)
                rhs = dc - orbit_dim(cat, lower)
                out.append(SumCheck(c, lhs, rhs, lhs == rhs, lower))
    return out
