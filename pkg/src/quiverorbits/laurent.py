"""Exact univariate Laurent polynomials with rational coefficients."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = ["LaurentPoly", "gl_order", "newton_interpolate"]


@dataclass(frozen=True)
class LaurentPoly:
    """
    ``sum_k coeffs[k] * var**k``.  Zero coefficients are never stored, so the
    zero polynomial has an empty mapping.
    """
    coeffs: Mapping[int, Fraction] = field(default_factory=dict)
    var: str = "q"

    def __post_init__(self):
        clean = {int(k): Fraction(v) for k, v in dict(self.coeffs).items() if v != 0}
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __hash__(self):
        return hash((tuple(self.coeffs.items()), self.var))

    # constructors

    @classmethod
    def const(cls, c, var: str = "q") -> "LaurentPoly":
        return cls({0: c}, var)

    @classmethod
    def monomial(cls, k: int, c=1, var: str = "q") -> "LaurentPoly":
        return cls({k: c}, var)

    @classmethod
    def from_pairs(cls, pairs: Iterable, var: str = "q") -> "LaurentPoly":
        out: dict[int, Fraction] = {}
        for k, c in pairs:
            out[int(k)] = out.get(int(k), Fraction(0)) + Fraction(c)
        return cls(out, var)

    def to_pairs(self) -> list[tuple[int, str]]:
        """Exponent/coefficient pairs with coefficients as ``"num/den"`` strings."""
        return [(k, f"{c.numerator}/{c.denominator}") for k, c in self.coeffs.items()]

    # arithmetic

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.var != self.var and other.coeffs and self.coeffs:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        return LaurentPoly.const(other, self.var)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.coeffs.items()}, self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[int, Fraction] = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return LaurentPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are only defined for monomials; use shift()")
        out = LaurentPoly.const(1, self.var)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other, self.var)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, x):
        x = Fraction(x)
        return sum((c * x ** k for k, c in self.coeffs.items()), Fraction(0))

    # structure

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        if self.is_zero:
            raise ValueError("the zero polynomial has no degree")
        return max(self.coeffs)

    @property
    def valuation(self) -> int:
        """Lowest exponent."""
        if self.is_zero:
            raise ValueError("the zero polynomial has no valuation")
        return min(self.coeffs)

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()}, self.var)

    def normalized(self) -> "LaurentPoly":
        """Shift so the lowest exponent is 0 (zero stays zero)."""
        return self if self.is_zero else self.shift(-self.valuation)

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly({k - 1: k * c for k, c in self.coeffs.items() if k}, self.var)

    def invert_variable(self, var: str | None = None) -> "LaurentPoly":
        """Substitute ``var -> 1/var`` (optionally renaming the variable)."""
        return LaurentPoly({-k: c for k, c in self.coeffs.items()}, var or self.var)

    def divmod(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        """
        Division in ``Q[x, 1/x]`` after clearing the lowest monomials; the
        remainder is zero exactly when ``other`` divides ``self``.
        """
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return LaurentPoly({}, self.var), LaurentPoly({}, self.var)
        sa, sb = self.valuation, other.valuation
        num = dict(self.shift(-sa).coeffs)
        den = other.shift(-sb).coeffs
        dd = max(den)
        lead = den[dd]
        quot: dict[int, Fraction] = {}
        while num and max(num) >= dd:
            top = max(num)
            f = num[top] / lead
            quot[top - dd] = f
            for k, c in den.items():
                v = num.get(k + top - dd, 0) - f * c
                if v:
                    num[k + top - dd] = v
                else:
                    num.pop(k + top - dd, None)
        q = LaurentPoly(quot, self.var).shift(sa - sb)
        r = LaurentPoly(num, self.var).shift(sa)
        return q, r

    def exact_div(self, other) -> "LaurentPoly":
        q, r = self.divmod(self._coerce(other))
        if not r.is_zero:
            raise ArithmeticError(f"{other} does not divide {self} (remainder {r})")
        return q

    def root_multiplicity(self, x=1) -> int:
        """Order of vanishing at ``x`` (0 for a nonzero value)."""
        if self.is_zero:
            raise ValueError("the zero polynomial vanishes to infinite order")
        m, p = 0, self
        while p(x) == 0:
            p = p.derivative()
            m += 1
        return m

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for k, c in sorted(self.coeffs.items(), reverse=True):
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            if mono and c == 1:
                s = mono
            elif mono and c == -1:
                s = f"-{mono}"
            else:
                s = f"{c}{'*' if mono else ''}{mono}"
            terms.append(s)
        return " + ".join(terms).replace("+ -", "- ")

    __repr__ = __str__


def gl_order(m: int, var: str = "q") -> LaurentPoly:
    """``|GL_m(F_q)| = prod_{k<m} (q^m - q^k)``."""
    out = LaurentPoly.const(1, var)
    for k in range(m):
        out = out * LaurentPoly({m: 1, k: -1}, var)
    return out


def newton_interpolate(points: Mapping[int, int | Fraction], var: str = "q") -> LaurentPoly:
    """The unique polynomial of degree < len(points) through ``points``."""
    xs = list(points)
    coef = [Fraction(points[x]) for x in xs]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = LaurentPoly.const(coef[-1], var)
    for i in range(n - 2, -1, -1):
        poly = poly * LaurentPoly({1: 1, 0: -xs[i]}, var) + coef[i]
    return poly
