"""Exact algebra for sums of c * y^p * exp(a * y^q) terms.

This family is closed under ordinary differentiation, conformable
differentiation, and multiplication, which is all the Rodriguez-formula
eigenfunctions and their residual checks need.  Expressions are canonical by
construction: terms with matching (p, a, q) are merged and vanishing
coefficients dropped; no further simplification is attempted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .conformable import FractionalOrder

# Coefficients below this relative size are treated as exact zeros.
COEFF_DROP_TOL = 1e-14
# Powers produced by different arithmetic orderings of the same lattice walk
# can differ in the last ulp; merging uses this closeness window instead of
# bitwise equality.
POWER_MERGE_TOL = 1e-12


@dataclass(frozen=True)
class PolyExpTerm:
    """One term c * y^p * exp(a * y^q); q must be positive."""

    coeff: complex
    power: float
    expcoeff: float = 0.0
    exppower: float = 1.0

    def __post_init__(self):
        if not self.exppower > 0.0:
            raise ValueError(f"exponential power q must be positive, got {self.exppower}")
        c = complex(self.coeff)
        if not (np.isfinite(c.real) and np.isfinite(c.imag)):
            raise ValueError("term coefficient must be finite")
        object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "power", float(self.power))
        object.__setattr__(self, "expcoeff", float(self.expcoeff))
        object.__setattr__(self, "exppower", float(self.exppower))


def _close(u: float, v: float) -> bool:
    return abs(u - v) <= POWER_MERGE_TOL * max(1.0, abs(u), abs(v))


def _merge(terms: Iterable[PolyExpTerm]) -> tuple[PolyExpTerm, ...]:
    # a = 0 makes q irrelevant; canonicalize so pure powers share one family
    canon = [
        PolyExpTerm(t.coeff, t.power, 0.0, 1.0) if t.expcoeff == 0.0 else t
        for t in terms
    ]
    canon.sort(key=lambda t: (t.exppower, t.expcoeff, t.power))
    merged: list[PolyExpTerm] = []
    for t in canon:
        if merged:
            last = merged[-1]
            if (
                _close(last.exppower, t.exppower)
                and _close(last.expcoeff, t.expcoeff)
                and _close(last.power, t.power)
            ):
                merged[-1] = PolyExpTerm(
                    last.coeff + t.coeff, last.power, last.expcoeff, last.exppower
                )
                continue
        merged.append(t)
    scale = max((abs(t.coeff) for t in merged), default=0.0)
    if scale == 0.0:
        return ()
    return tuple(t for t in merged if abs(t.coeff) > COEFF_DROP_TOL * scale)


class PolyExpSum:
    """Immutable, canonical sum of PolyExpTerm values.  Callable on y."""

    __slots__ = ("terms",)

    def __init__(self, terms: Sequence[PolyExpTerm] = ()):
        object.__setattr__(self, "terms", _merge(terms))

    def __setattr__(self, name, value):
        raise AttributeError("PolyExpSum is immutable")

    @classmethod
    def single(cls, coeff, power: float, expcoeff: float = 0.0, exppower: float = 1.0) -> "PolyExpSum":
        return cls((PolyExpTerm(coeff, power, expcoeff, exppower),))

    @classmethod
    def zero(cls) -> "PolyExpSum":
        return cls(())

    @classmethod
    def constant(cls, value) -> "PolyExpSum":
        return cls.single(value, 0.0)

    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, factor) -> "PolyExpSum":
        return PolyExpSum(tuple(
            PolyExpTerm(t.coeff * factor, t.power, t.expcoeff, t.exppower) for t in self.terms
        ))

    def conjugate(self) -> "PolyExpSum":
        return PolyExpSum(tuple(
            PolyExpTerm(t.coeff.conjugate(), t.power, t.expcoeff, t.exppower) for t in self.terms
        ))

    def __add__(self, other: "PolyExpSum") -> "PolyExpSum":
        return PolyExpSum(self.terms + other.terms)

    def __sub__(self, other: "PolyExpSum") -> "PolyExpSum":
        return self + other.scale(-1.0)

    def __mul__(self, other):
        if isinstance(other, PolyExpSum):
            return multiply(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __call__(self, y):
        return evaluate(self, y)

    def __eq__(self, other):
        return isinstance(other, PolyExpSum) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def as_text(self) -> str:
        """Plain-text rendering as a sum of 'c * y^p * exp(a*y^q)' clauses."""
        if not self.terms:
            return "0"
        clauses = []
        for t in self.terms:
            c = t.coeff
            cs = f"{c.real:.12g}" if c.imag == 0.0 else f"({c.real:.12g}{c.imag:+.12g}j)"
            clause = f"{cs} * y^{t.power:.12g}"
            if t.expcoeff != 0.0:
                clause += f" * exp({t.expcoeff:.12g}*y^{t.exppower:.12g})"
            clauses.append(clause)
        return " + ".join(clauses)

    def __repr__(self):
        return f"PolyExpSum({self.as_text()})"


def evaluate(expr: PolyExpSum, y):
    """Numerical value of the sum at y (scalar or array); complex result."""
    yarr = np.asarray(y, dtype=float)
    if np.any(yarr < 0.0):
        raise ValueError("polyexp expressions are defined for y >= 0")
    if np.any(yarr == 0.0) and any(t.power < 0.0 for t in expr.terms):
        raise ValueError("evaluation at y = 0 requires all powers to be nonnegative")
    total = np.zeros(yarr.shape, dtype=complex)
    for t in expr.terms:
        total += t.coeff * yarr ** t.power * np.exp(t.expcoeff * yarr ** t.exppower)
    if total.shape == ():
        return complex(total)
    return total


def differentiate(expr: PolyExpSum) -> PolyExpSum:
    """Exact d/dy; each term maps to at most two terms of the same family."""
    out: list[PolyExpTerm] = []
    for t in expr.terms:
        if t.power != 0.0:
            out.append(PolyExpTerm(t.coeff * t.power, t.power - 1.0, t.expcoeff, t.exppower))
        if t.expcoeff != 0.0:
            out.append(
                PolyExpTerm(
                    t.coeff * t.expcoeff * t.exppower,
                    t.power + (t.exppower - 1.0),
                    t.expcoeff,
                    t.exppower,
                )
            )
    return PolyExpSum(tuple(out))


def differentiate_n(expr: PolyExpSum, n: int) -> PolyExpSum:
    """n-fold exact derivative with merging after every step; n = 0 is identity."""
    if n < 0:
        raise ValueError("derivative order must be nonnegative")
    for _ in range(n):
        expr = differentiate(expr)
    return expr


def conformable_diff(expr: PolyExpSum, order: FractionalOrder) -> PolyExpSum:
    """Exact conformable derivative y^(1-a) d/dy; powers shift by -a and q-a."""
    a = order.alpha
    out: list[PolyExpTerm] = []
    for t in expr.terms:
        if t.power != 0.0:
            out.append(PolyExpTerm(t.coeff * t.power, t.power - a, t.expcoeff, t.exppower))
        if t.expcoeff != 0.0:
            out.append(
                PolyExpTerm(
                    t.coeff * t.expcoeff * t.exppower,
                    t.power + (t.exppower - a),
                    t.expcoeff,
                    t.exppower,
                )
            )
    return PolyExpSum(tuple(out))


def multiply(lhs: PolyExpSum, rhs: PolyExpSum) -> PolyExpSum:
    """Termwise product.  Exponential families must agree (equal q) unless one
    side is a pure power (a = 0)."""
    out: list[PolyExpTerm] = []
    for u in lhs.terms:
        for v in rhs.terms:
            if u.expcoeff == 0.0:
                a, q = v.expcoeff, v.exppower
            elif v.expcoeff == 0.0:
                a, q = u.expcoeff, u.exppower
            elif u.exppower == v.exppower:
                a, q = u.expcoeff + v.expcoeff, u.exppower
            else:
                raise ValueError(
                    f"cannot multiply exponential families with different powers "
                    f"q={u.exppower} and q={v.exppower}"
                )
            out.append(PolyExpTerm(u.coeff * v.coeff, u.power + v.power, a, q))
    return PolyExpSum(tuple(out))
