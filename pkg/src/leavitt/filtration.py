"""The order statistic behind the specialization filtration.

Each monomial p q* gets three nonnegative integers relative to a
specialization: the total length n = l(p) + l(q), the special-suffix sum
s = sd(p) + sd(q), and the degree magnitude d = |l(p) - l(q)|.  The order
of the monomial is the exact rational

    ord(p q*) = n / (s + d + 1).

A monomial of order >= k certifies membership in the filtration stage at
level k; the stages shrink as k grows and the zero element sits at order
infinity.  Levels are nonnegative rationals throughout (integer levels are
a special case).

``product_precision`` answers: multiplying a tail of guaranteed order k by
a fixed monomial m, what order does every product term keep?  Minimizing
the length/suffix/degree bookkeeping of a product over all tail parameters
with n >= k(s + d + 1) gives the closed form

    min( (k - 1) / 2,  (k + n0 - d0) / (2 (s0 + d0 + 1)) ),

clamped at zero, where (n0, s0, d0) are the parameters of m.  The test
suite revalidates this closed form against a sampling oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra import Element, Monomial
from .specialization import Specialization

INF = math.inf

Order = Union[Fraction, float]


def as_order(k) -> Order:
    """Coerce a precision level to an exact rational (or +inf)."""
    if k == INF:
        return INF
    if isinstance(k, Fraction):
        return k
    if isinstance(k, int):
        return Fraction(k)
    raise TypeError(f"precision level must be exact, not {k!r}")


def format_order(k: Order) -> str:
    return "inf" if k == INF else str(Fraction(k))


@dataclass(frozen=True)
class MonomialParams:
    """Filtration parameters (n, s, d) of a monomial."""

    total_len: int
    special_sum: int
    abs_degree: int


def params_of(special: Specialization, m: Monomial) -> MonomialParams:
    return MonomialParams(
        m.total_length,
        special.special_suffix(m.left) + special.special_suffix(m.right),
        abs(m.degree),
    )


def order_of(special: Specialization, m: Monomial) -> Fraction:
    p = params_of(special, m)
    return Fraction(p.total_len, p.special_sum + p.abs_degree + 1)


def min_order(a: Element) -> Order:
    """Least order over the support; +inf for the zero element."""
    special = a.algebra.special
    if not a.terms:
        return INF
    return min(order_of(special, m) for m in a.terms)


def product_precision(special: Specialization, k, m: Monomial) -> Order:
    """Guaranteed order of (tail of order >= k) * m and m * (same tail)."""
    k = as_order(k)
    if k == INF:
        return INF
    p = params_of(special, m)
    bound = min(
        Fraction(k - 1, 2),
        Fraction(k + p.total_len - p.abs_degree, 2 * (p.special_sum + p.abs_degree + 1)),
    )
    return max(bound, Fraction(0))
