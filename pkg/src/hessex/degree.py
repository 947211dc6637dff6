"""Volume polynomials, projective degrees, and the fixed-point cross-check.

The volume polynomial of a Hessenberg function h is obtained from the
scaled Vandermonde product prod_{k<l} (x_k - x_l)/(l - k) by applying the
operator d/dx_j - d/dx_i once for every pair with i > h(j).  Evaluated at a
strictly decreasing integer vector it gives the embedding volume, and d!
times that value is the projective degree.  An independent route to the
same number sums rational-function contributions over all n! permutations;
the sum is exact, independent of the auxiliary vector t, and is evaluated
at rational t points rather than symbolically.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Iterable, Sequence

from .exactalg import MonomialOrder, MultiPoly
from .hessenberg import HessenbergFunction


def weight_variable(i: int) -> str:
    return f"x_{i}"


def weight_order(n: int) -> MonomialOrder:
    return MonomialOrder.lex([weight_variable(i) for i in range(1, n + 1)])


@dataclass(frozen=True)
class WeightVector:
    """A strictly decreasing integer vector of weights."""

    entries: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(int(v) for v in self.entries)
        object.__setattr__(self, "entries", vs)
        if any(vs[k] <= vs[k + 1] for k in range(len(vs) - 1)):
            raise ValueError(f"weights must be strictly decreasing: {vs}")

    @property
    def n(self) -> int:
        return len(self.entries)

    @classmethod
    def parse(cls, text: str) -> "WeightVector":
        return cls(tuple(int(v) for v in text.split(",")))

    def normalized(self) -> "WeightVector":
        """Shift so the last entry is zero."""
        last = self.entries[-1]
        return WeightVector(tuple(v - last for v in self.entries))

    def render(self) -> str:
        return ",".join(str(v) for v in self.entries)


@dataclass(frozen=True)
class VolumePolynomial:
    h: HessenbergFunction
    poly: MultiPoly
    degree: int

    def __post_init__(self):
        if not self.poly.is_homogeneous():
            raise ValueError("volume polynomial must be homogeneous")
        if not self.poly.is_zero() and self.poly.total_degree() != self.degree:
            raise ValueError("volume polynomial has the wrong degree")


def vandermonde_quotient(n: int) -> MultiPoly:
    """prod over k < l of (x_k - x_l) / (l - k)."""
    poly = MultiPoly.const(1, [weight_variable(i) for i in range(1, n + 1)])
    for k in range(1, n + 1):
        for l in range(k + 1, n + 1):
            diff = MultiPoly.variable(weight_variable(k)) - MultiPoly.variable(
                weight_variable(l)
            )
            poly = poly * diff / (l - k)
    return poly


@lru_cache(maxsize=None)
def volume_polynomial(h: HessenbergFunction) -> VolumePolynomial:
    """Apply the difference-of-derivatives operators to the scaled Vandermonde."""
    n = h.n
    poly = vandermonde_quotient(n)
    for j in range(1, n + 1):
        for i in range(h(j) + 1, n + 1):
            poly = poly.partial(weight_variable(j)) - poly.partial(
                weight_variable(i)
            )
    return VolumePolynomial(h, poly, h.dimension())


def volume(h: HessenbergFunction, lam: WeightVector) -> Fraction:
    """Value of the volume polynomial at a strict weight vector."""
    if lam.n != h.n:
        raise ValueError("weight vector length must match n")
    point = {
        weight_variable(i): Fraction(lam.entries[i - 1])
        for i in range(1, h.n + 1)
    }
    return volume_polynomial(h).poly.evaluate(point)


def degree(h: HessenbergFunction, lam: WeightVector) -> int:
    """d! times the volume; checked to be an integer, and positive when the
    volume carries its geometric meaning (indecomposable h)."""
    d = h.dimension()
    value = volume(h, lam) * factorial(d)
    if value.denominator != 1:
        raise ValueError(f"degree {value} is not an integer")
    if h.is_indecomposable() and value <= 0:
        raise ValueError(f"degree {value} is not positive")
    return int(value)


def default_t(n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(i) for i in range(1, n + 1))


def random_t_vectors(
    n: int, count: int, seed: int
) -> list[tuple[Fraction, ...]]:
    """Deterministic pairwise-distinct rational t vectors for cross-checks."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        while True:
            values = tuple(
                Fraction(rng.randint(-40, 40), rng.randint(1, 7))
                for _ in range(n)
            )
            if len(set(values)) == n:
                out.append(values)
                break
    return out


def _abbv_term(
    h: HessenbergFunction,
    lam: WeightVector,
    t: Sequence[Fraction],
    w: tuple[int, ...],
    d: int,
) -> Fraction:
    numerator = sum(
        (Fraction(lam.entries[i]) * t[w[i] - 1] for i in range(h.n)),
        Fraction(0),
    ) ** d
    denominator = Fraction(1)
    for j in range(1, h.n + 1):
        for i in range(j + 1, h(j) + 1):
            denominator *= t[w[j - 1] - 1] - t[w[i - 1] - 1]
    return numerator / denominator


def abbv_volume(
    h: HessenbergFunction,
    lam: WeightVector,
    t: Iterable[Fraction | int] | None = None,
    blocks: list[list[tuple[int, ...]]] | None = None,
) -> Fraction:
    """Exact fixed-point sum over all n! permutations.

    For pairwise distinct t the result is independent of t and equals the
    evaluated volume polynomial; ``blocks`` optionally supplies a fixed
    partition of the permutations (used for the deterministic parallel
    reduction in the CLI), summed in block order.
    """
    n = h.n
    if lam.n != n:
        raise ValueError("weight vector length must match n")
    ts = default_t(n) if t is None else tuple(Fraction(v) for v in t)
    if len(ts) != n:
        raise ValueError("t vector length must match n")
    if len(set(ts)) != n:
        raise ValueError(f"t values must be pairwise distinct: {ts}")
    d = h.dimension()
    if blocks is None:
        blocks = [list(permutations(range(1, n + 1)))]
    total = Fraction(0)
    for block in blocks:
        subtotal = Fraction(0)
        for w in block:
            subtotal += _abbv_term(h, lam, ts, w, d)
        total += subtotal
    return total / factorial(d)


def gc_flag_volume(lam: WeightVector) -> Fraction:
    """Closed-form volume of the full flag variety embedding:
    prod over k < l of (lam_k - lam_l) / (l - k)."""
    n = lam.n
    value = Fraction(1)
    for k in range(1, n + 1):
        for l in range(k + 1, n + 1):
            value *= Fraction(lam.entries[k - 1] - lam.entries[l - 1], l - k)
    return value
