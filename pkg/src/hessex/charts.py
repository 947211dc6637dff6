"""Affine chart matrices and the local ideal generators they produce.

Each permutation w indexes an affine chart of the flag variety whose points
are matrices with a 1 at position (w(j), j), zeros at (w(i), j) for j > i,
and free coordinates x_{r,c} elsewhere (named by matrix position).  The
chart-local generators of the variety cut out by a regular nilpotent
operator are the (i, j) entries of (wM)^{-1} N (wM) with i > h(j); the
one-parameter family version replaces N by the bidiagonal matrix with
t*gamma_1, ..., t*gamma_n on the diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .exactalg import MultiPoly, PolyMatrix, Scalar
from .hessenberg import HessenbergFunction, Permutation

TIME_VARIABLE = "t"


def chart_variable(i: int, j: int) -> str:
    return f"x_{{{i},{j}}}"


def gamma_variable(i: int) -> str:
    return f"g_{i}"


def chart_variable_order(n: int, family: bool = False) -> list[str]:
    """Deterministic variable priority: x_{i,j} row-major, then t, then g_i."""
    names = [
        chart_variable(i, j) for i in range(1, n + 1) for j in range(1, n + 1)
    ]
    if family:
        names.append(TIME_VARIABLE)
        names.extend(gamma_variable(i) for i in range(1, n + 1))
    return names


@dataclass(frozen=True)
class ChartLayout:
    """Symbolic shape of the chart matrix for a permutation w."""

    w: Permutation

    @property
    def n(self) -> int:
        return self.w.n

    def entry_kind(self, r: int, c: int) -> str:
        """One of 'one', 'zero', 'var' for matrix position (r, c)."""
        i = self.w.inverse(r)
        if c == i:
            return "one"
        if c > i:
            return "zero"
        return "var"

    def variable_positions(self) -> tuple[tuple[int, int], ...]:
        n = self.n
        return tuple(
            (r, c)
            for r in range(1, n + 1)
            for c in range(1, n + 1)
            if self.entry_kind(r, c) == "var"
        )


def build_chart_matrix(w: Permutation) -> PolyMatrix:
    """The chart matrix for w, with variables named by matrix position."""
    layout = ChartLayout(w)
    n = w.n
    rows = []
    for r in range(1, n + 1):
        row: list = []
        for c in range(1, n + 1):
            kind = layout.entry_kind(r, c)
            if kind == "one":
                row.append(1)
            elif kind == "zero":
                row.append(0)
            else:
                row.append(MultiPoly.variable(chart_variable(r, c)))
        rows.append(row)
    return PolyMatrix(rows)


def nilpotent_matrix(n: int) -> PolyMatrix:
    """Single nilpotent Jordan block: 1s on the superdiagonal."""
    return PolyMatrix(
        [[1 if j == i + 1 else 0 for j in range(n)] for i in range(n)]
    )


@dataclass(frozen=True)
class FamilyParameters:
    """Deformation parameters: a pairwise-distinct gamma vector, or symbolic
    gamma variables g_1, ..., g_n when ``gamma`` is None."""

    gamma: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.gamma is not None:
            g = tuple(Fraction(v) for v in self.gamma)
            object.__setattr__(self, "gamma", g)
            if len(set(g)) != len(g):
                raise ValueError(f"gamma values must be pairwise distinct: {g}")

    @classmethod
    def default(cls, n: int) -> "FamilyParameters":
        return cls(tuple(Fraction(i) for i in range(1, n + 1)))

    def gamma_entry(self, i: int, n: int) -> MultiPoly:
        if self.gamma is None:
            return MultiPoly.variable(gamma_variable(i))
        if len(self.gamma) != n:
            raise ValueError(
                f"gamma has length {len(self.gamma)}, expected {n}"
            )
        return MultiPoly.const(self.gamma[i - 1])


def family_matrix(n: int, params: FamilyParameters) -> PolyMatrix:
    """Bidiagonal matrix with t*gamma_i on the diagonal, 1s above it."""
    t = MultiPoly.variable(TIME_VARIABLE)
    rows = []
    for i in range(1, n + 1):
        row: list = []
        for j in range(1, n + 1):
            if j == i:
                row.append(t * params.gamma_entry(i, n))
            elif j == i + 1:
                row.append(1)
            else:
                row.append(0)
        rows.append(row)
    return PolyMatrix(rows)


@dataclass(frozen=True)
class ChartIdeal:
    """An ordered list of chart-local generators indexed by the positions
    (i, j) with i > h(j), listed in ascending (j, i)."""

    layout: ChartLayout
    h: HessenbergFunction
    generators: tuple[tuple[int, int, MultiPoly], ...]
    family: bool
    params: FamilyParameters | None = None
    t_value: Fraction | None = None

    @property
    def w(self) -> Permutation:
        return self.layout.w

    def generator_positions(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i, j, _ in self.generators)

    def polynomials(self) -> tuple[MultiPoly, ...]:
        return tuple(p for _, _, p in self.generators)


def generator_positions(h: HessenbergFunction) -> list[tuple[int, int]]:
    """Positions (i, j) with i > h(j), ascending in (j, i)."""
    n = h.n
    return [
        (i, j) for j in range(1, n + 1) for i in range(h(j) + 1, n + 1)
    ]


@lru_cache(maxsize=None)
def _conjugated_nilpotent(w: Permutation) -> PolyMatrix:
    wm = build_chart_matrix(w)
    return wm.unimodular_inverse() * nilpotent_matrix(w.n) * wm


@lru_cache(maxsize=None)
def _conjugated_family(w: Permutation, params: FamilyParameters) -> PolyMatrix:
    wm = build_chart_matrix(w)
    return wm.unimodular_inverse() * family_matrix(w.n, params) * wm


def ideal_generators(w: Permutation, h: HessenbergFunction) -> ChartIdeal:
    """Generators of the chart-local defining ideal for the nilpotent operator."""
    if w.n != h.n:
        raise ValueError("permutation and Hessenberg function sizes differ")
    conj = _conjugated_nilpotent(w)
    gens = tuple(
        (i, j, conj.entry(i, j)) for (i, j) in generator_positions(h)
    )
    return ChartIdeal(ChartLayout(w), h, gens, family=False)


def family_generators(
    w: Permutation,
    h: HessenbergFunction,
    params: FamilyParameters | None = None,
) -> ChartIdeal:
    """Generators of the one-parameter family ideal in the chart of w.

    The parameter t stays symbolic; gamma is numeric (default 1..n) or
    symbolic when ``params.gamma`` is None.
    """
    if w.n != h.n:
        raise ValueError("permutation and Hessenberg function sizes differ")
    if params is None:
        params = FamilyParameters.default(w.n)
    conj = _conjugated_family(w, params)
    gens = tuple(
        (i, j, conj.entry(i, j)) for (i, j) in generator_positions(h)
    )
    return ChartIdeal(ChartLayout(w), h, gens, family=True, params=params)


def specialize_fiber(ci: ChartIdeal, z: Scalar) -> ChartIdeal:
    """Substitute t -> z in every generator of a family ideal."""
    if not ci.family:
        raise ValueError("specialize_fiber requires a family ideal")
    z = Fraction(z)
    binding = {TIME_VARIABLE: MultiPoly.const(z)}
    gens = tuple(
        (i, j, p.substitute(binding)) for (i, j, p) in ci.generators
    )
    return ChartIdeal(
        ci.layout, ci.h, gens, family=False, params=ci.params, t_value=z
    )
