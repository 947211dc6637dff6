"""Structure theory of the chart at the longest permutation.

In the w0 chart the inverse of the chart matrix has entries given by a
triangular recursion (the y-table below), the ideal generators take a closed
form assembled from that table, and for an indecomposable Hessenberg
function the quotient by the ideal is a polynomial ring: each generator
solves one "non-free" coordinate in terms of the remaining "free" ones.
The same elimination works for the nonzero fibers of the one-parameter
family, with a different set of eliminated coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactalg import Monomial, MultiPoly, PolyMatrix, Scalar
from .charts import (
    ChartIdeal,
    ChartLayout,
    FamilyParameters,
    chart_variable,
    family_generators,
    specialize_fiber,
)
from .hessenberg import HessenbergFunction, Permutation


def w0_variable_positions(n: int) -> list[tuple[int, int]]:
    """Chart coordinates at w0: positions (i, j) with i + j <= n."""
    return [(i, j) for i in range(1, n) for j in range(1, n - i + 1)]


def _w0_entry(n: int, r: int, c: int) -> MultiPoly:
    """Entry of the w0 chart matrix at (r, c): variable, 1, or 0."""
    if r + c == n + 1:
        return MultiPoly.const(1)
    if r + c > n + 1:
        return MultiPoly.zero()
    return MultiPoly.variable(chart_variable(r, c))


class YTable:
    """Entries of the inverse chart matrix at w0, indexed from the corner.

    The table value at (i, j) is the (n+1-i, n+1-j) entry of the inverse of
    the w0 chart matrix.  It satisfies: value 1 at j = n+1-i, value 0 for
    i > n+1-j, and the entry at (i, j) involves only chart variables x_{k,l}
    with k >= i and l >= j.
    """

    __slots__ = ("n", "_entries")

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("table requires n >= 2")
        self.n = n
        entries: dict[tuple[int, int], MultiPoly] = {}
        for i in range(1, n + 1):
            for j in range(n, 0, -1):
                acc = MultiPoly.zero()
                for k in range(1, n - j + 1):
                    acc = acc + entries[(i, n + 1 - k)] * MultiPoly.variable(
                        chart_variable(k, j)
                    )
                delta = 1 if n + 1 - i == j else 0
                entries[(i, j)] = MultiPoly.const(delta) - acc
        self._entries = entries

    def entry(self, i: int, j: int) -> MultiPoly:
        return self._entries[(i, j)]

    def inverse_matrix(self) -> PolyMatrix:
        """The inverse of the w0 chart matrix, assembled from the table."""
        n = self.n
        return PolyMatrix(
            [
                [self.entry(n + 1 - r, n + 1 - c) for c in range(1, n + 1)]
                for r in range(1, n + 1)
            ]
        )


@lru_cache(maxsize=None)
def y_table(n: int) -> YTable:
    return YTable(n)


def generators_closed_form(h: HessenbergFunction) -> ChartIdeal:
    """Generators of the w0-chart ideal assembled from the y-table.

    The generator at matrix position (row, j), row > h(j), equals
    sum over k from n+1-row to n-j of (entry at (k+1, j)) * y_{n+1-row, n+1-k};
    when h is indecomposable the k = n+1-row summand is the lone coordinate
    x_{n+2-row, j}, which is what the elimination solves for.
    """
    n = h.n
    table = y_table(n)
    gens = []
    for j in range(1, n + 1):
        for row in range(h(j) + 1, n + 1):
            i = n + 1 - row
            acc = MultiPoly.zero()
            for k in range(i, n - j + 1):
                acc = acc + _w0_entry(n, k + 1, j) * table.entry(i, n + 1 - k)
            gens.append((row, j, acc))
    return ChartIdeal(
        ChartLayout(Permutation.longest(n)), h, tuple(gens), family=False
    )


@dataclass(frozen=True)
class VariableClassification:
    """Free and non-free chart coordinates at w0 for an indecomposable h.

    Non-free positions are (i, j) with 1 <= j <= n-1 and 2 <= i <= n+1-h(j);
    they are the coordinates eliminated in the quotient.  The count of free
    positions equals the dimension sum(h(i) - i).

    A nearby prose passage defines the non-free bound as n+1-j instead of
    n+1-h(j); this implementation follows the diagrams and the elimination
    itself, which give n+1-h(j).
    """

    h: HessenbergFunction
    non_free: frozenset[tuple[int, int]]
    free: frozenset[tuple[int, int]]

    def __post_init__(self):
        if len(self.free) != self.h.dimension():
            raise ValueError("free-variable count does not match dimension")


def classify_variables(h: HessenbergFunction) -> VariableClassification:
    if not h.is_indecomposable():
        raise ValueError(
            "variable classification requires an indecomposable Hessenberg "
            "function; decompose first"
        )
    n = h.n
    non_free = frozenset(
        (i, j)
        for j in range(1, n)
        for i in range(2, n + 2 - h(j))
    )
    free = frozenset(w0_variable_positions(n)) - non_free
    return VariableClassification(h, non_free, free)


@dataclass(frozen=True)
class Elimination:
    """A triangular substitution solving each non-free coordinate in terms
    of free coordinates only, together with the residual check that every
    ideal generator maps to zero under the substitution."""

    h: HessenbergFunction
    substitution: tuple[tuple[tuple[int, int], MultiPoly], ...]
    free: frozenset[tuple[int, int]]
    non_free: frozenset[tuple[int, int]]
    residuals_ok: bool
    z: Fraction | None = None
    gamma: tuple[Fraction, ...] | None = None

    def image(self, position: tuple[int, int]) -> MultiPoly:
        for pos, poly in self.substitution:
            if pos == position:
                return poly
        raise KeyError(f"{position} is not a non-free position")

    def as_dict(self) -> dict[tuple[int, int], MultiPoly]:
        return dict(self.substitution)


def _back_substitute(
    raw: dict[tuple[int, int], MultiPoly],
    free: frozenset[tuple[int, int]],
) -> dict[tuple[int, int], MultiPoly]:
    """Resolve raw images so they involve free coordinates only.

    Positions are processed by descending column, then descending row: every
    non-free coordinate occurring in a raw image lies in a later column, or
    in the same column strictly below, so its final image is already known.
    """
    non_free_names = {chart_variable(i, j): (i, j) for (i, j) in raw}
    finalized: dict[tuple[int, int], MultiPoly] = {}
    final_by_name: dict[str, MultiPoly] = {}
    for (i, j) in sorted(raw, key=lambda p: (-p[1], -p[0])):
        img = raw[(i, j)]
        pending = img.variables() & set(non_free_names)
        if pending:
            img = img.substitute({v: final_by_name[v] for v in pending})
        leftover = img.variables() & set(non_free_names)
        if leftover:
            raise ValueError(
                f"substitution image for {(i, j)} still contains non-free "
                f"coordinates {sorted(leftover)}"
            )
        finalized[(i, j)] = img
        final_by_name[chart_variable(i, j)] = img
    return finalized


def eliminate(h: HessenbergFunction) -> Elimination:
    """Solve the w0-chart generators for the non-free coordinates.

    Each generator at position (row, j) has the form x_{n+2-row, j} + rest,
    so it is solved for that coordinate; full back-substitution leaves
    images in the free coordinates only, and substituting the images back
    into every generator must give the zero polynomial.
    """
    if not h.is_indecomposable():
        raise ValueError(
            "elimination requires an indecomposable Hessenberg function"
        )
    classification = classify_variables(h)
    ideal = generators_closed_form(h)
    raw: dict[tuple[int, int], MultiPoly] = {}
    for (row, j, f) in ideal.generators:
        i = h.n + 1 - row
        target = (i + 1, j)
        var = MultiPoly.variable(chart_variable(*target))
        raw[target] = var - f
    if set(raw) != set(classification.non_free):
        raise ValueError("generator positions do not match non-free positions")
    finalized = _back_substitute(raw, classification.free)
    bindings = {
        chart_variable(i, j): poly for (i, j), poly in finalized.items()
    }
    residuals_ok = all(
        f.substitute(bindings).is_zero() for (_, _, f) in ideal.generators
    )
    ordered = tuple(
        ((i, j), finalized[(i, j)]) for (i, j) in sorted(finalized)
    )
    return Elimination(
        h=h,
        substitution=ordered,
        free=classification.free,
        non_free=classification.non_free,
        residuals_ok=residuals_ok,
    )


@dataclass(frozen=True)
class TechLemmaEntry:
    position: tuple[int, int]
    eliminated: tuple[int, int]
    ok: bool
    offending_monomials: tuple[str, ...] = ()


@dataclass(frozen=True)
class TechLemmaReport:
    h: HessenbergFunction
    entries: tuple[TechLemmaEntry, ...]
    ok: bool


def check_tech_lemma(h: HessenbergFunction) -> TechLemmaReport:
    """Check the leading-form structure of every w0-chart generator.

    The generator at (row, j) must equal x_{n+2-row, j} - g where every
    monomial of g is divisible by some coordinate x_{n+1-row, l} with
    j+1 <= l <= row-1.  Monomial-wise divisibility is exact membership in
    the ideal those coordinates generate, so this is a complete certificate.
    """
    if not h.is_indecomposable():
        raise ValueError(
            "the generator leading-form check requires an indecomposable "
            "Hessenberg function"
        )
    n = h.n
    ideal = generators_closed_form(h)
    entries = []
    for (row, j, f) in ideal.generators:
        i = n + 1 - row
        target = (i + 1, j)
        g = MultiPoly.variable(chart_variable(*target)) - f
        allowed = [chart_variable(i, l) for l in range(j + 1, n - i + 1)]
        bad = []
        for m in g.terms:
            if m.is_one() or not any(m.exponent(v) > 0 for v in allowed):
                bad.append(repr(m))
        entries.append(
            TechLemmaEntry(
                position=(row, j),
                eliminated=target,
                ok=not bad,
                offending_monomials=tuple(sorted(bad)),
            )
        )
    return TechLemmaReport(h, tuple(entries), all(e.ok for e in entries))


def fiber_non_free_positions(h: HessenbergFunction) -> frozenset[tuple[int, int]]:
    """Coordinates eliminated in a nonzero fiber: (i, j) with i <= n - h(j)."""
    n = h.n
    return frozenset(
        (i, j) for j in range(1, n) for i in range(1, n - h(j) + 1)
    )


def eliminate_family_fiber(
    h: HessenbergFunction,
    z: Scalar,
    params: FamilyParameters | None = None,
) -> Elimination:
    """Solve the fiber generators at t = z (z nonzero) in the w0 chart.

    The generator at (row, j) is linear in x_{n+1-row, j} with constant
    leading coefficient z * (gamma_{n+1-row} - gamma_{n+1-j}), which is
    nonzero for z != 0 and pairwise distinct gamma, so each generator is
    solved for that coordinate.  The resulting free set is
    {(i, j) : i > n - h(j)}, of the same size as in the t = 0 fiber.
    """
    if not h.is_indecomposable():
        raise ValueError(
            "fiber elimination requires an indecomposable Hessenberg function"
        )
    z = Fraction(z)
    if z == 0:
        raise ValueError("z must be nonzero; use eliminate for the zero fiber")
    n = h.n
    if params is None:
        params = FamilyParameters.default(n)
    if params.gamma is None:
        raise ValueError("fiber elimination needs numeric gamma values")
    if len(params.gamma) != n:
        raise ValueError(f"gamma has length {len(params.gamma)}, expected {n}")
    w0 = Permutation.longest(n)
    fiber = specialize_fiber(family_generators(w0, h, params), z)
    non_free = fiber_non_free_positions(h)
    free = frozenset(w0_variable_positions(n)) - non_free
    raw: dict[tuple[int, int], MultiPoly] = {}
    for (row, j, f) in fiber.generators:
        i = n + 1 - row
        target = (i, j)
        name = chart_variable(*target)
        rest = f.substitute({name: MultiPoly.zero()})
        linear_part = f - rest
        expected_coeff = z * (params.gamma[i - 1] - params.gamma[n - j])
        if linear_part != MultiPoly.from_terms(
            {Monomial.variable(name): expected_coeff}
        ):
            raise ValueError(
                f"fiber generator at {(row, j)} is not linear in {name} with "
                f"the expected leading coefficient"
            )
        raw[target] = rest / (-expected_coeff)
    if set(raw) != set(non_free):
        raise ValueError("fiber generator positions do not match non-free set")
    finalized = _back_substitute(raw, free)
    bindings = {
        chart_variable(i, j): poly for (i, j), poly in finalized.items()
    }
    residuals_ok = all(
        f.substitute(bindings).is_zero() for (_, _, f) in fiber.generators
    )
    ordered = tuple(
        ((i, j), finalized[(i, j)]) for (i, j) in sorted(finalized)
    )
    return Elimination(
        h=h,
        substitution=ordered,
        free=free,
        non_free=non_free,
        residuals_ok=residuals_ok,
        z=z,
        gamma=params.gamma,
    )
