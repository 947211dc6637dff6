"""The two-dimensional Newton-Okounkov pipeline for the n = 3 surface case.

Sections of the embedding line bundle for the weight (a1+a2, a1, 0) are
indexed by semistandard tableaux with entries in {1,2,3}, recorded by column
multiplicities.  Restricted to the surface chart they become polynomials in
two variables x, y; the lowest-term valuation (lexicographic, x before y)
applied to the linear span yields a set of lattice points whose convex hull
is certified against the predicted vertices by an exact area computation:
the hull area must equal the embedding volume computed by the degree
module, which is the level-one certification strategy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .degree import WeightVector, volume
from .exactalg import MonomialOrder, MultiPoly
from .hessenberg import HessenbergFunction

X = "x"
Y = "y"

SURFACE_ORDER = MonomialOrder.lex((X, Y))


@dataclass(frozen=True)
class ColumnCounts:
    """Column multiplicities (k12, k13, k23, k1, k2, k3) of a semistandard
    tableau of shape (a1+a2, a1, 0) with entries in {1,2,3}."""

    k12: int
    k13: int
    k23: int
    k1: int
    k2: int
    k3: int

    def __post_init__(self):
        counts = (self.k12, self.k13, self.k23, self.k1, self.k2, self.k3)
        if any(k < 0 for k in counts):
            raise ValueError(f"column counts must be nonnegative: {counts}")
        if self.k23 != 0 and self.k1 != 0:
            raise ValueError(
                "a tableau with a (23) column cannot contain a (1) column"
            )

    @property
    def a1(self) -> int:
        return self.k12 + self.k13 + self.k23

    @property
    def a2(self) -> int:
        return self.k1 + self.k2 + self.k3

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.k12, self.k13, self.k23, self.k1, self.k2, self.k3)

    def label(self) -> str:
        """Compact column notation, e.g. (13)^2(2)^2(3)."""
        pieces = []
        for name, k in (
            ("12", self.k12),
            ("13", self.k13),
            ("23", self.k23),
            ("1", self.k1),
            ("2", self.k2),
            ("3", self.k3),
        ):
            if k == 1:
                pieces.append(f"({name})")
            elif k > 1:
                pieces.append(f"({name})^{k}")
        return "".join(pieces) if pieces else "()"


def enumerate_ssyt(a1: int, a2: int) -> tuple[ColumnCounts, ...]:
    """All column-count tuples for shape (a1+a2, a1, 0), deterministic order."""
    if a1 < 0 or a2 < 0:
        raise ValueError("a1 and a2 must be nonnegative")
    out = []
    for k12 in range(a1 + 1):
        for k13 in range(a1 - k12 + 1):
            k23 = a1 - k12 - k13
            for k1 in range(a2 + 1):
                if k23 != 0 and k1 != 0:
                    continue
                for k2 in range(a2 - k1 + 1):
                    k3 = a2 - k1 - k2
                    out.append(ColumnCounts(k12, k13, k23, k1, k2, k3))
    return tuple(out)


def weyl_dimension(a1: int, a2: int) -> int:
    """Dimension of the irreducible representation with highest weight
    (a1+a2, a1, 0): (a1+1)(a2+1)(a1+a2+2)/2."""
    return (a1 + 1) * (a2 + 1) * (a1 + a2 + 2) // 2


def section_poly(t: ColumnCounts) -> MultiPoly:
    """Restriction of the tableau section to the surface chart:
    (y - x^2)^k12 * (-x)^k13 * (-1)^k23 * y^k1 * x^k2."""
    x = MultiPoly.variable(X)
    y = MultiPoly.variable(Y)
    return (
        (y - x * x) ** t.k12
        * (-x) ** t.k13
        * MultiPoly.const((-1) ** t.k23)
        * y ** t.k1
        * x ** t.k2
    )


@dataclass(frozen=True)
class SectionSpace:
    a1: int
    a2: int
    sections: tuple[tuple[ColumnCounts, MultiPoly], ...]


def section_space(a1: int, a2: int) -> SectionSpace:
    return SectionSpace(
        a1,
        a2,
        tuple((t, section_poly(t)) for t in enumerate_ssyt(a1, a2)),
    )


def valuation(p: MultiPoly) -> tuple[int, int]:
    """Exponent pair of the lexicographically lowest term, x compared first."""
    m, _ = p.lowest_term(SURFACE_ORDER)
    return (m.exponent(X), m.exponent(Y))


@dataclass(frozen=True)
class ValuationPointSet:
    points: frozenset[tuple[int, int]]
    rank: int

    def __post_init__(self):
        if len(self.points) != self.rank:
            raise ValueError("point count must equal the rank of the span")


def valuation_image(a1: int, a2: int) -> ValuationPointSet:
    """All valuation values achieved on the span of the sections.

    Rows (section coefficient vectors over the occurring monomials, columns
    ascending in the order) are reduced fraction-free, always pivoting on
    the lowest available monomial; the pivot monomials are exactly the
    achievable lowest terms and their count is the rank of the span.
    """
    from math import gcd

    space = section_space(a1, a2)

    def key(m):
        return (m.exponent(X), m.exponent(Y))

    rows = []
    for _, p in space.sections:
        if p.is_zero():
            continue
        rows.append({key(m): int(c) for m, c in p.terms.items()})
    pivots: dict[tuple[int, int], dict[tuple[int, int], int]] = {}
    for row in rows:
        while row:
            low = min(row)
            if low not in pivots:
                pivots[low] = row
                break
            other = pivots[low]
            a, b = other[low], row[low]
            row = {
                c: a * row.get(c, 0) - b * other.get(c, 0)
                for c in set(row) | set(other)
            }
            row = {c: v for c, v in row.items() if v != 0}
            if row:
                g = 0
                for v in row.values():
                    g = gcd(g, v)
                if g > 1:
                    row = {c: v // g for c, v in row.items()}
    return ValuationPointSet(frozenset(pivots), len(pivots))


Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class LatticePolygon:
    """Convex polygon with exact rational vertices, counterclockwise, and
    area computed by the shoelace formula."""

    vertices: tuple[Point, ...]
    area: Fraction

    def __post_init__(self):
        if shoelace_area(self.vertices) != self.area:
            raise ValueError("stored area does not match the vertex list")


def shoelace_area(vertices: tuple[Point, ...]) -> Fraction:
    n = len(vertices)
    if n < 3:
        return Fraction(0)
    twice = Fraction(0)
    for k in range(n):
        x0, y0 = vertices[k]
        x1, y1 = vertices[(k + 1) % n]
        twice += x0 * y1 - x1 * y0
    return twice / 2


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> LatticePolygon:
    """Monotone-chain convex hull over exact rationals.

    Collinear boundary points are dropped, so the vertex list is minimal;
    vertices run counterclockwise starting from the lexicographically
    smallest point.
    """
    pts = sorted({(Fraction(x), Fraction(y)) for (x, y) in points})
    if not pts:
        raise ValueError("convex hull of an empty point set")
    if len(pts) <= 2:
        return LatticePolygon(tuple(pts), Fraction(0))
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    vertices = tuple(lower[:-1] + upper[:-1])
    return LatticePolygon(vertices, shoelace_area(vertices))


def predicted_vertices(a1: int, a2: int) -> frozenset[tuple[int, int]]:
    """Predicted polygon vertices, by parameter regime; for a1 = a2 the two
    regimes agree after the duplicate vertex collapses."""
    if a2 >= a1:
        verts = {(0, 0), (2 * a1 + a2, 0), (0, a1 + a2), (3 * a1, a2 - a1)}
    else:
        verts = {(0, 0), (0, a1 + a2), (2 * a2 + a1, 0), (3 * a2, a1 - a2)}
    return frozenset(verts)


PETERSON_3 = HessenbergFunction((2, 3, 3))


def expected_area(a1: int, a2: int) -> Fraction:
    """Embedding volume of the surface at weight (a1+a2, a1, 0), computed by
    the volume polynomial (the independent side of the certification)."""
    lam = WeightVector((a1 + a2, a1, 0))
    return volume(PETERSON_3, lam)


@dataclass(frozen=True)
class NobResult:
    a1: int
    a2: int
    points: ValuationPointSet
    polygon: LatticePolygon
    expected_vertices: frozenset[tuple[int, int]]
    certified: bool


def nob_polygon(a1: int, a2: int) -> NobResult:
    """Convex hull of the level-one valuation points with certification.

    Certified means: the hull vertex set equals the predicted vertex set and
    the hull area equals the embedding volume.  Certification failure is
    reported, not raised.
    """
    if a1 < 1 or a2 < 1:
        raise ValueError("a1 and a2 must be at least 1")
    image = valuation_image(a1, a2)
    hull = convex_hull(image.points)
    predicted = predicted_vertices(a1, a2)
    hull_vertices = frozenset(
        (int(x), int(y)) for (x, y) in hull.vertices
    )
    certified = hull_vertices == predicted and hull.area == expected_area(a1, a2)
    return NobResult(
        a1=a1,
        a2=a2,
        points=image,
        polygon=hull,
        expected_vertices=predicted,
        certified=certified,
    )


def truncated_pascal_det(r, s) -> int:
    """Determinant of the binomial matrix with (a, b) entry C(s_b, r_a).

    Exact integer arithmetic (fraction-free elimination); the determinant is
    nonzero exactly when r_a <= s_a for every index a.
    """
    r = tuple(int(v) for v in r)
    s = tuple(int(v) for v in s)
    if len(r) != len(s):
        raise ValueError("row and column index lists must have equal length")
    if any(v < 0 for v in r + s):
        raise ValueError("indices must be nonnegative")
    if any(r[k] >= r[k + 1] for k in range(len(r) - 1)) or any(
        s[k] >= s[k + 1] for k in range(len(s) - 1)
    ):
        raise ValueError("index lists must be strictly increasing")
    n = len(r)
    if n == 0:
        return 1
    m = [[comb(s[b], r[a]) for b in range(n)] for a in range(n)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next(
                (i for i in range(k + 1, n) if m[i][k] != 0), None
            )
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]
