"""Exact sparse multivariate polynomial arithmetic over the rationals.

This module is the substrate for everything else in the package: sparse
polynomials with ``fractions.Fraction`` coefficients over named variables,
lexicographic monomial orders, and matrices of polynomials with a
fraction-free determinant and an inverse for unimodular matrices.

Representation:

  Monomial   -- sorted tuple of (variable, exponent) pairs, exponent > 0
  MultiPoly  -- dict mapping Monomial -> nonzero Fraction, plus a variable
                universe (variables the polynomial formally lives over,
                whether or not they occur in a term)

Two polynomials are equal iff their term maps are equal, so the
representation is canonical: no zero coefficients, no zero exponents.
All values are immutable after construction; every operation is a pure
function, so everything here is safe to share between threads.

No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rational = Fraction

Scalar = Union[int, Fraction]
PolyLike = Union["MultiPoly", int, Fraction]


class Monomial:
    """A power product of named variables, e.g. x_{1,2}^2 * t.

    Stored as a tuple of (variable, exponent) pairs sorted by variable name
    with all exponents positive; the empty tuple is the monomial 1.
    """

    __slots__ = ("_exps", "_hash")

    def __init__(self, exps: Iterable[tuple[str, int]] = ()):
        pairs = tuple(sorted((v, int(e)) for v, e in exps if e != 0))
        for v, e in pairs:
            if e < 0:
                raise ValueError(f"negative exponent for variable {v!r}")
        self._exps = pairs
        self._hash = hash(pairs)

    @classmethod
    def one(cls) -> "Monomial":
        return cls(())

    @classmethod
    def variable(cls, name: str, exponent: int = 1) -> "Monomial":
        return cls(((name, exponent),))

    @property
    def exps(self) -> tuple[tuple[str, int], ...]:
        return self._exps

    def exponent(self, name: str) -> int:
        for v, e in self._exps:
            if v == name:
                return e
        return 0

    def variables(self) -> frozenset[str]:
        return frozenset(v for v, _ in self._exps)

    def total_degree(self) -> int:
        return sum(e for _, e in self._exps)

    def is_one(self) -> bool:
        return not self._exps

    def __mul__(self, other: "Monomial") -> "Monomial":
        merged: dict[str, int] = dict(self._exps)
        for v, e in other._exps:
            merged[v] = merged.get(v, 0) + e
        return Monomial(merged.items())

    def divides(self, other: "Monomial") -> bool:
        return all(other.exponent(v) >= e for v, e in self._exps)

    def divide_by(self, other: "Monomial") -> "Monomial":
        """Exact monomial quotient self / other; raises if not divisible."""
        out: dict[str, int] = dict(self._exps)
        for v, e in other._exps:
            q = out.get(v, 0) - e
            if q < 0:
                raise ValueError(f"{self} is not divisible by {other}")
            out[v] = q
        return Monomial(out.items())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monomial) and self._exps == other._exps

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        if not self._exps:
            return "1"
        return "*".join(v if e == 1 else f"{v}^{e}" for v, e in self._exps)


@dataclass(frozen=True)
class MonomialOrder:
    """A lexicographic monomial order given by a variable priority list.

    ``priority`` lists variables from highest to lowest; comparison looks at
    the exponent of the highest-priority variable first.  The order is total
    on monomials in those variables and multiplicative, so lowest terms are
    well defined and multiplicative.  Other order kinds are not implemented.
    """

    priority: tuple[str, ...]
    kind: str = "lex"

    @classmethod
    def lex(cls, priority: Iterable[str]) -> "MonomialOrder":
        return cls(priority=tuple(priority))

    def __post_init__(self):
        if self.kind != "lex":
            raise ValueError(f"unsupported monomial order kind {self.kind!r}")
        if len(set(self.priority)) != len(self.priority):
            raise ValueError("duplicate variable in order priority")

    def key(self, m: Monomial) -> tuple[int, ...]:
        """Sort key: lexicographically larger key == larger monomial."""
        extraneous = m.variables() - set(self.priority)
        if extraneous:
            raise ValueError(
                f"monomial {m!r} has variables outside this order: "
                f"{sorted(extraneous)}"
            )
        return tuple(m.exponent(v) for v in self.priority)

    def sorted_terms(
        self, p: "MultiPoly", reverse: bool = True
    ) -> list[tuple[Monomial, Fraction]]:
        """Terms of p sorted by this order (descending by default)."""
        return sorted(p.terms.items(), key=lambda t: self.key(t[0]), reverse=reverse)


def _as_fraction(c: Scalar) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"not a rational scalar: {c!r}")


class MultiPoly:
    """A sparse multivariate polynomial with exact rational coefficients.

    The term map is canonical (no zero coefficients stored) and equality is
    term-map equality.  The variable universe records which variables the
    polynomial is allowed to mention; it is carried along so that e.g. the
    derivative of x^2 with respect to y is 0 rather than an error, while the
    derivative with respect to a genuinely unknown variable is rejected.
    """

    __slots__ = ("_terms", "_universe")

    def __init__(
        self,
        terms: Mapping[Monomial, Scalar] | None = None,
        universe: Iterable[str] = (),
    ):
        clean: dict[Monomial, Fraction] = {}
        vs = set(universe)
        if terms:
            for m, c in terms.items():
                c = _as_fraction(c)
                if c != 0:
                    clean[m] = c
                    vs.update(m.variables())
        self._terms = clean
        self._universe = frozenset(vs)

    # ---------------------------------------------------------- constructors

    @classmethod
    def zero(cls, universe: Iterable[str] = ()) -> "MultiPoly":
        return cls({}, universe)

    @classmethod
    def const(cls, c: Scalar, universe: Iterable[str] = ()) -> "MultiPoly":
        return cls({Monomial.one(): _as_fraction(c)}, universe)

    @classmethod
    def variable(cls, name: str) -> "MultiPoly":
        return cls({Monomial.variable(name): Fraction(1)}, (name,))

    @classmethod
    def from_terms(
        cls, terms: Mapping[Monomial, Scalar], universe: Iterable[str] = ()
    ) -> "MultiPoly":
        return cls(terms, universe)

    # ------------------------------------------------------------- inspection

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return self._terms

    @property
    def universe(self) -> frozenset[str]:
        return self._universe

    def variables(self) -> frozenset[str]:
        """Variables actually occurring in some term."""
        out: set[str] = set()
        for m in self._terms:
            out.update(m.variables())
        return frozenset(out)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(m.is_one() for m in self._terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self._terms.values()))

    def total_degree(self) -> int:
        """Maximum total degree of a term (0 for the zero polynomial)."""
        if not self._terms:
            return 0
        return max(m.total_degree() for m in self._terms)

    def degree_in(self, name: str) -> int:
        if not self._terms:
            return 0
        return max(m.exponent(name) for m in self._terms)

    def is_homogeneous(self) -> bool:
        degs = {m.total_degree() for m in self._terms}
        return len(degs) <= 1

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    # ------------------------------------------------------------- arithmetic

    def _coerce(self, other: PolyLike) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.const(_as_fraction(other))

    def __add__(self, other: PolyLike) -> "MultiPoly":
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, Fraction(0)) + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        return MultiPoly(out, self._universe | other._universe)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({m: -c for m, c in self._terms.items()}, self._universe)

    def __sub__(self, other: PolyLike) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: PolyLike) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other: PolyLike) -> "MultiPoly":
        other = self._coerce(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                s = out.get(m, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(m, None)
                else:
                    out[m] = s
        return MultiPoly(out, self._universe | other._universe)

    __rmul__ = __mul__

    def __truediv__(self, c: Scalar) -> "MultiPoly":
        c = _as_fraction(c)
        if c == 0:
            raise ZeroDivisionError("division of a polynomial by zero")
        return MultiPoly({m: v / c for m, v in self._terms.items()}, self._universe)

    def __pow__(self, n: int) -> "MultiPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial exponent must be a nonnegative integer")
        result = MultiPoly.const(1, self._universe)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == MultiPoly.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # ------------------------------------------------------------- operations

    def partial(self, name: str) -> "MultiPoly":
        """Formal partial derivative with respect to a universe variable."""
        if name not in self._universe:
            raise ValueError(f"unknown variable {name!r}")
        out: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            e = m.exponent(name)
            if e == 0:
                continue
            dm = Monomial(
                [(v, x - 1 if v == name else x) for v, x in m.exps]
            )
            s = out.get(dm, Fraction(0)) + c * e
            if s == 0:
                out.pop(dm, None)
            else:
                out[dm] = s
        return MultiPoly(out, self._universe)

    def substitute(self, bindings: Mapping[str, PolyLike]) -> "MultiPoly":
        """Simultaneous substitution of polynomials for variables."""
        polys = {v: self._coerce(p) for v, p in bindings.items()}
        new_universe = set(self._universe - set(polys))
        for p in polys.values():
            new_universe.update(p.universe)
        result = MultiPoly.zero(new_universe)
        for m, c in self._terms.items():
            term = MultiPoly.const(c, new_universe)
            for v, e in m.exps:
                if v in polys:
                    term = term * polys[v] ** e
                else:
                    term = term * MultiPoly({Monomial.variable(v, e): Fraction(1)})
            result = result + term
        return result

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        """Exact value at a rational point; every occurring variable must be bound."""
        total = Fraction(0)
        for m, c in self._terms.items():
            value = c
            for v, e in m.exps:
                if v not in point:
                    raise ValueError(f"unbound variable {v!r} in evaluation")
                value *= _as_fraction(point[v]) ** e
            total += value
        return total

    def lowest_term(self, order: MonomialOrder) -> tuple[Monomial, Fraction]:
        """Order-minimal monomial with its coefficient; undefined for 0."""
        if not self._terms:
            raise ValueError("the zero polynomial has no lowest term")
        m = min(self._terms, key=order.key)
        return m, self._terms[m]

    def leading_term(self, order: MonomialOrder) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("the zero polynomial has no leading term")
        m = max(self._terms, key=order.key)
        return m, self._terms[m]

    # -------------------------------------------------------------- rendering

    def to_text(self, order: MonomialOrder) -> str:
        """Canonical text: terms descending in the order, coefficients p/q."""
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for m, c in order.sorted_terms(self):
            if m.is_one():
                body = str(abs(c))
            else:
                mono = "*".join(
                    v if e == 1 else f"{v}^{e}" for v, e in sorted(m.exps)
                )
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def to_json_terms(self, order: MonomialOrder) -> list[dict]:
        """Canonical JSON rendering: sorted list of {"c": .., "e": {...}}."""
        out = []
        for m, c in order.sorted_terms(self):
            out.append({"c": str(c), "e": {v: e for v, e in sorted(m.exps)}})
        return out

    def __repr__(self) -> str:
        if not self._terms:
            return "MultiPoly(0)"
        order = MonomialOrder.lex(sorted(self._universe))
        return f"MultiPoly({self.to_text(order)})"


def variable(name: str) -> MultiPoly:
    return MultiPoly.variable(name)


def const(c: Scalar) -> MultiPoly:
    return MultiPoly.const(c)


def exact_div(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Exact polynomial quotient p / q; raises ValueError if q does not divide p.

    Uses leading-term cancellation in a lexicographic order over the combined
    variables.  For exact quotients the leading term of the remainder is
    always divisible by the leading term of q, so the loop terminates.
    """
    if q.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if p.is_zero():
        return MultiPoly.zero(p.universe | q.universe)
    if q.is_constant():
        return p / q.constant_value()
    order = MonomialOrder.lex(sorted(p.variables() | q.variables()))
    qm, qc = q.leading_term(order)
    quotient = MultiPoly.zero(p.universe | q.universe)
    rem = p
    while not rem.is_zero():
        rm, rc = rem.leading_term(order)
        if not qm.divides(rm):
            raise ValueError("inexact polynomial division")
        factor = MultiPoly({rm.divide_by(qm): rc / qc})
        quotient = quotient + factor
        rem = rem - factor * q
    return quotient


class PolyMatrix:
    """A dense matrix of MultiPoly entries with exact linear algebra."""

    __slots__ = ("_rows", "_shape")

    def __init__(self, rows: Iterable[Iterable[PolyLike]]):
        grid = []
        for row in rows:
            grid.append(
                tuple(
                    e if isinstance(e, MultiPoly) else MultiPoly.const(e)
                    for e in row
                )
            )
        if not grid or not grid[0]:
            raise ValueError("matrix must be nonempty")
        width = len(grid[0])
        if any(len(r) != width for r in grid):
            raise ValueError("ragged matrix rows")
        self._rows = tuple(grid)
        self._shape = (len(grid), width)

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @property
    def rows(self) -> int:
        return self._shape[0]

    @property
    def cols(self) -> int:
        return self._shape[1]

    def entry(self, i: int, j: int) -> MultiPoly:
        """1-indexed entry access (matrix convention used throughout)."""
        return self._rows[i - 1][j - 1]

    def row_list(self) -> tuple[tuple[MultiPoly, ...], ...]:
        return self._rows

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError(
                f"dimension mismatch: {self._shape} times {other._shape}"
            )
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = MultiPoly.zero()
                for k in range(self.cols):
                    acc = acc + self._rows[i][k] * other._rows[k][j]
                row.append(acc)
            out.append(row)
        return PolyMatrix(out)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PolyMatrix)
            and self._shape == other._shape
            and self._rows == other._rows
        )

    def __hash__(self) -> int:
        return hash((self._shape, self._rows))

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == PolyMatrix.identity(self.rows)

    def det(self) -> MultiPoly:
        """Determinant by fraction-free (Bareiss) elimination.

        All intermediate divisions are by an earlier pivot and are exact, so
        the computation stays inside the polynomial ring.
        """
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        m = [list(r) for r in self._rows]
        sign = 1
        prev = MultiPoly.const(1)
        for k in range(n - 1):
            if m[k][k].is_zero():
                pivot_row = next(
                    (i for i in range(k + 1, n) if not m[i][k].is_zero()), None
                )
                if pivot_row is None:
                    return MultiPoly.zero()
                m[k], m[pivot_row] = m[pivot_row], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                    m[i][j] = exact_div(num, prev)
                m[i][k] = MultiPoly.zero()
            prev = m[k][k]
        d = m[n - 1][n - 1]
        return -d if sign < 0 else d

    def _minor_det(self, drop_row: int, drop_col: int) -> MultiPoly:
        sub = [
            [self._rows[i][j] for j in range(self.cols) if j != drop_col]
            for i in range(self.rows)
            if i != drop_row
        ]
        return PolyMatrix(sub).det()

    def unimodular_inverse(self) -> "PolyMatrix":
        """Inverse of a square matrix whose determinant is a nonzero constant.

        Computed as the adjugate divided by the determinant; since the
        determinant is a unit, every entry of the inverse is a polynomial.
        """
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        d = self.det()
        if d.is_zero():
            raise ValueError("matrix is singular")
        if not d.is_constant():
            raise ValueError(
                "determinant is not constant; matrix is not unimodular"
            )
        c = d.constant_value()
        n = self.rows
        if n == 1:
            return PolyMatrix([[MultiPoly.const(Fraction(1) / c)]])
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                cof = self._minor_det(j, i)
                if (i + j) % 2:
                    cof = -cof
                row.append(cof / c)
            out.append(row)
        return PolyMatrix(out)

    def __repr__(self) -> str:
        return f"PolyMatrix({self.rows}x{self.cols})"


def matrix_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return a * b


def unimodular_inverse(a: PolyMatrix) -> PolyMatrix:
    return a.unimodular_inverse()


def lowest_term(p: MultiPoly, order: MonomialOrder) -> tuple[Monomial, Fraction]:
    return p.lowest_term(order)
