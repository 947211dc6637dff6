"""Rank matrices, permutation diagrams, and the staircase flag chain.

The diagram of a permutation matrix keeps the cells with no 1 weakly above
in their column and no 1 weakly left in their row; when the diagram is a
Young diagram, the corresponding dual Schubert chart inside the w0 chart is
the coordinate subspace where the diagram's coordinates vanish.  A specific
word in simple transpositions produces a sequence of permutations whose
diagrams grow one reading-order cell at a time, and intersecting with an
indecomposable nilpotent Hessenberg chart cuts the dimension exactly at the
free coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hessenberg import HessenbergFunction, Permutation
from .w0chart import classify_variables


@dataclass(frozen=True)
class RankMatrix:
    """rk[q][p] = number of i <= p with w(i) <= q (1-indexed accessor)."""

    n: int
    values: tuple[tuple[int, ...], ...]

    def rk(self, q: int, p: int) -> int:
        return self.values[q - 1][p - 1]


def rank_matrix(w: Permutation) -> RankMatrix:
    n = w.n
    values = tuple(
        tuple(
            sum(1 for i in range(1, p + 1) if w(i) <= q)
            for p in range(1, n + 1)
        )
        for q in range(1, n + 1)
    )
    return RankMatrix(n, values)


@dataclass(frozen=True)
class DiagramCells:
    """Surviving cells of a permutation matrix after hook removal, with the
    Young-diagram test (left- and top-justified, weakly decreasing rows)."""

    cells: frozenset[tuple[int, int]]
    young: bool
    shape: tuple[int, ...] | None

    def __len__(self) -> int:
        return len(self.cells)


def _young_shape(cells: frozenset[tuple[int, int]]) -> tuple[int, ...] | None:
    if not cells:
        return ()
    rows: dict[int, int] = {}
    for (r, _) in cells:
        rows[r] = rows.get(r, 0) + 1
    height = max(rows)
    if set(rows) != set(range(1, height + 1)):
        return None
    lengths = tuple(rows[r] for r in range(1, height + 1))
    if any(lengths[k] < lengths[k + 1] for k in range(height - 1)):
        return None
    if cells != {
        (r, c) for r in range(1, height + 1) for c in range(1, lengths[r - 1] + 1)
    }:
        return None
    return lengths


def rothe_cells(v: Permutation) -> DiagramCells:
    """Cells of the matrix of v surviving removal of everything weakly right
    of a 1 in its row and weakly below a 1 in its column.

    The count of surviving cells equals the inversion number of v.
    """
    n = v.n
    vinv = v.inverse
    cells = frozenset(
        (r, c)
        for r in range(1, n + 1)
        for c in range(1, n + 1)
        if vinv(r) > c and v(c) > r
    )
    shape = _young_shape(cells)
    return DiagramCells(cells, young=shape is not None, shape=shape)


def reading_order(n: int) -> list[tuple[int, int]]:
    """Chart coordinates at w0 read left to right, top to bottom."""
    return [(i, j) for i in range(1, n) for j in range(1, n - i + 1)]


def u_sequence(n: int) -> list[Permutation]:
    """The permutations u_0 = id, ..., u_D = longest element whose diagrams
    grow by one reading-order cell at a time.

    u_l multiplies the rightmost l letters of the word
    (s_1)(s_2 s_1)(s_3 s_2 s_1)...; each next letter (moving left through
    the word) composes on the right, a convention locked by the validation
    below and by the golden tests.
    """
    if n < 2:
        raise ValueError("sequence requires n >= 2")
    letters: list[int] = []
    for b in range(1, n):
        letters.extend(range(b, 0, -1))
    d_total = len(letters)
    cells = reading_order(n)
    seq = [Permutation.identity(n)]
    u = seq[0]
    for l in range(1, d_total + 1):
        u = u * Permutation.transposition(letters[d_total - l], n)
        diagram = rothe_cells(u)
        if not diagram.young or diagram.cells != set(cells[:l]):
            raise ValueError(
                f"step {l}: diagram does not match the first {l} reading cells"
            )
        seq.append(u)
    return seq


def schubert_chart_equations(w: Permutation) -> frozenset[tuple[int, int]]:
    """Coordinates that vanish on the dual Schubert chart piece at w0.

    Defined when the diagram of w's matrix is a Young diagram; the equations
    are x_{q,p} = 0 over the diagram's cells.
    """
    diagram = rothe_cells(w)
    if not diagram.young:
        raise ValueError(
            f"diagram of {w} is not a Young diagram; no coordinate description"
        )
    return diagram.cells


@dataclass(frozen=True)
class FlagStep:
    index: int
    u: Permutation
    cell: tuple[int, int]
    proper: bool
    dimension_after: int


@dataclass(frozen=True)
class FlagChain:
    """The full intersection chain and its deduplicated proper subchain."""

    h: HessenbergFunction
    steps: tuple[FlagStep, ...]

    def proper_steps(self) -> tuple[FlagStep, ...]:
        return tuple(s for s in self.steps if s.proper)


def flag_chain(h: HessenbergFunction) -> FlagChain:
    """Walk the u-sequence against the free/non-free classification.

    A step is proper exactly when its new reading-order cell is a free
    coordinate; proper steps drop the dimension by one, ending at zero."""
    if not h.is_indecomposable():
        raise ValueError(
            "flag chain requires an indecomposable Hessenberg function"
        )
    n = h.n
    classification = classify_variables(h)
    seq = u_sequence(n)
    cells = reading_order(n)
    dim = h.dimension()
    steps = []
    for l, cell in enumerate(cells, start=1):
        proper = cell in classification.free
        if proper:
            dim -= 1
        steps.append(
            FlagStep(
                index=l,
                u=seq[l],
                cell=cell,
                proper=proper,
                dimension_after=dim,
            )
        )
    chain = FlagChain(h, tuple(steps))
    if dim != 0 or len(chain.proper_steps()) != h.dimension():
        raise ValueError("flag chain did not terminate at dimension zero")
    return chain
