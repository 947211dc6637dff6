"""Hessenberg functions and permutations with their basic invariants.

Conventions fixed here and used by every other module:

* Hessenberg functions are written by listing values, h = (h(1), ..., h(n)),
  and must satisfy h(i) >= i, h nondecreasing, h(n) = n.
* Permutations use one-line notation w = (w(1), ..., w(n)); the permutation
  matrix has a 1 in position (w(j), j) for every column j.
* Composition is function composition: (u * v)(i) = u(v(i)).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations as _itertools_permutations
from typing import Iterable, Iterator


@dataclass(frozen=True)
class HessenbergFunction:
    """The map h: [n] -> [n], validated eagerly at construction."""

    values: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vs)
        n = len(vs)
        if n == 0:
            raise ValueError("Hessenberg function must have positive length")
        for i, v in enumerate(vs, start=1):
            if v < i:
                raise ValueError(
                    f"invalid Hessenberg function {vs}: h({i})={v} < {i}"
                )
            if v > n:
                raise ValueError(
                    f"invalid Hessenberg function {vs}: h({i})={v} > n={n}"
                )
        for i in range(n - 1):
            if vs[i + 1] < vs[i]:
                raise ValueError(
                    f"invalid Hessenberg function {vs}: "
                    f"h({i + 2})={vs[i + 1]} < h({i + 1})={vs[i]} (not nondecreasing)"
                )
        if vs[-1] != n:
            raise ValueError(f"invalid Hessenberg function {vs}: h(n) != n")

    @property
    def n(self) -> int:
        return len(self.values)

    def __call__(self, i: int) -> int:
        """Value h(i), 1-indexed."""
        return self.values[i - 1]

    @classmethod
    def parse(cls, text: str) -> "HessenbergFunction":
        try:
            values = tuple(int(v) for v in text.split(","))
        except ValueError:
            raise ValueError(f"cannot parse Hessenberg function from {text!r}")
        return cls(values)

    def render(self) -> str:
        return ",".join(str(v) for v in self.values)

    def is_indecomposable(self) -> bool:
        """True iff h(j) >= j + 1 for every j < n."""
        return all(self(j) >= j + 1 for j in range(1, self.n))

    def dimension(self) -> int:
        """Sum of h(i) - i over i."""
        return sum(v - i for i, v in enumerate(self.values, start=1))

    def codimension(self) -> int:
        return sum(self.n - v for v in self.values)

    def decompose(self) -> tuple["HessenbergFunction", ...]:
        """Split at every fixed point h(j) = j (j < n) into indecomposable
        blocks, each re-indexed to its own ground set."""
        blocks: list[HessenbergFunction] = []
        start = 0
        for j in range(1, self.n + 1):
            if self(j) == j:
                block = tuple(v - start for v in self.values[start:j])
                blocks.append(HessenbergFunction(block))
                start = j
        return tuple(blocks)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class HessenbergSpaceMask:
    """The matrix-position picture of the linear subspace attached to h:
    ``shaded`` holds the positions free to be nonzero (i <= h(j)),
    ``constrained`` the positions forced to vanish (i > h(j))."""

    h: HessenbergFunction
    shaded: frozenset[tuple[int, int]]
    constrained: frozenset[tuple[int, int]]


def hessenberg_space_mask(h: HessenbergFunction) -> HessenbergSpaceMask:
    n = h.n
    shaded = frozenset(
        (i, j) for j in range(1, n + 1) for i in range(1, h(j) + 1)
    )
    constrained = frozenset(
        (i, j) for j in range(1, n + 1) for i in range(h(j) + 1, n + 1)
    )
    return HessenbergSpaceMask(h, shaded, constrained)


@dataclass(frozen=True)
class Permutation:
    """A permutation of [n] in one-line notation."""

    oneline: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(int(v) for v in self.oneline)
        object.__setattr__(self, "oneline", vs)
        if sorted(vs) != list(range(1, len(vs) + 1)):
            raise ValueError(f"not a permutation of 1..{len(vs)}: {vs}")

    @property
    def n(self) -> int:
        return len(self.oneline)

    def __call__(self, i: int) -> int:
        """Value w(i), 1-indexed."""
        return self.oneline[i - 1]

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n: int) -> "Permutation":
        return cls(tuple(range(n, 0, -1)))

    @classmethod
    def transposition(cls, k: int, n: int) -> "Permutation":
        """The simple transposition exchanging k and k+1 in [n]."""
        if not 1 <= k < n:
            raise ValueError(f"simple transposition index {k} out of range for n={n}")
        vals = list(range(1, n + 1))
        vals[k - 1], vals[k] = vals[k], vals[k - 1]
        return cls(tuple(vals))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        try:
            values = tuple(int(v) for v in text.split(","))
        except ValueError:
            raise ValueError(f"cannot parse permutation from {text!r}")
        return cls(values)

    def render(self) -> str:
        return ",".join(str(v) for v in self.oneline)

    @cached_property
    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.oneline, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def length(self) -> int:
        """Number of inversions."""
        vs = self.oneline
        return sum(
            1
            for a in range(len(vs))
            for b in range(a + 1, len(vs))
            if vs[a] > vs[b]
        )

    def is_longest(self) -> bool:
        return all(self(i) == self.n + 1 - i for i in range(1, self.n + 1))

    def matrix(self) -> tuple[tuple[int, ...], ...]:
        """0/1 matrix with a 1 at (w(j), j) for each column j."""
        n = self.n
        rows = [[0] * n for _ in range(n)]
        for j in range(1, n + 1):
            rows[self(j) - 1][j - 1] = 1
        return tuple(tuple(r) for r in rows)

    def compose(self, other: "Permutation") -> "Permutation":
        """(self * other)(i) = self(other(i))."""
        if self.n != other.n:
            raise ValueError("cannot compose permutations of different sizes")
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def __mul__(self, other: "Permutation") -> "Permutation":
        return self.compose(other)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class PermBasics:
    inverse: Permutation
    length: int
    matrix: tuple[tuple[int, ...], ...]
    is_longest: bool


def perm_basics(w: Permutation) -> PermBasics:
    return PermBasics(
        inverse=w.inverse,
        length=w.length(),
        matrix=w.matrix(),
        is_longest=w.is_longest(),
    )


def all_permutations(n: int) -> Iterator[Permutation]:
    for p in _itertools_permutations(range(1, n + 1)):
        yield Permutation(p)


def all_hessenberg_functions(n: int) -> Iterator[HessenbergFunction]:
    """All valid Hessenberg functions on [n], lexicographically."""

    def rec(prefix: list[int]) -> Iterator[tuple[int, ...]]:
        i = len(prefix)
        if i == n:
            if prefix[-1] == n:
                yield tuple(prefix)
            return
        lo = max(i + 1, prefix[-1] if prefix else 1)
        for v in range(lo, n + 1):
            yield from rec(prefix + [v])

    for vals in rec([]):
        yield HessenbergFunction(vals)


def indecomposable_hessenberg_functions(n: int) -> Iterator[HessenbergFunction]:
    for h in all_hessenberg_functions(n):
        if h.is_indecomposable():
            yield h
