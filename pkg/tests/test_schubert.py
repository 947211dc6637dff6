from fractions import Fraction

import pytest

from hessex.charts import chart_variable
from hessex.hessenberg import (
    HessenbergFunction,
    Permutation,
    all_permutations,
    indecomposable_hessenberg_functions,
)
from hessex.schubert import (
    flag_chain,
    rank_matrix,
    reading_order,
    rothe_cells,
    schubert_chart_equations,
    u_sequence,
)
from hessex.w0chart import classify_variables, eliminate


def _matrix_rank(matrix):
    # independent rank oracle: Gaussian elimination over Fraction
    rows = [[Fraction(v) for v in row] for row in matrix]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        pivot = next(
            (r for r in range(rank, len(rows)) if rows[r][c] != 0), None
        )
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


class TestRankMatrix:
    def test_identity(self):
        rk = rank_matrix(Permutation.identity(4))
        for q in range(1, 5):
            for p in range(1, 5):
                assert rk.rk(q, p) == min(q, p)

    def test_longest_n4(self):
        rk = rank_matrix(Permutation.longest(4))
        for q in range(1, 5):
            for p in range(1, 5):
                assert rk.rk(q, p) == max(0, q + p - 4)

    def test_running_example_entry(self):
        assert rank_matrix(Permutation((2, 4, 1, 3))).rk(2, 2) == 1

    def test_border_values(self):
        rk = rank_matrix(Permutation((3, 1, 4, 2)))
        for p in range(1, 5):
            assert rk.rk(4, p) == p
        for q in range(1, 5):
            assert rk.rk(q, 4) == q

    @pytest.mark.parametrize("n", range(2, 6))
    def test_against_submatrix_rank_oracle(self, n):
        for w in all_permutations(n):
            m = w.matrix()
            rk = rank_matrix(w)
            for q in range(1, n + 1):
                for p in range(1, n + 1):
                    sub = [row[:p] for row in m[:q]]
                    assert rk.rk(q, p) == _matrix_rank(sub)


class TestRotheCells:
    def test_identity_empty(self):
        d = rothe_cells(Permutation.identity(4))
        assert d.cells == frozenset() and d.young and d.shape == ()

    def test_longest_n3_staircase(self):
        d = rothe_cells(Permutation.longest(3))
        assert d.cells == frozenset({(1, 1), (1, 2), (2, 1)})
        assert d.young and d.shape == (2, 1)

    def test_non_young_diagram(self):
        d = rothe_cells(Permutation((2, 1, 4, 3)))
        assert d.cells == frozenset({(1, 1), (3, 3)})
        assert not d.young and d.shape is None

    @pytest.mark.parametrize("n", range(2, 6))
    def test_cell_count_is_length(self, n):
        for w in all_permutations(n):
            assert len(rothe_cells(w)) == w.length()


class TestUSequence:
    def test_n5_young_shapes(self):
        shapes = [rothe_cells(u).shape for u in u_sequence(5)]
        assert shapes == [
            (),
            (1,),
            (2,),
            (3,),
            (4,),
            (4, 1),
            (4, 2),
            (4, 3),
            (4, 3, 1),
            (4, 3, 2),
            (4, 3, 2, 1),
        ]

    @pytest.mark.parametrize("n", range(2, 7))
    def test_ends_at_longest(self, n):
        seq = u_sequence(n)
        assert len(seq) == n * (n - 1) // 2 + 1
        assert seq[0] == Permutation.identity(n)
        assert seq[-1] == Permutation.longest(n)

    def test_n2(self):
        assert [u.oneline for u in u_sequence(2)] == [(1, 2), (2, 1)]

    @pytest.mark.parametrize("n", range(2, 7))
    def test_diagrams_grow_by_reading_cells(self, n):
        cells = reading_order(n)
        for l, u in enumerate(u_sequence(n)):
            d = rothe_cells(u)
            assert d.young
            assert d.cells == frozenset(cells[:l])


class TestChartEquations:
    def test_first_step_single_box(self):
        u1 = u_sequence(3)[1]
        assert schubert_chart_equations(u1) == frozenset({(1, 1)})

    def test_second_step(self):
        u2 = u_sequence(4)[2]
        assert schubert_chart_equations(u2) == frozenset({(1, 1), (1, 2)})

    def test_identity_no_equations(self):
        assert schubert_chart_equations(Permutation.identity(4)) == frozenset()

    def test_non_young_rejected(self):
        with pytest.raises(ValueError, match="not a Young diagram"):
            schubert_chart_equations(Permutation((2, 1, 4, 3)))


class TestFlagChain:
    def test_surface_chain(self):
        chain = flag_chain(HessenbergFunction((2, 3, 3)))
        flags = [(s.cell, s.proper, s.dimension_after) for s in chain.steps]
        assert flags == [
            ((1, 1), True, 1),
            ((1, 2), True, 0),
            ((2, 1), False, 0),
        ]

    @pytest.mark.parametrize("n", range(2, 6))
    def test_full_function_all_steps_proper(self, n):
        chain = flag_chain(HessenbergFunction((n,) * n))
        assert all(s.proper for s in chain.steps)

    def test_skips_match_non_free(self):
        chain = flag_chain(HessenbergFunction((3, 3, 4, 4)))
        skipped = {s.cell for s in chain.steps if not s.proper}
        assert skipped == {(2, 1), (2, 2)}

    def test_proper_count_is_dimension(self):
        for n in range(2, 6):
            for h in indecomposable_hessenberg_functions(n):
                chain = flag_chain(h)
                assert len(chain.proper_steps()) == h.dimension()
                dims = [s.dimension_after for s in chain.steps]
                assert dims[-1] == 0
                assert all(a - b in (0, 1) for a, b in zip([h.dimension()] + dims, dims))

    def test_decomposable_rejected(self):
        with pytest.raises(ValueError, match="indecomposable"):
            flag_chain(HessenbergFunction((1, 2)))

    @pytest.mark.parametrize("n", range(2, 5))
    def test_skipped_cells_already_vanish(self, n):
        # at a skipped step, the eliminated coordinate's image vanishes once
        # the earlier free coordinates are set to zero, so the intersection
        # is unchanged -- the exact content of the dimension ledger
        for h in indecomposable_hessenberg_functions(n):
            elim = eliminate(h)
            images = elim.as_dict()
            zeroed: dict[str, int] = {}
            for step in flag_chain(h).steps:
                if step.proper:
                    zeroed[chart_variable(*step.cell)] = 0
                else:
                    img = images[step.cell]
                    restricted = img.substitute(
                        {v: 0 for v in img.variables() & set(zeroed)}
                    )
                    assert restricted.is_zero()
