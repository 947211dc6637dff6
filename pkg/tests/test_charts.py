from fractions import Fraction

import pytest

from hessex.charts import (
    ChartLayout,
    FamilyParameters,
    build_chart_matrix,
    chart_variable,
    chart_variable_order,
    family_generators,
    ideal_generators,
    specialize_fiber,
)
from hessex.exactalg import MonomialOrder, MultiPoly
from hessex.hessenberg import HessenbergFunction, Permutation, all_permutations


def var(i, j):
    return MultiPoly.variable(chart_variable(i, j))


def order_for(n, family=False):
    return MonomialOrder.lex(chart_variable_order(n, family=family))


class TestChartMatrix:
    def test_running_example_layout(self):
        m = build_chart_matrix(Permutation((2, 4, 1, 3)))
        assert m.entry(1, 3) == 1 and m.entry(2, 1) == 1
        assert m.entry(3, 4) == 1 and m.entry(4, 2) == 1
        assert m.entry(1, 1) == var(1, 1)
        assert m.entry(1, 2) == var(1, 2)
        assert m.entry(1, 4) == 0
        assert m.entry(2, 2) == 0 and m.entry(2, 3) == 0 and m.entry(2, 4) == 0
        assert m.entry(3, 1) == var(3, 1)
        assert m.entry(3, 2) == var(3, 2)
        assert m.entry(3, 3) == var(3, 3)
        assert m.entry(4, 1) == var(4, 1)
        assert m.entry(4, 3) == 0 and m.entry(4, 4) == 0

    def test_longest_element_chart_n3(self):
        m = build_chart_matrix(Permutation.longest(3))
        assert m.entry(1, 1) == var(1, 1)
        assert m.entry(1, 2) == var(1, 2)
        assert m.entry(1, 3) == 1
        assert m.entry(2, 1) == var(2, 1)
        assert m.entry(2, 2) == 1
        assert m.entry(2, 3) == 0
        assert m.entry(3, 1) == 1
        assert m.entry(3, 2) == 0 and m.entry(3, 3) == 0

    def test_identity_chart_is_lower_unitriangular(self):
        m = build_chart_matrix(Permutation.identity(3))
        for i in range(1, 4):
            assert m.entry(i, i) == 1
            for j in range(i + 1, 4):
                assert m.entry(i, j) == 0
        assert m.entry(2, 1) == var(2, 1)
        assert m.entry(3, 1) == var(3, 1)
        assert m.entry(3, 2) == var(3, 2)

    @pytest.mark.parametrize("n", range(2, 6))
    def test_variable_count(self, n):
        for w in all_permutations(n):
            assert len(ChartLayout(w).variable_positions()) == n * (n - 1) // 2

    @pytest.mark.parametrize("n", range(2, 5))
    def test_determinant_is_unit(self, n):
        for w in all_permutations(n):
            d = build_chart_matrix(w).det()
            assert d.is_constant() and d.constant_value() in (1, -1)


class TestIdealGenerators:
    def test_running_example(self):
        # generators for w = (2,4,1,3), h = (3,3,4,4); the (4,2) entry is
        # x_{3,2} * q + 1 for the same cofactor q appearing in the (4,1) entry
        h = HessenbergFunction((3, 3, 4, 4))
        ci = ideal_generators(Permutation((2, 4, 1, 3)), h)
        assert ci.generator_positions() == ((4, 1), (4, 2))
        q = -var(3, 1) + var(1, 1) * var(3, 3) + var(4, 1) * (
            var(3, 2) - var(1, 2) * var(3, 3)
        )
        f41 = -var(3, 3) + var(3, 1) * q + var(4, 1)
        f42 = var(3, 2) * q + 1
        assert ci.generators[0][2] == f41
        assert ci.generators[1][2] == f42

    def test_longest_element_n4(self):
        h = HessenbergFunction((3, 3, 4, 4))
        ci = ideal_generators(Permutation.longest(4), h)
        f41 = var(2, 1) - var(1, 3) * var(3, 1) - var(1, 2) + var(1, 3) * var(2, 2)
        f42 = var(2, 2) - var(1, 3)
        assert ci.generators == (
            (4, 1, f41),
            (4, 2, f42),
        )

    def test_full_function_has_no_generators(self):
        h = HessenbergFunction((4, 4, 4, 4))
        ci = ideal_generators(Permutation((2, 4, 1, 3)), h)
        assert ci.generators == ()

    def test_size_mismatch(self):
        with pytest.raises(ValueError, match="sizes differ"):
            ideal_generators(Permutation((2, 1)), HessenbergFunction((2, 3, 3)))

    def test_nonreduced_example_n2(self):
        h = HessenbergFunction((1, 2))
        ci = ideal_generators(Permutation.identity(2), h)
        assert ci.generators == ((2, 1, -(var(2, 1) ** 2)),)


class TestFamilyGenerators:
    def test_n2_identity_chart(self):
        h = HessenbergFunction((1, 2))
        params = FamilyParameters((Fraction(1), Fraction(2)))
        ci = family_generators(Permutation.identity(2), h, params)
        t = MultiPoly.variable("t")
        v = var(2, 1)
        assert ci.generators == ((2, 1, t * (2 - 1) * v - v ** 2),)

    def test_symbolic_gamma(self):
        h = HessenbergFunction((1, 2))
        ci = family_generators(
            Permutation.identity(2), h, FamilyParameters(None)
        )
        t = MultiPoly.variable("t")
        g1 = MultiPoly.variable("g_1")
        g2 = MultiPoly.variable("g_2")
        v = var(2, 1)
        assert ci.generators[0][2] == t * (g2 - g1) * v - v ** 2

    def test_default_gamma_is_1_to_n(self):
        params = FamilyParameters.default(4)
        assert params.gamma == tuple(Fraction(i) for i in range(1, 5))

    def test_repeated_gamma_rejected(self):
        with pytest.raises(ValueError, match="pairwise distinct"):
            FamilyParameters((Fraction(1), Fraction(1)))

    @pytest.mark.parametrize("n", [2, 3])
    def test_specialize_at_zero_recovers_nilpotent_ideal(self, n):
        for w in all_permutations(n):
            for h_values in _hessenberg_values(n):
                h = HessenbergFunction(h_values)
                fam = family_generators(w, h)
                assert (
                    specialize_fiber(fam, 0).generators
                    == ideal_generators(w, h).generators
                )


def _hessenberg_values(n):
    from hessex.hessenberg import all_hessenberg_functions

    return [h.values for h in all_hessenberg_functions(n)]


class TestSpecializeFiber:
    def _family_n2(self):
        h = HessenbergFunction((1, 2))
        return family_generators(
            Permutation.identity(2), h, FamilyParameters((Fraction(1), Fraction(2)))
        )

    def test_zero_fiber(self):
        ci = specialize_fiber(self._family_n2(), 0)
        assert ci.generators == ((2, 1, -(var(2, 1) ** 2)),)
        assert not ci.family
        assert ci.t_value == 0

    def test_unit_fiber(self):
        ci = specialize_fiber(self._family_n2(), 1)
        v = var(2, 1)
        assert ci.generators == ((2, 1, v - v ** 2),)

    def test_requires_family(self):
        h = HessenbergFunction((1, 2))
        plain = ideal_generators(Permutation.identity(2), h)
        with pytest.raises(ValueError, match="requires a family"):
            specialize_fiber(plain, 0)


class TestOrderingAndRendering:
    def test_generators_ascend_in_column_then_row(self):
        h = HessenbergFunction((2, 3, 4, 4))
        ci = ideal_generators(Permutation.longest(4), h)
        assert ci.generator_positions() == ((3, 1), (4, 1), (4, 2))

    def test_text_rendering_is_stable(self):
        h = HessenbergFunction((3, 3, 4, 4))
        ci = ideal_generators(Permutation.longest(4), h)
        order = order_for(4)
        assert ci.generators[1][2].to_text(order) == "-x_{1,3} + x_{2,2}"
