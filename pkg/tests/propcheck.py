"""Seeded randomized property checks shared between unit and acceptance tests.

Every check runs a fixed number of cases from a deterministic generator and
returns the case count, raising AssertionError on the first failure.
"""

from __future__ import annotations

import random
from fractions import Fraction

from hessex.exactalg import MonomialOrder, MultiPoly, PolyMatrix
from hessex.nokounkov import SURFACE_ORDER, valuation

VARS = ("a", "b", "c")
ORDER = MonomialOrder.lex(VARS)


def random_poly(rng: random.Random, nvars: int = 3, max_terms: int = 4,
                max_exp: int = 3, allow_zero: bool = True) -> MultiPoly:
    p = MultiPoly.zero(VARS[:nvars])
    for _ in range(rng.randint(0 if allow_zero else 1, max_terms)):
        term = MultiPoly.const(
            Fraction(rng.randint(-9, 9), rng.randint(1, 9)), VARS[:nvars]
        )
        for v in VARS[:nvars]:
            term = term * MultiPoly.variable(v) ** rng.randint(0, max_exp)
        p = p + term
    return p


def random_point(rng: random.Random, nvars: int = 3) -> dict[str, Fraction]:
    return {
        v: Fraction(rng.randint(-6, 6), rng.randint(1, 5))
        for v in VARS[:nvars]
    }


def check_ring_axioms(seed: int, cases: int) -> int:
    rng = random.Random(seed)
    for _ in range(cases):
        p, q, r = (random_poly(rng) for _ in range(3))
        assert (p + q) + r == p + (q + r)
        assert p + q == q + p
        assert (p * q) * r == p * (q * r)
        assert p * q == q * p
        assert p * (q + r) == p * q + p * r
        assert p + (-p) == MultiPoly.zero()
    return cases


def check_leibniz(seed: int, cases: int) -> int:
    rng = random.Random(seed)
    for _ in range(cases):
        p, q = random_poly(rng), random_poly(rng)
        v = rng.choice(VARS)
        assert (p * q).partial(v) == p.partial(v) * q + p * q.partial(v)
    return cases


def check_partial_commute(seed: int, cases: int) -> int:
    rng = random.Random(seed)
    for _ in range(cases):
        p = random_poly(rng)
        u, v = rng.sample(VARS, 2)
        assert p.partial(u).partial(v) == p.partial(v).partial(u)
    return cases


def check_lowest_term_multiplicative(seed: int, cases: int) -> int:
    rng = random.Random(seed)
    for _ in range(cases):
        p = random_poly(rng, allow_zero=False)
        q = random_poly(rng, allow_zero=False)
        if p.is_zero() or q.is_zero():
            continue
        mp, cp = p.lowest_term(ORDER)
        mq, cq = q.lowest_term(ORDER)
        mpq, cpq = (p * q).lowest_term(ORDER)
        assert mpq == mp * mq
        assert cpq == cp * cq
    return cases


def check_evaluate_homomorphism(seed: int, cases: int) -> int:
    rng = random.Random(seed)
    for _ in range(cases):
        p, q = random_poly(rng), random_poly(rng)
        point = random_point(rng)
        assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)
        assert (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point)
    return cases


def random_unimodular(rng: random.Random, n: int = 3) -> PolyMatrix:
    """Product of unitriangular matrices with polynomial entries and a
    permutation matrix; the determinant is +-1 by construction."""

    def small_poly() -> MultiPoly:
        p = MultiPoly.zero(VARS)
        for _ in range(rng.randint(0, 2)):
            term = MultiPoly.const(Fraction(rng.randint(-3, 3)), VARS)
            term = term * MultiPoly.variable(rng.choice(VARS)) ** rng.randint(0, 1)
            p = p + term
        return p

    lower = [[MultiPoly.const(1 if i == j else 0) for j in range(n)] for i in range(n)]
    upper = [[MultiPoly.const(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i):
            lower[i][j] = small_poly()
            upper[j][i] = small_poly()
    perm = list(range(n))
    rng.shuffle(perm)
    pm = [[MultiPoly.const(1 if perm[j] == i else 0) for j in range(n)] for i in range(n)]
    return PolyMatrix(lower) * PolyMatrix(upper) * PolyMatrix(pm)


def check_unimodular_roundtrip(seed: int, cases: int) -> int:
    rng = random.Random(seed)
    for _ in range(cases):
        a = random_unimodular(rng, n=rng.choice((2, 3)))
        inv = a.unimodular_inverse()
        assert (a * inv).is_identity()
        assert (inv * a).is_identity()
    return cases


def random_surface_poly(rng: random.Random) -> MultiPoly:
    p = MultiPoly.zero(("x", "y"))
    for _ in range(rng.randint(1, 4)):
        term = MultiPoly.const(Fraction(rng.randint(-5, 5)), ("x", "y"))
        term = (
            term
            * MultiPoly.variable("x") ** rng.randint(0, 4)
            * MultiPoly.variable("y") ** rng.randint(0, 4)
        )
        p = p + term
    return p


def check_valuation_additive(seed: int, cases: int) -> int:
    rng = random.Random(seed)
    for _ in range(cases):
        p = random_surface_poly(rng)
        q = random_surface_poly(rng)
        if p.is_zero() or q.is_zero():
            continue
        vp, vq, vpq = valuation(p), valuation(q), valuation(p * q)
        assert vpq == (vp[0] + vq[0], vp[1] + vq[1])
    return cases


ALL_CHECKS = {
    "ring axioms": check_ring_axioms,
    "Leibniz rule": check_leibniz,
    "partial derivatives commute": check_partial_commute,
    "lowest-term multiplicativity": check_lowest_term_multiplicative,
    "evaluation homomorphism": check_evaluate_homomorphism,
    "unimodular inverse round-trip": check_unimodular_roundtrip,
    "valuation additivity": check_valuation_additive,
}
