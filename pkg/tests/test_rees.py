"""Rees powers of column-graded submodules of a free module: the graded
pieces E_n, their presentation ideal, fiber cone, analytic spread, and the
deviation and complete-intersection predicates built on them."""

import math

import pytest

from reespow import Element, ReesContext, Ring, Submodule, parse_polynomial
from reespow.errors import (
    ResourceLimitError,
    RingMismatchError,
    UnsupportedInstanceError,
)
from reespow.rees import t_monomials

from conftest import context, poly, vector


def test_t_monomial_counts(R2):
    for e in range(1, 5):
        for n in range(0, 6):
            monos = t_monomials(n, e)
            assert len(monos) == math.comb(n + e - 1, e - 1)
            assert all(sum(m) == n for m in monos)


def test_t_monomials_lex_descending():
    monos = t_monomials(2, 3)
    assert monos == [
        (2, 0, 0),
        (1, 1, 0),
        (1, 0, 1),
        (0, 2, 0),
        (0, 1, 1),
        (0, 0, 2),
    ]
    assert t_monomials(4, 1) == [(4,)]
    assert t_monomials(0, 2) == [(0, 0)]
    assert t_monomials(0, 0) == [()]
    assert t_monomials(3, 0) == []


def test_context_validation(R2, R3):
    with pytest.raises(ValueError, match="rank"):
        ReesContext(R2, [], 0)
    with pytest.raises(ValueError, match="column-graded"):
        context(R2, 2, ("x", "y^2"))
    with pytest.raises(ValueError, match="ambient free module"):
        context(R2, 1, "x", "y", "1")
    with pytest.raises(ValueError, match="ambient free module"):
        context(R2, 2, ("x", "0"), ("0", "x"), ("1", "0"), ("0", "1"))
    with pytest.raises(ValueError, match="generator 0"):
        ReesContext(R2, [poly(R3, "x")], 1)
    # zero generators are simply dropped
    ctx = ReesContext(R2, [poly(R2, "x"), Element.zero(R2)], 1)
    assert ctx.mu == 1


def test_power_of_maximal_ideal_matches_ideal_powers(R2):
    ctx = context(R2, 1, "x", "y")
    assert ctx.rank == 1
    for n in range(0, 5):
        # E_n for an ideal is the ordinary ideal power inside R
        power = ctx.rees_power(n)
        assert power.rank == 1
        monos = [
            Element.monomial(R2, exps)
            for exps in R2.monomials_of_degree(n)
        ]
        expected = Submodule(R2, 1, monos)
        assert power.same_module(expected)


def test_power_rank_and_basis(R2):
    ctx = context(R2, 2, ("x", "0"), ("0", "y"))
    assert ctx.power_rank(2) == 3
    assert ctx.t_basis(2) == [(2, 0), (1, 1), (0, 2)]
    power = ctx.rees_power(2)
    assert power.rank == 3
    expected = Submodule(
        R2,
        3,
        [
            poly(R2, "x^2").embedded(3, 0),
            poly(R2, "x*y").embedded(3, 1),
            poly(R2, "y^2").embedded(3, 2),
        ],
    )
    assert power.same_module(expected)


def test_power_zero_and_one(R2):
    ctx = context(R2, 1, "x^2", "x*y")
    e0 = ctx.rees_power(0)
    assert e0.rank == 1 and e0.contains(Element.one(R2))
    e1 = ctx.rees_power(1)
    assert e1.same_module(ctx.module)


def test_oracle_agreement_spot(R2, R3):
    cases = [
        context(R2, 1, "x^2", "x*y"),
        context(R2, 2, ("x", "0"), ("0", "y")),
        context(R2, 2, ("x", "y"), ("y", "x")),
        context(R3, 1, "x", "y", "z"),
        context(R2, 2, ("x", "y")),
    ]
    for ctx in cases:
        for n in range(0, 4):
            assert ctx.rees_power(n).same_module(ctx.rees_power_oracle(n))


def test_sym_product_lands_in_higher_power(R2):
    ctx = context(R2, 2, ("x", "0"), ("y", "x"), ("0", "y"))
    for a in range(0, 3):
        for b in range(0, 3):
            target = ctx.rees_power(a + b)
            pa = ctx.rees_power(a)
            pb = ctx.rees_power(b)
            for u in pa.gens:
                for v in pb.gens:
                    assert target.contains(ctx.sym_product(u, a, v, b))


def test_presentation_maximal_ideal(R2):
    ctx = context(R2, 1, "x", "y")
    sym_ring, ideal = ctx.presentation()
    assert sym_ring.nvars == 4
    assert sym_ring.names == ("x", "y", "_y0", "_y1")
    # y_j carries weight deg(g_j) + 1, here 2
    assert sym_ring.weights == (1, 1, 2, 2)
    mins = ideal.minimal_gens()
    assert len(mins) == 1
    rel = parse_polynomial(sym_ring, "x*_y1 - y*_y0")
    assert ideal.contains(rel)
    assert ctx.deviation() == 0


def test_presentation_weights_track_generator_degrees(R2):
    ctx = context(R2, 1, "x^2", "x*y", "y^2")
    sym_ring, ideal = ctx.presentation()
    assert sym_ring.weights == (1, 1, 3, 3, 3)
    fiber = ctx.fiber_cone()
    # the fiber cone of the squared maximal ideal is a quadric cone
    assert fiber.ring.nvars == 3
    rel = parse_polynomial(fiber.ring, "_y0*_y2 - _y1^2")
    assert fiber.relations.contains(rel)
    assert list(fiber.relations.minimal_gens()) == [rel.monic()]
    assert ctx.analytic_spread() == 2
    assert ideal.gb.elements


def test_fiber_cone_polynomial_ring(R2):
    ctx = context(R2, 1, "x", "y")
    fiber = ctx.fiber_cone()
    assert fiber.relations.is_zero()
    assert ctx.analytic_spread() == 2


def test_spread_bound_on_samples(sample_paths):
    from reespow.instance import load_instance

    for path in sample_paths:
        inst = load_instance(path)
        ctx = inst.context()
        d = ctx.ring.nvars
        e = ctx.rank
        assert ctx.analytic_spread() <= d + e - 1


def test_frozen_invariants(R2, R3):
    table = [
        (context(R2, 1, "x", "y"), 2, 3, 0, 0, True),
        (context(R2, 1, "x^2", "x*y"), 2, 3, 1, 1, False),
        (context(R2, 1, "x^2", "x*y", "y^2"), 2, 3, 1, 0, False),
        (context(R2, 2, ("x", "0"), ("0", "y")), 2, 4, 0, 0, True),
        (context(R3, 1, "x", "y", "z"), 3, 4, 0, 0, True),
    ]
    for ctx, spread, dim, dev, adev, ci in table:
        assert ctx.analytic_spread() == spread
        assert ctx.dim_rees() == dim
        assert ctx.deviation() == dev
        assert ctx.analytic_deviation() == adev
        assert ctx.is_complete_intersection() == ci


def test_deviations_need_ideal_module(R2):
    # generic rank 1 inside R^2: deviations are undefined
    low_rank = context(R2, 2, ("x", "y"))
    assert low_rank.analytic_spread() == 1
    assert low_rank.dim_rees() == 3
    assert not low_rank.is_ideal_module()
    with pytest.raises(UnsupportedInstanceError, match="ideal module"):
        low_rank.deviation()
    with pytest.raises(UnsupportedInstanceError, match="ideal module"):
        low_rank.is_generically_ci()


def test_dim_rees_formula(R2, R3):
    for ctx in (
        context(R2, 1, "x^2", "x*y"),
        context(R2, 2, ("x", "0"), ("0", "y")),
        context(R2, 2, ("x", "y"), ("y", "x")),
        context(R3, 1, "x*y", "y*z"),
    ):
        assert ctx.dim_rees() == ctx.ring.nvars + ctx.generic_rank()


def test_mu_of_power(R2):
    ctx = context(R2, 1, "x", "y")
    for n in range(1, 6):
        assert ctx.mu_of_power(n) == n + 1
    ctx2 = context(R2, 2, ("x", "0"), ("0", "y"))
    assert ctx2.mu_of_power(2) == 3


def test_fitting_data(R2):
    m = context(R2, 1, "x", "y")
    assert m.fitting_height() == 2
    xsq = context(R2, 1, "x^2", "x*y")
    assert xsq.fitting_height() == 1
    primes = xsq.minimal_primes_over_fitting()
    assert [[str(g) for g in p.gens] for p in primes] == [["x"]]


def test_fitting_nonmonomial_needs_supplied_primes(R2):
    ctx = context(R2, 1, "x^2 + y^2", "x*y")
    with pytest.raises(UnsupportedInstanceError, match="minimal primes"):
        ctx.minimal_primes_over_fitting()


def test_generically_ci(R2):
    assert context(R2, 1, "x", "y").is_generically_ci()
    assert not context(R2, 1, "x^2", "x*y", "y^2").is_generically_ci()
    assert context(R2, 1, "x^2", "x*y").is_generically_ci()


def test_ideal_module_detection(R2):
    assert context(R2, 1, "x^2", "x*y").is_ideal_module()
    assert context(R2, 2, ("x", "0"), ("0", "y")).is_ideal_module()
    # a free submodule of smaller rank is not an ideal module
    assert not context(R2, 2, ("x", "0"), ("y", "0")).is_ideal_module()


def test_equimultiple(R2):
    assert context(R2, 1, "x", "y").is_equimultiple()
    assert context(R2, 1, "x^2", "x*y", "y^2").is_equimultiple()
    assert not context(R2, 1, "x^2", "x*y").is_equimultiple()


def test_power_rank_guard(R3):
    ctx = context(R3, 3, ("x", "0", "0"), ("0", "y", "0"), ("0", "0", "z"))
    with pytest.raises(ResourceLimitError):
        ctx.power_rank(100)


def test_power_quotient(R2):
    ctx = context(R2, 1, "x", "y")
    q = ctx.power_quotient(2)
    assert q.krull_dim() == 0
    assert q.depth() == 0
    # G_2/E_2 here is R/(x^2) + R/(x*y) + R/(y^2), a depth-one direct sum
    ctx2 = context(R2, 2, ("x", "0"), ("0", "y"))
    q2 = ctx2.power_quotient(2)
    assert q2.krull_dim() == 1
    assert q2.depth() == 1


def test_rees_quotient_and_depth(R2):
    ctx = context(R2, 1, "x", "y")
    quotient = ctx.rees_quotient()
    assert quotient.krull_dim() == 3
    assert quotient.depth() == 3
    assert quotient.is_cohen_macaulay()


def test_column_fitting_ideal(R2):
    ctx = context(R2, 2, ("x", "0"), ("0", "y"))
    fitt = ctx.column_fitting_ideal()
    assert fitt.rank == 1
    assert fitt.contains(poly(R2, "x*y"))
