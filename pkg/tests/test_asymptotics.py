"""Depth, dimension, and associated-prime sequences of Rees powers,
superficial linear forms, reduction modulo a linear form, and the
three-valued asymptotic checkers."""

import math

import pytest

from reespow import INFINITE_DEPTH, Element, Ring
from reespow.asymptotics import (
    CONSISTENT,
    INCONCLUSIVE,
    VIOLATION,
    all_checkers,
    ass_sequence,
    bar_reduce_check,
    burch_check,
    cm_equality_check,
    cowsik_nori_check,
    grade_check,
    json_value,
    power_depth_sequence,
    prime_string,
    quotient_depth_sequence,
    reduced_context,
    stable_tail,
    superficial_element,
    worst_verdict,
)

from conftest import context, poly


def test_worst_verdict():
    assert worst_verdict([]) == CONSISTENT
    assert worst_verdict([CONSISTENT, CONSISTENT]) == CONSISTENT
    assert worst_verdict([CONSISTENT, INCONCLUSIVE]) == INCONCLUSIVE
    assert worst_verdict([INCONCLUSIVE, VIOLATION, CONSISTENT]) == VIOLATION


def test_json_value():
    assert json_value(math.inf) == "inf"
    assert json_value(-math.inf) == "-inf"
    assert json_value({2, 1}) == [1, 2]
    assert json_value((1, "a")) == [1, "a"]
    assert json_value({"k": {3, 4}}) == {"k": [3, 4]}
    assert json_value(True) is True
    assert json_value(None) is None
    ring = Ring(("x",))
    assert json_value(Element.variable(ring, 0)) == "x"


def test_stable_tail():
    assert stable_tail([(1, 0), (2, 0), (3, 0)], 3) == (1, 0)
    assert stable_tail([(1, 1), (2, 0), (3, 0)], 3) is None
    assert stable_tail([(1, 1), (2, 0), (3, 0)], 2) == (2, 0)
    assert stable_tail([(1, 0), (2, 1), (3, 1), (4, 1)], 2) == (2, 1)
    assert stable_tail([(1, 0)], 3) is None
    assert stable_tail([(1, 0), (2, 0)], 0) is None
    assert stable_tail([(5, "a"), (6, "a")], 2) == (5, "a")


def test_prime_string(R2):
    assert prime_string(frozenset(), R2.names) == "(0)"
    assert prime_string(frozenset({0}), R2.names) == "(x)"
    assert prime_string(frozenset({1, 0}), R2.names) == "(x,y)"


def test_quotient_depth_sequence_flagships(R2):
    m = context(R2, 1, "x", "y")
    seq = quotient_depth_sequence(m, 6)
    assert seq.entries == [(n, 0, 0) for n in range(1, 7)]
    assert seq.stable_from == 1
    assert seq.stable_depth == 0

    principal = context(R2, 1, "x")
    seq2 = quotient_depth_sequence(principal, 6)
    assert seq2.entries == [(n, 1, 1) for n in range(1, 7)]
    assert seq2.stable_from == 1
    assert seq2.stable_depth == 1

    xsq = context(R2, 1, "x^2", "x*y")
    seq3 = quotient_depth_sequence(xsq, 6)
    assert seq3.entries == [(n, 0, 1) for n in range(1, 7)]
    assert seq3.stable_from == 1


def test_depth_sequence_as_dict(R2):
    seq = quotient_depth_sequence(context(R2, 1, "x", "y"), 3)
    data = seq.as_dict()
    assert data["entries"][0] == {"n": 1, "depth": 0, "dim": 0}
    assert data["stableFrom"] == 1
    assert data["stableDepth"] == 0


def test_power_depth_sequence(R2):
    m = context(R2, 1, "x", "y")
    pairs, onset = power_depth_sequence(m, 4)
    assert pairs == [(0, 2), (1, 1), (2, 1), (3, 1), (4, 1)]
    assert onset == 1


def test_ass_sequence_monomial(R2):
    xsq = context(R2, 1, "x^2", "x*y")
    seq = ass_sequence(xsq, 6)
    assert seq.supported
    for n, primes, free in seq.entries:
        assert primes == ["(x)", "(x,y)"]
        assert not free
    assert seq.stable_from == 1
    assert seq.stable_value == ["(x)", "(x,y)"]


def test_ass_sequence_module(R2):
    diag = context(R2, 2, ("x", "0"), ("0", "y"))
    seq = ass_sequence(diag, 4)
    assert seq.supported
    assert seq.entries[0][1] == ["(x)", "(y)"]
    assert seq.entries[3][1] == ["(x)", "(y)"]
    assert seq.stable_from == 1


def test_ass_sequence_unsupported(R2):
    ctx = context(R2, 1, "x^2 + y^2", "x*y")
    seq = ass_sequence(ctx, 4)
    assert not seq.supported
    assert "not componentwise monomial" in seq.reason
    assert seq.as_dict() == {"supported": False, "reason": seq.reason}


def test_superficial_element(R2):
    principal = context(R2, 1, "x")
    a = superficial_element(principal, 4)
    assert a is not None
    assert str(a) == "y"

    # every windowed quotient of the maximal ideal has depth zero
    m = context(R2, 1, "x", "y")
    assert superficial_element(m, 4) is None

    diag = context(R2, 2, ("x", "0"), ("0", "y"))
    b = superficial_element(diag, 3)
    assert b is not None
    assert str(b) == "x + y"


def test_superficial_element_is_window_regular(R2):
    diag = context(R2, 2, ("x", "0"), ("0", "y"))
    b = superficial_element(diag, 3)
    for n in range(1, 4):
        power = diag.rees_power(n)
        assert power.colon(b).same_module(power)


def test_reduced_context_validation(R2, R3):
    ctx = context(R2, 1, "x", "y")
    with pytest.raises(ValueError, match="degree 1"):
        reduced_context(ctx, poly(R2, "x^2"))
    with pytest.raises(ValueError, match="degree 1"):
        reduced_context(ctx, poly(R2, "x + 1"))
    with pytest.raises(ValueError, match="linear form"):
        reduced_context(ctx, Element.zero(R2))
    with pytest.raises(ValueError, match="linear form"):
        reduced_context(ctx, poly(R3, "x"))


def test_reduced_context_kills_pivot(R2):
    m = context(R2, 1, "x", "y")
    bar = reduced_context(m, poly(R2, "y"))
    assert bar.ring.names == ("x",)
    assert bar.mu == 1
    assert str(bar.min_gens[0]) == "x"

    bar2 = reduced_context(m, poly(R2, "x + y"))
    assert bar2.ring.names == ("x",)
    # y is rewritten as -x, so both generators map to multiples of x
    assert bar2.mu == 1
    assert str(bar2.min_gens[0]) == "x"


def test_bar_reduce_regular_form(R2):
    principal = context(R2, 1, "x")
    verdict = bar_reduce_check(principal, poly(R2, "y"), 3)
    assert verdict.verdict == CONSISTENT
    for row in verdict.quantities["rows"]:
        assert row["numeratorMatch"]
        assert row["intersectionMatch"]
        assert row["generatorCountMatch"]


def test_bar_reduce_zerodivisor_is_inconclusive(R2):
    m = context(R2, 1, "x", "y")
    verdict = bar_reduce_check(m, poly(R2, "x"), 3)
    assert verdict.verdict == INCONCLUSIVE
    assert "not regular" in verdict.explanation
    for row in verdict.quantities["rows"]:
        assert row["numeratorMatch"]
        assert not row["intersectionMatch"]
        assert row["generatorCountMatch"]


def test_bar_reduce_module_case(R2):
    diag = context(R2, 2, ("x", "0"), ("0", "y"))
    a = superficial_element(diag, 3)
    verdict = bar_reduce_check(diag, a, 3)
    assert verdict.verdict == CONSISTENT


def test_burch_flagships(R2):
    m = context(R2, 1, "x", "y")
    verdict = burch_check(m)
    assert verdict.verdict == CONSISTENT
    assert verdict.quantities["spread"] == 2
    assert verdict.quantities["bound"] == 2
    assert verdict.quantities["windowMinDepth"] == 0

    principal = context(R2, 1, "x")
    verdict2 = burch_check(principal)
    assert verdict2.verdict == CONSISTENT
    assert verdict2.quantities["spread"] == 1
    assert verdict2.quantities["bound"] == 1


def test_grade_flagship(R2):
    m = context(R2, 1, "x", "y")
    verdict = grade_check(m)
    assert verdict.verdict == CONSISTENT
    assert verdict.quantities["gradeOfBaseIdeal"] == 1
    assert verdict.quantities["windowMinPowerDepth"] == 1
    assert verdict.quantities["depthRees"] == 3
    assert verdict.quantities["spread"] == 2


def test_grade_low_rank_module(R2):
    low = context(R2, 2, ("x", "y"))
    verdict = grade_check(low)
    assert verdict.verdict == CONSISTENT


def test_cm_equality_flagship(R2):
    m = context(R2, 1, "x", "y")
    verdict = cm_equality_check(m)
    assert verdict.verdict == CONSISTENT
    q = verdict.quantities
    assert q["cohenMacaulay"] and not q["free"] and q["fullRank"]
    assert q["spread"] == 2
    assert q["boundValue"] == 2
    assert "equality" in verdict.explanation


def test_cm_equality_vacuous_free(R2):
    principal = context(R2, 1, "x")
    verdict = cm_equality_check(principal)
    assert verdict.verdict == CONSISTENT
    assert verdict.quantities["free"]
    assert "free" in verdict.explanation


def test_cm_equality_vacuous_low_rank(R2):
    # generic rank 1 inside R^2, not free: the full-rank hypothesis fails
    flat = context(R2, 2, ("x", "0"), ("y", "0"))
    verdict = cm_equality_check(flat)
    assert verdict.verdict == CONSISTENT
    assert not verdict.quantities["free"]
    assert not verdict.quantities["fullRank"]
    assert "full rank" in verdict.explanation


def test_cowsik_nori_flagships(R2):
    m = context(R2, 1, "x", "y")
    verdict = cowsik_nori_check(m)
    assert verdict.verdict == CONSISTENT
    q = verdict.quantities
    assert q["genericallyCompleteIntersection"]
    assert q["completeIntersection"]
    assert q["equimultiple"]
    assert q["fittingHeight"] == 2
    assert q["targetDim"] == 0
    assert all(row["cohenMacaulay"] for row in q["rows"])

    xsq = context(R2, 1, "x^2", "x*y")
    verdict2 = cowsik_nori_check(xsq)
    assert verdict2.verdict == CONSISTENT
    q2 = verdict2.quantities
    assert q2["genericallyCompleteIntersection"]
    assert not q2["completeIntersection"]
    assert not q2["equimultiple"]
    assert q2["targetDim"] == 1
    assert all(not row["cohenMacaulay"] for row in q2["rows"])


def test_cowsik_nori_needs_ideal_module(R2):
    low = context(R2, 2, ("x", "y"))
    verdict = cowsik_nori_check(low)
    assert verdict.verdict == INCONCLUSIVE
    assert "ideal module" in verdict.explanation


def test_all_checkers_order_and_verdicts(R2):
    m = context(R2, 1, "x", "y")
    verdicts = all_checkers(m)
    assert [v.checker for v in verdicts] == [
        "burch",
        "grade",
        "cmEquality",
        "cowsikNori",
        "barReduce",
    ]
    by_name = {v.checker: v for v in verdicts}
    assert by_name["burch"].verdict == CONSISTENT
    assert by_name["grade"].verdict == CONSISTENT
    assert by_name["cmEquality"].verdict == CONSISTENT
    assert by_name["cowsikNori"].verdict == CONSISTENT
    # depth-zero quotients leave no room for a superficial element
    assert by_name["barReduce"].verdict == INCONCLUSIVE

    principal = context(R2, 1, "x")
    verdicts2 = all_checkers(principal)
    assert all(v.verdict == CONSISTENT for v in verdicts2)


def test_checker_dicts_are_json_ready(R2):
    import json

    for verdict in all_checkers(context(R2, 1, "x^2", "x*y")):
        payload = verdict.as_dict()
        assert set(payload) == {"checker", "verdict", "quantities", "explanation"}
        json.dumps(payload)
