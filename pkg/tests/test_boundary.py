"""Boundary term: case enumeration, per-case evaluation, and the full
dimension-four tables against the frozen references."""

import random
from fractions import Fraction

import pytest

from wres.baselines import boundary_reference, compare_cases, compare_total
from wres.boundary import (
    SUPPORTED_PAIRS,
    CaseTuple,
    boundary_phi,
    case_coefficient,
    enumerate_cases,
    evaluate_case,
)
from wres.exact import GaussianRational, Poly
from wres.jets import inverse_symbols

PAIRS_DIM4 = [
    ("Dv", "Dv"),
    ("DvStar", "DvStar"),
    ("Dv", "DvStar"),
]


def test_enumeration_dim4_first_order_pair():
    got = [c.as_tuple() for c in enumerate_cases(4, 1, 1)]
    assert got == [
        (-1, -1, 0, 0, 1),
        (-1, -1, 0, 1, 0),
        (-1, -1, 1, 0, 0),
        (-1, -2, 0, 0, 0),
        (-2, -1, 0, 0, 0),
    ]


def test_enumeration_dim6_first_against_third():
    got = [c.as_tuple() for c in enumerate_cases(6, 1, 3)]
    assert got == [
        (-1, -3, 0, 0, 1),
        (-1, -3, 0, 1, 0),
        (-1, -3, 1, 0, 0),
        (-1, -4, 0, 0, 0),
        (-2, -3, 0, 0, 0),
    ]


def test_enumeration_dim2_is_empty():
    assert enumerate_cases(2, 1, 1) == []


def test_enumeration_rejects_bad_input():
    with pytest.raises(ValueError):
        enumerate_cases(5, 1, 1)
    with pytest.raises(ValueError):
        enumerate_cases(4, 0, 1)


def test_enumeration_satisfies_order_constraint():
    rng = random.Random(71)
    for _ in range(40):
        n = 2 * rng.randint(1, 5)
        p1 = rng.randint(1, 3)
        p2 = rng.randint(1, 3)
        cases = enumerate_cases(n, p1, p2)
        seen = set()
        for c in cases:
            assert c.r + c.l - c.k - c.j - c.alpha - 1 == -n
            assert c.r <= -p1
            assert c.l <= -p2
            assert c.k >= 0 and c.j >= 0 and c.alpha >= 0
            assert c.as_tuple() not in seen
            seen.add(c.as_tuple())


def test_case_coefficient_values():
    minus_i = GaussianRational(0, -1)
    minus_half = GaussianRational(Fraction(-1, 2), 0)
    assert case_coefficient(CaseTuple(-1, -1, 0, 0, 1)) == GaussianRational(
        -1, 0
    )
    assert case_coefficient(CaseTuple(-1, -1, 0, 1, 0)) == minus_half
    assert case_coefficient(CaseTuple(-1, -1, 1, 0, 0)) == minus_half
    assert case_coefficient(CaseTuple(-1, -2, 0, 0, 0)) == minus_i
    assert case_coefficient(CaseTuple(-2, -1, 0, 0, 0)) == minus_i


def test_tangential_derivative_cases_are_structurally_zero():
    left = inverse_symbols(4, "Dv")
    case = CaseTuple(-1, -1, 0, 0, 1)
    report = evaluate_case(case, left, left, 4)
    assert report.structurally_zero
    assert report.trace_integral == Poly.zero()
    assert report.contribution == Poly.zero()
    assert report.coefficient == GaussianRational.of(-1)


def test_untracked_normal_jets_are_rejected():
    left = inverse_symbols(4, "Dv")
    with pytest.raises(ValueError):
        evaluate_case(CaseTuple(-1, -1, 0, 2, 0), left, left, 4)
    with pytest.raises(ValueError):
        evaluate_case(CaseTuple(-1, -1, 2, 0, 0), left, left, 4)


@pytest.mark.parametrize("left_op,right_op", PAIRS_DIM4)
@pytest.mark.parametrize("dual", [True, False])
def test_dim4_tables_match_reference(left_op, right_op, dual):
    """Every dimension-four pair reproduces its reference table exactly,
    case by case and in total, under both drift conventions."""
    total, reports = boundary_phi(4, left_op, right_op, dual)
    reference = boundary_reference(4, left_op, right_op, dual)
    assert reference is not None
    ref_cases, ref_total = reference
    assert {r.tuple.as_tuple() for r in reports} == set(ref_cases)
    assert compare_cases(reports, ref_cases) == []
    assert compare_total(total, ref_total, "boundary total") == []


@pytest.mark.parametrize("left_op,right_op", PAIRS_DIM4)
def test_dim4_contributions_have_no_direction_dependence(left_op, right_op):
    # the cosphere integral must consume every tangential covariable
    _, reports = boundary_phi(4, left_op, right_op)
    for report in reports:
        for mono in report.contribution.terms:
            for gen, _ in mono:
                assert gen[0] != "XI"
        for mono in report.trace_integral.terms:
            for gen, _ in mono:
                assert gen[0] in ("XI", "H", "V", "VS", "PI")


def test_supported_pairs_are_frozen():
    assert SUPPORTED_PAIRS == {
        (4, "Dv", "Dv"),
        (4, "DvStar", "DvStar"),
        (4, "Dv", "DvStar"),
        (6, "Dv", "D3"),
    }


def test_unsupported_pair_raises():
    with pytest.raises(ValueError):
        boundary_phi(4, "Dv", "D3")
    with pytest.raises(ValueError):
        boundary_phi(8, "Dv", "Dv")
