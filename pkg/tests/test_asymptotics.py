"""Regime substitutions, exact leading terms, closed-form comparisons."""

import random
from fractions import Fraction

import pytest

from jd3.asymptotics import (
    DEFAULT_REGIMES,
    ExpVector,
    PuiseuxPoly,
    REGIME_ONE,
    REGIME_TWO,
    Regime,
    expected_q_leading,
    leading_term,
    regime_images,
    substitute_regime,
    substituted_q,
    verify_q_asymptotics,
)
from jd3.multipoly import Poly, XVARS, YVARS, p2, q_poly

Y = {n: Poly.variable(YVARS, n) for n in YVARS.names}


def single_term(p: PuiseuxPoly):
    assert len(p.terms) == 1
    ((value, (coeff, vecs)),) = p.terms.items()
    return coeff, vecs


# --- regimes -----------------------------------------------------------------


def test_default_regime_inequalities():
    for regime in (REGIME_ONE, REGIME_TWO):
        a, b, c = regime.a, regime.b, regime.c
        assert a > b > c > 0
    assert REGIME_ONE.a - REGIME_ONE.b < REGIME_ONE.b - REGIME_ONE.c
    assert REGIME_ONE.b - REGIME_ONE.c < 2 * (REGIME_ONE.a - REGIME_ONE.b)
    assert REGIME_TWO.b - REGIME_TWO.c < REGIME_TWO.a - REGIME_TWO.b
    assert REGIME_TWO.a - REGIME_TWO.b < 2 * (REGIME_TWO.b - REGIME_TWO.c)


def test_regime_validation():
    with pytest.raises(ValueError):
        Regime("one", 1, 2, 3)  # not decreasing
    with pytest.raises(ValueError):
        Regime("one", 2, Fraction(7, 5), 1)  # regime-two shape under id one
    with pytest.raises(ValueError):
        Regime("two", 2, Fraction(8, 5), 1)
    with pytest.raises(ValueError):
        Regime("three", 3, 2, 1)


# --- substitution ------------------------------------------------------------


def test_y1_minus_y4_is_ta_in_regime_one():
    coeff, vecs = single_term(substitute_regime(Y["y1"] - Y["y4"], REGIME_ONE))
    assert coeff == 1 and vecs == (ExpVector(1, 0, 0),)


def test_regime_one_defining_differences():
    for name, vec in (("y1", (1, 0, 0)), ("y2", (0, 1, 0)), ("y3", (0, 0, 1))):
        coeff, vecs = single_term(substitute_regime(Y[name] - Y["y4"], REGIME_ONE))
        assert coeff == 1 and vecs == (ExpVector(*vec),)


def test_y1_minus_y2_is_tb_in_regime_two():
    coeff, vecs = single_term(substitute_regime(Y["y1"] - Y["y2"], REGIME_TWO))
    assert coeff == 1 and vecs == (ExpVector(0, 1, 0),)


def test_face_sum_substitutes_to_zero():
    for regime in (REGIME_ONE, REGIME_TWO):
        image = substitute_regime(Y["y1"] + Y["y2"] + Y["y3"] + Y["y4"], regime)
        assert image.is_zero()


def test_substitute_requires_y_variables():
    with pytest.raises(ValueError):
        substitute_regime(Poly.variable(XVARS, "x1"), REGIME_ONE)


def test_regime_images_use_quarters():
    images = regime_images("one")
    total = images["y1"] + images["y2"] + images["y3"] + images["y4"]
    assert total.is_zero()


# --- leading terms -----------------------------------------------------------


def test_leading_term_simple_comparison():
    p = substitute_regime(Y["y1"] - Y["y4"] - (Y["y2"] - Y["y4"]), REGIME_ONE)
    coeff, exp = leading_term(p, REGIME_ONE)
    assert (coeff, exp) == (1, ExpVector(1, 0, 0))  # t^a - t^b leads with t^a


def test_leading_term_of_zero_rejected():
    zero = substitute_regime(Poly.zero(YVARS), REGIME_ONE)
    with pytest.raises(ValueError):
        leading_term(zero, REGIME_ONE)


def test_leading_term_regime_mismatch_rejected():
    p = substitute_regime(Y["y1"], REGIME_ONE)
    with pytest.raises(ValueError):
        leading_term(p, REGIME_TWO)


def test_q000_leading_regime_one():
    p = substituted_q(0, 0, 0, REGIME_ONE)
    coeff, exp = leading_term(p, REGIME_ONE)
    assert coeff == 9 and exp == ExpVector(6, 2, 1)


def test_q100_leading_regime_one():
    p = substituted_q(1, 0, 0, REGIME_ONE)
    coeff, exp = leading_term(p, REGIME_ONE)
    assert coeff == 18 and exp == ExpVector(8, 2, 1)


def test_exp_vector_rendering():
    assert str(ExpVector(6, 2, 1)) == "6a+2b+c"
    assert str(ExpVector(9, 3, 1)) == "9a+3b+c"
    assert str(ExpVector(1, -1, 0)) == "a-b"
    assert str(ExpVector(0, 0, 0)) == "0"


def test_p2_power_two_orders_regime_one():
    # leading 2^n t^(2an); next term -n 2^n t^(2an-(a-b))
    base = p2(YVARS, ("y1", "y2", "y3"))
    for n in (1, 2, 3, 4):
        terms = substitute_regime(base**n, REGIME_ONE).sorted_terms()
        _, coeff0, vecs0 = terms[0]
        _, coeff1, vecs1 = terms[1]
        assert coeff0 == 2**n and vecs0 == (ExpVector(2 * n, 0, 0),)
        assert coeff1 == -n * 2**n and vecs1 == (ExpVector(2 * n - 1, 1, 0),)


def test_value_collisions_merge():
    # (0,5,4) and (3,0,6) share the value 12 under regime one
    one = DEFAULT_REGIMES["one"]
    assert ExpVector(0, 5, 4).value_at(one) == ExpVector(3, 0, 6).value_at(one) == 12


# --- closed-form comparisons -------------------------------------------------


def test_expected_closed_forms_at_origin():
    assert expected_q_leading(0, 0, 0, "one") == (9, ExpVector(6, 2, 1))
    assert expected_q_leading(0, 0, 0, "two") == (18, ExpVector(5, 3, 1))
    assert expected_q_leading(0, 0, 1, "two") == (6, ExpVector(9, 3, 1))


def test_verify_q_asymptotics_examples():
    assert verify_q_asymptotics(0, 0, 0, REGIME_ONE)
    assert verify_q_asymptotics(0, 0, 1, REGIME_TWO)
    result = verify_q_asymptotics(0, 0, 0, REGIME_TWO)
    assert result.passed and result.actual_coeff == 18
    assert result.actual_exp == ExpVector(5, 3, 1)


def test_verify_q_asymptotics_all_small_degrees():
    for d in range(4):
        for m in range(d // 3 + 1):
            for k in range((d - 3 * m) // 2 + 1):
                n = d - 3 * m - 2 * k
                for regime in (REGIME_ONE, REGIME_TWO):
                    assert verify_q_asymptotics(n, m, k, regime).passed, (n, m, k)


def test_leading_coefficients_positive():
    for d in range(4):
        for m in range(d // 3 + 1):
            for k in range((d - 3 * m) // 2 + 1):
                n = d - 3 * m - 2 * k
                for regime in (REGIME_ONE, REGIME_TWO):
                    coeff, _ = leading_term(
                        substituted_q(n, m, k, regime), regime
                    )
                    assert coeff > 0


def test_custom_regime_still_passes():
    custom = Regime("one", Fraction(3), Fraction(12, 5), Fraction(3, 2))
    assert verify_q_asymptotics(0, 0, 0, custom).passed


def test_factored_substitution_matches_direct():
    for nmk in ((0, 0, 0), (1, 0, 0), (0, 0, 1)):
        direct = substitute_regime(q_poly(*nmk), REGIME_ONE)
        assert substituted_q(*nmk, REGIME_ONE) == direct


# --- homomorphism property ----------------------------------------------------


def test_substitute_regime_is_ring_homomorphism():
    rng = random.Random(5)
    for _ in range(20):
        terms_p = {
            tuple(rng.randint(0, 2) for _ in range(4)): rng.randint(-5, 5)
            for _ in range(rng.randint(1, 3))
        }
        terms_q = {
            tuple(rng.randint(0, 2) for _ in range(4)): rng.randint(-5, 5)
            for _ in range(rng.randint(1, 3))
        }
        p = Poly(YVARS, terms_p)
        q = Poly(YVARS, terms_q)
        for regime in (REGIME_ONE, REGIME_TWO):
            assert substitute_regime(p * q, regime) == substitute_regime(
                p, regime
            ) * substitute_regime(q, regime)
            assert substitute_regime(p + q, regime) == substitute_regime(
                p, regime
            ) + substitute_regime(q, regime)
