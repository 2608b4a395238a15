"""Factored rational functions, partial fractions, and the exact forms.

Expected values are frozen from independent oracles: degree counts from
the block bookkeeping, pole multiplicities from an interval cover count,
reconstruction by exact evaluation at sample points.
"""

import random
from fractions import Fraction

import pytest

from zetaforms.errors import BudgetError, DomainError
from zetaforms.forms import (
    FactoredRationalFunction,
    PartialFractionExpansion,
    RisingBlock,
    ZetaLinearForm,
    build_zudilin,
    common_denominator,
    direct_sum,
    evaluate_numeric,
    fraction_str,
    partial_fractions,
    pole_spectrum,
    reconstruction_check,
    reflection_check,
    required_digits,
    second_derivative,
    sum_expansion_numeric,
    sum_over_k,
    zudilin_linear_form,
)
from zetaforms.zeta import ZetaTable, zeta_high_precision


def cover_count_oracle(n, m):
    """Independent oracle: how many of the ten intervals
    [(12-j)n, (25+j)n] contain m."""
    return sum(1 for j in range(1, 11) if (12 - j) * n <= m <= (25 + j) * n)


def test_build_degrees_and_properness():
    for n in (1, 2, 3):
        f = build_zudilin(n)
        assert f.numerator_degree == 162 * n + 1
        assert f.denominator_degree == 240 * n + 10
        # properness margin
        assert f.denominator_degree - f.numerator_degree == 78 * n + 9
        assert f.is_proper
    assert build_zudilin(1).numerator_degree == 163
    assert build_zudilin(1).denominator_degree == 250
    with pytest.raises(DomainError):
        build_zudilin(0)


def test_pole_set_n1():
    spectrum = dict(pole_spectrum(build_zudilin(1)))
    assert sorted(spectrum) == list(range(2, 36))


def test_pole_multiplicities_match_cover_oracle():
    for n in (1, 2):
        spectrum = dict(pole_spectrum(build_zudilin(n)))
        for m in range(1, 36 * n + 2):
            expected = cover_count_oracle(n, m)
            if n % 2 == 0 and 2 * m == 37 * n:
                expected -= 1  # the linear prefactor vanishes at t = -37n/2
            assert spectrum.get(m, 0) == expected, (n, m)


def test_pole_extremes_n1():
    spectrum = dict(pole_spectrum(build_zudilin(1)))
    assert max(spectrum.values()) == 10
    # all ten intervals [(12-j), (25+j)] cover exactly [11, 26]
    assert [m for m, mult in spectrum.items() if mult == 10] == list(range(11, 27))
    assert spectrum[2] == 1  # only j = 10 reaches down to 2


def test_pole_spectrum_generic():
    f = FactoredRationalFunction((1, 0), (), (RisingBlock(1, 2, 1),))
    assert pole_spectrum(f) == [(1, 1), (2, 1)]


def test_non_integer_pole_rejected():
    with pytest.raises(DomainError):
        RisingBlock(Fraction(1, 2), 2, 1)


def test_partial_fractions_toy_telescoping():
    f = FactoredRationalFunction((1, 0), (), (RisingBlock(1, 2, 1),))
    p = partial_fractions(f)
    assert p.terms == {(1, 1): Fraction(1), (2, 1): Fraction(-1)}


def test_partial_fractions_double_pole():
    f = FactoredRationalFunction((1, 0), (), (RisingBlock(1, 1, 2),))
    p = partial_fractions(f)
    assert p.terms == {(1, 2): Fraction(1)}


def test_partial_fractions_rejects_improper():
    f = FactoredRationalFunction((0, 1), (RisingBlock(1, 2, 1),), (RisingBlock(5, 2, 1),))
    with pytest.raises(DomainError):
        partial_fractions(f)


def test_partial_fractions_scalar_included():
    f = FactoredRationalFunction(
        (1, 0), (), (RisingBlock(1, 2, 1),), scalar=Fraction(3, 7)
    )
    p = partial_fractions(f)
    assert p.terms[(1, 1)] == Fraction(3, 7)


def test_reconstruction_zudilin_n1(pipeline1):
    report = reconstruction_check(pipeline1.factored, pipeline1.expansion)
    assert report["ok"]
    assert len(report["points"]) == pipeline1.expansion.max_order + 2


def test_reconstruction_at_explicit_random_rationals(pipeline1):
    rng = random.Random(991)
    for _ in range(3):
        t = rng.randint(-50, 50) + Fraction(1, rng.choice([3, 7]))
        assert pipeline1.factored.evaluate(t) == pipeline1.expansion.evaluate(t)


def test_second_derivative_trivia():
    p = PartialFractionExpansion({(1, 1): Fraction(1)})
    assert second_derivative(p).terms == {(1, 3): Fraction(2)}
    assert second_derivative(PartialFractionExpansion({})).terms == {}
    p = PartialFractionExpansion({(2, 10): Fraction(3, 5)})
    assert second_derivative(p).terms == {(2, 12): Fraction(66)}  # 110 * 3/5


def test_second_derivative_order_shift(pipeline1):
    before = pipeline1.expansion
    after = pipeline1.differentiated
    assert after.min_order == before.min_order + 2
    assert after.max_order == before.max_order + 2
    for (m, j), a in before.terms.items():
        assert after.terms[(m, j + 2)] == j * (j + 1) * a


def test_sum_over_k_trivia():
    form = sum_over_k(PartialFractionExpansion({(0, 3): Fraction(1)}))
    assert form.ell0 == 0 and form.coefficients == {3: Fraction(1)}
    form = sum_over_k(PartialFractionExpansion({(2, 3): Fraction(2)}))
    assert form.ell0 == Fraction(-9, 4) and form.coefficients == {3: Fraction(2)}
    form = sum_over_k(
        PartialFractionExpansion({(1, 2): Fraction(1), (0, 2): Fraction(-1)})
    )
    assert form.coefficients == {2: Fraction(0)} and form.ell0 == -1


def test_sum_over_k_rejects_divergent():
    with pytest.raises(DomainError):
        sum_over_k(PartialFractionExpansion({(1, 1): Fraction(1)}))
    with pytest.raises(DomainError):
        sum_over_k(PartialFractionExpansion({(-2, 3): Fraction(1)}))


def test_zudilin_form_structure(pipeline1):
    form = pipeline1.form
    assert form.nonzero_arguments() == [5, 7, 9, 11]
    for s in (3, 4, 6, 8, 10, 12):
        assert form.coefficients[s] == 0
    assert form.ell0 != 0


def test_zudilin_form_structure_n2(pipeline2):
    form = pipeline2.form
    assert form.nonzero_arguments() == [5, 7, 9, 11]
    for s in (3, 4, 6, 8, 10, 12):
        assert form.coefficients[s] == 0


def test_budget_cap():
    with pytest.raises(BudgetError):
        zudilin_linear_form(3)
    with pytest.raises(DomainError):
        zudilin_linear_form(0)


def test_coefficient_height_report(pipeline1, pipeline2):
    # soft coefficient-size check: 513 bits per unit n, with documented
    # slack 60 for the o(n) term at desk scale
    for pipe in (pipeline1, pipeline2):
        assert pipe.form.log2_height() / pipe.n <= 513 + 60


def test_well_poised_reflection(pipeline1):
    report = reflection_check(pipeline1.factored, 37)
    assert report == {"symmetric": True, "sign": -1}
    report2 = reflection_check(build_zudilin(2), 74)
    assert report2 == {"symmetric": True, "sign": -1}


def test_reflection_detects_asymmetric():
    f = FactoredRationalFunction((1, 0), (), (RisingBlock(1, 2, 1),))
    assert reflection_check(f, 7)["symmetric"] is False


def test_evaluate_numeric_trivia(table400):
    zero = ZetaLinearForm(0, Fraction(0), {})
    assert evaluate_numeric(zero, table400).scaled == 0
    simple = ZetaLinearForm(0, Fraction(-1), {5: Fraction(1)})
    got = evaluate_numeric(simple, table400)
    assert got.to_decimal().startswith("0.0369277551")


def test_evaluate_numeric_budget(pipeline1):
    assert required_digits(1) == 314
    small = ZetaTable([5, 7, 9, 11], 60)
    with pytest.raises(BudgetError):
        evaluate_numeric(pipeline1.form, small)


def test_direct_sum_toy_closed_form():
    # second derivative of 1/(t+1) summed over k: 2 (zeta(3) - 1)
    toy = second_derivative(PartialFractionExpansion({(1, 1): Fraction(1)}))
    got = sum_expansion_numeric(toy, 20)
    want = 2 * (zeta_high_precision(3, 30).to_fraction() - 1)
    assert abs(got.to_fraction() - want) < Fraction(1, 10**19)


def test_direct_sum_two_cutoffs(pipeline1):
    a = direct_sum(1, 140, k_cut=300, expansion=pipeline1.differentiated)
    b = direct_sum(1, 140, k_cut=600, expansion=pipeline1.differentiated)
    assert abs(a.to_fraction() - b.to_fraction()) < Fraction(1, 10**138)


def test_oracle_pair_tight(pipeline1, table400):
    value = evaluate_numeric(pipeline1.form, table400)
    direct = direct_sum(1, 160, expansion=pipeline1.differentiated)
    # far tighter than the acceptance tolerance: ~50 significant digits
    assert abs(value.to_fraction() - direct.to_fraction()) < Fraction(1, 10**155)


def test_common_denominator():
    integral = ZetaLinearForm(0, Fraction(2), {5: Fraction(3)})
    assert common_denominator(integral)[0] == 1
    mixed = ZetaLinearForm(0, Fraction(1, 6), {5: Fraction(1, 4)})
    assert common_denominator(mixed)[0] == 12


def test_common_denominator_clears_zudilin(pipeline1):
    d, report = common_denominator(pipeline1.form)
    assert (d * pipeline1.form.ell0).denominator == 1
    for coeff in pipeline1.form.coefficients.values():
        assert (d * coeff).denominator == 1
    assert report["log_denominator_over_n"] > 0


def test_json_document_shape(pipeline1):
    doc = pipeline1.form.to_json_dict({"vanishing_ok": True})
    assert list(doc) == ["n", "ell0", "coeffs", "denominator", "log2_height", "checks"]
    assert doc["coeffs"]["3"] == "0"
    assert doc["coeffs"]["5"].lstrip("-").split("/")[0].isdigit()
    assert fraction_str(Fraction(-3, 7)) == "-3/7"
    assert fraction_str(Fraction(4)) == "4"
