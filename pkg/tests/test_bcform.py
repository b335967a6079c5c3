from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from flagchow.bcform import (
    FiltrationSpec,
    ambient_value,
    bc_chern,
    bc_flat_reference,
    bc_powersum_filtration,
    bc_powersum_step,
    bc_symmetric,
    bc_total_chern,
    harmonic,
    split_value,
)
from flagchow.chow import ArithmeticClass, classes_equivalent, include_form
from flagchow.forms import FormMatrix, InvariantForm, chern_forms, curvature_quotient, ddc, omega, zero
from flagchow.perm import FlagType
from flagchow.poly import SparsePolynomial, symmetric_generators, variable


def O(i, j, n=3):
    return omega(i, j, n)


def full(n):
    return FiltrationSpec.from_flag(FlagType.complete(n))


def sym(kind, k, n):
    return symmetric_generators(kind, k, n)


def test_harmonic_numbers():
    assert harmonic(0) == 0
    assert [harmonic(k) - harmonic(k - 1) for k in range(1, 6)] == [Fraction(1, k) for k in range(1, 6)]


def test_filtration_spec_validation():
    with pytest.raises(ValueError):
        FiltrationSpec(3, (0, 2, 2))
    assert full(3).quotient_ranks() == [1, 1, 1]


def test_powersum_step_trivial_cases():
    k = curvature_quotient(0, 2, 3)
    assert bc_powersum_step(1, 1, k, k).is_zero()
    diag = FormMatrix(((O(1, 3), zero(3)), (zero(3), O(2, 3))), (1, 2))
    for j in (1, 2, 3, 4):
        assert bc_powersum_step(j, 1, diag, diag).is_zero()


def test_powersum_filtration_examples():
    assert bc_powersum_filtration(full(3), 1).is_zero()
    v = bc_powersum_filtration(full(3), 2)
    assert (zero(3) - v).scale(Fraction(1, 2)) == -(O(1, 2) + O(1, 3) + O(2, 3))
    # at n = 2 the value consistent with c2~ = -O12 is +2 O12
    assert bc_powersum_filtration(full(2), 2) == omega(1, 2, 2).scale(2)


def test_second_step_on_sub_flag():
    assert bc_chern(FiltrationSpec(3, (0, 1, 2)), 2) == -O(1, 2)


def test_total_chern_examples():
    expected = InvariantForm.parse("- O12 - O13 - O23 - O12^O13 - O12^O23 + 3 * O13^O23", 3)
    assert bc_total_chern(full(3)) == expected
    assert bc_total_chern(full(2)) == -omega(1, 2, 2)
    assert bc_total_chern(FiltrationSpec(3, (0, 3))).is_zero()


def test_top_step_values():
    spec = FiltrationSpec(3, (0, 2, 3))
    assert bc_total_chern(spec) == -O(1, 3) - O(2, 3) + (O(1, 3) * O(2, 3)).scale(3)


def test_symmetric_examples():
    assert bc_symmetric(full(3), sym("elementary", 1, 3)).is_zero()
    assert bc_symmetric(full(3), sym("elementary", 2, 3)) == -(O(1, 2) + O(1, 3) + O(2, 3))
    e1 = sym("elementary", 1, 3)
    assert bc_symmetric(full(3), e1 * e1).is_zero()
    with pytest.raises(ValueError):
        bc_symmetric(full(3), variable(1))


def test_flat_reference_examples():
    n = 3
    cs = chern_forms(curvature_quotient(0, 2, n))
    cq = chern_forms(curvature_quotient(2, 3, n))
    assert bc_flat_reference(2, 1, 1, cs, cq).is_zero()
    assert bc_flat_reference(2, 1, 2, cs, cq) == cs[0]
    assert bc_flat_reference(2, 1, 3, cs, cq) == (O(1, 3) * O(2, 3)).scale(3)


def test_flat_reference_matches_integral_formula():
    for n in (2, 3, 4):
        for j in range(1, n):
            cs = chern_forms(curvature_quotient(0, j, n))
            cq = chern_forms(curvature_quotient(j, n, n))
            for k in range(1, 5):
                assert bc_chern(FiltrationSpec(n, (0, j, n)), k) == bc_flat_reference(j, n - j, k, cs, cq)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("phi", [("elementary", 2), ("elementary", 3), ("power_sum", 2), ("power_sum", 3)])
def test_ddc_identity(n, phi):
    spec = full(n)
    f = sym(phi[0], phi[1], n)
    assert ddc(bc_symmetric(spec, f)) == split_value(spec, f) - ambient_value(spec, f)


@pytest.mark.parametrize("breaks", [(0, 1, 3), (0, 2, 3), (1, 2, 3), (0, 2, 4), (1, 2, 4, 5)])
def test_ddc_identity_partial_filtrations(breaks):
    n = breaks[-1]
    spec = FiltrationSpec(n, breaks)
    for kind, k in (("elementary", 2), ("power_sum", 2), ("power_sum", 3)):
        f = sym(kind, k, spec.rank)
        assert ddc(bc_symmetric(spec, f)) == split_value(spec, f) - ambient_value(spec, f)


def test_routes_agree_as_classes():
    for n in (2, 3):
        r = FlagType.complete(n)
        for k in range(1, n + 1):
            a = bc_chern(full(n), k)
            b = bc_symmetric(full(n), sym("elementary", k, n))
            assert ddc(a - b).is_zero()
            assert classes_equivalent(include_form(a, r), include_form(b, r))
    assert bc_chern(full(3), 2) == bc_symmetric(full(3), sym("elementary", 2, 3))


def test_chern_truncates_beyond_rank():
    assert bc_chern(full(3), 4).is_zero()


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_bott_chern_is_linear(coefs):
    spec = full(3)
    basis = [sym("power_sum", k, 3) for k in (2, 3)] + [sym("elementary", 2, 3) * sym("elementary", 1, 3)]
    phi = SparsePolynomial()
    expected = zero(3)
    for c, b in zip(coefs, basis):
        phi = phi + b.scale(c)
        expected = expected + bc_symmetric(spec, b).scale(c)
    assert bc_symmetric(spec, phi) == expected


def test_coefficients_are_rational():
    for n in (2, 3):
        for _, c in bc_total_chern(full(n)).items():
            assert isinstance(c, Fraction)
