"""Radial profile builders: metadata, algebra, declared bounds."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wavenorm.profiles import (
    RadialProfile,
    bump,
    combine,
    fold_power,
    gaussian,
    monomial_gauss,
    power_sing,
    scaled,
    truncated,
    zero_profile,
)


def test_gaussian_values_and_metadata():
    g = gaussian(2.0)
    assert g(0.5) == pytest.approx(math.exp(-0.5), rel=1e-15)
    assert g.leading_order == 0.0
    assert g.leading_coeff == 1.0
    assert g.support_radius is None
    assert not g.is_zero


def test_monomial_gauss_vanishing_order():
    p = monomial_gauss(2, 1.0)
    assert p(0.3) == pytest.approx(0.09 * math.exp(-0.09), rel=1e-15)
    assert p.leading_order == 2.0
    with pytest.raises(ValueError):
        monomial_gauss(-1, 1.0)


def test_bump_support_masking():
    b = bump(1.5)
    assert b.support_radius == 1.5
    assert b(2.0) == 0.0
    assert b(1.5) == 1.0  # indicator of the closed interval (0, radius]
    assert b(0.0) == 1.0
    assert b(1.0) == 1.0


def test_power_sing_origin_behavior():
    p = power_sing(0.4, 1.0)
    assert p.leading_order == -0.4
    assert p(0.01) == pytest.approx(0.01 ** -0.4, rel=1e-15)
    assert p(1.5) == 0.0
    with pytest.raises(ValueError):
        power_sing(0.0, 1.0)


def test_zero_profile_flag():
    z = zero_profile()
    assert z.is_zero
    assert z(3.0) == 0.0
    assert scaled(gaussian(1.0), 0.0).is_zero


def test_builders_pass_self_validation():
    for p in (gaussian(0.5), monomial_gauss(3, 2.0), bump(2.0),
              power_sing(0.7, 0.5), zero_profile(),
              fold_power(gaussian(1.0), 1.5),
              combine([(2.0, gaussian(1.0)), (1.0, bump(1.0))])):
        assert p.validate() == []


def test_truncated_masks_and_keeps_origin_data():
    tg = truncated(gaussian(1.0), 2.0)
    assert tg.support_radius == 2.0
    assert tg(3.0) == 0.0
    assert tg(1.0) == gaussian(1.0)(1.0)
    assert tg.leading_order == 0.0
    # truncating a tighter support is a no-op on the radius
    tb = truncated(bump(1.0), 5.0)
    assert tb.support_radius == 1.0


def test_fold_power_shifts_orders():
    f = fold_power(monomial_gauss(1, 1.0), 0.5)
    assert f.leading_order == 1.5
    assert f(0.7) == pytest.approx(0.7 ** 0.5 * monomial_gauss(1, 1.0)(0.7),
                                   rel=1e-14)
    with pytest.raises(ValueError):
        fold_power(gaussian(1.0), -0.5)


def test_combine_picks_minimal_order_and_sums_coeffs():
    c = combine([(0.5, gaussian(1.0)), (2.0, bump(1.0))])
    assert c.leading_order == 0.0
    assert c.leading_coeff == pytest.approx(2.5)
    assert c.support_radius is None  # one unsupported term
    s = combine([(1.0, bump(1.0)), (1.0, bump(2.0))])
    assert s.support_radius == 2.0


def test_combine_rejects_exact_cancellation():
    with pytest.raises(ValueError):
        combine([(1.0, gaussian(1.0)), (-1.0, gaussian(2.0))])


def test_combine_drops_zero_terms():
    c = combine([(1.0, gaussian(1.0)), (5.0, zero_profile())])
    assert c(1.2) == gaussian(1.0)(1.2)
    assert combine([(0.0, gaussian(1.0))]).is_zero


def test_array_evaluation_matches_scalar():
    p = combine([(1.0, gaussian(1.0)), (3.0, bump(1.0))])
    rs = np.array([0.1, 0.9, 1.1, 4.0])
    vals = p(rs)
    assert vals.shape == rs.shape
    for r, v in zip(rs, vals):
        assert v == p(float(r))


@given(r=st.floats(1e-3, 60.0), a=st.floats(0.3, 4.0), m=st.integers(0, 3))
@settings(max_examples=150, deadline=None)
def test_declared_decay_bound_holds(r, a, m):
    p = monomial_gauss(m, a)
    amp, rate = p.decay_bound
    assert abs(p(r)) <= amp * (1.0 + r) ** (-rate) * (1.0 + 1e-12)


@given(c1=st.floats(-3.0, 3.0), c2=st.floats(-3.0, 3.0), r=st.floats(0.0, 5.0))
@settings(max_examples=150, deadline=None)
def test_combine_is_pointwise_linear(c1, c2, r):
    if abs(c1 + c2) < 1e-9:
        return  # exact-cancellation guard is tested separately
    c = combine([(c1, gaussian(1.0)), (c2, bump(1.0))])
    want = c1 * gaussian(1.0)(r) + c2 * bump(1.0)(r)
    assert c(r) == pytest.approx(want, rel=1e-13, abs=1e-13)


@given(power=st.floats(0.0, 3.0), r=st.floats(1e-3, 10.0))
@settings(max_examples=100, deadline=None)
def test_fold_power_is_pointwise_multiplication(power, r):
    f = fold_power(gaussian(1.0), power)
    assert f(r) == pytest.approx(r ** power * math.exp(-r * r), rel=1e-13)


def test_metadata_constraints_enforced():
    with pytest.raises(ValueError):
        RadialProfile(func=lambda r: r, leading_order=1.0, leading_coeff=1.0,
                      remainder_exponent=0.5, decay_bound=(1.0, 0.0))
    with pytest.raises(ValueError):
        RadialProfile(func=lambda r: r, leading_order=0.0, leading_coeff=1.0,
                      remainder_exponent=1.0, decay_bound=(-1.0, 0.0))
