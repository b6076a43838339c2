import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from slopegeo import measures, surfaces
from slopegeo.errors import ConvexityViolation, DomainError, RangeError

from _oracles import brute_force_bh_ht

B_GRID = [round(0.01 * k, 2) for k in range(1, 50)]


def test_T_values():
    assert measures.T_function(0.0, 0.0) == 1.0
    assert measures.T_function(0.2, 0.3) == pytest.approx((1 - 0.6 + 0.18) / 0.8 ** 4)
    with pytest.raises(RangeError):
        measures.T_function(0.4, 0.3)
    with pytest.raises(RangeError):
        measures.T_function(0.0, 0.5)


def test_T_from_phi_chain():
    # T = phi [(phi - s phi') + (b^2 - s^2) phi''] in dimension two
    for b in (0.1, 0.3, 0.45):
        for s in np.linspace(-b, b, 9):
            phi = 1 / (1 - s)
            val = phi * ((phi - s * phi ** 2) + (b * b - s * s) * 2 * phi ** 3)
            assert measures.T_function(s, b) == pytest.approx(val, rel=1e-13)


@pytest.mark.parametrize("b", B_GRID[::6])
def test_split_integrals(b):
    w = 1 - b * b
    i1 = integrate.quad(lambda t: (1 - 2 * b * math.cos(t)) / (1 - b * math.cos(t)) ** 3, 0, math.pi,
                        epsabs=1e-13)[0]
    i2 = integrate.quad(lambda t: 2 * (b * math.sin(t)) ** 2 / (1 - b * math.cos(t)) ** 4, 0, math.pi,
                        epsabs=1e-13)[0]
    assert i1 == pytest.approx(math.pi * (2 - 5 * b * b) / (2 * w ** 2.5), rel=1e-10)
    assert i2 == pytest.approx(math.pi * b * b / w ** 2.5, rel=1e-10)
    assert (i1 + i2) / math.pi == pytest.approx(measures.volume_coefficients_closed(b).g, rel=1e-10)


@pytest.mark.parametrize("b", B_GRID)
def test_closed_vs_quadrature(b):
    vc = measures.volume_coefficients(b)
    assert abs(vc.f - vc.f_quad) <= 1e-8
    assert abs(vc.g - vc.g_quad) <= 1e-8
    assert vc.h == pytest.approx(vc.g / vc.f)


@pytest.mark.parametrize("b", [0.05, 0.3, 0.45])
def test_brute_force_definitions(b):
    bh, ht = brute_force_bh_ht(b)
    vc = measures.volume_coefficients_closed(b)
    assert bh == pytest.approx(vc.f, rel=1e-9)
    assert ht == pytest.approx(vc.g, rel=1e-5)


def test_coefficient_limits():
    assert measures.volume_coefficients_closed(0.0).g == 1.0
    vc = measures.volume_coefficients_closed(0.5 - 1e-9)
    assert vc.f == pytest.approx(8 / 9, abs=1e-8)
    # true HT limit at b -> 1/2 is 20 sqrt3 / 27
    assert vc.g == pytest.approx(20 * math.sqrt(3) / 27, abs=1e-7)
    assert vc.h == pytest.approx(5 * math.sqrt(3) / 6, abs=1e-7)


def test_monotonicity():
    bs = np.linspace(0.001, 0.499, 500)
    f = np.array([measures.volume_coefficients_closed(b).f for b in bs])
    g = np.array([measures.volume_coefficients_closed(b).g for b in bs])
    h = g / f
    assert np.all(np.diff(f) < 0)
    assert np.all(np.diff(g) > 0)
    assert np.all(np.diff(h) > 0)


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-4, 0.4999))
def test_coefficient_ranges(b):
    vc = measures.volume_coefficients_closed(b)
    assert 8 / 9 < vc.f < 1
    assert 1 < vc.g < 20 * math.sqrt(3) / 27 + 1e-12
    assert vc.h > 1


def test_cylinder_like_area():
    # cone m = 2u: area element sqrt(5) * 2u du dv
    s = surfaces.gallery()["cone"]
    a = measures.area(s, (1.0, 2.0, 0.0, 2 * math.pi))
    assert a == pytest.approx(math.sqrt(5) * 3 * 2 * math.pi, rel=1e-12)
    b = 1 / math.sqrt(5)
    assert measures.area(s, (1.0, 2.0, 0.0, 2 * math.pi), "BH") == \
        pytest.approx(a * 2 / (2 + b * b), rel=1e-12)
    assert measures.area(s, (1.0, 2.0, 0.0, 2 * math.pi), "HT") == \
        pytest.approx(a * measures.volume_coefficients_closed(b).g, rel=1e-12)


def test_graph_area():
    s = surfaces.graph("plane", p=0.3, q=0.4)
    a = measures.area(s, (0, 2, 0, 1))
    assert a == pytest.approx(2 * math.sqrt(1.25), rel=1e-10)
    b2 = 0.25 / 1.25
    assert measures.area(s, (0, 2, 0, 1), "BH") == pytest.approx(a * 2 / (2 + b2), rel=1e-10)


def test_area_errors(gal):
    with pytest.raises(DomainError):
        measures.area(gal["revolution-sqrt"], (0.1, 2.0, 0, 1))
    with pytest.raises(ConvexityViolation):
        measures.area(surfaces.graph("plane", p=0.8), (0, 1, 0, 1), "BH")
    with pytest.raises(ValueError):
        measures.area(gal["cone"], (1, 2, 0, 1), "Lebesgue")
    assert measures.area(gal["cone"], (1, 1, 0, 1), "HT") == 0.0


def test_area_compare_report(rev_sqrt):
    rep = measures.area_compare(rev_sqrt, (1.0, 2.0, 0.0, 2 * math.pi))
    assert rep.area_BH < rep.area_alpha < rep.area_HT
    assert rep.verdicts["BH/alpha"] is True
    assert rep.verdicts["BH<HT<alpha"] is False
    js = rep.to_json()
    assert set(js["ratios"]) == {"BH/alpha", "HT/alpha", "HT/BH"}
    empty = measures.area_compare(rev_sqrt, (1.0, 1.0, 0.0, 1.0))
    assert empty.ratios["HT/BH"] is None and empty.all_verdicts
