#!/usr/bin/env python3
"""
Test script for the characteristic polynomial and the critical speed.
"""

import os
import sys

import numpy as np
import pytest

# Add the src directory to the path so we can import the modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from fracfront.core.dispersion import (
    char_poly, char_poly_second_derivative, char_roots, critical_speed, minimizer,
)
from fracfront.models.dispersion import RootRegime
from fracfront.utils.exceptions import DomainError


def test_roots_at_c4():
    """alpha = 1/2, c = 4: V = lambda^2 - 2 sqrt(lambda) + 1."""
    print("🔍 Testing dispersion roots at c=4...")
    report = char_roots(0.5, 4.0, 1.0)
    assert report.regime == RootRegime.TWO_ROOTS.value
    assert len(report.roots) == 2
    assert report.lambda1 == pytest.approx(0.29560, abs=1e-5)
    assert report.lambda2 == pytest.approx(1.0, abs=1e-12)
    assert max(abs(r) for r in report.residuals) < 1e-12
    assert report.lambda1 < report.lambda_star < report.lambda2


def test_regimes_around_cstar():
    cstar = critical_speed(0.5, 1.0)
    assert 3.0 < cstar < 3.2
    assert char_roots(0.5, 3.0, 1.0).regime == RootRegime.NONE.value
    assert char_roots(0.5, 3.0, 1.0).roots == []
    assert len(char_roots(0.5, 3.2, 1.0).roots) == 2

    critical = char_roots(0.5, cstar, 1.0)
    assert critical.regime == RootRegime.CRITICAL.value
    assert critical.roots == [pytest.approx(minimizer(0.5, cstar))]
    assert abs(critical.v_at_lambda_star) < 1e-9
    assert critical.roots[0] == pytest.approx(0.57735, abs=1e-4)


def test_critical_speed_values():
    """c*_alpha tends to the classical 2 sqrt(f'(0)) as alpha -> 1."""
    assert critical_speed(1.0, 1.0) == pytest.approx(2.0, rel=1e-14)
    assert critical_speed(0.999, 1.0) == pytest.approx(2.0, abs=1e-2)
    assert critical_speed(0.9, 1.0) == pytest.approx(2.1483, abs=1e-3)
    assert critical_speed(1.0, 4.0) == pytest.approx(4.0, rel=1e-14)
    assert critical_speed(0.1, 0.5) == pytest.approx(0.0101, abs=1e-3)


def test_cstar_is_where_min_v_vanishes():
    for alpha in [0.2, 0.5, 0.8]:
        cstar = critical_speed(alpha, 1.0)
        assert abs(char_poly(minimizer(alpha, cstar), alpha, cstar, 1.0)) < 1e-12


def test_roots_against_sign_scan():
    """Root count matches the sign changes of V on a fine log grid."""
    lam = np.logspace(-6, 3, 200001)
    for alpha in [0.3, 0.6, 0.9]:
        cstar = critical_speed(alpha, 1.0)
        for c in [0.5 * cstar, 1.01 * cstar, 2.0 * cstar, 5.0 * cstar]:
            values = lam ** 2 - (c * lam) ** alpha + 1.0
            changes = int(np.count_nonzero(np.diff(np.sign(values)) != 0))
            report = char_roots(alpha, c, 1.0)
            assert len(report.roots) == changes, (alpha, c)
            for root in report.roots:
                assert abs(char_poly(root, alpha, c, 1.0)) < 1e-10


def test_convexity():
    for lam in [1e-3, 0.1, 1.0, 10.0]:
        assert char_poly_second_derivative(lam, 0.5, 4.0) > 2.0


def test_domain_errors():
    with pytest.raises(DomainError):
        char_roots(1.2, 4.0, 1.0)
    with pytest.raises(DomainError):
        char_roots(0.5, -1.0, 1.0)
    with pytest.raises(DomainError):
        char_roots(0.5, 4.0, 0.0)
    with pytest.raises(DomainError):
        char_poly(0.0, 0.5, 4.0, 1.0)


if __name__ == "__main__":
    test_roots_at_c4()
    test_regimes_around_cstar()
    test_critical_speed_values()
    test_cstar_is_where_min_v_vanishes()
    test_roots_against_sign_scan()
    test_convexity()
    test_domain_errors()
    print("✅ All dispersion tests passed")
