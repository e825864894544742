"""Root finding, polishing, and the closed-form constants."""

import cmath
import math

import pytest

from cubicmonodromy.numeric import Poly1, constants, newton_polish, roots_of


def _sorted_by_value(zs):
    return sorted(zs, key=lambda z: (round(z.real, 9), round(z.imag, 9)))


def test_poly_eval_and_derivative():
    p = Poly1((1.0, -2.0, 0.0, 3.0))  # 3z^3 - 2z + 1
    z = 0.7 - 0.2j
    h = 1e-7
    numeric = (p(z + h) - p(z - h)) / (2 * h)
    assert abs(numeric - p.deriv()(z)) < 1e-6


def test_roots_of_factored_quartic():
    # (z-1)(z-2)(z-3)(z-4) = z^4 - 10z^3 + 35z^2 - 50z + 24
    p = Poly1((24.0, -50.0, 35.0, -10.0, 1.0))
    roots = _sorted_by_value(roots_of(p))
    for got, want in zip(roots, (1.0, 2.0, 3.0, 4.0)):
        assert abs(got - want) < 1e-10


def test_roots_of_complex_pairs():
    # z^4 + 1: the primitive eighth roots of unity
    p = Poly1((1.0, 0.0, 0.0, 0.0, 1.0))
    roots = roots_of(p)
    assert len(roots) == 4
    for z in roots:
        assert abs(z ** 4 + 1.0) < 1e-10


def test_roots_residuals_small():
    p = Poly1((-1.0, 12.0 * 0.3, -6.0, -4.0 * 0.3, 3.0))
    for z in roots_of(p):
        assert abs(p(z)) < 1e-9


def test_extended_precision_agrees_with_double():
    p = Poly1((24.0, -50.0, 35.0, -10.0, 1.0))
    dd = _sorted_by_value(roots_of(p))
    mp = _sorted_by_value(roots_of(p, precision="extended"))
    for x, y in zip(dd, mp):
        assert abs(x - y) < 1e-12


def test_roots_of_rejects_unknown_precision():
    p = Poly1((1.0, 0.0, 1.0))
    with pytest.raises(ValueError):
        roots_of(p, precision="quad")


def test_newton_polish_recovers_root():
    p = Poly1((24.0, -50.0, 35.0, -10.0, 1.0))
    z = newton_polish(p, 3.0 + 1e-3)
    assert abs(z - 3.0) < 1e-12


def test_newton_polish_extended():
    p = Poly1((24.0, -50.0, 35.0, -10.0, 1.0))
    z = newton_polish(p, 2.0 + 1e-3, precision="extended")
    assert abs(z - 2.0) < 1e-12


def test_constants_closed_forms():
    c = constants()
    s3 = math.sqrt(3.0)
    assert abs(c.a ** 2 - (3.0 + 2.0 * s3) / 3.0) < 1e-14
    assert abs(c.b ** 2 - c.a * 2.0 * s3 / 3.0) < 1e-14
    assert abs(c.mu - (s3 + 1.0)) < 1e-14
    assert abs(c.eta ** 3 + (c.mu ** 3 - 1.0)) < 1e-12
    assert abs(c.omega - cmath.exp(2j * cmath.pi / 3.0)) < 1e-14
    assert abs(c.omega ** 3 - 1.0) < 1e-14
