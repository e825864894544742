"""Scalar numerics: polynomial roots, Newton polish, and the field constants.

All public routines are deterministic for a fixed input.  The root finder is
a simultaneous Aberth iteration started from deliberately non-symmetric
points, so families of roots with internal symmetry (pairs like +r/-r) cannot
trap the iteration on a symmetric configuration.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import mpmath

from .errors import NonConvergence

TOL_ROOT = 1e-10
TOL_MATCH = 1e-6
TOL_INC = 1e-8
TOL_LEAD = 1e-12

_MAX_ABERTH = 400
_MAX_NEWTON = 60
_EXTENDED_DPS = 50

PRECISIONS = ("double", "extended")


@dataclass(frozen=True)
class Poly1:
    """Univariate polynomial, coefficients ascending (coeffs[k] is the x^k term)."""

    coeffs: tuple[complex, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("empty coefficient list")
        for c in self.coeffs:
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise ValueError("non-finite coefficient")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def deriv(self) -> "Poly1":
        if len(self.coeffs) == 1:
            return Poly1((0j,))
        return Poly1(tuple(k * c for k, c in enumerate(self.coeffs) if k > 0))

    def trimmed(self, tol_lead: float = TOL_LEAD) -> "Poly1":
        """Drop leading coefficients that are negligible next to the largest one."""
        scale = max(abs(c) for c in self.coeffs)
        if scale == 0.0:
            raise ValueError("zero polynomial")
        cs = list(self.coeffs)
        while len(cs) > 1 and abs(cs[-1]) <= tol_lead * scale:
            cs.pop()
        return Poly1(tuple(cs))


def _initial_guesses(n: int, radius: float) -> list[complex]:
    # Spread around a circle with an irregular angular stagger so that no two
    # guesses are related by the symmetries (negation, conjugation) that the
    # target root sets tend to have.
    out = []
    for k in range(n):
        theta = 2.0 * math.pi * k / n + 0.4 + 0.11 * k * k / max(n, 1)
        out.append(radius * cmath.exp(1j * theta))
    return out


def roots_of(p: Poly1, tol: float = TOL_ROOT, precision: str = "double") -> list[complex]:
    """All complex roots of p, with multiplicity, sorted by (real, imag).

    Residual acceptance: |p(z_i)| / max|coeff| < tol for every root.  Raises
    NonConvergence if the Aberth iteration stalls before that.
    """
    if precision not in PRECISIONS:
        raise ValueError(f"unknown precision {precision!r}")
    q = p.trimmed()
    n = q.degree
    if n == 0:
        return []
    scale = max(abs(c) for c in q.coeffs)
    cs = [c / scale for c in q.coeffs]
    if precision == "extended":
        roots = _aberth_mp(cs, tol)
    else:
        roots = _aberth(cs, tol)
    return sorted(roots, key=lambda z: (z.real, z.imag))


def _aberth(cs: list[complex], tol: float) -> list[complex]:
    n = len(cs) - 1
    lead = cs[-1]
    radius = 1.0 + max(abs(c / lead) for c in cs[:-1]) if n > 0 else 1.0
    z = _initial_guesses(n, radius)
    dcs = [k * c for k, c in enumerate(cs) if k > 0]

    def val(x, coeffs):
        acc = 0j
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    for _ in range(_MAX_ABERTH):
        resid = 0.0
        moved = 0.0
        for i in range(n):
            pi = val(z[i], cs)
            resid = max(resid, abs(pi))
            dpi = val(z[i], dcs)
            if dpi == 0:
                z[i] += 1e-8 + 1e-8j
                moved = math.inf
                continue
            newton = pi / dpi
            s = 0j
            for j in range(n):
                if j != i:
                    dz = z[i] - z[j]
                    if dz == 0:
                        dz = 1e-12
                    s += 1.0 / dz
            denom = 1.0 - newton * s
            if denom == 0:
                step = newton
            else:
                step = newton / denom
            z[i] -= step
            moved = max(moved, abs(step))
        if resid < tol and moved < math.sqrt(tol):
            return z
    # final residual check: clustered multiple roots converge slowly in step
    # size but the residual test is what the contract promises
    if all(abs(val(zi, cs)) < tol for zi in z):
        return z
    raise NonConvergence(f"Aberth stalled after {_MAX_ABERTH} iterations")


def _aberth_mp(cs: list[complex], tol: float) -> list[complex]:
    with mpmath.workdps(_EXTENDED_DPS):
        mcs = [mpmath.mpc(c) for c in cs]
        n = len(mcs) - 1
        lead = mcs[-1]
        radius = 1 + max(abs(c / lead) for c in mcs[:-1]) if n > 0 else mpmath.mpf(1)
        z = [radius * mpmath.exp(1j * (2 * mpmath.pi * k / n + mpmath.mpf("0.4")
                                       + mpmath.mpf("0.11") * k * k / n))
             for k in range(n)]
        dcs = [k * c for k, c in enumerate(mcs) if k > 0]
        goal = mpmath.mpf(10) ** (-_EXTENDED_DPS + 10)

        def val(x, coeffs):
            acc = mpmath.mpc(0)
            for c in reversed(coeffs):
                acc = acc * x + c
            return acc

        for _ in range(_MAX_ABERTH):
            resid = mpmath.mpf(0)
            for i in range(n):
                pi = val(z[i], mcs)
                resid = max(resid, abs(pi))
                dpi = val(z[i], dcs)
                if dpi == 0:
                    z[i] += mpmath.mpc(goal, goal)
                    continue
                newton = pi / dpi
                s = mpmath.mpc(0)
                for j in range(n):
                    if j != i:
                        dz = z[i] - z[j]
                        s += 1 / dz if dz != 0 else 0
                denom = 1 - newton * s
                z[i] -= newton / denom if denom != 0 else newton
            if resid < min(goal, mpmath.mpf(tol)):
                break
        if not all(abs(val(zi, mcs)) < tol for zi in z):
            raise NonConvergence("extended-precision Aberth stalled")
        return [complex(zi) for zi in z]


def newton_polish(p: Poly1, z0: complex, tol: float = TOL_ROOT,
                  precision: str = "double") -> complex:
    """Newton iteration from z0; must beat tol or improve |p| a hundredfold."""
    if precision == "extended":
        return _newton_mp(p, z0, tol)
    q = p.trimmed()
    dq = q.deriv()
    scale = max(abs(c) for c in q.coeffs)
    z = z0
    start = abs(q(z0))
    for _ in range(_MAX_NEWTON):
        pz = q(z)
        if abs(pz) < tol * scale:
            return z
        dpz = dq(z)
        if dpz == 0:
            break
        z = z - pz / dpz
    pz = abs(q(z))
    if pz < tol * scale or (start > 0 and pz < 1e-2 * start):
        return z
    raise NonConvergence(f"Newton polish stalled at residual {pz:.3e}")


def _newton_mp(p: Poly1, z0: complex, tol: float) -> complex:
    with mpmath.workdps(_EXTENDED_DPS):
        cs = [mpmath.mpc(c) for c in p.trimmed().coeffs]
        dcs = [k * c for k, c in enumerate(cs) if k > 0]
        scale = max(abs(c) for c in cs)

        def val(x, coeffs):
            acc = mpmath.mpc(0)
            for c in reversed(coeffs):
                acc = acc * x + c
            return acc

        z = mpmath.mpc(z0)
        for _ in range(_MAX_NEWTON):
            pz = val(z, cs)
            if abs(pz) < mpmath.mpf(tol) * scale:
                return complex(z)
            dpz = val(z, dcs)
            if dpz == 0:
                break
            z = z - pz / dpz
        if abs(val(z, cs)) < mpmath.mpf(tol) * scale:
            return complex(z)
        raise NonConvergence("extended-precision Newton stalled")


@dataclass(frozen=True)
class Constants:
    """The handful of algebraic numbers the whole construction is built from."""

    a: float
    b: float
    mu: float
    eta: float
    omega: complex


def constants() -> Constants:
    """a, b, mu, eta, omega with their defining relations satisfied exactly.

    a^2 = (3 + 2*sqrt(3)) / 3      (positive root)
    b^2 = a * 2*sqrt(3) / 3        (positive root)
    mu  = sqrt(3) + 1
    eta = the real (negative) cube root of 1 - mu^3
    omega = exp(2*pi*i/3)
    """
    s3 = math.sqrt(3.0)
    a = math.sqrt((3.0 + 2.0 * s3) / 3.0)
    b = math.sqrt(a * 2.0 * s3 / 3.0)
    mu = s3 + 1.0
    eta = -((mu ** 3 - 1.0) ** (1.0 / 3.0))
    omega = cmath.exp(2j * cmath.pi / 3.0)
    return Constants(a=a, b=b, mu=mu, eta=eta, omega=omega)
