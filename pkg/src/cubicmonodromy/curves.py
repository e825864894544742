"""Plane cubic curves: the pencil of interest, Hesse forms, and inflection data.

A cubic form is stored as 10 complex coefficients in the fixed monomial order

    x^3, x^2 y, x^2 z, x y^2, x y z, x z^2, y^3, y^2 z, y z^2, z^3.

Inflection points of the two families that matter (the y^2 z = cubic pencil
and the Hesse normal forms) are computed from closed-form reductions; a
resultant-based routine covers arbitrary smooth cubics and doubles as an
independent cross-check in the tests.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCurve, SingularParameter, SingularPoint
from .numeric import Poly1, TOL_MATCH, roots_of

MONOMIALS = (
    (3, 0, 0), (2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 1, 1),
    (1, 0, 2), (0, 3, 0), (0, 2, 1), (0, 1, 2), (0, 0, 3),
)
_MONOMIAL_INDEX = {m: i for i, m in enumerate(MONOMIALS)}

QUAD_MONOMIALS = ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))

_REL_ZERO = 1e-9


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for (i1, j1, k1), c1 in p.items():
        for (i2, j2, k2), c2 in q.items():
            key = (i1 + i2, j1 + j2, k1 + k2)
            out[key] = out.get(key, 0j) + c1 * c2
    return out


def _poly_diff(p: dict, axis: int) -> dict:
    out: dict = {}
    for mono, c in p.items():
        if mono[axis] == 0:
            continue
        new = list(mono)
        new[axis] -= 1
        out[tuple(new)] = out.get(tuple(new), 0j) + c * mono[axis]
    return out


@dataclass(frozen=True, eq=False)
class QuadForm:
    """Quadratic form in x, y, z; coefficients follow QUAD_MONOMIALS."""

    coeffs: np.ndarray

    def __call__(self, p: np.ndarray) -> complex:
        x, y, z = p
        vals = (x * x, x * y, x * z, y * y, y * z, z * z)
        return complex(sum(c * v for c, v in zip(self.coeffs, vals)))


@dataclass(frozen=True, eq=False)
class CubicForm:
    """Homogeneous cubic in x, y, z; coefficients follow MONOMIALS."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=complex)
        if arr.shape != (10,):
            raise ValueError("cubic form needs exactly 10 coefficients")
        if not np.all(np.isfinite(arr.view(float))):
            raise ValueError("non-finite coefficient")
        object.__setattr__(self, "coeffs", arr)

    def __call__(self, p: np.ndarray) -> complex:
        x, y, z = p
        total = 0j
        for (i, j, k), c in zip(MONOMIALS, self.coeffs):
            if c != 0:
                total += c * x ** i * y ** j * z ** k
        return complex(total)

    def as_dict(self) -> dict:
        return {m: complex(c) for m, c in zip(MONOMIALS, self.coeffs) if c != 0}

    def scale(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def compose(self, m: np.ndarray) -> "CubicForm":
        """The form p -> f(m @ p), expanded back into monomial coefficients."""
        m = np.asarray(m, dtype=complex)
        rows = [
            {(1, 0, 0): m[i, 0], (0, 1, 0): m[i, 1], (0, 0, 1): m[i, 2]}
            for i in range(3)
        ]
        total: dict = {}
        for (i, j, k), c in self.as_dict().items():
            term = {(0, 0, 0): c}
            for row, power in zip(rows, (i, j, k)):
                for _ in range(power):
                    term = _poly_mul(term, row)
            for mono, val in term.items():
                total[mono] = total.get(mono, 0j) + val
        # every monomial here has degree 3, so the dict folds onto MONOMIALS
        out = np.zeros(10, dtype=complex)
        for mono, val in total.items():
            out[_MONOMIAL_INDEX[mono]] += val
        return CubicForm(out)


def family_lambda(lam: complex, tol: float = TOL_MATCH) -> CubicForm:
    """The pencil y^2 z - (x - z)(x + z)(x - lam z).

    Expanded: y^2 z - x^3 + lam x^2 z + x z^2 - lam z^3.  The parameter values
    lam = +-1 give a nodal curve and are rejected.
    """
    lam = complex(lam)
    if abs(lam - 1.0) < tol or abs(lam + 1.0) < tol:
        raise SingularParameter(f"lambda = {lam} is on the discriminant")
    out = np.zeros(10, dtype=complex)
    out[_MONOMIAL_INDEX[(3, 0, 0)]] = -1.0
    out[_MONOMIAL_INDEX[(2, 0, 1)]] = lam
    out[_MONOMIAL_INDEX[(1, 0, 2)]] = 1.0
    out[_MONOMIAL_INDEX[(0, 2, 1)]] = 1.0
    out[_MONOMIAL_INDEX[(0, 0, 3)]] = -lam
    return CubicForm(out)


def hesse_form(mu: complex, tol: float = TOL_MATCH) -> CubicForm:
    """x^3 + y^3 + z^3 - 3 mu x y z; smooth whenever mu^3 != 1."""
    mu = complex(mu)
    if abs(mu ** 3 - 1.0) < tol:
        raise SingularParameter(f"mu = {mu} gives a singular Hesse cubic")
    out = np.zeros(10, dtype=complex)
    out[_MONOMIAL_INDEX[(3, 0, 0)]] = 1.0
    out[_MONOMIAL_INDEX[(0, 3, 0)]] = 1.0
    out[_MONOMIAL_INDEX[(0, 0, 3)]] = 1.0
    out[_MONOMIAL_INDEX[(1, 1, 1)]] = -3.0 * mu
    return CubicForm(out)


def gradient(f: CubicForm) -> tuple[QuadForm, QuadForm, QuadForm]:
    parts = []
    d = f.as_dict()
    for axis in range(3):
        dd = _poly_diff(d, axis)
        coeffs = np.zeros(6, dtype=complex)
        for idx, mono in enumerate(QUAD_MONOMIALS):
            coeffs[idx] = dd.get(mono, 0j)
        parts.append(QuadForm(coeffs))
    return tuple(parts)


def hessian_det_form(f: CubicForm) -> CubicForm:
    """Determinant of the matrix of second partials, as a cubic form."""
    d = f.as_dict()
    second = [[_poly_diff(_poly_diff(d, i), j) for j in range(3)] for i in range(3)]
    total: dict = {}
    for perm, sign in (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                       ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1)):
        term = {(0, 0, 0): complex(sign)}
        for row, col in enumerate(perm):
            term = _poly_mul(term, second[row][col])
        for mono, val in term.items():
            total[mono] = total.get(mono, 0j) + val
    out = np.zeros(10, dtype=complex)
    for mono, val in total.items():
        if abs(val) > 0:
            out[_MONOMIAL_INDEX[mono]] += val
    return CubicForm(out)


@dataclass(frozen=True, eq=False)
class ProjPoint2:
    """Point of P^2, stored with its preferred affine normalization.

    The last coordinate that is meaningfully nonzero, checking z then y then
    x, is scaled to 1.  This makes the nine inflection points of the curves
    at hand directly comparable as arrays.
    """

    coords: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.coords, dtype=complex)
        if v.shape != (3,):
            raise ValueError("projective point needs 3 coordinates")
        big = float(np.max(np.abs(v)))
        if big == 0.0 or not np.all(np.isfinite(v.view(float))):
            raise ValueError("invalid homogeneous coordinates")
        for idx in (2, 1, 0):
            if abs(v[idx]) > _REL_ZERO * big:
                v = v / v[idx]
                break
        object.__setattr__(self, "coords", v)

    @property
    def x(self) -> complex:
        return complex(self.coords[0])

    @property
    def y(self) -> complex:
        return complex(self.coords[1])

    @property
    def z(self) -> complex:
        return complex(self.coords[2])

    def unit(self) -> np.ndarray:
        return self.coords / np.linalg.norm(self.coords)

    def distance(self, other: "ProjPoint2") -> float:
        """Chordal distance between the underlying projective points."""
        u, v = self.unit(), other.unit()
        overlap = min(1.0, abs(np.vdot(u, v)))
        return math.sqrt(max(0.0, 1.0 - overlap * overlap))

    def is_base_point(self, tol: float = 1e-8) -> bool:
        return (abs(self.coords[2]) < tol and abs(self.coords[0]) < tol
                and abs(self.coords[1] - 1.0) < tol)


@dataclass(frozen=True, eq=False)
class PlaneLine:
    """Line of P^2 given by a covector, normalized to unit norm, phase 0."""

    covector: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.covector, dtype=complex)
        if v.shape != (3,):
            raise ValueError("line covector needs 3 entries")
        object.__setattr__(self, "covector", phase_normalize(v))

    def __call__(self, p: ProjPoint2 | np.ndarray) -> complex:
        coords = p.coords if isinstance(p, ProjPoint2) else np.asarray(p, dtype=complex)
        return complex(self.covector @ coords)


def phase_normalize(v: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Scale to unit norm with the first significant entry positive real."""
    v = np.asarray(v, dtype=complex)
    norm = np.linalg.norm(v)
    if norm == 0.0:
        raise ValueError("zero covector")
    v = v / norm
    for entry in v:
        if abs(entry) > tol:
            v = v * (abs(entry) / entry)
            break
    return v


def family_parameter(f: CubicForm, tol: float = 1e-9) -> complex | None:
    """Recover lam when f is a scalar multiple of the pencil member; else None."""
    c = f.coeffs
    ref = c[_MONOMIAL_INDEX[(0, 2, 1)]]
    if abs(ref) < tol * f.scale():
        return None
    c = c / ref
    lam = c[_MONOMIAL_INDEX[(2, 0, 1)]]
    want = np.zeros(10, dtype=complex)
    want[_MONOMIAL_INDEX[(3, 0, 0)]] = -1.0
    want[_MONOMIAL_INDEX[(2, 0, 1)]] = lam
    want[_MONOMIAL_INDEX[(1, 0, 2)]] = 1.0
    want[_MONOMIAL_INDEX[(0, 2, 1)]] = 1.0
    want[_MONOMIAL_INDEX[(0, 0, 3)]] = -lam
    if np.max(np.abs(c - want)) < 1e-8:
        return complex(lam)
    return None


def hesse_parameter(f: CubicForm, tol: float = 1e-9) -> complex | None:
    """Recover mu when f is a scalar multiple of a Hesse form; else None."""
    c = f.coeffs
    ref = c[_MONOMIAL_INDEX[(3, 0, 0)]]
    if abs(ref) < tol * f.scale():
        return None
    c = c / ref
    mu = -c[_MONOMIAL_INDEX[(1, 1, 1)]] / 3.0
    want = np.zeros(10, dtype=complex)
    want[_MONOMIAL_INDEX[(3, 0, 0)]] = 1.0
    want[_MONOMIAL_INDEX[(0, 3, 0)]] = 1.0
    want[_MONOMIAL_INDEX[(0, 0, 3)]] = 1.0
    want[_MONOMIAL_INDEX[(1, 1, 1)]] = -3.0 * mu
    if np.max(np.abs(c - want)) < 1e-8:
        return complex(mu)
    return None


def flex_quartic(lam: complex) -> Poly1:
    """Quartic whose roots are the affine x-coordinates of the inflections.

    For the pencil member at lam the non-base inflection points are
    [alpha : +-y : 1] with alpha a root of

        3 x^4 - 4 lam x^3 - 6 x^2 + 12 lam x - (1 + 4 lam^2).
    """
    lam = complex(lam)
    return Poly1((-(1.0 + 4.0 * lam * lam), 12.0 * lam, -6.0, -4.0 * lam, 3.0))


def flex_height_squared(lam: complex, alpha: complex) -> complex:
    """y^2 over the inflection with x-coordinate alpha (z = 1 chart)."""
    return alpha ** 3 - lam * alpha ** 2 - alpha + lam


def tangent_covector_family(lam: complex, alpha: complex, y: complex) -> np.ndarray:
    """Tangent line at [alpha : y : 1] for the pencil member, unnormalized."""
    return np.array([
        -3.0 * alpha * alpha + 2.0 * lam * alpha + 1.0,
        2.0 * y,
        # z-partial with y^2 eliminated via the curve equation
        alpha ** 3 + alpha - 2.0 * lam,
    ], dtype=complex)


def inflection_points(f: CubicForm, tol: float = 1e-8) -> list[ProjPoint2]:
    """The nine inflection points, deterministically ordered.

    Ordering: the base point [0:1:0] first when the curve passes through it
    with a vertical-tangent flex there, then ascending (Re y, Im y, Re x,
    Im x) on the normalized coordinates.
    """
    lam = family_parameter(f)
    if lam is not None:
        pts = _inflections_family(lam)
    else:
        mu = hesse_parameter(f)
        if mu is not None:
            pts = _inflections_hesse(mu)
        else:
            pts = _inflections_resultant(f, tol)
    if len(pts) != 9:
        raise DegenerateCurve(f"expected 9 inflection points, got {len(pts)}")
    hess = hessian_det_form(f)
    fs, hs = f.scale(), hess.scale()
    for p in pts:
        u = p.unit()
        if abs(f(u)) > tol * fs or abs(hess(u)) > tol * hs:
            raise DegenerateCurve("inflection residual above tolerance")
    for i in range(9):
        for j in range(i + 1, 9):
            if pts[i].distance(pts[j]) < 10.0 * TOL_MATCH:
                raise DegenerateCurve("inflection points collide")
    return _sort_points(pts)


def _sort_points(pts: list[ProjPoint2]) -> list[ProjPoint2]:
    base = [p for p in pts if p.is_base_point()]
    rest = [p for p in pts if not p.is_base_point()]
    rest.sort(key=lambda p: (p.y.real, p.y.imag, p.x.real, p.x.imag))
    return base + rest


def _inflections_family(lam: complex) -> list[ProjPoint2]:
    if abs(lam - 1.0) < TOL_MATCH or abs(lam + 1.0) < TOL_MATCH:
        raise SingularParameter(f"lambda = {lam} is on the discriminant")
    pts = [ProjPoint2(np.array([0.0, 1.0, 0.0], dtype=complex))]
    for alpha in roots_of(flex_quartic(lam)):
        y = cmath.sqrt(flex_height_squared(lam, alpha))
        pts.append(ProjPoint2(np.array([alpha, y, 1.0], dtype=complex)))
        pts.append(ProjPoint2(np.array([alpha, -y, 1.0], dtype=complex)))
    return pts


def _inflections_hesse(mu: complex) -> list[ProjPoint2]:
    w = cmath.exp(2j * cmath.pi / 3.0)
    pts = []
    for k in range(3):
        pts.append(ProjPoint2(np.array([1.0, -(w ** k), 0.0], dtype=complex)))
        pts.append(ProjPoint2(np.array([-(w ** k), 0.0, 1.0], dtype=complex)))
        pts.append(ProjPoint2(np.array([0.0, 1.0, -(w ** k)], dtype=complex)))
    return pts


def _binary_cubic_roots(coeffs: list[complex], tol: float) -> list[np.ndarray]:
    """Projective roots [x : y] of sum coeffs[k] x^k y^(3-k)."""
    scale = max(abs(c) for c in coeffs)
    if scale == 0.0:
        return []
    poly = Poly1(tuple(coeffs))
    out = []
    trimmed = poly.trimmed(1e-10)
    drop = poly.degree - trimmed.degree
    for r in roots_of(trimmed):
        out.append(np.array([r, 1.0], dtype=complex))
    for _ in range(drop):
        out.append(np.array([1.0, 0.0], dtype=complex))
    return out


def _inflections_resultant(f: CubicForm, tol: float) -> list[ProjPoint2]:
    """Arbitrary-cubic route: eliminate y between f and its Hessian form.

    The Sylvester determinant in y is evaluated at interpolation nodes and
    refit as a polynomial in x (z = 1 chart); points at z = 0 are recovered
    from the two binary cubics.  Slower than the closed forms, used as the
    fallback and for cross-checks.
    """
    hess = hessian_det_form(f)
    fd, hd = f.as_dict(), hess.as_dict()

    def y_coeff_polys(d: dict) -> list[Poly1]:
        # coefficient of y^j as a polynomial in x, at z = 1
        cols: dict[int, dict[int, complex]] = {}
        for (i, j, _k), c in d.items():
            cols.setdefault(j, {})[i] = cols.setdefault(j, {}).get(i, 0j) + c
        out = []
        top = max(cols) if cols else 0
        for j in range(top + 1):
            entry = cols.get(j, {0: 0j})
            deg = max(entry)
            out.append(Poly1(tuple(entry.get(i, 0j) for i in range(deg + 1))))
        return out

    fy = y_coeff_polys(fd)
    hy = y_coeff_polys(hd)
    m, n = len(fy) - 1, len(hy) - 1
    size = m + n

    def sylvester_det(x: complex) -> complex:
        fv = [p(x) for p in fy]
        hv = [p(x) for p in hy]
        mat = np.zeros((size, size), dtype=complex)
        for r in range(n):
            mat[r, r:r + m + 1] = list(reversed(fv))
        for r in range(m):
            mat[n + r, r:r + n + 1] = list(reversed(hv))
        return complex(np.linalg.det(mat))

    deg_bound = 3 * size
    nodes = [2.3 * cmath.exp(2j * cmath.pi * (k + 0.31) / (deg_bound + 1))
             for k in range(deg_bound + 1)]
    vals = np.array([sylvester_det(x) for x in nodes])
    vander = np.vander(np.array(nodes), deg_bound + 1, increasing=True)
    coeffs = np.linalg.solve(vander, vals)
    res_poly = Poly1(tuple(coeffs)).trimmed(1e-9)

    pts: list[ProjPoint2] = []

    def push(candidate: np.ndarray):
        p = ProjPoint2(candidate)
        for q in pts:
            if p.distance(q) < 1e-6:
                return
        pts.append(p)

    fs, hs = f.scale(), hess.scale()
    for x in roots_of(res_poly, tol=1e-12):
        ycs = [p(x) for p in fy]
        for root in _binary_cubic_roots(ycs, tol):
            if abs(root[1]) < 1e-9:
                continue
            y = root[0] / root[1]
            cand = np.array([x, y, 1.0], dtype=complex)
            u = cand / np.linalg.norm(cand)
            if abs(f(u)) < tol * fs and abs(hess(u)) < tol * hs:
                push(cand)

    f_inf = [fd.get((k, 3 - k, 0), 0j) for k in range(4)]
    h_inf = [hd.get((k, 3 - k, 0), 0j) for k in range(4)]
    for rf in _binary_cubic_roots(f_inf, tol):
        for rh in _binary_cubic_roots(h_inf, tol):
            uf = rf / np.linalg.norm(rf)
            uh = rh / np.linalg.norm(rh)
            if 1.0 - min(1.0, abs(np.vdot(uf, uh))) < 1e-9:
                push(np.array([rf[0], rf[1], 0.0], dtype=complex))
    return pts


def tangent_line(f: CubicForm, p: ProjPoint2, tol: float = 1e-8) -> PlaneLine:
    """Tangent line to V(f) at p; p must be a smooth point of the curve."""
    gx, gy, gz = gradient(f)
    u = p.unit()
    vec = np.array([gx(u), gy(u), gz(u)], dtype=complex)
    if np.linalg.norm(vec) < tol * f.scale():
        raise SingularPoint("gradient vanishes at the requested point")
    return PlaneLine(vec)
