"""Closed-form densities for four random-triangle families.

Families
--------
pinned    A at the origin of a unit-intensity planar Poisson process,
          B its nearest point, C its second-nearest.  Side a = |BC|,
          b = |AC|, c = |AB|, so c < b and a < 2b almost surely.
staked    A at the origin, B fixed at (1, 0), C the Poisson point nearest
          to the origin, reflected into the upper half-plane.
anchored  A = (-1/2, 0), B = (1/2, 0) fixed, C the Poisson point nearest
          to the segment midpoint (the origin), reflected upward.
uniform   Base of length 1 with two base angles drawn uniformly on
          (0, pi) and folded so they form a valid pair ("uT_*" tags).

Conventions
-----------
Angle alpha sits at vertex A (opposite side a), beta at B, gamma at C.
For the staked family the marginal of alpha is uniform on (0, pi) while
beta stays small, which pins down which angle enters the exponential
factor of the joint density.

Every evaluator accepts scalars or ndarrays (broadcasting), returns 0.0
outside the open support, and returns math.inf at boundary points where
the density genuinely diverges (collinear side triples, the unit point of
the uT side/ratio/max densities).  Only ``pdf_pair_ac`` integrates
internally; everything else is closed-form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .numerics import IntegralResult, QuadratureSpec, erfc, integrate_1d

__all__ = [
    "CATALOG",
    "DensityKind",
    "QuadratureError",
    "kinds",
    "pdf",
]

_PI = math.pi


class QuadratureError(RuntimeError):
    """Internal quadrature failed to converge; carries the best estimate."""

    def __init__(self, message: str, estimate: float, error: float):
        super().__init__(f"{message} (estimate {estimate!r}, error bound {error!r})")
        self.estimate = estimate
        self.error = error


def _broadcast(*args):
    arrs = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in args))
    return [np.atleast_1d(a) for a in arrs], arrs[0].ndim == 0


def _finish(out: np.ndarray, scalar: bool):
    return float(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# pinned family: sides
# ---------------------------------------------------------------------------

def pdf_pinned_sides_joint(x, y, z):
    """Joint density of (a, b, c) for pinned triangles.

    8*pi*x*y*z * exp(-pi y^2) / sqrt(D) on {y-z < x < y+z, y > z > 0},
    where D is the Heron product; infinite on the collinear boundary
    x = y +- z, zero elsewhere.
    """
    (X, Y, Z), scalar = _broadcast(x, y, z)
    out = np.zeros_like(X)
    closure = (Z > 0.0) & (Y > Z)
    inside = closure & (X > Y - Z) & (X < Y + Z)
    if inside.any():
        a, b, c = X[inside], Y[inside], Z[inside]
        delta = (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c)
        out[inside] = 8.0 * _PI * a * b * c * np.exp(-_PI * b * b) / np.sqrt(delta)
    edge = closure & ((X == Y - Z) | (X == Y + Z))
    out[edge] = math.inf
    return _finish(out, scalar)


def pdf_pinned_a(x):
    """Density of the side joining the two Poisson points: pi*x*erfc(sqrt(pi)x/2)."""
    (X,), scalar = _broadcast(x)
    out = np.zeros_like(X)
    m = X > 0.0
    out[m] = _PI * X[m] * erfc(0.5 * math.sqrt(_PI) * X[m])
    return _finish(out, scalar)


def pdf_pinned_b(x):
    """Density of the second-nearest distance: 2*pi^2*x^3*exp(-pi x^2)."""
    (X,), scalar = _broadcast(x)
    out = np.zeros_like(X)
    m = X > 0.0
    out[m] = 2.0 * _PI * _PI * X[m] ** 3 * np.exp(-_PI * X[m] ** 2)
    return _finish(out, scalar)


def pdf_pinned_c(x):
    """Density of the nearest distance: 2*pi*x*exp(-pi x^2)."""
    (X,), scalar = _broadcast(x)
    out = np.zeros_like(X)
    m = X > 0.0
    out[m] = 2.0 * _PI * X[m] * np.exp(-_PI * X[m] ** 2)
    return _finish(out, scalar)


# ---------------------------------------------------------------------------
# pinned family: angles
# ---------------------------------------------------------------------------

def pdf_pinned_angles_joint(x, y):
    """Joint density of (alpha, beta): (2/pi) sin(x) sin(x+y) / sin(y)^3
    on {0 < x < pi, (pi-x)/2 < y < pi-x}."""
    (X, Y), scalar = _broadcast(x, y)
    out = np.zeros_like(X)
    m = (X > 0.0) & (X < _PI) & (Y > 0.5 * (_PI - X)) & (Y < _PI - X)
    if m.any():
        out[m] = (2.0 / _PI) * np.sin(X[m]) * np.sin(X[m] + Y[m]) / np.sin(Y[m]) ** 3
    return _finish(out, scalar)


def pdf_pinned_alpha(x):
    """The angle at the origin is uniform on (0, pi)."""
    (X,), scalar = _broadcast(x)
    out = np.where((X > 0.0) & (X < _PI), 1.0 / _PI, 0.0)
    return _finish(out, scalar)


# Taylor coefficients of the beta density about 0 (even powers 0,2,4,6,8) and
# about pi (in t = pi - x).  The closed form subtracts two O(1/x^2) terms
# near both endpoints, so direct evaluation loses precision there; these
# series are exact limits, validated against high-precision evaluation in
# the tests.
_BETA_NEAR_0 = np.array([5.0 / 3.0, -2.0 / 15.0, -2.0 / 63.0, -4.0 / 675.0, -2.0 / 2079.0]) / _PI
_BETA_NEAR_PI = np.array([1.0 / 3.0, 2.0 / 15.0, 2.0 / 63.0, 4.0 / 675.0, 2.0 / 2079.0]) / _PI
_BETA_WINDOW = 0.05


def _even_poly(coeffs: np.ndarray, t: np.ndarray) -> np.ndarray:
    q = t * t
    acc = np.zeros_like(t)
    for c in coeffs[::-1]:
        acc = acc * q + c
    return acc


def pdf_pinned_beta(x):
    """Density of the angle at the nearest point; two trigonometric branches
    meeting at pi/2 with value 1/pi."""
    (X,), scalar = _broadcast(x)
    out = np.zeros_like(X)

    lo = (X >= _BETA_WINDOW) & (X < 0.5 * _PI)
    if lo.any():
        t = X[lo]
        s, c = np.sin(t), np.cos(t)
        out[lo] = (0.5 / _PI + (1.0 - 3.0 * c * c) / (2.0 * _PI * s * s)
                   + t * c / (_PI * s ** 3))
    hi = (X > 0.5 * _PI) & (X <= _PI - _BETA_WINDOW)
    if hi.any():
        t = X[hi]
        s, c = np.sin(t), np.cos(t)
        out[hi] = 1.0 / (_PI * s * s) + (_PI - t) * c / (_PI * s ** 3)
    out[X == 0.5 * _PI] = 1.0 / _PI
    near0 = (X > 0.0) & (X < _BETA_WINDOW)
    out[near0] = _even_poly(_BETA_NEAR_0, X[near0])
    nearpi = (X > _PI - _BETA_WINDOW) & (X < _PI)
    out[nearpi] = _even_poly(_BETA_NEAR_PI, _PI - X[nearpi])
    return _finish(out, scalar)


def pdf_pinned_gamma(x):
    """Density of the angle at the second-nearest point: (4/pi) cos(x)^2 on
    (0, pi/2); this angle is never obtuse."""
    (X,), scalar = _broadcast(x)
    out = np.zeros_like(X)
    m = (X > 0.0) & (X < 0.5 * _PI)
    out[m] = (4.0 / _PI) * np.cos(X[m]) ** 2
    return _finish(out, scalar)


# ---------------------------------------------------------------------------
# pinned family: side ratios
# ---------------------------------------------------------------------------

def pdf_ratio_a_over_b(x):
    """(2x/pi) arccos(x/2) on (0, 2)."""
    (X,), scalar = _broadcast(x)
    out = np.zeros_like(X)
    m = (X > 0.0) & (X < 2.0)
    out[m] = (2.0 * X[m] / _PI) * np.arccos(0.5 * X[m])
    return _finish(out, scalar)


def pdf_ratio_b_over_a(x):
    """1/x^3 - (2/(pi x^3)) arcsin(1/(2x)) on (1/2, inf)."""
    (X,), scalar = _broadcast(x)
    out = np.zeros_like(X)
    m = X > 0.5
    if m.any():
        t = X[m]
        out[m] = (1.0 - (2.0 / _PI) * np.arcsin(0.5 / t)) / t ** 3
    return _finish(out, scalar)


def pdf_ratio_b_over_c(x):
    """2/x^3 on (1, inf)."""
    (X,), scalar = _broadcast(x)
    out = np.zeros_like(X)
    m = X > 1.0
    out[m] = 2.0 / X[m] ** 3
    return _finish(out, scalar)


def pdf_ratio_c_over_b(x):
    """2x on (0, 1)."""
    (X,), scalar = _broadcast(x)
    out = np.where((X > 0.0) & (X < 1.0), 2.0 * X, 0.0)
    return _finish(out, scalar)


# Taylor coefficients about the removable point x = 1, where both two-branch
# ratio formulas reduce to 0/0 and the direct expressions lose ~ (x-1)^-3
# digits to cancellation.  Frozen from an exact symbolic expansion and
# validated in the tests against high-precision evaluation.
_CA_NEAR_1 = np.array([
    0.2756644477108960247557, -0.6432170446587573910965, 1.108783667459381788462,
    -1.758126588733936868997, 2.743274508304639893622, -4.318337863567543164992,
    6.920274245085824375649, -11.31759486173941517493, 18.87998545151166452589,
])
_AC_NEAR_1 = np.array([
    0.2756644477108960247557, 0.09188814923696534158522, 0.006125876615797689439015,
    0.07963639600536996270719, -0.01336996880432035393436, 0.04918527917710578689791,
    -0.004235173956600871710924, 0.02722611829243417528451, 0.002756333452429092372779,
])
_RATIO_WINDOW = 0.03


def pdf_ratio_c_over_a(x):
    """Two algebraic branches split at x = 1/2; the singularity at x = 1 is
    removable (value ~0.27566)."""
    (X,), scalar = _broadcast(x)
    out = np.zeros_like(X)
    m1 = (X > 0.0) & (X < 0.5)
    if m1.any():
        t = X[m1]
        out[m1] = 2.0 * t * (1.0 + t * t) / (1.0 - t * t) ** 3
    m2 = (X >= 0.5) & (np.abs(X - 1.0) >= _RATIO_WINDOW)
    if m2.any():
        t = X[m2]
        t2 = t * t
        num = -(2.0 * (t2 - 1.0) * np.sqrt(4.0 * t2 - 1.0)
                - _PI * t2 * (1.0 + t2)
                + 6.0 * t2 * (1.0 + t2) * np.arcsin(0.5 / t))
        out[m2] = num / (_PI * t * (t2 - 1.0) ** 3)
    m3 = np.abs(X - 1.0) < _RATIO_WINDOW
    if m3.any():
        out[m3] = np.polyval(_CA_NEAR_1[::-1], X[m3] - 1.0)
    return _finish(out, scalar)


def pdf_ratio_a_over_c(x):
    """Mirror of pdf_ratio_c_over_a under x -> 1/x; branches split at x = 2."""
    (X,), scalar = _broadcast(x)
    out = np.zeros_like(X)
    m1 = (X > 0.0) & (X < 2.0) & (np.abs(X - 1.0) >= _RATIO_WINDOW)
    if m1.any():
        t = X[m1]
        t2 = t * t
        num = -t * (2.0 * t * (1.0 - t2) * np.sqrt(4.0 - t2)
                    - _PI * (1.0 + t2)
                    + 6.0 * (1.0 + t2) * np.arcsin(0.5 * t))
        out[m1] = num / (_PI * (1.0 - t2) ** 3)
    m2 = X >= 2.0
    if m2.any():
        t = X[m2]
        out[m2] = 2.0 * t * (1.0 + t * t) / (t * t - 1.0) ** 3
    m3 = np.abs(X - 1.0) < _RATIO_WINDOW
    if m3.any():
        out[m3] = np.polyval(_AC_NEAR_1[::-1], X[m3] - 1.0)
    return _finish(out, scalar)


# ---------------------------------------------------------------------------
# pinned family: side pairs
# ---------------------------------------------------------------------------

def pdf_pair_ab(x, y):
    """Joint density of (a, b): 4*pi*a*b*exp(-pi b^2) arccos(a/(2b)) on 0 < a < 2b."""
    (X, Y), scalar = _broadcast(x, y)
    out = np.zeros_like(X)
    m = (X > 0.0) & (Y > 0.0) & (X < 2.0 * Y)
    if m.any():
        a, b = X[m], Y[m]
        out[m] = 4.0 * _PI * a * b * np.exp(-_PI * b * b) * np.arccos(np.clip(0.5 * a / b, -1.0, 1.0))
    return _finish(out, scalar)


def pdf_pair_bc(x, y):
    """Joint density of (b, c): 4*pi^2*b*c*exp(-pi b^2) on 0 < c < b."""
    (X, Y), scalar = _broadcast(x, y)
    out = np.zeros_like(X)
    m = (Y > 0.0) & (X > Y)
    if m.any():
        b, c = X[m], Y[m]
        out[m] = 4.0 * _PI * _PI * b * c * np.exp(-_PI * b * b)
    return _finish(out, scalar)


def pdf_pair_ac(a: float, c: float, tol: float = 1e-10) -> float:
    """Joint density of (a, c), marginalizing b out of the trivariate density.

    f(a,c) = 8*pi*a*c * int b exp(-pi b^2) / sqrt(((a+c)^2-b^2)(b^2-(a-c)^2)) db
    over b from max(c, a-c) to a+c.  The integrand has inverse-square-root
    endpoint singularities, removed exactly by the sin^2 substitution.
    Raises QuadratureError if the requested tolerance cannot be met.
    """
    a = float(a)
    c = float(c)
    if not (a > 0.0 and c > 0.0):
        return 0.0
    lo = c if a < 2.0 * c else a - c
    hi = a + c
    lo2 = (a - c) ** 2
    hi2 = hi * hi

    def integrand(b: np.ndarray) -> np.ndarray:
        b2 = b * b
        rad = (hi2 - b2) * (b2 - lo2)
        out = np.zeros_like(b)
        ok = rad > 0.0
        out[ok] = b[ok] * np.exp(-_PI * b2[ok]) / np.sqrt(rad[ok])
        return out

    spec = QuadratureSpec(abs_tol=0.1 * tol, rel_tol=tol, singularity="both")
    r = integrate_1d(integrand, lo, hi, spec)
    value = 8.0 * _PI * a * c * r.value
    if not r.converged:
        raise QuadratureError(f"pair (a,c) density at ({a}, {c}) did not converge",
                              value, 8.0 * _PI * a * c * r.error)
    return value


# ---------------------------------------------------------------------------
# staked / anchored families
# ---------------------------------------------------------------------------

def pdf_staked_angles_joint(alpha, beta):
    """Joint density of (alpha, beta) for staked triangles on
    {alpha, beta > 0, alpha + beta < pi}.

    2 * exp(-pi sin(beta)^2 / sin(alpha+beta)^2) * sin(alpha) sin(beta)
      / sin(alpha+beta)^3.

    sin(beta)/sin(alpha+beta) is the distance from the origin to the random
    vertex, which is what the Poisson nearest-neighbor law suppresses; the
    alpha marginal is exactly uniform on (0, pi).
    """
    (A, B), scalar = _broadcast(alpha, beta)
    out = np.zeros_like(A)
    m = (A > 0.0) & (B > 0.0) & (A + B < _PI)
    if m.any():
        a, b = A[m], B[m]
        s = np.sin(a + b)
        out[m] = 2.0 * np.exp(-_PI * np.sin(b) ** 2 / (s * s)) * np.sin(a) * np.sin(b) / s ** 3
    return _finish(out, scalar)


def pdf_anchored_angles_joint(alpha, beta):
    """Joint density of (alpha, beta) for anchored triangles, symmetric in
    its arguments, on {alpha, beta > 0, alpha + beta < pi}.

    2 * exp(-(pi/4)(sin(alpha-beta)^2 + 4 sin(alpha)^2 sin(beta)^2)
            / sin(alpha+beta)^2) * sin(alpha) sin(beta) / sin(alpha+beta)^3.
    """
    (A, B), scalar = _broadcast(alpha, beta)
    out = np.zeros_like(A)
    m = (A > 0.0) & (B > 0.0) & (A + B < _PI)
    if m.any():
        a, b = A[m], B[m]
        s2 = np.sin(a + b) ** 2
        expo = (np.sin(a - b) ** 2 + 4.0 * np.sin(a) ** 2 * np.sin(b) ** 2) / s2
        out[m] = 2.0 * np.exp(-0.25 * _PI * expo) * np.sin(a) * np.sin(b) / (s2 * np.sin(a + b))
    return _finish(out, scalar)


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)
_MARGINAL_PANELS = 12
# Composite 16-point Gauss-Legendre abscissae/weights on (0, 1).
_T01 = ((np.arange(_MARGINAL_PANELS)[:, None] + 0.5 + 0.5 * _GL_NODES[None, :])
        / _MARGINAL_PANELS).ravel()
_W01 = np.tile(0.5 * _GL_WEIGHTS / _MARGINAL_PANELS, _MARGINAL_PANELS)


def _angle_marginal(joint: Callable, x, marginal_of_first: bool):
    """Integrate a bivariate angle density over its partner variable.

    As x -> 0 both joint kernels develop features of width ~x at the two
    ends of the partner's range (0, pi - x), so the range is split into a
    quadratically graded layer at each end plus an interior handled in the
    cot(partner) variable, where the remaining integrand is slowly varying.
    The layer width tracks x, keeping every piece resolved at any x.
    """
    (X,), scalar = _broadcast(x)
    out = np.zeros_like(X)
    m = (X > 0.0) & (X < _PI)
    if m.any():
        xs = X[m][:, None]
        span = _PI - xs
        cut = np.minimum(20.0 * xs, 0.25 * span)
        t = _T01[None, :]
        layer = cut * t * t
        layer_jac = 2.0 * cut * t
        cot_hi = 1.0 / np.tan(cut)
        cot_lo = 1.0 / np.tan(span - cut)
        cot_mid = cot_lo + (cot_hi - cot_lo) * t
        interior = np.arctan2(1.0, cot_mid)
        interior_jac = (cot_hi - cot_lo) / (1.0 + cot_mid * cot_mid)
        total = 0.0
        for partner, jac in ((layer, layer_jac), (span - layer, layer_jac),
                             (interior, interior_jac)):
            vals = joint(xs, partner) if marginal_of_first else joint(partner, xs)
            total = total + (vals * jac * _W01[None, :]).sum(axis=1)
        out[m] = total
    return _finish(out, scalar)


def pdf_staked_alpha(x):
    """Marginal of the staked origin angle: uniform, 1/pi on (0, pi)."""
    (X,), scalar = _broadcast(x)
    out = np.where((X > 0.0) & (X < _PI), 1.0 / _PI, 0.0)
    return _finish(out, scalar)


def pdf_staked_beta(x):
    """Marginal of the staked far-vertex angle (numeric marginalization)."""
    return _angle_marginal(pdf_staked_angles_joint, x, marginal_of_first=False)


def pdf_anchored_alpha(x):
    """Marginal of either anchored angle (the two are exchangeable)."""
    return _angle_marginal(pdf_anchored_angles_joint, x, marginal_of_first=True)


pdf_anchored_beta = pdf_anchored_alpha


# ---------------------------------------------------------------------------
# uniform-angle family ("uT")
# ---------------------------------------------------------------------------

def pdf_uT_sides_joint(x, y):
    """Joint density of the two non-base sides: 2/(pi^2 a b) on |1-a| < b < 1+a."""
    (X, Y), scalar = _broadcast(x, y)
    out = np.zeros_like(X)
    m = (X > 0.0) & (Y > np.abs(1.0 - X)) & (Y < 1.0 + X)
    if m.any():
        out[m] = 2.0 / (_PI * _PI * X[m] * Y[m])
    return _finish(out, scalar)


def pdf_uT_side_a(x):
    """Density of one non-base side: (2/pi^2)(log(1+x) - log|1-x|)/x on
    (0, inf), divergent (logarithmically) at x = 1."""
    (X,), scalar = _broadcast(x)
    out = np.zeros_like(X)
    m1 = (X > 0.0) & (X < 1.0)
    out[m1] = (4.0 / (_PI * _PI)) * np.arctanh(X[m1]) / X[m1]
    m2 = X > 1.0
    out[m2] = (4.0 / (_PI * _PI)) * np.arctanh(1.0 / X[m2]) / X[m2]
    out[X == 1.0] = math.inf
    return _finish(out, scalar)


# Within one uniform-angle triangle, the ratio of the two random sides has
# the same distribution as either single side (the sides' joint density is
# symmetric and scale-free enough for the ratio reduction to reproduce the
# marginal).
pdf_uT_ratio = pdf_uT_side_a


def pdf_uT_max(x):
    """Density of max(a, b): (4/pi^2)(log x - log|1-x|)/x on (1/2, inf),
    divergent at x = 1."""
    (X,), scalar = _broadcast(x)
    out = np.zeros_like(X)
    m1 = (X > 0.5) & (X < 1.0)
    out[m1] = (8.0 / (_PI * _PI)) * np.arctanh(2.0 * X[m1] - 1.0) / X[m1]
    m2 = X > 1.0
    out[m2] = (8.0 / (_PI * _PI)) * np.arctanh(1.0 / (2.0 * X[m2] - 1.0)) / X[m2]
    out[X == 1.0] = math.inf
    return _finish(out, scalar)


def pdf_uT_min(x):
    """Density of min(a, b); two logarithmic branches meeting at 1/2."""
    (X,), scalar = _broadcast(x)
    out = np.zeros_like(X)
    m1 = (X > 0.0) & (X <= 0.5)
    out[m1] = (8.0 / (_PI * _PI)) * np.arctanh(X[m1]) / X[m1]
    m2 = X > 0.5
    out[m2] = (4.0 / (_PI * _PI)) * np.log1p(1.0 / X[m2]) / X[m2]
    return _finish(out, scalar)


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DensityKind:
    """One catalog entry: evaluator plus enough support/tail metadata for
    normalization checks, distribution-function grids, and plotting."""

    tag: str
    arity: int
    pdf: Callable
    support: tuple = ()               # per-axis (lo, hi); hi may be inf
    singular_points: tuple = ()       # interior points where pdf = inf
    tail: str = "finite"              # 'finite' | 'gauss' | 'power'
    tail_power: float = 0.0           # |x|^-p tail exponent when tail == 'power'
    gauss_scale: float = 0.0          # exp(-scale x^2) bound when tail == 'gauss'
    gauss_degree: int = 0


_INF = math.inf

CATALOG: dict[str, DensityKind] = {}


def _register(kind: DensityKind) -> None:
    CATALOG[kind.tag] = kind


_register(DensityKind("pinned_sides_joint", 3, pdf_pinned_sides_joint,
                      ((0.0, _INF), (0.0, _INF), (0.0, _INF))))
_register(DensityKind("pinned_a", 1, pdf_pinned_a, ((0.0, _INF),),
                      tail="gauss", gauss_scale=_PI / 4.0, gauss_degree=1))
_register(DensityKind("pinned_b", 1, pdf_pinned_b, ((0.0, _INF),),
                      tail="gauss", gauss_scale=_PI, gauss_degree=3))
_register(DensityKind("pinned_c", 1, pdf_pinned_c, ((0.0, _INF),),
                      tail="gauss", gauss_scale=_PI, gauss_degree=1))
_register(DensityKind("pinned_angles_joint", 2, pdf_pinned_angles_joint,
                      ((0.0, _PI), (0.0, _PI))))
_register(DensityKind("pinned_alpha", 1, pdf_pinned_alpha, ((0.0, _PI),)))
_register(DensityKind("pinned_beta", 1, pdf_pinned_beta, ((0.0, _PI),)))
_register(DensityKind("pinned_gamma", 1, pdf_pinned_gamma, ((0.0, 0.5 * _PI),)))
_register(DensityKind("ratio_a_over_b", 1, pdf_ratio_a_over_b, ((0.0, 2.0),)))
_register(DensityKind("ratio_b_over_a", 1, pdf_ratio_b_over_a, ((0.5, _INF),),
                      tail="power", tail_power=3.0))
_register(DensityKind("ratio_b_over_c", 1, pdf_ratio_b_over_c, ((1.0, _INF),),
                      tail="power", tail_power=3.0))
_register(DensityKind("ratio_c_over_b", 1, pdf_ratio_c_over_b, ((0.0, 1.0),)))
_register(DensityKind("ratio_c_over_a", 1, pdf_ratio_c_over_a, ((0.0, _INF),),
                      tail="power", tail_power=3.0))
_register(DensityKind("ratio_a_over_c", 1, pdf_ratio_a_over_c, ((0.0, _INF),),
                      tail="power", tail_power=3.0))
_register(DensityKind("pair_ab", 2, pdf_pair_ab, ((0.0, _INF), (0.0, _INF))))
_register(DensityKind("pair_bc", 2, pdf_pair_bc, ((0.0, _INF), (0.0, _INF))))
_register(DensityKind("pair_ac_integral", 2, pdf_pair_ac, ((0.0, _INF), (0.0, _INF))))
_register(DensityKind("staked_angles_joint", 2, pdf_staked_angles_joint,
                      ((0.0, _PI), (0.0, _PI))))
_register(DensityKind("anchored_angles_joint", 2, pdf_anchored_angles_joint,
                      ((0.0, _PI), (0.0, _PI))))
_register(DensityKind("staked_alpha", 1, pdf_staked_alpha, ((0.0, _PI),)))
_register(DensityKind("staked_beta", 1, pdf_staked_beta, ((0.0, _PI),)))
_register(DensityKind("anchored_alpha", 1, pdf_anchored_alpha, ((0.0, _PI),)))
_register(DensityKind("anchored_beta", 1, pdf_anchored_beta, ((0.0, _PI),)))
_register(DensityKind("uT_sides_joint", 2, pdf_uT_sides_joint,
                      ((0.0, _INF), (0.0, _INF))))
_register(DensityKind("uT_side_a", 1, pdf_uT_side_a, ((0.0, _INF),),
                      singular_points=(1.0,), tail="power", tail_power=2.0))
_register(DensityKind("uT_ratio", 1, pdf_uT_ratio, ((0.0, _INF),),
                      singular_points=(1.0,), tail="power", tail_power=2.0))
_register(DensityKind("uT_max", 1, pdf_uT_max, ((0.5, _INF),),
                      singular_points=(1.0,), tail="power", tail_power=2.0))
_register(DensityKind("uT_min", 1, pdf_uT_min, ((0.0, _INF),),
                      tail="power", tail_power=2.0))


def kinds(arity: int | None = None) -> list[str]:
    """Catalog tags, optionally filtered by arity."""
    return [k for k, v in CATALOG.items() if arity is None or v.arity == arity]


def pdf(tag: str, *coords, **kwargs):
    """Evaluate a catalog density by tag."""
    try:
        kind = CATALOG[tag]
    except KeyError:
        raise KeyError(f"unknown density kind {tag!r}; see kinds()") from None
    return kind.pdf(*coords, **kwargs)
