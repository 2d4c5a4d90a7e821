"""Closed-form outgoing-wave Green function of an absorbing slab in one dimension.

The slab occupies [-l, l], has complex refractive index n, and sits in vacuum.
For a point source at x_s in the exterior, the Green function of

    [-d^2/dx^2 - k^2 eps(x)] G(x, x_s) = delta(x - x_s)

with outgoing waves at infinity splits into one closed-form branch per
observer region (left of the slab, inside, right). Formulas are written for a
source on the right; a source on the left is handled through the mirror
symmetry G(x, x_s) = G(-x, -x_s) of the centered slab.

The slab amplitudes are

    A = 4n e^{2iknl} / Y              transmission
    B = 2(n+1) e^{ik(n-1)l} / Y       interior, left-going
    C = 2(n-1) e^{ik(3n-1)l} / Y      interior, right-going
    D = (n^2-1)(e^{4iknl} - 1) / Y    reflection
    Y = (n+1)^2 - (n-1)^2 e^{4iknl}

and carry all the Fabry-Perot physics: |A|^2 + |D|^2 = 1 for a lossless slab,
< 1 with absorption.
"""

import cmath
import math
from dataclasses import dataclass

from .dielectric import DielectricModel, permittivity, refractive_index
from .errors import DomainError


@dataclass(frozen=True)
class SlabGeometry:
    """Slab spanning [-half_length, half_length]."""

    half_length: float

    def __post_init__(self):
        if not (self.half_length > 0.0 and math.isfinite(self.half_length)):
            raise DomainError("slab half length must be positive and finite")


@dataclass(frozen=True)
class SlabCoefficients:
    A: complex
    B: complex
    C: complex
    D: complex
    Y: complex


@dataclass(frozen=True)
class WaveContext:
    """One (geometry, medium, frequency) evaluation point with cached amplitudes."""

    omega: float
    k: float
    n: complex
    geometry: SlabGeometry
    coefficients: SlabCoefficients

    def __post_init__(self):
        if not (self.k > 0.0 and math.isfinite(self.k)):
            raise DomainError("wavenumber must be positive and finite")

    @property
    def epsilon(self) -> complex:
        return self.n * self.n


@dataclass(frozen=True)
class GreenEval:
    """Green-function value tagged with the regions of observer and source."""

    value: complex
    observer_region: str
    source_region: str


def region(x: float, half_length: float) -> str:
    """Classify a coordinate as 'left', 'inside' or 'right' of the slab."""
    if x < -half_length:
        return "left"
    if x > half_length:
        return "right"
    return "inside"


def coefficients(geometry: SlabGeometry, n: complex, k: float) -> SlabCoefficients:
    """Fabry-Perot amplitudes of the slab for a unit exterior wave.

    Requires Im n >= 0 so the interior exponential is bounded. The resonance
    denominator Y cannot vanish for an absorbing medium; the guard below only
    fires for contrived lossless edge cases and reports them instead of
    dividing by almost zero.
    """
    n = complex(n)
    if not k > 0.0:
        raise DomainError("wavenumber must be positive")
    if n.imag < 0.0:
        raise DomainError("refractive index must have Im n >= 0")
    l = geometry.half_length
    e4 = cmath.exp(4j * k * n * l)
    y = (n + 1) ** 2 - (n - 1) ** 2 * e4
    if abs(y) < 1e-12 * abs(n + 1) ** 2:
        raise DomainError("slab is degenerate: resonance denominator Y is numerically zero")
    return SlabCoefficients(
        A=4 * n * cmath.exp(2j * k * n * l) / y,
        B=2 * (n + 1) * cmath.exp(1j * k * (n - 1) * l) / y,
        C=2 * (n - 1) * cmath.exp(1j * k * (3 * n - 1) * l) / y,
        D=(n * n - 1) * (e4 - 1) / y,
        Y=y,
    )


def make_context(
    geometry: SlabGeometry, model: DielectricModel, omega: float, c: float = 1.0
) -> WaveContext:
    """Build a WaveContext from a dielectric model at one frequency."""
    if not c > 0.0:
        raise DomainError("speed of light must be positive")
    eps = permittivity(model, omega)
    n = refractive_index(eps)
    k = omega / c
    return WaveContext(omega=omega, k=k, n=n, geometry=geometry, coefficients=coefficients(geometry, n, k))


def context_from_index(geometry: SlabGeometry, n: complex, k: float) -> WaveContext:
    """Natural-units context (c = 1, omega = k) built directly from an index."""
    return WaveContext(omega=k, k=k, n=complex(n), geometry=geometry, coefficients=coefficients(geometry, n, k))


# Branch evaluators assume the source sits in the right exterior region.


def _g_left(x, x_s, ctx):
    co = ctx.coefficients
    k, l = ctx.k, ctx.geometry.half_length
    return (0.5j / k) * co.A * cmath.exp(-1j * k * (2 * l + x - x_s))


def _g_inside(x, x_s, ctx):
    co = ctx.coefficients
    k, n = ctx.k, ctx.n
    return (0.5j / k) * (
        co.B * cmath.exp(-1j * k * (n * x - x_s)) + co.C * cmath.exp(1j * k * (n * x + x_s))
    )


def _g_right(x, x_s, ctx):
    co = ctx.coefficients
    k, l = ctx.k, ctx.geometry.half_length
    return (0.5j / k) * (
        co.D * cmath.exp(-1j * k * (2 * l - x - x_s)) + cmath.exp(1j * k * abs(x - x_s))
    )


def _dg_left(x, x_s, ctx):
    co = ctx.coefficients
    k, l = ctx.k, ctx.geometry.half_length
    return 0.5 * co.A * cmath.exp(-1j * k * (2 * l + x - x_s))


def _dg_inside(x, x_s, ctx):
    co = ctx.coefficients
    k, n = ctx.k, ctx.n
    return (0.5 * n) * (
        co.B * cmath.exp(-1j * k * (n * x - x_s)) - co.C * cmath.exp(1j * k * (n * x + x_s))
    )


def _dg_right(x, x_s, ctx):
    co = ctx.coefficients
    k, l = ctx.k, ctx.geometry.half_length
    sign = 1.0 if x > x_s else -1.0
    return -0.5 * (
        co.D * cmath.exp(-1j * k * (2 * l - x - x_s)) + sign * cmath.exp(1j * k * abs(x - x_s))
    )


def _require_exterior_source(x_s, half_length):
    if abs(x_s) <= half_length:
        raise DomainError("source must lie strictly outside the slab")


def green(x: float, x_source: float, ctx: WaveContext) -> GreenEval:
    """Evaluate G(x, x_source) for an exterior source.

    The value is continuous everywhere, including at x = x_source where only
    the derivative jumps.
    """
    l = ctx.geometry.half_length
    _require_exterior_source(x_source, l)
    if x_source < 0:
        value = green(-x, -x_source, ctx).value
    else:
        obs = region(x, l)
        if obs == "left":
            value = _g_left(x, x_source, ctx)
        elif obs == "inside":
            value = _g_inside(x, x_source, ctx)
        else:
            value = _g_right(x, x_source, ctx)
    return GreenEval(value=value, observer_region=region(x, l), source_region=region(x_source, l))


def green_dx(x: float, x_source: float, ctx: WaveContext) -> complex:
    """Analytic observer derivative dG/dx; undefined exactly at the source."""
    l = ctx.geometry.half_length
    _require_exterior_source(x_source, l)
    if x == x_source:
        raise DomainError("derivative is discontinuous at the source position")
    if x_source < 0:
        return -green_dx(-x, -x_source, ctx)
    obs = region(x, l)
    if obs == "left":
        return _dg_left(x, x_source, ctx)
    if obs == "inside":
        return _dg_inside(x, x_source, ctx)
    return _dg_right(x, x_source, ctx)


def green_vacuum_1d(x: float, x_prime: float, k: float) -> complex:
    """Free-space Green function (i/2k) e^{ik|x - x'|}."""
    if not k > 0.0:
        raise DomainError("wavenumber must be positive")
    return (0.5j / k) * cmath.exp(1j * k * abs(x - x_prime))


def helmholtz_residual(x: float, x_source: float, ctx: WaveContext, h: float) -> float:
    """Second-order finite-difference residual of the defining equation at x.

    Returns |(2G(x) - G(x+h) - G(x-h))/h^2 - k^2 eps(x) G(x)|, which decays
    like h^2 wherever G is smooth. The stencil must stay clear of the source
    and of the interfaces, where G or its derivatives are not smooth.
    """
    if not h > 0.0:
        raise DomainError("step must be positive")
    l = ctx.geometry.half_length
    if min(abs(x - x_source), abs(x - l), abs(x + l)) < 2.0 * h:
        raise DomainError("stencil crosses the source or an interface")
    g0 = green(x, x_source, ctx).value
    gp = green(x + h, x_source, ctx).value
    gm = green(x - h, x_source, ctx).value
    eps_x = ctx.epsilon if region(x, l) == "inside" else 1.0 + 0.0j
    return abs((2.0 * g0 - gp - gm) / (h * h) - ctx.k * ctx.k * eps_x * g0)


def interface_mismatch(ctx: WaveContext, x_source: float) -> float:
    """Worst continuity defect of G and dG/dx across the two interfaces.

    Both one-sided limits come from the analytic branch formulas, so the
    result is a pure consistency check on the amplitudes A, B, C, D.
    """
    l = ctx.geometry.half_length
    if region(x_source, l) != "right":
        raise DomainError("source must lie in the right exterior region")
    return max(
        abs(_g_inside(l, x_source, ctx) - _g_right(l, x_source, ctx)),
        abs(_dg_inside(l, x_source, ctx) - _dg_right(l, x_source, ctx)),
        abs(_g_inside(-l, x_source, ctx) - _g_left(-l, x_source, ctx)),
        abs(_dg_inside(-l, x_source, ctx) - _dg_left(-l, x_source, ctx)),
    )
