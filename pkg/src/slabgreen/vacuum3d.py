"""Free-space dyadic Green tensor and the three-dimensional vacuum decay rate.

The tensor solving [curl curl - (omega/c)^2] G = delta(r - r') 1 in vacuum is

    G_ij(r_a, r_b) = g0 [ (1 + i/(kR) - 1/(kR)^2) delta_ij
                          + (-1 - 3i/(kR) + 3/(kR)^2) u_i u_j ],

with R = |r_a - r_b|, u the unit separation, k = omega/c and the scalar
wave g0 = e^{ikR} / (4 pi R). This equals delta_ij g0 + (1/k^2) times the
Hessian of g0 in the separation variable; the real part diverges at
coincidence but the imaginary part has the finite limit (k/6pi) times the
identity, which sets the vacuum rate omega^3 |d|^2 / (3 pi hbar eps0 c^3).
"""

import math
from dataclasses import dataclass

import numpy as np

from .emission import EmissionParams
from .errors import DomainError


@dataclass(frozen=True, eq=False)
class DyadicGreen:
    """3x3 complex tensor evaluated between two points."""

    components: np.ndarray
    omega: float
    r_a: np.ndarray
    r_b: np.ndarray


def _separation(r_a, r_b):
    r_a = np.asarray(r_a, dtype=float)
    r_b = np.asarray(r_b, dtype=float)
    if r_a.shape != (3,) or r_b.shape != (3,):
        raise DomainError("positions must be 3-vectors")
    s = r_a - r_b
    return r_a, r_b, s, float(np.linalg.norm(s))


def scalar_green_g0(omega: float, r_a, r_b, c: float = 1.0) -> complex:
    """Scalar spherical wave e^{i(omega/c)R} / (4 pi R); singular at R = 0."""
    if omega < 0.0:
        raise DomainError("frequency must be >= 0")
    if not c > 0.0:
        raise DomainError("speed of light must be positive")
    _, _, _, dist = _separation(r_a, r_b)
    if dist == 0.0:
        raise DomainError("scalar Green function is singular at coincident points")
    return complex(np.exp(1j * (omega / c) * dist) / (4.0 * math.pi * dist))


def green_tensor_vacuum(omega: float, r_a, r_b, c: float = 1.0) -> DyadicGreen:
    """Full dyadic tensor between two distinct points."""
    if not omega > 0.0:
        raise DomainError("frequency must be positive")
    if not c > 0.0:
        raise DomainError("speed of light must be positive")
    va, vb, s, dist = _separation(r_a, r_b)
    if dist == 0.0:
        raise DomainError("tensor real part is singular at coincident points")
    kr = (omega / c) * dist
    u = s / dist
    g0 = np.exp(1j * kr) / (4.0 * math.pi * dist)
    diag = g0 * (1.0 + 1j / kr - 1.0 / kr**2)
    outer = g0 * (-1.0 - 3j / kr + 3.0 / kr**2)
    comps = diag * np.eye(3) + outer * np.outer(u, u)
    return DyadicGreen(components=comps, omega=omega, r_a=va, r_b=vb)


def im_green_coincident(omega: float, c: float = 1.0) -> np.ndarray:
    """Finite coincident-point limit of Im G: (omega / 6 pi c) times the identity."""
    if not omega > 0.0:
        raise DomainError("frequency must be positive")
    if not c > 0.0:
        raise DomainError("speed of light must be positive")
    return (omega / (6.0 * math.pi * c)) * np.eye(3)


def vacuum_decay_3d(params: EmissionParams) -> float:
    """Vacuum rate omega0^3 |d|^2 / (3 pi hbar eps0 c^3).

    Computed both in closed form and by contracting the dipole with the
    coincident Im G limit; the two routes must agree to rounding.
    """
    w, d = params.omega0, params.dipole_moment
    closed = w**3 * d**2 / (3.0 * math.pi * params.hbar * params.epsilon0 * params.c**3)
    dipole = np.array([0.0, 0.0, d])
    contraction = dipole @ im_green_coincident(w, params.c) @ dipole
    contracted = 2.0 * w**2 / (params.hbar * params.epsilon0 * params.c**2) * contraction
    if abs(contracted - closed) > 1e-12 * closed:
        raise RuntimeError("vacuum rate routes disagree beyond rounding; internal bug")
    return closed
