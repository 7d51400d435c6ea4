"""Refractive-index models, group velocities, and collinear phase matching.

All frequencies are angular frequencies in rad/s and all lengths are metres.
Three model kinds are supported:

* ``constant`` -- n(w) = n0; parameters [n0].
* ``linear_in_omega`` -- n(w) = a + b*w; parameters [a, b] with b in seconds.
  Every derived quantity (group velocity, transit-time difference) then has
  a closed form, which makes this kind the work-horse for forced test cases.
* ``sellmeier`` -- the standard three-pole form in vacuum wavelength,
  n^2 = 1 + sum_i B_i L / (L - C_i) with L the squared wavelength in um^2;
  parameters [B1, B2, B3, C1, C2, C3], C_i in um^2.

Each kind carries an analytic frequency derivative, so group velocities never
rely on finite differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import bisect

from .constants import SPEED_OF_LIGHT as C_LIGHT
from .constants import TWO_PI
from .errors import (
    DegenerateDispersionError,
    NoSignChangeError,
    NonConvergenceError,
    OutOfRangeError,
)

_VALIDATION_SAMPLES = 65
_SCAN_INTERVALS = 256
_MISMATCH_TOL_REL = 1e-6


class DispersionKind(str, Enum):
    CONSTANT = "constant"
    LINEAR_IN_OMEGA = "linear_in_omega"
    SELLMEIER = "sellmeier"


_PARAM_COUNTS = {
    DispersionKind.CONSTANT: 1,
    DispersionKind.LINEAR_IN_OMEGA: 2,
    DispersionKind.SELLMEIER: 6,
}


@dataclass(frozen=True)
class DispersionModel:
    """One polarization axis of a (possibly dispersive) medium.

    ``validity_range`` is the closed frequency interval on which the model may
    be evaluated.  n(w) > 1 is required and checked on a sample of
    ``_VALIDATION_SAMPLES`` points at construction.
    """

    kind: DispersionKind
    parameters: tuple[float, ...]
    validity_range: tuple[float, float]

    def __post_init__(self):
        kind = DispersionKind(self.kind)
        object.__setattr__(self, "kind", kind)
        params = tuple(float(p) for p in self.parameters)
        object.__setattr__(self, "parameters", params)
        lo, hi = (float(v) for v in self.validity_range)
        object.__setattr__(self, "validity_range", (lo, hi))
        if len(params) != _PARAM_COUNTS[kind]:
            raise ValueError(
                f"{kind.value} model needs {_PARAM_COUNTS[kind]} parameters, "
                f"got {len(params)}"
            )
        if not (0.0 < lo < hi):
            raise ValueError("validity_range must satisfy 0 < lo < hi")
        for omega in np.linspace(lo, hi, _VALIDATION_SAMPLES):
            n = _index_unchecked(self, float(omega))
            if not math.isfinite(n) or n <= 1.0:
                raise ValueError(
                    f"{kind.value} model yields n = {n!r} <= 1 at "
                    f"omega = {omega:.6e} rad/s inside its validity range"
                )

    def contains(self, omega: float) -> bool:
        lo, hi = self.validity_range
        return lo <= omega <= hi


def _wavelength_um_sq(omega: float) -> float:
    lam_um = TWO_PI * C_LIGHT / omega * 1e6
    return lam_um * lam_um


def _index_unchecked(model: DispersionModel, omega: float) -> float:
    p = model.parameters
    if model.kind is DispersionKind.CONSTANT:
        return p[0]
    if model.kind is DispersionKind.LINEAR_IN_OMEGA:
        return p[0] + p[1] * omega
    ell = _wavelength_um_sq(omega)
    n_sq = 1.0
    for b, c in zip(p[:3], p[3:]):
        n_sq += b * ell / (ell - c)
    return math.sqrt(n_sq)


def _check_range(model: DispersionModel, omega: float) -> None:
    if not model.contains(omega):
        lo, hi = model.validity_range
        raise OutOfRangeError(
            f"omega = {omega:.6e} rad/s outside validity range "
            f"[{lo:.6e}, {hi:.6e}] of {model.kind.value} model"
        )


def refractive_index(model: DispersionModel, omega: float) -> float:
    """n(omega) for the given model."""
    _check_range(model, omega)
    return _index_unchecked(model, omega)


def dn_domega(model: DispersionModel, omega: float) -> float:
    """Analytic derivative dn/domega in seconds."""
    _check_range(model, omega)
    p = model.parameters
    if model.kind is DispersionKind.CONSTANT:
        return 0.0
    if model.kind is DispersionKind.LINEAR_IN_OMEGA:
        return p[1]
    ell = _wavelength_um_sq(omega)
    n = _index_unchecked(model, omega)
    pole_sum = 0.0
    for b, c in zip(p[:3], p[3:]):
        pole_sum += b * c / (ell - c) ** 2
    # dn/dw = (dn/dL)(dL/dw) with L = lambda_um^2 and dL/dw = -2L/w.
    return ell / (n * omega) * pole_sum


def group_velocity(model: DispersionModel, omega: float) -> float:
    """c / (n + omega * dn/domega), in m/s."""
    return C_LIGHT / (refractive_index(model, omega) + omega * dn_domega(model, omega))


def wavenumber(model: DispersionModel, omega: float) -> float:
    """k(omega) = omega * n(omega) / c, in rad/m."""
    return omega * refractive_index(model, omega) / C_LIGHT


@dataclass(frozen=True)
class CrystalParams:
    """Nonlinear crystal: geometry, susceptibility, and the three index models.

    ``chi`` is the effective second-order susceptibility in m/V, treated as
    frequency-independent over the bandwidths of interest.
    """

    length_l: float
    chi: float
    cross_section_A: float
    dispersion_signal: DispersionModel
    dispersion_idler: DispersionModel
    dispersion_pump: DispersionModel

    def __post_init__(self):
        if self.length_l <= 0:
            raise ValueError("length_l must be positive")
        if self.chi <= 0:
            raise ValueError("chi must be positive")
        if self.cross_section_A <= 0:
            raise ValueError("cross_section_A must be positive")


@dataclass(frozen=True)
class FrequencyTriple:
    """Pump, signal, idler centre frequencies with exact energy conservation.

    Construction rejects triples whose floating-point sum
    ``omega_s + omega_i`` differs from ``omega_p``.
    """

    omega_p: float
    omega_s: float
    omega_i: float

    def __post_init__(self):
        for name in ("omega_p", "omega_s", "omega_i"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.omega_s + self.omega_i != self.omega_p:
            raise ValueError(
                "omega_p must equal omega_s + omega_i exactly "
                f"(got {self.omega_p!r} vs {self.omega_s + self.omega_i!r})"
            )

    @classmethod
    def from_pump_and_signal(cls, omega_p: float, omega_s: float) -> "FrequencyTriple":
        return cls(omega_p, omega_s, omega_p - omega_s)


def transit_time_diff(crystal: CrystalParams, freqs: FrequencyTriple) -> float:
    """Signed transit-time difference tau0 = l/v_gI - l/v_gS in seconds.

    Positive when the signal traverses the crystal faster than the idler.
    """
    v_gs = group_velocity(crystal.dispersion_signal, freqs.omega_s)
    v_gi = group_velocity(crystal.dispersion_idler, freqs.omega_i)
    return crystal.length_l / v_gi - crystal.length_l / v_gs


def phase_match(
    crystal: CrystalParams,
    omega_p: float,
    bracket: tuple[float, float],
) -> FrequencyTriple:
    """Solve the collinear momentum-conservation condition for the signal.

    Finds omega_s in ``bracket`` with
    k_p(omega_p) = k_s(omega_s) + k_i(omega_p - omega_s)
    by bisection on the mismatch.  The bracket is first scanned on
    ``_SCAN_INTERVALS + 1`` points: if the mismatch is below tolerance
    everywhere the split is non-unique (``DegenerateDispersionError``); if it
    never changes sign there is no root to bracket (``NoSignChangeError``).
    """
    lo, hi = (float(v) for v in bracket)
    if not (0.0 < lo < hi < omega_p):
        raise ValueError("bracket must satisfy 0 < lo < hi < omega_p")

    k_p = wavenumber(crystal.dispersion_pump, omega_p)
    tol = _MISMATCH_TOL_REL * abs(k_p)

    def mismatch(omega_s: float) -> float:
        return (
            k_p
            - wavenumber(crystal.dispersion_signal, omega_s)
            - wavenumber(crystal.dispersion_idler, omega_p - omega_s)
        )

    grid = np.linspace(lo, hi, _SCAN_INTERVALS + 1)
    values = np.array([mismatch(float(w)) for w in grid])
    if np.all(np.abs(values) < tol):
        raise DegenerateDispersionError(
            "phase mismatch below tolerance over the whole bracket; "
            "the signal/idler split is non-unique, specify omega_s explicitly"
        )

    root = None
    for i in range(_SCAN_INTERVALS):
        a, b = float(grid[i]), float(grid[i + 1])
        fa, fb = float(values[i]), float(values[i + 1])
        if fa == 0.0:
            root = a
            break
        if fb == 0.0:
            root = b
            break
        if fa * fb < 0.0:
            root = float(bisect(mismatch, a, b, xtol=1e-300, rtol=1e-15, maxiter=200))
            break
    if root is None:
        raise NoSignChangeError(
            "phase mismatch does not change sign on the bracket "
            f"[{lo:.6e}, {hi:.6e}]"
        )
    if abs(mismatch(root)) > tol:
        raise NonConvergenceError(
            "bisection converged in omega_s but |mismatch| still exceeds "
            f"{_MISMATCH_TOL_REL:g} * k_p"
        )
    return FrequencyTriple.from_pump_and_signal(omega_p, root)
