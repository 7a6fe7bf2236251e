"""Detuned spontaneous decay of a two-level atom in a Lorentzian reservoir.

Everything is expressed through the excited-state amplitude C(t) of the
single-excitation sector, for which a closed form exists.  Units: hbar = 1,
all rates/frequencies share one unit and time is its inverse.

decay_rate() and lamb_shift() return math.nan at (isolated) zeros of C(t),
where the master-equation coefficients are genuinely singular; callers that
need finite plots should clip (see scan.sweep_decay_rate).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .smatrix import DensityMatrix2, as_matrix2

# |C| below this is treated as a zero of the amplitude when forming Cdot/C.
AMPLITUDE_SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters of the detuned Lorentzian reservoir model.

    gamma0: system-reservoir coupling strength.
    lam: spectral width of the Lorentzian.
    delta: detuning of the reservoir center against the atomic frequency.
    omega0: atomic transition frequency; only enters the spectral density
        through its center omega0 - delta, never the amplitude C(t).
    """

    gamma0: float
    lam: float
    delta: float
    omega0: float = 0.0

    def __post_init__(self):
        for name in ("gamma0", "lam", "delta", "omega0"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v}")
        if self.gamma0 <= 0.0:
            raise ValueError(f"gamma0 must be positive, got {self.gamma0}")
        if self.lam <= 0.0:
            raise ValueError(f"lam must be positive, got {self.lam}")

    @property
    def weak_coupling(self) -> bool:
        return self.gamma0 < 0.5 * self.lam

    @property
    def complex_root(self) -> complex:
        """Principal root d = sqrt((lam - i*delta)^2 - 2*gamma0*lam).

        The amplitude is an even function of d, so the branch choice is
        immaterial (tested); the principal branch is used throughout.
        """
        z = complex(self.lam, -self.delta)
        return cmath.sqrt(z * z - 2.0 * self.gamma0 * self.lam)


@dataclass(frozen=True)
class Amplitude:
    """Excited-state amplitude C(t) and its derivative at one time."""

    c: complex
    cdot: complex
    t: float


def spectral_density(p: ModelParams, omega):
    """Lorentzian spectral density centered at omega0 - delta, peak gamma0/2."""
    omega = np.asarray(omega, dtype=float)
    x = p.omega0 - p.delta - omega
    out = 0.5 * p.gamma0 * p.lam**2 / (x * x + p.lam**2)
    return out if out.ndim else float(out)


def memory_kernel(p: ModelParams, tau):
    """Reservoir correlation function (gamma0*lam/2) * exp(-(lam - i*delta)*tau)."""
    tau = np.asarray(tau, dtype=float)
    if np.any(tau < 0.0):
        raise ValueError("memory_kernel requires tau >= 0")
    out = 0.5 * p.gamma0 * p.lam * np.exp(-(p.lam - 1j * p.delta) * tau)
    return out if out.ndim else complex(out)


def _sinhc(z: np.ndarray) -> np.ndarray:
    """sinh(z)/z with the removable singularity handled by its series."""
    z = np.asarray(z, dtype=complex)
    small = np.abs(z) < 1e-6
    zs = np.where(small, 1.0, z)
    out = np.sinh(zs) / zs
    series = 1.0 + z * z / 6.0
    return np.where(small, series, out)


def amplitude_series(p: ModelParams, t) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized closed-form C(t) and Cdot(t) on an array of times t >= 0."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0.0):
        raise ValueError("amplitude requires t >= 0")
    mu = 0.5 * (p.lam - 1j * p.delta)
    d = p.complex_root
    x = 0.5 * d * t
    big = np.abs(x) > 25.0
    with np.errstate(over="ignore", invalid="ignore"):
        # cosh/sinhc form: exact through the removable point d = 0, but the
        # factors overflow separately once Re(d) t / 2 grows large.
        env = np.exp(-mu * t)
        shc = _sinhc(x)
        c_mid = env * (np.cosh(x) + mu * t * shc)
        cdot_mid = -0.5 * p.gamma0 * p.lam * t * shc * env
        if not np.any(big):
            return c_mid + 0j, cdot_mid + 0j
        # Split-exponential form: both rates have negative real part, so it
        # stays finite at large t; 1/d is safe because |d| t / 2 > 25 here.
        s_plus = 0.5 * d - mu
        s_minus = -0.5 * d - mu
        a_plus = 0.5 * (1.0 + 2.0 * mu / d)
        a_minus = 0.5 * (1.0 - 2.0 * mu / d)
        e_plus = np.exp(s_plus * t)
        e_minus = np.exp(s_minus * t)
        c_big = a_plus * e_plus + a_minus * e_minus
        cdot_big = a_plus * s_plus * e_plus + a_minus * s_minus * e_minus
    c = np.where(big, c_big, c_mid)
    cdot = np.where(big, cdot_big, cdot_mid)
    return c, cdot


def amplitude(p: ModelParams, t: float) -> Amplitude:
    """Closed-form amplitude C(t) with its analytic derivative."""
    c, cdot = amplitude_series(p, float(t))
    return Amplitude(c=complex(c), cdot=complex(cdot), t=float(t))


def _amplitude_cddot(p: ModelParams, t) -> np.ndarray:
    """Second derivative of C(t); used by the ODE-residual checks."""
    t = np.asarray(t, dtype=float)
    mu = 0.5 * (p.lam - 1j * p.delta)
    d = p.complex_root
    x = 0.5 * d * t
    env = np.exp(-mu * t)
    return -p.gamma0 * p.lam * env * (0.5 * np.cosh(x) - mu * 0.5 * t * _sinhc(x))


def oracle_amplitude(p: ModelParams, t_max: float, step: float) -> tuple[np.ndarray, np.ndarray]:
    """Independent numerical solution of the memory-kernel equation for C(t).

    Integrates Cdot(t) = -B(t) with the memory accumulator
    B(t) = int_0^t f(t - s) C(s) ds, advanced through its local form
    Bdot = f(0) C - (lam - i*delta) B (the kernel is a single exponential),
    with classic 4th-order Runge-Kutta stepping.  Never touches the closed
    form, so it serves as an oracle for amplitude().

    Returns (times, C) on the uniform grid 0, step, ..., ~t_max.
    """
    if step <= 0.0:
        raise ValueError("step must be positive")
    if t_max < step:
        raise ValueError("t_max must be at least one step")
    if p.lam * step > 0.1:
        raise ValueError(
            f"step {step} too coarse for lam={p.lam}; choose step <= {0.1 / p.lam:.3g} "
            "(lam * step <= 0.1) so the kernel is resolved"
        )
    n = int(round(t_max / step))
    f0 = 0.5 * p.gamma0 * p.lam
    decay = p.lam - 1j * p.delta
    h = step

    def deriv(c, b):
        return -b, f0 * c - decay * b

    c = 1.0 + 0.0j
    b = 0.0 + 0.0j
    out = np.empty(n + 1, dtype=complex)
    out[0] = c
    for k in range(n):
        k1c, k1b = deriv(c, b)
        k2c, k2b = deriv(c + 0.5 * h * k1c, b + 0.5 * h * k1b)
        k3c, k3b = deriv(c + 0.5 * h * k2c, b + 0.5 * h * k2b)
        k4c, k4b = deriv(c + h * k3c, b + h * k3b)
        c = c + (h / 6.0) * (k1c + 2.0 * k2c + 2.0 * k3c + k4c)
        b = b + (h / 6.0) * (k1b + 2.0 * k2b + 2.0 * k3b + k4b)
        out[k + 1] = c
    times = np.arange(n + 1) * h
    return times, out


def excited_population(p: ModelParams, t):
    """P(t) = |C(t)|^2 for decay from the excited state."""
    c, _ = amplitude_series(p, t)
    out = np.abs(c) ** 2
    return out if out.ndim else float(out)


def population_rate(p: ModelParams, t):
    """dP/dt = 2 Re(conj(C) Cdot); positive means energy flows back to the atom."""
    c, cdot = amplitude_series(p, t)
    out = 2.0 * (np.conj(c) * cdot).real
    return out if out.ndim else float(out)


def decay_rate(p: ModelParams, t):
    """Time-dependent decay rate -2 Re(Cdot/C); nan marks zeros of C."""
    c, cdot = amplitude_series(p, t)
    singular = np.abs(c) < AMPLITUDE_SINGULAR_TOL
    safe = np.where(singular, 1.0, c)
    out = np.where(singular, math.nan, -2.0 * (cdot / safe).real)
    return out if out.ndim else float(out)


def lamb_shift(p: ModelParams, t):
    """Lamb-shift coefficient -2 Im(Cdot/C); nan marks zeros of C."""
    c, cdot = amplitude_series(p, t)
    singular = np.abs(c) < AMPLITUDE_SINGULAR_TOL
    safe = np.where(singular, 1.0, c)
    out = np.where(singular, math.nan, -2.0 * (cdot / safe).imag)
    return out if out.ndim else float(out)


def on_resonance_decay_rate(p: ModelParams, t):
    """Closed form of the decay rate at delta = 0.

    2*gamma0*lam*sinh(d0 t/2) / (d0 cosh(d0 t/2) + lam sinh(d0 t/2)) with
    d0 = sqrt(lam^2 - 2 gamma0 lam); real for all couplings.
    """
    if p.delta != 0.0:
        raise ValueError("on_resonance_decay_rate requires delta = 0")
    t = np.asarray(t, dtype=float)
    d0 = cmath.sqrt(complex(p.lam * p.lam - 2.0 * p.gamma0 * p.lam))
    x = 0.5 * d0 * t
    # Dividing through by d0 removes the critical-coupling singularity d0 = 0.
    shc = 0.5 * t * _sinhc(x)
    out = (2.0 * p.gamma0 * p.lam * shc / (np.cosh(x) + p.lam * shc)).real
    return out if out.ndim else float(out)


def markov_limit(p: ModelParams) -> float:
    """Long-time Markovian decay rate gamma0 * lam^2 / (lam^2 + delta^2)."""
    return p.gamma0 * p.lam**2 / (p.lam**2 + p.delta**2)


def evolve(p: ModelParams, rho0: DensityMatrix2, t: float) -> DensityMatrix2:
    """Reduced state at time t for initial state rho0.

    rho_ee(t) = rho_ee(0) |C|^2, rho_eg(t) = rho_eg(0) C(t), and the ground
    population is fixed by unit trace.
    """
    if not isinstance(rho0, DensityMatrix2):
        raise ValueError("evolve expects a DensityMatrix2 initial state")
    a = amplitude(p, t)
    pop = rho0.excited_population * abs(a.c) ** 2
    coh = rho0.coherence * a.c
    return DensityMatrix2([[1.0 - pop, np.conj(coh)], [coh, pop]])


def liouvillian(p: ModelParams, rho0: DensityMatrix2, t: float) -> np.ndarray:
    """Analytic rhod(t), obtained by differentiating the evolved state entrywise.

    Finite everywhere (composed directly from Cdot), traceless and Hermitian.
    """
    if not isinstance(rho0, DensityMatrix2):
        raise ValueError("liouvillian expects a DensityMatrix2 initial state")
    a = amplitude(p, t)
    pdot = rho0.excited_population * 2.0 * (np.conj(a.c) * a.cdot).real
    cohdot = rho0.coherence * a.cdot
    return as_matrix2([[-pdot, np.conj(cohdot)], [cohdot, pdot]])
