"""Quantum-speed-limit estimators built on the trace-distance measure.

For this model both the state displacement rho_t - rho_ref and the generator
rhod_t are Hermitian and traceless, so their two singular values coincide.
The three averaged integrals (trace-, Hilbert-Schmidt- and operator-norm
flavored, with the sqrt(n)/n prefactors, n = 2) are then equal exactly, and
a single quadrature serves all three.  Tests cross-check this reduction
against the generic matrix-norm path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import quad
from .model import ModelParams, amplitude_series, excited_population
from .smatrix import DensityMatrix2

# Ratios below 1 - SPEED_UP_TOL count as genuine speed-up; larger values are
# quadrature noise on the no-speed-up plateau.
SPEED_UP_TOL = 1e-6

_STATIONARY_TOL = 1e-30


@dataclass(frozen=True)
class BoundReport:
    """Speed-limit diagnostics for one parameter point and driving window."""

    lambda1: float
    lambda2: float
    lambda_inf: float
    d_measure: float
    tau_qsl: float
    ratio: float
    comparator_ratio: float
    tau_d: float
    quadrature_err: float
    stationary: bool = False


def _trajectory(p: ModelParams, rho0: DensityMatrix2, tau_start: float):
    """Closed-form ingredients of the trajectory displaced from rho(tau_start)."""
    ree0 = rho0.excited_population
    coh0 = rho0.coherence
    c_ref, _ = amplitude_series(p, tau_start)
    pop_ref = ree0 * abs(c_ref) ** 2
    coh_ref = coh0 * complex(c_ref)

    def terms(t: np.ndarray):
        c, cdot = amplitude_series(p, t)
        disp_pop = ree0 * np.abs(c) ** 2 - pop_ref
        disp_coh = coh0 * c - coh_ref
        pdot = ree0 * 2.0 * (np.conj(c) * cdot).real
        cohdot = coh0 * cdot
        return disp_pop, disp_coh, pdot, cohdot

    return terms


def _window_breakpoints(p: ModelParams, terms, a: float, b: float) -> tuple[float, ...]:
    """Kink locations of |displacement| * |rate|: zeros of either factor."""
    n_probe = quad.probe_count_for_period(p.complex_root.imag, a, b)
    roots = quad.find_sign_changes(lambda t: terms(t)[2], a, b, n_probe)
    roots += quad.find_sign_changes(lambda t: terms(t)[0], a, b, n_probe)
    return tuple(sorted(set(roots)))


def lambda_integrals(
    p: ModelParams,
    rho0: DensityMatrix2,
    tau_start: float,
    tau_d: float,
    spec: quad.QuadratureSpec | None = None,
) -> tuple[float, float, float]:
    """Averaged displacement-times-generator integrals over [tau_start, tau_start + tau_d].

    Returns the trace-, Hilbert-Schmidt- and operator-norm versions (the
    latter two carry their sqrt(n) and n prefactors, n = 2).  rho0 is the
    global initial state; the reference state is the trajectory point at
    tau_start.
    """
    value, _ = _lambda_core(p, rho0, tau_start, tau_d, spec)
    return value, value, value


def _lambda_core(
    p: ModelParams,
    rho0: DensityMatrix2,
    tau_start: float,
    tau_d: float,
    spec: quad.QuadratureSpec | None,
) -> tuple[float, float]:
    if tau_d <= 0.0:
        raise ValueError("tau_d must be positive")
    if tau_start < 0.0:
        raise ValueError("tau_start must be nonnegative")
    terms = _trajectory(p, rho0, tau_start)
    a, b = tau_start, tau_start + tau_d

    def integrand(t):
        disp_pop, disp_coh, pdot, cohdot = terms(t)
        disp = 2.0 * np.sqrt(disp_pop**2 + np.abs(disp_coh) ** 2)
        rate = np.sqrt(pdot**2 + np.abs(cohdot) ** 2)
        return disp * rate

    base = spec or quad.QuadratureSpec()
    bps = _window_breakpoints(p, terms, a, b)
    panel_spec = quad.QuadratureSpec(
        rel_tol=base.rel_tol, abs_tol=base.abs_tol, max_depth=base.max_depth, breakpoints=bps
    )
    try:
        integral, err = quad.integrate(integrand, a, b, panel_spec)
    except quad.QuadratureError as exc:
        raise quad.QuadratureError(
            f"lambda integral failed for gamma0={p.gamma0}, delta={p.delta}, "
            f"window [{a}, {b}]: {exc}",
            value=exc.value,
            err_estimate=exc.err_estimate,
        ) from exc
    # 1, sqrt(2)*sqrt(2), 2x the operator-norm integrand all give 2*I/tau_d.
    return 2.0 * integral / tau_d, err


def qsl_ratio(
    p: ModelParams,
    rho0: DensityMatrix2,
    tau_d: float,
    tau_start: float = 0.0,
    spec: quad.QuadratureSpec | None = None,
    include_comparator: bool = False,
) -> BoundReport:
    """Speed-limit report for the window [tau_start, tau_start + tau_d].

    ratio = 2|1 - D| * max_p{1/Lambda_p} / tau_d, with D the trace-distance
    measure between the window's end state and its reference state.
    Stationary trajectories (all integrals zero) are reported with ratio 1
    and the stationary flag set, matching the no-speed-up semantics.
    """
    lam_val, err = _lambda_core(p, rho0, tau_start, tau_d, spec)
    terms = _trajectory(p, rho0, tau_start)
    end = np.asarray([tau_start + tau_d])
    disp_pop, disp_coh, _, _ = terms(end)
    disp_norm = 2.0 * math.sqrt(float(disp_pop[0]) ** 2 + abs(complex(disp_coh[0])) ** 2)
    d_measure = 1.0 - 0.25 * disp_norm**2

    comparator = math.nan
    if include_comparator:
        comparator = bures_comparator(p, tau_d, spec=spec)

    if lam_val < _STATIONARY_TOL:
        return BoundReport(
            lambda1=0.0,
            lambda2=0.0,
            lambda_inf=0.0,
            d_measure=d_measure,
            tau_qsl=tau_d,
            ratio=1.0,
            comparator_ratio=comparator,
            tau_d=tau_d,
            quadrature_err=err,
            stationary=True,
        )
    tau_qsl = 2.0 * abs(1.0 - d_measure) / lam_val
    return BoundReport(
        lambda1=lam_val,
        lambda2=lam_val,
        lambda_inf=lam_val,
        d_measure=d_measure,
        tau_qsl=tau_qsl,
        ratio=tau_qsl / tau_d,
        comparator_ratio=comparator,
        tau_d=tau_d,
        quadrature_err=err,
        stationary=False,
    )


def qsl_ratio_evolved(
    p: ModelParams,
    tau: float,
    tau_d: float,
    spec: quad.QuadratureSpec | None = None,
) -> float:
    """Population closed form of the ratio for the excited-state trajectory.

    (P_{tau+tau_d} - P_tau)^2 / (2 * int_tau^{tau+tau_d} |(P_t - P_tau) Pdot_t| dt);
    exactly 1 for windows where the population is monotone.
    """
    if tau < 0.0:
        raise ValueError("tau must be nonnegative")
    if tau_d <= 0.0:
        raise ValueError("tau_d must be positive")
    a, b = tau, tau + tau_d
    p_ref = excited_population(p, tau)

    def pdot(t):
        c, cdot = amplitude_series(p, t)
        return 2.0 * (np.conj(c) * cdot).real

    def pdisp(t):
        return excited_population(p, t) - p_ref

    def integrand(t):
        return np.abs(pdisp(t) * pdot(t))

    n_probe = quad.probe_count_for_period(p.complex_root.imag, a, b)
    bps = sorted(
        set(quad.find_sign_changes(pdot, a, b, n_probe) + quad.find_sign_changes(pdisp, a, b, n_probe))
    )
    base = spec or quad.QuadratureSpec()
    panel_spec = quad.QuadratureSpec(
        rel_tol=base.rel_tol, abs_tol=base.abs_tol, max_depth=base.max_depth, breakpoints=tuple(bps)
    )
    integral, _ = quad.integrate(integrand, a, b, panel_spec)
    num = (excited_population(p, b) - p_ref) ** 2
    den = 2.0 * integral
    if den < _STATIONARY_TOL:
        return 1.0
    return num / den


def bures_comparator(
    p: ModelParams,
    tau_d: float,
    rho0: DensityMatrix2 | None = None,
    spec: quad.QuadratureSpec | None = None,
    variant: str = "operator",
) -> float:
    """Bures-angle speed-limit ratio for decay from the excited state.

    With B = arccos(sqrt(P_{tau_d})) the bound reads
    tau >= sin^2(B) / Lambda_tilde, Lambda_tilde = (1/tau_d) int ||rhod_t||_p dt.

    variant="operator" uses the operator norm (the sharpest of the three and
    the published form of the Bures-angle bound); variant="prefactor" applies
    the same sqrt(n)/n prefactors as the trace-distance integrals, under
    which the three norms coincide for this model.  Both are exposed because
    the comparison figure's exact convention is not pinned down; "operator"
    reproduces its qualitative features.
    """
    if tau_d <= 0.0:
        raise ValueError("tau_d must be positive")
    if rho0 is not None:
        if not np.allclose(rho0.matrix, DensityMatrix2.excited().matrix, atol=1e-12):
            raise ValueError("the Bures comparator supports only the excited pure initial state")
    if variant not in ("operator", "prefactor"):
        raise ValueError(f"unknown variant {variant!r}")

    def abs_pdot(t):
        c, cdot = amplitude_series(p, t)
        return np.abs(2.0 * (np.conj(c) * cdot).real)

    def pdot(t):
        c, cdot = amplitude_series(p, t)
        return 2.0 * (np.conj(c) * cdot).real

    n_probe = quad.probe_count_for_period(p.complex_root.imag, 0.0, tau_d)
    bps = tuple(quad.find_sign_changes(pdot, 0.0, tau_d, n_probe))
    base = spec or quad.QuadratureSpec()
    panel_spec = quad.QuadratureSpec(
        rel_tol=base.rel_tol, abs_tol=base.abs_tol, max_depth=base.max_depth, breakpoints=bps
    )
    # For the excited trajectory rhod is diagonal, so ||rhod||_inf = |Pdot|.
    integral, _ = quad.integrate(abs_pdot, 0.0, tau_d, panel_spec)
    if variant == "prefactor":
        integral *= 2.0
    sin2_b = 1.0 - excited_population(p, tau_d)
    if integral < _STATIONARY_TOL:
        return 1.0
    return sin2_b / integral
