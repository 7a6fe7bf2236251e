import math

import numpy as np
import pytest

from qslkit.bounds import (
    bures_comparator,
    lambda_integrals,
    qsl_ratio,
    qsl_ratio_evolved,
)
from qslkit.model import (
    ModelParams,
    amplitude_series,
    evolve,
    excited_population,
    liouvillian,
    population_rate,
)
from qslkit.quad import QuadratureSpec, integrate, probe_count_for_period, find_sign_changes
from qslkit.smatrix import DensityMatrix2, schatten_norm

LAM = 50.0
EXCITED = DensityMatrix2.excited()


class TestLambdaIntegrals:
    def test_three_versions_coincide_for_excited_state(self):
        # The generator is Hermitian and traceless, so its singular values are
        # equal and the prefactors make the three averages identical.
        p = ModelParams(500.0, LAM, 0.0)
        l1, l2, linf = lambda_integrals(p, EXCITED, 0.0, 0.2)
        assert l1 == l2 == linf
        assert l1 > 0.0

    def test_stationary_ground_state(self):
        p = ModelParams(5.0, LAM, 0.0)
        assert lambda_integrals(p, DensityMatrix2.ground(), 0.0, 0.2) == (0.0, 0.0, 0.0)

    def test_closed_form_reduction_diagonal(self):
        # For the excited trajectory the trace-norm integral reduces to
        # (4 / tau_d) * int (1 - P_t) |Pdot_t| dt.
        p = ModelParams(0.1 * LAM, LAM, 0.0)
        tau_d = 0.2
        l1, _, _ = lambda_integrals(p, EXCITED, 0.0, tau_d)

        def integrand(t):
            pop = excited_population(p, t)
            return (1.0 - pop) * np.abs(population_rate(p, t))

        direct, _ = integrate(integrand, 0.0, tau_d)
        assert l1 == pytest.approx(4.0 * direct / tau_d, rel=1e-10)

    def test_integrand_matches_generic_norm_path(self):
        # The vectorized closed-form integrand must agree with the generic
        # matrix-norm route through evolve/liouvillian at sampled times.
        rho0 = DensityMatrix2([[0.3, 0.2 - 0.1j], [0.2 + 0.1j, 0.7]])
        p = ModelParams(500.0, LAM, 300.0)
        tau_start = 0.05
        ref = evolve(p, rho0, tau_start).matrix
        for t in (0.06, 0.1, 0.2):
            disp = schatten_norm(evolve(p, rho0, t).matrix - ref, 1)
            gen = schatten_norm(liouvillian(p, rho0, t), math.inf)
            c, cdot = amplitude_series(p, np.asarray([t]))
            disp_pop = rho0.excited_population * abs(c[0]) ** 2 - rho0.excited_population * abs(
                amplitude_series(p, tau_start)[0]
            ) ** 2
            coh0 = rho0.coherence
            disp_coh = coh0 * c[0] - coh0 * complex(amplitude_series(p, tau_start)[0])
            pdot = rho0.excited_population * 2.0 * (np.conj(c[0]) * cdot[0]).real
            closed_disp = 2.0 * math.sqrt(abs(disp_pop) ** 2 + abs(disp_coh) ** 2)
            closed_gen = math.sqrt(pdot**2 + abs(coh0 * cdot[0]) ** 2)
            # The quadratic-formula singular values split degenerate pairs only
            # to sqrt(eps) relative accuracy, hence the 1e-7 tolerance here.
            assert closed_disp == pytest.approx(disp, rel=1e-7, abs=1e-12)
            assert closed_gen == pytest.approx(gen, rel=1e-7, abs=1e-12)

    def test_invalid_window(self):
        p = ModelParams(5.0, LAM, 0.0)
        with pytest.raises(ValueError):
            lambda_integrals(p, EXCITED, 0.0, 0.0)
        with pytest.raises(ValueError):
            lambda_integrals(p, EXCITED, -0.1, 0.2)


class TestQslRatio:
    def test_weak_coupling_plateau(self):
        p = ModelParams(0.1 * LAM, LAM, 0.0)
        report = qsl_ratio(p, EXCITED, 0.2)
        assert abs(report.ratio - 1.0) < 1e-6
        assert not report.stationary
        assert report.tau_qsl == pytest.approx(report.ratio * report.tau_d)

    def test_strong_coupling_speed_up_golden(self):
        # No published numeric value exists; frozen after the closed form
        # passed the memory-kernel oracle and the on-resonance rate identity.
        p = ModelParams(10.0 * LAM, LAM, 0.0)
        report = qsl_ratio(p, EXCITED, 0.2)
        assert report.ratio == pytest.approx(0.47146600298396024, abs=1e-9)

    def test_ground_state_stationary_flag(self):
        p = ModelParams(5.0, LAM, 0.0)
        report = qsl_ratio(p, DensityMatrix2.ground(), 0.2)
        assert report.stationary
        assert report.ratio == 1.0
        assert report.lambda1 == 0.0

    def test_ratio_bounded_random_parameters(self):
        rng = np.random.default_rng(23)
        for _ in range(25):
            p = ModelParams(rng.uniform(0.5, 1000.0), LAM, rng.uniform(-400.0, 400.0))
            report = qsl_ratio(p, EXCITED, rng.uniform(0.05, 0.5))
            assert 0.0 < report.ratio <= 1.0 + 1e-9

    def test_mixed_initial_state_with_coherence(self):
        rho0 = DensityMatrix2([[0.4, 0.25 + 0.2j], [0.25 - 0.2j, 0.6]])
        p = ModelParams(500.0, LAM, 300.0)
        report = qsl_ratio(p, rho0, 0.2)
        assert 0.0 < report.ratio <= 1.0 + 1e-9

    def test_scaling_covariance(self):
        # Scaling all rates by s and times by 1/s leaves every ratio unchanged.
        s = 3.7
        p = ModelParams(500.0, LAM, 300.0)
        ps = ModelParams(500.0 * s, LAM * s, 300.0 * s)
        r = qsl_ratio(p, EXCITED, 0.2).ratio
        rs = qsl_ratio(ps, EXCITED, 0.2 / s).ratio
        assert r == pytest.approx(rs, abs=1e-9)
        e = qsl_ratio_evolved(p, 0.03, 0.2)
        es = qsl_ratio_evolved(ps, 0.03 / s, 0.2 / s)
        assert e == pytest.approx(es, abs=1e-9)


class TestQslRatioEvolved:
    def test_monotone_window_gives_one(self):
        p = ModelParams(0.1 * LAM, LAM, 0.0)
        for tau in (0.0, 0.5, 1.3):
            assert qsl_ratio_evolved(p, tau, 0.2) == pytest.approx(1.0, abs=1e-9)

    def test_weak_coupling_constant_one(self):
        p = ModelParams(0.1 * LAM, LAM, 0.0)
        for tau in np.linspace(0.0, 2.0, 21):
            assert qsl_ratio_evolved(p, float(tau), 0.2) == pytest.approx(1.0, abs=1e-6)

    def test_strong_coupling_oscillates_below_one(self):
        p = ModelParams(10.0 * LAM, LAM, 0.0)
        taus = np.linspace(0.0, 0.15, 151)
        values = np.array([qsl_ratio_evolved(p, float(t), 0.2) for t in taus])
        assert np.min(values) < 1.0 - 1e-6
        minima = [
            i for i in range(1, len(values) - 1) if values[i] < values[i - 1] and values[i] < values[i + 1]
        ]
        spacing = np.diff(taus[minima])
        period = 2.0 * math.pi / abs(p.complex_root)
        assert np.mean(spacing) == pytest.approx(period, rel=0.05)

    def test_agrees_with_general_path(self):
        for g0, delta, tau in ((500.0, 0.0, 0.01), (5.0, 300.0, 0.0), (500.0, 300.0, 0.04)):
            p = ModelParams(g0, LAM, delta)
            general = qsl_ratio(p, EXCITED, 0.2, tau_start=tau).ratio
            closed = qsl_ratio_evolved(p, tau, 0.2)
            assert closed == pytest.approx(general, abs=1e-8)

    def test_invalid_inputs(self):
        p = ModelParams(5.0, LAM, 0.0)
        with pytest.raises(ValueError):
            qsl_ratio_evolved(p, -0.1, 0.2)
        with pytest.raises(ValueError):
            qsl_ratio_evolved(p, 0.1, 0.0)


class TestBuresComparator:
    def test_short_window_limit(self):
        p = ModelParams(5.0, LAM, 0.0)
        assert bures_comparator(p, 1e-5) == pytest.approx(1.0, abs=1e-3)

    def test_weak_coupling_plateau(self):
        p = ModelParams(0.1 * LAM, LAM, 0.0)
        assert bures_comparator(p, 0.2) == pytest.approx(1.0, abs=1e-9)

    def test_speed_up_onsets_coincide_on_resonance(self):
        gamma0s = np.geomspace(0.02 * LAM, 20.0 * LAM, 25)
        trace_flags = []
        bures_flags = []
        for g0 in gamma0s:
            p = ModelParams(float(g0), LAM, 0.0)
            trace_flags.append(qsl_ratio(p, EXCITED, 0.2).ratio < 1.0 - 1e-6)
            bures_flags.append(bures_comparator(p, 0.2) < 1.0 - 1e-6)
        assert trace_flags.index(True) == bures_flags.index(True)

    def test_detuned_sweep_bounds_cross(self):
        # Off resonance the two bounds trade places: the trace-distance bound
        # is the tighter one (larger ratio) up to moderate coupling, while in
        # the deep strong-coupling regime the Bures bound overtakes it.
        for g0 in np.geomspace(0.02 * LAM, 6.0 * LAM, 9):
            p = ModelParams(float(g0), LAM, 4.0 * LAM)
            trace = qsl_ratio(p, EXCITED, 0.2).ratio
            bures = bures_comparator(p, 0.2)
            assert trace >= bures - 1e-9
        for g0 in (13.0 * LAM, 20.0 * LAM):
            p = ModelParams(float(g0), LAM, 4.0 * LAM)
            trace = qsl_ratio(p, EXCITED, 0.2).ratio
            bures = bures_comparator(p, 0.2)
            assert trace <= bures + 1e-9
            assert trace < 1.0 - 1e-6 and bures < 1.0 - 1e-6

    def test_prefactor_variant_is_half_operator_variant(self):
        p = ModelParams(500.0, LAM, 0.0)
        op = bures_comparator(p, 0.2, variant="operator")
        pre = bures_comparator(p, 0.2, variant="prefactor")
        assert pre == pytest.approx(0.5 * op, rel=1e-12)

    def test_rejects_non_excited_state(self):
        p = ModelParams(5.0, LAM, 0.0)
        with pytest.raises(ValueError):
            bures_comparator(p, 0.2, rho0=DensityMatrix2.diagonal(0.5))

    def test_rejects_unknown_variant(self):
        with pytest.raises(ValueError):
            bures_comparator(ModelParams(5.0, LAM, 0.0), 0.2, variant="bogus")


class TestBreakpointMachinery:
    def test_probe_count_scales_with_oscillation(self):
        p = ModelParams(500.0, LAM, 0.0)
        n = probe_count_for_period(p.complex_root.imag, 0.0, 0.2)
        periods = abs(p.complex_root.imag) * 0.2 / (2.0 * math.pi)
        assert n >= 64 * periods

    def test_population_breakpoints_found_in_window(self):
        p = ModelParams(500.0, LAM, 0.0)
        n = probe_count_for_period(p.complex_root.imag, 0.0, 0.2)
        roots = find_sign_changes(lambda t: population_rate(p, t), 0.0, 0.2, n)
        assert len(roots) >= 6
