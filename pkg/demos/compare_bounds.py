"""Trace-distance versus Bures-angle speed-limit ratios over a coupling sweep.

On resonance the two bounds flag the speed-up transition at essentially the
same coupling.  Off resonance they trade places: the trace-distance bound is
tighter up to moderate coupling, the Bures bound overtakes it deep in the
strong-coupling regime.  Prints a table and, when matplotlib is available,
saves compare_bounds.png next to this script.
"""

import pathlib

import numpy as np

from qslkit import DensityMatrix2, ModelParams, bures_comparator, qsl_ratio

LAM = 50.0
TAU_D = 0.2


def sweep(delta):
    gamma0s = np.geomspace(0.02 * LAM, 20.0 * LAM, 25)
    rho0 = DensityMatrix2.excited()
    trace = [qsl_ratio(ModelParams(float(g), LAM, delta), rho0, TAU_D).ratio for g in gamma0s]
    bures = [bures_comparator(ModelParams(float(g), LAM, delta), TAU_D) for g in gamma0s]
    return gamma0s, np.array(trace), np.array(bures)


def main():
    results = {delta: sweep(delta) for delta in (0.0, 4.0 * LAM)}
    for delta, (gamma0s, trace, bures) in results.items():
        print(f"\ndelta = {delta:g}  (tau_D = {TAU_D})")
        print(f"{'gamma0/lam':>12} {'trace ratio':>12} {'bures ratio':>12}")
        for g, t, b in zip(gamma0s[::4], trace[::4], bures[::4]):
            print(f"{g / LAM:>12.3f} {t:>12.6f} {b:>12.6f}")

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("\nmatplotlib not available, skipping plot")
        return
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.5), sharey=True)
    for ax, (delta, (gamma0s, trace, bures)) in zip(axes, results.items()):
        ax.semilogx(gamma0s / LAM, trace, label="trace distance")
        ax.semilogx(gamma0s / LAM, bures, "--", label="Bures angle")
        ax.set_xlabel(r"$\gamma_0/\lambda$")
        ax.set_title(rf"$\Delta = {delta:g}$")
    axes[0].set_ylabel(r"$\tau_{QSL}/\tau_D$")
    axes[0].legend()
    out = pathlib.Path(__file__).with_name("compare_bounds.png")
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"\nsaved {out}")


if __name__ == "__main__":
    main()
