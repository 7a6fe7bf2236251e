"""Critical coupling of the speed-up transition as a function of detuning.

Refines each classification flip of the phase diagram by bisection and
prints the transition curve gamma0*(delta).  On resonance the flip sits
near gamma0 = 0.64*lam for tau_D = 0.2; with growing detuning the
threshold first rises, then collapses once detuning alone drives the
speed-up and the row no longer flips at all.
"""

import numpy as np

from qslkit import default_gamma0_axis, grid_scan, transition_boundary

LAM = 50.0
TAU_D = 0.2


def main():
    gamma0_axis = default_gamma0_axis(LAM, 24)
    delta_axis = np.linspace(0.0, 6.0 * LAM, 13)
    grid = grid_scan(gamma0_axis, delta_axis, LAM, TAU_D)
    points = transition_boundary(grid)

    print(f"tau_D = {TAU_D}, lam = {LAM:g}\n")
    print(f"{'delta/lam':>10} {'gamma0*/lam':>12} {'flip':>5}")
    for delta, g_star, flip in points:
        print(f"{delta / LAM:>10.2f} {g_star / LAM:>12.4f} {flip:>5d}")

    covered = {d for d, _, _ in points}
    uniform = [d for d in delta_axis if float(d) not in covered]
    if uniform:
        rows = ", ".join(f"{d / LAM:g}" for d in uniform)
        print(f"\nrows without a flip (uniform classification): delta/lam = {rows}")


if __name__ == "__main__":
    main()
