"""Tour of the mollifier kernels: the standard bump, scaled views, and
the moment-vanishing combinations that buy higher smoothing order.

Writes kernel profiles as CSV under demos/out/kernels/ and prints the
moment table that drives the order-of-convergence story.
"""

import os

import numpy as np

from vwheat import (
    artifacts,
    derivative,
    eval_scaled,
    make_standard_bump,
    moment,
    scale,
    vanish_moments,
)

OUT = os.path.join(os.path.dirname(__file__), "out", "kernels")


def main():
    bump = make_standard_bump()
    print("standard bump on [-1, 1]")
    print(f"  normalization constant c = {bump.normalization_constant:.12f}")
    print(f"  peak value psi(0)        = {bump.samples[bump.samples.size // 2]:.12f}")
    print(f"  discrete mass            = {moment(bump, 0):.15f}")

    print("\nmoment table (odd orders vanish by symmetry):")
    for k in range(7):
        print(f"  m_{k} = {moment(bump, k):+.12e}")

    combo = vanish_moments(bump, 3)
    print("\nthird-order vanishing combination:")
    print("  coefficients on (psi, psi', psi'', psi''') =")
    for j, c in enumerate(combo.vanish_coefficients):
        print(f"    a_{j} = {c:+.12e}")
    print("  its moments 1..3 collapse while m_4 survives:")
    for k in range(5):
        print(f"  m_{k} = {moment(combo, k):+.12e}")

    x = bump.internal_grid()
    artifacts.write_kernel_csv(os.path.join(OUT, "bump.csv"), bump)
    artifacts.write_field_csv(os.path.join(OUT, "bump_d1.csv"), x,
                              derivative(bump, 1), header="x,psi")
    artifacts.write_kernel_csv(os.path.join(OUT, "vanish3.csv"), combo)

    # a scaled view concentrates the same unit mass on [-omega, omega]
    probe = np.linspace(-1.0, 1.0, 2001)
    for omega in (1.0, 0.5, 0.2):
        view = scale(bump, omega)
        vals = eval_scaled(view, probe)
        artifacts.write_field_csv(
            os.path.join(OUT, f"bump_omega{omega}.csv"), probe, vals,
            header="x,psi",
        )
        print(f"\nscale omega = {omega}: peak {vals.max():.6f}, "
              f"support radius {view.support_radius}")

    manifest = artifacts.write_manifest(OUT)
    print(f"\nwrote kernel gallery under {OUT}")
    print(f"manifest at {manifest}")

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
        ax1.plot(x, bump.samples, label="psi")
        ax1.plot(x, combo.samples, label="vanish-3 combination")
        ax1.legend()
        ax1.set_title("kernel profiles")
        for omega in (1.0, 0.5, 0.2):
            ax2.plot(probe, eval_scaled(scale(bump, omega), probe),
                     label=f"omega={omega}")
        ax2.legend()
        ax2.set_title("scaled views")
        fig.savefig(os.path.join(OUT, "gallery.png"), dpi=120)
        print("saved gallery.png")
    except ImportError:
        print("matplotlib not installed; skipping the plot")


if __name__ == "__main__":
    main()
