"""Cooling at the support point of a singular potential.

Three runs share the same initial bump at x=50: free diffusion, a delta
potential at x=40, and its square. The tighter the singular well, the
faster the temperature at x=40 drops, and the three curves order
pointwise there for all plotted times.
"""

import os

from vwheat import figure_experiments

OUT = os.path.join(os.path.dirname(__file__), "out", "cooling")


def main():
    report = figure_experiments("fig1", output_dir=OUT)
    print("three-case cooling comparison (eps = 0.2, delta at x = 40)")
    print(f"  wrote {len(report.artifacts)} CSV files under {OUT}")

    print("\nsolver health checks:")
    for check in report.checks:
        state = "ok" if check.verdict else "VIOLATED"
        print(f"  {check.check_name:<20} {state}")

    print("\nprobe readings at x = 40:")
    header = f"  {'t':>4}  {'free':>12}  {'delta':>12}  {'delta^2':>12}"
    print(header)
    for metric in report.details["metrics"]:
        v = metric["values"]
        print(f"  {metric['t']:>4g}  {v['zero']:>12.6e}  {v['dirac']:>12.6e}"
              f"  {v['dirac_squared']:>12.6e}")
        assert metric["verdict"]
    print("\nordering u_square <= u_delta <= u_free holds at every time:")
    print("the sharper the potential, the faster the probe point cools.")


if __name__ == "__main__":
    main()
