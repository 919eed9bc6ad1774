#!/usr/bin/env python3
"""Show that the 2x2 scalar-sum metric identity fails in dimension 3.

For random unbroken 2x2 systems, eta + eta^{-1} = t I holds exactly after
det-normalization. For the triangular 3x3 counterexample, the (1,3) entry of
eta + eta^{-1} equals 1 for every metric while the (1,3) entry of t I is 0,
so the identity cannot hold; a grid scan reports the minimum residual.
"""

import numpy as np

from ptsim import gunther_system, scalar_sum_metric_2d, scalar_sum_obstruction_demo


def main():
    print("2x2 scalar-sum identity on the two-level family:")
    for alpha in (0.2, 0.6, 1.0):
        sys = gunther_system(alpha)
        m, t = scalar_sum_metric_2d(sys)
        resid = np.linalg.norm(m.eta + np.linalg.inv(m.eta) - t * np.eye(2))
        print(f"  alpha={alpha:4.2f}  t={t:.6f}  residual={resid:.3e}")

    print("\n3x3 obstruction scan:")
    demo = scalar_sum_obstruction_demo()
    print(f"  grid samples:          {demo['samples']}")
    print(f"  obstruction entry(1,3): {demo['obstruction_entry_13']}"
          f"  (spread {demo['obstruction_entry_13_spread']:.1e})")
    print(f"  min residual over grid: {demo['min_residual']:.4f}  (> 0.1)")


if __name__ == "__main__":
    main()
