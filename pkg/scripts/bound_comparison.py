#!/usr/bin/env python3
"""Compare the majorization and typical-subspace leakage bounds for the ring
family in the lossy-detector regime, printing the ratio at each grid point."""

import argparse
import math

import numpy as np

from qfp.analysis import NoiseModel
from qfp.leakage import fannes_audenaert_bound, optimize_delta_for_qil


def run(n_points: int) -> None:
    noise = NoiseModel(eta=0.3, p_dark=7.3e-11)
    print(f"{'n':>12} {'majorization':>14} {'typical-subspace':>17} {'excess':>8}")
    for n in np.logspace(3, 8, n_points):
        opt = optimize_delta_for_qil("ring", 2, float(n), 0.01, noise=noise)
        fa = fannes_audenaert_bound(float(n), opt.m_k, opt.mu, opt.mu)
        excess = fa.bits / opt.bound.bits - 1.0
        print(f"{n:12.4g} {opt.bound.bits:14.4f} {fa.bits:17.4f} "
              f"{100 * excess:7.1f}%")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-points", type=int, default=8)
    run(parser.parse_args().n_points)
