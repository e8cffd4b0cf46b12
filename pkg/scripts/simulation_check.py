#!/usr/bin/env python3
"""Monte Carlo sanity sweep: worst-case-pair empirical error versus the
closed-form prediction for small ring instances."""

import argparse

from qfp.analysis import IDEAL_NOISE, ring_worst_case_error, solve_amplitude
from qfp.codes import worst_case_pair
from qfp.constellations import ProtocolInstance
from qfp.montecarlo import TrialPlan, simulate_equality


def run(trials: int, seed: int) -> None:
    delta = 0.25
    for k in (1, 2, 3):
        m = 1000 * k
        mu = solve_amplitude(k, m, delta, 0.01)
        x, y = worst_case_pair(m, delta, k, "even")
        plan = TrialPlan(
            trials=trials, master_seed=seed,
            protocol=ProtocolInstance(family="ring", k=k, m=m, mu=mu),
            noise=IDEAL_NOISE, input_x=x, input_y=y)
        res = simulate_equality(plan)
        closed = ring_worst_case_error(k, mu, delta)
        lo, hi = res.confidence_interval
        print(f"k={k}: empirical {res.empirical_error:.5f} "
              f"[{lo:.5f}, {hi:.5f}]  closed-form {closed:.5f}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=20000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    run(args.trials, args.seed)
