"""One sampled presentation, X_N along a schedule for every pairing of each k.

    python scripts/run_random_model.py configs/random_half.json
"""

import sys
from fractions import Fraction

from coxclt.moments import limit_polynomial_q
from coxclt.partitions import enumerate_pair_partitions
from coxclt.random_model import convergence_experiment, load_config


def main(path):
    cfg = load_config(path)
    for k in cfg.k_list:
        limit = limit_polynomial_q(k)
        series = [convergence_experiment(cfg, v) for v in enumerate_pair_partitions(k)]
        print(f"k={k}: limit {limit} at p={cfg.p} -> {float(limit(cfg.p)):.6f}")
        for i, N in enumerate(cfg.N_schedule):
            total = sum((s.rows[i].value for s in series), Fraction(0))
            inside = sum(s.rows[i].within() for s in series)
            print(f"  N={N:>6}  sum X_N={float(total):.6f}  within 3 sigma: {inside}/{len(series)}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "configs/random_half.json")
