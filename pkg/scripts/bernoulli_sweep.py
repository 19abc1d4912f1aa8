"""Mean edge excess vs. Bernoulli edge density, for each crossing mode.

    python scripts/bernoulli_sweep.py --seeds 20 --size 200 --points 32
"""

import argparse

import numpy as np

from edgetex.excess_graph import CROSSING_MODES, graph_excess
from edgetex.sampler import sample_edge_points
from edgetex.synth import SynthSpec, gen_mask


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--size", type=int, default=200)
    ap.add_argument("--points", type=int, default=32)
    args = ap.parse_args()

    densities = [0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.95, 1.0]
    print("p      1+p    " + "  ".join(f"{m:>16}" for m in CROSSING_MODES))
    for p in densities:
        cols = []
        for mode in CROSSING_MODES:
            pes = []
            for seed in range(args.seeds):
                em = gen_mask(SynthSpec("bernoulli_mask", args.size, args.size, density=p, seed=seed))
                pes.append(graph_excess(em, sample_edge_points(em, args.points, seed), mode).pe)
            cols.append(f"{np.mean(pes):.4f} +- {np.std(pes):.4f}")
        print(f"{p:<6} {1 + p:<6} " + "  ".join(f"{c:>16}" for c in cols))


if __name__ == "__main__":
    main()
