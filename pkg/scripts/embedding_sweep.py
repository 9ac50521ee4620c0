#!/usr/bin/env python3
"""Empirical embedding sweep over a random corpus: correspondence between the
two evaluators, validity of every axiom schema, and frame checks on bounded
unravelings."""

import argparse
import random
import time

from atlstit import (
    axiom_sweep,
    correspondence_check,
    random_cgs,
    unravel,
    verify_frame,
)
from atlstit.syntax import print_formula

from compare_engines import rand_formula


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--models", type=int, default=50)
    parser.add_argument("--formulas-per-model", type=int, default=4)
    parser.add_argument("--samples", type=int, default=8)
    parser.add_argument("--depth", type=int, default=3, help="unraveling depth")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    t0 = time.perf_counter()
    models = [
        random_cgs((k % 3) + 2, 2, 2, 2, args.seed + k) for k in range(args.models)
    ]

    disagreements = []
    triples = 0
    for k, g in enumerate(models):
        rng = random.Random(args.seed * 17 + k)
        for _ in range(args.formulas_per_model):
            phi = rand_formula(rng, rng.randint(1, 3))
            w = rng.choice(g.states)
            triples += 1
            report = correspondence_check(g, phi, w, args.samples, seed=k)
            if not report.agreement:
                disagreements.append((k, print_formula(phi), w))

    sweep = axiom_sweep(models)

    frame_failures = 0
    moments = 0
    for g in models:
        for w in g.states:
            fragment = unravel(g, w, args.depth)
            moments += len(fragment.moments)
            if verify_frame(fragment):
                frame_failures += 1

    elapsed = time.perf_counter() - t0
    print(f"models:                  {len(models)}")
    print(f"correspondence triples:  {triples} ({len(disagreements)} disagreements)")
    print(f"axiom instantiations:    {sweep.checked} "
          f"({len(sweep.counterexamples)} counterexamples)")
    print(f"frame checks:            {moments} moments ({frame_failures} failing roots)")
    print(f"elapsed:                 {elapsed:.2f} s")
    clean = not disagreements and sweep.clean and frame_failures == 0
    print("result:                  " + ("all clean" if clean else "FAILURES FOUND"))
    return 0 if clean else 1


if __name__ == "__main__":
    raise SystemExit(main())
