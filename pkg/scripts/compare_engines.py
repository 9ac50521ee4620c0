#!/usr/bin/env python3
"""Compare the fixpoint engine against the strategy-enumeration oracle on a
random corpus and report agreement and timing."""

import argparse
import random
import time

from atlstit import eval_atl, eval_atl_oracle, random_cgs
from atlstit.syntax import And, Atom, CoalG, CoalU, CoalX, Not, print_formula


def rand_formula(rng, depth, atoms=("p", "q"), agents=("a", "b")):
    if depth <= 0:
        return Atom(rng.choice(atoms))
    kind = rng.choice(("atom", "not", "and", "cx", "cg", "cu"))
    if kind == "atom":
        return Atom(rng.choice(atoms))
    if kind == "not":
        return Not(rand_formula(rng, depth - 1, atoms, agents))
    if kind == "and":
        return And(
            rand_formula(rng, depth - 1, atoms, agents),
            rand_formula(rng, depth - 1, atoms, agents),
        )
    coalition = frozenset(a for a in agents if rng.random() < 0.5)
    if kind == "cx":
        return CoalX(coalition, rand_formula(rng, depth - 1, atoms, agents))
    if kind == "cg":
        return CoalG(coalition, rand_formula(rng, depth - 1, atoms, agents))
    return CoalU(
        coalition,
        rand_formula(rng, depth - 1, atoms, agents),
        rand_formula(rng, depth - 1, atoms, agents),
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--models", type=int, default=100)
    parser.add_argument("--formulas", type=int, default=50)
    parser.add_argument("--max-states", type=int, default=4)
    parser.add_argument("--max-depth", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    fixpoint_time = oracle_time = 0.0
    mismatches = []
    pairs = 0
    for k in range(args.models):
        g = random_cgs((k % args.max_states) + 1, 2, 3, 2, args.seed + k)
        rng = random.Random(args.seed * 31 + k)
        for _ in range(args.formulas):
            phi = rand_formula(rng, rng.randint(1, args.max_depth))
            pairs += 1
            t0 = time.perf_counter()
            lhs = eval_atl(g, phi)
            t1 = time.perf_counter()
            rhs = eval_atl_oracle(g, phi)
            t2 = time.perf_counter()
            fixpoint_time += t1 - t0
            oracle_time += t2 - t1
            if lhs != rhs:
                mismatches.append((k, print_formula(phi)))

    print(f"pairs checked:   {pairs}")
    print(f"fixpoint time:   {fixpoint_time:.3f} s")
    print(f"oracle time:     {oracle_time:.3f} s")
    print(f"discrepancies:   {len(mismatches)}")
    for model, formula in mismatches[:10]:
        print(f"  model {model}: {formula}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
