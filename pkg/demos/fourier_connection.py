"""Connections between two operators, and where the Fourier matrix hides.

Averaging T1^-k X T2^k produces a connector that intertwines the two
operators whenever their spectra share points, and vanishes when they do
not.  Feeding the clock and shift of one Weyl pair into the weighted
version reproduces the discrete Fourier matrix entry by entry.
"""

import argparse

import numpy as np

from unitarize import are_intertwined, intertwiner, intertwiner_scaled, make_clock_shift
from unitarize.fixtures import invertible_with_condition, unimodular_phases


def conjugated_diagonal(rng, phases, cond):
    s = invertible_with_condition(rng, len(phases), cond)
    return np.linalg.solve(s, np.exp(1j * phases)[:, None] * s)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=2)
    parser.add_argument("--dim", type=int, default=4)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    phases = unimodular_phases(rng, args.dim + 2, min_gap=0.1)
    shared = phases[: args.dim]
    moved = np.concatenate([phases[: args.dim - 2], phases[args.dim :]])
    t1 = conjugated_diagonal(rng, shared, 10.0)
    t2 = conjugated_diagonal(rng, moved, 10.0)

    result = intertwiner(t1, t2)
    print(f"spectra share {result.rank} of {args.dim} eigenvalues")
    print(f"  connector is nonzero: {result.nonzero}")
    print(f"  intertwines the pair: {are_intertwined(t1, t2, result.in_first_metric)}")
    for key, value in sorted(result.relation_residuals.items()):
        print(f"  {key}: {value:.3e}")

    disjoint = conjugated_diagonal(rng, phases[: args.dim] + 0.05, 10.0)
    gone = intertwiner(t1 @ np.eye(args.dim), disjoint)
    print(f"\nafter rotating every eigenvalue: rank {gone.rank}, "
          f"norm {np.linalg.norm(gone.in_fiducial_metric):.3e}")

    shift, clock, _ = make_clock_shift(args.dim)
    connector = intertwiner_scaled(clock, shift, 1.0)
    j = np.arange(args.dim)
    fourier = np.exp(-2j * np.pi * np.outer(j, j) / args.dim) / np.sqrt(args.dim)
    print(f"\nclock-to-shift connector at constant weight, dimension {args.dim}:")
    with np.printoptions(precision=3, suppress=True):
        print(connector)
    print(f"  entrywise gap to the Fourier matrix: {np.abs(connector - fourier).max():.3e}")


if __name__ == "__main__":
    main()
