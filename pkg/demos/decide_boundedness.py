"""Decide which matrices stay bounded under iteration in both directions.

Three specimens: a conjugated unitary (bounded), the same spectrum with one
eigenvalue nudged off the circle (blows up forward or backward), and a
Jordan block on the circle (grows linearly).  The verdict comes with
sampled power norms so the growth is visible, not just asserted.
"""

import argparse

import numpy as np

from unitarize import check_uniformly_bounded, sampled_power_norms
from unitarize.fixtures import (
    conjugated_unitary,
    defective_unimodular,
    off_circle_fixture,
    unimodular_phases,
)


def describe(name, operator):
    report = check_uniformly_bounded(operator)
    print(f"{name}: verdict = {report.verdict}")
    if report.verdict != "uniformly_bounded":
        print(f"  off circle: {report.off_circle}, defective: {report.defective}")
    norms = sampled_power_norms(operator, 64)
    for k in (-64, -16, -4, -1, 1, 4, 16, 64):
        print(f"  |T^{k:+d}| = {norms[k]:.4g}")
    if report.bound_estimate is not None:
        print(f"  bound estimate: {report.bound_estimate:.4g}")
    print()


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--dim", type=int, default=4)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    phases = unimodular_phases(rng, args.dim, min_gap=0.1)
    bounded, _, _ = conjugated_unitary(rng, args.dim, 20.0, phases)

    describe("conjugated unitary", bounded)
    describe("one modulus off the circle", off_circle_fixture(rng, args.dim, 20.0))
    describe("Jordan block on the circle", defective_unimodular(rng, args.dim, 20.0))


if __name__ == "__main__":
    main()
