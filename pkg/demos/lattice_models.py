"""Three operators on a finite grid with metrics known in closed form.

A weighted cyclic shift, a weighted reflection, and a weighted
translation all act on functions over Z/dZ.  Each one is power bounded,
each invariant metric is diagonal with an explicit formula, and the
translation spectrum fills the circle as densely as the grid allows.
"""

import argparse

import numpy as np

from unitarize import (
    build,
    cyclic_shift_model,
    expected_spectrum,
    invariant_metric,
    parity_metric_diagonal,
    parity_model,
    shift_orbit_means,
    spectrum_match_report,
    translation_metric_diagonal,
    translation_model,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=4)
    parser.add_argument("--size", type=int, default=8)
    args = parser.parse_args()
    if args.size % 2:
        raise SystemExit("the reflection model needs an even grid")

    rng = np.random.default_rng(args.seed)

    density = rng.uniform(0.5, 2.0, args.size)
    spec = cyclic_shift_model(density)
    T, weighted = build(spec)
    gram = invariant_metric(T, weighted).invariant_form.gram
    print(f"weighted cyclic shift on {args.size} sites:")
    print(f"  diagonal against the orbit means: "
          f"{np.abs(np.diag(gram) - shift_orbit_means(spec)).max():.3e}")
    print(f"  off-diagonal mass: "
          f"{np.abs(gram - np.diag(np.diag(gram))).max():.3e}")

    magnitude = np.exp(rng.uniform(-0.7, 0.7, args.size))
    phase = rng.uniform(0.0, 2.0 * np.pi, args.size)
    spec = parity_model(magnitude, phase)
    T, _ = build(spec)
    q = invariant_metric(T).positive_similarity
    closed = parity_metric_diagonal(spec)
    print(f"\nweighted reflection on {args.size} sites:")
    print(f"  Q^2 against (1 + m(-x)^2/m(x)^2)/2: {np.abs(np.diag(q @ q) - closed).max():.3e}")
    print(f"  worst eigenvalue distance to the closed spectrum: "
          f"{spectrum_match_report(spec)['worst_eigenvalue_distance']:.3e}")

    value = 1.4
    magnitude = np.where(np.arange(args.size) % 2 == 0, value, 1.0 / value)
    spec = translation_model(magnitude, phase)
    T, _ = build(spec)
    q = invariant_metric(T).positive_similarity
    closed = translation_metric_diagonal(spec)
    report = spectrum_match_report(spec)
    print(f"\nweighted translation on {args.size} sites:")
    print(f"  Q^2 against (1 + m(x)^2)/2: {np.abs(np.diag(q @ q) - closed).max():.3e}")
    print(f"  covering radius of the spectrum: {report['covering_radius']:.4f}"
          f"  (grid bound {2 * np.pi / args.size:.4f})")
    with np.printoptions(precision=3, suppress=True):
        print("  spectrum phases:", np.sort(np.angle(expected_spectrum(spec))))


if __name__ == "__main__":
    main()
