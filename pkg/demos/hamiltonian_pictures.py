"""Quantum states as a classical phase space, worked on two Pauli cells.

Expectation values of self-adjoint operators are the classical
observables, the imaginary part of the inner product is the symplectic
form, and the bracket of two quadratic observables is again quadratic.
Schrodinger evolution then obeys the classical equations of motion, and
one planar oscillator flow factors through two inequivalent metrics.
"""

import numpy as np

from unitarize import (
    HermitianForm,
    QuadraticObservable,
    bracket_observable,
    ehrenfest_flow,
    factorization_check,
    planar_oscillator_pair,
    poisson_bracket,
)

SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SY = np.array([[0.0, -1j], [1j, 0.0]])
SZ = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def main():
    flat = HermitianForm.identity(2)
    fx = QuadraticObservable(SX, flat)
    fy = QuadraticObservable(SY, flat)
    psi = np.array([0.8, 0.6j])

    bracket = bracket_observable(fx, fy)
    print("bracket of the two transverse spin observables:")
    with np.printoptions(precision=3, suppress=True):
        print(bracket.operator)
    direct = poisson_bracket(fx, fy, psi)
    print(f"  value at a sample state: {direct:.6f}")
    print(f"  against the closed form: {bracket.value(psi):.6f}")

    f_energy = QuadraticObservable(SZ, flat)
    psi0 = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)
    times = np.linspace(0.0, np.pi, 9)
    flow = ehrenfest_flow(f_energy, fx, psi0, times)
    print("\ntime derivative of <Sx> along the Schrodinger flow:")
    for t, value in zip(times, flow):
        print(f"  t = {t:.3f}: d<Sx>/dt = {value:+.6f}  (exact {0.5 * np.cos(2 * t):+.6f})")

    dynamics, standard, split = planar_oscillator_pair()
    print("\nplanar oscillator, one flow, two factorizations:")
    for name, fac in (("standard", standard), ("split", split)):
        residual = factorization_check(dynamics, fac)
        print(f"  {name}: residual {residual:.1e}, energy signature {fac.signature}")
    gap = np.linalg.norm(standard.quadratic_energy - split.quadratic_energy)
    print(f"  the two energies differ by {gap:.3g} even though the flows agree")


if __name__ == "__main__":
    main()
