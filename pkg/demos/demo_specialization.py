"""Specializing the generic equation.

The invariants h are free parameters: substituting concrete values for the
indeterminates eta specializes the generic defining matrix A_G(h) to a
concrete equation.  The simplest case is rank one, where h = eta' + eta^2
is the Riccati transform: eta = 0 gives the defining matrix of y'' = 0,
and any other substitution produces the equation whose coefficient is the
transformed value.
"""

from fractions import Fraction

from pvext import construct
from pvext.diffpoly import DiffPoly, parse


def show_matrix(m):
    for row in m:
        print("   ", [x.text() for x in row])


def main():
    res1 = construct.run_pipeline("A", 1)
    print("rank one: invariant h =", res1.invariants.h[1].text())
    values, matrix = construct.specialize(res1.rep, res1.invariants, {1: DiffPoly.zero()})
    print("eta_1 -> 0 gives h =", values[1].text(), "and the matrix")
    show_matrix(matrix)
    values, matrix = construct.specialize(res1.rep, res1.invariants, {1: parse("n1^2")})
    print("eta_1 -> eta_1^2 transforms h to", values[1].text())
    print()

    res3 = construct.run_pipeline("A", 3)
    constants = {1: Fraction(2), 2: Fraction(-1), 3: Fraction(1, 3)}
    sigma = {i: DiffPoly.rational(c) for i, c in constants.items()}
    values, matrix = construct.specialize(res3.rep, res3.invariants, sigma)
    print("rank three at eta = (2, -1, 1/3): constant invariant values")
    for j, v in sorted(values.items()):
        print("  h[%d] ->" % j, v.text())
    print("specialized defining matrix:")
    show_matrix(matrix)


if __name__ == "__main__":
    main()
