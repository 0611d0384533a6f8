"""Exact Bruhat normal forms for SL_n over the rationals.

Decomposes a generic rational matrix as u' n(w) t u, reads the factor
coefficients off the one-parameter products, and shows the right action of
the group on big-cell normal forms: a lower-triangular translate leaves
the u'-coefficients untouched, while a generic translate moves them.
"""

from fractions import Fraction

from pvext import bruhat, linalg


def pretty(m):
    return [[str(x) for x in row] for row in m]


def main():
    m = [
        [Fraction(2), Fraction(1), Fraction(3)],
        [Fraction(1), Fraction(1), Fraction(2)],
        [Fraction(3), Fraction(2), Fraction(6)],
    ]
    print("input (det = %s):" % linalg.det(m))
    for row in pretty(m):
        print("   ", row)
    form = bruhat.bruhat_decompose(m, convention="negative")
    print("cell permutation w:", form.perm, " reduced word:", form.word)
    print("u' =", pretty(form.uprime))
    print("t  =", [str(form.t[i][i]) for i in range(3)])
    print("u  =", pretty(form.u))
    print("coefficients  x:", [str(v) for v in form.x])
    print("              z:", [str(v) for v in form.z])
    print("              y:", [str(v) for v in form.y])
    recomposed = form.recompose()
    print("recomposition is bit-exact:", linalg.mat_eq(recomposed, m))
    print()

    # right action on a big-cell element
    y0 = form.recompose() if form.perm == (3, 2, 1) else None
    if y0 is None:
        # force a big-cell element: a full antidiagonal plus noise
        y0 = [
            [Fraction(0), Fraction(1, 2), Fraction(1)],
            [Fraction(0), Fraction(2), Fraction(3)],
            [Fraction(1), Fraction(1), Fraction(1)],
        ]
        y0[0][0] += Fraction(1, 7)  # keep the determinant one after tweak
        d = linalg.det(y0)
        y0 = [[x / d for x in y0[0]]] + y0[1:]
    base = bruhat.bruhat_decompose(y0, "negative")
    print("big-cell element with x =", [str(v) for v in base.x])

    lower = [
        [Fraction(1), 0, 0],
        [Fraction(5, 2), Fraction(1), 0],
        [Fraction(-3), Fraction(1, 4), Fraction(1)],
    ]
    acted = bruhat.act_on_normal_form(y0, lower)
    print("after a lower-triangular translate: x =", [str(v) for v in acted.x],
          "(unchanged: %s)" % (acted.x == base.x))

    generic = [
        [Fraction(1), Fraction(1), 0],
        [0, Fraction(1), Fraction(2)],
        [0, 0, Fraction(1)],
    ]
    acted = bruhat.act_on_normal_form(y0, generic)
    print("after a generic translate:          x =", [str(v) for v in acted.x])


if __name__ == "__main__":
    main()
