"""The SL4 construction, stage by stage.

Follows the rank-3 worked example: the logarithmic derivative of the
negative unipotent product, the adjoint image of the principal nilpotent,
the solvable defining matrix with its tower of exponentials and integrals,
the reduction of the auxiliary indeterminates, and the three differential
invariants whose values fill the generic defining matrix.
"""

from pvext import construct


def main():
    result = construct.run_pipeline("A", 3)
    rs = result.rep.rs
    print("negative roots:", [list(b.coeffs) for b in rs.neg_order])
    print("complementary indices:", list(rs.comp_roots))
    print()

    print("stage 1 - coefficients of ldelta(u(eta_1)...u(eta_6)) beyond eta_i':")
    for i, v in sorted(result.stage1.v.items()):
        print("  v_%d = %s" % (i, v.text()))
    print()

    print("stage 2 - Ad(u)(A_0^+) = A_0^+ + sum g_i H_i + sum (l_i + p_i) X_i:")
    for i, g in enumerate(result.stage2.g, 1):
        print("  g_%d = %s" % (i, g.text()))
    for i in range(6):
        print("  l_%d = %-12s p_%d = %s" % (
            i + 1, result.stage2.ell[i].text(), i + 1, result.stage2.p[i].text()))
    print()

    print("solvable defining matrix A_L (c = %s):" % (list(result.liouville.c),))
    for row in result.liouville.A_L:
        print("   ", [x.text() for x in row])
    print()

    print("exponentials and integrals of the solution tower:")
    for i, z in enumerate(result.liouville.z, 1):
        print("  z_%d = %s" % (i, z.text()))
    for i, y in enumerate(result.liouville.y, 1):
        print("  y_%d = %s" % (i, y.text()))
    print()

    print("coefficients of ldelta(Y), Y = u(eta) n(wbar) t(z) u(y):")
    for i, h in enumerate(result.h_raw, 1):
        print("  h_%d = %s" % (i, h.text()))
    print()

    print("elimination of the non-complementary indeterminates:")
    for k, f in sorted(result.invariants.f.items()):
        print("  eta_%d = %s" % (k, f.text()))
    print()

    print("the three differential invariants:")
    for j, h in sorted(result.invariants.h.items()):
        print("  h[%d] = %s" % (j, h.text()))
    print()

    print("generic defining matrix A_G(h):")
    for row in result.A_G:
        print("   ", [x.text() for x in row])
    print()

    report = construct.verify_end_to_end(result.rep, result.liouville, result.invariants)
    print("end-to-end identity d(Y) = A_G(h) Y:", report["status"],
          "(%d entries)" % report["entries_checked"])


if __name__ == "__main__":
    main()
