import random
from fractions import Fraction

import pytest

from pvext import chevalley, linalg, rootsys, symgroup
from pvext.diffpoly import DiffPoly, parse
from pvext.errors import NotClosedFormInvertible, NotInLieAlgebra
from pvext.liouville_expr import ExpIntegral, LiouvExpr, Scalar

from conftest import get_rep


def test_logderiv_identity(rep_a3):
    m = symgroup.SymMatrix(tuple(tuple(r) for r in linalg.eye(4)), "constant")
    assert linalg.mat_is_zero(symgroup.log_derivative(m))


def test_logderiv_unipotent_generator(rep_a3):
    for i in range(1, 7):
        u = symgroup.unipotent_matrix(rep_a3, rep_a3.rs.neg_order[i - 1], DiffPoly.eta(i))
        ld = symgroup.log_derivative(u)
        want = [[DiffPoly.eta(i, 1) * x for x in row] for row in rep_a3.x_neg(i)]
        assert linalg.mat_eq(ld, want)


def test_logderiv_torus_exponential(rep_a3):
    z = ExpIntegral(Scalar(parse("0 - n3")))
    t = symgroup.torus_matrix(rep_a3, 1, z)
    ld = symgroup.log_derivative(t)
    want = [[Scalar(parse("0 - n3") * x) for x in row] for row in rep_a3.H[0]]
    assert linalg.mat_eq(linalg.mat_sub(ld, want), linalg.zeros(4, LiouvExpr.zero()))


def test_adjoint_identity(rep_a2):
    a = [[DiffPoly.eta(1) * x for x in row] for row in rep_a2.H[0]]
    g = symgroup.SymMatrix(tuple(tuple(r) for r in linalg.eye(3)), "constant")
    assert linalg.mat_eq(symgroup.adjoint(g, a), a)


def test_adjoint_formulas_on_cartan(rep_a3):
    # Ad(u_beta(x))(H_alpha) = H_alpha - <alpha, beta> x X_beta
    x = DiffPoly.eta(1)
    for beta in rep_a3.rs.roots:
        u = symgroup.unipotent_matrix(rep_a3, beta, x)
        for i in range(1, 4):
            alpha = rep_a3.rs.simple(i)
            got = symgroup.adjoint(u, [[DiffPoly.rational(v) for v in row] for row in rep_a3.H[i - 1]])
            pairing = rootsys.cartan_integer(rep_a3.rs, alpha, beta)
            want = linalg.mat_sub(
                [[DiffPoly.rational(v) for v in row] for row in rep_a3.H[i - 1]],
                [[(x * pairing) * v for v in row] for row in rep_a3.X[beta.coeffs]],
            )
            assert linalg.mat_eq(got, want)


def test_adjoint_formula_on_opposite_vector(rep_a3):
    # Ad(u_beta(x))(X_{-beta}) = X_{-beta} + x H_beta - x^2 X_beta
    x = DiffPoly.eta(2)
    for beta in rep_a3.rs.roots:
        u = symgroup.unipotent_matrix(rep_a3, beta, x)
        got = symgroup.adjoint(
            u, [[DiffPoly.rational(v) for v in row] for row in rep_a3.X[(-beta).coeffs]]
        )
        hbeta = rep_a3.cartan_combination(rep_a3.coroot_coefficients(beta))
        want = [[DiffPoly.rational(v) for v in row] for row in rep_a3.X[(-beta).coeffs]]
        want = linalg.mat_add(want, [[x * v for v in row] for row in hbeta])
        want = linalg.mat_sub(want, [[(x * x) * v for v in row] for row in rep_a3.X[beta.coeffs]])
        assert linalg.mat_eq(got, want)


def test_gauge_identity_and_zero(rep_a2):
    a = [[DiffPoly.eta(1) * x for x in row] for row in rep_a2.a0_plus()]
    ident = symgroup.SymMatrix(tuple(tuple(r) for r in linalg.eye(3)), "constant")
    assert linalg.mat_eq(symgroup.gauge(ident, a), a)
    u = symgroup.unipotent_matrix(rep_a2, rep_a2.rs.neg_order[0], DiffPoly.eta(1))
    zero = linalg.zeros(3, DiffPoly.zero())
    assert linalg.mat_eq(symgroup.gauge(u, zero), symgroup.log_derivative(u))


def test_gauge_riccati(rep_a1):
    # gauge(u_{-a}(eta1), A_0^+ + eta1 H_1) = [[0, 1], [eta1' + eta1^2, 0]]
    a = linalg.mat_add(
        [[DiffPoly.rational(v) for v in row] for row in rep_a1.a0_plus()],
        [[DiffPoly.eta(1) * v for v in row] for row in rep_a1.H[0]],
    )
    u = symgroup.unipotent_matrix(rep_a1, rep_a1.rs.neg_order[0], DiffPoly.eta(1))
    got = symgroup.gauge(u, a)
    want = [
        [DiffPoly.zero(), DiffPoly.rational(1)],
        [parse("n1' + n1^2"), DiffPoly.zero()],
    ]
    assert linalg.mat_eq(got, want)


def test_decompose_v6_fixture(rep_a3):
    from pvext import construct

    u = construct.unipotent_product(rep_a3, [DiffPoly.eta(i) for i in range(1, 7)])
    uinv = linalg.unipotent_inverse(u, DiffPoly.rational(1))
    du = [[x.derive() for x in row] for row in u]
    dec = symgroup.decompose_in_basis(rep_a3, linalg.mat_mul(du, uinv))
    coef = dec[("X", (-1, -1, -1))]
    assert coef == parse("n6' + n3 n4' - n5' n1 + n3' n2 n1")


def test_decompose_rejects_trace(rep_a3):
    with pytest.raises(NotInLieAlgebra):
        symgroup.decompose_in_basis(rep_a3, linalg.eye(4))


def test_general_inverse_refused():
    m = symgroup.SymMatrix(((DiffPoly.eta(1), DiffPoly.zero()), (DiffPoly.zero(), DiffPoly.eta(2))))
    with pytest.raises(NotClosedFormInvertible):
        symgroup.log_derivative(m)


def _random_structured_factors(rep, rng, count):
    factors = []
    for _ in range(count):
        kind = rng.choice(["unipotent", "torus", "weyl"])
        if kind == "unipotent":
            root = rng.choice(rep.rs.neg_order + tuple(-b for b in rep.rs.neg_order))
            arg = DiffPoly.eta(rng.randint(1, rep.m), rng.randint(0, 1)) * rng.randint(1, 3)
            factors.append(symgroup.unipotent_matrix(rep, root, arg))
        elif kind == "torus":
            z = Fraction(rng.choice([1, 2, 3, -1, -2]), rng.choice([1, 2]))
            factors.append(symgroup.torus_matrix(rep, rng.randint(1, rep.rank), z))
        else:
            word = tuple(rng.randint(1, rep.rank) for _ in range(rng.randint(1, 3)))
            factors.append(
                symgroup.SymMatrix(
                    tuple(tuple(r) for r in chevalley.weyl_representative(rep, word)),
                    "constant",
                )
            )
    return factors


def test_product_rule_randomized():
    rng = random.Random(21)
    for t, r in [("A", 2), ("A", 3)]:
        rep = get_rep(t, r)
        for _ in range(20):
            factors = _random_structured_factors(rep, rng, 2)
            a, b = factors
            ab = linalg.mat_mul(a.lists(), b.lists())
            lhs = linalg.mat_mul(
                [[_dp_derive(x) for x in row] for row in ab],
                _structured_inverse_product(b, a),
            )
            rhs = linalg.mat_add(
                symgroup.log_derivative(a), symgroup.adjoint(a, symgroup.log_derivative(b))
            )
            assert linalg.mat_eq(_dp_lift(lhs), _dp_lift(rhs))


def _dp_derive(x):
    if isinstance(x, Fraction):
        return Fraction(0)
    return x.derive()


def _dp_lift(m):
    return [
        [x if isinstance(x, DiffPoly) else DiffPoly.rational(x) for x in row]
        for row in m
    ]


def _structured_inverse_product(b, a):
    return linalg.mat_mul(b.inverse(), a.inverse())


def test_log_derivative_lands_in_lie_algebra():
    # every product of generators maps into the span of the basis
    rng = random.Random(22)
    for t, r in [("A", 2), ("A", 3), ("G2", 2)]:
        rep = get_rep(t, r)
        for _ in range(10):
            factors = _random_structured_factors(rep, rng, 3)
            ld = symgroup.log_derivative(factors)
            symgroup.decompose_in_basis(rep, _dp_lift(ld))


def test_adjoint_preserves_brackets():
    rng = random.Random(23)
    rep = get_rep("A", 3)
    basis = [rep.H[0], rep.H[2]] + [rep.X[b.coeffs] for b in rep.rs.neg_order[:4]]
    for _ in range(20):
        g = _random_structured_factors(rep, rng, 1)[0]
        a = _dp_lift(rng.choice(basis))
        b = _dp_lift(rng.choice(basis))
        lhs = symgroup.adjoint(g, linalg.bracket(a, b))
        rhs = linalg.bracket(_dp_lift(symgroup.adjoint(g, a)), _dp_lift(symgroup.adjoint(g, b)))
        assert linalg.mat_eq(_dp_lift(lhs), rhs)


def test_tag_truthfulness():
    with pytest.raises(ValueError):
        symgroup.SymMatrix(((Fraction(1), Fraction(0)), (Fraction(0), Fraction(2))), "unipotent_lower")
    with pytest.raises(ValueError):
        symgroup.SymMatrix(((Fraction(1), Fraction(1)), (Fraction(0), Fraction(0))), "torus_diagonal")
    with pytest.raises(ValueError):
        symgroup.SymMatrix(((DiffPoly.eta(1), DiffPoly.zero()), (DiffPoly.zero(), DiffPoly.eta(1))), "constant")
