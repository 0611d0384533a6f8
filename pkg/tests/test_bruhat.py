import random
from fractions import Fraction

import pytest

from pvext import bruhat, linalg
from pvext.errors import CellDegeneration, NotUnimodular


def random_sl(n, rng, steps=8):
    m = linalg.eye(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        gen = linalg.eye(n)
        gen[i][j] = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        m = linalg.mat_mul(m, gen)
    return m


def test_identity_trivial():
    form = bruhat.bruhat_decompose(linalg.eye(3))
    assert form.perm == (1, 2, 3)
    assert form.word == ()
    assert linalg.mat_eq([list(r) for r in form.uprime], linalg.eye(3))
    assert linalg.mat_eq([list(r) for r in form.t], linalg.eye(3))
    assert linalg.mat_eq([list(r) for r in form.u], linalg.eye(3))
    assert all(not x for x in form.x) and all(not y for y in form.y)
    assert all(z == 1 for z in form.z)


def test_sl4_longest_representative():
    nw = [[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]]
    form = bruhat.bruhat_decompose(nw, "negative")
    assert form.perm == (4, 3, 2, 1)
    assert all(not x for x in form.x) and all(not y for y in form.y)
    # the input equals the canonical representative up to a torus factor
    assert linalg.mat_eq(form.recompose(), [[Fraction(v) for v in row] for row in nw])


def test_recompose_oracle_random():
    rng = random.Random(101)
    for n in (3, 4):
        for _ in range(60):
            m = random_sl(n, rng)
            for convention in ("negative", "positive"):
                form = bruhat.bruhat_decompose(m, convention)
                assert linalg.mat_eq(form.recompose(), m)


def test_uniqueness_double_decomposition():
    rng = random.Random(102)
    for _ in range(40):
        m = random_sl(3, rng)
        form = bruhat.bruhat_decompose(m)
        again = bruhat.bruhat_decompose(form.recompose())
        assert form == again


def test_cell_invariant_under_lower_unipotent():
    # the permutation only depends on the double coset
    rng = random.Random(103)
    for _ in range(25):
        m = random_sl(4, rng)
        base = bruhat.bruhat_decompose(m).perm
        left = linalg.eye(4)
        left[2][0] = Fraction(rng.randint(-5, 5), 3)
        right = linalg.eye(4)
        right[3][1] = Fraction(rng.randint(-5, 5), 2)
        assert bruhat.bruhat_decompose(linalg.mat_mul(left, m)).perm == base
        assert bruhat.bruhat_decompose(linalg.mat_mul(m, right)).perm == base


def test_sl2_relation_identity():
    # n ubar_{-a}(x) = ubar_{-a}(-1/x) t(x) ubar_a(1/x) for nonzero rational x
    rng = random.Random(104)
    for _ in range(50):
        x = Fraction(rng.randint(1, 30), rng.randint(1, 9)) * rng.choice([1, -1])
        n = [[0, 1], [-1, 0]]
        lhs = linalg.mat_mul(n, [[1, 0], [x, 1]])
        rhs = linalg.mat_mul(
            linalg.mat_mul([[1, 0], [-1 / x, 1]], [[x, 0], [0, 1 / x]]),
            [[1, 1 / x], [0, 1]],
        )
        assert linalg.mat_eq(lhs, rhs)


def _big_cell_matrix(n, rng):
    while True:
        m = random_sl(n, rng)
        form = bruhat.bruhat_decompose(m)
        if form.perm == bruhat.longest_permutation(n):
            return m, form


def test_act_identity():
    rng = random.Random(105)
    y0, form = _big_cell_matrix(3, rng)
    acted = bruhat.act_on_normal_form(y0, linalg.eye(3))
    assert acted == form


def test_act_lower_borel_fixes_x():
    rng = random.Random(106)
    for _ in range(10):
        y0, form = _big_cell_matrix(3, rng)
        g = [[Fraction(2), 0, 0],
             [Fraction(rng.randint(-4, 4), 3), Fraction(1, 2), 0],
             [Fraction(rng.randint(-4, 4), 2), Fraction(rng.randint(-4, 4), 5), Fraction(1)]]
        if linalg.det(g) != 1:
            g[2][2] = 1 / (Fraction(2) * Fraction(1, 2))
        acted = bruhat.act_on_normal_form(y0, g)
        assert acted.x == form.x


def test_act_cell_degeneration():
    # u(y) alone lies in the cell of the identity, not the big cell
    y0 = [[Fraction(1), 0, 0], [Fraction(2), 1, 0], [Fraction(3), 4, 1]]
    with pytest.raises(CellDegeneration):
        bruhat.act_on_normal_form(y0, linalg.eye(3))


def test_not_unimodular():
    with pytest.raises(NotUnimodular):
        bruhat.bruhat_decompose([[2, 0], [0, 1]])


def test_coefficients_reproduce_factors():
    # x/z/y tuples rebuild the factors through the one-parameter products
    rng = random.Random(107)
    from pvext import chevalley

    rep = bruhat._sl_rep(4)
    for _ in range(10):
        m = random_sl(4, rng)
        form = bruhat.bruhat_decompose(m, "negative")
        rebuilt = linalg.eye(4)
        for i, root in enumerate(rep.rs.neg_order):
            rebuilt = linalg.mat_mul(
                rebuilt, chevalley.unipotent_element(rep, root, form.x[i])
            )
        assert linalg.mat_eq(rebuilt, [list(r) for r in form.uprime])
        rebuilt_t = linalg.eye(4)
        for i, z in enumerate(form.z, start=1):
            rebuilt_t = linalg.mat_mul(rebuilt_t, chevalley.torus_element(rep, i, z))
        assert linalg.mat_eq(rebuilt_t, [list(r) for r in form.t])


def test_positive_convention_coefficients_rebuild():
    rng = random.Random(108)
    from pvext import chevalley

    rep = bruhat._sl_rep(3)
    for _ in range(10):
        m = random_sl(3, rng)
        form = bruhat.bruhat_decompose(m, "positive")
        rebuilt = linalg.eye(3)
        for i, root in enumerate(rep.rs.neg_order):
            rebuilt = linalg.mat_mul(
                rebuilt, chevalley.unipotent_element(rep, -root, form.y[i])
            )
        assert linalg.mat_eq(rebuilt, [list(r) for r in form.u])
