"""Exact Bruhat normal forms for SL_n over the rationals.

Every matrix of determinant one factors uniquely as u' n(w) t u once a
Borel subgroup and coset representatives n(w) are fixed.  Both conventions
are supported: "positive" (u', u upper unipotent) and "negative" (lower
unipotent, the convention of the big-cell normal forms used elsewhere in
this package).  Representatives are the canonical products of the
[[0,1],[-1,0]] blocks along a deterministic reduced word.

The factor coefficients are read back off the factors: x and y through the
ordered one-parameter products u_1(x_1)...u_m(x_m), z through the diagonal
of t.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import chevalley, linalg
from .errors import CellDegeneration, NotUnimodular


@dataclass(frozen=True)
class BruhatForm:
    convention: str
    uprime: tuple
    perm: tuple  # w as a permutation: k -> perm[k-1], 1-based values
    word: tuple  # reduced word for w in simple transpositions
    t: tuple
    u: tuple
    x: tuple = ()  # coefficients of uprime in the ordered root product
    z: tuple = ()  # subtorus coordinates of t
    y: tuple = ()  # coefficients of u

    def recompose(self):
        n = len(self.uprime)
        nw = representative_matrix(n, self.word)
        out = linalg.mat_mul([list(r) for r in self.uprime], nw)
        out = linalg.mat_mul(out, [list(r) for r in self.t])
        return linalg.mat_mul(out, [list(r) for r in self.u])


def _frac_matrix(m):
    return [[Fraction(x) for x in row] for row in m]


def _simple_block(n, i):
    """The canonical representative of the i-th simple reflection."""
    out = linalg.eye(n)
    out[i - 1][i - 1] = Fraction(0)
    out[i][i] = Fraction(0)
    out[i - 1][i] = Fraction(1)
    out[i][i - 1] = Fraction(-1)
    return out


def reduced_word(perm):
    """Deterministic reduced word (smallest descent first) for a permutation
    given in one-line notation, 1-based values."""
    line = list(perm)
    word = []
    while True:
        descent = next(
            (i for i in range(len(line) - 1) if line[i] > line[i + 1]), None
        )
        if descent is None:
            break
        line[descent], line[descent + 1] = line[descent + 1], line[descent]
        word.append(descent + 1)
    word.reverse()
    return tuple(word)


def representative_matrix(n, word):
    out = linalg.eye(n)
    for i in word:
        out = linalg.mat_mul(out, _simple_block(n, i))
    return out


def longest_permutation(n):
    return tuple(range(n, 0, -1))


def bruhat_decompose(mat, convention="negative"):
    """The unique factorization u' n(w) t u of an exact SL_n matrix.

    The permutation is found by deterministic elimination; all factors are
    exact and the recomposition is asserted to reproduce the input
    bit-exactly.  Raises NotUnimodular unless det = 1.
    """
    m = _frac_matrix(mat)
    n = len(m)
    if linalg.det(m) != 1:
        raise NotUnimodular("determinant is %s" % linalg.det(m))
    if convention == "positive":
        form = _decompose_positive(m)
    elif convention == "negative":
        form = _decompose_negative(m)
    else:
        raise ValueError("convention must be 'positive' or 'negative'")
    if not linalg.mat_eq(form.recompose(), m):
        raise AssertionError("Bruhat recomposition failed")
    return form


def _decompose_positive(m):
    n = len(m)
    work = [list(row) for row in m]
    # column elimination: adding earlier columns to later ones
    vmat = linalg.eye(n)  # accumulated right factor, upper unipotent
    pivot_of_col = {}
    col_of_row = {}
    for j in range(n):
        while True:
            b = max((i for i in range(n) if work[i][j]), default=None)
            assert b is not None
            k = col_of_row.get(b)
            if k is None:
                pivot_of_col[j] = b
                col_of_row[b] = j
                break
            factor = work[b][j] / work[b][k]
            for i in range(n):
                work[i][j] -= factor * work[i][k]
            for i in range(n):
                vmat[i][j] -= factor * vmat[i][k]
    # row elimination: clear above each pivot
    wmat = linalg.eye(n)  # accumulated left operations, upper unipotent
    for j in sorted(range(n), key=lambda c: pivot_of_col[c]):
        p = pivot_of_col[j]
        for i in range(p):
            if work[i][j]:
                factor = work[i][j] / work[p][j]
                work[i] = [a - factor * b for a, b in zip(work[i], work[p])]
                wmat[i] = [a - factor * b for a, b in zip(wmat[i], wmat[p])]
    # work = n(w) t now; perm maps column k -> row perm(k)
    perm = tuple(pivot_of_col[j] + 1 for j in range(n))
    word = reduced_word(perm)
    nw = representative_matrix(n, word)
    t = linalg.mat_mul(linalg.rational_inverse(nw), work)
    for i in range(n):
        for j in range(n):
            if i != j and t[i][j]:
                raise AssertionError("torus factor is not diagonal")
    uprime = linalg.rational_inverse(wmat)
    u = linalg.rational_inverse(vmat)
    uprime, u = _reduce_uprime(uprime, u, perm, nw, t)
    _check_uprime_pattern(uprime, perm, upper=True)
    return BruhatForm(
        convention="positive",
        uprime=_freeze(uprime),
        perm=perm,
        word=word,
        t=_freeze(t),
        u=_freeze(u),
        x=_peel_coefficients(uprime, upper=True),
        z=_torus_coordinates(t),
        y=_peel_coefficients(u, upper=True),
    )


def _reduce_uprime(uprime, u, perm, nw, t):
    """Push the w-fixed unipotent part of u' through n(w) t into u.

    Uniqueness of the factorization needs u' in U'_w = U cap n(w) U^- n(w)^{-1};
    the elimination above only guarantees u' in U.  Entries at positions
    fixed by w (i < j with perm^{-1}(i) < perm^{-1}(j)) are peeled off from
    the right, closest to the diagonal first, and absorbed into u.
    """
    n = len(uprime)
    inv = {v: k + 1 for k, v in enumerate(perm)}
    push_positions = sorted(
        (
            (j - i, i, j)
            for i in range(1, n + 1)
            for j in range(i + 1, n + 1)
            if inv[i] < inv[j]
        )
    )
    residual = [list(map(Fraction, row)) for row in uprime]
    push = linalg.eye(n)
    for _, i, j in push_positions:
        c = residual[i - 1][j - 1]
        if not c:
            continue
        gen = linalg.eye(n)
        gen[i - 1][j - 1] = -c
        residual = linalg.mat_mul(residual, gen)
        gen[i - 1][j - 1] = c
        push = linalg.mat_mul(gen, push)
    nt = linalg.mat_mul(nw, t)
    conj = linalg.mat_mul(
        linalg.mat_mul(linalg.rational_inverse(nt), push), nt
    )
    new_u = linalg.mat_mul(conj, u)
    for i in range(n):
        if new_u[i][i] != 1:
            raise AssertionError("absorbed factor is not unipotent")
        for j in range(i):
            if new_u[i][j]:
                raise AssertionError("absorbed factor is not upper")
    return residual, new_u


def _decompose_negative(m):
    n = len(m)
    j = [[Fraction(1) if i + k == n - 1 else Fraction(0) for k in range(n)] for i in range(n)]
    conj = linalg.mat_mul(linalg.mat_mul(j, m), j)
    pos = _decompose_positive(conj)
    flip = lambda mat: _freeze(linalg.mat_mul(linalg.mat_mul(j, [list(r) for r in mat]), j))
    perm = tuple(n + 1 - pos.perm[n - 1 - k] for k in range(n))
    word = reduced_word(perm)
    uprime = flip(pos.uprime)
    t = flip(pos.t)
    u = flip(pos.u)
    nw = representative_matrix(n, word)
    # adjust the torus factor for the representative change
    flipped_rep = linalg.mat_mul(
        linalg.mat_mul(j, representative_matrix(n, pos.word)), j
    )
    # both matrices represent the same Weyl element, so they differ by a
    # torus factor that folds into t
    tweak = linalg.mat_mul(linalg.rational_inverse(nw), flipped_rep)
    for a in range(n):
        for b in range(n):
            if a != b and tweak[a][b]:
                raise AssertionError("representative change is not a torus factor")
    t = _freeze(linalg.mat_mul(tweak, [list(r) for r in t]))
    _check_uprime_pattern([list(r) for r in uprime], perm, upper=False)
    return BruhatForm(
        convention="negative",
        uprime=uprime,
        perm=perm,
        word=word,
        t=t,
        u=u,
        x=_peel_coefficients([list(r) for r in uprime], upper=False),
        z=_torus_coordinates([list(r) for r in t]),
        y=_peel_coefficients([list(r) for r in u], upper=False),
    )


def _freeze(m):
    return tuple(tuple(row) for row in m)


def _check_uprime_pattern(uprime, perm, upper):
    """u' must lie in U cap n(w) U^opp n(w)^{-1}."""
    n = len(uprime)
    inv = {v: k + 1 for k, v in enumerate(perm)}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            entry = uprime[i - 1][j - 1]
            if not entry:
                continue
            if upper:
                ok = i < j and inv[i] > inv[j]
            else:
                ok = i > j and inv[i] < inv[j]
            if not ok:
                raise AssertionError("u' outside U'_w at (%d, %d)" % (i, j))


@lru_cache(maxsize=None)
def _sl_rep(n):
    return chevalley.build_rep("A", n - 1)


def _root_entry_positions(n, upper):
    """Ordered entry positions of the one-parameter coordinates."""
    rep = _sl_rep(n)
    positions = []
    for b in rep.rs.neg_order:
        mat = rep.X[b.coeffs] if not upper else rep.X[(-b).coeffs]
        live = [
            (i, j)
            for i in range(n)
            for j in range(n)
            if mat[i][j]
        ]
        assert len(live) == 1
        positions.append(live[0])
    return positions


def _peel_coefficients(u, upper):
    """Coefficients x with u = u_1(x_1)...u_m(x_m) in the root ordering."""
    n = len(u)
    rep = _sl_rep(n)
    positions = _root_entry_positions(n, upper)
    heights = rep.rs.heights_of_order()
    residual = [list(map(Fraction, row)) for row in u]
    coeffs = [Fraction(0)] * rep.rs.m
    for q in sorted(set(heights), reverse=True):
        block = [i for i, h in enumerate(heights) if h == q]
        factors = []
        for i in block:
            r, c = positions[i]
            coeffs[i] = residual[r][c]
            root = rep.rs.neg_order[i] if not upper else -rep.rs.neg_order[i]
            factors.append(chevalley.unipotent_element(rep, root, -coeffs[i]))
        for factor in factors:
            residual = linalg.mat_mul(factor, residual)
    if not linalg.mat_eq(residual, linalg.eye(n)):
        raise AssertionError("one-parameter peeling failed")
    return tuple(coeffs)


def _torus_coordinates(t):
    """z with t = t_1(z_1)...t_{n-1}(z_{n-1}); z_i = d_1 ... d_i."""
    n = len(t)
    z = []
    acc = Fraction(1)
    for i in range(n - 1):
        acc *= Fraction(t[i][i])
        z.append(acc)
    return tuple(z)


def act_on_normal_form(y0, g):
    """Bruhat data of Y0 g in the negative convention, big cell required.

    Returns the full BruhatForm (whose x, z, y tuples are the translated
    normal-form coefficients).  Raises CellDegeneration when Y0 g leaves
    the open cell of the longest Weyl element.
    """
    n = len(y0)
    prod = linalg.mat_mul(_frac_matrix(y0), _frac_matrix(g))
    form = bruhat_decompose(prod, convention="negative")
    if form.perm != longest_permutation(n):
        raise CellDegeneration(
            "translate left the big cell: w = %r" % (form.perm,)
        )
    return form
