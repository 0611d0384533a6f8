"""The construction pipeline: from differential indeterminates to the
Liouvillian defining matrix, its solution tower, the differential
invariants, and the generic defining matrix.

Stages are strictly sequential; every structural claim the construction
relies on (coefficient shapes, variable ranges, full-rank eliminations,
vanishing Cartan components) is asserted as the pipeline runs, and a
violation raises StructureViolation or RankFailure rather than producing
an unverified result.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import chevalley, linalg, rootsys, symgroup
from .diffpoly import DiffPoly
from .errors import (
    IdentityFailure,
    RankFailure,
    StructureViolation,
    VerificationFailure,
)
from .liouville_expr import LiouvExpr


@dataclass(frozen=True)
class Stage1Coeffs:
    """v_i for i = l+1..m: the nonlinear X_i-coefficients of ldelta(u)."""

    v: dict


@dataclass(frozen=True)
class Stage2Coeffs:
    """g_i, ell_i, p_i: the coefficients of Ad(u)(A_0^+)."""

    g: tuple
    ell: tuple
    p: tuple


@dataclass(frozen=True)
class LiouvilleData:
    c: tuple
    gbar: tuple
    A_L: tuple
    nw: tuple
    z: tuple = ()
    y: tuple = ()
    y_integrands: tuple = ()


@dataclass(frozen=True)
class InvariantSet:
    f: dict  # non-complementary index -> DiffPoly
    h: dict  # complementary index -> DiffPoly invariant
    lhat: dict
    phat: dict
    lbar: dict = field(default_factory=dict)
    pbar: dict = field(default_factory=dict)


def _dp_eye(n):
    return linalg.eye(n, DiffPoly.rational(1), DiffPoly.zero())


def _dp_matrix(m):
    return [
        [x if isinstance(x, DiffPoly) else DiffPoly.rational(x) for x in row]
        for row in m
    ]


def _mat_derive(m):
    return [
        [x.derive() if isinstance(x, DiffPoly) else Fraction(0) for x in row]
        for row in m
    ]


def unipotent_product(rep, args):
    """u_1(a_1) ... u_m(a_m) over the coefficient domain of the arguments."""
    out = _dp_eye(rep.dim)
    for i, a in enumerate(args, start=1):
        factor = chevalley.unipotent_element(rep, rep.rs.neg_order[i - 1], a)
        out = linalg.mat_mul(out, _dp_matrix(factor))
    return out


def _heights(rep):
    return rep.rs.heights_of_order()


def _band(rep, height):
    """1-based indices of the ordered negative roots at the given height."""
    return [i + 1 for i, h in enumerate(_heights(rep)) if h == height]


def _max_index_of_height(rep, height):
    band = _band(rep, height)
    return band[-1] if band else 0


def _xcoef(rep, dec, i):
    return dec.get(("X", rep.rs.neg_order[i - 1].coeffs), DiffPoly.zero())


def _check_positive_part(rep, dec, where, allow_cartan=False):
    """Simple positive components are one, other positives zero; the
    Cartan components must vanish unless explicitly allowed."""
    if not allow_cartan:
        for i in range(1, rep.rank + 1):
            if dec.get(("H", i)):
                raise StructureViolation("%s: H_%d component is nonzero" % (where, i))
    for b in rep.rs.neg_order:
        pos = (-b).coeffs
        coef = dec.get(("X", pos), DiffPoly.zero())
        if rootsys.Root(pos).is_simple():
            if coef != DiffPoly.rational(1):
                raise StructureViolation(
                    "%s: simple positive component is %r" % (where, coef)
                )
        elif coef:
            raise StructureViolation("%s: positive component %r" % (where, pos))


def logderiv_unipotent(rep):
    """Stage 1: decompose ldelta(u_1(eta_1)...u_m(eta_m)).

    Returns Stage1Coeffs; the coefficient of X_i is eta_i' + v_i with the
    shape claims of the first coefficient lemma asserted.
    """
    m = rep.m
    u = unipotent_product(rep, [DiffPoly.eta(i) for i in range(1, m + 1)])
    uinv = linalg.unipotent_inverse(u, DiffPoly.rational(1))
    dec = chevalley.decompose_in_basis(rep, linalg.mat_mul(_mat_derive(u), uinv))
    for i in range(1, rep.rank + 1):
        if dec.get(("H", i)):
            raise StructureViolation("ldelta(u) has a Cartan component")
    for b in rep.rs.neg_order:
        if dec.get(("X", (-b).coeffs)):
            raise StructureViolation("ldelta(u) has a positive component")
    heights = _heights(rep)
    v = {}
    for i in range(1, m + 1):
        vi = _xcoef(rep, dec, i) - DiffPoly.eta(i, 1)
        if i <= rep.rank:
            if vi:
                raise StructureViolation("v_%d should vanish" % i)
            continue
        s2 = _max_index_of_height(rep, heights[i - 1] + 1)
        for mon in vi.terms:
            if max(jv.order for jv, _ in mon) != 1:
                raise StructureViolation("v_%d has a term of order != 1" % i)
            if sum(e for _, e in mon) < 2:
                raise StructureViolation("v_%d has a linear term" % i)
            if any(jv.var > s2 for jv, _ in mon):
                raise StructureViolation("v_%d uses variables beyond eta_%d" % (i, s2))
        v[i] = vi
    return Stage1Coeffs(v=v)


def adjoint_on_A0(rep):
    """Stage 2: decompose Ad(u(eta_m))(A_0^+) and assert its shape."""
    m, l = rep.m, rep.rank
    u = unipotent_product(rep, [DiffPoly.eta(i) for i in range(1, m + 1)])
    uinv = linalg.unipotent_inverse(u, DiffPoly.rational(1))
    ad = linalg.mat_mul(linalg.mat_mul(u, _dp_matrix(rep.a0_plus())), uinv)
    dec = chevalley.decompose_in_basis(rep, ad)
    _check_positive_part(rep, dec, "Ad(u)(A_0^+)", allow_cartan=True)
    heights = _heights(rep)

    g = tuple(dec.get(("H", i), DiffPoly.zero()) for i in range(1, l + 1))
    gmat = []
    for gi in g:
        if gi.is_zero():
            raise StructureViolation("a Cartan coefficient vanishes")
        if gi.order() != 0 or any(d != 1 for d in (gi.degree(), gi.min_term_degree())):
            raise StructureViolation("Cartan coefficients must be linear forms")
        if any(v > l for v in gi.variables()):
            raise StructureViolation("Cartan coefficients live in eta_1..eta_l")
        gmat.append([gi.coefficient_of_jet(k, 0) for k in range(1, l + 1)])
    if linalg.rank(gmat) != l:
        raise StructureViolation("Cartan coefficients are linearly dependent")

    ell, p = [], []
    comp = set(rep.rs.comp_roots)
    for i in range(1, m + 1):
        coef = _xcoef(rep, dec, i)
        band = _band(rep, heights[i - 1] - 1)
        li = coef.linear_part()
        pi = coef.nonlinear_part()
        if li and not band:
            raise StructureViolation("ell_%d nonzero with empty band" % i)
        for mon in li.terms:
            jv = mon[0][0]
            if jv.order != 0 or not (band[0] <= jv.var <= band[-1]):
                raise StructureViolation("ell_%d outside its height band" % i)
        i2 = _max_index_of_height(rep, heights[i - 1])
        if pi.order() != 0:
            raise StructureViolation("p_%d contains derivatives" % i)
        if pi and pi.min_term_degree() < 2:
            raise StructureViolation("p_%d has a linear term" % i)
        if any(v > i2 for v in pi.variables()):
            raise StructureViolation("p_%d uses variables beyond eta_%d" % (i, i2))
        ell.append(li)
        p.append(pi)

    # the per-height non-complementary systems are square of full rank
    for q in sorted(set(heights), reverse=True):
        eqs = [i for i in _band(rep, q) if i not in comp]
        unknowns = _band(rep, q - 1)
        if len(eqs) != len(unknowns):
            raise RankFailure("height %d system is not square" % q)
        if not eqs:
            continue
        mat = [
            [ell[i - 1].coefficient_of_jet(k, 0) for k in unknowns] for i in eqs
        ]
        if linalg.rank(mat) != len(eqs):
            raise RankFailure("height %d system is rank-deficient" % q)
    return Stage2Coeffs(g=g, ell=tuple(ell), p=tuple(p))


def build_A_L(rep, stage2):
    """Solve for the constants c and the linear forms gbar, assemble A_L.

    c is determined by Ad(n(wbar))(A_0^-(c)) = A_0^+ and gbar by
    Ad(n(wbar))(sum gbar_i H_i) = sum -g_i H_i; both identities are
    re-verified by direct conjugation on the assembled data.
    """
    rs = rep.rs
    l = rs.rank
    nw = chevalley.weyl_representative(rep, rootsys.longest_weyl_word(rs))
    nwinv = linalg.rational_inverse(nw)

    c = []
    for i in range(1, l + 1):
        ad = linalg.mat_mul(linalg.mat_mul(nw, rep.x_neg(i)), nwinv)
        dec = chevalley.decompose_in_basis(rep, ad)
        live = [(k, val) for k, val in dec.items() if val]
        if len(live) != 1 or live[0][0][0] != "X":
            raise StructureViolation("Ad(n(wbar)) does not permute root lines")
        c.append(Fraction(1) / live[0][1])
    check = linalg.mat_mul(linalg.mat_mul(nw, rep.a0_minus(c)), nwinv)
    if not linalg.mat_eq(check, rep.a0_plus()):
        raise VerificationFailure("Ad(n(wbar))(A_0^-(c)) != A_0^+")

    hmat = []
    for i in range(1, l + 1):
        ad = linalg.mat_mul(linalg.mat_mul(nw, rep.H[i - 1]), nwinv)
        dec = chevalley.decompose_in_basis(rep, ad)
        hmat.append([dec.get(("H", k), Fraction(0)) for k in range(1, l + 1)])
    columns = [list(row) for row in zip(*hmat)]
    rhs = [[-stage2.g[k] for k in range(l)]]
    gbar = tuple(linalg.solve_exact(columns, rhs)[0])

    al = linalg.zeros(rep.dim, DiffPoly.zero())
    for i in range(l):
        al = linalg.mat_add(al, [[gbar[i] * x for x in row] for row in rep.H[i]])
    al = linalg.mat_add(al, _dp_matrix(rep.a0_minus(c)))

    # re-verify the Cartan identity by direct conjugation
    combo = linalg.zeros(rep.dim, DiffPoly.zero())
    for i in range(l):
        combo = linalg.mat_add(
            combo, [[gbar[i] * x for x in row] for row in rep.H[i]]
        )
    lhs = linalg.mat_mul(linalg.mat_mul(_dp_matrix(nw), combo), _dp_matrix(nwinv))
    want = linalg.zeros(rep.dim, DiffPoly.zero())
    for i in range(l):
        want = linalg.mat_add(
            want, [[-stage2.g[i] * x for x in row] for row in rep.H[i]]
        )
    if not linalg.mat_eq(lhs, want):
        raise VerificationFailure("gbar conjugation identity failed")

    return LiouvilleData(
        c=tuple(c),
        gbar=gbar,
        A_L=tuple(tuple(r) for r in al),
        nw=tuple(tuple(r) for r in nw),
    )


def _extract_constant(expr):
    """(q, monic) with expr = q * monic for a single-term rational multiple.

    Keeps constants outside the opaque integral atoms, the way the
    solution tower is conventionally written; multi-term integrands are
    left untouched.
    """
    if len(expr.terms) != 1:
        return Fraction(1), expr
    coeff = next(iter(expr.terms.values()))
    if list(coeff.terms) != [()]:
        return Fraction(1), expr
    q = coeff.constant_term()
    if q == 1:
        return Fraction(1), expr
    return q, expr * (Fraction(1) / q)


def _dp_order_le_one_eval(poly, values, derivs):
    """Evaluate a DiffPoly of order <= 1 with eta_i -> values[i] and
    eta_i' -> derivs[i], over LiouvExpr."""
    total = LiouvExpr.zero()
    for mon, coeff in poly.terms.items():
        acc = LiouvExpr.rational(coeff)
        for jv, e in mon:
            if jv.order == 0:
                base = values[jv.var]
            elif jv.order == 1:
                base = derivs[jv.var]
            else:
                raise StructureViolation("integrand of order > 1")
            acc = acc * (base ** e)
        total = total + acc
    return total


def liouville_solutions(rep, data, stage1):
    """Fill in the Liouvillian tower: exponentials z and integrals y.

    z_i = e^{int gbar_i}.  For the simple-root indices the integrand of y_i
    is c_i divided by the scalar that Ad(t(z)) applies to X_i (extracted by
    explicit conjugation); deeper integrals integrate -v_i evaluated at y.
    The assembled tower is verified symbolically:
    ldelta(t(z) u(y)) = A_L.
    """
    rs = rep.rs
    l, m = rs.rank, rs.m
    z = tuple(LiouvExpr.exp_integral(LiouvExpr.scalar(g)) for g in data.gbar)

    torus_factors = [symgroup.torus_matrix(rep, i + 1, z[i]) for i in range(l)]
    values = {}
    derivs = {}
    y = []
    integrands = []
    for i in range(1, m + 1):
        if i <= l:
            xmat = [[LiouvExpr.rational(x) for x in row] for row in rep.x_neg(i)]
            ad = symgroup.adjoint(torus_factors, xmat)
            dec = chevalley.decompose_in_basis(rep, ad)
            chi = dec[("X", rs.neg_order[i - 1].coeffs)]
            integrand = (chi ** -1) * data.c[i - 1]
        else:
            integrand = _dp_order_le_one_eval(-stage1.v[i], values, derivs)
        q, monic = _extract_constant(integrand)
        yi = LiouvExpr.integral(monic) * q
        y.append(yi)
        integrands.append(integrand)
        values[i] = yi
        derivs[i] = integrand

    factors = torus_factors + [
        symgroup.unipotent_matrix(rep, rs.neg_order[i - 1], y[i - 1])
        for i in range(1, m + 1)
    ]
    ld = symgroup.log_derivative(factors)
    al = [[LiouvExpr.scalar(x) for x in row] for row in data.A_L]
    for r in range(rep.dim):
        for cidx in range(rep.dim):
            if ld[r][cidx] != al[r][cidx]:
                raise VerificationFailure(
                    "ldelta(t(z)u(y)) != A_L at entry (%d, %d)" % (r, cidx)
                )
    return LiouvilleData(
        c=data.c,
        gbar=data.gbar,
        A_L=data.A_L,
        nw=data.nw,
        z=z,
        y=tuple(y),
        y_integrands=tuple(integrands),
    )


def logderiv_Y(rep, data, stage2=None):
    """Coefficients h_i of ldelta(Y) for Y = u(eta_m) n(wbar) t(z) u(y).

    Computed as ldelta(u(eta_m)) + Ad(u(eta_m) n(wbar))(A_L); the Cartan
    components must vanish and the positive part must be exactly A_0^+.
    """
    m, l = rep.m, rep.rank
    heights = _heights(rep)
    u = unipotent_product(rep, [DiffPoly.eta(i) for i in range(1, m + 1)])
    uinv = linalg.unipotent_inverse(u, DiffPoly.rational(1))
    nw = _dp_matrix([list(r) for r in data.nw])
    nwinv = _dp_matrix(linalg.rational_inverse([list(r) for r in data.nw]))
    al = [list(r) for r in data.A_L]
    total = linalg.mat_add(
        linalg.mat_mul(_mat_derive(u), uinv),
        linalg.mat_mul(
            linalg.mat_mul(linalg.mat_mul(linalg.mat_mul(u, nw), al), nwinv), uinv
        ),
    )
    dec = chevalley.decompose_in_basis(rep, total)
    _check_positive_part(rep, dec, "ldelta(Y)")

    if stage2 is None:
        stage2 = adjoint_on_A0(rep)
    h = []
    for i in range(1, m + 1):
        hi = _xcoef(rep, dec, i)
        qi = hi - DiffPoly.eta(i, 1) - stage2.ell[i - 1]
        s2 = _max_index_of_height(rep, heights[i - 1] + 1)
        i2 = _max_index_of_height(rep, heights[i - 1])
        for mon in qi.terms:
            if sum(e for _, e in mon) < 2:
                raise StructureViolation("q_%d has a linear term" % i)
            for jv, _ in mon:
                if jv.order > 1:
                    raise StructureViolation("q_%d has order > 1" % i)
                if jv.order == 1 and jv.var > s2:
                    raise StructureViolation(
                        "q_%d differentiates eta_%d beyond eta_%d" % (i, jv.var, s2)
                    )
                if jv.var > i2:
                    raise StructureViolation(
                        "q_%d uses eta_%d beyond eta_%d" % (i, jv.var, i2)
                    )
        h.append(hi)
    return h


def eliminate_noncomplementary(rep, h_all):
    """Solve the non-complementary equations h_i = 0 height by height.

    Returns the InvariantSet skeleton carrying eta_i = f_i for every index
    i > l, together with the linear/nonlinear splits lbar/pbar and the
    full-rank facts of the equivalent triangular system.
    """
    rs = rep.rs
    l, m = rs.rank, rs.m
    heights = _heights(rep)
    comp = set(rs.comp_roots)
    noncomp_simple = [i for i in _band(rep, -1) if i not in comp]

    sigma = {i: DiffPoly.eta(i) for i in range(1, l + 1)}
    lbar, pbar = {}, {}
    prev_matrix = None
    prev_band = None
    for q in sorted(set(heights), reverse=True):
        eqs = [i for i in _band(rep, q) if i not in comp]
        unknowns = _band(rep, q - 1)
        if not eqs:
            if unknowns:
                raise RankFailure("no equations for the height %d band" % (q - 1))
            continue
        if len(eqs) != len(unknowns):
            raise RankFailure("height %d system is not square" % q)
        a, rhs = [], []
        for i in eqs:
            hi = h_all[i - 1]
            row = [hi.linear_part().coefficient_of_jet(k, 0) for k in unknowns]
            a.append(row)
            rest = hi - sum(
                (DiffPoly.eta(k) * coef for k, coef in zip(unknowns, row)),
                DiffPoly.zero(),
            )
            rhs.append((-rest).substitute(sigma))
        if linalg.rank(a) != len(eqs):
            raise RankFailure("height %d system is rank-deficient" % q)
        solution = linalg.solve_exact(a, [rhs])[0]
        band_matrix = []
        for k, fk in zip(unknowns, solution):
            lin, nonlin = fk.linear_part(), fk.nonlinear_part()
            want_order = abs(q)
            for mon in lin.terms:
                jv = mon[0][0]
                if jv.order != want_order:
                    raise StructureViolation(
                        "lbar_%d is not purely of order %d" % (k, want_order)
                    )
                if jv.var not in noncomp_simple:
                    raise StructureViolation(
                        "lbar_%d involves eta_%d" % (k, jv.var)
                    )
            for mon in nonlin.terms:
                if sum(e for _, e in mon) < 2:
                    raise StructureViolation("pbar_%d has a linear term" % k)
                if max(jv.order for jv, _ in mon) > abs(q + 1):
                    raise StructureViolation(
                        "pbar_%d exceeds order %d" % (k, abs(q + 1))
                    )
            sigma[k] = fk
            lbar[k], pbar[k] = lin, nonlin
            band_matrix.append(
                [lin.coefficient_of_jet(v, want_order) for v in noncomp_simple]
            )
        if linalg.rank(band_matrix) != len(band_matrix):
            raise RankFailure("lbar system at height %d is rank-deficient" % (q - 1))
        if prev_matrix is not None and q <= -2:
            # the prolonged previous system, with complementary rows gone,
            # must span the same row space as the current one
            keep = [
                row
                for i, row in zip(prev_band, prev_matrix)
                if i not in comp
            ]
            stacked = [list(r) for r in keep] + [list(r) for r in band_matrix]
            if not (
                linalg.rank(keep) == linalg.rank(band_matrix) == linalg.rank(stacked)
            ):
                raise RankFailure(
                    "height %d system is not equivalent to its predecessor" % q
                )
        prev_matrix = band_matrix
        prev_band = unknowns
    f = {k: v for k, v in sigma.items() if k > l}
    return f, lbar, pbar, sigma


def invariants(rep, h_all, parts=None):
    """Reduce the complementary h_j to invariants in eta_1..eta_l.

    `parts` is the tuple returned by eliminate_noncomplementary (recomputed
    when omitted).  Splits each invariant into its linear and nonlinear
    part and asserts the order bounds and the two full-rank criteria (the
    ignored-derivative square system and its prolongation to the maximal
    order).
    """
    rs = rep.rs
    l = rs.rank
    heights = _heights(rep)
    if parts is None:
        parts = eliminate_noncomplementary(rep, h_all)
    f, lbar, pbar, sigma = parts
    comp = sorted(rs.comp_roots)
    h, lhat, phat = {}, {}, {}
    for j in comp:
        hj = h_all[j - 1].substitute(sigma)
        lin, nonlin = hj.linear_part(), hj.nonlinear_part()
        want_order = abs(heights[j - 1])
        for mon in lin.terms:
            if mon[0][0].order != want_order:
                raise StructureViolation(
                    "lhat_%d is not purely of order %d" % (j, want_order)
                )
        for mon in nonlin.terms:
            if sum(e for _, e in mon) < 2:
                raise StructureViolation("phat_%d has a linear term" % j)
            if max(jv.order for jv, _ in mon) > want_order - 1:
                raise StructureViolation(
                    "phat_%d exceeds order %d" % (j, want_order - 1)
                )
        h[j], lhat[j], phat[j] = hj, lin, nonlin

    ignore = [
        [
            sum(
                (lhat[j].coefficient_of_jet(v, k) for k in range(rep.m + 1)),
                Fraction(0),
            )
            for v in range(1, l + 1)
        ]
        for j in comp
    ]
    if linalg.rank(ignore) != l:
        raise RankFailure("ignored-derivative invariant system is rank-deficient")

    top = abs(heights[-1])
    prolonged = []
    for j in comp:
        prolong = lhat[j].derive(top - abs(heights[j - 1]))
        prolonged.append(
            [prolong.coefficient_of_jet(v, top) for v in range(1, l + 1)]
        )
    if linalg.rank(prolonged) != l:
        raise RankFailure("prolonged invariant system is rank-deficient")
    return InvariantSet(f=f, h=h, lhat=lhat, phat=phat, lbar=lbar, pbar=pbar)


def assemble_A_G(rep, inv):
    """A_G(h) = A_0^+ + sum over complementary roots of h_j X_j."""
    out = _dp_matrix(rep.a0_plus())
    for j, hj in sorted(inv.h.items()):
        out = linalg.mat_add(out, [[hj * x for x in row] for row in rep.x_neg(j)])
    return out


def specialize(rep, inv, sigma):
    """Apply a total specialization eta_i -> sigma(eta_i) to the invariants.

    sigma maps each of eta_1..eta_l to a DiffPoly or rational.  Returns the
    specialized invariant values keyed by complementary index together with
    the specialized defining matrix A_G(sigma(h)).
    """
    total = {}
    for var, value in sigma.items():
        total[var] = value if isinstance(value, DiffPoly) else DiffPoly.rational(value)
    values = {j: hj.substitute(total) for j, hj in sorted(inv.h.items())}
    matrix = _dp_matrix(rep.a0_plus())
    for j, hj in sorted(values.items()):
        matrix = linalg.mat_add(matrix, [[hj * x for x in row] for row in rep.x_neg(j)])
    return values, matrix


def verify_end_to_end(rep, data, inv):
    """Check d(Y) - A_G(h) Y = 0 entrywise over the expression algebra.

    Y = u(eta_1..eta_l, f_(l+1)..f_m) n(wbar) t(z) u(y).  The Liouvillian
    identity ldelta(t(z)u(y)) = A_L is re-verified first.
    """
    rs = rep.rs
    l, m = rs.rank, rs.m
    tower = [symgroup.torus_matrix(rep, i + 1, data.z[i]) for i in range(l)] + [
        symgroup.unipotent_matrix(rep, rs.neg_order[i - 1], data.y[i - 1])
        for i in range(1, m + 1)
    ]
    ld = symgroup.log_derivative(tower)
    al = [[LiouvExpr.scalar(x) for x in row] for row in data.A_L]
    for i in range(rep.dim):
        for j in range(rep.dim):
            if ld[i][j] != al[i][j]:
                raise IdentityFailure(
                    "ldelta(t(z)u(y)) - A_L is nonzero at entry (%d, %d)" % (i, j)
                )
    args = []
    for i in range(1, m + 1):
        if i <= l:
            args.append(LiouvExpr.scalar(DiffPoly.eta(i)))
        else:
            args.append(LiouvExpr.scalar(inv.f[i]))
    factors = [
        symgroup.unipotent_matrix(rep, rs.neg_order[i - 1], args[i - 1])
        for i in range(1, m + 1)
    ]
    y_mat = [[LiouvExpr.rational(1) if i == j else LiouvExpr.zero()
              for j in range(rep.dim)] for i in range(rep.dim)]
    for factor in factors:
        y_mat = linalg.mat_mul(y_mat, [list(r) for r in factor.rows])
    y_mat = linalg.mat_mul(
        y_mat, [[LiouvExpr.rational(x) for x in row] for row in data.nw]
    )
    for i in range(l):
        y_mat = linalg.mat_mul(
            y_mat, [list(r) for r in symgroup.torus_matrix(rep, i + 1, data.z[i]).rows]
        )
    for i in range(1, m + 1):
        y_mat = linalg.mat_mul(
            y_mat,
            [
                list(r)
                for r in symgroup.unipotent_matrix(
                    rep, rs.neg_order[i - 1], data.y[i - 1]
                ).rows
            ],
        )
    ag = assemble_A_G(rep, inv)
    ag_expr = [[LiouvExpr.scalar(x) for x in row] for row in ag]
    lhs = [[x.derive() for x in row] for row in y_mat]
    rhs = linalg.mat_mul(ag_expr, y_mat)
    for i in range(rep.dim):
        for j in range(rep.dim):
            if lhs[i][j] != rhs[i][j]:
                raise IdentityFailure(
                    "d(Y) - A_G(h) Y is nonzero at entry (%d, %d)" % (i, j)
                )
    return {
        "entries_checked": rep.dim * rep.dim,
        "liouville_identity": "ok",
        "status": "ok",
    }


@dataclass(frozen=True)
class PipelineResult:
    rep: object
    stage1: Stage1Coeffs
    stage2: Stage2Coeffs
    liouville: LiouvilleData
    h_raw: tuple
    invariants: InvariantSet
    A_G: tuple


def run_pipeline(type_label, rank, with_liouville=True):
    """Run every stage for the given system and return the full result."""
    rep = chevalley.build_rep(type_label, rank)
    stage1 = logderiv_unipotent(rep)
    stage2 = adjoint_on_A0(rep)
    data = build_A_L(rep, stage2)
    if with_liouville:
        data = liouville_solutions(rep, data, stage1)
    h_all = logderiv_Y(rep, data, stage2)
    parts = eliminate_noncomplementary(rep, h_all)
    inv = invariants(rep, h_all, parts)
    ag = assemble_A_G(rep, inv)
    return PipelineResult(
        rep=rep,
        stage1=stage1,
        stage2=stage2,
        liouville=data,
        h_raw=tuple(h_all),
        invariants=inv,
        A_G=tuple(tuple(r) for r in ag),
    )


# ----- serialization -----


def _entry_json(x):
    if isinstance(x, (int, Fraction)):
        q = Fraction(x)
        return "%d/%d" % (q.numerator, q.denominator)
    if isinstance(x, DiffPoly):
        return x.to_json_obj()
    return x.to_json_obj()


def matrix_json(m):
    return [[_entry_json(x) for x in row] for row in m]


def report_json_obj(result):
    """The full pipeline report with deterministic key order."""
    inv = result.invariants
    report = {
        "system": {
            "type": result.rep.rs.type_label,
            "rank": result.rep.rs.rank,
            "root_system": result.rep.rs.to_json_obj(),
        },
        "stage1": {"v": {str(i): v.to_json_obj() for i, v in sorted(result.stage1.v.items())}},
        "stage2": {
            "g": [g.to_json_obj() for g in result.stage2.g],
            "ell": [e.to_json_obj() for e in result.stage2.ell],
            "p": [p.to_json_obj() for p in result.stage2.p],
        },
        "A_L": matrix_json(result.liouville.A_L),
        "c": ["%d/%d" % (Fraction(x).numerator, Fraction(x).denominator) for x in result.liouville.c],
        "gbar": [g.to_json_obj() for g in result.liouville.gbar],
        "z": [z.to_json_obj() for z in result.liouville.z],
        "y": [y.to_json_obj() for y in result.liouville.y],
        "h_raw": [h.to_json_obj() for h in result.h_raw],
        "f": {str(k): v.to_json_obj() for k, v in sorted(inv.f.items())},
        "invariants": {
            str(k): {
                "h": inv.h[k].to_json_obj(),
                "linear": inv.lhat[k].to_json_obj(),
                "nonlinear": inv.phat[k].to_json_obj(),
            }
            for k in sorted(inv.h)
        },
        "A_G": matrix_json(result.A_G),
    }
    return report


def report_json(result):
    return json.dumps(report_json_obj(result), sort_keys=True, indent=1)
