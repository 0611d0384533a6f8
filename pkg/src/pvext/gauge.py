"""Normalization of defining matrices to the generic shape A_G(f).

A matrix in the plane A_0^+(s) + b^- is gauge equivalent to A_0^+ plus
complementary-root components by a unipotent element (after a torus
rescaling when s != (1,..,1)).  The construction proceeds height by
height: at each level the correction splits over the W-basis, the W part
is removed by one-parameter gauges and the complementary residue is the
output f.  The result is always post-verified by recomputing the gauge
transform of the input with the assembled element.
"""

from fractions import Fraction

from . import chevalley, linalg, symgroup
from .diffpoly import DiffPoly
from .errors import NonUnitScaling, NotInLieAlgebra, VerificationFailure


def _dp(x):
    return x if isinstance(x, DiffPoly) else DiffPoly.rational(x)


def is_in_plane(rep, a):
    """Whether a matrix lies in A_0^+(s) + b^-; returns (flag, s).

    Requires zero coefficients on the non-simple positive roots and
    nonzero constant coefficients s_i on the simple positive roots.
    """
    rows = [[_dp(x) for x in row] for row in a]
    try:
        dec = chevalley.decompose_in_basis(rep, rows)
    except NotInLieAlgebra:
        return False, None
    s = []
    for i in range(1, rep.rank + 1):
        coef = dec.get(("X", rep.rs.simple(i).coeffs), DiffPoly.zero())
        if coef.is_zero() or list(coef.terms) != [()]:
            return False, None
        s.append(coef.constant_term())
    for b in rep.rs.neg_order:
        pos = -b
        if not pos.is_simple() and dec.get(("X", pos.coeffs)):
            return False, None
    return True, tuple(s)


def _nth_root(q, n):
    """Exact n-th root of a Fraction, or None."""
    q = Fraction(q)
    if n == 1:
        return q
    if q < 0 and n % 2 == 0:
        return None

    def iroot(value, k):
        if value < 0:
            r = iroot(-value, k)
            return None if r is None or k % 2 == 0 else -r
        if value in (0, 1):
            return value
        lo, hi = 0, max(2, int(value ** (1.0 / k)) + 2)
        while lo < hi:
            mid = (lo + hi) // 2
            if mid ** k < value:
                lo = mid + 1
            else:
                hi = mid
        return lo if lo ** k == value else None

    num = iroot(q.numerator, n)
    den = iroot(q.denominator, n)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _torus_rescaling(rep, s):
    """Constants z with Ad(t(z))(A_0^+(s)) = A_0^+, or NonUnitScaling."""
    l = rep.rank
    cartan = rep.rs.cartan
    # solve prod_j z_j^{C[i][j]} = 1/s_i multiplicatively: z_j is a product
    # of rational powers of the s_i determined by the inverse Cartan matrix
    cinv = linalg.rational_inverse([[Fraction(c) for c in row] for row in cartan])
    z = []
    for j in range(l):
        value = Fraction(1)
        pending = []
        for i in range(l):
            # log z = C^{-1} (-log s), so z_j = prod_i s_i^(-cinv[j][i])
            e = -cinv[j][i]
            if not e:
                continue
            base = Fraction(s[i])
            if e.denominator == 1:
                value *= base ** int(e)
            else:
                pending.append((base, e))
        for base, e in pending:
            root = _nth_root(base ** e.numerator if e.numerator >= 0 else 1 / (base ** -e.numerator), e.denominator)
            if root is None:
                raise NonUnitScaling(
                    "rescaling needs the radical (%s)^(1/%d)" % (base ** abs(e.numerator), e.denominator)
                )
            value *= root
        z.append(value)
    check = [Fraction(s[i]) for i in range(l)]
    for i in range(l):
        acc = Fraction(1)
        for j in range(l):
            acc *= z[j] ** cartan[i][j]
        if acc * check[i] != 1:
            raise NonUnitScaling("rescaling verification failed")
    return z


def normalize_to_AG(rep, a):
    """Gauge a plane matrix to the shape A_0^+ + sum f_j X_j.

    Returns (g, factors, f): g is the transforming matrix (unipotent when
    s = (1,..,1), otherwise a unipotent times a constant torus element),
    factors is the ordered list of structured factors, applied first to
    last, so g = factors[-1] ... factors[0]; f maps each complementary
    index to its DiffPoly coefficient.  Always post-verified exactly:
    gauge(g, a) = A_G(f).
    """
    ok, s = is_in_plane(rep, a)
    if not ok:
        raise VerificationFailure("matrix is not in the plane A_0^+(s) + b^-")
    current = [[_dp(x) for x in row] for row in a]
    factors = []
    if any(Fraction(v) != 1 for v in s):
        z = _torus_rescaling(rep, s)
        torus = linalg.eye(rep.dim)
        for j in range(rep.rank):
            torus = linalg.mat_mul(torus, chevalley.torus_element(rep, j + 1, z[j]))
        tm = symgroup.SymMatrix(tuple(tuple(r) for r in torus), "torus_diagonal")
        factors.append(tm)
        current = symgroup.gauge(tm, current)
        current = [[_dp(x) for x in row] for row in current]

    rs = rep.rs
    heights = rs.heights_of_order()
    comp = set(rs.comp_roots)
    f = {}
    for level in range(0, min(heights) - 1, -1):
        sources = [i + 1 for i, h in enumerate(heights) if h == level - 1]
        comp_here = [i + 1 for i, h in enumerate(heights) if h == level and (i + 1) in comp]
        dec = chevalley.decompose_in_basis(rep, current)
        if level == 0:
            coords = [("H", i) for i in range(1, rs.rank + 1)]
        else:
            coords = [("X", rs.neg_order[i - 1].coeffs) for i, h_ in
                      ((i + 1, h) for i, h in enumerate(heights) if h == level)]
        target = [dec.get(c, DiffPoly.zero()) for c in coords]
        columns = []
        for k in sources:
            wdec = chevalley.decompose_in_basis(rep, rep.W[k - 1])
            columns.append([wdec.get(c, Fraction(0)) for c in coords])
        for j in comp_here:
            xdec = chevalley.decompose_in_basis(rep, rep.x_neg(j))
            columns.append([xdec.get(c, Fraction(0)) for c in coords])
        if not columns:
            continue
        matrix = [list(col) for col in zip(*columns)]
        solution = linalg.solve_exact(matrix, [target])[0]
        xs = solution[: len(sources)]
        residues = solution[len(sources):]
        for j, res in zip(comp_here, residues):
            f[j] = res
        for k, xk in zip(sources, xs):
            factor = symgroup.unipotent_matrix(rep, rs.neg_order[k - 1], -xk)
            factors.append(factor)
            current = symgroup.gauge(factor, current)
            current = [[_dp(x) for x in row] for row in current]

    # deepest complementary components are whatever remains
    dec = chevalley.decompose_in_basis(rep, current)
    for j in sorted(comp):
        if j not in f:
            f[j] = dec.get(("X", rs.neg_order[j - 1].coeffs), DiffPoly.zero())

    g = linalg.eye(rep.dim)
    for factor in reversed(factors):
        g = linalg.mat_mul([list(r) for r in factor.rows], g)

    want = [[_dp(x) for x in row] for row in rep.a0_plus()]
    for j, fj in sorted(f.items()):
        want = linalg.mat_add(want, [[fj * x for x in row] for row in rep.x_neg(j)])
    transformed = _gauge_by_factors(factors, [[_dp(x) for x in row] for row in a])
    if not linalg.mat_eq(transformed, want):
        raise VerificationFailure("gauge normalization post-check failed")
    if not linalg.mat_eq(current, want):
        raise VerificationFailure("residual matrix is not A_G(f)")
    return g, factors, f


def _gauge_by_factors(factors, a):
    out = a
    for factor in factors:
        out = symgroup.gauge(factor, out)
        out = [[_dp(x) for x in row] for row in out]
    return out
