"""Exact dense matrix helpers shared across the package.

Matrices are plain lists of row lists.  Entries live in any commutative ring
with +, -, * (Fraction, DiffPoly, or normalized Liouvillian expressions);
routines that need division are restricted to Fraction entries.
"""

from fractions import Fraction

from .errors import DimMismatch, NoRationalSolution


def zeros(n, zero=Fraction(0)):
    return [[zero for _ in range(n)] for _ in range(n)]


def eye(n, one=Fraction(1), zero=Fraction(0)):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_add(a, b):
    if len(a) != len(b):
        raise DimMismatch("matrix sizes differ")
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    if len(a) != len(b):
        raise DimMismatch("matrix sizes differ")
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_neg(a):
    return [[-x for x in row] for row in a]


def mat_scale(a, c):
    return [[x * c for x in row] for row in a]


def mat_mul(a, b):
    n = len(a)
    if n != len(b):
        raise DimMismatch("matrix sizes differ")
    bt = list(zip(*b))
    out = []
    for row in a:
        orow = []
        for col in bt:
            acc = None
            for x, y in zip(row, col):
                if _is_zero(x) or _is_zero(y):
                    continue
                term = x * y
                acc = term if acc is None else acc + term
            orow.append(acc if acc is not None else row[0] * 0)
        out.append(orow)
    return out


def _is_zero(x):
    return not x


def mat_is_zero(a):
    return all(not x for row in a for x in row)


def mat_eq(a, b):
    return mat_is_zero(mat_sub(a, b))


def mat_map(a, fn):
    return [[fn(x) for x in row] for row in a]


def bracket(a, b):
    """Commutator ab - ba."""
    if len(a) != len(b):
        raise DimMismatch("bracket of unequal sizes")
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def unipotent_inverse(m, one=Fraction(1)):
    """Inverse of a unipotent matrix via the finite Neumann series.

    Requires (m - 1) nilpotent; terminates in at most dim(m) steps.
    """
    n = len(m)
    zero = one * 0
    nil = mat_sub(m, eye(n, one, zero))
    inv = eye(n, one, zero)
    power = eye(n, one, zero)
    for _ in range(n):
        power = mat_neg(mat_mul(power, nil))
        if mat_is_zero(power):
            break
        inv = mat_add(inv, power)
    else:
        if not mat_is_zero(mat_neg(mat_mul(power, nil))):
            raise DimMismatch("matrix is not unipotent")
    return inv


# ----- Fraction-only routines -----


def rational_inverse(m):
    """Exact inverse of an invertible Fraction matrix."""
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise NoRationalSolution("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def det(m):
    """Exact determinant of a Fraction matrix."""
    n = len(m)
    a = [list(map(Fraction, row)) for row in m]
    sign = Fraction(1)
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        result *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return sign * result


def solve_exact(a, rhs_cols):
    """Solve a x = b for each column b in rhs_cols.

    The coefficient matrix `a` (list of rows, possibly rectangular) is over
    Fractions and must have full column rank; the system must be consistent,
    else NoRationalSolution.  Pivoting is deterministic: first nonzero entry
    in row-major order.  Right-hand side entries may be ring elements
    (DiffPoly); only `a` needs division.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    a = [list(map(Fraction, row)) for row in a]
    rhs = [list(col) for col in rhs_cols]
    nrhs = len(rhs)
    piv_of_col = {}
    used_rows = []
    for col in range(cols):
        pivot = next(
            (r for r in range(rows) if r not in used_rows and a[r][col]), None
        )
        if pivot is None:
            raise NoRationalSolution("column %d has no pivot" % col)
        piv_of_col[col] = pivot
        used_rows.append(pivot)
        inv = 1 / a[pivot][col]
        a[pivot] = [x * inv for x in a[pivot]]
        for k in range(nrhs):
            rhs[k][pivot] = rhs[k][pivot] * inv
        for r in range(rows):
            if r != pivot and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[pivot])]
                for k in range(nrhs):
                    rhs[k][r] = rhs[k][r] - rhs[k][pivot] * f
    for r in range(rows):
        if r not in used_rows:
            for k in range(nrhs):
                if rhs[k][r]:
                    raise NoRationalSolution("inconsistent system")
    out = []
    for k in range(nrhs):
        out.append([rhs[k][piv_of_col[c]] for c in range(cols)])
    return out


def rank(m):
    """Exact rank of a Fraction matrix."""
    if not m:
        return 0
    a = [list(map(Fraction, row)) for row in m]
    rows, cols = len(a), len(a[0])
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][col]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][col]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r
