"""Closed expression algebra for Liouvillian generators.

Expressions are built from differential-polynomial scalars, formal integrals
int(f), and exponentials-of-integrals e^{int g}.  Every expression is kept
in a canonical normal form: a sum of terms

    coefficient * e^{int G} * prod Integral(arg_i)^{k_i}

where the coefficient is a DiffPoly, G is itself a normalized expression
(the integrands of merged exponential factors add up), and the integral
atoms are opaque: no linearity or integration-by-parts rewriting ever
happens under an integral sign.  Products of exponentials merge; integral
atoms compare by the canonical form of their arguments.  Normalization is
eager, hence trivially idempotent, and equality is structural.
"""

import json
import threading
from fractions import Fraction

from .diffpoly import DiffPoly

_LOCK = threading.Lock()
_IDS = {}  # canonical serialization -> id
_BY_ID = []  # id-1 -> (LiouvExpr, canonical string)

_NO_EXP = 0


def _intern(expr):
    """Intern a normalized expression, returning a positive integer id."""
    key = expr.canonical_string()
    with _LOCK:
        got = _IDS.get(key)
        if got is not None:
            return got
        _BY_ID.append((expr, key))
        ident = len(_BY_ID)
        _IDS[key] = ident
        return ident


def _by_id(ident):
    return _BY_ID[ident - 1][0]


def _id_string(ident):
    return _BY_ID[ident - 1][1]


def _coerce_scalar(value):
    if isinstance(value, DiffPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return DiffPoly.rational(value)
    return None


class LiouvExpr:
    """A normalized Liouvillian expression; immutable value semantics."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = dict(terms) if terms else {}

    # ----- constructors -----

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls.rational(1)

    @classmethod
    def rational(cls, q):
        p = DiffPoly.rational(q)
        if p.is_zero():
            return cls()
        return cls({(_NO_EXP, ()): p})

    @classmethod
    def scalar(cls, p):
        coerced = _coerce_scalar(p)
        if coerced is None:
            raise TypeError("scalar expects a DiffPoly or rational")
        if coerced.is_zero():
            return cls()
        return cls({(_NO_EXP, ()): coerced})

    @classmethod
    def integral(cls, arg):
        """The opaque atom int(arg)."""
        arg = as_expr(arg)
        ident = _intern(arg)
        return cls({(_NO_EXP, ((ident, 1),)): DiffPoly.rational(1)})

    @classmethod
    def exp_integral(cls, g, exponent=1):
        """e^{int g}^exponent, folded to the integrand exponent * g."""
        g = as_expr(g) * exponent
        if not g.terms:
            return cls.one()
        return cls({(_intern(g), ()): DiffPoly.rational(1)})

    # ----- ring structure -----

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, LiouvExpr):
            return self.terms == other.terms
        coerced = _coerce_scalar(other)
        if coerced is None:
            return NotImplemented
        return self == LiouvExpr.scalar(coerced)

    def __hash__(self):
        return hash(frozenset((k, hash(c)) for k, c in self.terms.items()))

    def __neg__(self):
        return LiouvExpr({k: -c for k, c in self.terms.items()})

    def __add__(self, other):
        other = as_expr(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s = s + c
                if s:
                    out[k] = s
                else:
                    del out[k]
        return LiouvExpr(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-as_expr(other))

    def __rsub__(self, other):
        return (-self) + as_expr(other)

    def __mul__(self, other):
        other = as_expr(other)
        out = {}
        for (e1, a1), c1 in self.terms.items():
            for (e2, a2), c2 in other.terms.items():
                c = c1 * c2
                if not c:
                    continue
                if e1 == _NO_EXP:
                    e = e2
                elif e2 == _NO_EXP:
                    e = e1
                else:
                    g = _by_id(e1) + _by_id(e2)
                    e = _intern(g) if g.terms else _NO_EXP
                key = (e, _merge_atoms(a1, a2))
                s = out.get(key)
                if s is None:
                    out[key] = c
                else:
                    s = s + c
                    if s:
                        out[key] = s
                    else:
                        del out[key]
        return LiouvExpr(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("integer powers only")
        if n < 0:
            return self._inverse() ** (-n)
        result = LiouvExpr.one()
        for _ in range(n):
            result = result * self
        return result

    def _inverse(self):
        """Inverse of a single exponential monomial with rational coefficient."""
        if len(self.terms) != 1:
            raise ValueError("only exponential monomials are invertible")
        (e, atoms), c = next(iter(self.terms.items()))
        if atoms:
            raise ValueError("integral atoms are not invertible")
        if not (c.is_zero() or list(c.terms) == [()]):
            raise ValueError("coefficient is not rational")
        q = c.constant_term()
        g = -_by_id(e) if e != _NO_EXP else LiouvExpr.zero()
        inv_e = _intern(g) if g.terms else _NO_EXP
        return LiouvExpr({(inv_e, ()): DiffPoly.rational(Fraction(1) / q)})

    # ----- differential structure -----

    def derive(self):
        """The derivation: d(int f) = f and d(e^{int g}) = g e^{int g}."""
        total = LiouvExpr.zero()
        for (e, atoms), c in self.terms.items():
            monomial = LiouvExpr({(e, atoms): DiffPoly.rational(1)})
            dc = c.derive()
            if dc:
                total = total + LiouvExpr({(e, atoms): dc})
            if e != _NO_EXP:
                total = total + (_by_id(e) * monomial) * c
            for idx, (ident, k) in enumerate(atoms):
                rest = list(atoms)
                if k == 1:
                    del rest[idx]
                else:
                    rest[idx] = (ident, k - 1)
                stub = LiouvExpr({(e, tuple(rest)): c * k})
                total = total + _by_id(ident) * stub
        return total

    # ----- queries -----

    def is_rational(self):
        if not self.terms:
            return True
        if list(self.terms) != [(_NO_EXP, ())]:
            return False
        c = self.terms[(_NO_EXP, ())]
        return list(c.terms) == [()]

    def rational_value(self):
        if not self.terms:
            return Fraction(0)
        return self.terms[(_NO_EXP, ())].constant_term()

    def is_scalar(self):
        return not self.terms or list(self.terms) == [(_NO_EXP, ())]

    def scalar_value(self):
        if not self.terms:
            return DiffPoly.zero()
        return self.terms[(_NO_EXP, ())]

    # ----- serialization -----

    def _sorted_terms(self):
        def key(item):
            (e, atoms), _ = item
            estr = _id_string(e) if e != _NO_EXP else ""
            astr = tuple(sorted((_id_string(i), k) for i, k in atoms))
            return (estr, astr)

        return sorted(self.terms.items(), key=key)

    def to_json_obj(self):
        """Canonical tree: sum of products of scalar/expint/int factors."""
        if not self.terms:
            return {"op": "scalar", "p": DiffPoly.zero().to_json_obj()}
        terms = []
        for (e, atoms), c in self._sorted_terms():
            factors = [{"op": "scalar", "p": c.to_json_obj()}]
            if e != _NO_EXP:
                factors.append(
                    {"op": "expint", "k": 1, "g": _by_id(e).to_json_obj()}
                )
            for ident, k in sorted(atoms, key=lambda ik: (_id_string(ik[0]), ik[1])):
                node = {"op": "int", "arg": _by_id(ident).to_json_obj()}
                if k != 1:
                    node = {"op": "pow", "k": k, "base": node}
                factors.append(node)
            if len(factors) == 1:
                terms.append(factors[0])
            else:
                terms.append({"op": "prod", "args": factors})
        if len(terms) == 1:
            return terms[0]
        return {"op": "sum", "args": terms}

    def canonical_string(self):
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj):
        op = obj["op"]
        if op == "scalar":
            return cls.scalar(DiffPoly.from_json_obj(obj["p"]))
        if op == "int":
            return cls.integral(cls.from_json_obj(obj["arg"]))
        if op == "expint":
            return cls.exp_integral(cls.from_json_obj(obj["g"]), obj.get("k", 1))
        if op == "pow":
            return cls.from_json_obj(obj["base"]) ** obj["k"]
        if op == "sum":
            out = cls.zero()
            for item in obj["args"]:
                out = out + cls.from_json_obj(item)
            return out
        if op == "prod":
            out = cls.one()
            for item in obj["args"]:
                out = out * cls.from_json_obj(item)
            return out
        raise ValueError("unknown expression node %r" % op)

    def __repr__(self):
        return "LiouvExpr(%s)" % self.text()

    def text(self):
        if not self.terms:
            return "0"
        chunks = []
        for (e, atoms), c in self._sorted_terms():
            bits = []
            if len(c.terms) == 1 and list(c.terms) == [()]:
                q = c.constant_term()
                if q == -1:
                    bits.append("-")
                elif q != 1:
                    bits.append(str(q))
            else:
                bits.append("(%s)" % c.text())
            if e != _NO_EXP:
                bits.append("e^{∫(%s)}" % _by_id(e).text())
            for ident, k in sorted(atoms, key=lambda ik: (_id_string(ik[0]), ik[1])):
                atom = "∫(%s)" % _by_id(ident).text()
                bits.append(atom if k == 1 else atom + "^%d" % k)
            if not bits or bits == ["-"]:
                bits.append("1")
            chunks.append("".join(bits) if bits[0] != "-" else "-" + "".join(bits[1:]))
        out = chunks[0]
        for chunk in chunks[1:]:
            out += " - " + chunk[1:] if chunk.startswith("-") else " + " + chunk
        return out


def _merge_atoms(a1, a2):
    if not a1:
        return a2
    if not a2:
        return a1
    acc = dict(a1)
    for ident, k in a2:
        acc[ident] = acc.get(ident, 0) + k
    return tuple(sorted((i, k) for i, k in acc.items() if k))


def as_expr(value):
    if isinstance(value, LiouvExpr):
        return value
    coerced = _coerce_scalar(value)
    if coerced is None:
        raise TypeError("cannot coerce %r to LiouvExpr" % type(value))
    return LiouvExpr.scalar(coerced)


# ----- spec-facing node constructors -----


def Scalar(p):
    return LiouvExpr.scalar(p)


def Integral(e):
    return LiouvExpr.integral(e)


def ExpIntegral(g, exponent=1):
    return LiouvExpr.exp_integral(g, exponent)


def Sum(parts):
    out = LiouvExpr.zero()
    for p in parts:
        out = out + as_expr(p)
    return out


def Product(parts):
    out = LiouvExpr.one()
    for p in parts:
        out = out * as_expr(p)
    return out


def normalize(e):
    """Expressions are normalized eagerly; this is the identity, provided
    for symmetry with `equals`."""
    return as_expr(e)


def equals(e1, e2):
    return as_expr(e1) == as_expr(e2)


def derive_expr(e):
    return as_expr(e).derive()


def build_matrix_entries(rep, product_spec):
    """Literal matrix product of group factors, entries normalized.

    product_spec is an ordered list of factor descriptors:
      ("unipotent", root, arg)   u_root(arg), arg a DiffPoly/LiouvExpr
      ("torus", i, z)            t_i(z), z an invertible scalar
      ("constant", matrix)       a rational matrix, e.g. n(w)
      ("matrix", matrix)         an explicit LiouvExpr matrix
    An empty product is the identity.
    """
    from . import chevalley, linalg

    out = linalg.eye(rep.dim, LiouvExpr.one(), LiouvExpr.zero())
    for item in product_spec:
        kind = item[0]
        if kind == "unipotent":
            factor = chevalley.unipotent_element(rep, item[1], as_expr(item[2]))
        elif kind == "torus":
            factor = chevalley.torus_element(rep, item[1], as_expr(item[2]))
        elif kind in ("constant", "matrix"):
            factor = [[as_expr(x) for x in row] for row in item[1]]
        else:
            raise ValueError("unknown factor kind %r" % kind)
        out = linalg.mat_mul(out, factor)
    return out
