"""Coefficient-domain dispatch.

Matrix entries live in one of three exact domains: Fraction, DiffPoly, or
normalized Liouvillian expressions.  These helpers lift rationals into the
domain of a sample element and differentiate entries domain-appropriately.
"""

from fractions import Fraction

from .diffpoly import DiffPoly


def lift_rational(q, like):
    """Embed the rational q into the domain of the sample element `like`."""
    if isinstance(like, Fraction):
        return Fraction(q)
    if isinstance(like, DiffPoly):
        return DiffPoly.rational(q)
    lifter = getattr(type(like), "rational", None)
    if lifter is not None:
        return lifter(q)
    raise TypeError("no rational embedding into %r" % type(like))


def derive(entry):
    """Derivation on an entry; rational constants have derivative zero."""
    if isinstance(entry, Fraction):
        return Fraction(0)
    return entry.derive()


def is_rational(entry):
    if isinstance(entry, Fraction):
        return True
    if isinstance(entry, DiffPoly):
        return entry.is_zero() or list(entry.terms) == [()]
    checker = getattr(entry, "is_rational", None)
    return bool(checker()) if checker else False


def as_rational(entry):
    if isinstance(entry, Fraction):
        return entry
    if isinstance(entry, DiffPoly):
        return entry.constant_term()
    return entry.rational_value()
