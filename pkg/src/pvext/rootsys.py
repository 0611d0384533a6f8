"""Root systems of the classical types A, B, C, D and of G2.

Roots are integer coefficient vectors over the simple basis.  The negative
roots carry the canonical ordering used throughout the construction: heights
non-increasing, complementary roots placed last within each height block,
and ascending lexicographic order on coefficient vectors otherwise.
"""

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import DependentRoots, NotARoot, UnsupportedType


@dataclass(frozen=True)
class Root:
    """A root as its integer coefficient vector over the simple roots."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(k) for k in self.coeffs))
        pos = any(k > 0 for k in self.coeffs)
        neg = any(k < 0 for k in self.coeffs)
        if pos and neg:
            raise NotARoot("mixed-sign coefficient vector %r" % (self.coeffs,))

    def __neg__(self):
        return Root(tuple(-k for k in self.coeffs))

    def height(self):
        return sum(self.coeffs)

    def is_positive(self):
        return self.height() > 0

    def is_simple(self):
        return sum(abs(k) for k in self.coeffs) == 1 and self.height() == 1

    def to_json_obj(self):
        return list(self.coeffs)


@dataclass(frozen=True)
class WeylWord:
    """A word in the simple reflections, 1-based indices, applied left first
    when acting on roots through `weyl_action`."""

    word: tuple

    def __len__(self):
        return len(self.word)


@dataclass(frozen=True)
class RootSystem:
    type_label: str
    rank: int
    cartan: tuple  # cartan[i][j] = <alpha_i, alpha_j>, 0-based rows/cols
    roots: tuple  # all of Phi
    neg_order: tuple  # beta_1..beta_m in the canonical ordering
    comp_roots: tuple = ()  # 1-based indices into neg_order, set later

    @property
    def m(self):
        return len(self.neg_order)

    def positive_roots(self):
        return tuple(-b for b in self.neg_order)

    def simple(self, i):
        """The i-th simple root, 1-based."""
        return Root(tuple(1 if j == i - 1 else 0 for j in range(self.rank)))

    def contains(self, root):
        return root.coeffs in self._root_set

    @property
    def _root_set(self):
        cache = getattr(self, "_root_set_cache", None)
        if cache is None:
            cache = frozenset(r.coeffs for r in self.roots)
            object.__setattr__(self, "_root_set_cache", cache)
        return cache

    def index_of_negative(self, root):
        """1-based position of a negative root in neg_order."""
        try:
            return self.neg_order.index(root) + 1
        except ValueError:
            raise NotARoot("%r is not an ordered negative root" % (root,))

    def heights_of_order(self):
        return tuple(b.height() for b in self.neg_order)

    def root_lengths(self):
        """(alpha_i, alpha_i)/2 per simple root, short roots normalized to 1."""
        return _simple_half_lengths(self.type_label, self.rank)

    def inner(self, a, b):
        """Symmetric bilinear form with short roots of squared length 2."""
        d = self.root_lengths()
        total = Fraction(0)
        for i in range(self.rank):
            for j in range(self.rank):
                # (alpha_i, alpha_j) = d_j * C[i][j]
                total += a.coeffs[i] * b.coeffs[j] * d[j] * self.cartan[i][j]
        return total

    def to_json_obj(self):
        return {
            "type": self.type_label,
            "rank": self.rank,
            "neg_order": [list(b.coeffs) for b in self.neg_order],
            "comp": list(self.comp_roots),
        }


def _cartan_matrix(type_label, rank):
    l = rank
    c = [[0] * l for _ in range(l)]
    for i in range(l):
        c[i][i] = 2
    if type_label in ("A", "B", "C"):
        for i in range(l - 1):
            c[i][i + 1] = c[i + 1][i] = -1
        if type_label == "B" and l >= 2:
            # alpha_l short
            c[l - 2][l - 1] = -2
            c[l - 1][l - 2] = -1
        elif type_label == "C" and l >= 2:
            # alpha_l long
            c[l - 2][l - 1] = -1
            c[l - 1][l - 2] = -2
    elif type_label == "D":
        for i in range(l - 2):
            c[i][i + 1] = c[i + 1][i] = -1
        c[l - 3][l - 1] = c[l - 1][l - 3] = -1
    elif type_label == "G2":
        c = [[2, -1], [-3, 2]]
    return tuple(tuple(row) for row in c)


def _simple_half_lengths(type_label, rank):
    l = rank
    if type_label == "A" or type_label == "D":
        return tuple(Fraction(1) for _ in range(l))
    if type_label == "B":
        return tuple([Fraction(2)] * (l - 1) + [Fraction(1)])
    if type_label == "C":
        return tuple([Fraction(1)] * (l - 1) + [Fraction(2)])
    if type_label == "G2":
        return (Fraction(1), Fraction(3))
    raise UnsupportedType(type_label)


_ADMISSIBLE = {"A": 1, "B": 2, "C": 2, "D": 3, "G2": 2}

_POSITIVE_COUNT = {
    "A": lambda l: l * (l + 1) // 2,
    "B": lambda l: l * l,
    "C": lambda l: l * l,
    "D": lambda l: l * (l - 1),
    "G2": lambda l: 6,
}


def pairing(cartan, coeffs, i):
    """<alpha, alpha_i> for alpha given by its coefficient vector, 0-based i."""
    return sum(k * cartan[j][i] for j, k in enumerate(coeffs))


def _generate_positive(cartan, rank):
    """All positive roots by the root-string closure, height by height."""
    simples = [tuple(int(j == i) for j in range(rank)) for i in range(rank)]
    roots = set(simples)
    frontier = list(simples)
    while frontier:
        fresh = []
        for alpha in frontier:
            for i in range(rank):
                # r = max k with alpha - k*alpha_i still a positive root
                r = 0
                cur = list(alpha)
                while True:
                    cur[i] -= 1
                    t = tuple(cur)
                    if all(x == 0 for x in t) or min(t) < 0:
                        break
                    if t in roots:
                        r += 1
                    else:
                        break
                q = r - pairing(cartan, alpha, i)
                if q > 0:
                    up = tuple(
                        k + (1 if j == i else 0) for j, k in enumerate(alpha)
                    )
                    if up not in roots:
                        roots.add(up)
                        fresh.append(up)
        frontier = fresh
    return roots


def build_root_system(type_label, rank):
    """Construct the full root system with the provisional negative ordering.

    Complementary-root indices start empty; they are computed from a matrix
    representation and installed by chevalley.complementary_roots, after
    which order_negative_roots is applied again.
    """
    minimum = _ADMISSIBLE.get(type_label)
    if minimum is None:
        raise UnsupportedType("unknown type %r" % type_label)
    if type_label == "G2" and rank != 2:
        raise UnsupportedType("G2 has rank 2")
    if rank < minimum:
        raise UnsupportedType("%s requires rank >= %d" % (type_label, minimum))
    cartan = _cartan_matrix(type_label, rank)
    pos = _generate_positive(cartan, rank)
    expected = _POSITIVE_COUNT[type_label](rank)
    if len(pos) != expected:
        raise UnsupportedType(
            "generated %d positive roots for %s_%d, expected %d"
            % (len(pos), type_label, rank, expected)
        )
    negatives = [Root(tuple(-k for k in v)) for v in pos]
    roots = tuple(
        [Root(v) for v in sorted(pos)] + [Root(tuple(-k for k in v)) for v in sorted(pos)]
    )
    rs = RootSystem(
        type_label=type_label,
        rank=rank,
        cartan=cartan,
        roots=roots,
        neg_order=tuple(negatives),
    )
    return replace(rs, neg_order=order_negative_roots(rs, ()))


def order_negative_roots(rs, comp_roots):
    """Canonical ordering of the negative roots.

    Heights non-increasing; within a height block the non-complementary
    roots come first in ascending lexicographic order on coefficient
    vectors, then the complementary roots, also in lexicographic order.
    comp_roots is a collection of Root values (empty on the first pass).
    """
    comp = {r.coeffs for r in comp_roots}
    negatives = [r for r in rs.roots if r.height() < 0]
    return tuple(
        sorted(
            negatives,
            key=lambda b: (-b.height(), b.coeffs in comp, b.coeffs),
        )
    )


def finalize_order(rs, comp_roots):
    """Install complementary roots and return the reordered system."""
    order = order_negative_roots(rs, comp_roots)
    comp_idx = tuple(
        sorted(order.index(r) + 1 for r in comp_roots)
    )
    return replace(rs, neg_order=order, comp_roots=comp_idx)


def cartan_integer(rs, beta, alpha):
    """<beta, alpha> = 2(beta, alpha)/(alpha, alpha), an exact integer."""
    if not rs.contains(beta):
        raise NotARoot("%r" % (beta,))
    if not rs.contains(alpha):
        raise NotARoot("%r" % (alpha,))
    value = 2 * rs.inner(beta, alpha) / rs.inner(alpha, alpha)
    assert value.denominator == 1
    return int(value)


def reflect(rs, alpha, beta):
    """w_alpha(beta) = beta - <beta, alpha> alpha."""
    n = cartan_integer(rs, beta, alpha)
    return Root(
        tuple(b - n * a for b, a in zip(beta.coeffs, alpha.coeffs))
    )


def root_string(rs, alpha, beta):
    """(r, q) with alpha - r*beta ... alpha + q*beta the beta-string."""
    if not rs.contains(alpha) or not rs.contains(beta):
        raise NotARoot("string endpoints must be roots")
    if alpha.coeffs == beta.coeffs or alpha.coeffs == (-beta).coeffs:
        raise DependentRoots("string through a dependent pair")
    r = 0
    cur = alpha.coeffs
    while True:
        cur = tuple(a - b for a, b in zip(cur, beta.coeffs))
        try:
            if Root(cur).coeffs in rs._root_set:
                r += 1
                continue
        except NotARoot:
            pass
        break
    q = 0
    cur = alpha.coeffs
    while True:
        cur = tuple(a + b for a, b in zip(cur, beta.coeffs))
        try:
            if Root(cur).coeffs in rs._root_set:
                q += 1
                continue
        except NotARoot:
            pass
        break
    return (r, q)


def simple_reflection_action(rs, i):
    """The action of w_{alpha_i} on coefficient vectors, 1-based i."""

    def act(root):
        return reflect(rs, rs.simple(i), root)

    return act


def weyl_action(rs, word):
    """Compose the reflections of a WeylWord; rightmost acts first."""
    if isinstance(word, WeylWord):
        word = word.word

    def act(root):
        for i in reversed(word):
            root = reflect(rs, rs.simple(i), root)
        return root

    return act


def longest_weyl_word(rs):
    """A reduced word for the longest element, by greedy descent.

    Deterministic tie-break: the largest simple index that still lengthens
    the word is appended (this reproduces the alternating word for G2).
    Verified post hoc: the composite maps every positive root to a negative.
    """
    word = []
    # track w(alpha_i) for the current w = s_{i_1} ... s_{i_k}
    while True:
        candidate = None
        for i in range(rs.rank, 0, -1):
            image = weyl_action(rs, tuple(word))(rs.simple(i))
            if image.height() > 0:
                candidate = i
                break
        if candidate is None:
            break
        word.append(candidate)
    act = weyl_action(rs, tuple(word))
    for root in rs.roots:
        image = act(root)
        if root.height() > 0 and image.height() > 0:
            raise AssertionError("longest element failed to negate %r" % (root,))
    assert len(word) == rs.m
    return WeylWord(tuple(word))
