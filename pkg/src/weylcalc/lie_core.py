"""Split semisimple Lie algebras over Q with integer Chevalley structure constants.

A LieAlgebra is built from a Cartan matrix: positive roots are enumerated by
the usual root-string closure, and the signs of the structure constants
N[a,b] are fixed on extraspecial pairs (the pair with the smallest first
root, in height-then-lexicographic order, among all positive pairs summing
to a given root, gets the positive sign).  All other constants follow from
the Jacobi identity; the recursion below is exact over Q and the results are
asserted to be integers of the expected magnitude.

Basis order: Cartan generators h_1..h_r first, then root vectors sorted by
root height, ties broken lexicographically on the coefficient tuple.  Only
split forms are constructed; every in-scope formula depends on brackets
only, which agree with any other real form of the same complex algebra.
"""

from fractions import Fraction

from .linalg import F0, F1, rank as mat_rank

_VALID_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


def cartan_matrix(series, rank):
    """Integer Cartan matrix a[i][j] = <alpha_j, alpha_i^vee> for the split form."""
    if series not in _VALID_RANKS or not _VALID_RANKS[series](rank):
        raise ValueError("no simple algebra of type %s%s" % (series, rank))
    n = rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def chain(i, j):
        a[i][j] = -1
        a[j][i] = -1

    if series in ("A", "B", "C"):
        for i in range(n - 1):
            chain(i, i + 1)
        if series == "B" and n >= 2:
            a[n - 1][n - 2] = -2   # last simple root short
        if series == "C" and n >= 2:
            a[n - 2][n - 1] = -2   # last simple root long
    elif series == "D":
        for i in range(n - 2):
            chain(i, i + 1)
        chain(n - 3, n - 1)
    elif series == "E":
        for i in range(n - 2):
            chain(i, i + 1)
        chain(n - 4, n - 1)
    elif series == "F":
        chain(0, 1)
        chain(1, 2)
        chain(2, 3)
        a[2][1] = -2               # alpha_3, alpha_4 short
    elif series == "G":
        a[0][1] = -3               # alpha_1 short
        a[1][0] = -1
    return a


def _symmetrizers(cart):
    """Minimal positive integers d with d_i a_ij = d_j a_ji."""
    n = len(cart)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and cart[i][j] != 0 and d[j] is None:
                    d[j] = d[i] * Fraction(cart[i][j], cart[j][i])
                    stack.append(j)
    lo = min(d)
    d = [x / lo for x in d]
    assert all(x.denominator == 1 for x in d)
    return [int(x) for x in d]


class _RootSystem:
    def __init__(self, cart):
        self.cart = cart
        self.n = len(cart)
        self.d = _symmetrizers(cart)
        self.positive = self._enumerate_positive()
        self.posset = set(self.positive)
        self.rootset = self.posset | {self._neg(r) for r in self.positive}

    @staticmethod
    def _neg(r):
        return tuple(-x for x in r)

    @staticmethod
    def _add(r, s):
        return tuple(x + y for x, y in zip(r, s))

    @staticmethod
    def _sub(r, s):
        return tuple(x - y for x, y in zip(r, s))

    def _pairing(self, beta, i):
        # <beta, alpha_i^vee>
        return sum(self.cart[i][j] * beta[j] for j in range(self.n))

    def _enumerate_positive(self):
        n = self.n
        simples = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        roots = set(simples)
        frontier = list(simples)
        while frontier:
            nxt = []
            for beta in frontier:
                for i, alpha in enumerate(simples):
                    p = 0
                    cur = self._sub(beta, alpha)
                    while cur in roots:
                        p += 1
                        cur = self._sub(cur, alpha)
                    q = p - self._pairing(beta, i)
                    if q >= 1:
                        cand = self._add(beta, alpha)
                        if cand not in roots:
                            roots.add(cand)
                            nxt.append(cand)
            frontier = nxt
        return sorted(roots, key=self._order_key)

    @staticmethod
    def height(r):
        return sum(r)

    def _order_key(self, r):
        return (self.height(r), r)

    def norm2(self, r):
        # (r, r) with short roots normalised to length^2 = 2
        s = F0
        for i in range(self.n):
            if r[i]:
                for j in range(self.n):
                    if r[j]:
                        s += Fraction(r[i] * r[j] * self.d[i] * self.cart[i][j])
        return s

    def p_value(self, a, b):
        """Largest p with b - p a a root (a, b, a+b roots)."""
        p = 0
        cur = self._sub(b, a)
        while cur in self.rootset:
            p += 1
            cur = self._sub(cur, a)
        return p

    def chevalley_table(self):
        """N[a,b] for positive pairs with a+b a root, extraspecial pairs positive."""
        npos = {}

        def pos_n(a, b):
            if self._order_key(a) < self._order_key(b):
                return npos[(a, b)]
            return -npos[(b, a)]

        def gen_n(x, y):
            # N for arbitrary sign pattern, from the positive table
            if self.height(x) > 0 and self.height(y) > 0:
                return pos_n(x, y)
            if self.height(x) < 0 and self.height(y) < 0:
                return -gen_n(self._neg(x), self._neg(y))
            z = self._neg(self._add(x, y))
            if (self.height(y) > 0) == (self.height(z) > 0):
                return (self.norm2(z) / self.norm2(x)) * gen_n(y, z)
            return (self.norm2(z) / self.norm2(y)) * gen_n(z, x)

        for gamma in self.positive:
            if self.height(gamma) < 2:
                continue
            pairs = []
            for a in self.positive:
                if self._order_key(a) >= self._order_key(gamma):
                    break
                b = self._sub(gamma, a)
                if b in self.posset and self._order_key(a) < self._order_key(b):
                    pairs.append((a, b))
            pairs.sort(key=lambda ab: self._order_key(ab[0]))
            eps, eta = pairs[0]
            npos[(eps, eta)] = Fraction(self.p_value(eps, eta) + 1)
            n_gamma_meps = -(self.norm2(eta) / self.norm2(gamma)) * npos[(eps, eta)]
            for a, b in pairs[1:]:
                # Jacobi identity on (e_{-eps}, e_a, e_b), all other constants
                # involve sums of strictly smaller height
                acc = F0
                if self._sub(a, eps) in self.rootset:
                    acc += gen_n(self._neg(eps), a) * pos_n(self._sub(a, eps), b)
                if self._sub(b, eps) in self.rootset:
                    acc += gen_n(b, self._neg(eps)) * pos_n(self._sub(b, eps), a)
                val = -acc / n_gamma_meps
                assert val.denominator == 1
                assert abs(val) == self.p_value(a, b) + 1
                npos[(a, b)] = val
        return npos, gen_n


class Element:
    """Vector of an algebra, as exact rational coefficients over its basis."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        if len(coeffs) != algebra.dim:
            raise ValueError("coefficient vector has wrong length")
        self.algebra = algebra
        self.coeffs = [Fraction(c) for c in coeffs]

    def __add__(self, other):
        self._check(other)
        return Element(self.algebra, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return Element(self.algebra, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return Element(self.algebra, [-a for a in self.coeffs])

    def scale(self, c):
        c = Fraction(c)
        return Element(self.algebra, [c * a for a in self.coeffs])

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.algebra is other.algebra
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.algebra), tuple(self.coeffs)))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def support(self):
        return [i for i, c in enumerate(self.coeffs) if c != 0]

    def _check(self, other):
        if self.algebra is not other.algebra:
            raise ValueError("elements of different algebras")

    def __repr__(self):
        terms = [
            "%s*%s" % (c, self.algebra.basis[i])
            for i, c in enumerate(self.coeffs)
            if c != 0
        ]
        return " + ".join(terms) if terms else "0"


class LieAlgebra:
    """Basis-indexed structure constant table with Killing form.

    basis[i] is a label; roots[i] is the root tuple of basis vector i or
    None for Cartan generators.  table[(i, j)] holds the sparse bracket of
    basis vectors i < j as a tuple of (index, coefficient) pairs.
    """

    def __init__(self, series, rank, cart, d, basis, roots, table):
        self.series = series
        self.rank = rank
        self.cartan_matrix = cart
        self.simple_norms = d
        self.basis = basis
        self.roots = roots
        self.dim = len(basis)
        self.table = table
        self.root_index = {r: i for i, r in enumerate(roots) if r is not None}
        self._ad_cache = {}
        self.killing = self._killing_matrix()

    # -- construction helpers -------------------------------------------------

    def _killing_matrix(self):
        dim = self.dim
        k = [[F0] * dim for _ in range(dim)]
        ads = [self.ad_basis(i) for i in range(dim)]
        for i in range(dim):
            for j in range(i, dim):
                tr = F0
                for b in range(dim):
                    for t, c in ads[j].get(b, ()):
                        for u, c2 in ads[i].get(t, ()):
                            if u == b:
                                tr += c * c2
                k[i][j] = tr
                k[j][i] = tr
        return k

    def ad_basis(self, i):
        """Sparse column map of ad(basis_i): b -> [(target, coeff)]."""
        if i in self._ad_cache:
            return self._ad_cache[i]
        col = {}
        for j in range(self.dim):
            ent = self.bracket_basis(i, j)
            if ent:
                col[j] = ent
        self._ad_cache[i] = col
        return col

    # -- bracket and friends ---------------------------------------------------

    def bracket_basis(self, i, j):
        if i == j:
            return ()
        if i < j:
            return self.table.get((i, j), ())
        return tuple((t, -c) for t, c in self.table.get((j, i), ()))

    def bracket(self, x, y):
        if not isinstance(x, Element) or not isinstance(y, Element):
            raise TypeError("bracket takes algebra elements")
        x._check(y)
        out = [F0] * self.dim
        for i in x.support():
            ci = x.coeffs[i]
            for j in y.support():
                cj = y.coeffs[j]
                for t, c in self.bracket_basis(i, j):
                    out[t] += ci * cj * c
        return Element(self, out)

    def killing_form(self, x, y):
        x._check(y)
        s = F0
        for i in x.support():
            row = self.killing[i]
            for j in y.support():
                if row[j]:
                    s += x.coeffs[i] * y.coeffs[j] * row[j]
        return s

    def ad_matrix(self, x):
        m = [[F0] * self.dim for _ in range(self.dim)]
        for i in x.support():
            ci = x.coeffs[i]
            for j, ent in self.ad_basis(i).items():
                for t, c in ent:
                    m[t][j] += ci * c
        return m

    # -- element constructors ---------------------------------------------------

    def element(self, coeffs):
        return Element(self, coeffs)

    def zero(self):
        return Element(self, [F0] * self.dim)

    def basis_element(self, i):
        coeffs = [F0] * self.dim
        coeffs[i] = F1
        return Element(self, coeffs)

    def cartan_element(self, i):
        return self.basis_element(i)

    def root_vector(self, root):
        return self.basis_element(self.root_index[tuple(root)])

    def killing_rank(self):
        return mat_rank(self.killing)

    def __repr__(self):
        return "LieAlgebra(%s%s, dim=%s)" % (self.series, self.rank, self.dim)


def build_algebra(series, rank):
    """Construct the split simple algebra of the given type over Q."""
    cart = cartan_matrix(series, rank)
    rs = _RootSystem(cart)
    n = rs.n
    pos = rs.positive
    all_roots = sorted(rs.rootset, key=rs._order_key)

    basis = ["h%d" % (i + 1) for i in range(n)]
    roots = [None] * n
    for r in all_roots:
        basis.append("e[%s]" % ",".join(str(x) for x in r))
        roots.append(r)
    dim = len(basis)
    index_of = {r: n + i for i, r in enumerate(all_roots)}

    npos, gen_n = rs.chevalley_table()

    def coroot_coeffs(r):
        # [e_r, e_{-r}] = h_r = sum m_i (alpha_i,alpha_i)/(r,r) h_i
        nr = rs.norm2(r)
        out = []
        for i in range(n):
            c = Fraction(r[i] * 2 * rs.d[i]) / nr
            assert c.denominator == 1
            out.append(c)
        return out

    table = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            ri, rj = roots[i], roots[j]
            ent = []
            if ri is None and rj is None:
                pass
            elif ri is None:
                c = sum(cart[i][t] * rj[t] for t in range(n))
                if c:
                    ent.append((j, Fraction(c)))
            elif rj is None:
                c = sum(cart[j][t] * ri[t] for t in range(n))
                if c:
                    ent.append((i, Fraction(-c)))
            else:
                s = rs._add(ri, rj)
                if all(x == 0 for x in s):
                    for t, c in enumerate(coroot_coeffs(ri)):
                        if c:
                            ent.append((t, c))
                elif s in rs.rootset:
                    c = gen_n(ri, rj)
                    assert c.denominator == 1 and c != 0
                    ent.append((index_of[s], c))
            if ent:
                table[(i, j)] = tuple(sorted(ent))

    return LieAlgebra(series, rank, cart, rs.d, basis, roots, table)


def bracket(x, y):
    return x.algebra.bracket(x, y)


def killing_form(x, y):
    return x.algebra.killing_form(x, y)


def ad_matrix(x):
    return x.algebra.ad_matrix(x)


def chevalley_involution(algebra, x):
    """The basis involution h -> -h, e_r -> -e_{-r} (an automorphism)."""
    out = [F0] * algebra.dim
    for i in x.support():
        r = algebra.roots[i]
        if r is None:
            out[i] -= x.coeffs[i]
        else:
            j = algebra.root_index[tuple(-c for c in r)]
            out[j] -= x.coeffs[i]
    return Element(algebra, out)
