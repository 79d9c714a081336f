"""The change-of-Weyl-structure calculus at a single fiber.

A change is encoded by an UpsilonJet: graded components Y_1..Y_k in the
positive part plus free derivative data DY_m (one linear map g_- -> g_m per
degree, standing in for the covariant derivative of Y_m, which at a single
fiber is unconstrained plug-in data).

All series here terminate exactly: ad of a positive element raises degree,
so every exponential and logarithmic-derivative series is a polynomial.
Multi-indices j = (j_1..j_k) are enumerated lexicographically with weighted
size |j| = j_1 + 2 j_2 + ... + k j_k and carry the coefficient
(-1)^(j_1+..+j_k) / (j_1! ... j_k!).
"""

from fractions import Fraction
from functools import lru_cache

from .linalg import F0, F1, mat_vec, solve, zeros
from .lie_core import Element
from .grading import pplus_factorize


class GradedVector:
    """A g_- value split into graded components xi_{-k}..xi_{-1}."""

    def __init__(self, grading, components):
        self.grading = grading
        self.components = {}
        for m, x in components.items():
            if not (-grading.k <= m <= -1):
                raise ValueError("component degree out of range")
            if not grading.is_homogeneous(x, m):
                raise ValueError("component of degree %d is not homogeneous" % m)
            if not x.is_zero():
                self.components[m] = x

    def component(self, m):
        x = self.components.get(m)
        return x if x is not None else self.grading.algebra.zero()

    def element(self):
        total = self.grading.algebra.zero()
        for x in self.components.values():
            total = total + x
        return total

    def coords(self):
        return self.grading.gminus_coords(self.element())

    def __eq__(self, other):
        return (
            isinstance(other, GradedVector)
            and self.grading is other.grading
            and self.element() == other.element()
        )

    def __add__(self, other):
        return split_gminus(self.grading, self.element() + other.element())

    def __sub__(self, other):
        return split_gminus(self.grading, self.element() - other.element())

    def is_zero(self):
        return not self.components

    def __repr__(self):
        return "GradedVector(%s)" % {m: str(x) for m, x in self.components.items()}


def split_gminus(grading, x):
    """Split an element of g_- into its graded components."""
    comps = {}
    for m in range(-grading.k, 0):
        c = grading.component(x, m)
        if not c.is_zero():
            comps[m] = c
    rest = x
    for c in comps.values():
        rest = rest - c
    if not rest.is_zero():
        raise ValueError("element is not in g_minus")
    return GradedVector(grading, comps)


class UpsilonJet:
    """Change-of-Weyl-structure data: Y_m in g_m plus derivative stand-ins DY_m.

    dupsilon[m] is a matrix with one row per basis vector of g_m and one
    column per g_- basis vector; it models the map xi -> DY_m(xi).
    """

    def __init__(self, grading, upsilon=None, dupsilon=None):
        self.grading = grading
        self.upsilon = {}
        for m in range(1, grading.k + 1):
            y = (upsilon or {}).get(m)
            if y is None:
                y = grading.algebra.zero()
            if not grading.is_homogeneous(y, m):
                raise ValueError("upsilon component %d has wrong degree" % m)
            self.upsilon[m] = y
        self.dupsilon = {}
        ncols = len(grading.gminus_basis)
        for m in range(1, grading.k + 1):
            mat = (dupsilon or {}).get(m)
            rows = len(grading.component_bases.get(m, ()))
            if mat is None:
                mat = zeros(rows, ncols)
            if len(mat) != rows or (rows and len(mat[0]) != ncols):
                raise ValueError("dupsilon matrix %d has wrong shape" % m)
            self.dupsilon[m] = [[Fraction(c) for c in row] for row in mat]

    def dy(self, m, xi):
        """DY_m(xi) as an element of g_m."""
        coords = xi.coords() if isinstance(xi, GradedVector) else list(xi)
        vals = mat_vec(self.dupsilon[m], coords)
        out = [F0] * self.grading.algebra.dim
        for b, v in zip(self.grading.component_bases.get(m, ()), vals):
            out[b] = v
        return Element(self.grading.algebra, out)

    def scale(self, t):
        """The jet with both Y and DY scaled by t (used for linearization)."""
        t = Fraction(t)
        ups = {m: y.scale(t) for m, y in self.upsilon.items()}
        dups = {
            m: [[t * c for c in row] for row in mat]
            for m, mat in self.dupsilon.items()
        }
        return UpsilonJet(self.grading, ups, dups)

    def is_zero(self):
        return all(y.is_zero() for y in self.upsilon.values()) and all(
            all(all(c == 0 for c in row) for row in m) for m in self.dupsilon.values()
        )

    @classmethod
    def zero(cls, grading):
        return cls(grading)


class RhoMap:
    """Linear map g_- -> p_+ with graded components P_i: g_- -> g_i.

    Stored as a matrix with one row per p_+ basis vector (degrees ascending)
    and one column per g_- basis vector.
    """

    def __init__(self, grading, matrix=None):
        self.grading = grading
        rows = len(grading.pplus_basis)
        cols = len(grading.gminus_basis)
        if matrix is None:
            matrix = zeros(rows, cols)
        if len(matrix) != rows or (rows and len(matrix[0]) != cols):
            raise ValueError("rho matrix has wrong shape")
        self.matrix = [[Fraction(c) for c in row] for row in matrix]

    def apply(self, xi):
        """P(xi) in p_+ for xi a GradedVector (or g_- coordinate list)."""
        coords = xi.coords() if isinstance(xi, GradedVector) else list(xi)
        vals = mat_vec(self.matrix, coords)
        out = [F0] * self.grading.algebra.dim
        for b, v in zip(self.grading.pplus_basis, vals):
            out[b] = v
        return Element(self.grading.algebra, out)

    def component(self, i, xi):
        """P_i(xi) in g_i."""
        return self.grading.component(self.apply(xi), i)

    def to_cochain(self):
        from .cohomology import Cochain

        entries = {}
        for r, b in enumerate(self.grading.pplus_basis):
            for a in range(len(self.grading.gminus_basis)):
                c = self.matrix[r][a]
                if c:
                    entries[((a,), b)] = c
        return Cochain(self.grading, 1, entries)

    @classmethod
    def from_cochain(cls, c):
        if c.arity != 1:
            raise ValueError("rho map comes from an arity-1 cochain")
        g = c.grading
        rowpos = {b: r for r, b in enumerate(g.pplus_basis)}
        m = zeros(len(g.pplus_basis), len(g.gminus_basis))
        for ((a,), t), coeff in c.entries.items():
            if t not in rowpos:
                raise ValueError("cochain is not p_+ valued")
            m[rowpos[t]][a] = coeff
        return cls(g, m)

    def __add__(self, other):
        if self.grading is not other.grading:
            raise ValueError("rho maps over different gradings")
        return RhoMap(
            self.grading,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.matrix, other.matrix)],
        )

    def __eq__(self, other):
        return (
            isinstance(other, RhoMap)
            and self.grading is other.grading
            and self.matrix == other.matrix
        )

    def is_zero(self):
        return all(all(c == 0 for c in row) for row in self.matrix)

    @classmethod
    def zero(cls, grading):
        return cls(grading)


# -- multi-index machinery -----------------------------------------------------


@lru_cache(maxsize=None)
def multi_indices(k, total):
    """All (j_1..j_k) with j_1 + 2 j_2 + ... + k j_k = total, lexicographic."""
    out = []

    def rec(pos, remaining, cur):
        if pos > k:
            if remaining == 0:
                out.append(tuple(cur))
            return
        for j in range(remaining // pos + 1):
            cur.append(j)
            rec(pos + 1, remaining - pos * j, cur)
            cur.pop()

    rec(1, total, [])
    return tuple(out)


def _coeff(j):
    num = (-1) ** sum(j)
    den = 1
    for jm in j:
        for t in range(2, jm + 1):
            den *= t
    return Fraction(num, den)


def _apply_ad_word(u, j, v):
    """ad(Y_k)^{j_k} o ... o ad(Y_1)^{j_1} applied to v."""
    alg = u.grading.algebra
    for m in range(1, u.grading.k + 1):
        for _ in range(j[m - 1]):
            v = alg.bracket(u.upsilon[m], v)
            if v.is_zero():
                return v
    return v


def _graded_sum(u, xi, target_degree):
    """sum over |j| + l = target of coeff(j) ad-word(xi_l)."""
    g = u.grading
    total = g.algebra.zero()
    for ell in range(-g.k, 0):
        need = target_degree - ell
        if need < 0:
            continue
        x = xi.component(ell)
        if x.is_zero():
            continue
        for j in multi_indices(g.k, need):
            term = _apply_ad_word(u, j, x)
            if not term.is_zero():
                total = total + term.scale(_coeff(j))
    return total


# -- the closed-form transforms ------------------------------------------------


def transform_splitting(u, xi):
    """New splitting of a tangent vector whose old splitting is xi."""
    g = u.grading
    comps = {}
    for i in range(-g.k, 0):
        v = _graded_sum(u, xi, i)
        if not v.is_zero():
            comps[i] = v
    return GradedVector(g, comps)


def transform_connection(u, xi):
    """g_0-valued correction of the covariant derivative in direction xi."""
    return _graded_sum(u, xi, 0)


def transform_rho(u, p, xi):
    """Value of the transformed Rho-tensor on xi (an element of p_+)."""
    g = u.grading
    alg = g.algebra
    total = alg.zero()
    for i in range(1, g.k + 1):
        # values of the old splitting pushed up to degree i
        total = total + _graded_sum(u, xi, i)
        # old Rho values pushed up to degree i
        for ell in range(1, g.k + 1):
            need = i - ell
            if need < 0:
                continue
            pl = p.component(ell, xi)
            if pl.is_zero():
                continue
            for j in multi_indices(g.k, need):
                term = _apply_ad_word(u, j, pl)
                if not term.is_zero():
                    total = total + term.scale(_coeff(j))
        # derivative terms: constrained sum with (j_1..j_{m-1}) = 0
        for m in range(1, g.k + 1):
            need = i - m
            if need < 0:
                continue
            dy = u.dy(m, xi)
            if dy.is_zero():
                continue
            for j in multi_indices(g.k, need):
                if any(j[t] for t in range(m - 1)):
                    continue
                term = _apply_ad_word(u, j, dy)
                if not term.is_zero():
                    c = _coeff(j) / (j[m - 1] + 1)
                    total = total + term.scale(c)
    return total


# -- brute-force oracles from the exponential picture ----------------------------


def oracle_adexp(u, v):
    """exp(ad(-Y_k)) o ... o exp(ad(-Y_1)) applied to v, exactly."""
    alg = u.grading.algebra
    for m in range(1, u.grading.k + 1):
        y = u.upsilon[m]
        acc = alg.zero() + v
        term = v
        p = 1
        while True:
            term = alg.bracket(y, term).scale(Fraction(-1, p))
            if term.is_zero():
                break
            acc = acc + term
            p += 1
        v = acc
    return v


def oracle_phi(u, xi):
    """The p_+-valued series collecting all derivative contributions.

    For each degree m: the left logarithmic derivative of exp gives
    sum_p (-1)^p/(p+1)! ad(Y_m)^p (DY_m(xi)), then the remaining
    exponentials exp(ad(-Y_k)) o ... o exp(ad(-Y_{m+1})) are applied.
    """
    g = u.grading
    alg = g.algebra
    total = alg.zero()
    for m in range(1, g.k + 1):
        dy = u.dy(m, xi)
        if dy.is_zero():
            continue
        inner = alg.zero()
        term = dy
        p = 0
        while not term.is_zero():
            inner = inner + term.scale(Fraction((-1) ** p, _fact(p + 1)))
            term = alg.bracket(u.upsilon[m], term)
            p += 1
        v = inner
        for mm in range(m + 1, g.k + 1):
            y = u.upsilon[mm]
            acc = alg.zero() + v
            t2 = v
            q = 1
            while True:
                t2 = alg.bracket(y, t2).scale(Fraction(-1, q))
                if t2.is_zero():
                    break
                acc = acc + t2
                q += 1
            v = acc
        total = total + v
    return total


def _fact(n):
    f = 1
    for i in range(2, n + 1):
        f *= i
    return f


# -- infinitesimal versions -------------------------------------------------------


def delta_splitting(u, xi):
    """First-order variation of the splitting: -sum_m {Y_m, xi_{i-m}}."""
    g = u.grading
    alg = g.algebra
    comps = {}
    for i in range(-g.k, 0):
        total = alg.zero()
        for m in range(1, g.k + 1):
            src = i - m
            if src < -g.k:
                continue
            total = total - alg.bracket(u.upsilon[m], xi.component(src))
        if not total.is_zero():
            comps[i] = total
    return GradedVector(g, comps)


def delta_rho(u, p, xi):
    """First-order variation of the Rho value at xi."""
    g = u.grading
    alg = g.algebra
    total = alg.zero()
    for i in range(1, g.k + 1):
        total = total + u.dy(i, xi)
        for m in range(1, i):
            total = total - alg.bracket(u.upsilon[m], p.component(i - m, xi))
        for m in range(1, g.k - i + 1):
            total = total - alg.bracket(u.upsilon[i + m], xi.component(-m))
    return total


def delta_connection(u, xi):
    """First-order variation of the connection correction."""
    g = u.grading
    alg = g.algebra
    total = alg.zero()
    for m in range(1, g.k + 1):
        total = total - alg.bracket(u.upsilon[m], xi.component(-m))
    return total


# -- scale one-form and composition ------------------------------------------------


def upsilon_one_form(u, sf, xi):
    """The one-form measuring the change of scale connections, term by term."""
    g = u.grading
    if sf.grading is not g:
        raise ValueError("scale functional over a different grading")
    total = F0
    for ell in range(-g.k, 0):
        x = xi.component(ell)
        if x.is_zero():
            continue
        for j in multi_indices(g.k, -ell):
            term = _apply_ad_word(u, j, x)
            if not term.is_zero():
                total += _coeff(j) * sf.eval(term)
    return total


def compose_upsilons(u, u2):
    """Jet of the composite change (apply u first, then u2); Y-part only.

    The derivative data of a composite change is not determined by the two
    jets alone, so the result carries zero DY.
    """
    if u.grading is not u2.grading:
        raise ValueError("jets over different gradings")
    g = u.grading
    word = [u.upsilon[m] for m in range(1, g.k + 1)]
    word += [u2.upsilon[m] for m in range(1, g.k + 1)]
    word = [w for w in word if not w.is_zero()]
    factors = pplus_factorize(g, word)
    return UpsilonJet(g, {m + 1: z for m, z in enumerate(factors)})
