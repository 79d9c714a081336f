"""Cochain spaces C^n(g_-, g), the differential, codifferential and Hodge theory.

Cochains are stored sparsely: an entry ((a_1, ..., a_n), t) -> c means the
alternating map sends the increasing tuple of g_- basis vectors at positions
a_i to c times algebra basis vector t.  The differential is the
Chevalley-Eilenberg one,

    (d f)(X_0..X_n) = sum_i (-1)^i [X_i, f(..no X_i..)]
                    + sum_{i<j} (-1)^{i+j} f([X_i,X_j], ..no X_i, X_j..),

and the codifferential is its matrix adjoint under the cochain inner product
built from the Killing form composed with the involution that swaps opposite
root vectors.  That inner product is positive definite on the split form, so
the Hodge decomposition per homogeneity block is a theorem; the code still
verifies the direct sum exactly and raises StructuralError on any failure
rather than repairing it.

Arity is capped at 3: the differential stops at C^2 -> C^3 and the Laplacian
at C^2, which covers everything the normalization recursion consumes.
"""

from fractions import Fraction
from itertools import combinations

from .linalg import (
    F0,
    F1,
    column_stack,
    mat_mul,
    mat_vec,
    nullspace,
    rank,
    solve,
    solve_matrix,
    transpose,
    zeros,
)
from .lie_core import Element

MAX_ARITY = 3


class StructuralError(Exception):
    """Raised when the Hodge assumptions fail on actual data."""


class Cochain:
    """Element of Lambda^n (g_-)* tensor g over a fixed grading."""

    __slots__ = ("grading", "arity", "entries")

    def __init__(self, grading, arity, entries=None):
        if not 0 <= arity <= MAX_ARITY:
            raise ValueError("arity must be between 0 and %d" % MAX_ARITY)
        self.grading = grading
        self.arity = arity
        self.entries = {}
        if entries:
            for (args, t), c in entries.items():
                c = Fraction(c)
                if c == 0:
                    continue
                args = tuple(args)
                if len(args) != arity or list(args) != sorted(set(args)):
                    raise ValueError("cochain keys must be strictly increasing tuples")
                self.entries[(args, t)] = c

    # -- vector space structure -------------------------------------------------

    def __add__(self, other):
        self._check(other)
        out = dict(self.entries)
        for k, c in other.entries.items():
            s = out.get(k, F0) + c
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        return Cochain(self.grading, self.arity, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        if c == 0:
            return Cochain(self.grading, self.arity)
        return Cochain(
            self.grading, self.arity, {k: c * v for k, v in self.entries.items()}
        )

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and self.grading is other.grading
            and self.arity == other.arity
            and self.entries == other.entries
        )

    def is_zero(self):
        return not self.entries

    def _check(self, other):
        if self.grading is not other.grading or self.arity != other.arity:
            raise ValueError("cochain mismatch")

    # -- evaluation ---------------------------------------------------------------

    def value_at(self, args):
        """Value on a tuple of g_- basis positions (any order, duplicates -> 0)."""
        sorted_args, sign = _sort_sign(args)
        if sign == 0:
            return self.grading.algebra.zero()
        out = [F0] * self.grading.algebra.dim
        for t in range(self.grading.algebra.dim):
            c = self.entries.get((sorted_args, t))
            if c:
                out[t] = sign * c
        return Element(self.grading.algebra, out)

    def evaluate(self, elements):
        """Multilinear alternating evaluation on elements of g_-."""
        if len(elements) != self.arity:
            raise ValueError("wrong number of arguments")
        g = self.grading
        coords = [g.gminus_coords(x) for x in elements]
        total = g.algebra.zero()
        m = len(g.gminus_basis)
        for args in _tuples(m, self.arity):
            c = F1
            for row, a in zip(coords, args):
                c *= row[a]
                if c == 0:
                    break
            if c == 0:
                continue
            total = total + self.value_at(args).scale(c)
        return total

    # -- homogeneity ---------------------------------------------------------------

    def entry_homogeneity(self, args, t):
        g = self.grading
        return g.degree[t] - sum(g.degree[g.gminus_basis[a]] for a in args)

    def homogeneity_components(self):
        out = {}
        for (args, t), c in self.entries.items():
            ell = self.entry_homogeneity(args, t)
            out.setdefault(ell, {})[(args, t)] = c
        return {
            ell: Cochain(self.grading, self.arity, d) for ell, d in sorted(out.items())
        }

    def homogeneous_part(self, ell):
        d = {
            k: c
            for k, c in self.entries.items()
            if self.entry_homogeneity(*k) == ell
        }
        return Cochain(self.grading, self.arity, d)

    def target_part(self, degrees):
        """Sub-cochain whose target degrees lie in the given set."""
        g = self.grading
        d = {k: c for k, c in self.entries.items() if g.degree[k[1]] in degrees}
        return Cochain(self.grading, self.arity, d)

    def __repr__(self):
        return "Cochain(arity=%d, %d entries)" % (self.arity, len(self.entries))


def _sort_sign(args):
    args = list(args)
    if len(set(args)) != len(args):
        return tuple(args), 0
    sign = 1
    for i in range(len(args)):
        for j in range(len(args) - 1 - i):
            if args[j] > args[j + 1]:
                args[j], args[j + 1] = args[j + 1], args[j]
                sign = -sign
    return tuple(args), sign


def _tuples(m, n):
    return combinations(range(m), n)


def zero_cochain(grading, arity):
    return Cochain(grading, arity)


# -- the differential --------------------------------------------------------------


def differential(c):
    """Chevalley-Eilenberg differential C^n -> C^{n+1}."""
    if c.arity + 1 > MAX_ARITY:
        raise ValueError("differential beyond arity %d is out of scope" % MAX_ARITY)
    g = c.grading
    alg = g.algebra
    m = len(g.gminus_basis)
    out = {}
    for args in _tuples(m, c.arity + 1):
        total = alg.zero()
        for i, a in enumerate(args):
            rest = args[:i] + args[i + 1 :]
            v = c.value_at(rest)
            if not v.is_zero():
                term = alg.bracket(alg.basis_element(g.gminus_basis[a]), v)
                total = total + term.scale((-1) ** i)
        for i in range(len(args)):
            for j in range(i + 1, len(args)):
                bi = g.gminus_basis[args[i]]
                bj = g.gminus_basis[args[j]]
                rest = tuple(x for idx, x in enumerate(args) if idx not in (i, j))
                br = alg.bracket_basis(bi, bj)
                for t, coeff in br:
                    # [g_-, g_-] lies in g_- (or is zero past degree -k)
                    a0 = g.gminus_pos[t]
                    v = c.value_at((a0,) + rest)
                    if not v.is_zero():
                        total = total + v.scale(((-1) ** (i + j)) * coeff)
        for t, coeff in zip(range(alg.dim), total.coeffs):
            if coeff:
                out[(args, t)] = coeff
    return Cochain(g, c.arity + 1, out)


# -- block machinery ----------------------------------------------------------------


class _Complex:
    """Per-grading cache of block bases, differentials, Grams and adjoints."""

    def __init__(self, grading):
        self.grading = grading
        self._basis = {}
        self._dmat = {}
        self._gram = {}
        self._smat = {}
        self._lap = {}
        self._gram_g = None
        self._weights = None

    # twisted inner product on the algebra and entry weights

    def gram_g(self):
        if self._gram_g is None:
            alg = self.grading.algebra
            gg = zeros(alg.dim, alg.dim)
            for j in range(alg.dim):
                r = alg.roots[j]
                jj = j if r is None else alg.root_index[tuple(-x for x in r)]
                for i in range(alg.dim):
                    gg[i][j] = alg.killing[i][jj]
            self._gram_g = gg
        return self._gram_g

    def weight(self, args):
        if self._weights is None:
            gg = self.gram_g()
            self._weights = [
                F1 / gg[b][b] for b in self.grading.gminus_basis
            ]
        w = F1
        for a in args:
            w *= self._weights[a]
        return w

    # block bases and coordinates

    def homogeneities(self, n):
        g = self.grading
        m = len(g.gminus_basis)
        out = set()
        for args in _tuples(m, n):
            s = sum(g.degree[g.gminus_basis[a]] for a in args)
            for t in range(g.algebra.dim):
                out.add(g.degree[t] - s)
        return sorted(out)

    def basis(self, n, ell):
        key = (n, ell)
        if key not in self._basis:
            g = self.grading
            m = len(g.gminus_basis)
            items = []
            for args in _tuples(m, n):
                s = sum(g.degree[g.gminus_basis[a]] for a in args)
                for t in range(g.algebra.dim):
                    if g.degree[t] - s == ell:
                        items.append((args, t))
            self._basis[key] = items
        return self._basis[key]

    def to_vec(self, c, n, ell):
        basis = self.basis(n, ell)
        pos = {k: i for i, k in enumerate(basis)}
        v = [F0] * len(basis)
        for k, coeff in c.entries.items():
            if c.entry_homogeneity(*k) == ell:
                v[pos[k]] = coeff
        return v

    def from_vec(self, v, n, ell):
        basis = self.basis(n, ell)
        return Cochain(
            self.grading, n, {k: c for k, c in zip(basis, v) if c != 0}
        )

    def dmat(self, n, ell):
        """Matrix of the differential from block (n, ell) to (n+1, ell)."""
        key = (n, ell)
        if key not in self._dmat:
            src = self.basis(n, ell)
            dst = self.basis(n + 1, ell)
            pos = {k: i for i, k in enumerate(dst)}
            m = zeros(len(dst), len(src))
            for col, k in enumerate(src):
                image = differential(Cochain(self.grading, n, {k: F1}))
                for kk, c in image.entries.items():
                    m[pos[kk]][col] = c
            self._dmat[key] = m
        return self._dmat[key]

    def gram(self, n, ell):
        key = (n, ell)
        if key not in self._gram:
            basis = self.basis(n, ell)
            gg = self.gram_g()
            m = zeros(len(basis), len(basis))
            for i, (argsi, ti) in enumerate(basis):
                wi = self.weight(argsi)
                for j, (argsj, tj) in enumerate(basis):
                    if argsi == argsj and gg[ti][tj]:
                        m[i][j] = wi * gg[ti][tj]
            self._gram[key] = m
        return self._gram[key]

    def smat(self, n, ell):
        """Matrix of the codifferential from block (n, ell) to (n-1, ell)."""
        key = (n, ell)
        if key not in self._smat:
            src = self.basis(n, ell)
            dst = self.basis(n - 1, ell) if n >= 1 else []
            if not src or not dst:
                self._smat[key] = zeros(len(dst), len(src))
            else:
                d = self.dmat(n - 1, ell)
                rhs = mat_mul(transpose(d), self.gram(n, ell))
                s = solve_matrix(self.gram(n - 1, ell), rhs)
                assert s is not None
                self._smat[key] = s
        return self._smat[key]

    def lap(self, n, ell):
        key = (n, ell)
        if key not in self._lap:
            dim = len(self.basis(n, ell))
            box = zeros(dim, dim)
            if n >= 1 and self.basis(n - 1, ell):
                box = _madd(box, mat_mul(self.dmat(n - 1, ell), self.smat(n, ell)))
            if n + 1 <= MAX_ARITY and self.basis(n + 1, ell):
                box = _madd(box, mat_mul(self.smat(n + 1, ell), self.dmat(n, ell)))
            self._lap[key] = box
        return self._lap[key]

    def harmonic_basis(self, n, ell):
        return nullspace(self.lap(n, ell))


def _madd(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def complex_of(grading):
    if grading._cochain_cache is None:
        grading._cochain_cache = _Complex(grading)
    return grading._cochain_cache


# -- public operations ------------------------------------------------------------


def pairing(a, b):
    """Cochain inner product: Killing-form pairing twisted by the root swap."""
    a._check(b)
    cx = complex_of(a.grading)
    gg = cx.gram_g()
    by_args = {}
    for (args, t), c in b.entries.items():
        by_args.setdefault(args, []).append((t, c))
    total = F0
    for (args, s), c in a.entries.items():
        for t, c2 in by_args.get(args, ()):
            if gg[s][t]:
                total += cx.weight(args) * c * c2 * gg[s][t]
    return total


def codifferential(c):
    """Adjoint of the differential under the cochain inner product."""
    if c.arity < 1:
        raise ValueError("codifferential needs arity >= 1")
    cx = complex_of(c.grading)
    out = Cochain(c.grading, c.arity - 1)
    for ell, part in c.homogeneity_components().items():
        v = cx.to_vec(part, c.arity, ell)
        s = cx.smat(c.arity, ell)
        out = out + cx.from_vec(mat_vec(s, v), c.arity - 1, ell)
    return out


def laplacian(c):
    """Kostant Laplacian dd* + d*d, block by homogeneity."""
    if c.arity > MAX_ARITY - 1:
        raise ValueError("laplacian is supported for arity <= %d" % (MAX_ARITY - 1))
    cx = complex_of(c.grading)
    out = Cochain(c.grading, c.arity)
    for ell, part in c.homogeneity_components().items():
        v = cx.to_vec(part, c.arity, ell)
        out = out + cx.from_vec(mat_vec(cx.lap(c.arity, ell), v), c.arity, ell)
    return out


def _block_hodge_check(cx, n, ell):
    """Exact rank bookkeeping of the decomposition in one block."""
    dim = len(cx.basis(n, ell))
    rank_d_in = rank(cx.dmat(n - 1, ell)) if n >= 1 and cx.basis(n - 1, ell) else 0
    rank_s_in = (
        rank(cx.smat(n + 1, ell))
        if n + 1 <= MAX_ARITY and cx.basis(n + 1, ell)
        else 0
    )
    ker = len(cx.harmonic_basis(n, ell))
    if rank_d_in + rank_s_in + ker != dim:
        raise StructuralError(
            "Hodge decomposition fails in arity %d homogeneity %d" % (n, ell)
        )
    return dim, rank_d_in, rank_s_in, ker


def hodge_decompose(c):
    """Split a cochain as (image of d, harmonic, image of d*), exactly."""
    if c.arity > MAX_ARITY - 1:
        raise ValueError("hodge decomposition supported for arity <= 2")
    cx = complex_of(c.grading)
    n = c.arity
    dpart = Cochain(c.grading, n)
    hpart = Cochain(c.grading, n)
    spart = Cochain(c.grading, n)
    for ell, part in c.homogeneity_components().items():
        _block_hodge_check(cx, n, ell)
        v = cx.to_vec(part, n, ell)
        box = cx.lap(n, ell)
        kb = cx.harmonic_basis(n, ell)
        cols = column_stack([box, transpose(kb)]) if kb else box
        sol = solve(cols, v)
        if sol is None:
            raise StructuralError(
                "cochain not reachable from Laplacian image plus kernel"
            )
        dimb = len(box)
        y = sol[:dimb]
        hcoef = sol[dimb:]
        h = [F0] * dimb
        for coef, kvec in zip(hcoef, kb):
            h = [a + coef * b for a, b in zip(h, kvec)]
        hpart = hpart + cx.from_vec(h, n, ell)
        if n >= 1 and cx.basis(n - 1, ell):
            dpart = dpart + cx.from_vec(
                mat_vec(mat_mul(cx.dmat(n - 1, ell), cx.smat(n, ell)), y), n, ell
            )
        if n + 1 <= MAX_ARITY and cx.basis(n + 1, ell):
            spart = spart + cx.from_vec(
                mat_vec(mat_mul(cx.smat(n + 1, ell), cx.dmat(n, ell)), y), n, ell
            )
    return dpart, hpart, spart


def laplacian_inverse(c):
    """Solve box(x) = c; StructuralError when c is outside the image."""
    if c.arity > MAX_ARITY - 1:
        raise ValueError("laplacian inverse supported for arity <= 2")
    cx = complex_of(c.grading)
    out = Cochain(c.grading, c.arity)
    for ell, part in c.homogeneity_components().items():
        v = cx.to_vec(part, c.arity, ell)
        sol = solve(cx.lap(c.arity, ell), v)
        if sol is None:
            raise StructuralError(
                "cochain outside the image of the Laplacian "
                "(arity %d homogeneity %d)" % (c.arity, ell)
            )
        out = out + cx.from_vec(sol, c.arity, ell)
    return out


def harmonic_projection(c):
    return hodge_decompose(c)[1]


def cohomology_dims(grading, n):
    """Map homogeneity -> dim H^n(g_-, g) in that homogeneity."""
    if n > MAX_ARITY - 1:
        raise ValueError("cohomology supported for arity <= 2")
    cx = complex_of(grading)
    out = {}
    for ell in cx.homogeneities(n):
        dim = len(cx.basis(n, ell))
        if dim == 0:
            continue
        kerd = dim - (rank(cx.dmat(n, ell)) if n + 1 <= MAX_ARITY else 0)
        imd = rank(cx.dmat(n - 1, ell)) if n >= 1 and cx.basis(n - 1, ell) else 0
        out[ell] = kerd - imd
    return out


def check_h1_condition(grading):
    """True iff H^1(g_-, g) vanishes in every homogeneity >= 1."""
    dims = cohomology_dims(grading, 1)
    return all(d == 0 for ell, d in dims.items() if ell >= 1)


def block_rank_report(grading, n):
    """Per-homogeneity (dim, rank d in, rank d* in, dim ker box) table."""
    cx = complex_of(grading)
    out = {}
    for ell in cx.homogeneities(n):
        if not cx.basis(n, ell):
            continue
        out[ell] = _block_hodge_check(cx, n, ell)
    return out
