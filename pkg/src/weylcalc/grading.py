"""|k|-gradings from crossed simple roots, grading elements, scales, P+ factorization.

Crossing a set S of simple roots grades each root vector by the sum of its
coefficients over S; Cartan generators sit in degree zero.  The grading
element, the center of g_0, scaling elements and the scale functional
lambda' are all obtained by exact linear algebra from the bracket table.
"""

from fractions import Fraction

from .linalg import (
    F0,
    F1,
    identity,
    mat_mul,
    mat_vec,
    mat_is_zero,
    mat_sub,
    nullspace,
    rank,
    solve,
    zeros,
)
from .lie_core import Element


class Grading:
    """Degree decomposition of an algebra induced by a crossed node set."""

    def __init__(self, algebra, crossed, degree):
        self.algebra = algebra
        self.crossed = frozenset(crossed)
        self.degree = degree
        self.k = max(degree)
        comp = {}
        for i, d in enumerate(degree):
            comp.setdefault(d, []).append(i)
        self.component_bases = {d: tuple(comp[d]) for d in sorted(comp)}
        self.gminus_basis = tuple(
            i for d in range(-self.k, 0) for i in self.component_bases.get(d, ())
        )
        self.pplus_basis = tuple(
            i for d in range(1, self.k + 1) for i in self.component_bases.get(d, ())
        )
        self.gminus_pos = {b: a for a, b in enumerate(self.gminus_basis)}
        self._grading_element = None
        self._cochain_cache = None

    def degree_of(self, i):
        return self.degree[i]

    def dims(self):
        return {d: len(b) for d, b in self.component_bases.items()}

    def component(self, x, d):
        """Projection of an element onto g_d."""
        out = [F0] * self.algebra.dim
        for i in x.support():
            if self.degree[i] == d:
                out[i] = x.coeffs[i]
        return Element(self.algebra, out)

    def degrees_in(self, x):
        return sorted({self.degree[i] for i in x.support()})

    def is_homogeneous(self, x, d):
        return all(self.degree[i] == d for i in x.support())

    def gminus_coords(self, x):
        """Coefficients of an element of g_ over the g_ basis."""
        for i in x.support():
            if self.degree[i] >= 0:
                raise ValueError("element is not in g_minus")
        return [x.coeffs[b] for b in self.gminus_basis]

    def element_from_gminus(self, coords):
        out = [F0] * self.algebra.dim
        for b, c in zip(self.gminus_basis, coords):
            out[b] = Fraction(c)
        return Element(self.algebra, out)

    def __repr__(self):
        return "Grading(%s%s, crossed=%s, k=%s)" % (
            self.algebra.series,
            self.algebra.rank,
            sorted(self.crossed),
            self.k,
        )


def grade(algebra, crossed):
    """Grading of the algebra by the crossed simple-root node set (1-based)."""
    crossed = set(crossed)
    if not crossed:
        raise ValueError("crossed node set must be nonempty")
    if not crossed <= set(range(1, algebra.rank + 1)):
        raise ValueError("crossed nodes out of range 1..%d" % algebra.rank)
    degree = []
    for i in range(algebra.dim):
        r = algebra.roots[i]
        if r is None:
            degree.append(0)
        else:
            degree.append(sum(r[c - 1] for c in crossed))
    g = Grading(algebra, crossed, degree)
    _validate(g)
    return g


def _validate(g):
    alg = g.algebra
    # bracket respects degrees
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            d = g.degree[i] + g.degree[j]
            for t, _ in alg.bracket_basis(i, j):
                if g.degree[t] != d:
                    raise ValueError("bracket violates grading")
    # g_minus generated by g_{-1}
    span = [_indicator(alg, i) for i in g.component_bases.get(-1, ())]
    for d in range(-2, -g.k - 1, -1):
        nxt = []
        for i in g.component_bases.get(-1, ()):
            for j in g.component_bases.get(d + 1, ()):
                v = [F0] * alg.dim
                for t, c in alg.bracket_basis(i, j):
                    v[t] = c
                nxt.append(v)
        if rank(nxt) != len(g.component_bases.get(d, ())):
            raise ValueError("g_minus not generated by g_{-1}")
        span.extend(nxt)
    # no nonzero ideal of the algebra inside g_0 (largest invariant subspace)
    g0 = [_indicator(alg, i) for i in g.component_bases.get(0, ())]
    current = g0
    while True:
        refined = _invariant_refine(alg, current, g0)
        if len(refined) == len(current):
            break
        current = refined
    if current:
        raise ValueError("a nonzero ideal is contained in g_0")


def _indicator(alg, i):
    v = [F0] * alg.dim
    v[i] = F1
    return v


def _invariant_refine(alg, current, g0):
    """Largest subspace of span(current) whose ad-orbit stays in span(g0)."""
    if not current:
        return []
    # x = current^T c ; require bracket(b, x) in span(g0) for all basis b.
    # Build the linear conditions: components of [b, x] outside g0 vanish
    # and [b, x]'s g0 part may be anything, plus [b,x] must stay in current?
    # For the largest ad-invariant subspace inside g0 the standard iteration
    # refines: I_{n+1} = { x in I_n : [g, x] subset I_n }.
    span_rows = current
    cols = len(span_rows)
    conds = []
    for b in range(alg.dim):
        # matrix of ad(b) applied to span vectors, expressed in ambient coords
        img = []
        for v in span_rows:
            out = [F0] * alg.dim
            for j, c in enumerate(v):
                if c:
                    for t, cc in alg.bracket_basis(b, j):
                        out[t] += c * cc
            img.append(out)
        # require img combination to lie in span(current): components in the
        # complement of span(current) must vanish.  Use rank conditions via
        # solving: x in span(current), [b,x] in span(current).
        conds.append(img)
    # coordinates: x = sum_i c_i span_rows[i]; for each b, [b,x] must be a
    # combination of span_rows: i.e. rank([span_rows; [b,x]]) stays equal.
    # Set up: residual of [b,x] after projecting onto span(current) is zero.
    from .linalg import rref

    basis_mat, pivots = rref(span_rows)
    pivot_cols = list(pivots)

    def residual(vec):
        v = list(vec)
        for row, pc in zip(basis_mat, pivot_cols):
            f = v[pc]
            if f:
                v = [a - f * b2 for a, b2 in zip(v, row)]
        return v

    cond_rows = []
    for img in conds:
        # each ambient coordinate of the residual gives one linear condition
        res = [residual(iv) for iv in img]
        for coord in range(alg.dim):
            row = [res[i][coord] for i in range(cols)]
            if any(row):
                cond_rows.append(row)
    if not cond_rows:
        return current
    ns = nullspace(cond_rows)
    return [
        [sum(c * span_rows[i][t] for i, c in enumerate(v)) for t in range(alg.dim)]
        for v in ns
    ]


def grading_element(g):
    """The unique E in g_0 with [E, Y] = j Y on every g_j."""
    if g._grading_element is not None:
        return g._grading_element
    alg = g.algebra
    g0 = g.component_bases.get(0, ())
    rows, rhs = [], []
    for y in range(alg.dim):
        target = {}
        for pos, i in enumerate(g0):
            for t, c in alg.bracket_basis(i, y):
                target.setdefault(t, [F0] * len(g0))[pos] = c
        wanted = Fraction(g.degree[y])
        for t in set(target) | {y}:
            row = target.get(t, [F0] * len(g0))
            rows.append(row)
            rhs.append(wanted if t == y else F0)
    sol = solve(rows, rhs)
    if sol is None:
        raise ValueError("no grading element (grading invalid)")
    if nullspace(rows):
        raise ValueError("grading element not unique")
    out = [F0] * alg.dim
    for pos, i in enumerate(g0):
        out[i] = sol[pos]
    e = Element(alg, out)
    g._grading_element = e
    return e


def center_of_g0(g):
    """Basis of the center of g_0, with the Killing restriction checked."""
    alg = g.algebra
    g0 = list(g.component_bases.get(0, ()))
    rows = []
    for j in g0:
        # condition [x, b_j] = 0 for x in g_0
        block = {}
        for pos, i in enumerate(g0):
            for t, c in alg.bracket_basis(i, j):
                block.setdefault(t, [F0] * len(g0))[pos] = c
        for t, row in block.items():
            rows.append(row)
    basis = []
    vecs = nullspace(rows) if rows else [ _unit(len(g0), p) for p in range(len(g0)) ]
    for v in vecs:
        out = [F0] * alg.dim
        for pos, i in enumerate(g0):
            out[i] = v[pos]
        basis.append(Element(alg, out))
    # Killing form restricted to the center must be nondegenerate
    gram = [[alg.killing_form(x, y) for y in basis] for x in basis]
    if rank(gram) != len(basis):
        raise ValueError("Killing form degenerate on center of g_0")
    return basis


def _unit(n, p):
    v = [F0] * n
    v[p] = F1
    return v


def central_character_spaces(g):
    """Joint eigenspaces of ad z(g_0) on p_+, as lists of basis indices.

    The center acts diagonally on root vectors, so the spaces are exact
    groupings of the p_+ basis by the character tuple.
    """
    alg = g.algebra
    z = center_of_g0(g)
    for a in z:
        for i in a.support():
            if alg.roots[i] is not None:
                raise ValueError("center of g_0 not inside the Cartan subalgebra")
    spaces = {}
    for b in g.pplus_basis:
        char = []
        for a in z:
            br = alg.bracket(a, alg.basis_element(b))
            c = br.coeffs[b]
            rest = br - alg.basis_element(b).scale(c)
            if not rest.is_zero():
                raise ValueError("center does not act diagonally")
            char.append(c)
        spaces.setdefault(tuple(char), []).append(b)
    return [tuple(v) for _, v in sorted(spaces.items())]


def is_scaling_element(g, a):
    """(verdict, [(space, scalar)]): scalar of ad(a) on each central-character
    space of p_+; verdict true iff every scalar is nonzero."""
    alg = g.algebra
    if not _is_central(g, a):
        raise ValueError("element is not central in g_0")
    out = []
    ok = True
    for space in central_character_spaces(g):
        b = space[0]
        br = alg.bracket(a, alg.basis_element(b))
        s = br.coeffs[b]
        for b2 in space:
            br2 = alg.bracket(a, alg.basis_element(b2))
            if br2 != alg.basis_element(b2).scale(s):
                raise ValueError("central element acts non-scalar on a character space")
        out.append((space, s))
        if s == 0:
            ok = False
    return ok, out


def _is_central(g, a):
    alg = g.algebra
    if any(g.degree[i] != 0 for i in a.support()):
        return False
    for i in g.component_bases.get(0, ()):
        if not alg.bracket(a, alg.basis_element(i)).is_zero():
            return False
    return True


class ScaleFunctional:
    """lambda'(A) = B(E_lambda, A) on g_0, with the per-space scalars a_alpha."""

    def __init__(self, grading, e_lambda, component_scalars):
        self.grading = grading
        self.e_lambda = e_lambda
        self.component_scalars = component_scalars
        alg = grading.algebra
        self.g0_basis = grading.component_bases.get(0, ())
        self.lambda_prime = [
            alg.killing_form(e_lambda, alg.basis_element(i)) for i in self.g0_basis
        ]

    def eval(self, a):
        """lambda'(a) for a in g_0."""
        alg = self.grading.algebra
        s = F0
        for i in a.support():
            if self.grading.degree[i] != 0:
                raise ValueError("scale functional takes g_0 arguments")
            s += a.coeffs[i] * self.lambda_prime[self.g0_basis.index(i)]
        return s


def scale_functional(g, e_lambda):
    """Build the scale functional of a scaling element, verifying the trace identity."""
    ok, scalars = is_scaling_element(g, e_lambda)
    if not ok:
        raise ValueError("not a scaling element (zero scalar on some component)")
    sf = ScaleFunctional(g, e_lambda, scalars)
    alg = g.algebra
    # lambda'(A) = 2 sum_alpha a_alpha tr(ad A | p^alpha) for all A in g_0
    for i in g.component_bases.get(0, ()):
        a = alg.basis_element(i)
        total = F0
        for space, s in scalars:
            tr = F0
            for b in space:
                tr += alg.bracket(a, alg.basis_element(b)).coeffs[b]
            total += 2 * s * tr
        if total != sf.eval(a):
            raise ValueError("scale functional trace identity failed")
    return sf


def scale_pairing_matrix(sf, i):
    """Matrix of Z in g_i against X in g_{-i} under (Z, X) -> lambda'([Z, X])."""
    g = sf.grading
    alg = g.algebra
    zi = g.component_bases.get(i, ())
    xi = g.component_bases.get(-i, ())
    m = zeros(len(zi), len(xi))
    for a, z in enumerate(zi):
        for b, x in enumerate(xi):
            br = alg.bracket(alg.basis_element(z), alg.basis_element(x))
            m[a][b] = sf.eval(g.component(br, 0))
    return m


def exp_ad(x):
    """Exact matrix exponential of ad(x) for nilpotent ad(x)."""
    alg = x.algebra
    ad = alg.ad_matrix(x)
    out = identity(alg.dim)
    term = identity(alg.dim)
    p = 1
    while True:
        term = mat_mul(ad, term)
        if mat_is_zero(term):
            break
        if p > alg.dim:
            raise ValueError("ad(x) is not nilpotent")
        out = [
            [o + t / _factorial(p) for o, t in zip(orow, trow)]
            for orow, trow in zip(out, term)
        ]
        p += 1
    return out


def _factorial(p):
    f = 1
    for i in range(2, p + 1):
        f *= i
    return Fraction(f)


def pplus_factorize(g, word):
    """Unique (Z_1, ..., Z_k), Z_i in g_i, with the same adjoint matrix as the word.

    The word is a list of p_+ elements (mixed degrees allowed); its product of
    adjoint exponentials is peeled degree by degree: the degree-shift-by-i
    block of the remaining matrix is ad(Z_i).
    """
    alg = g.algebra
    for w in word:
        for i in w.support():
            if g.degree[i] < 1:
                raise ValueError("word entries must lie in p_+")
    m = identity(alg.dim)
    for w in word:
        m = mat_mul(m, exp_ad(w))
    factors = []
    for step in range(1, g.k + 1):
        z = _read_shift_block(g, m, step)
        factors.append(z)
        m = mat_mul(exp_ad(z.scale(-1)), m)
    if not mat_is_zero(mat_sub(m, identity(alg.dim))):
        raise ValueError("factorization did not exhaust the adjoint matrix")
    return tuple(factors)


def _read_shift_block(g, m, step):
    """Solve ad(z) = degree-raising-by-step part of m for z in g_step."""
    alg = g.algebra
    zbasis = g.component_bases.get(step, ())
    rows, rhs = [], []
    for j in range(alg.dim):
        dj = g.degree[j]
        targets = {}
        for pos, zi in enumerate(zbasis):
            for t, c in alg.bracket_basis(zi, j):
                targets.setdefault(t, [F0] * len(zbasis))[pos] = c
        for t in range(alg.dim):
            if g.degree[t] != dj + step:
                continue
            rows.append(targets.get(t, [F0] * len(zbasis)))
            rhs.append(m[t][j])
    sol = solve(rows, rhs)
    if sol is None:
        raise ValueError("matrix is not an adjoint matrix of exp-products")
    out = [F0] * alg.dim
    for pos, zi in enumerate(zbasis):
        out[zi] = sol[pos]
    return Element(alg, out)
