"""Curvature predicates, the Weyl/total curvature relation, and Rho normalization.

Curvature enters as 2-cochain data; the manifold-level derivatives that
produce it are out of scope, so the recursion consumes homogeneity
components supplied by a provider callback.  The recursion computes
P^(l) = box^{-1} d*(K^(l)) - d(alpha_l) for l = 2..2k, where for l <= k the
restriction of box^{-1} d*(K^(l)) to arguments of degree <= -l (equivalently:
target degrees <= 0) must be matched by d(alpha_l); the unmatched part is
returned as the obstruction, never silently repaired.
"""

from fractions import Fraction

from .cohomology import (
    Cochain,
    StructuralError,
    codifferential,
    complex_of,
    differential,
    hodge_decompose,
    laplacian_inverse,
    pairing,
    zero_cochain,
)
from .lie_core import Element
from .linalg import F0, mat_mul, mat_vec, rank, solve, transpose, zeros
from .weyl_calculus import (
    GradedVector,
    RhoMap,
    UpsilonJet,
    multi_indices,
    oracle_adexp,
    split_gminus,
    transform_splitting,
    _apply_ad_word,
    _coeff,
)


class CurvatureData:
    """Holder for Weyl and/or total curvature with cached homogeneity parts."""

    def __init__(self, grading, weyl=None, total=None):
        self.grading = grading
        self.weyl = weyl
        self.total = total
        self._parts = {}
        for name, c in (("weyl", weyl), ("total", total)):
            if c is not None:
                if c.arity != 2 or c.grading is not grading:
                    raise ValueError("curvature must be a 2-cochain over the grading")
                parts = c.homogeneity_components()
                recombined = zero_cochain(grading, 2)
                for p in parts.values():
                    recombined = recombined + p
                assert recombined == c
                self._parts[name] = parts

    def homogeneity_parts(self, which="weyl"):
        return dict(self._parts[which])


# -- predicates -----------------------------------------------------------------


def check_flat(w):
    return w.is_zero()


def check_regular(w):
    """All homogeneity components of degree <= 0 vanish."""
    return all(ell > 0 for ell in w.homogeneity_components())


def check_torsion_free(w):
    """The part valued in g_- vanishes."""
    g = w.grading
    neg = set(range(-g.k, 0))
    return w.target_part(neg).is_zero()


def check_normal(w):
    return codifferential(w).is_zero()


def torsion_part(w):
    g = w.grading
    return w.target_part(set(range(-g.k, 0)))


# -- Weyl curvature versus total curvature ----------------------------------------


def _bracket_adjust(p, args_to_element):
    pass


def weyl_from_total(k_c, p):
    """W(xi, eta) = K(xi, eta) + {P(xi), eta} - {P(eta), xi} on basis pairs."""
    return _curvature_shift(k_c, p, 1)


def total_from_weyl(w, p):
    """Inverse of weyl_from_total, exactly."""
    return _curvature_shift(w, p, -1)


def _curvature_shift(c, p, sign):
    g = c.grading
    alg = g.algebra
    m = len(g.gminus_basis)
    out = c
    extra = {}
    for a in range(m):
        xa = alg.basis_element(g.gminus_basis[a])
        pa = p.apply([Fraction(1) if t == a else F0 for t in range(m)])
        for b in range(a + 1, m):
            xb = alg.basis_element(g.gminus_basis[b])
            pb = p.apply([Fraction(1) if t == b else F0 for t in range(m)])
            val = alg.bracket(pa, xb) - alg.bracket(pb, xa)
            for t, coeff in enumerate(val.coeffs):
                if coeff:
                    extra[((a, b), t)] = Fraction(sign) * coeff
    return out + Cochain(g, 2, extra)


# -- curvature transformation under change of Weyl structure ----------------------


def _splitting_matrix(u):
    """Matrix of the splitting change on g_- coordinates."""
    g = u.grading
    m = len(g.gminus_basis)
    cols = []
    for a in range(m):
        xi = split_gminus(g, g.algebra.basis_element(g.gminus_basis[a]))
        cols.append(transform_splitting(u, xi).coords())
    return transpose(cols)


def _value_transform(u, v):
    """The multi-index value transform: sum over j of coeff(j) ad-word(v_l)."""
    g = u.grading
    alg = g.algebra
    total = alg.zero()
    for ell in range(-g.k, g.k + 1):
        x = g.component(v, ell)
        if x.is_zero():
            continue
        for i in range(max(ell, -g.k), g.k + 1):
            for j in multi_indices(g.k, i - ell):
                term = _apply_ad_word(u, j, x)
                if not term.is_zero():
                    total = total + term.scale(_coeff(j))
    return total


def transform_weyl_curvature(u, w):
    """Weyl curvature after a change of Weyl structure.

    Values transform by the graded multi-index sum (equivalently by the
    adjoint exponential), arguments are re-expressed through the splitting
    change.
    """
    g = w.grading
    alg = g.algebra
    m = len(g.gminus_basis)
    t_mat = _splitting_matrix(u)
    t_inv = _matrix_inverse(t_mat)
    basis_elements = []
    for a in range(m):
        col = [row[a] for row in t_inv]
        basis_elements.append(g.element_from_gminus(col))
    entries = {}
    for a in range(m):
        for b in range(a + 1, m):
            val = _evaluate_bilinear(w, basis_elements[a], basis_elements[b])
            if val.is_zero():
                continue
            tv = _value_transform(u, val)
            for t, coeff in enumerate(tv.coeffs):
                if coeff:
                    entries[((a, b), t)] = coeff
    return Cochain(g, 2, entries)


def _evaluate_bilinear(w, x, y):
    return w.evaluate([split_gminus(w.grading, x), split_gminus(w.grading, y)])


def _matrix_inverse(m):
    n = len(m)
    from .linalg import identity, solve_matrix

    inv = solve_matrix(m, identity(n))
    if inv is None:
        raise ValueError("splitting change is not invertible")
    return inv


# -- the W-relation residual -------------------------------------------------------


def w_relation_residual(w_hat, w, phi, n):
    """W_hat^(n) - W^(n) + d(phi); zero iff the homogeneity-n relation holds."""
    if phi.arity != 1:
        raise ValueError("phi must be a 1-cochain")
    for key in phi.entries:
        if phi.entry_homogeneity(*key) != n:
            raise ValueError("phi must be homogeneous of degree %d" % n)
    return (
        w_hat.homogeneous_part(n)
        - w.homogeneous_part(n)
        + differential(phi)
    )


# -- Rho normalization -------------------------------------------------------------


def normalize_rho_grade1(k0):
    """P = box^{-1} d* K0 for a |1|-grading; guarantees d*(K0 - dP) = 0."""
    g = k0.grading
    if g.k != 1:
        raise ValueError("grade-1 normalization needs a |1|-grading")
    _require_homogeneous(k0, 2)
    for (args, t) in k0.entries:
        if g.degree[t] != 0:
            raise ValueError("homogeneity-2 curvature of a |1|-grading is g_0 valued")
    c = laplacian_inverse(codifferential(k0))
    return RhoMap.from_cochain(c)


def _require_homogeneous(c, ell):
    for key in c.entries:
        if c.entry_homogeneity(*key) != ell:
            raise ValueError("cochain must be homogeneous of degree %d" % ell)


def _low_keys(c1_basis, grading, ell):
    """Positions of arity-1 block entries with target degree <= 0."""
    out = []
    for pos, ((a,), t) in enumerate(c1_basis):
        if grading.degree[t] <= 0:
            out.append(pos)
    return out


def normalize_rho_step(ell, k_ell):
    """One step of the recursion.

    Returns (P_l as a RhoMap, alpha_l in g_l, obstruction 1-cochain).  For
    l > k there is no constraint: alpha is zero and the candidate is already
    p_+ valued.
    """
    g = k_ell.grading
    if ell < 2:
        raise ValueError("normalization steps start at homogeneity 2")
    _require_homogeneous(k_ell, ell)
    cand = laplacian_inverse(codifferential(k_ell))  # 1-cochain, homogeneity ell
    cx = complex_of(g)
    alg = g.algebra
    if ell > g.k:
        return RhoMap.from_cochain(cand), alg.zero(), zero_cochain(g, 1)

    basis = cx.basis(1, ell)
    low = _low_keys(basis, g, ell)
    gl = g.component_bases.get(ell, ())
    # restricted operator: alpha in g_l -> d(alpha) restricted to low entries
    cols = []
    for b in gl:
        alpha = alg.basis_element(b)
        da = differential(Cochain(g, 0, {((), b): Fraction(1)}))
        vec = cx.to_vec(da, 1, ell)
        cols.append([vec[p] for p in low])
    rmat = transpose(cols) if cols else zeros(len(low), 0)
    if gl and rank(rmat) != len(gl):
        raise StructuralError("restricted differential is not injective on g_%d" % ell)
    target = cx.to_vec(cand, 1, ell)
    rhs = [target[p] for p in low]
    sol = solve(rmat, rhs)
    if sol is None:
        # project exactly onto the column span under the block inner product
        gram_low = [[cx.gram(1, ell)[p][q] for q in low] for p in low]
        normal = mat_mul(transpose(rmat), gram_low)
        sol = solve(mat_mul(normal, rmat), mat_vec(normal, rhs))
        assert sol is not None
    alpha_coeffs = [F0] * alg.dim
    for b, c in zip(gl, sol or []):
        alpha_coeffs[b] = c
    alpha = Element(alg, alpha_coeffs)
    d_alpha = differential(Cochain(g, 0, {((), b): c for b, c in zip(gl, sol or []) if c}))
    residual = cand - d_alpha
    # obstruction: what is left on the low entries
    obs_entries = {}
    res_vec = cx.to_vec(residual, 1, ell)
    for p in low:
        if res_vec[p]:
            obs_entries[basis[p]] = res_vec[p]
    obstruction = Cochain(g, 1, obs_entries)
    p_part = residual - obstruction
    return RhoMap.from_cochain(p_part), alpha, obstruction


def run_normalization(grading, k_provider):
    """Iterate the step for l = 2..2k, feeding computed P parts back.

    k_provider(l, rho_so_far) must return the homogeneity-l total-curvature
    2-cochain given the already computed components of degree < l.
    """
    rho = RhoMap.zero(grading)
    obstructions = {}
    for ell in range(2, 2 * grading.k + 1):
        k_ell = k_provider(ell, rho)
        if k_ell.arity != 2 or k_ell.grading is not grading:
            raise ValueError("provider must return 2-cochains over the grading")
        p_ell, _alpha, obs = normalize_rho_step(ell, k_ell)
        rho = rho + p_ell
        obstructions[ell] = obs
    return rho, obstructions
