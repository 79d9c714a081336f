"""Seeded random fixtures for property tests and CLI runs.

Everything is drawn through a SplitMix64 stream, so a seed determines every
fixture exactly; see rng.py.
"""

from itertools import combinations

from .cohomology import Cochain
from .lie_core import Element
from .linalg import F0
from .rng import SplitMix64
from .weyl_calculus import GradedVector, RhoMap, UpsilonJet


def random_element_in(rng, grading, degree, lo=-6, hi=6, dmax=4):
    out = [F0] * grading.algebra.dim
    for b in grading.component_bases.get(degree, ()):
        out[b] = rng.fraction(lo, hi, dmax)
    return Element(grading.algebra, out)


def random_graded_vector(rng, grading, lo=-6, hi=6, dmax=4):
    comps = {}
    for m in range(-grading.k, 0):
        x = random_element_in(rng, grading, m, lo, hi, dmax)
        if not x.is_zero():
            comps[m] = x
    return GradedVector(grading, comps)


def random_jet(rng, grading, with_derivative=True, lo=-6, hi=6, dmax=4):
    ups = {m: random_element_in(rng, grading, m, lo, hi, dmax) for m in range(1, grading.k + 1)}
    dups = None
    if with_derivative:
        ncols = len(grading.gminus_basis)
        dups = {}
        for m in range(1, grading.k + 1):
            rows = len(grading.component_bases.get(m, ()))
            dups[m] = [[rng.fraction(lo, hi, dmax) for _ in range(ncols)] for _ in range(rows)]
    return UpsilonJet(grading, ups, dups)


def random_rho(rng, grading, lo=-6, hi=6, dmax=4):
    rows = len(grading.pplus_basis)
    cols = len(grading.gminus_basis)
    return RhoMap(
        grading, [[rng.fraction(lo, hi, dmax) for _ in range(cols)] for _ in range(rows)]
    )


def random_cochain(rng, grading, arity, density=3, lo=-6, hi=6, dmax=4):
    """Sparse random cochain: roughly 1/density of the entries are nonzero."""
    entries = {}
    m = len(grading.gminus_basis)
    for args in combinations(range(m), arity):
        for t in range(grading.algebra.dim):
            if rng.randint(0, density - 1) == 0:
                entries[(args, t)] = rng.fraction(lo, hi, dmax)
    return Cochain(grading, arity, entries)


def random_cochain_homogeneous(rng, grading, arity, ell, density=2, lo=-6, hi=6, dmax=4):
    c = random_cochain(rng, grading, arity, density, lo, hi, dmax)
    return c.homogeneous_part(ell)
