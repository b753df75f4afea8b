"""Shared builders and hypothesis strategies for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from rinfty import Elem, GradedBasis, PolyMap, load_fixture, schouten_extend

DEGREES = (-1, 0, 1, 2)


def basis_of(degs) -> GradedBasis:
    return GradedBasis.of(*[(f"e{i}", d) for i, d in enumerate(degs)])


@st.composite
def bases(draw, min_dim=1, max_dim=3):
    degs = draw(st.lists(st.sampled_from(DEGREES), min_size=min_dim, max_size=max_dim))
    return basis_of(degs)


@st.composite
def elems(draw, basis, shift, max_weight=3, max_terms=4):
    out = Elem.zero(basis, shift)
    for _ in range(draw(st.integers(0, max_terms))):
        n = draw(st.integers(0, max_weight))
        ids = draw(st.lists(st.sampled_from(basis.ids), min_size=n, max_size=n))
        c = draw(st.integers(-4, 4))
        out = out + Elem.word(basis, shift, ids, c)
    return out


def rand_map(basis, deg, rng: random.Random, max_ar=3, max_out=3, nterms=3) -> PolyMap:
    """A sparse degree-``deg`` map with a few randomly placed entries."""
    table: dict = {}
    tries = 0
    while len(table) < nterms and tries < 200:
        tries += 1
        ins = basis.words(rng.randint(0, max_ar), 1)
        if not ins:
            continue
        w = rng.choice(ins)
        target = basis.word_degree(w, 1) + deg + 2
        outs = [u for u in basis.words(rng.randint(0, max_out), -1)
                if basis.word_degree(u, -1) == target]
        if not outs:
            continue
        table.setdefault(w, {})[rng.choice(outs)] = Fraction(rng.randint(-3, 3) or 1)
    return PolyMap(basis, deg, table)


def random_triple(seed: int, nterms=3):
    rng = random.Random(seed)
    basis = basis_of([rng.choice(DEGREES) for _ in range(rng.randint(1, 3))])
    ds = [rng.choice(DEGREES) for _ in range(3)]
    return basis, [rand_map(basis, d, rng, nterms=nterms) for d in ds]


def certified(name: str, policy=None):
    spec = load_fixture(name)
    if policy is None:
        spec.alg.certify()
        return spec, schouten_extend(spec.alg)
    spec.alg.certify(policy)
    return spec, schouten_extend(spec.alg, policy)


def vec(basis, shift, *ids, c=1) -> Elem:
    return Elem.word(basis, shift, list(ids), c)
