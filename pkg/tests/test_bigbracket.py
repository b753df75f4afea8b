import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import basis_of, rand_map, random_triple, vec
from rinfty import (
    DEFAULT_POLICY,
    Elem,
    GradedBasis,
    InvalidInputError,
    PolyMap,
    apply,
    big_bracket,
    circle,
    differential,
    is_mc,
    load_fixture,
)

B3 = GradedBasis.of(("x", 0), ("y", 0), ("z", 0))


def sgn(n):
    return -1 if n % 2 else 1


class TestPolyMap:
    def test_degree_contract(self):
        # x has degree -1 in g[1]; y*z has degree 2 in S(g[-1]) so the map has degree 1
        g = PolyMap.from_entries(B3, 1, [(["x"], {("y", "z"): 1})])
        assert g.support() == {(1, 2)}
        with pytest.raises(InvalidInputError):
            PolyMap.from_entries(B3, 0, [(["x"], {("y", "z"): 1})])

    def test_input_order_sign(self):
        f = PolyMap.from_entries(B3, 1, [(["y", "x"], {("z",): 1})])
        assert f.table == {(0, 1): {(2,): Fraction(-1)}}

    def test_components_and_b_plus(self):
        f = PolyMap.from_entries(B3, 1, [(["x"], {("y", "z"): 1}), (["x", "y"], {("z",): 2})])
        assert f.support() == {(1, 2), (2, 1)}
        assert f.in_b_plus()
        assert f.component(1, 2).support() == {(1, 2)}
        c = PolyMap.from_entries(B3, -1, [([], {("y",): 1})])
        assert c.support() == {(0, 1)} and not c.in_b_plus()


class TestApply:
    f = PolyMap.from_entries(B3, 0, [(["x"], {("y",): 1})])

    def test_zero_map(self):
        assert apply(PolyMap.zero(B3), vec(B3, 1, "x")).is_zero()

    def test_zero_input(self):
        assert apply(self.f, Elem.zero(B3, 1)).is_zero()

    def test_linearity(self):
        assert apply(self.f, vec(B3, 1, "x", c=3)) == vec(B3, -1, "y", c=3)

    def test_unmatched_weight(self):
        assert apply(self.f, vec(B3, 1, "x", "y")).is_zero()

    def test_wrong_shift(self):
        with pytest.raises(InvalidInputError):
            apply(self.f, vec(B3, -1, "x"))


class TestCircle:
    g = PolyMap.from_entries(B3, 1, [(["x"], {("y", "z"): 1})])

    def test_hand_expansion_first_factor(self):
        # g(x) = y*z splits as y (x) z + (-1)^{|y||z|} z (x) y; only f(y) is nonzero
        f = PolyMap.from_entries(B3, 0, [(["y"], {("x",): 1})])
        expect = PolyMap.from_entries(B3, 1, [(["x"], {("x", "z"): 1})])
        assert circle(f, self.g) == expect

    def test_hand_expansion_second_factor(self):
        # y and z are odd in g[-1], so the z (x) y split carries a minus sign
        f = PolyMap.from_entries(B3, 0, [(["z"], {("x",): 1})])
        expect = PolyMap.from_entries(B3, 1, [(["x"], {("x", "y"): -1})])
        assert circle(f, self.g) == expect

    def test_zero(self):
        assert circle(self.g, PolyMap.zero(B3, 0)).is_zero()
        assert circle(PolyMap.zero(B3, 0), self.g).is_zero()

    def test_arity_bookkeeping(self):
        f = PolyMap.from_entries(B3, 1, [(["x", "y"], {("z",): 1})])
        g = PolyMap.from_entries(B3, 0, [(["z"], {("y",): 1})])
        assert circle(f, g).support() == {(2, 1)}

    def test_output_degree(self):
        b, (f, g, _) = random_triple(7)
        assert circle(f, g).degree == f.degree + g.degree

    def test_different_bases(self):
        other = GradedBasis.of(("x", 0))
        with pytest.raises(InvalidInputError):
            circle(self.g, PolyMap.zero(other))

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 10**6))
    def test_arity_rule(self, seed):
        _, (f, g, _) = random_triple(seed)
        fa, ga = f.in_arities(), g.in_arities()
        for m, _n in circle(f, g).support():
            assert any(k + 1 in fa and m - k in ga for k in range(m + 1))


class TestBigBracket:
    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10**6))
    def test_antisymmetry_and_jacobi(self, seed):
        _, (f, g, h) = random_triple(seed)
        s = sgn(f.degree * g.degree)
        assert big_bracket(f, g) + big_bracket(g, f).scale(s) == PolyMap.zero(f.basis)
        lhs = big_bracket(f, big_bracket(g, h))
        rhs = big_bracket(big_bracket(f, g), h) + big_bracket(g, big_bracket(f, h)).scale(s)
        assert lhs == rhs

    def test_even_self_bracket(self):
        rng = random.Random(3)
        b = basis_of([0, 1])
        for _ in range(20):
            f = rand_map(b, 0, rng)
            assert big_bracket(f, f).is_zero()

    def test_degree_is_sum(self):
        for seed in range(20):
            _, (f, g, _) = random_triple(seed)
            fg = big_bracket(f, g)
            assert fg.degree == f.degree + g.degree
            fg.check_degrees()


class TestDifferential:
    l = load_fixture("two_dim").alg.brackets

    def test_zero(self):
        assert differential(self.l, PolyMap.zero(self.l.basis, 2)).is_zero()

    @pytest.mark.parametrize("seed", range(15))
    def test_square_zero(self, seed):
        rng = random.Random(seed)
        gamma = rand_map(self.l.basis, rng.choice([0, 1, 2]), rng, nterms=4)
        assert differential(self.l, differential(self.l, gamma)).is_zero()

    @pytest.mark.parametrize("seed", range(15))
    def test_leibniz(self, seed):
        rng = random.Random(100 + seed)
        a = rand_map(self.l.basis, rng.choice([-1, 0, 1]), rng, nterms=4)
        b = rand_map(self.l.basis, rng.choice([-1, 0, 1]), rng, nterms=4)
        d = lambda x: differential(self.l, x)  # noqa: E731
        lhs = d(big_bracket(a, b))
        rhs = big_bracket(d(a), b) + big_bracket(a, d(b)).scale(sgn(a.degree))
        assert lhs == rhs


class TestIsMc:
    def test_two_dim_lie(self):
        r = is_mc(load_fixture("two_dim").alg.brackets)
        assert r.passed

    def test_zero(self):
        assert is_mc(PolyMap.zero(B3, 1)).passed

    def test_inconsistent_table_located(self):
        # x even in g[1], l2(x,x) = y and l2(x,y) = z, so l2(l2(x,x),x) != 0
        b = GradedBasis.of(("x", 1), ("y", 2), ("z", 3))
        mu = PolyMap.from_entries(b, 1, [(["x", "x"], {("y",): 1}), (["x", "y"], {("z",): 1})])
        r = is_mc(mu)
        assert not r.passed
        assert [(w.component, w.word) for w in r.failures] == [("[mu,mu] (3,1)", "x*x*x")]

    def test_heisenberg_corrupted_witness(self):
        r = is_mc(load_fixture("heisenberg_broken").alg.brackets)
        assert [(w.component, w.word) for w in r.failures] == [("[mu,mu] (3,1)", "x*y*z")]

    def test_curved_component_flagged(self):
        # x has degree -3 in g[1], so x |-> 1 has degree 1; u |-> u sits at (0,1)
        b = GradedBasis.of(("x", -2), ("u", 2))
        mu = PolyMap.from_entries(b, 1, [(["x"], {(): 1}), ([], {("u",): 1})])
        r = is_mc(mu)
        flagged = {w.component for w in r.failures}
        assert {"B+ membership (1,0)", "B+ membership (0,1)"} <= flagged

    def test_degree_rejected(self):
        with pytest.raises(InvalidInputError):
            is_mc(PolyMap.from_entries(B3, 0, [(["x"], {("y",): 1})]))

    def test_report_shape(self):
        r = is_mc(load_fixture("so3").alg.brackets, DEFAULT_POLICY)
        d = r.as_dict()
        assert d["policy"] == {"W": 4, "L": 3, "A": 4}
        assert d["passed"] and d["checked"] == 1
