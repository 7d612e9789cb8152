import itertools

import pytest
from hypothesis import given, strategies as st

from brute import algebras, naive_congruences, naive_largest_below, partitions
from satkit import (Partition, SubUniverse, all_congruences, all_subuniverses, forall, forall_u,
                    is_normal_to, is_saturated, largest_below_pair, largest_congruence_below,
                    normal_sup, preimage_congruence, quotient_algebra, restrict_congruence,
                    syntactic_congruence, unit_class, SaturationProblem)
from satkit.corpus import chain_monoid, cyclic_group, groups, listed_monoids, or_monoid, z4_monoid
from satkit.errors import NotACongruenceError, PreconditionError
from satkit.oracles import brute_forall, brute_syntactic

DELTA4, NABLA4 = Partition.discrete(4), Partition.indiscrete(4)
MOD2 = Partition.from_blocks(4, [[0, 2], [1, 3]])


@pytest.fixture(scope="module")
def z4():
    return cyclic_group(4)


@pytest.fixture(scope="module")
def u02(z4):
    return SubUniverse(z4, (0, 2))


class TestLargestBelow:
    def test_examples(self, z4):
        assert largest_congruence_below(z4, Partition.from_blocks(4, [[0, 1, 2], [3]])) == DELTA4
        assert largest_congruence_below(z4, NABLA4) == NABLA4
        assert largest_congruence_below(z4, DELTA4) == DELTA4

    @given(algebras(max_n=5), st.data())
    def test_matches_naive_oracle(self, a, data):
        e = data.draw(partitions(a.size))
        assert largest_congruence_below(a, e) == naive_largest_below(a, e)

    def test_size_mismatch(self, z4):
        with pytest.raises(PreconditionError):
            largest_congruence_below(z4, Partition.discrete(3))


class TestSyntactic:
    def test_examples(self):
        assert syntactic_congruence(z4_monoid(), {0, 2}) == MOD2
        assert syntactic_congruence(or_monoid(), {1}) == Partition.discrete(2)
        assert syntactic_congruence(z4_monoid(), range(4)) == NABLA4

    def test_empty_subset(self, z4):
        with pytest.raises(PreconditionError, match="empty subset"):
            syntactic_congruence(z4, [])

    @given(algebras(max_n=5), st.data())
    def test_is_largest_saturating(self, a, data):
        w = data.draw(st.sets(st.integers(0, a.size - 1), min_size=1))
        got = syntactic_congruence(a, w)
        assert is_saturated(w, got)
        assert all(t <= got for t in naive_congruences(a) if is_saturated(w, t))

    def test_subset_need_not_be_closed(self, z4):
        # {1} is no subuniverse, yet its syntactic congruence is defined
        assert syntactic_congruence(z4, {1}) == DELTA4
        assert brute_syntactic(z4, {1}) == DELTA4


class TestPredicates:
    def test_unit_class(self, z4):
        assert unit_class(z4, MOD2, 0).elements == (0, 2)
        assert unit_class(z4, DELTA4, 0).elements == (0,)
        assert unit_class(z4, NABLA4, 0).elements == (0, 1, 2, 3)
        # a class that is not closed comes back as a plain tuple
        assert unit_class(z4, MOD2, 1) == (1, 3)

    def test_is_saturated(self):
        assert is_saturated({0, 2}, MOD2)
        assert not is_saturated({0, 1}, MOD2)
        assert is_saturated(range(4), Partition.from_blocks(4, [[0, 3]]))

    def test_restrict(self, z4, u02):
        assert restrict_congruence(MOD2, u02) == Partition.indiscrete(2)
        assert restrict_congruence(DELTA4, u02) == Partition.discrete(2)
        assert restrict_congruence(Partition.from_blocks(4, [[0, 1], [2, 3]]), u02) \
            == Partition.discrete(2)

    def test_is_normal_to(self, z4, u02):
        assert is_normal_to(u02, MOD2)
        assert not is_normal_to(u02, DELTA4)
        assert is_normal_to(SubUniverse(z4, (0, 1, 2, 3)), NABLA4)


class TestForall:
    def test_examples(self, z4, u02):
        assert forall(z4, u02, Partition.indiscrete(2)) == MOD2
        assert forall(z4, u02, Partition.discrete(2)) == DELTA4
        full = SubUniverse(z4, (0, 1, 2, 3))
        assert forall(z4, full, NABLA4) == NABLA4
        assert forall(z4, full, MOD2) == MOD2

    def test_problem_validates_s(self, z4):
        u = SubUniverse(z4, (0, 1, 2, 3))
        with pytest.raises(NotACongruenceError):
            SaturationProblem(z4, u, Partition.from_blocks(4, [[0, 1]]))
        with pytest.raises(PreconditionError):
            SaturationProblem(z4, u, Partition.discrete(2))

    def test_forall_u_on_problem(self, z4, u02):
        assert forall_u(SaturationProblem(z4, u02, Partition.indiscrete(2))) == MOD2

    @given(algebras(max_n=5), st.data())
    def test_oracle_equivalence_random(self, a, data):
        subs = all_subuniverses(a)
        u = data.draw(st.sampled_from(subs))
        s = data.draw(st.sampled_from(all_congruences(u.as_algebra())))
        assert forall(a, u, s) == brute_forall(a, u, s)

    @pytest.mark.parametrize("name", ["Z4", "S3", "V4", "Z6"])
    def test_monotone(self, name):
        g = groups()[name]
        for u in all_subuniverses(g):
            cons = all_congruences(u.as_algebra())
            for t, s in itertools.product(cons, repeat=2):
                if t <= s:
                    assert forall(g, u, t) <= forall(g, u, s)

    @pytest.mark.parametrize("a", list(listed_monoids().values()) + [groups()["S3"]],
                             ids=lambda a: a.name)
    def test_fixed_point_characterization(self, a):
        cons = all_congruences(a)
        for u in all_subuniverses(a):
            restrictions = {restrict_congruence(t, u) for t in cons if is_saturated(u.elements, t)}
            for r in all_congruences(u.as_algebra()):
                fixed = restrict_congruence(forall(a, u, r), u) == r
                assert fixed == (r in restrictions)

    @pytest.mark.parametrize("a", list(listed_monoids().values()), ids=lambda a: a.name)
    def test_composition_inclusion(self, a):
        subs = all_subuniverses(a)
        for u, v in itertools.product(subs, repeat=2):
            if not set(u.elements) <= set(v.elements):
                continue
            inner_u = SubUniverse(v.as_algebra(), tuple(v.index[x] for x in u.elements))
            for s in all_congruences(u.as_algebra()):
                two_step = forall(a, v, forall(v.as_algebra(), inner_u, s))
                assert two_step <= forall(a, u, s)

    @pytest.mark.parametrize("name", ["Z4", "Z6", "S3", "D4"])
    def test_pullback_clause(self, name):
        # f: X -> Y a quotient projection, V inside Y, U = f^-1(V)
        x = groups()[name]
        for theta in all_congruences(x):
            y, f = quotient_algebra(x, theta)
            for v in all_subuniverses(y):
                u = SubUniverse(x, tuple(i for i in range(x.size) if f.map[i] in v.element_set))
                for s in all_congruences(v.as_algebra()):
                    s_u = Partition([s.labels[v.index[f.map[i]]] for i in u.elements])
                    assert preimage_congruence(f, forall(y, v, s)) <= forall(x, u, s_u)


class TestNormalSup:
    def test_examples(self, z4, u02):
        assert normal_sup(z4, u02) == MOD2
        assert normal_sup(or_monoid(), SubUniverse(or_monoid(), (0,))) == Partition.discrete(2)
        assert normal_sup(z4, SubUniverse(z4, (0, 1, 2, 3))) == NABLA4

    def test_not_normal(self):
        # in ({0,1,2}, max) gluing 0 and 2 gives max(1,0)=1 ~ max(1,2)=2, so only the total
        # relation contains the pair and {0,2} is never a class
        m = chain_monoid(3)
        assert normal_sup(m, SubUniverse(m, (0, 2))) is None
        assert normal_sup(m, SubUniverse(m, (0, 1))) == Partition.from_blocks(3, [[0, 1], [2]])
        # left-zero monoid {1,a,b}: 1 ~ a forces b = 1b ~ ab = a
        lz = listed_monoids()["LZ3"]
        assert normal_sup(lz, SubUniverse(lz, (0, 1))) is None

    @pytest.mark.parametrize("a", list(listed_monoids().values()) + list(groups().values()),
                             ids=lambda a: a.name)
    def test_is_supremum(self, a):
        cons = all_congruences(a)
        for u in all_subuniverses(a):
            normal = [r for r in cons if is_normal_to(u, r)]
            got = normal_sup(a, u)
            if not normal:
                assert got is None
            else:
                assert got in normal and all(r <= got for r in normal)


class TestLargestBelowPair:
    def test_examples(self, z4, u02):
        assert largest_below_pair(z4, u02, DELTA4, Partition.indiscrete(2)) == DELTA4
        assert largest_below_pair(z4, u02, NABLA4, Partition.indiscrete(2)) == MOD2
        assert largest_below_pair(z4, u02, MOD2, Partition.discrete(2)) == DELTA4

    @pytest.mark.parametrize("a", list(listed_monoids().values()) + [groups()["S3"]],
                             ids=lambda a: a.name)
    def test_is_largest(self, a):
        cons = all_congruences(a)
        for u in all_subuniverses(a):
            for r in all_congruences(u.as_algebra()):
                for s in cons:
                    got = largest_below_pair(a, u, s, r)
                    ok = [t for t in cons if t <= s and is_saturated(u.elements, t)
                          and restrict_congruence(t, u) <= r]
                    assert got in ok and all(t <= got for t in ok)
