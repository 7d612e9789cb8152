import itertools

import numpy as np
import pytest

from satkit import (FiniteAlgebra, Partition, Signature, all_congruences,
                    all_subuniverses, is_saturated, restrict_congruence, syntactic_congruence,
                    unit_class)
from satkit.corpus import (braces, groups, listed_monoids, monoids_up_to, rings, semirings)
from satkit.errors import PreconditionError, SignatureMismatchError
from satkit.varieties import (VarietyTag, as_variety, bind_roles, braces_from_group,
                              check_variety, cyclic_group, detect_varieties, inverses,
                              is_group_internal, is_ideal, is_normal_subgroup,
                              is_normal_submonoid, is_normal_subsemiring, is_protomodular_member,
                              semiring_syntactic, subsemirings, submonoids)

MOD2 = Partition.from_blocks(4, [[0, 2], [1, 3]])
GROUPS = groups()
SEMIRINGS = semirings()
RINGS = rings()
MONOIDS = monoids_up_to(4) + list(listed_monoids().values())


class TestCheckVariety:
    def test_examples(self):
        assert check_variety(cyclic_group(4), "group")
        assert check_variety(SEMIRINGS["Bool"], VarietyTag.SEMIRING)
        z3_brace, z3_op = braces_from_group(GROUPS["Z3"])
        assert check_variety(z3_brace, "skew_brace")

    @pytest.mark.parametrize("name", sorted(GROUPS))
    def test_corpus_groups(self, name):
        assert check_variety(GROUPS[name], "group")

    @pytest.mark.parametrize("name", sorted(RINGS))
    def test_corpus_rings(self, name):
        assert check_variety(RINGS[name], "ring")
        assert check_variety(RINGS[name], "semiring")

    @pytest.mark.parametrize("name", sorted(braces(tuple(GROUPS))))
    def test_corpus_braces(self, name):
        assert check_variety(braces(tuple(GROUPS))[name], "skew_brace")

    def test_failure_has_witness(self):
        # Z3 with a wrong inverse table
        bad = FiniteAlgebra("bad", 3, Signature((("mul", 2), ("inv", 1)), ("e",)),
                            {"mul": [[(x + y) % 3 for y in range(3)] for x in range(3)],
                             "inv": [0, 1, 2]}, {"e": 0})
        res = check_variety(bad, "group")
        assert not res and res.witness is not None
        assert str(res).startswith("FAIL")

    def test_non_associative(self):
        sub = FiniteAlgebra("minus", 3, Signature((("mul", 2),), ("e",)),
                            {"mul": [[(x - y) % 3 for y in range(3)] for x in range(3)]}, {"e": 0})
        res = check_variety(sub, "monoid")
        assert not res

    def test_signature_mismatch(self):
        with pytest.raises(SignatureMismatchError):
            check_variety(listed_monoids()["OR"], "group")

    def test_roles_by_name_then_position(self):
        assert bind_roles(cyclic_group(4), "group") == {"mul": "add", "inv": "neg", "e": "e"}
        assert bind_roles(GROUPS["S3"], "monoid") == {"mul": "mul", "e": "e"}
        assert as_variety(cyclic_group(4), "monoid").signature.ops == (("mul", 2),)

    def test_detect(self):
        assert VarietyTag.GROUP in detect_varieties(GROUPS["S3"])
        assert detect_varieties(listed_monoids()["LZ3"]) == [VarietyTag.MONOID]
        assert is_protomodular_member(GROUPS["Q8"])
        assert not is_protomodular_member(listed_monoids()["OR"])


def _naive_normal_subgroup(g: FiniteAlgebra, k) -> bool:
    t = as_variety(g, "group")
    mul, inv = t.tables["mul"], t.tables["inv"]
    k = set(k)
    if not all(int(mul[x, y]) in k and int(inv[x]) in k for x in k for y in k):
        return False
    return all(int(mul[mul[x, n], inv[x]]) in k for x in range(g.size) for n in k)


class TestNormalSubmonoid:
    def test_examples(self):
        z4 = listed_monoids()["Z4mon"]
        assert is_normal_submonoid(z4, {0, 2})
        assert is_normal_submonoid(listed_monoids()["OR"], {0})
        # {1, a, b} with xy = x on {a, b}: for k = a, x = 1, y = b we get ab = a in K
        # while xy = b is not
        assert not is_normal_submonoid(listed_monoids()["LZ3"], {0, 1})

    def test_requires_submonoid(self):
        with pytest.raises(PreconditionError):
            is_normal_submonoid(listed_monoids()["Z4mon"], {0, 1})

    @pytest.mark.parametrize("m", MONOIDS, ids=lambda m: m.name)
    def test_normal_iff_kernel(self, m):
        e = m.consts["e"]
        for k in submonoids(m):
            cls = unit_class(m, syntactic_congruence(m, k), e)
            assert is_normal_submonoid(m, k) == (tuple(cls.elements) == tuple(k))

    @pytest.mark.parametrize("name", sorted(GROUPS))
    def test_group_bridge(self, name):
        g = GROUPS[name]
        mon = as_variety(g, "monoid")
        for k in submonoids(mon):
            assert is_normal_submonoid(mon, k) == _naive_normal_subgroup(g, k)
            assert is_normal_subgroup(g, k) == _naive_normal_subgroup(g, k)

    @pytest.mark.parametrize("name", sorted(GROUPS))
    def test_lattice_bijects_with_normal_subgroups(self, name):
        g = GROUPS[name]
        normal = {k for k in itertools.chain.from_iterable(
            itertools.combinations(range(g.size), r) for r in range(1, g.size + 1))
            if 0 in k and _naive_normal_subgroup(g, k)}
        classes = [tuple(unit_class(g, r, g.consts["e"]).elements) for r in all_congruences(g)]
        assert sorted(classes) == sorted(normal)

    @pytest.mark.parametrize("name", sorted(GROUPS))
    def test_saturating_congruence_iff_normal_subgroup_inside(self, name):
        g = GROUPS[name]
        cons = all_congruences(g)
        for u in all_subuniverses(g):
            some_r = any(is_saturated(u.elements, r)
                         and not restrict_congruence(r, u).is_discrete() for r in cons)
            some_v = any(len(v) > 1 and set(v) <= set(u.elements) and _naive_normal_subgroup(g, v)
                         for v in (tuple(w.elements) for w in all_subuniverses(g)))
            assert some_r == some_v


class TestGroupInternal:
    def test_examples(self):
        z4 = cyclic_group(4)
        assert is_group_internal(z4, MOD2)
        assert is_group_internal(z4, Partition.discrete(4))
        assert is_group_internal(z4, Partition.indiscrete(4))

    def test_inverses(self):
        assert list(inverses(cyclic_group(4))) == [0, 3, 2, 1]
        s3 = GROUPS["S3"]
        inv = inverses(s3)
        mul = s3.tables["mul"]
        assert all(mul[x, inv[x]] == 0 for x in range(6))


class TestSemirings:
    def test_normal_subsemiring_examples(self):
        b = SEMIRINGS["Bool"]
        assert is_normal_subsemiring(b, {0})
        assert is_normal_subsemiring(b, {0, 1})
        assert is_normal_subsemiring(SEMIRINGS["Z2sr"], {0})

    def test_fast_path_examples(self):
        b = SEMIRINGS["Bool"]
        assert semiring_syntactic(b, {0}) == Partition.discrete(2)
        assert semiring_syntactic(b, {0, 1}) == Partition.indiscrete(2)
        assert semiring_syntactic(SEMIRINGS["Z2sr"], {0}) == Partition.discrete(2)

    def test_fast_path_empty(self):
        with pytest.raises(PreconditionError):
            semiring_syntactic(SEMIRINGS["Bool"], [])

    @pytest.mark.parametrize("name", sorted(RINGS))
    def test_fast_path_on_rings(self, name):
        r = RINGS[name]
        for k in range(1, r.size + 1):
            for w in itertools.combinations(range(r.size), k):
                assert semiring_syntactic(r, w) == syntactic_congruence(as_variety(r, "semiring"), w)

    @pytest.mark.parametrize("a", list(SEMIRINGS.values()) + list(RINGS.values()),
                             ids=lambda a: a.name)
    def test_normal_iff_kernel(self, a):
        sr = as_variety(a, "semiring")
        for w in subsemirings(sr):
            cls = unit_class(sr, syntactic_congruence(sr, w), sr.consts["zero"])
            assert is_normal_subsemiring(sr, w) == (tuple(cls.elements) == tuple(w))

    @pytest.mark.parametrize("name", sorted(RINGS))
    def test_ring_bridge(self, name):
        r = RINGS[name]
        add, mul, neg = (r.tables[o] for o in ("add", "mul", "neg"))
        for w in subsemirings(as_variety(r, "semiring")):
            ws = set(w)
            ideal = (all(int(neg[x]) in ws for x in ws)
                     and all(int(mul[x, k]) in ws and int(mul[k, x]) in ws
                             for x in range(r.size) for k in ws))
            assert is_ideal(r, w) == ideal
            assert is_normal_subsemiring(as_variety(r, "semiring"), w) == ideal


class TestBraces:
    def test_abelian_braces_coincide(self):
        for name in ("Z2", "Z3"):
            triv, opp = braces_from_group(GROUPS[name])
            assert np.array_equal(triv.tables["circ"], opp.tables["circ"])

    def test_s3_braces_valid_and_distinct(self):
        triv, opp = braces_from_group(GROUPS["S3"])
        assert check_variety(triv, "skew_brace") and check_variety(opp, "skew_brace")
        assert not np.array_equal(triv.tables["circ"], opp.tables["circ"])

    def test_brace_axiom_failure(self):
        z3 = GROUPS["Z3"]
        triv, _ = braces_from_group(z3)
        # circ = x + 2y is no group law with the same unit
        circ = [[(x + 2 * y) % 3 for y in range(3)] for x in range(3)]
        t = {o: triv.tables[o] for o in ("star", "starinv", "circinv")}
        broken = FiniteAlgebra("broken", 3, triv.signature, t | {"circ": circ}, {"e": 0})
        assert not check_variety(broken, "skew_brace")
