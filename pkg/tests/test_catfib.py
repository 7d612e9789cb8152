import itertools

import pytest

from brute import set_partitions
from satkit import Partition, SubUniverse, all_congruences, forall
from satkit.catfib import (CategoryError, WideSubcategory, all_hom_congruences, cat_syntactic,
                           codiscrete_category, discrete_category, format_category,
                           groupoid_inverse_check, inverse, is_groupoid, is_hom_congruence,
                           make_category, monoid_as_category, parse_category, validate_category,
                           wide_subcategories)
from satkit.corpus import arrow_category, categories, groups, listed_monoids, z4_monoid
from satkit.errors import ParseError

CATS = categories()


def _naive_hom_congruences(d):
    """Every partition of the morphisms that relates parallel arrows and respects composition."""
    m = d.morphisms
    out = set()
    for labels in set_partitions(m):
        if any(labels[f] == labels[g] and not d.parallel(f, g)
               for f, g in itertools.combinations(range(m), 2)):
            continue
        ok = all(labels[d.comp[h][f]] == labels[d.comp[h2][f2]]
                 for f, f2, h, h2 in itertools.product(range(m), repeat=4)
                 if labels[f] == labels[f2] and labels[h] == labels[h2]
                 and d.cod[f] == d.dom[h] and d.cod[f2] == d.dom[h2])
        if ok:
            out.add(Partition(labels))
    return out


class TestValidation:
    def test_monoid_category(self):
        c = monoid_as_category(z4_monoid())
        assert (c.objects, c.morphisms) == (1, 4)
        assert validate_category(format_category(c)) == c

    def test_arrow(self):
        a = arrow_category()
        assert (a.objects, a.morphisms) == (2, 3)

    def test_non_composable_entry(self):
        comp = [list(r) for r in arrow_category().comp]
        comp[2][2] = 2  # arrow . arrow although cod != dom
        with pytest.raises(CategoryError, match="non-composable"):
            make_category("bad", 2, [0, 1, 0], [0, 1, 1], [0, 1], comp)

    def test_missing_composite(self):
        comp = [list(r) for r in arrow_category().comp]
        comp[2][0] = -1
        with pytest.raises(CategoryError, match="undefined required composite"):
            make_category("bad", 2, [0, 1, 0], [0, 1, 1], [0, 1], comp)

    def test_associativity_failure(self):
        # {1, a, b} with aa = a, ab = b, ba = a, bb = a: (ba)b = b but b(ab) = a
        comp = [[0, 1, 2], [1, 1, 2], [2, 1, 1]]
        with pytest.raises(CategoryError, match="associativity"):
            make_category("bad", 1, [0, 0, 0], [0, 0, 0], [0], comp)

    def test_identity_failure(self):
        comp = [[0, 0], [1, 1]]
        with pytest.raises(CategoryError):
            make_category("bad", 1, [0, 0], [0, 0], [0], comp)

    def test_parse_errors_carry_lines(self):
        text = format_category(arrow_category()).replace("comp", "comp\n 0 -1 x", 1)
        with pytest.raises(ParseError) as exc:
            parse_category(text, "arrow.cat")
        assert exc.value.line == 8 and "arrow.cat" in str(exc.value)

    @pytest.mark.parametrize("name", sorted(CATS))
    def test_corpus_round_trip(self, name):
        assert parse_category(format_category(CATS[name])) == CATS[name]

    def test_corpus_is_desk_scale(self):
        for c in CATS.values():
            assert c.objects <= 3 and c.morphisms <= 10


class TestPredicates:
    def test_groupoid_examples(self):
        assert is_groupoid(monoid_as_category(groups()["S3"]))
        assert not is_groupoid(arrow_category())
        assert is_groupoid(discrete_category(3))
        assert is_groupoid(codiscrete_category(2))
        assert inverse(arrow_category(), 2) is None

    def test_hom_congruence_examples(self):
        a = arrow_category()
        assert is_hom_congruence(a, Partition.discrete(3))
        assert not is_hom_congruence(a, Partition.from_blocks(3, [[0, 2]]))
        z4 = monoid_as_category(z4_monoid())
        assert is_hom_congruence(z4, Partition.from_blocks(4, [[0, 2], [1, 3]]))

    @pytest.mark.parametrize("name", [n for n in sorted(CATS) if CATS[n].morphisms <= 8])
    def test_enumeration_matches_naive(self, name):
        d = CATS[name]
        assert set(all_hom_congruences(d)) == _naive_hom_congruences(d)

    @pytest.mark.parametrize("m", list(listed_monoids().values()), ids=lambda m: m.name)
    def test_monoid_congruences_are_hom_congruences(self, m):
        assert set(all_hom_congruences(monoid_as_category(m))) == set(all_congruences(m))

    def test_monoid_category_examples(self):
        one = monoid_as_category(listed_monoids()["One"])
        assert one.morphisms == 1 and is_groupoid(one)
        assert monoid_as_category(listed_monoids()["OR"]).morphisms == 2


class TestCatSyntactic:
    def test_whole_category_returns_s(self):
        for d in CATS.values():
            full = WideSubcategory(d, tuple(range(d.morphisms)))
            for s in all_hom_congruences(d):
                assert cat_syntactic(d, full, s) == s

    def test_arrow_identities_only(self):
        a = arrow_category()
        ids = WideSubcategory(a, (0, 1))
        assert cat_syntactic(a, ids, Partition.discrete(2)) == Partition.discrete(3)

    def test_dictionary_example(self):
        m = z4_monoid()
        d = monoid_as_category(m)
        u = SubUniverse(m, (0, 2))
        got = cat_syntactic(d, WideSubcategory(d, u.elements), Partition.indiscrete(2))
        assert got == forall(m, u, Partition.indiscrete(2))

    def test_rejects_bad_s(self):
        m = monoid_as_category(listed_monoids()["LZ3"])
        full = WideSubcategory(m, (0, 1, 2))
        with pytest.raises(CategoryError):
            cat_syntactic(m, full, Partition.from_blocks(3, [[0, 1]]))

    def test_wide_subcategory_needs_identities(self):
        with pytest.raises(CategoryError):
            WideSubcategory(arrow_category(), (0, 2))

    @pytest.mark.parametrize("name", sorted(CATS))
    def test_output_is_hom_congruence(self, name):
        d = CATS[name]
        for c in wide_subcategories(d):
            for s in all_hom_congruences(c.as_category()):
                assert is_hom_congruence(d, cat_syntactic(d, c, s))


class TestGroupoidLemma:
    def test_examples(self):
        s3 = monoid_as_category(groups()["S3"])
        a3 = next(p for p in all_congruences(groups()["S3"]) if p.num_blocks == 2)
        assert groupoid_inverse_check(s3, a3)
        assert groupoid_inverse_check(s3, Partition.discrete(6))
        # total relation on each hom-set of the two-object Z2 groupoid
        c = CATS["Z2codisc2"]
        per_hom = Partition([c.dom[f] * 2 + c.cod[f] for f in range(c.morphisms)])
        assert per_hom.num_blocks == 4
        assert is_hom_congruence(c, per_hom) and groupoid_inverse_check(c, per_hom)

    def test_rejects_non_groupoid(self):
        with pytest.raises(CategoryError):
            groupoid_inverse_check(arrow_category(), Partition.discrete(3))
