"""Finite categories on a fixed object set, hom-congruences and the wide-subcategory syntactic relation.

A :class:`FiniteCategory` stores morphisms ``0..m-1`` with ``dom``/``cod``
vectors, the identity of each object and an ``m x m`` composition table with
``comp[g][f] = g . f`` when ``cod(f) == dom(g)`` and ``-1`` otherwise.

A hom-congruence is a :class:`Partition` of the morphism set that only relates
parallel morphisms and is compatible with composition.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .core.algebra import FiniteAlgebra
from .core.partition import Partition
from .errors import ParseError, PreconditionError
from .varieties import VarietyTag, as_variety, check_variety

UNDEFINED = -1


class CategoryError(PreconditionError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteCategory:
    name: str
    objects: int
    dom: tuple[int, ...]
    cod: tuple[int, ...]
    ids: tuple[int, ...]
    comp: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for f in ("dom", "cod", "ids"):
            object.__setattr__(self, f, tuple(int(x) for x in getattr(self, f)))
        object.__setattr__(self, "comp", tuple(tuple(int(x) for x in row) for row in self.comp))
        _validate(self)

    @property
    def morphisms(self) -> int:
        return len(self.dom)

    @cached_property
    def table(self) -> np.ndarray:
        return np.array(self.comp, dtype=np.intp).reshape(self.morphisms, self.morphisms)

    def compose(self, g: int, f: int) -> int:
        """``g . f``; raises if not composable."""
        h = self.comp[g][f]
        if h == UNDEFINED:
            raise CategoryError(f"morphisms {g} and {f} are not composable")
        return h

    def hom(self, a: int, b: int) -> list[int]:
        return [f for f in range(self.morphisms) if self.dom[f] == a and self.cod[f] == b]

    def parallel(self, f: int, g: int) -> bool:
        return self.dom[f] == self.dom[g] and self.cod[f] == self.cod[g]

    def hom_sets(self) -> list[list[int]]:
        """Nonempty hom-sets, ordered by (dom, cod)."""
        out = []
        for a in range(self.objects):
            for b in range(self.objects):
                h = self.hom(a, b)
                if h:
                    out.append(h)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteCategory):
            return NotImplemented
        return (self.objects, self.dom, self.cod, self.ids, self.comp) == \
            (other.objects, other.dom, other.cod, other.ids, other.comp)

    def __hash__(self) -> int:
        return hash((self.objects, self.dom, self.cod, self.ids, self.comp))

    def __repr__(self) -> str:
        return f"<FiniteCategory {self.name}: {self.objects} objects, {self.morphisms} morphisms>"


def _validate(c: FiniteCategory) -> None:
    p, m = c.objects, len(c.dom)
    if p < 1:
        raise CategoryError("a category needs at least one object")
    if len(c.cod) != m:
        raise CategoryError(f"cod has length {len(c.cod)}, expected {m}")
    if len(c.ids) != p:
        raise CategoryError(f"id has length {len(c.ids)}, expected {p}")
    if any(not 0 <= o < p for o in c.dom + c.cod):
        raise CategoryError("dom/cod entry out of range")
    if len(c.comp) != m or any(len(row) != m for row in c.comp):
        raise CategoryError(f"comp must be an {m}x{m} table")
    for o, i in enumerate(c.ids):
        if not 0 <= i < m or c.dom[i] != o or c.cod[i] != o:
            raise CategoryError(f"id[{o}] = {i} is not an endomorphism of object {o}")
    for g in range(m):
        for f in range(m):
            h = c.comp[g][f]
            if c.cod[f] == c.dom[g]:
                if h == UNDEFINED:
                    raise CategoryError(f"undefined required composite {g}.{f}")
                if not 0 <= h < m:
                    raise CategoryError(f"composite {g}.{f} = {h} out of range")
                if c.dom[h] != c.dom[f] or c.cod[h] != c.cod[g]:
                    raise CategoryError(f"composite {g}.{f} = {h} has the wrong dom/cod")
            elif h != UNDEFINED:
                raise CategoryError(f"defined non-composable entry {g}.{f} = {h}")
    for f in range(m):
        if c.comp[c.ids[c.cod[f]]][f] != f or c.comp[f][c.ids[c.dom[f]]] != f:
            raise CategoryError(f"identity violation at morphism {f}")
    for h, g, f in itertools.product(range(m), repeat=3):
        if c.cod[f] == c.dom[g] and c.cod[g] == c.dom[h]:
            if c.comp[h][c.comp[g][f]] != c.comp[c.comp[h][g]][f]:
                raise CategoryError(f"associativity violation at ({h}, {g}, {f})")


def make_category(name: str, objects: int, dom, cod, ids, comp) -> FiniteCategory:
    return FiniteCategory(name, objects, tuple(dom), tuple(cod), tuple(ids), tuple(map(tuple, comp)))


def category_from_rule(name: str, objects: int, dom, cod, ids, rule) -> FiniteCategory:
    """Fill the composition table from ``rule(g, f)``, called on composable pairs only."""
    m = len(dom)
    comp = [[rule(g, f) if cod[f] == dom[g] else UNDEFINED for f in range(m)] for g in range(m)]
    return make_category(name, objects, dom, cod, ids, comp)


def is_groupoid(c: FiniteCategory) -> bool:
    return all(inverse(c, f) is not None for f in range(c.morphisms))


def inverse(c: FiniteCategory, f: int) -> int | None:
    a, b = c.dom[f], c.cod[f]
    for g in c.hom(b, a):
        if c.comp[g][f] == c.ids[a] and c.comp[f][g] == c.ids[b]:
            return g
    return None


def monoid_as_category(m: FiniteAlgebra) -> FiniteCategory:
    """One object; morphisms are the elements, composition ``g . f = g * f``."""
    mon = as_variety(m, VarietyTag.MONOID)
    chk = check_variety(mon, VarietyTag.MONOID)
    if not chk:
        raise PreconditionError(f"{m.name} is not a monoid: {chk}")
    t = mon.tables["mul"]
    n = m.size
    return make_category(f"B{m.name}", 1, [0] * n, [0] * n, [mon.consts["e"]],
                         [[int(t[g, f]) for f in range(n)] for g in range(n)])


def discrete_category(p: int) -> FiniteCategory:
    return make_category(f"disc{p}", p, range(p), range(p), range(p),
                         [[g if g == f else UNDEFINED for f in range(p)] for g in range(p)])


def codiscrete_category(p: int) -> FiniteCategory:
    """One morphism a -> b for every pair; morphism index ``a * p + b``."""
    dom = [i // p for i in range(p * p)]
    cod = [i % p for i in range(p * p)]
    ids = [o * p + o for o in range(p)]
    return category_from_rule(f"codisc{p}", p, dom, cod, ids,
                              lambda g, f: dom[f] * p + cod[g])


# hom-congruences -------------------------------------------------------------

def is_hom_congruence(d: FiniteCategory, p: Partition) -> bool:
    """Parallel-only and compatible with composition."""
    m = d.morphisms
    if p.n != m:
        return False
    lab = p.labels
    for f, g in itertools.combinations(range(m), 2):
        if lab[f] == lab[g] and not d.parallel(f, g):
            return False
    # compatibility in each argument separately suffices
    for f, f2 in itertools.combinations(range(m), 2):
        if lab[f] != lab[f2]:
            continue
        for h in range(m):
            if d.dom[h] == d.cod[f] and lab[d.comp[h][f]] != lab[d.comp[h][f2]]:
                return False
            if d.cod[h] == d.dom[f] and lab[d.comp[f][h]] != lab[d.comp[f2][h]]:
                return False
    return True


def all_hom_congruences(d: FiniteCategory) -> list[Partition]:
    """Every hom-congruence, by filtering products of set partitions of the hom-sets."""
    homs = d.hom_sets()
    per_hom = [list(_set_partitions(h)) for h in homs]
    out = []
    for choice in itertools.product(*per_hom):
        labels = [0] * d.morphisms
        nxt = 0
        for blocks in choice:
            for blk in blocks:
                for f in blk:
                    labels[f] = nxt
                nxt += 1
        p = Partition(labels)
        if is_hom_congruence(d, p):
            out.append(p)
    return sorted(out, key=Partition.sort_key)


def _set_partitions(items: Sequence[int]):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


# wide subcategories ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class WideSubcategory:
    """A set of morphisms containing every identity and closed under composition."""

    parent: FiniteCategory
    morphisms: tuple[int, ...]

    def __post_init__(self):
        els = tuple(sorted(set(int(f) for f in self.morphisms)))
        object.__setattr__(self, "morphisms", els)
        d = self.parent
        s = set(els)
        if any(not 0 <= f < d.morphisms for f in els):
            raise CategoryError("morphism index out of range")
        missing = [i for i in d.ids if i not in s]
        if missing:
            raise CategoryError(f"wide subcategory omits identities {missing}")
        for g in els:
            for f in els:
                h = d.comp[g][f]
                if h != UNDEFINED and h not in s:
                    raise CategoryError(f"not closed under composition: {g}.{f} = {h}")

    @cached_property
    def index(self) -> dict[int, int]:
        return {f: i for i, f in enumerate(self.morphisms)}

    def __contains__(self, f: int) -> bool:
        return f in self.index

    def __len__(self) -> int:
        return len(self.morphisms)

    def as_category(self) -> FiniteCategory:
        """The subcategory, re-indexed by position in ``morphisms``."""
        d, els, pos = self.parent, self.morphisms, self.index
        comp = [[pos[d.comp[g][f]] if d.comp[g][f] != UNDEFINED else UNDEFINED for f in els]
                for g in els]
        return make_category(f"{d.name}|wide", d.objects, [d.dom[f] for f in els],
                             [d.cod[f] for f in els], [pos[i] for i in d.ids], comp)


def wide_subcategories(d: FiniteCategory) -> list[WideSubcategory]:
    """All wide subcategories, sorted by (size, morphisms)."""
    ids = set(d.ids)
    others = [f for f in range(d.morphisms) if f not in ids]
    out = []
    for r in range(len(others) + 1):
        for extra in itertools.combinations(others, r):
            try:
                out.append(WideSubcategory(d, tuple(ids) + extra))
            except CategoryError:
                pass
    return sorted(out, key=lambda c: (len(c), c.morphisms))


def restrict_hom(t: Partition, c: WideSubcategory) -> Partition:
    return Partition([t.labels[f] for f in c.morphisms])


def is_saturated_morphisms(c: WideSubcategory, t: Partition) -> bool:
    """The morphism set of ``c`` is a union of ``t``-classes."""
    touched = {t.labels[f] for f in c.morphisms}
    return all((t.labels[f] in touched) == (f in c) for f in range(t.n))


def cat_syntactic(d: FiniteCategory, c: WideSubcategory, s: Partition) -> Partition:
    """Largest hom-congruence T of ``d`` with ``c`` saturated and T restricted to ``c`` inside ``s``.

    Parallel f, f': a -> b are related iff for every g out of b and every k
    into a (identities included): g.f.k lies in C exactly when g.f'.k does,
    and when both do they are ``s``-related.
    """
    if c.parent is not d and c.parent != d:
        raise PreconditionError("wide subcategory belongs to a different category")
    if s.n != len(c):
        raise PreconditionError(f"size mismatch: relation on {s.n} morphisms, subcategory has {len(c)}")
    if not is_hom_congruence(c.as_category(), s):
        raise CategoryError(f"{s} is not a hom-congruence of the subcategory")
    m = d.morphisms
    pos = c.index
    # context signature of f: class (or outside marker) of g.f.k over all (g, k)
    outside = -1
    sig = []
    for f in range(m):
        a, b = d.dom[f], d.cod[f]
        row = []
        for g in range(m):
            if d.dom[g] != b:
                continue
            gf = d.comp[g][f]
            for k in range(m):
                if d.cod[k] != a:
                    continue
                h = d.comp[gf][k]
                row.append(s.labels[pos[h]] if h in pos else outside)
        sig.append((a, b, tuple(row)))
    ids: dict = {}
    return Partition([ids.setdefault(x, len(ids)) for x in sig])


def groupoid_inverse_check(d: FiniteCategory, s: Partition) -> bool:
    """f S f' implies f^-1 S f'^-1."""
    if not is_groupoid(d):
        raise CategoryError(f"{d.name} is not a groupoid")
    if not is_hom_congruence(d, s):
        raise CategoryError(f"{s} is not a hom-congruence")
    inv = [inverse(d, f) for f in range(d.morphisms)]
    lab = s.labels
    return all(lab[inv[f]] == lab[inv[g]]
               for f, g in itertools.combinations(range(d.morphisms), 2) if lab[f] == lab[g])


# .cat format -----------------------------------------------------------------

def parse_category(text: str, source: str | None = None) -> FiniteCategory:
    """Parse one ``.cat`` block.

    ::

        category <name>
        objects <p>
        morphisms <m>
        dom <m integers>
        cod <m integers>
        id <p integers>
        comp <m*m integers, -1 for undefined>
        end
    """
    toks = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        for tok in line.split("#", 1)[0].split():
            toks.append((lineno, tok))
    pos = 0

    def take(what):
        nonlocal pos
        if pos >= len(toks):
            raise ParseError(f"unexpected end of input, expected {what}",
                             toks[-1][0] if toks else 1, source)
        pos += 1
        return toks[pos - 1]

    def ints(count, what):
        out = []
        for _ in range(count):
            ln, tok = take(what)
            try:
                out.append(int(tok))
            except ValueError:
                raise ParseError(f"expected integer in {what}, got {tok!r}", ln, source) from None
        return out

    ln, kw = take("'category'")
    if kw != "category":
        raise ParseError(f"expected 'category', got {kw!r}", ln, source)
    start = ln
    _, name = take("category name")
    fields: dict[str, list[int]] = {}
    p = m = None
    while True:
        ln, kw = take("'end'")
        if kw == "end":
            break
        if kw == "objects":
            p = ints(1, "objects")[0]
        elif kw == "morphisms":
            m = ints(1, "morphisms")[0]
        elif kw in ("dom", "cod"):
            if m is None:
                raise ParseError(f"'{kw}' before 'morphisms'", ln, source)
            fields[kw] = ints(m, kw)
        elif kw == "id":
            if p is None:
                raise ParseError("'id' before 'objects'", ln, source)
            fields["id"] = ints(p, "id")
        elif kw == "comp":
            if m is None:
                raise ParseError("'comp' before 'morphisms'", ln, source)
            fields["comp"] = ints(m * m, "comp")
        else:
            raise ParseError(f"unknown keyword {kw!r}", ln, source)
    if pos != len(toks):
        raise ParseError("trailing input after 'end'", toks[pos][0], source)
    missing = [k for k in ("dom", "cod", "id", "comp") if k not in fields]
    if p is None or m is None or missing:
        raise ParseError(f"incomplete category block, missing {missing or 'objects/morphisms'}",
                         start, source)
    comp = [fields["comp"][i * m:(i + 1) * m] for i in range(m)]
    try:
        return make_category(name, p, fields["dom"], fields["cod"], fields["id"], comp)
    except CategoryError as exc:
        raise ParseError(str(exc), start, source) from None


validate_category = parse_category


def load_category(path: str | Path) -> FiniteCategory:
    path = Path(path)
    return parse_category(path.read_text(encoding="utf-8"), str(path))


def format_category(c: FiniteCategory) -> str:
    lines = [f"category {c.name}", f"objects {c.objects}", f"morphisms {c.morphisms}",
             "dom " + " ".join(map(str, c.dom)), "cod " + " ".join(map(str, c.cod)),
             "id " + " ".join(map(str, c.ids)), "comp"]
    lines += [" ".join(f"{x:2d}" for x in row) for row in c.comp]
    lines.append("end")
    return "\n".join(lines) + "\n"


def as_hom_partition(d: FiniteCategory, blocks: Iterable[Iterable[int]]) -> Partition:
    return Partition.from_blocks(d.morphisms, blocks)
