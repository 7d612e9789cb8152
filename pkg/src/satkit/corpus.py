"""Shipped test corpus: small groups, monoids, semirings, rings, braces, categories and DFAs.

Everything is built in code; ``write_corpus`` serializes it to the
``corpus/`` directory of the repository.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from pathlib import Path

import numpy as np

from .catfib import (FiniteCategory, category_from_rule, codiscrete_category, discrete_category,
                     format_category, monoid_as_category)
from .core.algebra import FiniteAlgebra, Signature, algebra_from_functions
from .core.io import format_algebra
from .lang import DFA, format_dfa
from .varieties import (braces_from_group, cyclic_group, group_from_table,
                        monoid_from_table, permutation_group)

# groups ------------------------------------------------------------------------


def klein_group() -> FiniteAlgebra:
    return group_from_table("V4", [[x ^ y for y in range(4)] for x in range(4)], 0)


def symmetric_group_3() -> FiniteAlgebra:
    return permutation_group("S3", [(1, 0, 2), (1, 2, 0)])


def dihedral_group_4() -> FiniteAlgebra:
    """Symmetries of a square acting on its corners."""
    return permutation_group("D4", [(1, 2, 3, 0), (3, 2, 1, 0)])


def quaternion_group() -> FiniteAlgebra:
    """Q8 with element 2*u + s standing for (-1)^s * u, u in (1, i, j, k)."""
    # unit products u*v = sign * w
    unit = {(0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
            (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
            (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
            (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0)}

    def mul(x, y):
        s, w = unit[(x // 2, y // 2)]
        return 2 * w + ((x % 2) ^ (y % 2) ^ s)

    return group_from_table("Q8", [[mul(x, y) for y in range(8)] for x in range(8)], 0)


def groups() -> dict[str, FiniteAlgebra]:
    out = {f"Z{n}": cyclic_group(n) for n in (2, 3, 4, 5, 6, 8)}
    out["V4"] = klein_group()
    out["S3"] = symmetric_group_3()
    out["D4"] = dihedral_group_4()
    out["Q8"] = quaternion_group()
    order = ["Z2", "Z3", "Z4", "V4", "Z5", "Z6", "S3", "Z8", "D4", "Q8"]
    return {k: out[k] for k in order}


# monoids -----------------------------------------------------------------------


def or_monoid() -> FiniteAlgebra:
    """({0, 1}, max) with unit 0."""
    return monoid_from_table("OR", [[0, 1], [1, 1]], 0)


def z4_monoid() -> FiniteAlgebra:
    return monoid_from_table("Z4mon", [[(x + y) % 4 for y in range(4)] for x in range(4)], 0)


def left_zero_monoid() -> FiniteAlgebra:
    """{1, a, b} = {0, 1, 2} with xy = x for x, y in {a, b}."""
    return monoid_from_table("LZ3", [[0, 1, 2], [1, 1, 1], [2, 2, 2]], 0)


def trivial_monoid() -> FiniteAlgebra:
    return monoid_from_table("One", [[0]], 0)


def listed_monoids() -> dict[str, FiniteAlgebra]:
    return {m.name: m for m in (trivial_monoid(), or_monoid(), left_zero_monoid(), z4_monoid(),
                                chain_monoid(3), monoid_from_table("Z2zero", [[0, 1, 2], [1, 0, 2], [2, 2, 2]], 0))}


def chain_monoid(n: int) -> FiniteAlgebra:
    """({0..n-1}, max) with unit 0."""
    return monoid_from_table(f"Max{n}", [[max(x, y) for y in range(n)] for x in range(n)], 0)


def _canonical_table(table: np.ndarray) -> tuple:
    n = table.shape[0]
    best = None
    for rest in itertools.permutations(range(1, n)):
        perm = np.array((0,) + rest)
        inv = np.empty(n, dtype=np.intp)
        inv[perm] = np.arange(n)
        t = perm[table[np.ix_(inv, inv)]]
        key = tuple(t.reshape(-1).tolist())
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def _monoid_tables(n: int) -> tuple[tuple, ...]:
    if n == 1:
        return ((0,),)
    table = -np.ones((n, n), dtype=np.intp)
    table[0, :] = np.arange(n)
    table[:, 0] = np.arange(n)
    cells = [(x, y) for x in range(1, n) for y in range(1, n)]
    found = set()

    def associative_so_far() -> bool:
        x, y, z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
        xy, yz = table[x, y], table[y, z]
        ok = (xy >= 0) & (yz >= 0)
        lhs = np.where(ok, table[np.maximum(xy, 0), z], -1)
        rhs = np.where(ok, table[x, np.maximum(yz, 0)], -1)
        both = (lhs >= 0) & (rhs >= 0)
        return bool(np.all(lhs[both] == rhs[both]))

    def fill(i: int) -> None:
        if i == len(cells):
            found.add(_canonical_table(table))
            return
        x, y = cells[i]
        for v in range(n):
            table[x, y] = v
            if associative_so_far():
                fill(i + 1)
        table[x, y] = -1

    fill(0)
    return tuple(sorted(found))


def enumerate_monoids(n: int) -> list[FiniteAlgebra]:
    """All monoids of order ``n`` up to isomorphism, unit 0, in canonical-table order."""
    return [monoid_from_table(f"M{n}_{i}", np.array(t).reshape(n, n), 0)
            for i, t in enumerate(_monoid_tables(n))]


def monoids_up_to(n: int) -> list[FiniteAlgebra]:
    return [m for k in range(1, n + 1) for m in enumerate_monoids(k)]


# semirings and rings -----------------------------------------------------------

SEMIRING_SIG = Signature((("add", 2), ("mul", 2)), ("zero",))


def _semiring(name, n, add, mul, zero=0) -> FiniteAlgebra:
    return algebra_from_functions(name, n, [("add", 2, add), ("mul", 2, mul)], {"zero": zero})


def boolean_semiring() -> FiniteAlgebra:
    return _semiring("Bool", 2, lambda x, y: x | y, lambda x, y: x & y)


def zn_semiring(n: int) -> FiniteAlgebra:
    return _semiring(f"Z{n}sr", n, lambda x, y: (x + y) % n, lambda x, y: (x * y) % n)


def minmax_semiring() -> FiniteAlgebra:
    """Chain 0 < 1 < 2 with add = max, mul = min, zero = 0."""
    return _semiring("MinMax3", 3, max, min)


def semirings() -> dict[str, FiniteAlgebra]:
    return {s.name: s for s in (boolean_semiring(), zn_semiring(2), zn_semiring(4), minmax_semiring())}


def zn_ring(n: int) -> FiniteAlgebra:
    return algebra_from_functions(f"Z{n}ring", n,
                                  [("add", 2, lambda x, y: (x + y) % n),
                                   ("mul", 2, lambda x, y: (x * y) % n),
                                   ("neg", 1, lambda x: (-x) % n)], {"zero": 0})


def z2z2_ring() -> FiniteAlgebra:
    """Z2 x Z2 with componentwise operations, encoded 2a + b."""
    return algebra_from_functions("Z2xZ2ring", 4,
                                  [("add", 2, lambda x, y: x ^ y),
                                   ("mul", 2, lambda x, y: x & y),
                                   ("neg", 1, lambda x: x)], {"zero": 0})


def upper_triangular_f2() -> FiniteAlgebra:
    """Upper triangular 2x2 matrices over F2 (a noncommutative ring of order 8).

    Element 4a + 2b + c is [[a, b], [0, c]].
    """
    def dec(x):
        return (x >> 2) & 1, (x >> 1) & 1, x & 1

    def enc(a, b, c):
        return 4 * a + 2 * b + c

    def mul(x, y):
        a, b, c = dec(x)
        d, e, f = dec(y)
        return enc(a & d, (a & e) ^ (b & f), c & f)

    return algebra_from_functions("UT2F2", 8, [("add", 2, lambda x, y: x ^ y), ("mul", 2, mul),
                                               ("neg", 1, lambda x: x)], {"zero": 0})


def rings() -> dict[str, FiniteAlgebra]:
    return {r.name: r for r in (zn_ring(2), zn_ring(4), zn_ring(6), z2z2_ring(),
                                upper_triangular_f2())}


def braces(names=("Z2", "Z3", "S3")) -> dict[str, FiniteAlgebra]:
    gs = groups()
    out = {}
    for g in names:
        triv, opp = braces_from_group(gs[g])
        out[triv.name] = triv
        out[opp.name] = opp
    return out


# a non-modular witness for the Shifting Lemma ------------------------------------


def shifting_counterexample() -> FiniteAlgebra:
    """The meet-semilattice 2 x 2 = {0, 1, 2, 3} with meet = bitwise and.

    With T = [[0,1,2],[3]], S = [[0,1],[2,3]], R = [[0,2],[1,3]] the Shifting
    Lemma fails at (x, x', y, y') = (0, 2, 1, 3). No 3-element semilattice
    has a failing triple.
    """
    return algebra_from_functions("SL2x2", 4, [("meet", 2, lambda x, y: x & y)])


# categories --------------------------------------------------------------------


def arrow_category() -> FiniteCategory:
    """Objects 0, 1; morphisms id0, id1 and one arrow 2: 0 -> 1."""
    dom, cod = [0, 1, 0], [0, 1, 1]
    ids = [0, 1]

    def rule(g, f):
        if g in ids:
            return f
        return g

    return category_from_rule("Arrow", 2, dom, cod, ids, rule)


def parallel_pair_category() -> FiniteCategory:
    """Objects 0, 1 and two parallel arrows 2, 3: 0 -> 1."""
    dom, cod, ids = [0, 1, 0, 0], [0, 1, 1, 1], [0, 1]
    return category_from_rule("ParPair", 2, dom, cod, ids, lambda g, f: f if g in ids else g)


def span_with_loop() -> FiniteCategory:
    """Object 0 with an idempotent loop 2 and an arrow 3: 0 -> 1 absorbing it (3.2 = 3)."""
    dom, cod, ids = [0, 1, 0, 0], [0, 1, 0, 1], [0, 1]
    table = {(2, 2): 2, (3, 2): 3}

    def rule(g, f):
        if g in ids:
            return f
        if f in ids:
            return g
        return table[(g, f)]

    return category_from_rule("LoopArrow", 2, dom, cod, ids, rule)


def composable_pair() -> FiniteCategory:
    """Objects 0, 1, 2; arrows 3: 0 -> 1, 4: 1 -> 2 and their composite 5: 0 -> 2."""
    dom, cod, ids = [0, 1, 2, 0, 1, 0], [0, 1, 2, 1, 2, 2], [0, 1, 2]

    def rule(g, f):
        if g in ids:
            return f
        if f in ids:
            return g
        return 5  # only 4 . 3 is a composable non-identity pair

    return category_from_rule("Chain3", 3, dom, cod, ids, rule)


def z2_codiscrete() -> FiniteCategory:
    """Groupoid on two objects with every hom-set a copy of Z2 (8 morphisms).

    Morphism index 4 * a + 2 * b + s is (a -> b, s in Z2); composition adds the labels.
    """
    m = 8
    dom = [i // 4 for i in range(m)]
    cod = [(i // 2) % 2 for i in range(m)]
    ids = [0, 6]
    return category_from_rule("Z2codisc2", 2, dom, cod, ids,
                              lambda g, f: 4 * dom[f] + 2 * cod[g] + ((g % 2) ^ (f % 2)))


def categories() -> dict[str, FiniteCategory]:
    gs = groups()
    mons = listed_monoids()
    cats = [
        monoid_as_category(mons["OR"]),
        monoid_as_category(mons["LZ3"]),
        monoid_as_category(mons["Z4mon"]),
        monoid_as_category(gs["Z3"]),
        monoid_as_category(gs["V4"]),
        monoid_as_category(gs["S3"]),
        discrete_category(2),
        discrete_category(3),
        arrow_category(),
        parallel_pair_category(),
        span_with_loop(),
        composable_pair(),
        codiscrete_category(2),
        codiscrete_category(3),
        z2_codiscrete(),
    ]
    return {c.name: c for c in cats}


# DFAs --------------------------------------------------------------------------


def dfas() -> dict[str, DFA]:
    out = [
        DFA("even2", 2, ("a",), ((1, 0),), 0, {0}),
        DFA("even4", 4, ("a",), ((1, 2, 3, 0),), 0, {0, 2}),
        # (ab)*: 0 start/final, 1 after a, 2 sink
        DFA("ab_star", 3, ("a", "b"), ((1, 2, 2), (2, 0, 2)), 0, {0}),
        # a*b* with at most one b: 0 reading a's, 1 after one b, 2 sink
        DFA("a_star_b_opt", 3, ("a", "b"), ((0, 2, 2), (1, 2, 2)), 0, {0, 1}),
        # same language with a redundant copy of the a-loop state and an unreachable state
        DFA("a_star_b_opt_redundant", 5, ("a", "b"), ((3, 2, 2, 0, 1), (1, 2, 2, 1, 4)),
            0, {0, 1, 3}),
        DFA("sigma_star", 1, ("a", "b"), ((0,), (0,)), 0, {0}),
        DFA("empty", 2, ("a", "b"), ((1, 1), (1, 1)), 0, set()),
        DFA("identity_letters", 3, ("a", "b"), ((0, 1, 2), (0, 1, 2)), 0, {0}),
    ]
    return {d.name: d for d in out}


# serialization -----------------------------------------------------------------


def corpus_algebras() -> dict[str, FiniteAlgebra]:
    """Every named corpus algebra keyed by file stem."""
    out: dict[str, FiniteAlgebra] = {}
    for name, g in groups().items():
        out[name.lower()] = g
    for name, m in listed_monoids().items():
        out[name.lower()] = m
    for name, s in semirings().items():
        out[name.lower()] = s
    for name, r in rings().items():
        out[name.lower()] = r
    for name, b in braces(tuple(groups())).items():
        out[name.lower()] = b
    out["sl2x2"] = shifting_counterexample()
    return out


def write_corpus(directory: str | Path) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for stem, a in corpus_algebras().items():
        p = directory / f"{stem}.alg"
        p.write_text(format_algebra(a), encoding="utf-8")
        written.append(p)
    for name, c in categories().items():
        p = directory / f"{name.lower()}.cat"
        p.write_text(format_category(c), encoding="utf-8")
        written.append(p)
    for name, d in dfas().items():
        p = directory / f"{name.lower()}.dfa"
        p.write_text(format_dfa(d), encoding="utf-8")
        written.append(p)
    return written


