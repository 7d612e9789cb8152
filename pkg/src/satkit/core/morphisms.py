"""Isomorphism search between small algebras."""
from __future__ import annotations

import itertools

from .algebra import FiniteAlgebra, Homomorphism
from .congruence import subuniverse_generated


def generating_set(a: FiniteAlgebra) -> list[int]:
    """A generating set, chosen greedily in carrier order."""
    gens: list[int] = []
    covered = set(a.consts.values())
    if covered:
        covered = set(subuniverse_generated(a, []).elements)
    for x in range(a.size):
        if x not in covered:
            gens.append(x)
            covered = set(subuniverse_generated(a, gens).elements)
        if len(covered) == a.size:
            break
    return gens


def _extend(a: FiniteAlgebra, b: FiniteAlgebra, assignment: dict[int, int]) -> dict[int, int] | None:
    """Close a partial map under the operations; None on conflict."""
    h = dict(assignment)
    for c in a.signature.consts:
        x, y = a.consts[c], b.consts[c]
        if h.setdefault(x, y) != y:
            return None
    changed = True
    while changed:
        changed = False
        known = list(h.items())
        for op, arity in a.signature.ops:
            ta, tb = a.tables[op], b.tables[op]
            for combo in itertools.product(known, repeat=arity):
                xs = tuple(x for x, _ in combo)
                ys = tuple(y for _, y in combo)
                x, y = int(ta[xs]), int(tb[ys])
                prev = h.get(x)
                if prev is None:
                    h[x] = y
                    changed = True
                elif prev != y:
                    return None
    return h


def find_isomorphism(a: FiniteAlgebra, b: FiniteAlgebra) -> Homomorphism | None:
    """An isomorphism a -> b, or None.

    Backtracks over images of a generating set of ``a`` and extends each
    candidate to a full map by closure.
    """
    if a.size != b.size or not a.same_signature(b):
        return None
    gens = generating_set(a)

    def search(i: int, assignment: dict[int, int]):
        h = _extend(a, b, assignment)
        if h is None:
            return None
        if len(set(h.values())) != len(h):
            return None
        if i == len(gens):
            if len(h) != a.size:
                return None
            try:
                return Homomorphism(a, b, tuple(h[x] for x in range(a.size)))
            except ValueError:
                return None
        g = gens[i]
        if g in h:
            return search(i + 1, h)
        used = set(h.values())
        for y in range(b.size):
            if y in used:
                continue
            found = search(i + 1, {**h, g: y})
            if found is not None:
                return found
        return None

    return search(0, {})


def are_isomorphic(a: FiniteAlgebra, b: FiniteAlgebra) -> bool:
    return find_isomorphism(a, b) is not None
