"""Brute-force references for every "largest congruence" construction.

Each function enumerates the full congruence lattice with
:func:`all_congruences`, filters by the defining predicate and returns the
maximum. They share no code with the refinement engine in
:mod:`satkit.saturation` and exist to cross-check it.
"""
from __future__ import annotations

from typing import Iterable

from .core.algebra import FiniteAlgebra, SubUniverse
from .core.congruence import all_congruences
from .core.partition import Partition
from .errors import SatkitError


class NoMaximumError(SatkitError):
    """The filtered set of congruences has no largest element."""


def maximum(candidates: Iterable[Partition]) -> Partition:
    """The largest element of a family of partitions, checked to dominate all others."""
    cands = list(candidates)
    if not cands:
        raise NoMaximumError("no candidate satisfies the predicate")
    best = min(cands, key=lambda p: p.num_blocks)
    if not all(c <= best for c in cands):
        raise NoMaximumError("candidates have no largest element")
    return best


def _union_of_classes(w: set[int], r: Partition) -> bool:
    touched = {r.labels[y] for y in w}
    return all((r.labels[x] in touched) == (x in w) for x in range(r.n))


def _restriction(r: Partition, elements: tuple[int, ...]) -> Partition:
    return Partition([r.labels[x] for x in elements])


def brute_syntactic(a: FiniteAlgebra, w: Iterable[int],
                    congruences: list[Partition] | None = None) -> Partition:
    w = set(w)
    cons = congruences if congruences is not None else all_congruences(a)
    return maximum(t for t in cons if _union_of_classes(w, t))


def forall_candidates(a: FiniteAlgebra, u: SubUniverse, s: Partition,
                      congruences: list[Partition] | None = None) -> list[Partition]:
    cons = congruences if congruences is not None else all_congruences(a)
    els = set(u.elements)
    return [t for t in cons
            if _union_of_classes(els, t) and _restriction(t, u.elements) <= s]


def brute_forall(a: FiniteAlgebra, u: SubUniverse, s: Partition,
                 congruences: list[Partition] | None = None) -> Partition:
    return maximum(forall_candidates(a, u, s, congruences))


def brute_largest_below(a: FiniteAlgebra, e: Partition,
                        congruences: list[Partition] | None = None) -> Partition:
    cons = congruences if congruences is not None else all_congruences(a)
    return maximum(t for t in cons if t <= e)


def brute_generated(a: FiniteAlgebra, pairs, congruences: list[Partition] | None = None
                    ) -> Partition:
    """Least congruence containing the pairs, as the meet of all such congruences."""
    cons = congruences if congruences is not None else all_congruences(a)
    above = [t for t in cons if all(t.related(x, y) for x, y in pairs)]
    out = above[0]
    for t in above[1:]:
        out = out.meet(t)
    return out
