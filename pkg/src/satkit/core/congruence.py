"""Congruence toolbox: compatibility test, generation, enumeration, quotients."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..errors import NotACongruenceError, PreconditionError
from .algebra import FiniteAlgebra, Homomorphism, SubUniverse
from .partition import Partition


def _check_size(a: FiniteAlgebra, p: Partition) -> None:
    if p.n != a.size:
        raise PreconditionError(f"size mismatch: partition on {p.n} elements, algebra has {a.size}")


def _class_reps(labels: np.ndarray) -> np.ndarray:
    """For each element, the least element of its class."""
    k = int(labels.max()) + 1 if labels.size else 0
    first = np.full(k, labels.size, dtype=np.intp)
    np.minimum.at(first, labels, np.arange(labels.size))
    return first[labels]


def is_congruence(a: FiniteAlgebra, p: Partition) -> bool:
    """True iff ``p`` is compatible with every operation of ``a``."""
    _check_size(a, p)
    lab = p.array
    t = a.translations
    if t.size == 0:
        return True
    reps = _class_reps(lab)
    return bool(np.array_equal(lab[t], lab[t[:, reps]]))


def congruence_witness(a: FiniteAlgebra, p: Partition):
    """A pair (x, y) with x p y and a translation ``t`` separating them, or None."""
    _check_size(a, p)
    lab = p.array
    reps = _class_reps(lab)
    t = a.translations
    bad = np.argwhere(lab[t] != lab[t[:, reps]])
    if bad.size == 0:
        return None
    row, x = (int(v) for v in bad[0])
    return x, int(reps[x]), t[row]


def _components(n: int, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    graph = coo_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(n, n))
    _, labels = connected_components(graph, directed=False)
    return labels


def congruence_generated(a: FiniteAlgebra, pairs: Iterable[tuple[int, int]]) -> Partition:
    """Least congruence of ``a`` containing every given pair.

    Union-find seeded with the pairs, closed to a fixpoint under all unary
    translations with parameters from the full carrier.
    """
    n = a.size
    pairs = [(int(x), int(y)) for x, y in pairs]
    for x, y in pairs:
        if not (0 <= x < n and 0 <= y < n):
            raise PreconditionError(f"element out of range in pair {(x, y)}")
    src = np.array([x for x, _ in pairs], dtype=np.intp)
    dst = np.array([y for _, y in pairs], dtype=np.intp)
    labels = _components(n, src, dst)
    t = a.translations
    k = len(set(labels.tolist()))
    while True:
        reps = _class_reps(labels)
        # (x, rep x) keeps existing classes glued together
        s = np.concatenate([np.arange(n), t.reshape(-1)])
        d = np.concatenate([reps, t[:, reps].reshape(-1)])
        labels = _components(n, s, d)
        k_new = int(labels.max()) + 1
        if k_new == k:
            return Partition(labels)
        k = k_new


def principal_congruence(a: FiniteAlgebra, x: int, y: int) -> Partition:
    return congruence_generated(a, [(x, y)])


def congruence_join(a: FiniteAlgebra, p: Partition, q: Partition) -> Partition:
    """Join in the congruence lattice: the congruence generated by p union q."""
    _check_size(a, p)
    _check_size(a, q)
    pairs = [(x, r) for part in (p, q) for blk in part.blocks() for x in blk for r in blk[:1]]
    return congruence_generated(a, pairs)


def partition_meet(p: Partition, q: Partition) -> Partition:
    """Intersection of two equivalence relations."""
    return p.meet(q)


def all_congruences(a: FiniteAlgebra) -> list[Partition]:
    """Every congruence of ``a``, sorted by (number of classes, label vector).

    Principal congruences plus closure under binary joins; the discrete
    relation is always included.
    """
    n = a.size
    found = {Partition.discrete(n)}
    for x, y in itertools.combinations(range(n), 2):
        found.add(principal_congruence(a, x, y))
    # joins of congruences coincide with joins of equivalence relations
    members = list(found)
    frontier = list(found)
    while frontier:
        new = []
        for p in frontier:
            for q in members:
                j = p.join(q)
                if j not in found:
                    found.add(j)
                    new.append(j)
        members.extend(new)
        frontier = new
    return sorted(found, key=Partition.sort_key)


def quotient_algebra(a: FiniteAlgebra, theta: Partition,
                     name: str | None = None) -> tuple[FiniteAlgebra, Homomorphism]:
    """The quotient ``a / theta`` and the projection onto it."""
    _check_size(a, theta)
    if not is_congruence(a, theta):
        raise NotACongruenceError("quotient by a partition that is not a congruence")
    lab = theta.array
    reps = np.array([blk[0] for blk in theta.blocks()], dtype=np.intp)
    tables = {}
    for op, arity in a.signature.ops:
        tables[op] = lab[a.tables[op][np.ix_(*([reps] * arity))]]
    consts = {c: int(lab[v]) for c, v in a.consts.items()}
    q = FiniteAlgebra(name or f"{a.name}/~", theta.num_blocks, a.signature, tables, consts,
                      max_arity=max([r for _, r in a.signature.ops], default=1))
    return q, Homomorphism(a, q, theta.labels)


def kernel(h: Homomorphism) -> Partition:
    return Partition(h.map)


def preimage_congruence(h: Homomorphism, r: Partition) -> Partition:
    """x ~ y iff h(x) r h(y)."""
    if r.n != h.target.size:
        raise PreconditionError("size mismatch: relation is not on the target carrier")
    return Partition([r.labels[y] for y in h.map])


def subuniverse_generated(a: FiniteAlgebra, seed: Iterable[int]) -> SubUniverse:
    """Least subuniverse containing ``seed`` and every constant."""
    n = a.size
    current = set()
    for x in seed:
        x = int(x)
        if not 0 <= x < n:
            raise PreconditionError(f"element {x} out of range")
        current.add(x)
    current |= set(a.consts.values())
    if not current:
        raise PreconditionError("empty subuniverse: empty seed and no constants")
    while True:
        els = sorted(current)
        grown = set(current)
        for op, arity in a.signature.ops:
            t = a.tables[op]
            grown.update(int(v) for v in t[np.ix_(*([els] * arity))].reshape(-1))
        if grown == current:
            return SubUniverse(a, tuple(els))
        current = grown


def all_subuniverses(a: FiniteAlgebra) -> list[SubUniverse]:
    """Every (nonempty) subuniverse, sorted by (size, elements)."""
    found = {}
    seeds = [()] if a.consts else []
    seeds += [(x,) for x in range(a.size)]
    frontier = []
    for s in seeds:
        u = subuniverse_generated(a, s)
        if u.elements not in found:
            found[u.elements] = u
            frontier.append(u)
    # every subuniverse is a join of 1-generated ones
    while frontier:
        nxt = []
        for u in frontier:
            for x in range(a.size):
                if x in u:
                    continue
                v = subuniverse_generated(a, u.elements + (x,))
                if v.elements not in found:
                    found[v.elements] = v
                    nxt.append(v)
        frontier = nxt
    return sorted(found.values(), key=lambda u: (len(u), u.elements))


@dataclass(frozen=True)
class ShiftingResult:
    holds: bool
    witness: tuple[int, int, int, int] | None = None

    def __bool__(self) -> bool:
        return self.holds


def check_shifting_lemma(a: FiniteAlgebra, t: Partition, s: Partition,
                         r: Partition) -> ShiftingResult:
    """Test the Shifting Lemma for the triple (T, S, R) with R meet S inside T.

    Looks for x, x', y, y' with x S y, x' S y', x R x', y R y', x T x' but
    not y T y'. The witness is returned as (x, x', y, y').
    """
    for p in (t, s, r):
        _check_size(a, p)
        if not is_congruence(a, p):
            raise NotACongruenceError(f"{p} is not a congruence")
    if not r.meet(s) <= t:
        raise PreconditionError("Shifting Lemma precondition violated: R meet S is not inside T")
    n = a.size
    tl, sl, rl = t.labels, s.labels, r.labels
    for x in range(n):
        for xp in range(n):
            if rl[x] != rl[xp] or tl[x] != tl[xp]:
                continue
            for y in range(n):
                if sl[x] != sl[y]:
                    continue
                for yp in range(n):
                    if sl[xp] == sl[yp] and rl[y] == rl[yp] and tl[y] != tl[yp]:
                        return ShiftingResult(False, (x, xp, y, yp))
    return ShiftingResult(True)
