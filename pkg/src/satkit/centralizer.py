"""Centralizers of congruences through the saturation operator on a diagonal.

For a congruence R of A, the pair algebra carries the pairs (x, y) with
x R y and componentwise operations. The diagonal x -> (x, x) is a
subuniverse of it. Applying ``forall`` to the diagonal with the total
relation and pulling the result back along the diagonal gives the largest
congruence S with [R, S] = 0 (in protomodular varieties).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .core.algebra import FiniteAlgebra, SubUniverse
from .core.congruence import all_congruences, is_congruence
from .core.partition import Partition
from .errors import NotACongruenceError, PreconditionError
from .saturation import forall, is_saturated, restrict_congruence
from .varieties import VarietyTag, as_variety, check_variety, inverses, is_protomodular_member


@dataclass(frozen=True, eq=False)
class PairAlgebra:
    """The congruence R of ``base`` as an algebra, pairs sorted lexicographically."""

    base: FiniteAlgebra
    relation: Partition
    algebra: FiniteAlgebra
    pairs: tuple[tuple[int, int], ...]

    @cached_property
    def index(self) -> dict[tuple[int, int], int]:
        return {p: i for i, p in enumerate(self.pairs)}

    @cached_property
    def diagonal(self) -> SubUniverse:
        return SubUniverse(self.algebra, tuple(self.index[(x, x)] for x in range(self.base.size)))

    def diagonal_embedding(self) -> tuple[int, ...]:
        """Position of (x, x) for each base element x."""
        return tuple(self.index[(x, x)] for x in range(self.base.size))

    def __len__(self) -> int:
        return len(self.pairs)


def pair_algebra(a: FiniteAlgebra, r: Partition) -> PairAlgebra:
    if r.n != a.size:
        raise PreconditionError("size mismatch")
    if not is_congruence(a, r):
        raise NotACongruenceError(f"{r} is not a congruence")
    pairs = tuple(r.pairs())
    idx = {p: i for i, p in enumerate(pairs)}
    left = np.array([x for x, _ in pairs], dtype=np.intp)
    right = np.array([y for _, y in pairs], dtype=np.intp)
    k = len(pairs)
    # encode (x, y) as x * n + y, then look up the pair index
    lookup = np.full(a.size * a.size, -1, dtype=np.intp)
    lookup[left * a.size + right] = np.arange(k)
    tables = {}
    for op, arity in a.signature.ops:
        t = a.tables[op]
        lx = t[np.ix_(*([left] * arity))]
        ry = t[np.ix_(*([right] * arity))]
        tables[op] = lookup[lx * a.size + ry]
    consts = {c: idx[(v, v)] for c, v in a.consts.items()}
    alg = FiniteAlgebra(f"{a.name}[R]", k, a.signature, tables, consts,
                        max_arity=max([r_ for _, r_ in a.signature.ops], default=1))
    return PairAlgebra(a, r, alg, pairs)


def _pull_back_diagonal(p: PairAlgebra, f: Partition) -> Partition:
    return Partition([f.labels[i] for i in p.diagonal_embedding()])


def centralizer(a: FiniteAlgebra, r: Partition) -> Partition:
    """Largest congruence S with [R, S] = 0, via ``forall`` on the diagonal of R."""
    p = pair_algebra(a, r)
    d = p.diagonal
    f = forall(p.algebra, d, Partition.indiscrete(len(d)))
    return _pull_back_diagonal(p, f)


def largest_centralizing_below(a: FiniteAlgebra, r: Partition, s: Partition) -> Partition:
    """Largest T inside S with [R, T] = 0."""
    if not is_congruence(a, s):
        raise NotACongruenceError(f"{s} is not a congruence")
    p = pair_algebra(a, r)
    # the diagonal is indexed like the base carrier, so S transfers unchanged
    f = forall(p.algebra, p.diagonal, _diagonal_order(p, s))
    return _pull_back_diagonal(p, f)


def _diagonal_order(p: PairAlgebra, s: Partition) -> Partition:
    """S re-indexed along the sorted element list of the diagonal subuniverse."""
    emb = p.diagonal_embedding()
    order = sorted(range(len(emb)), key=lambda x: emb[x])
    return Partition([s.labels[x] for x in order])


def is_connected(a: FiniteAlgebra, r: Partition, s: Partition) -> bool:
    """[R, S] = 0, decided as S inside the centralizer of R."""
    return s <= centralizer(a, r)


def connector_witness(a: FiniteAlgebra, r: Partition, s: Partition) -> Partition | None:
    """A congruence W of the pair algebra with the diagonal saturated and restricting to S.

    Found by scanning every congruence of the pair algebra; None when absent.
    """
    p = pair_algebra(a, r)
    d = p.diagonal
    target = _diagonal_order(p, s)
    for w in all_congruences(p.algebra):
        if is_saturated(d.elements, w) and restrict_congruence(w, d) == target:
            return w
    return None


def semantics(a: FiniteAlgebra) -> str:
    """``protomodular`` when the algebra is a group, ring or skew brace; ``formal`` otherwise."""
    return "protomodular" if is_protomodular_member(a) else "formal"


def group_centralizer_oracle(g: FiniteAlgebra, r: Partition) -> Partition:
    """Congruence of C_G(N), N the class of the unit: x ~ y iff x y^-1 commutes with N."""
    chk = check_variety(g, VarietyTag.GROUP)
    if not chk:
        raise PreconditionError(f"{g.name} is not a group: {chk}")
    mon = as_variety(g, VarietyTag.MONOID)
    t, e = mon.tables["mul"], mon.consts["e"]
    inv = inverses(g)
    normal = r.block_of(e)
    central = {c for c in range(g.size) if all(t[c, n] == t[n, c] for n in normal)}
    return Partition.from_blocks(g.size, _cosets(g.size, t, inv, central))


def _cosets(n: int, t, inv, subgroup: set[int]) -> list[list[int]]:
    labels = [-1] * n
    blocks = []
    for x in range(n):
        if labels[x] != -1:
            continue
        blk = [y for y in range(n) if int(t[y, inv[x]]) in subgroup]
        for y in blk:
            labels[y] = len(blocks)
        blocks.append(blk)
    return blocks


def commuting_normal_subgroups(g: FiniteAlgebra, r: Partition, s: Partition) -> bool:
    """[R, S] = 0 in a group: the unit classes commute elementwise."""
    mon = as_variety(g, VarietyTag.MONOID)
    t, e = mon.tables["mul"], mon.consts["e"]
    return all(t[x, y] == t[y, x]
               for x, y in itertools.product(r.block_of(e), s.block_of(e)))
