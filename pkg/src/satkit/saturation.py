"""Largest congruences below a partition, syntactic congruences and the ``forall_u`` operator.

Everything here reduces to one refinement loop, :func:`largest_congruence_below`:
start from an arbitrary partition E and split every class by the vector of
classes that the basic translations send each element to, until stable.
The result is the set of pairs that no unary polynomial can separate into
different E-classes.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core.algebra import FiniteAlgebra, SubUniverse
from .core.congruence import is_congruence
from .core.partition import Partition
from .errors import NotACongruenceError, PreconditionError


def _refine(labels: np.ndarray, translations: np.ndarray) -> np.ndarray:
    while True:
        k = int(labels.max()) + 1
        key = np.vstack([labels[None, :], labels[translations]])
        _, new = np.unique(key.T, axis=0, return_inverse=True)
        new = new.reshape(-1)
        if int(new.max()) + 1 == k:
            return labels
        labels = new


def largest_congruence_below(a: FiniteAlgebra, e: Partition) -> Partition:
    """The largest congruence of ``a`` contained in the partition ``e``."""
    if e.n != a.size:
        raise PreconditionError(f"size mismatch: partition on {e.n} elements, algebra has {a.size}")
    return Partition(_refine(e.array, a.translations))


def syntactic_congruence(a: FiniteAlgebra, w: Iterable[int]) -> Partition:
    """Largest congruence for which ``w`` is a union of classes.

    ``w`` may be any nonempty subset of the carrier.
    """
    w = _subset(a, w)
    if not w:
        raise PreconditionError("empty subset: the syntactic congruence needs a nonempty part")
    return largest_congruence_below(a, Partition.from_subset(a.size, w))


def _subset(a: FiniteAlgebra, w: Iterable[int]) -> set[int]:
    out = set()
    for x in w:
        x = int(x)
        if not 0 <= x < a.size:
            raise PreconditionError(f"element {x} out of range")
        out.add(x)
    return out


def unit_class(a: FiniteAlgebra, r: Partition, z: int):
    """The ``r``-class of ``z``.

    Returned as a :class:`SubUniverse` when the class is closed under the
    operations (always the case for the unit of a monoid-like algebra and a
    congruence ``r``); otherwise as a sorted tuple of elements.
    """
    if not 0 <= z < a.size:
        raise PreconditionError(f"element {z} out of range")
    if r.n != a.size:
        raise PreconditionError("size mismatch")
    cls = tuple(r.block_of(z))
    try:
        return SubUniverse(a, cls)
    except PreconditionError:
        return cls


def is_saturated(w: Iterable[int], r: Partition) -> bool:
    """True iff ``w`` is a union of ``r``-classes."""
    w = set(w)
    if any(not 0 <= x < r.n for x in w):
        raise PreconditionError("size mismatch: subset leaves the carrier")
    touched = {r.labels[x] for x in w}
    return all((r.labels[x] in touched) == (x in w) for x in range(r.n))


def restrict_congruence(r: Partition, u: SubUniverse) -> Partition:
    """``r`` restricted to ``u``, indexed by position in ``u.elements``."""
    if r.n != u.parent.size:
        raise PreconditionError("size mismatch")
    return Partition([r.labels[x] for x in u.elements])


def extend_from(u: SubUniverse, s: Partition) -> Partition:
    """Partition of the parent carrier: the classes of ``s`` plus the complement of ``u``."""
    if s.n != len(u):
        raise PreconditionError(f"size mismatch: relation on {s.n} elements, subuniverse has {len(u)}")
    rest = s.num_blocks
    labels = [rest] * u.parent.size
    for i, x in enumerate(u.elements):
        labels[x] = s.labels[i]
    return Partition(labels)


def is_normal_to(u: SubUniverse, r: Partition) -> bool:
    """True iff ``u`` is exactly one ``r``-class."""
    if r.n != u.parent.size:
        raise PreconditionError("size mismatch")
    return sorted(r.block_of(u.elements[0])) == list(u.elements)


@dataclass(frozen=True, eq=False)
class SaturationProblem:
    """A subuniverse ``u`` of ``algebra`` with a congruence ``s`` of the induced subalgebra."""

    algebra: FiniteAlgebra
    u: SubUniverse
    s: Partition

    def __post_init__(self):
        if self.u.parent is not self.algebra and self.u.parent != self.algebra:
            raise PreconditionError("subuniverse belongs to a different algebra")
        if self.s.n != len(self.u):
            raise PreconditionError(
                f"size mismatch: relation on {self.s.n} elements, subuniverse has {len(self.u)}")
        if not is_congruence(self.u.as_algebra(), self.s):
            raise NotACongruenceError(f"{self.s} is not a congruence of the subalgebra on "
                                      f"{list(self.u.elements)}")


def forall_u(problem: SaturationProblem) -> Partition:
    """Largest congruence T with ``u`` saturated for T and T restricted to ``u`` inside ``s``."""
    return largest_congruence_below(problem.algebra, extend_from(problem.u, problem.s))


def forall(a: FiniteAlgebra, u: SubUniverse, s: Partition) -> Partition:
    return forall_u(SaturationProblem(a, u, s))


def normal_sup(a: FiniteAlgebra, u: SubUniverse) -> Partition | None:
    """Largest congruence having ``u`` as a class, or None if there is none."""
    f = forall(a, u, Partition.indiscrete(len(u)))
    return f if is_normal_to(u, f) else None


def largest_below_pair(a: FiniteAlgebra, u: SubUniverse, s_on_x: Partition,
                       r_on_u: Partition) -> Partition:
    """Largest T inside ``s_on_x`` with ``u`` saturated and T restricted to ``u`` inside ``r_on_u``."""
    if not is_congruence(a, s_on_x):
        raise NotACongruenceError(f"{s_on_x} is not a congruence")
    return s_on_x.meet(forall(a, u, r_on_u))
