"""Equivalence relations on {0..n-1} in canonical label form."""
from __future__ import annotations

import json
from typing import Iterable, Sequence

import numpy as np

from ..errors import ParseError, PreconditionError


def canonical_labels(labels: Sequence[int] | np.ndarray) -> tuple[int, ...]:
    """Relabel classes in order of first appearance, scanning 0..n-1."""
    seen: dict[int, int] = {}
    out = []
    for x in labels:
        x = int(x)
        if x not in seen:
            seen[x] = len(seen)
        out.append(seen[x])
    return tuple(out)


class Partition:
    """A partition of the carrier {0..n-1}.

    Two partitions are equal iff their canonical label vectors are equal.
    ``P <= Q`` means P refines Q, i.e. P is contained in Q as a relation.
    """

    __slots__ = ("labels", "_hash")

    def __init__(self, labels: Sequence[int] | np.ndarray):
        self.labels = canonical_labels(labels)
        self._hash = hash(self.labels)

    # construction ---------------------------------------------------------

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls(range(n))

    @classmethod
    def indiscrete(cls, n: int) -> "Partition":
        return cls([0] * n)

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        """Build from a list of blocks; elements not mentioned become singletons."""
        labels = [-1] * n
        for b, block in enumerate(blocks):
            for x in block:
                x = int(x)
                if not 0 <= x < n:
                    raise PreconditionError(f"element {x} out of range for carrier of size {n}")
                if labels[x] != -1:
                    raise PreconditionError(f"element {x} appears in two blocks")
                labels[x] = b
        nxt = n + 1
        for i in range(n):
            if labels[i] == -1:
                labels[i] = nxt
                nxt += 1
        return cls(labels)

    @classmethod
    def from_subset(cls, n: int, subset: Iterable[int]) -> "Partition":
        """Two-block partition {W, complement}; the complement is dropped when empty."""
        inside = set(subset)
        return cls([0 if x in inside else 1 for x in range(n)])

    # basic queries --------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def num_blocks(self) -> int:
        return max(self.labels) + 1 if self.labels else 0

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.labels, dtype=np.intp)

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for x, b in enumerate(self.labels):
            out[b].append(x)
        return out

    def block_of(self, x: int) -> list[int]:
        b = self.labels[x]
        return [y for y, c in enumerate(self.labels) if c == b]

    def related(self, x: int, y: int) -> bool:
        return self.labels[x] == self.labels[y]

    def pairs(self) -> list[tuple[int, int]]:
        """All related pairs (x, y), lexicographically sorted."""
        return [(x, y) for x in range(self.n) for y in range(self.n)
                if self.labels[x] == self.labels[y]]

    def size_as_relation(self) -> int:
        return sum(len(b) ** 2 for b in self.blocks())

    def is_discrete(self) -> bool:
        return self.num_blocks == self.n

    def is_indiscrete(self) -> bool:
        return self.num_blocks <= 1

    def sort_key(self) -> tuple:
        return (self.num_blocks, self.labels)

    # lattice operations ---------------------------------------------------

    def _check_same(self, other: "Partition") -> None:
        if self.n != other.n:
            raise PreconditionError(f"size mismatch: {self.n} vs {other.n}")

    def __le__(self, other: "Partition") -> bool:
        self._check_same(other)
        image: dict[int, int] = {}
        for a, b in zip(self.labels, other.labels):
            if image.setdefault(a, b) != b:
                return False
        return True

    def __ge__(self, other: "Partition") -> bool:
        return other <= self

    def __lt__(self, other: "Partition") -> bool:
        return self != other and self <= other

    def __gt__(self, other: "Partition") -> bool:
        return other < self

    def meet(self, other: "Partition") -> "Partition":
        self._check_same(other)
        return Partition(_pair_ids(self.labels, other.labels))

    def join(self, other: "Partition") -> "Partition":
        """Join as equivalence relations (transitive closure of the union)."""
        self._check_same(other)
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for labels in (self.labels, other.labels):
            first: dict[int, int] = {}
            for x, b in enumerate(labels):
                r = first.setdefault(b, x)
                ra, rb = find(r), find(x)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        return Partition([find(x) for x in range(self.n)])

    # dunder ---------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.labels == other.labels

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Partition({format_partition(self)})"

    def __str__(self) -> str:
        return format_partition(self)


def _pair_ids(a: Sequence[int], b: Sequence[int]) -> list[int]:
    ids: dict[tuple[int, int], int] = {}
    return [ids.setdefault(pair, len(ids)) for pair in zip(a, b)]


def format_partition(p: Partition) -> str:
    """Canonical block form, e.g. ``[[0,2],[1,3]]``."""
    return "[" + ",".join("[" + ",".join(map(str, b)) + "]" for b in p.blocks()) + "]"


def parse_partition(text: str, n: int | None = None) -> Partition:
    """Parse block form ``[[0,2],[1,3]]`` or a label vector ``labels 0 1 0 1``.

    In block form, elements of the carrier that are not mentioned become
    singletons; ``n`` defaults to one more than the largest element seen.
    """
    text = text.strip()
    if text.startswith("labels"):
        try:
            labels = [int(t) for t in text[len("labels"):].replace(",", " ").split()]
        except ValueError as exc:
            raise ParseError(f"bad label vector: {exc}") from None
        if n is not None and len(labels) != n:
            raise ParseError(f"label vector has length {len(labels)}, expected {n}")
        if any(x < 0 for x in labels):
            raise ParseError("negative class label")
        return Partition(labels)
    try:
        blocks = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad partition syntax: {exc.msg}") from None
    if not isinstance(blocks, list) or not all(
            isinstance(b, list) and all(isinstance(x, int) for x in b) for b in blocks):
        raise ParseError("partition must be a list of integer lists")
    flat = [x for b in blocks for x in b]
    if any(x < 0 for x in flat):
        raise ParseError("negative element in partition")
    if n is None:
        n = max(flat) + 1 if flat else 0
    try:
        return Partition.from_blocks(n, blocks)
    except PreconditionError as exc:
        raise ParseError(str(exc)) from None
