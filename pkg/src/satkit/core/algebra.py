"""Finite algebras, subuniverses and homomorphisms."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from ..errors import PreconditionError, SignatureMismatchError

DEFAULT_MAX_ARITY = 3

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class Signature:
    """Operation symbols with arities, plus named constants.

    Arity-0 symbols are constants and live in ``consts``; ``ops`` holds
    symbols of arity >= 1.
    """

    ops: tuple[tuple[str, int], ...]
    consts: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple((str(n), int(r)) for n, r in self.ops))
        object.__setattr__(self, "consts", tuple(str(c) for c in self.consts))
        names = [n for n, _ in self.ops] + list(self.consts)
        for name in names:
            if not _IDENT.match(name):
                raise PreconditionError(f"invalid symbol name {name!r}")
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise PreconditionError(f"duplicate symbol name {dup!r}")
        for name, arity in self.ops:
            if arity < 1:
                raise PreconditionError(f"op {name!r} has arity {arity}; use a const")

    def arity(self, name: str) -> int:
        for n, r in self.ops:
            if n == name:
                return r
        raise KeyError(name)

    @property
    def op_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.ops)


class FiniteAlgebra:
    """An algebra on the carrier {0..size-1} given by total operation tables.

    ``tables[name]`` is an integer array of shape ``(size,) * arity``; the
    row-major flattening (last index fastest) is the ``.alg`` serialization.
    """

    def __init__(self, name: str, size: int, signature: Signature,
                 tables: Mapping[str, Sequence | np.ndarray],
                 consts: Mapping[str, int] | None = None,
                 max_arity: int = DEFAULT_MAX_ARITY):
        if size < 1:
            raise PreconditionError("empty algebras are not allowed (size must be >= 1)")
        consts = dict(consts or {})
        self.name = name
        self.size = int(size)
        self.signature = signature
        built: dict[str, np.ndarray] = {}
        for op, arity in signature.ops:
            if arity > max_arity:
                raise PreconditionError(
                    f"op {op!r} has arity {arity} above the cap {max_arity}")
            if op not in tables:
                raise PreconditionError(f"missing table for op {op!r}")
            flat = np.asarray(tables[op], dtype=np.int64).reshape(-1)
            if flat.size != size ** arity:
                raise PreconditionError(
                    f"table length for op {op!r} is {flat.size}, expected {size ** arity}")
            if flat.size and (flat.min() < 0 or flat.max() >= size):
                bad = int(flat[(flat < 0) | (flat >= size)][0])
                raise PreconditionError(f"entry out of range in op {op!r}: {bad}")
            arr = flat.reshape((size,) * arity).astype(np.intp)
            arr.setflags(write=False)
            built[op] = arr
        extra = set(tables) - set(built)
        if extra:
            raise PreconditionError(f"tables for undeclared ops: {sorted(extra)}")
        if set(consts) != set(signature.consts):
            raise PreconditionError("constants do not match the signature")
        for c, v in consts.items():
            if not 0 <= int(v) < size:
                raise PreconditionError(f"constant {c!r}={v} out of range")
        self.tables = built
        self.consts = {c: int(consts[c]) for c in signature.consts}

    # evaluation -----------------------------------------------------------

    def op(self, name: str, *args: int) -> int:
        return int(self.tables[name][tuple(args)])

    @property
    def carrier(self) -> range:
        return range(self.size)

    @cached_property
    def translations(self) -> np.ndarray:
        """All basic unary translations ``x -> f(c; x at position i)`` as rows.

        Parameters ``c`` range over the full carrier. Duplicate rows and the
        identity map are removed. Shape ``(k, size)``.
        """
        n = self.size
        rows = []
        for op, arity in self.signature.ops:
            table = self.tables[op]
            for i in range(arity):
                rows.append(np.moveaxis(table, i, -1).reshape(-1, n))
        if not rows:
            return np.empty((0, n), dtype=np.intp)
        mat = np.unique(np.vstack(rows), axis=0)
        ident = np.arange(n)
        mat = mat[~np.all(mat == ident, axis=1)]
        mat.setflags(write=False)
        return mat

    # comparisons ----------------------------------------------------------

    def same_signature(self, other: "FiniteAlgebra") -> bool:
        return self.signature == other.signature

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteAlgebra):
            return NotImplemented
        return (self.size == other.size and self.signature == other.signature
                and self.consts == other.consts
                and all(np.array_equal(self.tables[k], other.tables[k]) for k in self.tables))

    def __hash__(self) -> int:
        return hash((self.size, self.signature, tuple(self.consts.items()),
                     tuple(t.tobytes() for t in self.tables.values())))

    def __repr__(self) -> str:
        ops = ", ".join(f"{n}/{r}" for n, r in self.signature.ops)
        cs = ", ".join(f"{c}={v}" for c, v in self.consts.items())
        return f"<FiniteAlgebra {self.name} n={self.size} ops=[{ops}] consts=[{cs}]>"

    # derived algebras -----------------------------------------------------

    def reduct(self, ops: Sequence[str], consts: Sequence[str] = (),
               rename: Mapping[str, str] | None = None, name: str | None = None
               ) -> "FiniteAlgebra":
        """Forget all but the listed symbols, optionally renaming them."""
        rename = dict(rename or {})
        sig = Signature(tuple((rename.get(o, o), self.signature.arity(o)) for o in ops),
                        tuple(rename.get(c, c) for c in consts))
        return FiniteAlgebra(name or self.name, self.size, sig,
                             {rename.get(o, o): self.tables[o] for o in ops},
                             {rename.get(c, c): self.consts[c] for c in consts},
                             max_arity=max([r for _, r in sig.ops], default=1))

    def relabel(self, perm: Sequence[int], name: str | None = None) -> "FiniteAlgebra":
        """Isomorphic copy where old element x becomes perm[x]."""
        perm = np.asarray(perm, dtype=np.intp)
        inv = np.empty_like(perm)
        inv[perm] = np.arange(self.size)
        tables = {}
        for op, arity in self.signature.ops:
            t = self.tables[op]
            idx = np.ix_(*([inv] * arity))
            tables[op] = perm[t[idx]]
        return FiniteAlgebra(name or self.name, self.size, self.signature, tables,
                             {c: int(perm[v]) for c, v in self.consts.items()},
                             max_arity=max([r for _, r in self.signature.ops], default=1))


def algebra_from_functions(name: str, size: int, ops: Sequence[tuple[str, int, callable]],
                           consts: Mapping[str, int] | None = None) -> FiniteAlgebra:
    """Tabulate Python callables into a FiniteAlgebra."""
    tables = {}
    for op, arity, fn in ops:
        tables[op] = [fn(*args) for args in itertools.product(range(size), repeat=arity)]
    consts = dict(consts or {})
    sig = Signature(tuple((op, arity) for op, arity, _ in ops), tuple(consts))
    return FiniteAlgebra(name, size, sig, tables, consts,
                         max_arity=max([r for _, r, _ in ops], default=1))


def product_algebra(a: FiniteAlgebra, b: FiniteAlgebra, name: str | None = None) -> FiniteAlgebra:
    """Direct product; the pair (x, y) is encoded as x * b.size + y."""
    if not a.same_signature(b):
        raise SignatureMismatchError("product of algebras with different signatures")
    m = b.size

    def make(op):
        ta, tb = a.tables[op], b.tables[op]
        return lambda *args: int(ta[tuple(x // m for x in args)]) * m + int(tb[tuple(x % m for x in args)])

    ops = [(op, r, make(op)) for op, r in a.signature.ops]
    consts = {c: a.consts[c] * m + b.consts[c] for c in a.signature.consts}
    return algebra_from_functions(name or f"{a.name}x{b.name}", a.size * m, ops, consts)


@dataclass(frozen=True, eq=False)
class SubUniverse:
    """A subset of the carrier closed under every operation and containing every constant."""

    parent: FiniteAlgebra
    elements: tuple[int, ...]

    def __post_init__(self):
        els = tuple(sorted(set(int(x) for x in self.elements)))
        object.__setattr__(self, "elements", els)
        if not els:
            raise PreconditionError("empty subuniverse")
        n = self.parent.size
        if els[0] < 0 or els[-1] >= n:
            raise PreconditionError("subuniverse element out of range")
        missing = [c for c, v in self.parent.consts.items() if v not in self.element_set]
        if missing:
            raise PreconditionError(f"subset omits constant(s) {missing}")
        for op, arity in self.parent.signature.ops:
            t = self.parent.tables[op]
            for args in itertools.product(els, repeat=arity):
                if int(t[args]) not in self.element_set:
                    raise PreconditionError(
                        f"subset not closed under {op}: {op}{args} = {int(t[args])}")

    @cached_property
    def element_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    @cached_property
    def index(self) -> dict[int, int]:
        """Carrier element -> position in ``elements``."""
        return {x: i for i, x in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.element_set

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubUniverse):
            return NotImplemented
        return self.elements == other.elements and self.parent is other.parent

    def __hash__(self) -> int:
        return hash((id(self.parent), self.elements))

    def __repr__(self) -> str:
        return f"SubUniverse({list(self.elements)} of {self.parent.name})"

    def as_algebra(self, name: str | None = None) -> FiniteAlgebra:
        """The induced subalgebra, re-indexed by position in ``elements``."""
        pos = self.index
        els = self.elements
        k = len(els)
        tables = {}
        for op, arity in self.parent.signature.ops:
            t = self.parent.tables[op]
            tables[op] = [pos[int(t[tuple(els[i] for i in args)])]
                          for args in itertools.product(range(k), repeat=arity)]
        consts = {c: pos[v] for c, v in self.parent.consts.items()}
        return FiniteAlgebra(name or f"{self.parent.name}|{list(els)}", k,
                             self.parent.signature, tables, consts,
                             max_arity=max([r for _, r in self.parent.signature.ops], default=1))

    def inclusion(self) -> "Homomorphism":
        return Homomorphism(self.as_algebra(), self.parent, self.elements)


def is_subuniverse(a: FiniteAlgebra, subset: Iterable[int]) -> bool:
    try:
        SubUniverse(a, tuple(subset))
    except PreconditionError:
        return False
    return True


@dataclass(frozen=True, eq=False)
class Homomorphism:
    """A structure-preserving map between algebras of the same signature."""

    source: FiniteAlgebra
    target: FiniteAlgebra
    map: tuple[int, ...] = field()

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(x) for x in self.map))
        src, tgt, h = self.source, self.target, self.map
        if not src.same_signature(tgt):
            raise SignatureMismatchError("homomorphism between different signatures")
        if len(h) != src.size:
            raise PreconditionError(f"map has length {len(h)}, expected {src.size}")
        if any(not 0 <= y < tgt.size for y in h):
            raise PreconditionError("map entry out of range of the target")
        for c in src.signature.consts:
            if h[src.consts[c]] != tgt.consts[c]:
                raise PreconditionError(f"map does not preserve constant {c!r}")
        harr = np.asarray(h, dtype=np.intp)
        for op, arity in src.signature.ops:
            lhs = harr[src.tables[op]]
            rhs = tgt.tables[op][np.ix_(*([harr] * arity))]
            if not np.array_equal(lhs, rhs):
                bad = tuple(int(i) for i in np.argwhere(lhs != rhs)[0])
                raise PreconditionError(f"map does not commute with {op} at {bad}")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def is_surjective(self) -> bool:
        return set(self.map) == set(range(self.target.size))

    def image(self) -> SubUniverse:
        return SubUniverse(self.target, tuple(set(self.map)))

    def preimage_subset(self, subset: Iterable[int]) -> tuple[int, ...]:
        s = set(subset)
        return tuple(x for x, y in enumerate(self.map) if y in s)

    def compose(self, first: "Homomorphism") -> "Homomorphism":
        """``self . first``."""
        return Homomorphism(first.source, self.target, tuple(self.map[y] for y in first.map))
