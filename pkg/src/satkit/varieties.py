"""Monoids, groups, semirings, rings and left skew braces.

Each variety fixes a list of operation roles. An algebra is matched to a
variety by symbol name when every role name is present, and otherwise by
position: the first operations (and first constants) of the algebra, in
declaration order, must have the role arities. So an algebra with ops
``add/2, neg/1`` and const ``e`` is a group, and its monoid reduct is
``(add, e)``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core.algebra import FiniteAlgebra, Signature, SubUniverse, algebra_from_functions
from .core.congruence import all_subuniverses
from .core.partition import Partition
from .errors import PreconditionError, SignatureMismatchError


class VarietyTag(str, enum.Enum):
    MONOID = "monoid"
    GROUP = "group"
    SEMIRING = "semiring"
    RING = "ring"
    SKEW_BRACE = "skew_brace"


ROLES: dict[VarietyTag, tuple[tuple[tuple[str, int], ...], tuple[str, ...]]] = {
    VarietyTag.MONOID: ((("mul", 2),), ("e",)),
    VarietyTag.GROUP: ((("mul", 2), ("inv", 1)), ("e",)),
    VarietyTag.SEMIRING: ((("add", 2), ("mul", 2)), ("zero",)),
    VarietyTag.RING: ((("add", 2), ("mul", 2), ("neg", 1)), ("zero",)),
    VarietyTag.SKEW_BRACE: ((("star", 2), ("starinv", 1), ("circ", 2), ("circinv", 1)), ("e",)),
}


def bind_roles(a: FiniteAlgebra, tag: VarietyTag | str) -> dict[str, str]:
    """Map each role of ``tag`` to an operation or constant name of ``a``."""
    tag = VarietyTag(tag)
    op_roles, const_roles = ROLES[tag]
    sig = a.signature
    ops = dict(sig.ops)
    if all(ops.get(r) == k for r, k in op_roles) and all(c in a.consts for c in const_roles):
        return {r: r for r, _ in op_roles} | {c: c for c in const_roles}
    if len(sig.ops) < len(op_roles) or len(sig.consts) < len(const_roles):
        raise SignatureMismatchError(f"{a.name} does not have the shape of a {tag.value}")
    binding = {}
    for (role, arity), (name, have) in zip(op_roles, sig.ops):
        if arity != have:
            raise SignatureMismatchError(
                f"{a.name} does not have the shape of a {tag.value}: "
                f"role {role}/{arity} vs op {name}/{have}")
        binding[role] = name
    for role, name in zip(const_roles, sig.consts):
        binding[role] = name
    return binding


def as_variety(a: FiniteAlgebra, tag: VarietyTag | str) -> FiniteAlgebra:
    """The reduct of ``a`` to the roles of ``tag``, with role names as symbols."""
    tag = VarietyTag(tag)
    b = bind_roles(a, tag)
    op_roles, const_roles = ROLES[tag]
    if all(b[r] == r for r in b) and len(a.signature.ops) == len(op_roles) \
            and len(a.signature.consts) == len(const_roles):
        return a
    return a.reduct([b[r] for r, _ in op_roles], [b[c] for c in const_roles],
                    rename={v: k for k, v in b.items()}, name=a.name)


@dataclass(frozen=True)
class VarietyCheck:
    ok: bool
    axiom: str | None = None
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "OK"
        return f"FAIL {self.axiom} at {self.witness}"


class _Fail(Exception):
    def __init__(self, axiom, witness):
        self.axiom = axiom
        self.witness = witness


def _require(name: str, lhs: np.ndarray, rhs: np.ndarray) -> None:
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        raise _Fail(name, tuple(int(v) for v in bad[0]))


def _grid(n: int, k: int):
    return np.meshgrid(*([np.arange(n)] * k), indexing="ij")


def _check_monoid(t: np.ndarray, e: int, label: str) -> None:
    n = t.shape[0]
    x, y, z = _grid(n, 3)
    _require(f"{label}-associativity", t[t[x, y], z], t[x, t[y, z]])
    xs = np.arange(n)
    _require(f"{label}-left-unit", t[e, xs], xs)
    _require(f"{label}-right-unit", t[xs, e], xs)


def _check_group(t: np.ndarray, inv: np.ndarray, e: int, label: str) -> None:
    _check_monoid(t, e, label)
    xs = np.arange(t.shape[0])
    _require(f"{label}-left-inverse", t[inv[xs], xs], np.full_like(xs, e))
    _require(f"{label}-right-inverse", t[xs, inv[xs]], np.full_like(xs, e))


def check_variety(a: FiniteAlgebra, tag: VarietyTag | str) -> VarietyCheck:
    """Exhaustively test every axiom of ``tag``; report the first violation."""
    tag = VarietyTag(tag)
    b = bind_roles(a, tag)
    tab = {r: a.tables[b[r]] for r, _ in ROLES[tag][0]}
    con = {c: a.consts[b[c]] for c in ROLES[tag][1]}
    n = a.size
    try:
        if tag in (VarietyTag.MONOID, VarietyTag.GROUP):
            if tag is VarietyTag.GROUP:
                _check_group(tab["mul"], tab["inv"], con["e"], "mul")
            else:
                _check_monoid(tab["mul"], con["e"], "mul")
        elif tag in (VarietyTag.SEMIRING, VarietyTag.RING):
            add, mul, zero = tab["add"], tab["mul"], con["zero"]
            _check_monoid(add, zero, "add")
            x, y = _grid(n, 2)
            _require("add-commutativity", add[x, y], add[y, x])
            x, y, z = _grid(n, 3)
            _require("mul-associativity", mul[mul[x, y], z], mul[x, mul[y, z]])
            _require("left-distributivity", mul[x, add[y, z]], add[mul[x, y], mul[x, z]])
            _require("right-distributivity", mul[add[y, z], x], add[mul[y, x], mul[z, x]])
            xs = np.arange(n)
            _require("right-absorption", mul[xs, zero], np.full_like(xs, zero))
            _require("left-absorption", mul[zero, xs], np.full_like(xs, zero))
            if tag is VarietyTag.RING:
                _require("add-inverse", add[xs, tab["neg"][xs]], np.full_like(xs, zero))
        else:
            star, circ, e = tab["star"], tab["circ"], con["e"]
            sinv = tab["starinv"]
            _check_group(star, sinv, e, "star")
            _check_group(circ, tab["circinv"], e, "circ")
            x, y, z = _grid(n, 3)
            lhs = circ[x, star[y, z]]
            rhs = star[star[circ[x, y], sinv[x]], circ[x, z]]
            _require("brace-compatibility", lhs, rhs)
    except _Fail as f:
        return VarietyCheck(False, f.axiom, f.witness)
    return VarietyCheck(True)


def detect_varieties(a: FiniteAlgebra) -> list[VarietyTag]:
    """Every tag whose signature shape and axioms ``a`` satisfies."""
    out = []
    for tag in VarietyTag:
        try:
            if check_variety(a, tag):
                out.append(tag)
        except SignatureMismatchError:
            pass
    return out


PROTOMODULAR = (VarietyTag.GROUP, VarietyTag.RING, VarietyTag.SKEW_BRACE)


def is_protomodular_member(a: FiniteAlgebra) -> bool:
    """True when ``a`` satisfies the axioms of a group, ring or skew brace with its full signature."""
    for tag in PROTOMODULAR:
        try:
            if len(a.signature.ops) == len(ROLES[tag][0]) and check_variety(a, tag):
                return True
        except SignatureMismatchError:
            pass
    return False


# monoids ------------------------------------------------------------------

def _elements(a: FiniteAlgebra, k) -> tuple[int, ...]:
    if isinstance(k, SubUniverse):
        return k.elements
    els = tuple(sorted({int(x) for x in k}))
    if any(not 0 <= x < a.size for x in els):
        raise PreconditionError("element out of range")
    return els


def is_submonoid(m: FiniteAlgebra, k: Iterable[int]) -> bool:
    mon = as_variety(m, VarietyTag.MONOID)
    els = _elements(m, k)
    s = set(els)
    if mon.consts["e"] not in s:
        return False
    t = mon.tables["mul"]
    return all(int(t[x, y]) in s for x in els for y in els)


def submonoids(m: FiniteAlgebra) -> list[tuple[int, ...]]:
    """All submonoids of the monoid reduct of ``m``, sorted by (size, elements)."""
    return [u.elements for u in all_subuniverses(as_variety(m, VarietyTag.MONOID))]


def is_normal_submonoid(m: FiniteAlgebra, k) -> bool:
    """For all k in K and x, y in M: xky in K iff xy in K."""
    els = _elements(m, k)
    if not is_submonoid(m, els):
        raise PreconditionError(f"{list(els)} is not a submonoid")
    t = as_variety(m, VarietyTag.MONOID).tables["mul"]
    inside = np.zeros(m.size, dtype=bool)
    inside[list(els)] = True
    xy = inside[t]
    for kk in els:
        xky = inside[t[:, t[kk, :]]]
        if not np.array_equal(xky, xy):
            return False
    return True


def inverses(g: FiniteAlgebra) -> np.ndarray:
    """Inverse map of a group, read from the ``inv`` role or solved from the multiplication."""
    try:
        b = bind_roles(g, VarietyTag.GROUP)
        return np.asarray(g.tables[b["inv"]])
    except SignatureMismatchError:
        pass
    mon = as_variety(g, VarietyTag.MONOID)
    t, e = mon.tables["mul"], mon.consts["e"]
    out = np.empty(g.size, dtype=np.intp)
    for x in range(g.size):
        cands = [y for y in range(g.size) if t[x, y] == e and t[y, x] == e]
        if not cands:
            raise PreconditionError(f"{x} has no inverse: not a group")
        out[x] = cands[0]
    return out


def is_normal_subgroup(g: FiniteAlgebra, k) -> bool:
    """Subgroup closed under conjugation."""
    els = _elements(g, k)
    if not is_submonoid(g, els):
        return False
    inv = inverses(g)
    t = as_variety(g, VarietyTag.MONOID).tables["mul"]
    s = set(els)
    if any(int(inv[x]) not in s for x in els):
        return False
    return all(int(t[t[x, kk], inv[x]]) in s for x in range(g.size) for kk in els)


def is_group_internal(m: FiniteAlgebra, s: Partition) -> bool:
    """m S n implies m^-1 S n^-1."""
    if s.n != m.size:
        raise PreconditionError("size mismatch")
    inv = inverses(m)
    lab = s.labels
    return all(lab[int(inv[x])] == lab[int(inv[y])]
               for x in range(m.size) for y in range(m.size) if lab[x] == lab[y])


# semirings ----------------------------------------------------------------

def is_subsemiring(a: FiniteAlgebra, w: Iterable[int]) -> bool:
    sr = as_variety(a, VarietyTag.SEMIRING)
    els = _elements(a, w)
    s = set(els)
    if sr.consts["zero"] not in s:
        return False
    add, mul = sr.tables["add"], sr.tables["mul"]
    return all(int(add[x, y]) in s and int(mul[x, y]) in s for x in els for y in els)


def subsemirings(a: FiniteAlgebra) -> list[tuple[int, ...]]:
    return [u.elements for u in all_subuniverses(as_variety(a, VarietyTag.SEMIRING))]


def is_normal_subsemiring(a: FiniteAlgebra, w) -> bool:
    """For every k in W: (x + k in W iff x in W) and kx, xk in W, for all x."""
    els = _elements(a, w)
    if not is_subsemiring(a, els):
        raise PreconditionError(f"{list(els)} is not a subsemiring")
    sr = as_variety(a, VarietyTag.SEMIRING)
    add, mul = sr.tables["add"], sr.tables["mul"]
    inside = np.zeros(a.size, dtype=bool)
    inside[list(els)] = True
    for k in els:
        if not np.array_equal(inside[add[:, k]], inside):
            return False
        if not (inside[mul[k, :]].all() and inside[mul[:, k]].all()):
            return False
    return True


def semiring_syntactic(a: FiniteAlgebra, w: Iterable[int]) -> Partition:
    """Syntactic congruence of a semiring via the four finite conditions.

    m ~ n iff for all x, y, z the memberships in W of x+m, x+my, x+ym and
    x+ymz agree with those of x+n, x+ny, x+yn and x+ynz.
    """
    els = _elements(a, w)
    if not els:
        raise PreconditionError("empty subset: the syntactic congruence needs a nonempty part")
    sr = as_variety(a, VarietyTag.SEMIRING)
    add, mul = sr.tables["add"], sr.tables["mul"]
    n = a.size
    inside = np.zeros(n, dtype=bool)
    inside[list(els)] = True
    xs = np.arange(n)
    rows = []
    for m in range(n):
        c1 = inside[add[:, m]]
        c2 = inside[add[xs[:, None], mul[m, :][None, :]]]
        c3 = inside[add[xs[:, None], mul[:, m][None, :]]]
        ymz = mul[mul[:, m][:, None], xs[None, :]]
        c4 = inside[add[xs[:, None, None], ymz[None, :, :]]]
        rows.append(np.concatenate([c1.ravel(), c2.ravel(), c3.ravel(), c4.ravel()]))
    _, labels = np.unique(np.array(rows), axis=0, return_inverse=True)
    return Partition(labels.reshape(-1))


def is_ideal(r: FiniteAlgebra, w: Iterable[int]) -> bool:
    """Two-sided ideal of a ring: additive subgroup absorbing multiplication on both sides."""
    els = _elements(r, w)
    b = bind_roles(r, VarietyTag.RING)
    add, mul, neg = r.tables[b["add"]], r.tables[b["mul"]], r.tables[b["neg"]]
    s = set(els)
    if r.consts[b["zero"]] not in s:
        return False
    if any(int(add[x, y]) not in s for x in els for y in els):
        return False
    if any(int(neg[x]) not in s for x in els):
        return False
    return all(int(mul[x, k]) in s and int(mul[k, x]) in s for x in range(r.size) for k in els)


# skew braces ----------------------------------------------------------------

BRACE_SIGNATURE = Signature((("star", 2), ("starinv", 1), ("circ", 2), ("circinv", 1)), ("e",))


def skew_brace(name: str, star, starinv, circ, circinv, e: int) -> FiniteAlgebra:
    n = np.asarray(star).shape[0]
    return FiniteAlgebra(name, n, BRACE_SIGNATURE,
                         {"star": star, "starinv": starinv, "circ": circ, "circinv": circinv},
                         {"e": e}, max_arity=2)


def braces_from_group(g: FiniteAlgebra) -> tuple[FiniteAlgebra, FiniteAlgebra]:
    """The two canonical braces (G, *, *) and (G, *, *^op) on a group."""
    grp = as_variety(g, VarietyTag.GROUP)
    chk = check_variety(grp, VarietyTag.GROUP)
    if not chk:
        raise PreconditionError(f"{g.name} is not a group: {chk}")
    t, inv, e = grp.tables["mul"], grp.tables["inv"], grp.consts["e"]
    trivial = skew_brace(f"{g.name}_brace", t, inv, t, inv, e)
    opposite = skew_brace(f"{g.name}_brace_op", t, inv, t.T, inv, e)
    return trivial, opposite


def group_from_table(name: str, mul, e: int | None = None) -> FiniteAlgebra:
    """Group algebra (mul, inv, e) from a multiplication table."""
    t = np.asarray(mul, dtype=np.intp)
    n = t.shape[0]
    if e is None:
        e = next(x for x in range(n) if np.array_equal(t[x], np.arange(n)))
    inv = [next(y for y in range(n) if t[x, y] == e) for x in range(n)]
    return FiniteAlgebra(name, n, Signature((("mul", 2), ("inv", 1)), ("e",)),
                         {"mul": t, "inv": inv}, {"e": e})


def monoid_from_table(name: str, mul, e: int) -> FiniteAlgebra:
    return FiniteAlgebra(name, len(mul), Signature((("mul", 2),), ("e",)), {"mul": mul}, {"e": e})


def cyclic_group(n: int, name: str | None = None) -> FiniteAlgebra:
    return algebra_from_functions(name or f"Z{n}", n,
                                  [("add", 2, lambda x, y: (x + y) % n),
                                   ("neg", 1, lambda x: (-x) % n)], {"e": 0})


def permutation_group(name: str, generators: Iterable[tuple[int, ...]]) -> FiniteAlgebra:
    """Group generated by permutations; elements sorted with the identity first."""
    gens = [tuple(g) for g in generators]
    deg = len(gens[0])
    ident = tuple(range(deg))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[i]] for i in range(deg))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    elems = [ident] + sorted(seen - {ident})
    idx = {p: i for i, p in enumerate(elems)}
    # (p * q)(i) = p(q(i)): apply q first
    mul = [[idx[tuple(p[q[i]] for i in range(deg))] for q in elems] for p in elems]
    return group_from_table(name, mul, 0)


def direct_product_table(t1, t2) -> list[list[int]]:
    t1, t2 = np.asarray(t1), np.asarray(t2)
    m = t2.shape[0]
    n = t1.shape[0] * m
    return [[int(t1[x // m, y // m]) * m + int(t2[x % m, y % m]) for y in range(n)]
            for x in range(n)]

