"""DFAs, their transition monoids and syntactic monoids."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .core.algebra import FiniteAlgebra, Signature
from .core.congruence import quotient_algebra
from .core.partition import Partition
from .errors import ParseError, PreconditionError
from .saturation import syntactic_congruence


class EmptyLanguageError(PreconditionError):
    pass


@dataclass(frozen=True)
class DFA:
    """Complete deterministic automaton on states ``0..states-1``.

    ``transitions[i][s]`` is the state reached from ``s`` on ``alphabet[i]``.
    """

    name: str
    states: int
    alphabet: tuple[str, ...]
    transitions: tuple[tuple[int, ...], ...]
    start: int
    finals: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "transitions",
                           tuple(tuple(int(x) for x in row) for row in self.transitions))
        object.__setattr__(self, "finals", frozenset(int(x) for x in self.finals))
        q = self.states
        if q < 1:
            raise PreconditionError("a DFA needs at least one state")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise PreconditionError("duplicate alphabet symbol")
        if len(self.transitions) != len(self.alphabet):
            raise PreconditionError("one transition vector per symbol is required")
        for sym, row in zip(self.alphabet, self.transitions):
            if len(row) != q or any(not 0 <= x < q for x in row):
                raise PreconditionError(f"bad transition vector for symbol {sym!r}")
        if not 0 <= self.start < q:
            raise PreconditionError("start state out of range")
        if any(not 0 <= f < q for f in self.finals):
            raise PreconditionError("final state out of range")

    def step(self, state: int, symbol: str) -> int:
        return self.transitions[self.alphabet.index(symbol)][state]

    def accepts(self, word: Sequence[str]) -> bool:
        s = self.start
        for a in word:
            s = self.step(s, a)
        return s in self.finals

    def reachable(self) -> list[int]:
        seen = {self.start}
        stack = [self.start]
        while stack:
            s = stack.pop()
            for row in self.transitions:
                if row[s] not in seen:
                    seen.add(row[s])
                    stack.append(row[s])
        return sorted(seen)


@dataclass(frozen=True)
class TransitionMonoid:
    monoid: FiniteAlgebra
    elements: tuple[tuple[int, ...], ...]
    letters: dict[str, int]


def _compose(t: tuple[int, ...], u: tuple[int, ...]) -> tuple[int, ...]:
    """Read t, then u."""
    return tuple(u[s] for s in t)


def transition_monoid(d: DFA) -> TransitionMonoid:
    """Monoid of state transformations generated by the letters.

    Element 0 is the identity; the rest are sorted lexicographically.
    ``mul(x, y)`` is the action of reading x then y.
    """
    ident = tuple(range(d.states))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for t in frontier:
            for row in d.transitions:
                u = _compose(t, row)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    elems = (ident,) + tuple(sorted(seen - {ident}))
    idx = {t: i for i, t in enumerate(elems)}
    mul = [[idx[_compose(t, u)] for u in elems] for t in elems]
    m = FiniteAlgebra(f"T({d.name})", len(elems), Signature((("mul", 2),), ("e",)),
                      {"mul": mul}, {"e": 0})
    letters = {a: idx[row] for a, row in zip(d.alphabet, d.transitions)}
    return TransitionMonoid(m, elems, letters)


def accepting_subset(d: DFA, tm: TransitionMonoid | None = None) -> tuple[int, ...]:
    """Transformations sending the start state into a final state (possibly empty)."""
    tm = tm or transition_monoid(d)
    return tuple(i for i, t in enumerate(tm.elements) if t[d.start] in d.finals)


def syntactic_monoid(d: DFA) -> FiniteAlgebra:
    """Quotient of the transition monoid by the syntactic congruence of the accepting subset."""
    tm = transition_monoid(d)
    w = accepting_subset(d, tm)
    if not w:
        raise EmptyLanguageError(f"{d.name} accepts no word: empty accepting subset")
    theta = syntactic_congruence(tm.monoid, w)
    q, _ = quotient_algebra(tm.monoid, theta, name=f"Synt({d.name})")
    return q


def minimize_dfa(d: DFA) -> DFA:
    """Drop unreachable states, then merge equivalent ones by Moore refinement.

    States of the result are numbered by first appearance in the reachable list.
    """
    reach = d.reachable()
    pos = {s: i for i, s in enumerate(reach)}
    rows = [[pos[row[s]] for s in reach] for row in d.transitions]
    labels = Partition([1 if s in d.finals else 0 for s in reach]).labels
    while True:
        key = [(labels[i],) + tuple(labels[row[i]] for row in rows) for i in range(len(reach))]
        new = Partition(_ids(key)).labels
        if max(new) == max(labels):
            break
        labels = new
    k = max(labels) + 1
    rep = [labels.index(c) for c in range(k)]
    trans = [[labels[row[rep[c]]] for c in range(k)] for row in rows]
    finals = {labels[pos[s]] for s in reach if s in d.finals}
    return DFA(f"min({d.name})", k, d.alphabet, trans, labels[pos[d.start]], finals)


def _ids(keys):
    seen: dict = {}
    return [seen.setdefault(k, len(seen)) for k in keys]


# .dfa format -----------------------------------------------------------------

def parse_dfa(text: str, source: str | None = None) -> DFA:
    """Parse one ``.dfa`` block.

    ::

        dfa <name>
        states <q>
        alphabet <symbols>
        start <s>
        final <list>
        trans <symbol> <q integers>
        end

    Every directive sits on its own line; ``final`` may list no states.
    """
    name = None
    q = start = None
    alphabet: list[str] = []
    finals: list[int] = []
    trans: dict[str, list[int]] = {}
    ended = False
    begin = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = line.split("#", 1)[0].split()
        if not toks:
            continue
        if ended:
            raise ParseError("trailing input after 'end'", lineno, source)
        kw, args = toks[0], toks[1:]
        try:
            if kw == "dfa":
                name, begin = (args[0] if args else "dfa"), lineno
            elif name is None:
                raise ParseError(f"expected 'dfa', got {kw!r}", lineno, source)
            elif kw == "states":
                q = int(args[0])
            elif kw == "alphabet":
                alphabet = list(args)
            elif kw == "start":
                start = int(args[0])
            elif kw == "final":
                finals = [int(x) for x in args]
            elif kw == "trans":
                if not args or args[0] not in alphabet:
                    raise ParseError(f"transition for unknown symbol {args[:1]}", lineno, source)
                if q is None:
                    raise ParseError("'trans' before 'states'", lineno, source)
                vec = [int(x) for x in args[1:]]
                if len(vec) != q:
                    raise ParseError(f"transition vector has {len(vec)} entries, expected {q}",
                                     lineno, source)
                trans[args[0]] = vec
            elif kw == "end":
                ended = True
            else:
                raise ParseError(f"unknown keyword {kw!r}", lineno, source)
        except (ValueError, IndexError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed {kw!r} line", lineno, source) from None
    if name is None or not ended:
        raise ParseError("missing 'dfa' header or 'end'", begin, source)
    if q is None or start is None:
        raise ParseError("missing 'states' or 'start'", begin, source)
    missing = [a for a in alphabet if a not in trans]
    if missing:
        raise ParseError(f"no transitions for symbols {missing}", begin, source)
    try:
        return DFA(name, q, tuple(alphabet), tuple(tuple(trans[a]) for a in alphabet),
                   start, frozenset(finals))
    except PreconditionError as exc:
        raise ParseError(str(exc), begin, source) from None


def load_dfa(path: str | Path) -> DFA:
    path = Path(path)
    return parse_dfa(path.read_text(encoding="utf-8"), str(path))


def format_dfa(d: DFA) -> str:
    lines = [f"dfa {d.name}", f"states {d.states}", "alphabet " + " ".join(d.alphabet),
             f"start {d.start}", "final " + " ".join(map(str, sorted(d.finals)))]
    for a, row in zip(d.alphabet, d.transitions):
        lines.append(f"trans {a} " + " ".join(map(str, row)))
    lines.append("end")
    return "\n".join(lines) + "\n"
