"""Reading and writing the ``.alg`` text format.

::

    algebra <name>
    size <n>
    op <name> <arity>
    <n^arity integers, row-major, last index fastest>
    const <name> <element>
    end

``#`` starts a comment. Several algebra blocks may share one file.
"""
from __future__ import annotations

from pathlib import Path

from ..errors import ParseError, PreconditionError
from .algebra import DEFAULT_MAX_ARITY, FiniteAlgebra, Signature


def _tokens(text: str):
    """Yield (line_number, token) pairs with comments stripped."""
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        for tok in line.split():
            yield lineno, tok


def _int(tok: str, lineno: int, what: str, source) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected integer for {what}, got {tok!r}", lineno, source) from None


def parse_algebras(text: str, source: str | None = None,
                   max_arity: int = DEFAULT_MAX_ARITY) -> list[FiniteAlgebra]:
    toks = list(_tokens(text))
    pos = 0
    out = []

    def next_tok(what):
        nonlocal pos
        if pos >= len(toks):
            last = toks[-1][0] if toks else 1
            raise ParseError(f"unexpected end of input, expected {what}", last, source)
        tok = toks[pos]
        pos += 1
        return tok

    while pos < len(toks):
        lineno, kw = next_tok("'algebra'")
        if kw != "algebra":
            raise ParseError(f"expected 'algebra', got {kw!r}", lineno, source)
        start_line = lineno
        _, name = next_tok("algebra name")
        size = None
        ops: list[tuple[str, int]] = []
        tables: dict[str, list[int]] = {}
        consts: dict[str, int] = {}
        seen_names: set[str] = set()
        while True:
            lineno, kw = next_tok("'end'")
            if kw == "end":
                break
            if kw == "size":
                ln, tok = next_tok("size")
                size = _int(tok, ln, "size", source)
                if size < 1:
                    raise ParseError("size must be >= 1", ln, source)
            elif kw == "op":
                if size is None:
                    raise ParseError("'op' before 'size'", lineno, source)
                _, op = next_tok("op name")
                ln, tok = next_tok("arity")
                arity = _int(tok, ln, "arity", source)
                if arity < 1:
                    raise ParseError(f"op {op!r}: arity must be >= 1 (use 'const')", ln, source)
                if arity > max_arity:
                    raise ParseError(f"op {op!r}: arity {arity} exceeds cap {max_arity}", ln, source)
                if op in seen_names:
                    raise ParseError(f"duplicate name {op!r}", lineno, source)
                seen_names.add(op)
                want = size ** arity
                entries = []
                while len(entries) < want:
                    if pos >= len(toks) or not _looks_int(toks[pos][1]):
                        ln = toks[pos][0] if pos < len(toks) else (toks[-1][0] if toks else lineno)
                        raise ParseError(
                            f"table length for op {op!r}: got {len(entries)} entries, "
                            f"expected {want}", ln, source)
                    ln, tok = next_tok("table entry")
                    v = int(tok)
                    if not 0 <= v < size:
                        raise ParseError(f"entry out of range in op {op!r}: {v} "
                                         f"(size {size})", ln, source)
                    entries.append(v)
                if pos < len(toks) and _looks_int(toks[pos][1]):
                    raise ParseError(f"table length for op {op!r}: more than {want} entries",
                                     toks[pos][0], source)
                ops.append((op, arity))
                tables[op] = entries
            elif kw == "const":
                if size is None:
                    raise ParseError("'const' before 'size'", lineno, source)
                _, c = next_tok("const name")
                ln, tok = next_tok("const value")
                v = _int(tok, ln, "const value", source)
                if not 0 <= v < size:
                    raise ParseError(f"entry out of range: const {c!r}={v}", ln, source)
                if c in seen_names:
                    raise ParseError(f"duplicate name {c!r}", lineno, source)
                seen_names.add(c)
                consts[c] = v
            else:
                raise ParseError(f"unknown keyword {kw!r}", lineno, source)
        if size is None:
            raise ParseError(f"algebra {name!r} has no size", start_line, source)
        try:
            sig = Signature(tuple(ops), tuple(consts))
            out.append(FiniteAlgebra(name, size, sig, tables, consts, max_arity=max_arity))
        except PreconditionError as exc:
            raise ParseError(str(exc), start_line, source) from None
    return out


def _looks_int(tok: str) -> bool:
    return tok.lstrip("-").isdigit()


def parse_algebra(text: str, source: str | None = None,
                  max_arity: int = DEFAULT_MAX_ARITY) -> FiniteAlgebra:
    algs = parse_algebras(text, source, max_arity)
    if len(algs) != 1:
        raise ParseError(f"expected exactly one algebra, found {len(algs)}", None, source)
    return algs[0]


# the operation is called validate_algebra in the design notes
validate_algebra = parse_algebra


def load_algebra(path: str | Path, max_arity: int = DEFAULT_MAX_ARITY) -> FiniteAlgebra:
    path = Path(path)
    return parse_algebra(path.read_text(encoding="utf-8"), str(path), max_arity)


def format_algebra(a: FiniteAlgebra) -> str:
    lines = [f"algebra {a.name}", f"size {a.size}"]
    n = a.size
    for op, arity in a.signature.ops:
        lines.append(f"op {op} {arity}")
        flat = a.tables[op].reshape(-1)
        width = n if arity >= 1 else 1
        for i in range(0, flat.size, width):
            lines.append(" ".join(str(int(v)) for v in flat[i:i + width]))
    for c in a.signature.consts:
        lines.append(f"const {c} {a.consts[c]}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def save_algebra(a: FiniteAlgebra, path: str | Path) -> None:
    Path(path).write_text(format_algebra(a), encoding="utf-8")
