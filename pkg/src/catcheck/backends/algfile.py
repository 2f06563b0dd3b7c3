"""Plain-text exchange format for individual algebras.

One entry per block, whitespace separated, `#` starts a comment:

    group <name> order <n>        followed by n rows of the table,
                                  row-major, 0-indexed, element 0 = unit
    monoid <name> order <n>       same layout, no inverses required
    pointedset <name> size <n> basepoint 0
    grouppair <name> group <ref> subgroup <e1 e2 ...>

A grouppair's <ref> names a group defined earlier in the same file.
Round-trips are bit-exact: parse(print(entries)) == entries.
"""
from __future__ import annotations

from . import tables as tb
from .theories import GroupPairBackend, Pair

KINDS = ("group", "monoid", "pointedset", "grouppair")


class ParseError(ValueError):
    def __init__(self, line_no: int, msg: str):
        super().__init__(f"line {line_no}: {msg}")
        self.line_no = line_no


def _lines(text: str):
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield ln, line.split()


def _validate_table(ln, name, table, group: bool):
    if not tb.has_unit_zero(table) or not tb.is_associative(table):
        raise ParseError(ln, f"{name}: not a {'group' if group else 'monoid'} "
                             "table (unit or associativity violated)")
    if group and tb.inverses(table) is None:
        raise ParseError(ln, f"{name}: table has no inverses")


def parse_algebras(text: str) -> list[tuple[str, str, object]]:
    """All (kind, name, object) entries, in file order."""
    out: list[tuple[str, str, object]] = []
    groups: dict[str, tuple] = {}
    rows_wanted = 0
    rows: list[tuple] = []
    pending = None          # (line_no, kind, name, n)
    for ln, toks in _lines(text):
        if rows_wanted:
            if len(toks) != rows_wanted:
                raise ParseError(ln, f"expected {rows_wanted} entries in "
                                     f"table row, got {len(toks)}")
            try:
                row = tuple(int(t) for t in toks)
            except ValueError:
                raise ParseError(ln, "table entries must be integers")
            if any(not 0 <= x < rows_wanted for x in row):
                raise ParseError(ln, f"table entry out of range 0..{rows_wanted - 1}")
            rows.append(row)
            if len(rows) == rows_wanted:
                pln, kind, name, _ = pending
                table = tuple(rows)
                _validate_table(pln, name, table, kind == "group")
                if kind == "group":
                    groups[name] = table
                out.append((kind, name, table))
                rows_wanted, rows, pending = 0, [], None
            continue
        head = toks[0].lower()
        if head in ("group", "monoid"):
            if len(toks) != 4 or toks[2].lower() != "order":
                raise ParseError(ln, f"expected `{head} <name> order <n>`")
            n = _positive_int(ln, toks[3])
            pending = (ln, head, toks[1], n)
            rows_wanted = n
            if n == 0:
                raise ParseError(ln, "order must be at least 1")
        elif head == "pointedset":
            if (len(toks) != 6 or toks[2].lower() != "size"
                    or toks[4].lower() != "basepoint"):
                raise ParseError(
                    ln, "expected `pointedset <name> size <n> basepoint 0`")
            n = _positive_int(ln, toks[3])
            if toks[5] != "0":
                raise ParseError(ln, "basepoint must be element 0")
            out.append(("pointedset", toks[1], n))
        elif head == "grouppair":
            if len(toks) < 5 or toks[2].lower() != "group" \
                    or toks[4].lower() != "subgroup":
                raise ParseError(
                    ln, "expected `grouppair <name> group <ref> "
                        "subgroup <elements>`")
            ref = toks[3]
            if ref not in groups:
                raise ParseError(ln, f"unknown group reference `{ref}`")
            try:
                marked = frozenset(int(t) for t in toks[5:])
            except ValueError:
                raise ParseError(ln, "subgroup elements must be integers")
            pair = Pair(groups[ref], marked)
            try:
                GroupPairBackend().validate(pair)
            except ValueError as exc:
                raise ParseError(ln, f"{toks[1]}: {exc}")
            out.append(("grouppair", toks[1], pair))
        else:
            raise ParseError(ln, f"unknown entry kind `{toks[0]}`")
    if rows_wanted:
        raise ParseError(pending[0], f"table for {pending[2]} is incomplete")
    return out


def _positive_int(ln, tok):
    try:
        n = int(tok)
    except ValueError:
        raise ParseError(ln, f"expected an integer, got `{tok}`")
    if n < 1:
        raise ParseError(ln, "size must be at least 1")
    return n


def print_algebras(entries) -> str:
    """Inverse of parse_algebras.  Group pairs must follow an entry that
    defines their underlying group; callers pass the group explicitly."""
    blocks = []
    group_names: dict[tuple, str] = {}
    for kind, name, obj in entries:
        if kind in ("group", "monoid"):
            lines = [f"{kind} {name} order {len(obj)}"]
            lines.extend(" ".join(str(x) for x in row) for row in obj)
            blocks.append("\n".join(lines))
            if kind == "group":
                group_names[obj] = name
        elif kind == "pointedset":
            blocks.append(f"pointedset {name} size {obj} basepoint 0")
        elif kind == "grouppair":
            ref = group_names.get(obj.table)
            if ref is None:
                ref = f"{name}.G"
                group_names[obj.table] = ref
                lines = [f"group {ref} order {len(obj.table)}"]
                lines.extend(" ".join(str(x) for x in row)
                             for row in obj.table)
                blocks.append("\n".join(lines))
            elems = " ".join(str(x) for x in sorted(obj.marked))
            blocks.append(f"grouppair {name} group {ref} subgroup {elems}")
        else:
            raise ValueError(f"unknown algebra kind `{kind}`")
    return "\n".join(blocks) + "\n"
