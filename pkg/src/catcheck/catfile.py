"""Plain-text exchange format for composition tables.

Layout, in order, whitespace separated, `#` starts a comment:

    category <label>            (optional header)
    objects:
      <object>                  one per line
    morphisms:
      <name> <dom> <cod>
    identities:
      <object> <morphism>
    composition:
      <g> <f> <gf>              meaning g∘f = gf

Composites with an identity on either side may be omitted; the loader
fills them in from the identity laws.  Everything else must be explicit,
and the loaded table is validated against all category invariants.
Errors carry the 1-based line number of the offending entry.
"""
from __future__ import annotations

from .fincat import CategoryError, FinCategory

SECTIONS = ("objects:", "morphisms:", "identities:", "composition:")


class ParseError(ValueError):
    def __init__(self, line_no: int, msg: str):
        super().__init__(f"line {line_no}: {msg}")
        self.line_no = line_no


def _tokens(text: str):
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield ln, line.split()


def parse_category(text: str) -> FinCategory:
    label = ""
    objects: list[str] = []
    mor_rows: list[tuple[int, str, str, str]] = []
    ident_rows: list[tuple[int, str, str]] = []
    comp_rows: list[tuple[int, str, str, str]] = []
    section = None
    for ln, toks in _tokens(text):
        head = toks[0].lower()
        if head == "category" and section is None:
            label = " ".join(toks[1:])
            continue
        if head in SECTIONS:
            section = head
            toks = toks[1:]
            if not toks:
                continue
        if section == "objects:":
            objects.extend(toks)
        elif section == "morphisms:":
            if len(toks) != 3:
                raise ParseError(ln, "expected: <name> <dom> <cod>")
            mor_rows.append((ln, *toks))
        elif section == "identities:":
            if len(toks) != 2:
                raise ParseError(ln, "expected: <object> <morphism>")
            ident_rows.append((ln, *toks))
        elif section == "composition:":
            if len(toks) != 3:
                raise ParseError(ln, "expected: <g> <f> <gf>")
            comp_rows.append((ln, *toks))
        else:
            raise ParseError(ln, f"content before any section header: {' '.join(toks)}")

    if len(set(objects)) != len(objects):
        raise ParseError(0, "duplicate object")
    obj_set = set(objects)
    names, mors = [], []
    name_index: dict[str, int] = {}
    for ln, name, dom, cod in mor_rows:
        if name in name_index:
            raise ParseError(ln, f"duplicate morphism name {name}")
        if dom not in obj_set:
            raise ParseError(ln, f"unknown domain object {dom}")
        if cod not in obj_set:
            raise ParseError(ln, f"unknown codomain object {cod}")
        name_index[name] = len(names)
        names.append(name)
        mors.append((dom, cod))

    identities: dict[str, int] = {}
    for ln, obj, mname in ident_rows:
        if obj not in obj_set:
            raise ParseError(ln, f"unknown object {obj}")
        if mname not in name_index:
            raise ParseError(ln, f"unknown morphism {mname}")
        if obj in identities:
            raise ParseError(ln, f"object {obj} has two identities")
        m = name_index[mname]
        if mors[m] != (obj, obj):
            raise ParseError(ln, f"{mname} is not an endomorphism of {obj}")
        identities[obj] = m
    for obj in objects:
        if obj not in identities:
            raise ParseError(0, f"object {obj} has no identity")

    comp: dict[tuple[int, int], int] = {}
    for ln, g, f, gf in comp_rows:
        for t in (g, f, gf):
            if t not in name_index:
                raise ParseError(ln, f"unknown morphism {t}")
        gi, fi, ci = name_index[g], name_index[f], name_index[gf]
        if mors[fi][1] != mors[gi][0]:
            raise ParseError(ln, f"{g} and {f} are not composable")
        if (gi, fi) in comp and comp[(gi, fi)] != ci:
            raise ParseError(ln, f"conflicting composite for {g} {f}")
        comp[(gi, fi)] = ci

    # fill composites that the identity laws force
    for i, (dom, cod) in enumerate(mors):
        for pair, val in (((i, identities[dom]), i), ((identities[cod], i), i)):
            if pair in comp:
                if comp[pair] != val:
                    g, f = pair
                    raise ParseError(
                        0, f"identity law violated on {names[g]} {names[f]}")
            else:
                comp[pair] = val

    try:
        return FinCategory(objects, mors, identities, comp,
                           names=names, label=label)
    except CategoryError as exc:
        raise ParseError(0, str(exc)) from exc


def load_category(path) -> FinCategory:
    with open(path, encoding="utf-8") as fh:
        return parse_category(fh.read())


def print_category(cat: FinCategory) -> str:
    out = []
    if cat.label:
        out.append(f"category {cat.label}")
    out.append("objects:")
    out.extend(f"  {x}" for x in cat.objects)
    out.append("morphisms:")
    out.extend(f"  {cat.names[i]} {cat.doms[i]} {cat.cods[i]}"
               for i in range(cat.n_mors))
    out.append("identities:")
    out.extend(f"  {x} {cat.names[cat.identities[x]]}" for x in cat.objects)
    out.append("composition:")
    for (g, f), h in sorted(cat.comp.items()):
        if cat.is_identity(g) or cat.is_identity(f):
            continue
        out.append(f"  {cat.names[g]} {cat.names[f]} {cat.names[h]}")
    return "\n".join(out) + "\n"


def save_category(cat: FinCategory, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(print_category(cat))
