"""Cayley-table algebra shared by the group, monoid and pair backends.

A table is a tuple of row tuples over elements 0..n-1 with 0 the unit.
All enumeration here is exhaustive and deterministic; iso classification
uses an invariant fingerprint as a cheap filter before explicit
isomorphism search.
"""
from __future__ import annotations

import functools
import itertools


# -- basic predicates ---------------------------------------------------------


def is_associative(t) -> bool:
    n = len(t)
    for a in range(n):
        ta = t[a]
        for b in range(n):
            tab = t[ta[b]]
            tb = t[b]
            for c in range(n):
                if tab[c] != ta[tb[c]]:
                    return False
    return True


def is_commutative(t) -> bool:
    n = len(t)
    return all(t[a][b] == t[b][a] for a in range(n) for b in range(a))


def has_unit_zero(t) -> bool:
    n = len(t)
    return all(t[0][j] == j and t[j][0] == j for j in range(n))


def inverses(t):
    """inverse list for a group table, or None if some element has none."""
    n = len(t)
    inv = [None] * n
    for a in range(n):
        for b in range(n):
            if t[a][b] == 0 and t[b][a] == 0:
                inv[a] = b
                break
        if inv[a] is None:
            return None
    return inv


def element_order(t, x) -> int:
    # meaningful for groups only; loops forever on non-torsion tables,
    # which cannot occur in a finite group
    k, y = 1, x
    while y != 0:
        y = t[y][x]
        k += 1
    return k


def order_profile(t) -> tuple:
    return tuple(sorted(element_order(t, x) for x in range(len(t))))


def center(t) -> frozenset:
    n = len(t)
    return frozenset(a for a in range(n)
                     if all(t[a][b] == t[b][a] for b in range(n)))


def closure(t, seed) -> frozenset:
    """Smallest subset containing seed and the unit, closed under the
    operation.  For a finite group table this is the generated subgroup."""
    cur = set(seed) | {0}
    frontier = list(cur)
    while frontier:
        nxt = []
        for a in list(cur):
            for b in frontier:
                for c in (t[a][b], t[b][a]):
                    if c not in cur:
                        cur.add(c)
                        nxt.append(c)
        frontier = nxt
    return frozenset(cur)


def derived_subgroup(t) -> frozenset:
    inv = inverses(t)
    n = len(t)
    comms = {t[t[a][b]][t[inv[a]][inv[b]]] for a in range(n) for b in range(n)}
    return closure(t, comms)


def normal_closure(t, seed) -> frozenset:
    inv = inverses(t)
    n = len(t)
    cur = set(closure(t, seed))
    changed = True
    while changed:
        changed = False
        for x in list(cur):
            for g in range(n):
                y = t[t[g][x]][inv[g]]
                if y not in cur:
                    cur.add(y)
                    changed = True
        if changed:
            cur = set(closure(t, cur))
    return frozenset(cur)


def subgroups(t) -> list[frozenset]:
    """All subgroups, ascending by (size, sorted elements)."""
    n = len(t)
    found = {closure(t, ())}
    frontier = [closure(t, ())]
    while frontier:
        nxt = []
        for h in frontier:
            for x in range(n):
                if x in h:
                    continue
                h2 = closure(t, h | {x})
                if h2 not in found:
                    found.add(h2)
                    nxt.append(h2)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


# -- relabelings --------------------------------------------------------------


def sub_table(t, elems):
    """Table of a closed subset (must contain 0), relabelled to 0..k-1 in
    ascending element order; returns (table, old -> new map)."""
    elems = sorted(elems)
    idx = {e: i for i, e in enumerate(elems)}
    tbl = tuple(tuple(idx[t[a][b]] for b in elems) for a in elems)
    return tbl, idx


def product_table(a, b):
    """Direct product; element (i, j) gets index i*|b| + j."""
    na, nb = len(a), len(b)
    tbl = tuple(tuple(a[i][k] * nb + b[j][l]
                      for k in range(na) for l in range(nb))
                for i in range(na) for j in range(nb))
    return tbl


def quotient_by_partition(t, classes):
    """Table on congruence classes; class of 0 must come first.
    Returns (table, projection map)."""
    classes = sorted((sorted(c) for c in classes), key=lambda c: c[0])
    proj = {}
    for ci, cls in enumerate(classes):
        for x in cls:
            proj[x] = ci
    tbl = tuple(tuple(proj[t[cls_a[0]][cls_b[0]]] for cls_b in classes)
                for cls_a in classes)
    # congruence well-definedness: every representative pair must agree
    for ca, cls_a in enumerate(classes):
        for cb, cls_b in enumerate(classes):
            want = tbl[ca][cb]
            for x in cls_a:
                for y in cls_b:
                    if proj[t[x][y]] != want:
                        raise ValueError("partition is not a congruence")
    return tbl, tuple(proj[x] for x in range(len(t)))


def group_quotient(t, normal):
    cosets = {frozenset(t[x][m] for m in normal) for x in range(len(t))}
    return quotient_by_partition(t, cosets)


def congruence_closure(t, pairs):
    """Smallest monoid congruence containing the given pairs, as a
    partition (list of frozensets)."""
    n = len(t)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        if ry < rx:
            rx, ry = ry, rx
        parent[ry] = rx
        return True

    for x, y in pairs:
        union(x, y)
    changed = True
    while changed:
        changed = False
        for x in range(n):
            for y in range(x + 1, n):
                if find(x) != find(y):
                    continue
                for c in range(n):
                    if union(t[c][x], t[c][y]):
                        changed = True
                    if union(t[x][c], t[y][c]):
                        changed = True
    groups: dict[int, set] = {}
    for x in range(n):
        groups.setdefault(find(x), set()).add(x)
    return [frozenset(v) for v in groups.values()]


# -- enumeration --------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def group_tables(n) -> tuple:
    """Every group table on 0..n-1 with unit 0 (all labelings).

    Rows are left-multiplication permutations with row(a·b) = row(a)∘row(b),
    so we branch only on rows that are not generated by the rows already
    placed and derive the rest by closure; associativity is then automatic.
    """
    if n == 1:
        return (((0,),),)
    rows: list = [None] * n
    rows[0] = tuple(range(n))
    col_used = [1 << j for j in range(n)]
    out = []

    def set_row(r, perm):
        touched = []
        for j in range(n):
            v = perm[j]
            if (col_used[j] >> v) & 1:
                for jj in touched:
                    col_used[jj] &= ~(1 << perm[jj])
                return None
            col_used[j] |= 1 << v
            touched.append(j)
        rows[r] = perm
        return touched

    def unset_row(r, touched):
        perm = rows[r]
        for j in touched:
            col_used[j] &= ~(1 << perm[j])
        rows[r] = None

    def derive():
        trail = []
        changed = True
        while changed:
            changed = False
            known = [i for i in range(1, n) if rows[i] is not None]
            for a in known:
                ra = rows[a]
                for b in known:
                    rb = rows[b]
                    c = ra[b]
                    comp = tuple(ra[rb[j]] for j in range(n))
                    if rows[c] is None:
                        t = set_row(c, comp)
                        if t is None:
                            return False, trail
                        trail.append((c, t))
                        changed = True
                    elif rows[c] != comp:
                        return False, trail
        return True, trail

    def undo(trail):
        for r, t in reversed(trail):
            unset_row(r, t)

    def row_candidates(r):
        # permutations p with p(0) = r respecting the column masks
        if (col_used[0] >> r) & 1:
            return
        perm = [r] + [None] * (n - 1)

        def rec(j, used):
            if j == n:
                yield tuple(perm)
                return
            free = ~(used | col_used[j])
            for v in range(n):
                if (free >> v) & 1:
                    perm[j] = v
                    yield from rec(j + 1, used | (1 << v))

        yield from rec(1, 1 << r)

    def rec_rows():
        r = next((i for i in range(1, n) if rows[i] is None), None)
        if r is None:
            out.append(tuple(rows))
            return
        for perm in row_candidates(r):
            t = set_row(r, perm)
            if t is None:
                continue
            ok, trail = derive()
            if ok:
                rec_rows()
            undo(trail)
            unset_row(r, t)

    rec_rows()
    return tuple(out)


@functools.lru_cache(maxsize=None)
def monoid_tables(n) -> tuple:
    """Every monoid table on 0..n-1 with unit 0, by cell backtracking with
    partial associativity pruning."""
    if n == 1:
        return (((0,),),)
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    t = [[None] * n for _ in range(n)]
    for j in range(n):
        t[0][j] = j
        t[j][0] = j
    out = []

    def consistent():
        # check every associativity triple all of whose products are known
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                if ab is None:
                    continue
                for c in range(n):
                    bc = t[b][c]
                    if bc is None:
                        continue
                    left = t[ab][c]
                    right = t[a][bc]
                    if left is not None and right is not None and left != right:
                        return False
        return True

    def rec(k):
        if k == len(cells):
            out.append(tuple(tuple(r) for r in t))
            return
        i, j = cells[k]
        for v in range(n):
            t[i][j] = v
            if consistent():
                rec(k + 1)
        t[i][j] = None

    rec(0)
    return tuple(out)


# -- isomorphism --------------------------------------------------------------


def generating_sequence(t) -> list[int]:
    n = len(t)
    gens: list[int] = []
    cur = closure(t, ())
    while len(cur) < n:
        x = min(i for i in range(n) if i not in cur)
        gens.append(x)
        cur = closure(t, set(cur) | {x})
    return gens


def _bfs_words(t, gens):
    """Express every element as parent·gen; returns list of (elem, parent,
    gen index) in derivation order, or None if gens do not generate."""
    n = len(t)
    seen = {0}
    order = []
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for gi, g in enumerate(gens):
                y = t[x][g]
                if y not in seen:
                    seen.add(y)
                    order.append((y, x, gi))
                    nxt.append(y)
        frontier = nxt
    if len(seen) != n:
        return None
    return order


def hom_maps(a, b, group: bool) -> list[tuple]:
    """All unit-preserving multiplicative maps a -> b, as image tuples,
    in lexicographic order.  Images are branched on a generating sequence
    and extended by the product words; the full law is verified at the end."""
    na, nb = len(a), len(b)
    gens = generating_sequence(a)
    if not gens:
        return [tuple([0] * na)] if na == 1 else []
    words = _bfs_words(a, gens)
    cand_by_gen = []
    for g in gens:
        if group:
            og = element_order(a, g)
            cand = [x for x in range(nb) if og % element_order(b, x) == 0]
        else:
            cand = list(range(nb))
        cand_by_gen.append(cand)
    out = []
    for imgs in itertools.product(*cand_by_gen):
        f = [None] * na
        f[0] = 0
        for elem, parent, gi in words:
            f[elem] = b[f[parent]][imgs[gi]]
        ft = tuple(f)
        ok = True
        for x in range(na):
            for y in range(na):
                if b[ft[x]][ft[y]] != ft[a[x][y]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(ft)
    return sorted(set(out))


def all_isos(a, b, group: bool):
    if len(a) != len(b):
        return []
    n = len(a)
    return [f for f in hom_maps(a, b, group) if len(set(f)) == n]


def find_iso(a, b, group: bool):
    """First isomorphism a -> b in candidate order, or None.  Early-exits,
    so it is much cheaper than all_isos when tables are isomorphic."""
    if len(a) != len(b):
        return None
    na = len(a)
    if na == 1:
        return (0,)
    gens = generating_sequence(a)
    words = _bfs_words(a, gens)
    cand_by_gen = []
    for g in gens:
        if group:
            og = element_order(a, g)
            cand = [x for x in range(na) if element_order(b, x) == og]
        else:
            cand = list(range(na))
        cand_by_gen.append(cand)
    for imgs in itertools.product(*cand_by_gen):
        f = [None] * na
        f[0] = 0
        for elem, parent, gi in words:
            f[elem] = b[f[parent]][imgs[gi]]
        if len(set(f)) != na:
            continue
        ok = True
        for x in range(na):
            fx = f[x]
            for y in range(na):
                if b[fx][f[y]] != f[a[x][y]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return tuple(f)
    return None


def fingerprint(t, group: bool) -> tuple:
    n = len(t)
    if group:
        return (n, order_profile(t), is_commutative(t), len(center(t)))
    per_elem = tuple(sorted(
        (t[x][x] == x,
         len({t[x][y] for y in range(n)}),
         len({t[y][x] for y in range(n)}))
        for x in range(n)))
    return (n, is_commutative(t), per_elem)


def iso_classes(tables, group: bool) -> list:
    """Deterministic representatives (first-seen) of the iso classes."""
    by_fp: dict[tuple, list] = {}
    reps = []
    for t in tables:
        fp = fingerprint(t, group)
        bucket = by_fp.setdefault(fp, [])
        if any(find_iso(t, r, group) for r in bucket):
            continue
        bucket.append(t)
        reps.append(t)
    return reps


# -- recognition --------------------------------------------------------------


def abelian_type(t) -> tuple:
    """Invariant factors (largest first) of a commutative group table,
    recovered from the counts of elements of each prime-power order."""
    n = len(t)
    orders = [element_order(t, x) for x in range(n)]
    rest, primes = n, []
    for p in range(2, n + 1):
        if p * p > rest:
            break
        if rest % p == 0:
            primes.append(p)
            while rest % p == 0:
                rest //= p
    if rest > 1:
        primes.append(rest)
    per_prime = []
    for p in primes:
        # parts_ge[k] = number of cyclic factors of order >= p^k
        counts = []
        pk = 1
        while True:
            pk *= p
            counts.append(sum(1 for o in orders if pk % o == 0))
            if pk * p > n:
                break
        exps = [0]
        for c in counts:
            # c = p ** (sum of min(lambda_i, k)); recover the exponent
            e = 0
            while p ** e < c:
                e += 1
            exps.append(e)
        parts_ge = [exps[k] - exps[k - 1] for k in range(1, len(exps))]
        parts = []
        for k, ge in enumerate(parts_ge, start=1):
            nxt = parts_ge[k] if k < len(parts_ge) else 0
            parts.extend([p ** k] * (ge - nxt))
        per_prime.append(sorted(parts, reverse=True))
    width = max(len(ps) for ps in per_prime) if per_prime else 0
    factors = []
    for i in range(width):
        d = 1
        for ps in per_prime:
            if i < len(ps):
                d *= ps[i]
        factors.append(d)
    return tuple(factors)


def _p_part(m, p):
    out = 1
    while m % p == 0:
        out *= p
        m //= p
    return out


def group_label(t) -> str:
    n = len(t)
    if n == 1:
        return "Z1"
    prof = order_profile(t)
    if is_commutative(t):
        if prof[-1] == n:
            return f"Z{n}"
        if n == 4:
            return "V4"
        if n == 8:
            return "Z4xZ2" if 4 in prof else "Z2^3"
        return "x".join(f"Z{d}" for d in abelian_type(t))
    if n == 6:
        return "S3"
    if n == 8:
        return "Q8" if prof.count(2) == 1 else "D4"
    return f"G{n}o{prof[-1]}"
