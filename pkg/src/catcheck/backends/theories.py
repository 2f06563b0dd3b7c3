"""The concrete finite-algebra backends: pointed sets, groups, abelian
groups, monoids, and pairs (group, marked central subgroup).

A backend knows how to enumerate its objects up to a size bound (one
canonical representative per isomorphism class), enumerate complete
hom-sets, and build the classical constructions (kernels, quotients,
products, pullbacks, images) natively on carriers.  Native results are
raw objects in backend encoding; matching them back into a materialized
window is the view's job, not ours.

Objects are immutable and hashable.  Element 0 is always the unit or
basepoint.
"""
from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass

from . import tables as tb


@dataclass(frozen=True)
class Hom:
    src: object
    dst: object
    mapping: tuple

    def __call__(self, x: int) -> int:
        return self.mapping[x]


def compose(g: Hom, f: Hom) -> Hom:
    if f.dst != g.src:
        raise ValueError("homs not composable")
    return Hom(f.src, g.dst, tuple(g.mapping[x] for x in f.mapping))


class Backend:
    """Shared plumbing; concrete theories fill in the abstract parts."""

    name = "abstract"

    def __init__(self):
        self._hom_cache: dict = {}

    # -- theory-specific ----------------------------------------------------

    def objects_up_to(self, bound: int) -> tuple:
        raise NotImplementedError

    def all_objects_up_to(self, bound: int) -> tuple:
        """Non-skeletal variant: every labeled object, isomorphic
        duplicates included."""
        raise NotImplementedError

    def size(self, obj) -> int:
        raise NotImplementedError

    def label(self, obj) -> str:
        raise NotImplementedError

    def _maps(self, a, b) -> list[tuple]:
        raise NotImplementedError

    def is_morphism(self, h: Hom) -> bool:
        raise NotImplementedError

    def find_iso_between(self, a, b):
        """Structure iso a -> b as a mapping tuple, or None."""
        raise NotImplementedError

    def validate(self, obj) -> None:
        """Raise ValueError when obj violates the theory's invariants."""
        raise NotImplementedError

    def native_kernel(self, f: Hom):
        raise NotImplementedError

    def native_cokernel(self, f: Hom):
        raise NotImplementedError

    def native_equalizer(self, f: Hom, g: Hom):
        raise NotImplementedError

    def native_coequalizer(self, f: Hom, g: Hom):
        raise NotImplementedError

    def native_product(self, a, b):
        raise NotImplementedError

    def native_coproduct(self, a, b):
        """(obj, inj0, inj1), or None when no finite coproduct exists."""
        raise NotImplementedError

    def native_pullback(self, f: Hom, g: Hom):
        raise NotImplementedError

    def native_image(self, f: Hom):
        raise NotImplementedError

    def subobject_generated(self, obj, subset) -> frozenset:
        raise NotImplementedError

    # -- generic ------------------------------------------------------------

    def homs(self, a, b) -> tuple[Hom, ...]:
        key = (a, b)
        if key not in self._hom_cache:
            self._hom_cache[key] = tuple(
                Hom(a, b, m) for m in sorted(self._maps(a, b)))
        return self._hom_cache[key]

    def identity(self, a) -> Hom:
        return Hom(a, a, tuple(range(self.size(a))))

    def zero(self):
        return self.objects_up_to(1)[0]

    def zero_hom(self, a, b) -> Hom:
        return Hom(a, b, tuple([0] * self.size(a)))

    def is_surjective(self, f: Hom) -> bool:
        return len(set(f.mapping)) == self.size(f.dst)

    def is_iso(self, f: Hom) -> bool:
        """Theory isomorphism: bijective with a structure-preserving
        inverse (the latter matters for pairs)."""
        n = self.size(f.src)
        if n != self.size(f.dst) or len(set(f.mapping)) != n:
            return False
        inv = [0] * n
        for x, y in enumerate(f.mapping):
            inv[y] = x
        return self.is_morphism(Hom(f.dst, f.src, tuple(inv)))

    def _induced_iso(self, proj: Hom, q: Hom) -> bool:
        """Does q factor through the quotient proj as u∘proj with u an
        isomorphism of the theory?  (Requires q constant on proj fibers.)"""
        u: list = [None] * self.size(proj.dst)
        for x, c in enumerate(proj.mapping):
            v = q.mapping[x]
            if u[c] is None:
                u[c] = v
            elif u[c] != v:
                return False
        if None in u:
            return False
        return self.is_iso(Hom(proj.dst, q.dst, tuple(u)))

    def native_is_cokernel(self, q: Hom) -> bool:
        """q is a cokernel iff it is the cokernel of its own kernel."""
        _, incl = self.native_kernel(q)
        _, proj = self.native_cokernel(incl)
        return self._induced_iso(proj, q)

    def native_is_regular_epi(self, q: Hom) -> bool:
        """q is regular iff it coequalizes its own kernel pair."""
        _, p0, p1 = self.native_pullback(q, q)
        _, c = self.native_coequalizer(p0, p1)
        return self._induced_iso(c, q)


# -- pointed sets --------------------------------------------------------------


class PointedSetBackend(Backend):
    """Finite pointed sets; an object is its size, basepoint is 0."""

    name = "finptset"

    def objects_up_to(self, bound):
        return tuple(range(1, bound + 1))

    def all_objects_up_to(self, bound):
        return self.objects_up_to(bound)

    def size(self, obj):
        return obj

    def label(self, obj):
        return f"P{obj}"

    def _maps(self, a, b):
        return [(0,) + rest
                for rest in itertools.product(range(b), repeat=a - 1)]

    def is_morphism(self, h):
        return (len(h.mapping) == h.src and h.mapping[0] == 0
                and all(0 <= y < h.dst for y in h.mapping))

    def find_iso_between(self, a, b):
        return tuple(range(a)) if a == b else None

    def validate(self, obj):
        if not (isinstance(obj, int) and obj >= 1):
            raise ValueError("pointed set must have size >= 1")

    def _sub(self, obj, elems):
        elems = sorted(elems)
        return len(elems), Hom(len(elems), obj, tuple(elems))

    def _quot(self, obj, classes):
        classes = sorted((sorted(c) for c in classes), key=lambda c: c[0])
        proj = {}
        for ci, cls in enumerate(classes):
            for x in cls:
                proj[x] = ci
        return len(classes), Hom(obj, len(classes),
                                 tuple(proj[x] for x in range(obj)))

    def native_kernel(self, f):
        return self._sub(f.src, [x for x in range(f.src) if f.mapping[x] == 0])

    def native_cokernel(self, f):
        collapsed = set(f.mapping) | {0}
        classes = [collapsed] + [{y} for y in range(f.dst) if y not in collapsed]
        return self._quot(f.dst, classes)

    def native_equalizer(self, f, g):
        return self._sub(f.src, [x for x in range(f.src)
                                 if f.mapping[x] == g.mapping[x]])

    def native_coequalizer(self, f, g):
        parent = list(range(f.dst))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for x in range(f.src):
            rx, ry = find(f.mapping[x]), find(g.mapping[x])
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
        cl: dict[int, set] = {}
        for y in range(f.dst):
            cl.setdefault(find(y), set()).add(y)
        return self._quot(f.dst, cl.values())

    def native_product(self, a, b):
        p = a * b
        proj0 = Hom(p, a, tuple(i // b for i in range(p)))
        proj1 = Hom(p, b, tuple(i % b for i in range(p)))
        return p, proj0, proj1

    def native_coproduct(self, a, b):
        # wedge: glue the two basepoints
        c = a + b - 1
        inj0 = Hom(a, c, tuple(range(a)))
        inj1 = Hom(b, c, (0,) + tuple(range(a, c)))
        return c, inj0, inj1

    def native_pullback(self, f, g):
        pairs = [(x, y) for x in range(f.src) for y in range(g.src)
                 if f.mapping[x] == g.mapping[y]]
        p = len(pairs)
        return (p, Hom(p, f.src, tuple(x for x, _ in pairs)),
                Hom(p, g.src, tuple(y for _, y in pairs)))

    def native_image(self, f):
        img = sorted(set(f.mapping))
        idx = {y: i for i, y in enumerate(img)}
        e = Hom(f.src, len(img), tuple(idx[y] for y in f.mapping))
        m = Hom(len(img), f.dst, tuple(img))
        return len(img), e, m

    def subobject_generated(self, obj, subset):
        return frozenset(subset) | {0}


# -- table-based theories (groups, monoids) ---------------------------------------


class TableBackend(Backend):
    """Common constructions for theories whose objects are Cayley tables:
    subobjects are closed subsets, products are componentwise tables."""

    group = True

    def size(self, obj):
        return len(obj)

    def _maps(self, a, b):
        return tb.hom_maps(a, b, self.group)

    def is_morphism(self, h):
        a, b, m = h.src, h.dst, h.mapping
        if len(m) != len(a) or m[0] != 0:
            return False
        n = len(a)
        return all(b[m[x]][m[y]] == m[a[x][y]]
                   for x in range(n) for y in range(n))

    def find_iso_between(self, a, b):
        return tb.find_iso(a, b, self.group)

    def _sub(self, t, elems):
        tbl, idx = tb.sub_table(t, elems)
        return tbl, Hom(tbl, t, tuple(sorted(elems)))

    def native_kernel(self, f):
        return self._sub(f.src, [x for x in range(len(f.src))
                                 if f.mapping[x] == 0])

    def native_equalizer(self, f, g):
        return self._sub(f.src, [x for x in range(len(f.src))
                                 if f.mapping[x] == g.mapping[x]])

    def native_product(self, a, b):
        p = tb.product_table(a, b)
        nb = len(b)
        proj0 = Hom(p, a, tuple(i // nb for i in range(len(p))))
        proj1 = Hom(p, b, tuple(i % nb for i in range(len(p))))
        return p, proj0, proj1

    def native_pullback(self, f, g):
        p = tb.product_table(f.src, g.src)
        nb = len(g.src)
        elems = [i for i in range(len(p))
                 if f.mapping[i // nb] == g.mapping[i % nb]]
        tbl, _ = tb.sub_table(p, elems)
        pr0 = Hom(tbl, f.src, tuple(i // nb for i in elems))
        pr1 = Hom(tbl, g.src, tuple(i % nb for i in elems))
        return tbl, pr0, pr1

    def native_image(self, f):
        img = sorted(set(f.mapping))
        tbl, idx = tb.sub_table(f.dst, img)
        e = Hom(f.src, tbl, tuple(idx[y] for y in f.mapping))
        m = Hom(tbl, f.dst, tuple(img))
        return tbl, e, m

    def subobject_generated(self, obj, subset):
        return tb.closure(obj, subset)


class GroupBackend(TableBackend):
    """Finite groups, enumerated exhaustively and classified up to iso."""

    name = "fingrp"
    abelian = False
    group = True

    def objects_up_to(self, bound):
        out = []
        for n in range(1, bound + 1):
            reps = tb.iso_classes(self._tables(n), True)
            out.extend(sorted(reps, key=self.label))
        return tuple(out)

    def all_objects_up_to(self, bound):
        out = []
        for n in range(1, bound + 1):
            out.extend(self._tables(n))
        return tuple(out)

    def _tables(self, n):
        ts = tb.group_tables(n)
        if self.abelian:
            ts = tuple(t for t in ts if tb.is_commutative(t))
        return ts

    def label(self, obj):
        return tb.group_label(obj)

    def validate(self, obj):
        if not tb.has_unit_zero(obj) or not tb.is_associative(obj):
            raise ValueError("not a monoid table")
        if tb.inverses(obj) is None:
            raise ValueError("not a group table")
        if self.abelian and not tb.is_commutative(obj):
            raise ValueError("not abelian")

    def native_cokernel(self, f):
        n = tb.normal_closure(f.dst, set(f.mapping))
        q, proj = tb.group_quotient(f.dst, n)
        return q, Hom(f.dst, q, proj)

    def native_coequalizer(self, f, g):
        t = f.dst
        inv = tb.inverses(t)
        diffs = {t[f.mapping[x]][inv[g.mapping[x]]] for x in range(len(f.src))}
        n = tb.normal_closure(t, diffs)
        q, proj = tb.group_quotient(t, n)
        return q, Hom(t, q, proj)

    def native_coproduct(self, a, b):
        # free products are infinite unless one factor is trivial
        if len(a) == 1:
            return b, self.zero_hom(a, b), self.identity(b)
        if len(b) == 1:
            return a, self.identity(a), self.zero_hom(b, a)
        return None


class AbGroupBackend(GroupBackend):
    name = "finab"
    abelian = True

    def native_coproduct(self, a, b):
        # binary direct sum with the canonical injections
        p = tb.product_table(a, b)
        nb = len(b)
        inj0 = Hom(a, p, tuple(i * nb for i in range(len(a))))
        inj1 = Hom(b, p, tuple(range(nb)))
        return p, inj0, inj1


class MonoidBackend(TableBackend):
    name = "finmon"
    group = False
    # full table enumeration is affordable up to this order; larger
    # carriers (escaped constructions) get fingerprint-hash labels
    MAX_INDEXED_ORDER = 4

    def __init__(self):
        super().__init__()
        self._reps_cache: dict[int, list] = {}

    def _reps(self, n):
        if n not in self._reps_cache:
            self._reps_cache[n] = tb.iso_classes(tb.monoid_tables(n), False)
        return self._reps_cache[n]

    def objects_up_to(self, bound):
        out = []
        for n in range(1, bound + 1):
            out.extend(self._reps(n))
        return tuple(out)

    def all_objects_up_to(self, bound):
        out = []
        for n in range(1, bound + 1):
            out.extend(tb.monoid_tables(n))
        return tuple(out)

    def label(self, obj):
        n = len(obj)
        if n <= self.MAX_INDEXED_ORDER:
            reps = self._reps(n)
            if obj in reps:
                return f"M{n}.{reps.index(obj) + 1}"
            for i, r in enumerate(reps):
                if tb.find_iso(obj, r, False):
                    return f"M{n}.{i + 1}"
        fp = hashlib.sha256(repr(tb.fingerprint(obj, False)).encode())
        return f"M{n}.x{fp.hexdigest()[:8]}"

    def validate(self, obj):
        if not tb.has_unit_zero(obj) or not tb.is_associative(obj):
            raise ValueError("not a monoid table")

    def native_cokernel(self, f):
        part = tb.congruence_closure(f.dst, [(y, 0) for y in set(f.mapping)])
        q, proj = tb.quotient_by_partition(f.dst, part)
        return q, Hom(f.dst, q, proj)

    def native_coequalizer(self, f, g):
        part = tb.congruence_closure(
            f.dst, [(f.mapping[x], g.mapping[x]) for x in range(len(f.src))])
        q, proj = tb.quotient_by_partition(f.dst, part)
        return q, Hom(f.dst, q, proj)

    def native_coproduct(self, a, b):
        if len(a) == 1:
            return b, self.zero_hom(a, b), self.identity(b)
        if len(b) == 1:
            return a, self.identity(a), self.zero_hom(b, a)
        return None


# -- pairs (group, marked subgroup between derived subgroup and center) ----------


@dataclass(frozen=True)
class Pair:
    table: tuple
    marked: frozenset


class GroupPairBackend(Backend):
    """Objects (G, A) with G' <= A <= Z(G); morphisms are group homs f
    with f(A) inside the target's marked subgroup."""

    name = "grouppair"

    def objects_up_to(self, bound):
        out = []
        for n in range(1, bound + 1):
            for t in sorted(tb.iso_classes(tb.group_tables(n), True),
                            key=tb.group_label):
                der = tb.derived_subgroup(t)
                cen = tb.center(t)
                if not der <= cen:
                    continue
                cands = [a for a in tb.subgroups(t) if der <= a <= cen]
                out.extend(Pair(t, a) for a in self._dedupe_marked(t, cands))
        return tuple(out)

    def all_objects_up_to(self, bound):
        out = []
        for n in range(1, bound + 1):
            for t in tb.group_tables(n):
                der = tb.derived_subgroup(t)
                cen = tb.center(t)
                if not der <= cen:
                    continue
                out.extend(Pair(t, a) for a in tb.subgroups(t)
                           if der <= a <= cen)
        return tuple(out)

    @staticmethod
    def _dedupe_marked(t, cands):
        """One marked subgroup per orbit of the automorphism group,
        keeping the least subset of each orbit."""
        autos = tb.all_isos(t, t, True)
        seen = set()
        keep = []
        for a in sorted(cands, key=lambda s: (len(s), sorted(s))):
            if a in seen:
                continue
            keep.append(a)
            for phi in autos:
                seen.add(frozenset(phi[x] for x in a))
        return keep

    def size(self, obj):
        return len(obj.table)

    def label(self, obj):
        elems = ".".join(str(x) for x in sorted(obj.marked))
        return f"({tb.group_label(obj.table)},{{{elems}}})"

    def _maps(self, a: Pair, b: Pair):
        return [m for m in tb.hom_maps(a.table, b.table, True)
                if all(m[x] in b.marked for x in a.marked)]

    def is_morphism(self, h):
        a, b, m = h.src.table, h.dst.table, h.mapping
        if len(m) != len(a) or m[0] != 0:
            return False
        n = len(a)
        if not all(b[m[x]][m[y]] == m[a[x][y]]
                   for x in range(n) for y in range(n)):
            return False
        return all(m[x] in h.dst.marked for x in h.src.marked)

    def find_iso_between(self, a: Pair, b: Pair):
        if len(a.table) != len(b.table) or len(a.marked) != len(b.marked):
            return None
        for phi in tb.all_isos(a.table, b.table, True):
            if frozenset(phi[x] for x in a.marked) == b.marked:
                return phi
        return None

    def validate(self, obj: Pair):
        t = obj.table
        if not tb.has_unit_zero(t) or not tb.is_associative(t) \
                or tb.inverses(t) is None:
            raise ValueError("not a group table")
        if tb.closure(t, obj.marked) != obj.marked:
            raise ValueError("marked subset is not a subgroup")
        if not tb.derived_subgroup(t) <= obj.marked <= tb.center(t):
            raise ValueError(
                "marked subgroup not between derived subgroup and center")

    def _pair_sub(self, p: Pair, elems):
        tbl, idx = tb.sub_table(p.table, elems)
        marked = frozenset(idx[x] for x in p.marked if x in set(elems))
        sub = Pair(tbl, marked)
        self.validate(sub)
        return sub, Hom(sub, p, tuple(sorted(elems)))

    def _pair_quot(self, p: Pair, normal):
        q, proj = tb.group_quotient(p.table, normal)
        quot = Pair(q, frozenset(proj[x] for x in p.marked))
        self.validate(quot)
        return quot, Hom(p, quot, proj)

    def native_kernel(self, f):
        ker = [x for x in range(len(f.src.table)) if f.mapping[x] == 0]
        return self._pair_sub(f.src, ker)

    def native_cokernel(self, f):
        n = tb.normal_closure(f.dst.table, set(f.mapping))
        return self._pair_quot(f.dst, n)

    def native_equalizer(self, f, g):
        elems = [x for x in range(len(f.src.table))
                 if f.mapping[x] == g.mapping[x]]
        return self._pair_sub(f.src, elems)

    def native_coequalizer(self, f, g):
        t = f.dst.table
        inv = tb.inverses(t)
        diffs = {t[f.mapping[x]][inv[g.mapping[x]]]
                 for x in range(len(f.src.table))}
        return self._pair_quot(f.dst, tb.normal_closure(t, diffs))

    def native_product(self, a: Pair, b: Pair):
        p = tb.product_table(a.table, b.table)
        nb = len(b.table)
        marked = frozenset(x * nb + y for x in a.marked for y in b.marked)
        prod = Pair(p, marked)
        self.validate(prod)
        proj0 = Hom(prod, a, tuple(i // nb for i in range(len(p))))
        proj1 = Hom(prod, b, tuple(i % nb for i in range(len(p))))
        return prod, proj0, proj1

    def native_coproduct(self, a, b):
        if len(a.table) == 1:
            return b, self.zero_hom(a, b), self.identity(b)
        if len(b.table) == 1:
            return a, self.identity(a), self.zero_hom(b, a)
        return None

    def native_pullback(self, f, g):
        pt = tb.product_table(f.src.table, g.src.table)
        nb = len(g.src.table)
        elem_set = {i for i in range(len(pt))
                    if f.mapping[i // nb] == g.mapping[i % nb]}
        elems = sorted(elem_set)
        tbl, idx = tb.sub_table(pt, elems)
        marked = frozenset(idx[x * nb + y]
                           for x in f.src.marked for y in g.src.marked
                           if x * nb + y in elem_set)
        pb = Pair(tbl, marked)
        self.validate(pb)
        pr0 = Hom(pb, f.src, tuple(i // nb for i in elems))
        pr1 = Hom(pb, g.src, tuple(i % nb for i in elems))
        return pb, pr0, pr1

    def native_image(self, f):
        img = sorted(set(f.mapping))
        tbl, idx = tb.sub_table(f.dst.table, img)
        marked = frozenset(idx[f.mapping[x]] for x in f.src.marked)
        io = Pair(tbl, marked)
        self.validate(io)
        e = Hom(f.src, io, tuple(idx[y] for y in f.mapping))
        m = Hom(io, f.dst, tuple(img))
        return io, e, m

    def subobject_generated(self, obj: Pair, subset):
        return tb.closure(obj.table, subset)


BACKENDS = {
    b.name: b for b in (PointedSetBackend, GroupBackend, AbGroupBackend,
                        MonoidBackend, GroupPairBackend)
}


def get_backend(name: str) -> Backend:
    if name not in BACKENDS:
        raise KeyError(f"unknown backend {name!r}; "
                       f"known: {', '.join(sorted(BACKENDS))}")
    return BACKENDS[name]()
