"""Functor categories over a finite index shape.

A functor from a finite shape into a backend theory is itself an object
of a (larger) theory: components per shape object plus compatible action
maps per shape morphism.  FunctorBackend packages that as an ordinary
backend, so materialization, escape certification, and every category
checker work on functor windows unchanged.

Elements of a functor's carrier are numbered block by block, one block
per shape object in order; natural transformations are the block-
preserving maps whose blocks are theory morphisms and whose naturality
squares commute.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import fincat
from .axioms import _Scan
from .budget import DEFAULT_BUDGET
from .fincat import Cone, Diagram, EngineInconsistency, FinCategory, make_witness
from .backends.theories import Backend, Hom
from .report import CheckReport


# -- built-in index shapes -------------------------------------------------------


def _shape(label, objects, mors, comp):
    """mors: (name, dom, cod) with identities first, one per object."""
    names = [m[0] for m in mors]
    morphisms = [(m[1], m[2]) for m in mors]
    identities = {objects[i]: i for i in range(len(objects))}
    table = dict(comp)
    for i in range(len(mors)):
        d, c = morphisms[i]
        table[(identities[c], i)] = i
        table[(i, identities[d])] = i
    return FinCategory(objects, morphisms, identities, table,
                       names=names, label=label)


def index_shape(name: str) -> FinCategory:
    try:
        return _SHAPES[name]()
    except KeyError:
        raise KeyError(f"unknown index shape {name!r}; known: "
                       + ", ".join(sorted(_SHAPES)))


_SHAPES = {
    "terminal": lambda: _shape("terminal", ("x",), [("idx", "x", "x")], {}),
    "discrete-2": lambda: _shape(
        "discrete-2", ("x", "y"),
        [("idx", "x", "x"), ("idy", "y", "y")], {}),
    "arrow": lambda: _shape(
        "arrow", ("x", "y"),
        [("idx", "x", "x"), ("idy", "y", "y"), ("f", "x", "y")], {}),
    "parallel-pair": lambda: _shape(
        "parallel-pair", ("x", "y"),
        [("idx", "x", "x"), ("idy", "y", "y"),
         ("f", "x", "y"), ("g", "x", "y")], {}),
    "span": lambda: _shape(
        "span", ("c", "x", "y"),
        [("idc", "c", "c"), ("idx", "x", "x"), ("idy", "y", "y"),
         ("l", "c", "x"), ("r", "c", "y")], {}),
}

SHAPE_NAMES = tuple(sorted(_SHAPES))


# -- the functor theory ------------------------------------------------------------


@dataclass(frozen=True)
class FunctorObj:
    comps: tuple       # base objects, aligned with shape.objects
    acts: tuple        # base-coordinate mapping tuples, aligned with shape mors


class FunctorBackend(Backend):
    """Functors shape -> base theory, with natural transformations."""

    def __init__(self, base: Backend, shape: FinCategory):
        super().__init__()
        self.base = base
        self.shape = shape
        self.name = f"{base.name}^{shape.label or 'shape'}"
        self._obj_idx = {x: i for i, x in enumerate(shape.objects)}
        self._gen_mors = tuple(m for m in range(shape.n_mors)
                               if not shape.is_identity(m))
        self._offsets_cache: dict = {}

    # -- carrier layout -----------------------------------------------------

    def _offsets(self, obj: FunctorObj) -> tuple:
        if obj not in self._offsets_cache:
            offs, total = [], 0
            for c in obj.comps:
                offs.append(total)
                total += self.base.size(c)
            self._offsets_cache[obj] = tuple(offs)
        return self._offsets_cache[obj]

    def _mor_ends(self, m: int) -> tuple[int, int]:
        sh = self.shape
        return self._obj_idx[sh.doms[m]], self._obj_idx[sh.cods[m]]

    def components_of(self, h: Hom) -> list[Hom]:
        offs, offd = self._offsets(h.src), self._offsets(h.dst)
        out = []
        for i, (ca, cb) in enumerate(zip(h.src.comps, h.dst.comps)):
            seg = h.mapping[offs[i]: offs[i] + self.base.size(ca)]
            out.append(Hom(ca, cb, tuple(v - offd[i] for v in seg)))
        return out

    def _flatten(self, b: FunctorObj, comp_mappings) -> tuple:
        offb = self._offsets(b)
        flat: list[int] = []
        for i, mp in enumerate(comp_mappings):
            flat.extend(offb[i] + v for v in mp)
        return tuple(flat)

    def _flat_hom(self, a, b, comp_homs) -> Hom:
        return Hom(a, b, self._flatten(b, [h.mapping for h in comp_homs]))

    # -- enumeration ----------------------------------------------------------

    def _action_choices(self, comps):
        sh = self.shape
        acts = [None] * sh.n_mors
        for x, i in self._obj_idx.items():
            acts[sh.id_of(x)] = tuple(range(self.base.size(comps[i])))
        pools = []
        for m in self._gen_mors:
            dx, cx = self._mor_ends(m)
            pools.append([h.mapping
                          for h in self.base.homs(comps[dx], comps[cx])])
        for choice in itertools.product(*pools):
            cand = list(acts)
            for m, mp in zip(self._gen_mors, choice):
                cand[m] = mp
            if all(tuple(cand[g][v] for v in cand[f]) == cand[gf]
                   for (g, f), gf in sh.comp.items()):
                yield tuple(cand)

    def objects_up_to(self, bound):
        reps = self.base.objects_up_to(bound)
        out: list[FunctorObj] = []
        for comps in itertools.product(reps, repeat=len(self.shape.objects)):
            for acts in self._action_choices(comps):
                cand = FunctorObj(comps, acts)
                if not any(c.comps == cand.comps
                           and self.find_iso_between(c, cand) is not None
                           for c in out):
                    out.append(cand)
        return tuple(out)

    def all_objects_up_to(self, bound):
        reps = self.base.all_objects_up_to(bound)
        out = []
        for comps in itertools.product(reps, repeat=len(self.shape.objects)):
            out.extend(FunctorObj(comps, acts)
                       for acts in self._action_choices(comps))
        return tuple(out)

    def size(self, obj):
        return sum(self.base.size(c) for c in obj.comps)

    def label(self, obj):
        inner = ",".join(self.base.label(c) for c in obj.comps)
        if not self._gen_mors:
            return f"F({inner})"
        slots = []
        for m in self._gen_mors:
            dx, cx = self._mor_ends(m)
            homs = self.base.homs(obj.comps[dx], obj.comps[cx])
            slots.append(str([h.mapping for h in homs].index(obj.acts[m])))
        return f"F({inner}|{'.'.join(slots)})"

    # -- morphisms -------------------------------------------------------------

    def _natural(self, a, b, comp_mappings) -> bool:
        for m in self._gen_mors:
            dx, cx = self._mor_ends(m)
            am, bm = a.acts[m], b.acts[m]
            ax, ay = comp_mappings[dx], comp_mappings[cx]
            if any(bm[ax[e]] != ay[am[e]] for e in range(len(ax))):
                return False
        return True

    def _maps(self, a, b):
        per = [[h.mapping for h in self.base.homs(ca, cb)]
               for ca, cb in zip(a.comps, b.comps)]
        return [self._flatten(b, choice)
                for choice in itertools.product(*per)
                if self._natural(a, b, choice)]

    def is_morphism(self, h):
        if not (isinstance(h.src, FunctorObj) and isinstance(h.dst, FunctorObj)):
            return False
        if len(h.mapping) != self.size(h.src):
            return False
        offd = self._offsets(h.dst)
        comps = []
        off = 0
        for i, (ca, cb) in enumerate(zip(h.src.comps, h.dst.comps)):
            na, nb = self.base.size(ca), self.base.size(cb)
            seg = h.mapping[off: off + na]
            off += na
            if any(not offd[i] <= v < offd[i] + nb for v in seg):
                return False
            comp = Hom(ca, cb, tuple(v - offd[i] for v in seg))
            if not self.base.is_morphism(comp):
                return False
            comps.append(comp.mapping)
        return self._natural(h.src, h.dst, comps)

    def find_iso_between(self, a, b):
        if tuple(map(self.base.size, a.comps)) != tuple(map(self.base.size,
                                                            b.comps)):
            return None
        n = self.size(a)
        for mp in self._maps(a, b):
            if len(set(mp)) == n and self.is_iso(Hom(a, b, mp)):
                return mp
        return None

    def zero_hom(self, a, b):
        offb = self._offsets(b)
        mapping: list[int] = []
        for i, c in enumerate(a.comps):
            mapping.extend([offb[i]] * self.base.size(c))
        return Hom(a, b, tuple(mapping))

    def validate(self, obj):
        sh = self.shape
        if len(obj.comps) != len(sh.objects) or len(obj.acts) != sh.n_mors:
            raise ValueError("component or action count mismatch")
        for c in obj.comps:
            self.base.validate(c)
        for m in range(sh.n_mors):
            dx, cx = self._mor_ends(m)
            h = Hom(obj.comps[dx], obj.comps[cx], obj.acts[m])
            if not self.base.is_morphism(h):
                raise ValueError(f"action for shape morphism {sh.names[m]} "
                                 "is not a theory morphism")
            if sh.is_identity(m) and obj.acts[m] != tuple(
                    range(self.base.size(obj.comps[dx]))):
                raise ValueError("identity action is not the identity")
        for (g, f), gf in sh.comp.items():
            lhs = tuple(obj.acts[g][v] for v in obj.acts[f])
            if lhs != obj.acts[gf]:
                raise ValueError("actions violate the shape composition")

    # -- native constructions: pointwise with the induced actions ---------------

    def _match(self, legs_y, targets, size_y) -> int:
        hits = [e for e in range(size_y)
                if all(l.mapping[e] == t for l, t in zip(legs_y, targets))]
        if len(hits) != 1:
            raise EngineInconsistency(
                "pointwise legs fail to determine the induced action")
        return hits[0]

    def _limit_acts(self, per, leg_lists, sources):
        """Actions on a pointwise limit.  per[i] = component carrier,
        leg_lists[i] = jointly injective legs out of it, sources[j] = the
        functor each leg lands in."""
        acts = [None] * self.shape.n_mors
        for m in range(self.shape.n_mors):
            dx, cx = self._mor_ends(m)
            nx, ny = self.base.size(per[dx]), self.base.size(per[cx])
            mapping = []
            for e in range(nx):
                targets = [src.acts[m][leg.mapping[e]]
                           for leg, src in zip(leg_lists[dx], sources)]
                mapping.append(self._match(leg_lists[cx], targets, ny))
            acts[m] = tuple(mapping)
        return tuple(acts)

    def _limit_obj(self, parts, sources):
        """parts[i] = (carrier, legs...) per component; returns
        (FunctorObj, flat leg Homs)."""
        per = tuple(p[0] for p in parts)
        leg_lists = [p[1:] for p in parts]
        obj = FunctorObj(per, self._limit_acts(per, leg_lists, sources))
        flat_legs = []
        for j, src in enumerate(sources):
            flat_legs.append(self._flat_hom(
                obj, src, [Hom(per[i], src.comps[i], parts[i][1 + j].mapping)
                           for i in range(len(per))]))
        return obj, flat_legs

    def native_kernel(self, f):
        parts = [self.base.native_kernel(cf) for cf in self.components_of(f)]
        obj, (incl,) = self._limit_obj(parts, [f.src])
        return obj, incl

    def native_equalizer(self, f, g):
        parts = [self.base.native_equalizer(cf, cg)
                 for cf, cg in zip(self.components_of(f),
                                   self.components_of(g))]
        obj, (incl,) = self._limit_obj(parts, [f.src])
        return obj, incl

    def native_product(self, a, b):
        parts = [self.base.native_product(ca, cb)
                 for ca, cb in zip(a.comps, b.comps)]
        obj, (p0, p1) = self._limit_obj(parts, [a, b])
        return obj, p0, p1

    def native_pullback(self, f, g):
        parts = [self.base.native_pullback(cf, cg)
                 for cf, cg in zip(self.components_of(f),
                                   self.components_of(g))]
        obj, (q0, q1) = self._limit_obj(parts, [f.src, g.src])
        return obj, q0, q1

    def _quotient_acts(self, per, projs, source):
        """Actions on a pointwise quotient, checked well-defined on every
        fiber of the (surjective) projections."""
        acts = [None] * self.shape.n_mors
        for m in range(self.shape.n_mors):
            dx, cx = self._mor_ends(m)
            nx = self.base.size(per[dx])
            mapping = [None] * nx
            for z, e in enumerate(projs[dx].mapping):
                v = projs[cx].mapping[source.acts[m][z]]
                if mapping[e] is None:
                    mapping[e] = v
                elif mapping[e] != v:
                    raise EngineInconsistency(
                        "quotient action not well-defined; naturality broken")
            acts[m] = tuple(mapping)
        return tuple(acts)

    def _quotient_obj(self, parts, source):
        per = tuple(p[0] for p in parts)
        projs = [Hom(source.comps[i], per[i], parts[i][1].mapping)
                 for i in range(len(per))]
        obj = FunctorObj(per, self._quotient_acts(per, projs, source))
        return obj, self._flat_hom(source, obj, projs)

    def native_cokernel(self, f):
        parts = [self.base.native_cokernel(cf)
                 for cf in self.components_of(f)]
        return self._quotient_obj(parts, f.dst)

    def native_coequalizer(self, f, g):
        parts = [self.base.native_coequalizer(cf, cg)
                 for cf, cg in zip(self.components_of(f),
                                   self.components_of(g))]
        return self._quotient_obj(parts, f.dst)

    def native_image(self, f):
        comps = self.components_of(f)
        parts = [self.base.native_image(cf) for cf in comps]
        per = tuple(p[0] for p in parts)
        monos = [Hom(per[i], f.dst.comps[i], parts[i][2].mapping)
                 for i in range(len(per))]
        acts = self._limit_acts(per, [(mn,) for mn in monos], [f.dst])
        obj = FunctorObj(per, acts)
        e = self._flat_hom(f.src, obj,
                           [Hom(f.src.comps[i], per[i], parts[i][1].mapping)
                            for i in range(len(per))])
        return obj, e, self._flat_hom(obj, f.dst, monos)

    def native_coproduct(self, a, b):
        parts = []
        for ca, cb in zip(a.comps, b.comps):
            made = self.base.native_coproduct(ca, cb)
            if made is None:
                return None
            parts.append(made)
        per = tuple(p[0] for p in parts)
        inj0 = [Hom(a.comps[i], per[i], parts[i][1].mapping)
                for i in range(len(per))]
        inj1 = [Hom(b.comps[i], per[i], parts[i][2].mapping)
                for i in range(len(per))]
        acts = [None] * self.shape.n_mors
        for m in range(self.shape.n_mors):
            dx, cx = self._mor_ends(m)
            cands = [
                u for u in self.base.homs(per[dx], per[cx])
                if all(u.mapping[inj0[dx].mapping[e]]
                       == inj0[cx].mapping[a.acts[m][e]]
                       for e in range(len(a.acts[m])))
                and all(u.mapping[inj1[dx].mapping[e]]
                        == inj1[cx].mapping[b.acts[m][e]]
                        for e in range(len(b.acts[m])))]
            if len(cands) != 1:
                raise EngineInconsistency(
                    "pointwise sum without a unique induced action")
            acts[m] = cands[0].mapping
        obj = FunctorObj(per, tuple(acts))
        return obj, self._flat_hom(a, obj, inj0), self._flat_hom(b, obj, inj1)

    def subobject_generated(self, obj, subset):
        per = [set() for _ in obj.comps]
        offs = self._offsets(obj)
        for v in subset:
            i = max(j for j in range(len(offs)) if offs[j] <= v)
            per[i].add(v - offs[i])
        while True:
            grown = False
            for i in range(len(per)):
                closed = self.base.subobject_generated(obj.comps[i], per[i])
                if closed != per[i]:
                    per[i] = set(closed)
                    grown = True
            for m in range(self.shape.n_mors):
                dx, cx = self._mor_ends(m)
                img = {obj.acts[m][e] for e in per[dx]}
                if not img <= per[cx]:
                    per[cx] |= img
                    grown = True
            if not grown:
                break
        return frozenset(offs[i] + v for i in range(len(per))
                         for v in per[i])


# -- building the functor category ---------------------------------------------------


def functor_category(C: FinCategory, I: FinCategory, budget=None,
                     validate: bool = True) -> FinCategory:
    """The category of functors I -> C and natural transformations.

    When C is a materialized backend window the result is one too, built
    over FunctorBackend at the same bound, so escaped constructions keep
    their certification route.  A plain C (e.g. loaded from a file) gets
    the literal construction: every functor, every natural transformation,
    closed-world.

    validate=False skips the category-law recheck; the associativity scan
    is cubic in hom-set size and dominates everything else once the
    window has a few thousand morphisms.
    """
    if C.view is not None:
        from .backends.materialize import materialize
        return materialize(FunctorBackend(C.view.backend, I),
                           C.view.bound, budget=budget, validate=validate)
    return _functor_category_direct(C, I, budget, validate)


def _uniq(label, seen):
    out = label
    k = 1
    while out in seen:
        out = f"{label}~{k}"
        k += 1
    seen.add(out)
    return out


def _functor_category_direct(C, I, budget, validate=True):
    from .backends.materialize import WindowTooLarge

    gen = [m for m in range(I.n_mors) if not I.is_identity(m)]
    functors = []
    for omap in itertools.product(C.objects, repeat=len(I.objects)):
        oidx = {x: omap[i] for i, x in enumerate(I.objects)}
        pools = [C.hom(oidx[I.doms[m]], oidx[I.cods[m]]) for m in gen]
        for choice in itertools.product(*pools):
            mmap = [None] * I.n_mors
            for x in I.objects:
                mmap[I.id_of(x)] = C.id_of(oidx[x])
            for m, c in zip(gen, choice):
                mmap[m] = c
            if all(C.compose(mmap[g], mmap[f]) == mmap[gf]
                   for (g, f), gf in I.comp.items()):
                functors.append((omap, tuple(mmap)))
    if budget is not None and len(functors) > budget.max_objects:
        raise WindowTooLarge(len(functors), budget.max_objects)

    seen: set = set()
    obj_names = []
    for omap, mmap in functors:
        inner = ",".join(omap)
        if gen:
            inner += "|" + ";".join(C.names[mmap[m]] for m in gen)
        obj_names.append(_uniq(f"F({inner})", seen))

    pos = {x: I.obj_index[x] for x in I.objects}
    nat = []            # (src idx, dst idx, component mids per I object)
    for a, (oa, ma) in enumerate(functors):
        for b, (ob, mb) in enumerate(functors):
            pools = [C.hom(oa[i], ob[i]) for i in range(len(I.objects))]
            for alpha in itertools.product(*pools):
                if all(C.compose(mb[m], alpha[pos[I.doms[m]]])
                       == C.compose(alpha[pos[I.cods[m]]], ma[m])
                       for m in gen):
                    nat.append((a, b, alpha))

    mor_index = {(a, b, alpha): i for i, (a, b, alpha) in enumerate(nat)}
    morphisms = [(obj_names[a], obj_names[b]) for a, b, _ in nat]
    identities = {
        obj_names[i]: mor_index[(i, i, tuple(C.id_of(x) for x in omap))]
        for i, (omap, _) in enumerate(functors)}
    counters: dict = {}
    names = []
    for i, (a, b, alpha) in enumerate(nat):
        if identities.get(obj_names[a]) == i and a == b:
            names.append(f"id:{obj_names[a]}")
        else:
            k = counters.get((a, b), 0)
            counters[(a, b)] = k + 1
            names.append(f"{obj_names[a]}->{obj_names[b]}:{k}")
    comp = {}
    for j, (b2, c, beta) in enumerate(nat):
        for i, (a, b, alpha) in enumerate(nat):
            if b != b2:
                continue
            gamma = tuple(C.compose(beta[t], alpha[t])
                          for t in range(len(I.objects)))
            comp[(j, i)] = mor_index[(a, c, gamma)]

    out = FinCategory(obj_names, morphisms, identities, comp, names=names,
                      label=f"{C.label or 'C'}^{I.label or 'I'}",
                      validate=validate)
    out._functor_components = tuple(alpha for _, _, alpha in nat)
    return out


# -- pointwise agreement audit ------------------------------------------------------


PREDICATES = ("mono", "regular-epi", "kernel", "product")


def component_mids(fcat, C, mid) -> list[int]:
    """Morphism ids in C of a functor morphism's components, one per
    index object."""
    direct = getattr(fcat, "_functor_components", None)
    if direct is not None:
        return list(direct[mid])
    fb = fcat.view.backend
    out = []
    for ch in fb.components_of(fcat.view.hom_of(mid)):
        cm = C.view.window_mor(ch)
        if cm is None:
            raise EngineInconsistency(
                "functor component missing from the base window")
        out.append(cm)
    return out


def _sampled(rng, pool, samples):
    if len(pool) <= samples:
        return pool
    return sorted(rng.sample(pool, samples))


def _audit_mor_predicate(scan, fcat, C, mids, predicate, budget):
    test = fincat.is_mono if predicate == "mono" else fincat.is_regular_epi
    for mid in mids:
        if scan.expired():
            break
        comps = component_mids(fcat, C, mid)
        vf = test(fcat, mid, budget)
        vcs = [test(C, c, budget) for c in comps]
        if vf.inconclusive or any(v.inconclusive for v in vcs):
            scan.skip(f"{predicate} comparison for {fcat.names[mid]} "
                      "out of budget")
        elif vf.holds != all(v.holds for v in vcs):
            scan.fail(make_witness(
                fcat, {"alpha": mid},
                note=f"{predicate} verdict {vf.status} in the functor "
                     f"category but pointwise verdicts "
                     f"{[v.status for v in vcs]}"))
        else:
            scan.bump("agreements")


def _audit_kernels(scan, fcat, C, mids, budget):
    for mid in mids:
        if scan.expired():
            break
        comps = component_mids(fcat, C, mid)
        ko = fincat.kernel(fcat, mid, budget)
        if ko.inconclusive:
            scan.skip(f"kernel of {fcat.names[mid]} out of budget")
            continue
        if ko.absent:
            pointwise = [fincat.kernel(C, c, budget) for c in comps]
            if any(p.absent for p in pointwise):
                scan.bump("absent_agreements")
            elif any(p.inconclusive for p in pointwise):
                scan.skip(f"kernel of {fcat.names[mid]} absent and a "
                          "component kernel is out of budget")
            else:
                scan.fail(make_witness(
                    fcat, {"alpha": mid},
                    note="no kernel in the functor category although "
                         "every component has one"))
            continue
        k = fincat.kernel_mor(ko)
        k_comps = component_mids(fcat, C, k)
        bad = [i for i, (kc, ac) in enumerate(zip(k_comps, comps))
               if not fincat.is_equalizer_of(
                   C, kc, ac, C.zero_mor(C.doms[ac], C.cods[ac]))]
        if bad:
            scan.fail(make_witness(
                fcat, {"alpha": mid, "k": k},
                note=f"kernel components at index positions {bad} are "
                     "not kernels of the corresponding components"))
        else:
            scan.bump("agreements")


def _component_product_ok(C, x, y, budget):
    """Does the pair (x, y) have a product in C, in-window or certified?"""
    out = fincat.product(C, x, y, budget)
    if out.found:
        return True
    if out.inconclusive:
        return None
    if C.view is not None:
        return C.view.certify_product(x, y).ok
    return False


def _audit_products(scan, fcat, C, pairs, budget):
    for x, y in pairs:
        if scan.expired():
            break
        xi, yi = fcat.id_of(x), fcat.id_of(y)
        cx = component_mids(fcat, C, xi)
        cy = component_mids(fcat, C, yi)
        factors = [(C.cods[a], C.cods[b]) for a, b in zip(cx, cy)]
        out = fincat.product(fcat, x, y, budget)
        if out.inconclusive:
            scan.skip(f"product of ({x}, {y}) out of budget")
            continue
        if out.absent:
            if fcat.view is not None:
                ok_f = fcat.view.certify_product(x, y).ok
                oks = [_component_product_ok(C, a, b, budget)
                       for a, b in factors]
                if None in oks:
                    scan.skip(f"product of ({x}, {y}): a component "
                              "product is out of budget")
                elif ok_f and all(oks):
                    scan.bump("escaped_agreements")
                else:
                    scan.fail(make_witness(
                        fcat, {"x": xi, "y": yi},
                        note=f"escaped product of ({x}, {y}): functor "
                             f"certification {ok_f}, components {oks}"))
            else:
                oks = [_component_product_ok(C, a, b, budget)
                       for a, b in factors]
                if False in oks:
                    scan.bump("absent_agreements")
                elif None in oks:
                    scan.skip(f"product of ({x}, {y}): a component "
                              "product is out of budget")
                else:
                    scan.fail(make_witness(
                        fcat, {"x": xi, "y": yi},
                        note=f"no product of ({x}, {y}) in the functor "
                             "category although every component pair "
                             "has one"))
            continue
        legs = [component_mids(fcat, C, leg) for leg in out.cone.legs]
        bad = []
        for i, (fa, fb) in enumerate(factors):
            cone = Cone(C.doms[legs[0][i]], (legs[0][i], legs[1][i]))
            if not fincat.verify_limit_cone(
                    C, Diagram.discrete([fa, fb]), cone):
                bad.append(i)
        if bad:
            scan.fail(make_witness(
                fcat, {"p0": out.cone.legs[0], "p1": out.cone.legs[1]},
                note=f"product cone components at index positions {bad} "
                     "are not product cones"))
        else:
            scan.bump("agreements")


def pointwise_audit(C: FinCategory, I: FinCategory, predicate: str,
                    budget=DEFAULT_BUDGET, seed=0, samples=100,
                    fcat=None) -> CheckReport:
    """Deterministic sample of verdicts in the functor category checked
    against the conjunction of per-component verdicts computed in C.

    predicate: "mono" | "regular-epi" | "kernel" | "product" (binary
    products stand in for limits of a fixed finite shape).
    """
    if predicate not in PREDICATES:
        raise ValueError(f"unknown predicate {predicate!r}; "
                         f"choose from {PREDICATES}")
    if fcat is None:
        fcat = functor_category(C, I, budget)
    scan = _Scan(budget)
    rng = random.Random(seed)
    if predicate == "product":
        pool = list(itertools.combinations_with_replacement(fcat.objects, 2))
        pairs = _sampled(rng, pool, samples)
        scan.counts["samples"] = len(pairs)
        scan.counts["space"] = len(pool)
        _audit_products(scan, fcat, C, pairs, budget)
    else:
        pool = list(range(fcat.n_mors))
        mids = _sampled(rng, pool, samples)
        scan.counts["samples"] = len(mids)
        scan.counts["space"] = len(pool)
        if predicate == "kernel":
            _audit_kernels(scan, fcat, C, mids, budget)
        else:
            _audit_mor_predicate(scan, fcat, C, mids, predicate, budget)
    claim = (f"{predicate} verdicts in {fcat.label} agree with pointwise "
             f"conjunctions over {C.label}")
    return scan.report(f"functor-pointwise-{predicate}", claim,
                       seed=seed, index_shape=I.label, base=C.label,
                       functor_category=fcat.label)


def classify_agreement(C: FinCategory, I: FinCategory,
                       budget=DEFAULT_BUDGET, fcat=None) -> CheckReport:
    """Run the classification ladder on C and on the functor category and
    compare rung by rung.  A completed verdict differing between the two
    is a failure; an out-of-budget rung on either side only blocks the
    comparison for that rung."""
    from .axioms import classify
    if fcat is None:
        fcat = functor_category(C, I, budget)
    scan = _Scan(budget)
    _, ladder_c = classify(C, budget)
    _, ladder_f = classify(fcat, budget)
    for (rung, vc), (_, vf) in zip(ladder_c, ladder_f):
        if vc == vf:
            scan.bump("rungs_agreeing")
        elif "out-of-budget" in (vc, vf):
            scan.skip(f"rung {rung}: {vc} in {C.label} vs {vf} in "
                      f"{fcat.label}; no completed comparison")
        else:
            scan.fail({"roles": {}, "fragment": "",
                       "note": f"rung {rung}: {vc} in {C.label} but "
                               f"{vf} in {fcat.label}"})
    return scan.report(
        "functor-classify-agreement",
        f"the classification ladder of {fcat.label} matches {C.label} "
        "rung by rung",
        index_shape=I.label, base=C.label, functor_category=fcat.label,
        ladder_base=dict(ladder_c), ladder_functor=dict(ladder_f))
