"""Finite categories presented by explicit composition tables, plus the
exhaustive universal-property solver and the decision procedures built
on it.

Conventions used throughout:

- Objects are strings.  Morphisms are integer ids 0..n-1 with stable
  printable names; ``comp[(g, f)]`` is "g after f" and is defined exactly
  when cod(f) == dom(g).
- Hom-sets are indexed by (dom, cod) so parallel-pair enumeration is a
  table lookup.
- Every decision procedure returns a :class:`Verdict`: ``holds``,
  ``fails`` (with a witness that can be re-checked on the serialized
  fragment alone), or ``out-of-budget``.  Witness fragments are the full
  subcategory spanned by the objects that occur in the diagram, so they
  are composition-closed and carry complete hom-sets between their
  objects.
- "Absent" answers from the (co)limit solver are proofs: every candidate
  apex and every candidate cone was enumerated.  Out-of-budget is the
  only inconclusive outcome.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from .budget import Budget, DEFAULT_BUDGET

HOLDS = "holds"
FAILS = "fails"
OOB = "out-of-budget"


class CategoryError(ValueError):
    """Structural invariant violation in a category presentation."""


class EngineInconsistency(RuntimeError):
    """Two independent decision routes disagreed; this is an engine bug
    or a corrupted input, never a mathematical verdict."""


@dataclass(frozen=True)
class Verdict:
    status: str                 # HOLDS | FAILS | OOB
    witness: dict | None = None
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    @property
    def failed(self) -> bool:
        return self.status == FAILS

    @property
    def inconclusive(self) -> bool:
        return self.status == OOB

    def as_dict(self) -> dict:
        d = {"status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.note:
            d["note"] = self.note
        return d


@dataclass(frozen=True)
class MorRef:
    mid: int
    name: str
    dom: str
    cod: str


class FinCategory:
    """A finite category as an explicit composition table.

    `morphisms` is a list of (dom, cod) pairs indexed by morphism id;
    `identities` maps each object to its identity id; `comp` maps
    composable id pairs (g, f) to the id of g∘f.
    """

    def __init__(self, objects, morphisms, identities, comp,
                 names=None, label="", validate=True):
        self.objects = tuple(objects)
        self.obj_index = {x: i for i, x in enumerate(self.objects)}
        if len(self.obj_index) != len(self.objects):
            raise CategoryError("duplicate object name")
        self.doms = tuple(d for d, _ in morphisms)
        self.cods = tuple(c for _, c in morphisms)
        self.n_mors = len(self.doms)
        self.names = tuple(names) if names else tuple(f"m{i}" for i in range(self.n_mors))
        if len(set(self.names)) != self.n_mors:
            raise CategoryError("duplicate morphism name")
        self.identities = dict(identities)
        self.comp = dict(comp)
        self.label = label
        self.view = None     # optional backend view attached by materialize
        self._hom = {}
        for i in range(self.n_mors):
            self._hom.setdefault((self.doms[i], self.cods[i]), []).append(i)
        for k in self._hom:
            self._hom[k] = tuple(self._hom[k])
        self._name_index = {n: i for i, n in enumerate(self.names)}
        self._cache = {}
        if validate:
            self.validate()

    # -- basic access ----------------------------------------------------

    def hom(self, x, y):
        return self._hom.get((x, y), ())

    def compose(self, g: int, f: int) -> int:
        try:
            return self.comp[(g, f)]
        except KeyError:
            raise CategoryError(
                f"morphisms not composable: {self.names[g]} after {self.names[f]}")

    def id_of(self, x) -> int:
        return self.identities[x]

    def mor(self, i: int) -> MorRef:
        return MorRef(i, self.names[i], self.doms[i], self.cods[i])

    def find(self, name: str) -> int:
        return self._name_index[name]

    def is_identity(self, i: int) -> bool:
        return self.identities.get(self.doms[i]) == i

    def mors_into(self, y):
        return tuple(i for i in range(self.n_mors) if self.cods[i] == y)

    def mors_out_of(self, x):
        return tuple(i for i in range(self.n_mors) if self.doms[i] == x)

    # -- invariants -------------------------------------------------------

    def validate(self):
        for x in self.objects:
            i = self.identities.get(x)
            if i is None:
                raise CategoryError(f"object {x} has no identity")
            if self.doms[i] != x or self.cods[i] != x:
                raise CategoryError(f"identity of {x} is not an endomorphism of {x}")
        for i in range(self.n_mors):
            if self.doms[i] not in self.obj_index or self.cods[i] not in self.obj_index:
                raise CategoryError(f"morphism {self.names[i]} has unknown endpoint")
        for (g, f), h in self.comp.items():
            if self.cods[f] != self.doms[g]:
                raise CategoryError(
                    f"composition defined for non-composable pair ({self.names[g]}, {self.names[f]})")
            if self.doms[h] != self.doms[f] or self.cods[h] != self.cods[g]:
                raise CategoryError(
                    f"composite {self.names[h]} has wrong endpoints for ({self.names[g]}, {self.names[f]})")
        # totality on composable pairs
        for g in range(self.n_mors):
            for f in self.hom_pairs_into(self.doms[g]):
                if (g, f) not in self.comp:
                    raise CategoryError(
                        f"missing composition ({self.names[g]}, {self.names[f]})")
        # identity laws
        for i in range(self.n_mors):
            if self.comp[(i, self.identities[self.doms[i]])] != i:
                raise CategoryError(f"right identity law fails for {self.names[i]}")
            if self.comp[(self.identities[self.cods[i]], i)] != i:
                raise CategoryError(f"left identity law fails for {self.names[i]}")
        # associativity over all composable triples; rows[g] is the comp
        # row of g over hom_pairs_into(dom g), so each triple costs two
        # list indexings instead of dict lookups on tuple keys
        pos = {}
        for x in self.objects:
            for j, f in enumerate(self.hom_pairs_into(x)):
                pos[f] = j
        rows = [[self.comp[(g, f)] for f in self.hom_pairs_into(self.doms[g])]
                for g in range(self.n_mors)]
        for g in range(self.n_mors):
            row_g = rows[g]
            for j, f in enumerate(self.hom_pairs_into(self.doms[g])):
                gf = row_g[j]
                row_f = rows[f]
                if rows[gf] != [row_g[pos[fe]] for fe in row_f]:
                    for e in self.hom_pairs_into(self.doms[f]):
                        if self.comp[(gf, e)] != self.comp[(g, self.comp[(f, e)])]:
                            raise CategoryError(
                                "associativity fails on "
                                f"({self.names[g]}, {self.names[f]}, {self.names[e]})")

    def hom_pairs_into(self, x):
        """All morphisms with codomain x (cached)."""
        key = ("into", x)
        if key not in self._cache:
            self._cache[key] = tuple(i for i in range(self.n_mors) if self.cods[i] == x)
        return self._cache[key]

    # -- mono / epi / iso -------------------------------------------------

    def mono_set(self) -> frozenset:
        if "monos" not in self._cache:
            monos = set()
            for f in range(self.n_mors):
                a = self.doms[f]
                ok = True
                for t in self.objects:
                    h = self.hom(t, a)
                    if len({self.comp[(f, u)] for u in h}) != len(h):
                        ok = False
                        break
                if ok:
                    monos.add(f)
            self._cache["monos"] = frozenset(monos)
        return self._cache["monos"]

    def epi_set(self) -> frozenset:
        if "epis" not in self._cache:
            epis = set()
            for f in range(self.n_mors):
                b = self.cods[f]
                ok = True
                for t in self.objects:
                    h = self.hom(b, t)
                    if len({self.comp[(u, f)] for u in h}) != len(h):
                        ok = False
                        break
                if ok:
                    epis.add(f)
            self._cache["epis"] = frozenset(epis)
        return self._cache["epis"]

    def inverse(self, f: int):
        """Id of the two-sided inverse, or None."""
        key = ("inv", f)
        if key not in self._cache:
            inv = None
            ida, idb = self.identities[self.doms[f]], self.identities[self.cods[f]]
            for g in self.hom(self.cods[f], self.doms[f]):
                if self.comp[(g, f)] == ida and self.comp[(f, g)] == idb:
                    inv = g
                    break
            self._cache[key] = inv
        return self._cache[key]

    def is_iso(self, f: int) -> bool:
        return self.inverse(f) is not None

    # -- pointedness ------------------------------------------------------

    def zero_object(self):
        """The zero object's name, or None. The scan is always complete."""
        if "zero" not in self._cache:
            z = None
            for x in self.objects:
                if all(len(self.hom(x, t)) == 1 and len(self.hom(t, x)) == 1
                       for t in self.objects):
                    z = x
                    break
            self._cache["zero"] = z
        return self._cache["zero"]

    def zero_mor(self, x, y) -> int:
        """The zero morphism x -> y through the zero object."""
        z = self.zero_object()
        if z is None:
            raise CategoryError("category has no zero object")
        return self.comp[(self.hom(z, y)[0], self.hom(x, z)[0])]

    def is_zero_object(self, x) -> bool:
        return all(len(self.hom(x, t)) == 1 and len(self.hom(t, x)) == 1
                   for t in self.objects)

    # -- fragments ----------------------------------------------------------

    def subcategory(self, objs):
        """Full subcategory on the given objects; names are preserved.
        Returns (category, old-to-new id map)."""
        objs = [x for x in self.objects if x in set(objs)]
        keep = [i for i in range(self.n_mors)
                if self.doms[i] in set(objs) and self.cods[i] in set(objs)]
        idmap = {old: new for new, old in enumerate(keep)}
        mors = [(self.doms[i], self.cods[i]) for i in keep]
        names = [self.names[i] for i in keep]
        idents = {x: idmap[self.identities[x]] for x in objs}
        comp = {}
        for g in keep:
            for f in keep:
                if (g, f) in self.comp:
                    comp[(idmap[g], idmap[f])] = idmap[self.comp[(g, f)]]
        frag = FinCategory(objs, mors, idents, comp, names=names,
                           label=self.label, validate=False)
        return frag, idmap

    def __eq__(self, other):
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (self.objects == other.objects and self.doms == other.doms
                and self.cods == other.cods and self.names == other.names
                and self.identities == other.identities and self.comp == other.comp)

    def __repr__(self):
        return (f"FinCategory({self.label or 'anonymous'}: "
                f"{len(self.objects)} objects, {self.n_mors} morphisms)")


# -- witnesses --------------------------------------------------------------


def make_witness(cat: FinCategory, roles: dict, note: str = "",
                 extra_objects=()) -> dict:
    """Bundle role-labelled morphisms with the full subcategory they span.

    The fragment is self-contained: anyone can re-run the relevant check on
    the parsed fragment plus the role map, without the original category.
    """
    objs = set(extra_objects)
    for m in roles.values():
        objs.add(cat.doms[m])
        objs.add(cat.cods[m])
    from . import catfile  # local import to avoid a cycle
    frag, _ = cat.subcategory(sorted(objs, key=cat.obj_index.get))
    return {
        "roles": {r: cat.names[m] for r, m in sorted(roles.items())},
        "objects": list(frag.objects),
        "fragment": catfile.print_category(frag),
        "note": note,
    }


# -- elementary predicates ----------------------------------------------------


def is_mono(cat: FinCategory, f: int, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """f is mono iff post-composition by f is injective on every hom-set."""
    a = cat.doms[f]
    pairs = 0
    for t in cat.objects:
        h = cat.hom(t, a)
        pairs += len(h) * len(h)
        if pairs > budget.max_parallel_pairs:
            return Verdict(OOB, note="parallel-pair budget exhausted")
        seen = {}
        for u in h:
            c = cat.comp[(f, u)]
            if c in seen:
                w = make_witness(cat, {"f": f, "u": seen[c], "v": u},
                                 note="u != v but f∘u = f∘v")
                return Verdict(FAILS, w)
            seen[c] = u
    return Verdict(HOLDS)


def is_epi(cat: FinCategory, f: int, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    b = cat.cods[f]
    pairs = 0
    for t in cat.objects:
        h = cat.hom(b, t)
        pairs += len(h) * len(h)
        if pairs > budget.max_parallel_pairs:
            return Verdict(OOB, note="parallel-pair budget exhausted")
        seen = {}
        for u in h:
            c = cat.comp[(u, f)]
            if c in seen:
                w = make_witness(cat, {"f": f, "u": seen[c], "v": u},
                                 note="u != v but u∘f = v∘f")
                return Verdict(FAILS, w)
            seen[c] = u
    return Verdict(HOLDS)


def is_epimorphic_family(cat: FinCategory, fs, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """(f_i) with common codomain Y: u∘f_i = v∘f_i for all i forces u = v."""
    fs = list(fs)
    if not fs:
        raise ValueError("empty family")
    y = cat.cods[fs[0]]
    if any(cat.cods[f] != y for f in fs):
        raise ValueError("family must share its codomain")
    pairs = 0
    for t in cat.objects:
        h = cat.hom(y, t)
        pairs += len(h) * len(h)
        if pairs > budget.max_parallel_pairs:
            return Verdict(OOB, note="parallel-pair budget exhausted")
        seen = {}
        for u in h:
            key = tuple(cat.comp[(u, f)] for f in fs)
            if key in seen:
                roles = {f"f{i}": f for i, f in enumerate(fs)}
                roles.update({"u": seen[key], "v": u})
                return Verdict(FAILS, make_witness(
                    cat, roles, note="u != v but u∘f_i = v∘f_i for every i"))
            seen[key] = u
    return Verdict(HOLDS)


def _factorizations_through(cat, m, f):
    """All g with m∘g = f (m and f sharing codomain)."""
    return [g for g in cat.hom(cat.doms[f], cat.doms[m]) if cat.comp[(m, g)] == f]


def is_strongly_epimorphic_family(cat: FinCategory, fs,
                                  budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """No non-invertible mono lets the whole family factor through it."""
    fs = list(fs)
    if not fs:
        raise ValueError("empty family")
    y = cat.cods[fs[0]]
    if any(cat.cods[f] != y for f in fs):
        raise ValueError("family must share its codomain")
    monos = cat.mono_set()
    for m in cat.hom_pairs_into(y):
        if m not in monos or cat.is_iso(m):
            continue
        gs = []
        for f in fs:
            g = _factorizations_through(cat, m, f)
            if not g:
                break
            gs.append(g[0])
        else:
            roles = {f"f{i}": f for i, f in enumerate(fs)}
            roles["m"] = m
            roles.update({f"g{i}": g for i, g in enumerate(gs)})
            return Verdict(FAILS, make_witness(
                cat, roles,
                note="whole family factors through the non-invertible mono m"))
    return Verdict(HOLDS)


def is_strong_epi(cat: FinCategory, f: int, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Epi such that any mono it factors through is an isomorphism."""
    e = is_epi(cat, f, budget)
    if not e.holds:
        if e.failed:
            return Verdict(FAILS, e.witness, note="not an epimorphism")
        return e
    monos = cat.mono_set()
    for m in cat.hom_pairs_into(cat.cods[f]):
        if m not in monos or cat.is_iso(m):
            continue
        gs = _factorizations_through(cat, m, f)
        if gs:
            return Verdict(FAILS, make_witness(
                cat, {"f": f, "m": m, "g": gs[0]},
                note="f = m∘g with m a non-invertible mono"))
    return Verdict(HOLDS)


# -- diagrams and (co)cones ---------------------------------------------------


@dataclass(frozen=True)
class Diagram:
    nodes: tuple           # node labels
    node_obj: tuple        # objects, aligned with nodes
    arrows: tuple          # (src_index, dst_index, morphism id)

    @staticmethod
    def empty():
        return Diagram((), (), ())

    @staticmethod
    def discrete(objs):
        objs = tuple(objs)
        return Diagram(tuple(f"n{i}" for i in range(len(objs))), objs, ())

    @staticmethod
    def parallel(cat, f, g):
        if cat.doms[f] != cat.doms[g] or cat.cods[f] != cat.cods[g]:
            raise ValueError("not a parallel pair")
        return Diagram(("a", "b"), (cat.doms[f], cat.cods[f]),
                       ((0, 1, f), (0, 1, g)))

    @staticmethod
    def cospan(cat, f, g):
        if cat.cods[f] != cat.cods[g]:
            raise ValueError("not a cospan")
        return Diagram(("l", "c", "r"), (cat.doms[f], cat.cods[f], cat.doms[g]),
                       ((0, 1, f), (2, 1, g)))

    @staticmethod
    def span(cat, f, g):
        if cat.doms[f] != cat.doms[g]:
            raise ValueError("not a span")
        return Diagram(("c", "l", "r"), (cat.doms[f], cat.cods[f], cat.cods[g]),
                       ((0, 1, f), (0, 2, g)))

    def validate(self, cat):
        for s, d, m in self.arrows:
            if cat.doms[m] != self.node_obj[s] or cat.cods[m] != self.node_obj[d]:
                raise CategoryError(
                    f"arrow {cat.names[m]} does not match its node objects")


@dataclass(frozen=True)
class Cone:
    apex: str
    legs: tuple            # morphism ids apex -> node_obj, aligned with nodes


@dataclass(frozen=True)
class Cocone:
    apex: str
    legs: tuple            # morphism ids node_obj -> apex


@dataclass(frozen=True)
class LimitOutcome:
    status: str            # "found" | "absent" | OOB
    cone: object = None    # Cone or Cocone
    note: str = ""

    @property
    def found(self):
        return self.status == "found"

    @property
    def absent(self):
        return self.status == "absent"

    @property
    def inconclusive(self):
        return self.status == OOB


def _cones(cat, d, apex):
    """All cones over d with the given apex, in lexicographic leg order."""
    n = len(d.nodes)
    if n == 0:
        return [()]
    out = []
    legs = [None] * n

    def rec(i):
        if i == n:
            out.append(tuple(legs))
            return
        forced = None
        for s, t, m in d.arrows:
            if t == i and s < i:
                v = cat.comp[(m, legs[s])]
                if forced is None:
                    forced = v
                elif forced != v:
                    return
        cands = (forced,) if forced is not None else cat.hom(apex, d.node_obj[i])
        for c in cands:
            ok = True
            for s, t, m in d.arrows:
                if s == i and t < i and cat.comp[(m, c)] != legs[t]:
                    ok = False
                    break
                if s == i and t == i and cat.comp[(m, c)] != c:
                    ok = False
                    break
                if t == i and s < i and cat.comp[(m, legs[s])] != c:
                    ok = False
                    break
            if ok:
                legs[i] = c
                rec(i + 1)
                legs[i] = None

    rec(0)
    return out


def _cocones(cat, d, apex):
    n = len(d.nodes)
    if n == 0:
        return [()]
    out = []
    legs = [None] * n

    def rec(i):
        if i == n:
            out.append(tuple(legs))
            return
        forced = None
        for s, t, m in d.arrows:
            if s == i and t < i:
                v = cat.comp[(legs[t], m)]
                if forced is None:
                    forced = v
                elif forced != v:
                    return
        cands = (forced,) if forced is not None else cat.hom(d.node_obj[i], apex)
        for c in cands:
            ok = True
            for s, t, m in d.arrows:
                if t == i and s < i and cat.comp[(c, m)] != legs[s]:
                    ok = False
                    break
                if s == i and t == i and cat.comp[(c, m)] != c:
                    ok = False
                    break
                if s == i and t < i and cat.comp[(legs[t], m)] != c:
                    ok = False
                    break
            if ok:
                legs[i] = c
                rec(i + 1)
                legs[i] = None

    rec(0)
    return out


def limit(cat: FinCategory, d: Diagram, budget: Budget = DEFAULT_BUDGET,
          rank=None) -> LimitOutcome:
    """Exhaustive limit search.

    The apex must represent the cone functor: we first filter candidates by
    the counting condition |hom(T, P)| = #Cone(T) for every T, then verify
    that post-composition with the candidate cone is injective (bijective
    then follows from the counts).  "absent" is only reported after every
    apex and every cone was tried.
    """
    d.validate(cat)
    nobj = len(cat.objects)
    if nobj > budget.max_objects or nobj > budget.max_candidate_apexes:
        return LimitOutcome(OOB, note="apex budget smaller than object count")
    deadline = budget.deadline()
    cones_by = {}
    for t in cat.objects:
        cones_by[t] = _cones(cat, d, t)
        if time.monotonic() > deadline:
            return LimitOutcome(OOB, note="wall clock")
    counts = {t: len(cones_by[t]) for t in cat.objects}
    for p in cat.objects:
        if any(len(cat.hom(t, p)) != counts[t] for t in cat.objects):
            continue
        candidates = cones_by[p]
        if rank is not None:
            candidates = sorted(candidates, key=rank)
        for legs in candidates:
            if _limit_up_ok(cat, p, legs, counts):
                return LimitOutcome("found", Cone(p, legs))
        if time.monotonic() > deadline:
            return LimitOutcome(OOB, note="wall clock")
    return LimitOutcome("absent", note="all candidate apexes exhausted")


def _limit_up_ok(cat, p, legs, counts):
    for t in cat.objects:
        h = cat.hom(t, p)
        seen = set()
        for u in h:
            seen.add(tuple(cat.comp[(leg, u)] for leg in legs))
        if len(seen) != counts[t]:
            return False
    return True


def colimit(cat: FinCategory, d: Diagram, budget: Budget = DEFAULT_BUDGET,
            rank=None) -> LimitOutcome:
    d.validate(cat)
    nobj = len(cat.objects)
    if nobj > budget.max_objects or nobj > budget.max_candidate_apexes:
        return LimitOutcome(OOB, note="apex budget smaller than object count")
    deadline = budget.deadline()
    cocones_by = {}
    for t in cat.objects:
        cocones_by[t] = _cocones(cat, d, t)
        if time.monotonic() > deadline:
            return LimitOutcome(OOB, note="wall clock")
    counts = {t: len(cocones_by[t]) for t in cat.objects}
    for p in cat.objects:
        if any(len(cat.hom(p, t)) != counts[t] for t in cat.objects):
            continue
        candidates = cocones_by[p]
        if rank is not None:
            candidates = sorted(candidates, key=rank)
        for legs in candidates:
            if _colimit_up_ok(cat, p, legs, counts):
                return LimitOutcome("found", Cocone(p, legs))
        if time.monotonic() > deadline:
            return LimitOutcome(OOB, note="wall clock")
    return LimitOutcome("absent", note="all candidate apexes exhausted")


def _colimit_up_ok(cat, p, legs, counts):
    for t in cat.objects:
        h = cat.hom(p, t)
        seen = set()
        for u in h:
            seen.add(tuple(cat.comp[(u, leg)] for leg in legs))
        if len(seen) != counts[t]:
            return False
    return True


def verify_limit_cone(cat, d, cone: Cone) -> bool:
    """Universal-property check for an externally supplied cone."""
    for s, t, m in d.arrows:
        if cat.comp[(m, cone.legs[s])] != cone.legs[t]:
            return False
    counts = {t: len(_cones(cat, d, t)) for t in cat.objects}
    if any(len(cat.hom(t, cone.apex)) != counts[t] for t in cat.objects):
        return False
    return _limit_up_ok(cat, cone.apex, cone.legs, counts)


def verify_colimit_cocone(cat, d, cocone: Cocone) -> bool:
    for s, t, m in d.arrows:
        if cat.comp[(cocone.legs[t], m)] != cocone.legs[s]:
            return False
    counts = {t: len(_cocones(cat, d, t)) for t in cat.objects}
    if any(len(cat.hom(cocone.apex, t)) != counts[t] for t in cat.objects):
        return False
    return _colimit_up_ok(cat, cocone.apex, cocone.legs, counts)


# -- pointed constructions ----------------------------------------------------


def product(cat, x, y, budget=DEFAULT_BUDGET):
    return limit(cat, Diagram.discrete([x, y]), budget)


def coproduct(cat, x, y, budget=DEFAULT_BUDGET):
    return colimit(cat, Diagram.discrete([x, y]), budget)


def equalizer(cat, f, g, budget=DEFAULT_BUDGET, rank=None):
    return limit(cat, Diagram.parallel(cat, f, g), budget, rank=rank)


def coequalizer(cat, f, g, budget=DEFAULT_BUDGET):
    return colimit(cat, Diagram.parallel(cat, f, g), budget)


def pullback(cat, f, g, budget=DEFAULT_BUDGET):
    """Pullback of the cospan f: X -> C <- Z :g.  Cone legs are (to X,
    to C, to Z)."""
    return limit(cat, Diagram.cospan(cat, f, g), budget)


def kernel(cat, f, budget=DEFAULT_BUDGET):
    """Kernel as equalizer of f with the zero morphism; returns outcome
    whose payload (when found) is the kernel morphism id into dom(f).

    When a backend view is attached, the cone whose leg matches the
    native sub-table inclusion is preferred among the isomorphic ones.
    """
    key = ("kernel", f, budget.signature())
    if key in cat._cache:
        return cat._cache[key]
    z = cat.zero_mor(cat.doms[f], cat.cods[f])
    rank = None
    if cat.view is not None:
        hint = cat.view.kernel_hint(f)
        if hint is not None:
            rank = lambda legs: (legs[0] != hint, legs)
    out = equalizer(cat, f, z, budget, rank=rank)
    if out.found:
        out = LimitOutcome("found", out.cone, note="kernel")
    cat._cache[key] = out
    return out


def kernel_mor(outcome: LimitOutcome) -> int:
    return outcome.cone.legs[0]


def cokernel(cat, f, budget=DEFAULT_BUDGET):
    """Cokernel as coequalizer of f with zero; payload leg [1] is the
    cokernel morphism out of cod(f)."""
    key = ("cokernel", f, budget.signature())
    if key in cat._cache:
        return cat._cache[key]
    z = cat.zero_mor(cat.doms[f], cat.cods[f])
    out = coequalizer(cat, f, z, budget)
    cat._cache[key] = out
    return out


def cokernel_mor(outcome: LimitOutcome) -> int:
    return outcome.cone.legs[1]


def kernel_pair(cat, f, budget=DEFAULT_BUDGET):
    """Pullback of f along itself plus the diagonal.  Returns
    (outcome, p0, p1, diag) with p0, p1, diag None unless found."""
    key = ("kp", f, budget.signature())
    if key in cat._cache:
        return cat._cache[key]
    out = pullback(cat, f, f, budget)
    res = (out, None, None, None)
    if out.found:
        p0, _, p1 = out.cone.legs
        x = cat.doms[f]
        diag = None
        idx = cat.id_of(x)
        for s in cat.hom(x, out.cone.apex):
            if cat.comp[(p0, s)] == idx and cat.comp[(p1, s)] == idx:
                diag = s
                break
        if diag is None:
            raise EngineInconsistency("kernel pair without diagonal")
        res = (out, p0, p1, diag)
    cat._cache[key] = res
    return res


# -- recognition procedures ---------------------------------------------------


def is_equalizer_of(cat, e, f, g) -> bool:
    """Does e satisfy the equalizer universal property for (f, g)?"""
    if cat.cods[e] != cat.doms[f]:
        return False
    if cat.comp[(f, e)] != cat.comp[(g, e)]:
        return False
    p = cat.doms[e]
    for t in cat.objects:
        eq = [u for u in cat.hom(t, cat.doms[f])
              if cat.comp[(f, u)] == cat.comp[(g, u)]]
        seen = {cat.comp[(e, w)] for w in cat.hom(t, p)}
        if len(seen) != len(cat.hom(t, p)) or len(eq) != len(seen):
            return False
        if any(u not in seen for u in eq):
            return False
    return True


def is_coequalizer_of(cat, q, f, g) -> bool:
    """Does q satisfy the coequalizer universal property for (f, g)?"""
    if cat.doms[q] != cat.cods[f]:
        return False
    if cat.comp[(q, f)] != cat.comp[(q, g)]:
        return False
    p = cat.cods[q]
    for t in cat.objects:
        coeq = [u for u in cat.hom(cat.cods[f], t)
                if cat.comp[(u, f)] == cat.comp[(u, g)]]
        seen = {cat.comp[(w, q)] for w in cat.hom(p, t)}
        if len(seen) != len(cat.hom(p, t)) or len(coeq) != len(seen):
            return False
        if any(u not in seen for u in coeq):
            return False
    return True


def is_cokernel_epi(cat, q, budget=DEFAULT_BUDGET) -> Verdict:
    """Is q a cokernel (of anything)?  Canonical route: q is a cokernel
    iff it satisfies the cokernel property of its own kernel.  Falls back
    to the existential scan over candidate kernels when the kernel is out
    of budget."""
    key = ("is_coker", q, budget.signature())
    if key in cat._cache:
        return cat._cache[key]
    cat._cache[key] = v = _is_cokernel_epi(cat, q, budget)
    return v


def _is_cokernel_epi(cat, q, budget):
    ker = kernel(cat, q, budget)
    if ker.found:
        k = kernel_mor(ker)
        z = cat.zero_mor(cat.doms[k], cat.cods[k])
        if is_coequalizer_of(cat, q, k, z):
            return Verdict(HOLDS, note="cokernel of its own kernel")
        return Verdict(FAILS, make_witness(
            cat, {"q": q, "k": k},
            note="q does not satisfy the cokernel property of its kernel k"))
    if ker.absent:
        return _is_cokernel_scan(cat, q, budget)
    return Verdict(OOB, note="kernel search " + ker.note)


def _is_cokernel_scan(cat, q, budget):
    x = cat.doms[q]
    n = 0
    for f in cat.hom_pairs_into(x):
        n += 1
        if n > budget.max_parallel_pairs:
            return Verdict(OOB, note="candidate scan exceeded pair budget")
        z = cat.zero_mor(cat.doms[f], x)
        if is_coequalizer_of(cat, q, f, z):
            return Verdict(HOLDS, note=f"cokernel of {cat.names[f]}")
    return Verdict(FAILS, make_witness(
        cat, {"q": q}, note="no morphism in the category has q as cokernel"))


def is_kernel_mono(cat, m, budget=DEFAULT_BUDGET) -> Verdict:
    """Is m a kernel (of anything)?  Dual of is_cokernel_epi."""
    key = ("is_ker", m, budget.signature())
    if key in cat._cache:
        return cat._cache[key]
    cat._cache[key] = v = _is_kernel_mono(cat, m, budget)
    return v


def _is_kernel_mono(cat, m, budget):
    cok = cokernel(cat, m, budget)
    if cok.found:
        q = cokernel_mor(cok)
        z = cat.zero_mor(cat.doms[q], cat.cods[q])
        if is_equalizer_of(cat, m, q, z):
            return Verdict(HOLDS, note="kernel of its own cokernel")
        return Verdict(FAILS, make_witness(
            cat, {"m": m, "q": q},
            note="m does not satisfy the kernel property of its cokernel q"))
    if cok.absent:
        return _is_kernel_scan(cat, m, budget)
    return Verdict(OOB, note="cokernel search " + cok.note)


def _is_kernel_scan(cat, m, budget):
    y = cat.cods[m]
    n = 0
    for g in cat.mors_out_of(y):
        n += 1
        if n > budget.max_parallel_pairs:
            return Verdict(OOB, note="candidate scan exceeded pair budget")
        z = cat.zero_mor(y, cat.cods[g])
        if is_equalizer_of(cat, m, g, z):
            return Verdict(HOLDS, note=f"kernel of {cat.names[g]}")
    return Verdict(FAILS, make_witness(
        cat, {"m": m}, note="no morphism in the category has m as kernel"))


def is_regular_epi(cat, f, budget=DEFAULT_BUDGET, route="auto") -> Verdict:
    """Is f a coequalizer of some parallel pair?

    route="kernel_pair": decide via the coequalizer property of the
    kernel pair (complete whenever the kernel pair exists in budget).
    route="search": existential scan over all parallel pairs.
    route="auto": kernel pair when available, scan otherwise; the two are
    cross-checked by the property test suite, and any observed
    disagreement raises EngineInconsistency.
    """
    key = ("is_regepi", f, budget.signature(), route)
    if key in cat._cache:
        return cat._cache[key]
    cat._cache[key] = v = _is_regular_epi(cat, f, budget, route)
    return v


def _is_regular_epi(cat, f, budget, route):
    if route in ("auto", "kernel_pair"):
        out, p0, p1, _ = kernel_pair(cat, f, budget)
        if out.found:
            if is_coequalizer_of(cat, f, p0, p1):
                return Verdict(HOLDS, note="coequalizer of its kernel pair")
            return Verdict(FAILS, make_witness(
                cat, {"f": f, "p0": p0, "p1": p1},
                note="f does not coequalize its kernel pair"))
        if route == "kernel_pair":
            return Verdict(OOB, note="kernel pair not available: " + out.note)
    return _regular_epi_scan(cat, f, budget)


def _regular_epi_scan(cat, f, budget):
    x = cat.doms[f]
    n = 0
    for w in cat.objects:
        hom_wx = cat.hom(w, x)
        for u in hom_wx:
            for v in hom_wx:
                n += 1
                if n > budget.max_parallel_pairs:
                    return Verdict(OOB, note="parallel-pair budget exhausted")
                if is_coequalizer_of(cat, f, u, v):
                    return Verdict(
                        HOLDS, note=f"coequalizer of ({cat.names[u]}, {cat.names[v]})")
    return Verdict(FAILS, make_witness(
        cat, {"f": f},
        note="no parallel pair in the category has f as coequalizer"))


@dataclass(frozen=True)
class ImageFactorization:
    status: str
    e: int | None = None       # regular-epi part
    m: int | None = None       # mono part
    note: str = ""
    alternatives: int = 0      # other (e', m') pairs found, all isomorphic


def image_factorization(cat, f, budget=DEFAULT_BUDGET) -> ImageFactorization:
    """All factorizations f = m∘e with m mono and e a regular epi, checked
    to be unique up to the connecting isomorphism; returns the canonical
    one (backend sub-table image first, else least ids)."""
    key = ("image", f, budget.signature())
    if key in cat._cache:
        return cat._cache[key]
    cat._cache[key] = v = _image_factorization(cat, f, budget)
    return v


def _image_factorization(cat, f, budget):
    monos = cat.mono_set()
    found = []
    oob = False
    for mid_obj in cat.objects:
        for e in cat.hom(cat.doms[f], mid_obj):
            for m in cat.hom(mid_obj, cat.cods[f]):
                if m not in monos or cat.comp[(m, e)] != f:
                    continue
                v = is_regular_epi(cat, e, budget)
                if v.inconclusive:
                    oob = True
                    continue
                if v.holds:
                    found.append((e, m))
    if not found:
        if oob:
            return ImageFactorization(OOB, note="regular-epi checks out of budget")
        return ImageFactorization("absent", note="no (regular epi, mono) factorization")
    for (e1, m1), (e2, m2) in itertools.combinations(found, 2):
        if not _connected_by_iso(cat, e1, m1, e2, m2):
            raise EngineInconsistency(
                "image factorizations not unique up to isomorphism for "
                + cat.names[f])
    e, m = _preferred_image(cat, f, found)
    return ImageFactorization("found", e, m, alternatives=len(found) - 1)


def _connected_by_iso(cat, e1, m1, e2, m2):
    i1, i2 = cat.cods[e1], cat.cods[e2]
    for h in cat.hom(i1, i2):
        if cat.is_iso(h) and cat.comp[(h, e1)] == e2 and cat.comp[(m2, h)] == m1:
            return True
    return False


def _preferred_image(cat, f, found):
    if cat.view is not None:
        hint = cat.view.image_hint(f)
        if hint is not None and hint in found:
            return hint
    return min(found)


# -- split-five-lemma style helper: factor through a mono ---------------------


def factor_through_mono(cat, m, f):
    """The unique g with m∘g = f, or None (m must be mono)."""
    gs = _factorizations_through(cat, m, f)
    return gs[0] if gs else None
