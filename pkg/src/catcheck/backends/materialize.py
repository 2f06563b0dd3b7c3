"""Turn a backend's bounded object window into an explicit FinCategory.

The resulting category carries a `BackendView` (as `cat.view`) that keeps
the raw carriers around.  The view serves two purposes:

* canonical-representative hints: the limit solver asks it which of the
  isomorphic kernel legs or image objects is the native one;
* escape analysis: when a construction's carrier is larger than the
  window bound, the view builds it natively and verifies its universal
  property against every window object, so the engine can report an
  answer instead of giving up.
"""
from __future__ import annotations

from dataclasses import dataclass

from .. import fincat
from ..fincat import Cocone, Cone, Diagram, FinCategory
from .theories import Backend, Hom, compose


class WindowTooLarge(Exception):
    """Raised when a window has more objects than the budget allows."""

    def __init__(self, count: int, max_objects: int):
        super().__init__(
            f"window has {count} objects, budget allows {max_objects}")
        self.count = count
        self.max_objects = max_objects


@dataclass(frozen=True)
class Certification:
    """Outcome of verifying an out-of-window construction.

    status is "certified" (apex built natively, universal property
    verified against every window object), "failed" (native apex exists
    but the verification did not go through), or "unavailable" (the
    theory has no native construction for this shape).
    """
    status: str
    apex_label: str = ""
    apex_size: int = 0
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "certified"


def _inverse(mapping: tuple) -> tuple:
    inv = [0] * len(mapping)
    for x, y in enumerate(mapping):
        inv[y] = x
    return tuple(inv)


class BackendView:
    def __init__(self, backend: Backend, bound: int, labels, raws):
        self.backend = backend
        self.bound = bound
        self.labels = tuple(labels)
        self.raw = dict(zip(labels, raws))
        self._label_of_raw = {r: l for l, r in zip(labels, raws)}
        self.cat: FinCategory | None = None
        self._mor_hom: dict[int, Hom] = {}
        self._mor_of: dict[tuple, int] = {}

    # -- registry ---------------------------------------------------------

    def _register(self, mid: int, dom_label, cod_label, hom: Hom):
        self._mor_hom[mid] = hom
        self._mor_of[(dom_label, cod_label, hom.mapping)] = mid

    def hom_of(self, mid: int) -> Hom:
        return self._mor_hom[mid]

    def mor_id_of(self, dom_label, cod_label, mapping) -> int:
        return self._mor_of[(dom_label, cod_label, mapping)]

    def window_mor(self, h: Hom):
        """Window morphism id of a raw hom whose endpoints both have
        window representatives; None when either endpoint escapes."""
        hit_s = self.find_window(h.src)
        hit_d = self.find_window(h.dst)
        if hit_s is None or hit_d is None:
            return None
        (ls, ps), (ld, pd) = hit_s, hit_d
        inv = _inverse(ps)
        mapping = tuple(pd[h.mapping[inv[i]]] for i in range(len(inv)))
        return self._mor_of.get((ls, ld, mapping))

    def find_window(self, raw):
        """(label, iso mapping raw -> window representative), or None
        when the carrier is larger than anything in the window."""
        if raw in self._label_of_raw:
            label = self._label_of_raw[raw]
            return label, tuple(range(self.backend.size(raw)))
        n = self.backend.size(raw)
        for label in self.labels:
            cand = self.raw[label]
            if self.backend.size(cand) != n:
                continue
            phi = self.backend.find_iso_between(raw, cand)
            if phi is not None:
                return label, phi
        return None

    # -- canonical-representative hints ------------------------------------

    def _transport_leg_out(self, raw_apex, leg: Hom, hit) -> int:
        """Window id of leg∘phi⁻¹ where phi: raw_apex -> window rep."""
        label, phi = hit
        inv = _inverse(phi)
        mapping = tuple(leg.mapping[inv[i]] for i in range(len(inv)))
        return self.mor_id_of(label, self._label_of_raw[leg.dst], mapping)

    def _transport_leg_in(self, raw_apex, leg: Hom, hit) -> int:
        """Window id of phi∘leg where phi: raw_apex -> window rep."""
        label, phi = hit
        mapping = tuple(phi[y] for y in leg.mapping)
        return self.mor_id_of(self._label_of_raw[leg.src], label, mapping)

    def kernel_hint(self, f: int):
        raw_k, incl = self.backend.native_kernel(self.hom_of(f))
        hit = self.find_window(raw_k)
        if hit is None:
            return None
        return self._transport_leg_out(raw_k, incl, hit)

    def cokernel_hint(self, f: int):
        raw_c, proj = self.backend.native_cokernel(self.hom_of(f))
        hit = self.find_window(raw_c)
        if hit is None:
            return None
        return self._transport_leg_in(raw_c, proj, hit)

    def image_hint(self, f: int):
        raw_i, e, m = self.backend.native_image(self.hom_of(f))
        hit = self.find_window(raw_i)
        if hit is None:
            return None
        return (self._transport_leg_in(raw_i, e, hit),
                self._transport_leg_out(raw_i, m, hit))

    # -- native constructions transported into the window -------------------

    def native_limit_cone(self, kind: str, *args):
        """Build the native construction and place it inside the window.
        Returns (diagram, Cone) or (diagram, None) when the carrier
        escapes the bound.  kind: product | equalizer | pullback."""
        cat = self.cat
        if kind == "product":
            x, y = args
            d = Diagram.discrete([x, y])
            raw, p0, p1 = self.backend.native_product(self.raw[x], self.raw[y])
            legs = (p0, p1)
        elif kind == "equalizer":
            f, g = args
            d = Diagram.parallel(cat, f, g)
            raw, incl = self.backend.native_equalizer(self.hom_of(f),
                                                      self.hom_of(g))
            legs = (incl, compose(self.hom_of(f), incl))
        elif kind == "pullback":
            f, g = args
            d = Diagram.cospan(cat, f, g)
            raw, p0, p1 = self.backend.native_pullback(self.hom_of(f),
                                                       self.hom_of(g))
            legs = (p0, compose(self.hom_of(f), p0), p1)
        else:
            raise ValueError(f"unknown limit kind {kind!r}")
        hit = self.find_window(raw)
        if hit is None:
            return d, None
        cone = Cone(hit[0], tuple(self._transport_leg_out(raw, leg, hit)
                                  for leg in legs))
        return d, cone

    def native_colimit_cocone(self, kind: str, *args):
        """kind: coproduct | coequalizer.  Returns (diagram, Cocone),
        (diagram, None) on escape, or (diagram, "unavailable")."""
        cat = self.cat
        if kind == "coproduct":
            x, y = args
            d = Diagram.discrete([x, y])
            made = self.backend.native_coproduct(self.raw[x], self.raw[y])
            if made is None:
                return d, "unavailable"
            raw, i0, i1 = made
            legs = (i0, i1)
        elif kind == "coequalizer":
            f, g = args
            d = Diagram.parallel(cat, f, g)
            raw, proj = self.backend.native_coequalizer(self.hom_of(f),
                                                        self.hom_of(g))
            legs = (compose(proj, self.hom_of(f)), proj)
        else:
            raise ValueError(f"unknown colimit kind {kind!r}")
        hit = self.find_window(raw)
        if hit is None:
            return d, None
        cocone = Cocone(hit[0], tuple(self._transport_leg_in(raw, leg, hit)
                                      for leg in legs))
        return d, cocone

    # -- escape certification -----------------------------------------------

    def _certify_limit(self, d: Diagram, raw_apex, raw_legs) -> Certification:
        """Universal property of an out-of-window apex, checked against
        every window object by counting and post-composition."""
        for s, t, m in d.arrows:
            if compose(self.hom_of(m), raw_legs[s]).mapping != raw_legs[t].mapping:
                return Certification("failed", note="legs do not commute")
        for t_label in self.cat.objects:
            rt = self.raw[t_label]
            ncones = len(fincat._cones(self.cat, d, t_label))
            maps = self.backend.homs(rt, raw_apex)
            if len(maps) != ncones:
                return Certification(
                    "failed", self.backend.label(raw_apex),
                    self.backend.size(raw_apex),
                    f"hom count from {t_label} is {len(maps)}, "
                    f"cone count is {ncones}")
            seen = {tuple(compose(leg, u).mapping for leg in raw_legs)
                    for u in maps}
            if len(seen) != ncones:
                return Certification(
                    "failed", self.backend.label(raw_apex),
                    self.backend.size(raw_apex),
                    f"post-composition not injective at {t_label}")
        return Certification("certified", self.backend.label(raw_apex),
                             self.backend.size(raw_apex),
                             "universal property verified against all "
                             "window objects")

    def _certify_colimit(self, d: Diagram, raw_apex, raw_legs) -> Certification:
        for s, t, m in d.arrows:
            if compose(raw_legs[t], self.hom_of(m)).mapping != raw_legs[s].mapping:
                return Certification("failed", note="legs do not commute")
        for t_label in self.cat.objects:
            rt = self.raw[t_label]
            ncones = len(fincat._cocones(self.cat, d, t_label))
            maps = self.backend.homs(raw_apex, rt)
            if len(maps) != ncones:
                return Certification(
                    "failed", self.backend.label(raw_apex),
                    self.backend.size(raw_apex),
                    f"hom count into {t_label} is {len(maps)}, "
                    f"cocone count is {ncones}")
            seen = {tuple(compose(u, leg).mapping for leg in raw_legs)
                    for u in maps}
            if len(seen) != ncones:
                return Certification(
                    "failed", self.backend.label(raw_apex),
                    self.backend.size(raw_apex),
                    f"pre-composition not injective at {t_label}")
        return Certification("certified", self.backend.label(raw_apex),
                             self.backend.size(raw_apex),
                             "universal property verified against all "
                             "window objects")

    def certify_product(self, x, y) -> Certification:
        raw, p0, p1 = self.backend.native_product(self.raw[x], self.raw[y])
        return self._certify_limit(Diagram.discrete([x, y]), raw, (p0, p1))

    def certify_coproduct(self, x, y) -> Certification:
        made = self.backend.native_coproduct(self.raw[x], self.raw[y])
        if made is None:
            return Certification(
                "unavailable",
                note="theory has no finite coproduct construction")
        raw, i0, i1 = made
        return self._certify_colimit(Diagram.discrete([x, y]), raw, (i0, i1))

    def certify_equalizer(self, f, g) -> Certification:
        fh, gh = self.hom_of(f), self.hom_of(g)
        raw, incl = self.backend.native_equalizer(fh, gh)
        return self._certify_limit(Diagram.parallel(self.cat, f, g), raw,
                                   (incl, compose(fh, incl)))

    def certify_coequalizer(self, f, g) -> Certification:
        fh, gh = self.hom_of(f), self.hom_of(g)
        raw, proj = self.backend.native_coequalizer(fh, gh)
        return self._certify_colimit(Diagram.parallel(self.cat, f, g), raw,
                                     (compose(proj, fh), proj))

    def _certified_pullback(self, f, g):
        fh, gh = self.hom_of(f), self.hom_of(g)
        raw, p0, p1 = self.backend.native_pullback(fh, gh)
        cert = self._certify_limit(Diagram.cospan(self.cat, f, g), raw,
                                   (p0, compose(fh, p0), p1))
        return cert, raw, p0, p1

    def certify_pullback(self, f, g) -> Certification:
        return self._certified_pullback(f, g)[0]

    # -- native decisions for out-of-window instances ------------------------

    def pullback_leg_is_cokernel(self, q, n):
        """For the pullback of q along n (both window morphisms), decide
        natively whether the leg over dom(n) is a cokernel.  Returns
        (bool, Certification of the pullback cone)."""
        cert, raw, p0, p1 = self._certified_pullback(q, n)
        return self.backend.native_is_cokernel(p1), cert

    def pullback_leg_is_regular_epi(self, f, g):
        cert, raw, p0, p1 = self._certified_pullback(f, g)
        return self.backend.native_is_regular_epi(p1), cert

    def relation_transitive(self, r0, r1):
        """Transitivity of a jointly monic pair (r0, r1): R -> X when the
        composability pullback escapes the window: search for the native
        composite map t with r0∘t = r0∘q0 and r1∘t = r1∘q1."""
        cert, raw, q0, q1 = self._certified_pullback(r1, r0)
        r0h, r1h = self.hom_of(r0), self.hom_of(r1)
        want0 = compose(r0h, q0).mapping
        want1 = compose(r1h, q1).mapping
        found = any(compose(r0h, t).mapping == want0
                    and compose(r1h, t).mapping == want1
                    for t in self.backend.homs(raw, r0h.src))
        return found, cert

    def relation_is_kernel_pair(self, r0, r1, q):
        """When the kernel pair of q escapes the window, decide natively
        whether the jointly monic pair (r0, r1) is that kernel pair: the
        unique comparison into the certified native pullback of (q, q)
        must be an isomorphism.  Returns (bool, Certification)."""
        cert, raw, p0, p1 = self._certified_pullback(q, q)
        if not cert.ok:
            return False, cert
        r0h, r1h = self.hom_of(r0), self.hom_of(r1)
        cands = [t for t in self.backend.homs(r0h.src, raw)
                 if compose(p0, t).mapping == r0h.mapping
                 and compose(p1, t).mapping == r1h.mapping]
        if len(cands) != 1:
            raise fincat.EngineInconsistency(
                "certified pullback without a unique comparison morphism")
        return self.backend.is_iso(cands[0]), cert

    def kernel_pair_has_coequalizer(self, f):
        """When the kernel pair of f escapes the window, decide natively
        whether it admits a coequalizer.  Returns (bool, Certification)."""
        cert, raw, p0, p1 = self._certified_pullback(f, f)
        if not cert.ok:
            return False, cert
        return self.backend.native_coequalizer(p0, p1) is not None, cert

    def copair_is_cokernel(self, k, s):
        """Decide whether [k, s]: dom(k) ⨿ dom(s) -> X is a cokernel when
        the coproduct escapes the window.  Returns (bool | None, cert)."""
        kh, sh = self.hom_of(k), self.hom_of(s)
        x, y = self._label_of_raw[kh.src], self._label_of_raw[sh.src]
        made = self.backend.native_coproduct(self.raw[x], self.raw[y])
        if made is None:
            return None, Certification(
                "unavailable",
                note="theory has no finite coproduct construction")
        raw, i0, i1 = made
        cert = self._certify_colimit(Diagram.discrete([x, y]), raw, (i0, i1))
        if not cert.ok:
            return None, cert
        cands = [u for u in self.backend.homs(raw, kh.dst)
                 if compose(u, i0).mapping == kh.mapping
                 and compose(u, i1).mapping == sh.mapping]
        if len(cands) != 1:
            raise fincat.EngineInconsistency(
                "certified coproduct without a unique copairing")
        return self.backend.native_is_cokernel(cands[0]), cert


def materialize(backend: Backend, bound: int, budget=None,
                skeletal: bool = True, validate: bool = True) -> FinCategory:
    """Explicit composition table over the backend objects of size at
    most `bound`, one object per isomorphism class when skeletal."""
    raws = (backend.objects_up_to(bound) if skeletal
            else backend.all_objects_up_to(bound))
    order = sorted(range(len(raws)),
                   key=lambda i: (backend.size(raws[i]), backend.label(raws[i]), i))
    raws = tuple(raws[i] for i in order)
    if budget is not None and len(raws) > budget.max_objects:
        raise WindowTooLarge(len(raws), budget.max_objects)

    labels = []
    used = set()
    for r in raws:
        base = backend.label(r)
        lab = base
        k = 2
        while lab in used:
            lab = f"{base}~{k}"
            k += 1
        used.add(lab)
        labels.append(lab)

    view = BackendView(backend, bound, labels, raws)
    morphisms = []
    names = []
    identities = {}
    by_mapping = {}
    for a in labels:
        ra = view.raw[a]
        ident = backend.identity(ra).mapping
        for b in labels:
            hs = backend.homs(ra, view.raw[b])
            for k, h in enumerate(hs):
                mid = len(morphisms)
                morphisms.append((a, b))
                if a == b and h.mapping == ident:
                    names.append(f"id:{a}")
                    identities[a] = mid
                else:
                    names.append(f"{a}->{b}:{k}")
                view._register(mid, a, b, h)
                by_mapping[(a, b, h.mapping)] = mid

    comp = {}
    n = len(morphisms)
    outgoing = {}
    for mid in range(n):
        outgoing.setdefault(morphisms[mid][0], []).append(mid)
    for f in range(n):
        fa, fb = morphisms[f]
        fh = view.hom_of(f)
        for g in outgoing.get(fb, ()):
            gc = morphisms[g][1]
            gm = view.hom_of(g).mapping
            comp[(g, f)] = by_mapping[(fa, gc, tuple(gm[x] for x in fh.mapping))]

    cat = FinCategory(labels, morphisms, identities, comp, names,
                      label=f"{backend.name}[{bound}]", validate=validate)
    cat.view = view
    view.cat = cat
    return cat
