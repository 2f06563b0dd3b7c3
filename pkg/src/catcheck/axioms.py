"""Category-level checkers: existence of (co)limits, the split-extension
conditions, protomodularity, regularity, exactness, and the ladder that
combines them.

Every checker returns a CheckReport.  Verdicts are relative to the given
window: "fails" always carries a re-checkable witness, and anything the
budget or the window bound prevented from being decided is reported as
out-of-budget with the skipped instances listed, never silently dropped.

For backend windows, a construction whose carrier is larger than the
bound is not treated as missing: the backend builds it natively and the
view certifies its universal property against every window object.  For
categories loaded from a file the world is closed, so absence after an
exhaustive search is a definite failure.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from . import fincat
from .budget import DEFAULT_BUDGET, Budget
from .fincat import (
    FAILS,
    HOLDS,
    OOB,
    Diagram,
    EngineInconsistency,
    Verdict,
    make_witness,
)
from .report import CheckReport

MAX_LISTED_SKIPS = 12


# -- instance shapes ----------------------------------------------------------


@dataclass(frozen=True)
class SplitExtension:
    """p∘s = id with k the kernel of p."""
    p: int
    s: int
    k: int

    def objects(self, cat):
        return cat.doms[self.k], cat.doms[self.p], cat.cods[self.p]


@dataclass(frozen=True)
class ReflexivePair:
    """Parallel epimorphisms f, g with common section s; k = ker f."""
    f: int
    g: int
    s: int
    k: int


@dataclass(frozen=True)
class EquivRelation:
    """Jointly monic r0, r1: R -> X with reflexivity section delta and
    symmetry twist tau; transitivity is certified at construction."""
    r0: int
    r1: int
    delta: int
    tau: int
    transitivity: str        # "window" | "native"


@dataclass(frozen=True)
class SSFLInstance:
    """Morphism of split extensions; verticals l (kernels), m (middle),
    n (bases)."""
    upper: SplitExtension    # q = upper.p, r = upper.s, i = upper.k
    lower: SplitExtension    # p = lower.p, s = lower.s, k = lower.k
    l: int
    m: int
    n: int


class _Scan:
    """Bookkeeping for an instance sweep: failures, skipped instances,
    counters, and the wall-clock deadline."""

    def __init__(self, budget: Budget):
        self.budget = budget
        self.deadline = budget.deadline()
        self.failures: list[dict] = []
        self.skipped: list[str] = []
        self.n_skipped = 0
        self.counts: dict[str, int] = {}
        self.notes: list[str] = []

    def bump(self, key, by=1):
        self.counts[key] = self.counts.get(key, 0) + by

    def skip(self, note: str):
        # only the first few notes are kept; sweeps can skip millions
        self.n_skipped += 1
        if len(self.skipped) < MAX_LISTED_SKIPS:
            self.skipped.append(note)

    def fail(self, witness: dict):
        self.failures.append(witness)

    def expired(self) -> bool:
        if time.monotonic() > self.deadline:
            self.skip("wall clock budget exhausted; remaining instances "
                      "not examined")
            return True
        return False

    def report(self, check: str, claim: str, **extra) -> CheckReport:
        if self.failures:
            verdict = FAILS
        elif self.n_skipped:
            verdict = OOB
        else:
            verdict = HOLDS
        details = dict(self.counts)
        if self.n_skipped:
            details["skipped"] = self.n_skipped
            details["skipped_notes"] = self.skipped
        if len(self.failures) > 1:
            details["failures"] = len(self.failures)
        if self.notes:
            details["notes"] = self.notes[:MAX_LISTED_SKIPS]
        details.update({k: v for k, v in extra.items()
                        if v not in (None, "", [], {})})
        witness = self.failures[0] if self.failures else None
        return CheckReport(check, verdict, claim, self.budget.as_dict(),
                           witness=witness, details=details)


def _no_zero_report(cat, check, claim, budget) -> CheckReport:
    w = {"roles": {}, "objects": list(cat.objects), "fragment": "",
         "note": "no object is both initial and terminal"}
    return CheckReport(check, FAILS, claim, budget.as_dict(), witness=w)


def _apex_guard_report(cat, check, claim, budget):
    """Out-of-budget without scanning when no solver pass can start.

    With fewer candidate apexes than objects every limit and colimit
    search returns out-of-budget up front, so no absence and no found
    cone can be certified.  Every failure path of the guarded sweeps
    runs through such a certificate, which makes the final verdict
    out-of-budget no matter what the scans would have seen.  Skipping
    them keeps zero-budget runs fast instead of walking millions of
    parallel pairs to reach the same answer."""
    if budget.max_candidate_apexes >= len(cat.objects):
        return None
    scan = _Scan(budget)
    scan.skip("apex budget below the object count; every limit and "
              "colimit search is out of budget before it starts")
    return scan.report(check, claim)


# -- enumeration ---------------------------------------------------------------


def split_extensions(cat, budget=DEFAULT_BUDGET):
    """All (split epi, section, kernel) triples; every section of every
    split epi is its own instance.  Returns (extensions, skipped notes)."""
    key = ("axioms.splitexts", budget.signature())
    if key in cat._cache:
        return cat._cache[key]
    exts, skipped = [], []
    for p in range(cat.n_mors):
        y = cat.cods[p]
        idy = cat.id_of(y)
        secs = [s for s in cat.hom(y, cat.doms[p]) if cat.comp[(p, s)] == idy]
        if not secs:
            continue
        out = fincat.kernel(cat, p, budget)
        if out.inconclusive:
            skipped.append(f"kernel of {cat.names[p]} out of budget; "
                           f"{len(secs)} split extensions skipped")
            continue
        if out.absent:
            if cat.view is not None:
                raise EngineInconsistency(
                    f"backend window lost the kernel of {cat.names[p]}")
            skipped.append(f"{cat.names[p]} splits but has no kernel; "
                           "extensions skipped")
            continue
        k = fincat.kernel_mor(out)
        exts.extend(SplitExtension(p, s, k) for s in secs)
    cat._cache[key] = (exts, skipped)
    return exts, skipped


def reflexive_pairs(cat, budget=DEFAULT_BUDGET):
    """Ordered parallel pairs of epimorphisms with a common section."""
    key = ("axioms.reflpairs", budget.signature())
    if key in cat._cache:
        return cat._cache[key]
    pairs, skipped = [], []
    epis = cat.epi_set()
    by_sig = {}
    for f in epis:
        by_sig.setdefault((cat.doms[f], cat.cods[f]), []).append(f)
    for (a, b), fs in sorted(by_sig.items(),
                             key=lambda kv: (str(kv[0][0]), str(kv[0][1]))):
        idb = cat.id_of(b)
        for f in fs:
            out = fincat.kernel(cat, f, budget)
            if out.inconclusive:
                skipped.append(f"kernel of {cat.names[f]} out of budget")
                continue
            if out.absent:
                skipped.append(f"{cat.names[f]} has no kernel; "
                               "reflexive pairs on it skipped")
                continue
            k = fincat.kernel_mor(out)
            for g in fs:
                for s in cat.hom(b, a):
                    if cat.comp[(f, s)] == idb and cat.comp[(g, s)] == idb:
                        pairs.append(ReflexivePair(f, g, s, k))
    cat._cache[key] = (pairs, skipped)
    return pairs, skipped


def jointly_monic(cat, r0, r1, budget=DEFAULT_BUDGET) -> Verdict:
    """(r0, r1) jointly monic: u |-> (r0 u, r1 u) injective everywhere."""
    a = cat.doms[r0]
    pairs = 0
    for t in cat.objects:
        h = cat.hom(t, a)
        pairs += len(h) * len(h)
        if pairs > budget.max_parallel_pairs:
            return Verdict(OOB, note="parallel-pair budget exhausted")
        seen = {}
        for u in h:
            sig = (cat.comp[(r0, u)], cat.comp[(r1, u)])
            if sig in seen:
                return Verdict(FAILS, make_witness(
                    cat, {"r0": r0, "r1": r1, "u": seen[sig], "v": u},
                    note="u != v with r0∘u = r0∘v and r1∘u = r1∘v"))
            seen[sig] = u
    return Verdict(HOLDS)


def _relation_transitive(cat, r0, r1, budget, scan):
    """Transitivity via the composability pullback; None when undecidable."""
    out = _pullback_cached(cat, r1, r0, budget)
    if out.found:
        p0, _, p1 = out.cone.legs
        w0 = cat.comp[(r0, p0)]
        w1 = cat.comp[(r1, p1)]
        ok = any(cat.comp[(r0, t)] == w0 and cat.comp[(r1, t)] == w1
                 for t in cat.hom(out.cone.apex, cat.doms[r0]))
        return ("window" if ok else None)
    if out.inconclusive:
        scan.skip(f"transitivity pullback for ({cat.names[r0]}, "
                  f"{cat.names[r1]}) out of budget")
        return "skip"
    if cat.view is not None:
        found, cert = cat.view.relation_transitive(r0, r1)
        if not cert.ok:
            raise EngineInconsistency(
                "native composability pullback failed certification: "
                + cert.note)
        return ("native" if found else None)
    scan.skip(f"composability pullback for ({cat.names[r0]}, "
              f"{cat.names[r1]}) absent; transitivity undecidable")
    return "skip"


def equivalence_relations(cat, budget=DEFAULT_BUDGET):
    """Internal equivalence relations, one representative per subobject
    isomorphism class.  Returns (relations, skipped notes)."""
    key = ("axioms.eqrels", budget.signature())
    if key in cat._cache:
        return cat._cache[key]
    scan = _Scan(budget)
    rels = []
    for x in cat.objects:
        found_on_x = []
        idx = cat.id_of(x)
        for r_obj in cat.objects:
            homs = cat.hom(r_obj, x)
            for r0 in homs:
                for r1 in homs:
                    delta = next(
                        (d for d in cat.hom(x, r_obj)
                         if cat.comp[(r0, d)] == idx
                         and cat.comp[(r1, d)] == idx), None)
                    if delta is None:
                        continue
                    tau = next(
                        (t for t in cat.hom(r_obj, r_obj)
                         if cat.comp[(r0, t)] == r1
                         and cat.comp[(r1, t)] == r0), None)
                    if tau is None:
                        continue
                    jm = jointly_monic(cat, r0, r1, budget)
                    if jm.inconclusive:
                        scan.skip(f"joint monicity of ({cat.names[r0]}, "
                                  f"{cat.names[r1]}) out of budget")
                        continue
                    if not jm.holds:
                        continue
                    if any(_same_relation(cat, (r0, r1), other)
                           for other in found_on_x):
                        continue
                    trans = _relation_transitive(cat, r0, r1, budget, scan)
                    if trans in (None, "skip"):
                        continue
                    found_on_x.append((r0, r1))
                    rels.append(EquivRelation(r0, r1, delta, tau, trans))
    cat._cache[key] = (rels, scan.skipped)
    return rels, scan.skipped


def _same_relation(cat, a, b):
    """Subobject isomorphism between two jointly monic pairs over X."""
    (r0, r1), (s0, s1) = a, b
    for h in cat.hom(cat.doms[r0], cat.doms[s0]):
        if cat.is_iso(h) and cat.comp[(s0, h)] == r0 \
                and cat.comp[(s1, h)] == r1:
            return True
    return False


# -- shared cached verdicts -----------------------------------------------------


def _pullback_cached(cat, f, g, budget):
    key = ("axioms.pb", f, g, budget.signature())
    if key not in cat._cache:
        cat._cache[key] = fincat.pullback(cat, f, g, budget)
    return cat._cache[key]


def _regular_epi(cat, f, budget) -> Verdict:
    key = ("axioms.regepi", f, budget.signature())
    if key not in cat._cache:
        cat._cache[key] = fincat.is_regular_epi(cat, f, budget)
    return cat._cache[key]


def _strong_epi(cat, f, budget) -> Verdict:
    key = ("axioms.strepi", f, budget.signature())
    if key not in cat._cache:
        cat._cache[key] = fincat.is_strong_epi(cat, f, budget)
    return cat._cache[key]


# -- existence of (co)limits: A1 and the finite-completeness rung ------------------


def _resolve_absent_limit(cat, kind, args, scan, label):
    """Window search exhausted with no apex.  Backend windows fall back
    to the native construction; file categories mean definite absence."""
    view = cat.view
    if view is None:
        roles = {}
        extra = []
        if kind in ("product",):
            extra = list(args)
        else:
            roles = dict(zip(("f", "g"), args))
        scan.fail(make_witness(
            cat, roles, extra_objects=extra,
            note=f"no {kind} of {label}: every apex and cone exhausted"))
        return
    d, cone = view.native_limit_cone(kind, *args)
    if cone is not None:
        raise EngineInconsistency(
            f"solver found no {kind} of {label} although the native "
            "construction lies in the window")
    cert = {"product": view.certify_product,
            "equalizer": view.certify_equalizer,
            "pullback": view.certify_pullback}[kind](*args)
    if cert.ok:
        scan.bump("escaped")
        if len(scan.notes) < MAX_LISTED_SKIPS:
            scan.notes.append(
                f"{kind} of {label} has carrier {cert.apex_label} "
                f"(size {cert.apex_size}) outside the window; {cert.note}")
        return
    raise EngineInconsistency(
        f"native {kind} of {label} failed certification: {cert.note}")


def _resolve_absent_colimit(cat, kind, args, scan, label):
    view = cat.view
    if view is None:
        roles = {}
        extra = []
        if kind == "coproduct":
            extra = list(args)
        else:
            roles = dict(zip(("f", "g"), args))
        scan.fail(make_witness(
            cat, roles, extra_objects=extra,
            note=f"no {kind} of {label}: every apex and cocone exhausted"))
        return
    d, cocone = view.native_colimit_cocone(kind, *args)
    if cocone == "unavailable":
        scan.skip(f"{kind} of {label}: no finite construction in this "
                  "theory; existence undecided")
        return
    if cocone is not None:
        raise EngineInconsistency(
            f"solver found no {kind} of {label} although the native "
            "construction lies in the window")
    cert = {"coproduct": view.certify_coproduct,
            "coequalizer": view.certify_coequalizer}[kind](*args)
    if cert.ok:
        scan.bump("escaped")
        if len(scan.notes) < MAX_LISTED_SKIPS:
            scan.notes.append(
                f"{kind} of {label} has carrier {cert.apex_label} "
                f"(size {cert.apex_size}) outside the window; {cert.note}")
        return
    raise EngineInconsistency(
        f"native {kind} of {label} failed certification: {cert.note}")


def _parallel_pairs(cat):
    for (a, b), homs in sorted(cat._hom.items(),
                               key=lambda kv: (str(kv[0][0]), str(kv[0][1]))):
        for i, f in enumerate(homs):
            for g in homs[i:]:
                yield f, g


def _sweep_products(cat, budget, scan, early_out):
    for x, y in itertools.combinations_with_replacement(cat.objects, 2):
        if scan.expired() or (early_out and scan.failures):
            return
        scan.bump("product_pairs")
        out = fincat.product(cat, x, y, budget)
        if out.found:
            continue
        if out.inconclusive:
            scan.skip(f"product of ({x}, {y}): {out.note}")
        else:
            _resolve_absent_limit(cat, "product", (x, y), scan, f"({x}, {y})")


def _sweep_equalizers(cat, budget, scan, early_out):
    for f, g in _parallel_pairs(cat):
        if scan.expired() or (early_out and scan.failures):
            return
        scan.bump("parallel_pairs")
        if f == g:
            continue   # the identity is the equalizer
        out = fincat.equalizer(cat, f, g, budget)
        if out.found:
            continue
        label = f"({cat.names[f]}, {cat.names[g]})"
        if out.inconclusive:
            scan.skip(f"equalizer of {label}: {out.note}")
        else:
            _resolve_absent_limit(cat, "equalizer", (f, g), scan, label)


def _sweep_coproducts(cat, budget, scan, early_out):
    for x, y in itertools.combinations_with_replacement(cat.objects, 2):
        if scan.expired() or (early_out and scan.failures):
            return
        scan.bump("coproduct_pairs")
        out = fincat.coproduct(cat, x, y, budget)
        if out.found:
            continue
        if out.inconclusive:
            scan.skip(f"coproduct of ({x}, {y}): {out.note}")
        else:
            _resolve_absent_colimit(cat, "coproduct", (x, y), scan,
                                    f"({x}, {y})")


def _sweep_coequalizers(cat, budget, scan, early_out, pairs=None):
    it = pairs if pairs is not None else _parallel_pairs(cat)
    for f, g in it:
        if scan.expired() or (early_out and scan.failures):
            return
        scan.bump("coequalized_pairs")
        if f == g:
            continue   # the identity is the coequalizer
        out = fincat.coequalizer(cat, f, g, budget)
        if out.found:
            continue
        label = f"({cat.names[f]}, {cat.names[g]})"
        if out.inconclusive:
            scan.skip(f"coequalizer of {label}: {out.note}")
        else:
            _resolve_absent_colimit(cat, "coequalizer", (f, g), scan, label)


CLAIM_A1 = ("zero object, binary products, binary coproducts, equalizers "
            "and coequalizers of all parallel pairs exist (window-relative)")
CLAIM_A1P = ("zero object, binary products, binary coproducts, all "
             "equalizers, and coequalizers of internal equivalence "
             "relations exist (window-relative)")


def check_A1(cat, budget=DEFAULT_BUDGET, variant="full",
             all_witnesses=False) -> CheckReport:
    check = "A1" if variant == "full" else "A1p"
    claim = CLAIM_A1 if variant == "full" else CLAIM_A1P
    if cat.zero_object() is None:
        return _no_zero_report(cat, check, claim, budget)
    guard = _apex_guard_report(cat, check, claim, budget)
    if guard is not None:
        return guard
    scan = _Scan(budget)
    early = not all_witnesses
    _sweep_products(cat, budget, scan, early)
    _sweep_equalizers(cat, budget, scan, early)
    _sweep_coproducts(cat, budget, scan, early)
    if variant == "full":
        _sweep_coequalizers(cat, budget, scan, early)
    else:
        rels, rskip = equivalence_relations(cat, budget)
        for note in rskip:
            scan.skip(note)
        scan.bump("equivalence_relations", len(rels))
        _sweep_coequalizers(cat, budget, scan, early,
                            pairs=[(r.r0, r.r1) for r in rels])
    return scan.report(check, claim)


def check_finite_completeness(cat, budget=DEFAULT_BUDGET,
                              all_witnesses=False) -> CheckReport:
    claim = ("zero object, binary products and equalizers exist "
             "(window-relative), hence all finite limits")
    check = "pointed-finitely-complete"
    if cat.zero_object() is None:
        return _no_zero_report(cat, check, claim, budget)
    guard = _apex_guard_report(cat, check, claim, budget)
    if guard is not None:
        return guard
    scan = _Scan(budget)
    early = not all_witnesses
    _sweep_products(cat, budget, scan, early)
    _sweep_equalizers(cat, budget, scan, early)
    return scan.report(check, claim)


# -- split-extension conditions: (A), A2, (F) -------------------------------------


CLAIM_CONDA = ("for every split epimorphism p with section s and kernel "
               "k, the pair (k, s) is a strongly epimorphic family")


def _ext_witness(cat, ext, v: Verdict, extra_roles=None) -> dict:
    """Re-key a family/epi witness with the split-extension role names.
    The inner witness morphisms are folded into the fragment so that the
    result re-verifies on its own."""
    roles = {"p": ext.p, "s": ext.s, "k": ext.k}
    roles.update(extra_roles or {})
    inner = (v.witness or {}).get("roles", {})
    for key, name in inner.items():
        if key in ("f0", "f1"):
            continue    # those are k and s under their family aliases
        new_key = {"g0": "gk", "g1": "gs"}.get(key, key)
        if new_key not in roles:
            roles[new_key] = cat.find(name)
    return make_witness(cat, roles,
                        note=(v.witness or {}).get("note", v.note))


def condition_A_for(cat, ext: SplitExtension, budget=DEFAULT_BUDGET) -> Verdict:
    v = fincat.is_strongly_epimorphic_family(cat, [ext.k, ext.s], budget)
    if v.failed:
        return Verdict(FAILS, _ext_witness(cat, ext, v))
    return v


def check_condA(cat, budget=DEFAULT_BUDGET, all_witnesses=False) -> CheckReport:
    if cat.zero_object() is None:
        return _no_zero_report(cat, "condA", CLAIM_CONDA, budget)
    scan = _Scan(budget)
    exts, skipped = split_extensions(cat, budget)
    for note in skipped:
        scan.skip(note)
    scan.bump("split_extensions", len(exts))
    for ext in exts:
        if scan.expired() or (not all_witnesses and scan.failures):
            break
        v = condition_A_for(cat, ext, budget)
        if v.failed:
            scan.fail(v.witness)
        elif v.inconclusive:
            scan.skip(f"family check for p={cat.names[ext.p]}, "
                      f"s={cat.names[ext.s]}: {v.note}")
    return scan.report("condA", CLAIM_CONDA)


def _copairing(cat, cocone, k, s):
    """The unique u out of the sum with u∘inj0 = k and u∘inj1 = s."""
    x = cat.cods[k]
    i0, i1 = cocone.legs
    us = [u for u in cat.hom(cocone.apex, x)
          if cat.comp[(u, i0)] == k and cat.comp[(u, i1)] == s]
    if len(us) != 1:
        raise EngineInconsistency(
            "sum exists but the copairing is not unique")
    return us[0]


CLAIM_A2 = ("for every split epimorphism p with section s and kernel k, "
            "the copairing [k, s] out of the sum K + Y is a cokernel")


def check_A2(cat, budget=DEFAULT_BUDGET, all_witnesses=False) -> CheckReport:
    if cat.zero_object() is None:
        return _no_zero_report(cat, "A2", CLAIM_A2, budget)
    scan = _Scan(budget)
    exts, skipped = split_extensions(cat, budget)
    for note in skipped:
        scan.skip(note)
    scan.bump("split_extensions", len(exts))
    regular_reading_disagreements = []
    for ext in exts:
        if scan.expired() or (not all_witnesses and scan.failures):
            break
        kobj, xobj, yobj = ext.objects(cat)
        out = fincat.coproduct(cat, kobj, yobj, budget)
        if out.inconclusive:
            scan.skip(f"sum of ({kobj}, {yobj}) out of budget")
            continue
        if out.found:
            u = _copairing(cat, out.cone, ext.k, ext.s)
            vc = fincat.is_cokernel_epi(cat, u, budget)
            vr = _regular_epi(cat, u, budget)
            if vc.holds != vr.holds and not (vc.inconclusive
                                             or vr.inconclusive):
                regular_reading_disagreements.append(
                    f"[k,s] for p={cat.names[ext.p]}: cokernel "
                    f"{vc.status}, regular {vr.status}")
            if vc.failed:
                scan.fail(_ext_witness(cat, ext, vc, {"u": u}))
            elif vc.inconclusive:
                scan.skip(f"cokernel test for p={cat.names[ext.p]}: {vc.note}")
            else:
                scan.bump("held_in_window")
            continue
        # sum absent in the window
        if cat.view is None:
            scan.fail(make_witness(
                cat, {"p": ext.p, "s": ext.s, "k": ext.k},
                note="the sum K + Y does not exist, so the copairing "
                     "[k, s] cannot be formed"))
            continue
        dec, cert = cat.view.copair_is_cokernel(ext.k, ext.s)
        if dec is None:
            # no finite sum in this theory: fall back to the family route,
            # which decides the same property (copairing strong iff the
            # family is strongly epimorphic; strong and regular epis
            # coincide with cokernels under the other axioms)
            va = condition_A_for(cat, ext, budget)
            if va.failed:
                scan.fail(va.witness)
            elif va.inconclusive:
                scan.skip(f"family fallback for p={cat.names[ext.p]}: "
                          f"{va.note}")
            else:
                scan.bump("held_by_family_route")
            continue
        if dec:
            scan.bump("held_by_native_escape")
            if len(scan.notes) < MAX_LISTED_SKIPS:
                scan.notes.append(
                    f"sum for p={cat.names[ext.p]} escapes the window "
                    f"({cert.apex_label}, size {cert.apex_size}); "
                    "copairing decided natively")
        else:
            scan.fail(make_witness(
                cat, {"p": ext.p, "s": ext.s, "k": ext.k},
                note=f"copairing out of the native sum {cert.apex_label} "
                     "is not a cokernel"))
    return scan.report(
        "A2", CLAIM_A2,
        regular_reading_disagreements=regular_reading_disagreements)


CLAIM_CONDF = ("for every split epimorphism p with section s and kernel "
               "k, the copairing [k, s] out of the sum K + Y is a strong "
               "epimorphism")


def check_condF(cat, budget=DEFAULT_BUDGET, all_witnesses=False) -> CheckReport:
    if cat.zero_object() is None:
        return _no_zero_report(cat, "condF", CLAIM_CONDF, budget)
    scan = _Scan(budget)
    exts, skipped = split_extensions(cat, budget)
    for note in skipped:
        scan.skip(note)
    scan.bump("split_extensions", len(exts))
    for ext in exts:
        if scan.expired() or (not all_witnesses and scan.failures):
            break
        kobj, xobj, yobj = ext.objects(cat)
        out = fincat.coproduct(cat, kobj, yobj, budget)
        if out.inconclusive:
            scan.skip(f"sum of ({kobj}, {yobj}) out of budget")
            continue
        if out.found:
            u = _copairing(cat, out.cone, ext.k, ext.s)
            v = _strong_epi(cat, u, budget)
            if v.failed:
                scan.fail(_ext_witness(cat, ext, v, {"u": u}))
            elif v.inconclusive:
                scan.skip(f"strong-epi test for p={cat.names[ext.p]}: "
                          f"{v.note}")
            continue
        # absent sum: the copairing is strong iff the family is strongly
        # epimorphic, so the family route decides the same property
        va = condition_A_for(cat, ext, budget)
        if va.failed:
            scan.fail(va.witness)
        elif va.inconclusive:
            scan.skip(f"family fallback for p={cat.names[ext.p]}: {va.note}")
        else:
            scan.bump("held_by_family_route")
    return scan.report("condF", CLAIM_CONDF)


# -- conditions (B) through (E) ---------------------------------------------------


CLAIM_CONDB = ("for parallel epimorphisms f, g with a common section and "
               "k = ker f, a morphism is a coequalizer of (f, g) exactly "
               "when it is a cokernel of g∘k")


def condition_B_for(cat, rp: ReflexivePair, q: int) -> tuple[bool, bool]:
    """(is q a coequalizer of (f, g), is q a cokernel of g∘k)."""
    as_coeq = fincat.is_coequalizer_of(cat, q, rp.f, rp.g)
    gk = cat.comp[(rp.g, rp.k)]
    z = cat.zero_mor(cat.doms[gk], cat.cods[gk])
    as_coker = fincat.is_coequalizer_of(cat, q, gk, z)
    return as_coeq, as_coker


def check_condB(cat, budget=DEFAULT_BUDGET, all_witnesses=False) -> CheckReport:
    if cat.zero_object() is None:
        return _no_zero_report(cat, "condB", CLAIM_CONDB, budget)
    scan = _Scan(budget)
    rps, skipped = reflexive_pairs(cat, budget)
    for note in skipped:
        scan.skip(note)
    scan.bump("reflexive_pairs", len(rps))
    for rp in rps:
        if scan.expired() or (not all_witnesses and scan.failures):
            break
        b = cat.cods[rp.f]
        for q in cat.mors_out_of(b):
            as_coeq, as_coker = condition_B_for(cat, rp, q)
            if as_coeq != as_coker:
                scan.fail(make_witness(
                    cat, {"f": rp.f, "g": rp.g, "s": rp.s, "k": rp.k,
                          "q": q},
                    note=f"q is {'a' if as_coeq else 'not a'} coequalizer "
                         f"of (f, g) but {'a' if as_coker else 'not a'} "
                         "cokernel of g∘k"))
                if not all_witnesses:
                    break
    return scan.report("condB", CLAIM_CONDB)


CLAIM_CONDC = "every morphism with zero kernel is a monomorphism"


def check_condC(cat, budget=DEFAULT_BUDGET, all_witnesses=False) -> CheckReport:
    if cat.zero_object() is None:
        return _no_zero_report(cat, "condC", CLAIM_CONDC, budget)
    scan = _Scan(budget)
    zero = cat.zero_object()
    for f in range(cat.n_mors):
        if scan.expired() or (not all_witnesses and scan.failures):
            break
        out = fincat.kernel(cat, f, budget)
        if out.inconclusive:
            scan.skip(f"kernel of {cat.names[f]} out of budget")
            continue
        if out.absent:
            scan.skip(f"{cat.names[f]} has no kernel; instance undecidable")
            continue
        k = fincat.kernel_mor(out)
        if not cat.is_zero_object(cat.doms[k]):
            continue
        scan.bump("zero_kernel_morphisms")
        v = fincat.is_mono(cat, f, budget)
        if v.holds:
            continue
        if v.inconclusive:
            scan.skip(f"mono test for {cat.names[f]}: {v.note}")
            continue
        roles = {"f": f, "k": k}
        inner = v.witness["roles"]
        uv = {r: cat.find(inner[r]) for r in ("u", "v")}
        roles.update(uv)
        scan.fail(make_witness(
            cat, roles, extra_objects=[zero],
            note="kernel of f is the zero object, yet u != v with "
                 "f∘u = f∘v"))
    return scan.report("condC", CLAIM_CONDC)


CLAIM_CONDD = ("in a commutative ladder where i is the kernel of q and "
               "l, k, n are monomorphisms, the middle morphism m is a "
               "monomorphism")


def check_condD(cat, budget=DEFAULT_BUDGET, all_witnesses=False) -> CheckReport:
    if cat.zero_object() is None:
        return _no_zero_report(cat, "condD", CLAIM_CONDD, budget)
    scan = _Scan(budget)
    monos = cat.mono_set()
    for q in range(cat.n_mors):
        if scan.expired() or (not all_witnesses and scan.failures):
            break
        out = fincat.kernel(cat, q, budget)
        if out.inconclusive:
            scan.skip(f"kernel of {cat.names[q]} out of budget")
            continue
        if out.absent:
            scan.skip(f"{cat.names[q]} has no kernel; ladders on it "
                      "undecidable")
            continue
        i = fincat.kernel_mor(out)
        z = cat.doms[q]
        w = cat.cods[q]
        scan.bump("kernels_scanned")
        for m in cat.mors_out_of(z):
            if m in monos:
                continue        # conclusion already true
            mi = cat.comp[(m, i)]
            if mi not in monos:
                continue        # no mono pair (k, l) can close the square
            x = cat.cods[m]
            hit = None
            for p in cat.mors_out_of(x):
                pm = cat.comp[(p, m)]
                for n in cat.hom(w, cat.cods[p]):
                    if n in monos and cat.comp[(n, q)] == pm:
                        hit = (p, n)
                        break
                if hit:
                    break
            if hit is None:
                continue
            p, n = hit
            roles = {"q": q, "i": i, "p": p, "m": m, "n": n,
                     "k": mi, "l": cat.id_of(cat.doms[i])}
            vm = fincat.is_mono(cat, m, budget)
            if vm.failed:
                inner = vm.witness["roles"]
                roles.update({r: cat.find(inner[r]) for r in ("u", "v")})
            scan.fail(make_witness(
                cat, roles,
                note="ladder premises hold (i = ker q; l, k, n mono) "
                     "but m is not a monomorphism"))
            if not all_witnesses:
                break
    return scan.report("condD", CLAIM_CONDD)


CLAIM_CONDE = "every regular epimorphism is a cokernel"


def check_condE(cat, budget=DEFAULT_BUDGET, all_witnesses=False) -> CheckReport:
    if cat.zero_object() is None:
        return _no_zero_report(cat, "condE", CLAIM_CONDE, budget)
    scan = _Scan(budget)
    for f in range(cat.n_mors):
        if scan.expired() or (not all_witnesses and scan.failures):
            break
        vr = _regular_epi(cat, f, budget)
        if vr.inconclusive:
            scan.skip(f"regular-epi test for {cat.names[f]}: {vr.note}")
            continue
        if not vr.holds:
            continue
        scan.bump("regular_epis")
        vc = fincat.is_cokernel_epi(cat, f, budget)
        if vc.holds:
            continue
        if vc.inconclusive:
            scan.skip(f"cokernel test for {cat.names[f]}: {vc.note}")
            continue
        roles = {"q": f}
        for key, name in (vc.witness or {}).get("roles", {}).items():
            if key not in roles:
                roles[key] = cat.find(name)
        scan.fail(make_witness(
            cat, roles,
            note="q is a regular epimorphism but not a cokernel: "
                 + (vc.witness or {}).get("note", "")))
    return scan.report("condE", CLAIM_CONDE)


# -- the split short five lemma ----------------------------------------------------


CLAIM_SSFL_ISO = ("in every morphism of split extensions, if the outer "
                  "verticals are isomorphisms then so is the middle one")
CLAIM_SSFL_STRONG = ("in every morphism of split extensions, if the outer "
                     "verticals are strong epimorphisms then so is the "
                     "middle one")


def ssfl_instances(cat, exts, deadline=None):
    """Yield all morphisms of split extensions.  The base vertical n =
    p∘m∘r is forced by the commutation equations, and the kernel vertical
    l is the factorization of m∘i through k.  Stops at the deadline; the
    consumer records expiry through its own clock.  Instance counts grow
    with the square of the extension count, so this must stay lazy."""
    for up in exts:
        q, r, i = up.p, up.s, up.k
        z = cat.doms[q]
        for lo in exts:
            if deadline is not None and time.monotonic() > deadline:
                return
            p, s, k = lo.p, lo.s, lo.k
            x = cat.doms[p]
            for m in cat.hom(z, x):
                n = cat.comp[(p, cat.comp[(m, r)])]
                if cat.comp[(n, q)] != cat.comp[(p, m)]:
                    continue
                if cat.comp[(m, r)] != cat.comp[(s, n)]:
                    continue
                mi = cat.comp[(m, i)]
                l = fincat.factor_through_mono(cat, k, mi)
                if l is None:
                    raise EngineInconsistency(
                        "m∘i kills p but does not factor through ker p")
                yield SSFLInstance(up, lo, l, m, n)


def _ssfl_witness(cat, inst, note) -> dict:
    roles = {"i": inst.upper.k, "q": inst.upper.p, "r": inst.upper.s,
             "k": inst.lower.k, "p": inst.lower.p, "s": inst.lower.s,
             "l": inst.l, "m": inst.m, "n": inst.n}
    return make_witness(cat, roles, note=note)


def check_ssfl(cat, budget=DEFAULT_BUDGET, variant="iso",
               all_witnesses=False) -> CheckReport:
    claim = CLAIM_SSFL_ISO if variant == "iso" else CLAIM_SSFL_STRONG
    check = f"ssfl-{variant}"
    if cat.zero_object() is None:
        return _no_zero_report(cat, check, claim, budget)
    scan = _Scan(budget)
    exts, skipped = split_extensions(cat, budget)
    for note in skipped:
        scan.skip(note)
    for inst in ssfl_instances(cat, exts, scan.deadline):
        if scan.expired() or (not all_witnesses and scan.failures):
            break
        scan.bump("diagrams")
        if variant == "iso":
            if not (cat.is_iso(inst.l) and cat.is_iso(inst.n)):
                continue
            scan.bump("premise_instances")
            if not cat.is_iso(inst.m):
                scan.fail(_ssfl_witness(
                    cat, inst,
                    "outer verticals l, n are isomorphisms but the middle "
                    "vertical m is not"))
        else:
            vl = _strong_epi(cat, inst.l, budget)
            vn = _strong_epi(cat, inst.n, budget)
            if vl.inconclusive or vn.inconclusive:
                scan.skip("strong-epi premise tests out of budget for one "
                          "diagram")
                continue
            if not (vl.holds and vn.holds):
                continue
            scan.bump("premise_instances")
            vm = _strong_epi(cat, inst.m, budget)
            if vm.inconclusive:
                scan.skip("strong-epi conclusion test out of budget")
            elif not vm.holds:
                scan.fail(_ssfl_witness(
                    cat, inst,
                    "outer verticals l, n are strong epimorphisms but the "
                    "middle vertical m is not"))
    else:
        # the generator may have stopped at the deadline; record that
        if not scan.failures:
            scan.expired()
    return scan.report(check, claim)


# -- protomodularity ----------------------------------------------------------------


CLAIM_PROTO = ("the window is protomodular: kernel and section form a "
               "strongly epimorphic family for every split epimorphism "
               "(checked against the split-short-five route)")


def check_protomodular(cat, budget=DEFAULT_BUDGET,
                       all_witnesses=False) -> CheckReport:
    ra = check_condA(cat, budget, all_witnesses)
    rs = check_ssfl(cat, budget, "strong_epi", all_witnesses)
    rc = check_condC(cat, budget, all_witnesses)
    if rs.failed or rc.failed:
        route2 = FAILS
    elif rs.inconclusive or rc.inconclusive:
        route2 = OOB
    else:
        route2 = HOLDS
    details = {"route_family": ra.verdict, "route_ssfl_and_kernels": route2,
               "ssfl_strong_epi": rs.verdict, "zero_kernel_mono": rc.verdict}
    if ra.verdict != OOB and route2 != OOB and ra.verdict != route2:
        w = ra.witness or rs.witness or rc.witness
        return CheckReport(
            "proto", FAILS, CLAIM_PROTO, budget.as_dict(), witness=w,
            details=details | {
                "route_disagreement": True,
                "note": "the two independent protomodularity routes "
                        "disagree; treat as an engine defect until triaged"})
    verdict = ra.verdict if ra.verdict != OOB else route2
    witness = ra.witness if ra.failed else (rs.witness or rc.witness)
    return CheckReport("proto", verdict, CLAIM_PROTO, budget.as_dict(),
                       witness=witness if verdict == FAILS else None,
                       details=details)


# -- regularity: kernel-pair coequalizers, pullback stability, images ------------------


CLAIM_REGULAR = ("kernel pairs have coequalizers and regular epimorphisms "
                 "are stable under pullback (window-relative)")


def check_regularity(cat, budget=DEFAULT_BUDGET,
                     all_witnesses=False) -> CheckReport:
    if cat.zero_object() is None:
        return _no_zero_report(cat, "regular", CLAIM_REGULAR, budget)
    guard = _apex_guard_report(cat, "regular", CLAIM_REGULAR, budget)
    if guard is not None:
        return guard
    scan = _Scan(budget)
    # kernel pairs have coequalizers
    for f in range(cat.n_mors):
        if scan.expired() or (not all_witnesses and scan.failures):
            break
        out, p0, p1, _ = fincat.kernel_pair(cat, f, budget)
        if out.found:
            co = fincat.coequalizer(cat, p0, p1, budget)
            if co.found:
                continue
            if co.inconclusive:
                scan.skip(f"coequalizer of the kernel pair of "
                          f"{cat.names[f]} out of budget")
            elif cat.view is not None:
                raise EngineInconsistency(
                    "kernel-pair coequalizer missing from a backend window")
            else:
                scan.fail(make_witness(
                    cat, {"f": f, "p0": p0, "p1": p1},
                    note="the kernel pair of f has no coequalizer"))
        elif out.inconclusive:
            scan.skip(f"kernel pair of {cat.names[f]} out of budget")
        elif cat.view is not None:
            ok, cert = cat.view.kernel_pair_has_coequalizer(f)
            if not cert.ok:
                raise EngineInconsistency(
                    "native kernel pair failed certification: " + cert.note)
            if ok:
                scan.bump("escaped_kernel_pairs")
            else:
                scan.fail(make_witness(
                    cat, {"f": f},
                    note="native kernel pair admits no coequalizer"))
        else:
            scan.fail(make_witness(
                cat, {"f": f}, note="f has no kernel pair"))
    # pullback stability of regular epimorphisms
    for f in range(cat.n_mors):
        if scan.expired() or (not all_witnesses and scan.failures):
            break
        vr = _regular_epi(cat, f, budget)
        if vr.inconclusive:
            scan.skip(f"regular-epi status of {cat.names[f]} undecided: "
                      f"{vr.note}")
            continue
        if not vr.holds:
            continue
        scan.bump("regular_epis")
        for g in cat.hom_pairs_into(cat.cods[f]):
            out = _pullback_cached(cat, f, g, budget)
            if out.found:
                leg = out.cone.legs[2]
                v2 = _regular_epi(cat, leg, budget)
                if v2.holds:
                    continue
                if v2.inconclusive:
                    scan.skip(f"pulled-back leg of {cat.names[f]} along "
                              f"{cat.names[g]}: {v2.note}")
                    continue
                scan.fail(make_witness(
                    cat, {"f": f, "g": g, "leg": leg},
                    note="f is a regular epimorphism but its pullback "
                         "along g is not"))
                if not all_witnesses:
                    break
            elif out.inconclusive:
                scan.skip(f"pullback of {cat.names[f]} along "
                          f"{cat.names[g]} out of budget")
            elif cat.view is not None:
                dec, cert = cat.view.pullback_leg_is_regular_epi(f, g)
                if not cert.ok:
                    raise EngineInconsistency(
                        "native pullback failed certification: " + cert.note)
                if dec:
                    scan.bump("escaped_pullbacks")
                else:
                    scan.fail(make_witness(
                        cat, {"f": f, "g": g},
                        note=f"native pullback ({cert.apex_label}) of the "
                             "regular epimorphism f along g has a "
                             "non-regular projection"))
                    if not all_witnesses:
                        break
            else:
                scan.bump("vacuous_absent_pullbacks")
    # image factorizations (informational; regularity in the presence of
    # finite completeness makes these exist, and other checks rely on them)
    images = 0
    for f in range(cat.n_mors):
        try:
            im = fincat.image_factorization(cat, f, budget)
        except EngineInconsistency:
            raise
        if im.status == "found":
            images += 1
    scan.counts["images_found"] = images
    scan.counts["morphisms"] = cat.n_mors
    return scan.report("regular", CLAIM_REGULAR)


# -- A3: pullbacks of cokernels ------------------------------------------------------


CLAIM_A3 = "the pullback of a cokernel along any morphism is a cokernel"


def check_A3(cat, budget=DEFAULT_BUDGET, all_witnesses=False) -> CheckReport:
    if cat.zero_object() is None:
        return _no_zero_report(cat, "A3", CLAIM_A3, budget)
    guard = _apex_guard_report(cat, "A3", CLAIM_A3, budget)
    if guard is not None:
        return guard
    scan = _Scan(budget)
    for q in range(cat.n_mors):
        if scan.expired() or (not all_witnesses and scan.failures):
            break
        vq = fincat.is_cokernel_epi(cat, q, budget)
        if vq.inconclusive:
            scan.skip(f"cokernel status of {cat.names[q]} undecided: "
                      f"{vq.note}")
            continue
        if not vq.holds:
            continue
        scan.bump("cokernels")
        for n in cat.hom_pairs_into(cat.cods[q]):
            out = _pullback_cached(cat, q, n, budget)
            if out.found:
                leg = out.cone.legs[2]
                v2 = fincat.is_cokernel_epi(cat, leg, budget)
                if v2.holds:
                    continue
                if v2.inconclusive:
                    scan.skip(f"pulled-back leg of {cat.names[q]} along "
                              f"{cat.names[n]}: {v2.note}")
                    continue
                scan.fail(make_witness(
                    cat, {"q": q, "n": n, "leg": leg},
                    note="q is a cokernel but its pullback along n is not"))
                if not all_witnesses:
                    break
            elif out.inconclusive:
                scan.skip(f"pullback of {cat.names[q]} along "
                          f"{cat.names[n]} out of budget")
            elif cat.view is not None:
                dec, cert = cat.view.pullback_leg_is_cokernel(q, n)
                if not cert.ok:
                    raise EngineInconsistency(
                        "native pullback failed certification: " + cert.note)
                if dec:
                    scan.bump("escaped_pullbacks")
                else:
                    scan.fail(make_witness(
                        cat, {"q": q, "n": n},
                        note=f"native pullback ({cert.apex_label}) of the "
                             "cokernel q along n has a non-cokernel "
                             "projection"))
                    if not all_witnesses:
                        break
            else:
                scan.bump("vacuous_absent_pullbacks")
    return scan.report("A3", CLAIM_A3)


# -- A4: images of kernels ------------------------------------------------------------


CLAIM_A4 = "the image of a kernel under a cokernel is a kernel"
CLAIM_A4P = ("in a commutative square g∘f = k∘h with f a kernel, g and h "
             "regular epimorphisms and k a monomorphism, k is a kernel")


def _kernel_monos(cat, budget, scan):
    ks = []
    for m in sorted(cat.mono_set()):
        v = fincat.is_kernel_mono(cat, m, budget)
        if v.inconclusive:
            scan.skip(f"kernel status of {cat.names[m]} undecided: {v.note}")
        elif v.holds:
            ks.append(m)
    return ks


def check_A4(cat, budget=DEFAULT_BUDGET, all_witnesses=False) -> CheckReport:
    if cat.zero_object() is None:
        return _no_zero_report(cat, "A4", CLAIM_A4, budget)
    guard = _apex_guard_report(cat, "A4", CLAIM_A4, budget)
    if guard is not None:
        return guard
    scan = _Scan(budget)
    kernels = _kernel_monos(cat, budget, scan)
    scan.bump("kernel_monos", len(kernels))
    for k in kernels:
        if scan.expired() or (not all_witnesses and scan.failures):
            break
        x = cat.cods[k]
        for g in cat.mors_out_of(x):
            vg = fincat.is_cokernel_epi(cat, g, budget)
            if vg.inconclusive:
                scan.skip(f"cokernel status of {cat.names[g]} undecided")
                continue
            if not vg.holds:
                continue
            h = cat.comp[(g, k)]
            im = fincat.image_factorization(cat, h, budget)
            if im.status == OOB:
                scan.skip(f"image of {cat.names[g]}∘{cat.names[k]} out of "
                          "budget")
                continue
            if im.status == "absent":
                scan.skip(f"no image factorization for "
                          f"{cat.names[g]}∘{cat.names[k]}")
                continue
            scan.bump("instances")
            v = fincat.is_kernel_mono(cat, im.m, budget)
            if v.holds:
                continue
            if v.inconclusive:
                scan.skip(f"kernel test for the image of "
                          f"{cat.names[g]}∘{cat.names[k]}: {v.note}")
                continue
            scan.fail(make_witness(
                cat, {"k": k, "g": g, "e": im.e, "m": im.m},
                note="the image m of g∘k is not a kernel"))
            if not all_witnesses:
                break
    return scan.report("A4", CLAIM_A4)


def check_A4p(cat, budget=DEFAULT_BUDGET, all_witnesses=False) -> CheckReport:
    if cat.zero_object() is None:
        return _no_zero_report(cat, "A4p", CLAIM_A4P, budget)
    guard = _apex_guard_report(cat, "A4p", CLAIM_A4P, budget)
    if guard is not None:
        return guard
    scan = _Scan(budget)
    monos = cat.mono_set()
    kernels = _kernel_monos(cat, budget, scan)
    scan.bump("kernel_monos", len(kernels))
    for f in kernels:
        if scan.expired() or (not all_witnesses and scan.failures):
            break
        a, b = cat.doms[f], cat.cods[f]
        for h in cat.mors_out_of(a):
            vh = _regular_epi(cat, h, budget)
            if vh.inconclusive:
                scan.skip(f"regular-epi status of {cat.names[h]} undecided")
                continue
            if not vh.holds:
                continue
            for g in cat.mors_out_of(b):
                vg = _regular_epi(cat, g, budget)
                if vg.inconclusive:
                    scan.skip(f"regular-epi status of {cat.names[g]} "
                              "undecided")
                    continue
                if not vg.holds:
                    continue
                gf = cat.comp[(g, f)]
                for k in cat.hom(cat.cods[h], cat.cods[g]):
                    if k not in monos or cat.comp[(k, h)] != gf:
                        continue
                    scan.bump("squares")
                    v = fincat.is_kernel_mono(cat, k, budget)
                    if v.holds:
                        continue
                    if v.inconclusive:
                        scan.skip(f"kernel test for {cat.names[k]}: {v.note}")
                        continue
                    scan.fail(make_witness(
                        cat, {"f": f, "g": g, "h": h, "k": k},
                        note="square premises hold but k is not a kernel"))
                    if not all_witnesses:
                        break
    return scan.report("A4p", CLAIM_A4P)


# -- exactness --------------------------------------------------------------------


CLAIM_EXACT = ("every internal equivalence relation is a kernel pair: the "
               "comparison into the kernel pair of its coequalizer is an "
               "isomorphism")


def _comparison_into_kernel_pair(cat, r0, r1, p0, p1, apex):
    ts = [t for t in cat.hom(cat.doms[r0], apex)
          if cat.comp[(p0, t)] == r0 and cat.comp[(p1, t)] == r1]
    if len(ts) != 1:
        raise EngineInconsistency(
            "comparison into the kernel pair is not unique")
    return ts[0]


def _proof_path_strong_epi(cat, er, i, p0, p1, apex, budget, scan):
    """Independent route for "the comparison i is an isomorphism": decide
    mono(i) and strong-epi(i) by cancellation and diagonal-fill-in scans,
    and replay the factorization scaffolding the argument rests on.

    Returns (verdict, scaffold_violations) where verdict is True, False,
    or None (out of budget) and scaffold_violations lists any structural
    step of the argument that failed to hold in this window."""
    r0, r1, delta = er.r0, er.r1, er.delta
    scaffold = []
    ko = fincat.kernel(cat, r0, budget)
    if not ko.found:
        scan.skip("kernel of r0 unavailable; scaffolding replay skipped")
    else:
        kk = fincat.kernel_mor(ko)
        rk = cat.comp[(r1, kk)]
        im = fincat.image_factorization(cat, rk, budget)
        if im.status != "found":
            scan.skip("image of r1∘(ker r0) unavailable; scaffolding "
                      "replay skipped")
        else:
            p_mor, l_mor = im.e, im.m
            lsrc = cat.cods[p_mor]
            base = cat.cods[r0]
            phis = [t for t in cat.hom(lsrc, apex)
                    if cat.comp[(p0, t)] == cat.zero_mor(lsrc, base)
                    and cat.comp[(p1, t)] == l_mor]
            if len(phis) != 1:
                scaffold.append("no unique factorization of the image "
                                "through the kernel pair")
            else:
                phi = phis[0]
                z = cat.zero_mor(apex, base)
                claims = {
                    "phi is the kernel of p0":
                        fincat.is_equalizer_of(cat, phi, p0, z),
                    "i∘(ker r0) equals phi∘p":
                        cat.comp[(i, kk)] == cat.comp[(phi, p_mor)],
                    "p0∘(i∘delta) is the identity":
                        cat.comp[(p0, cat.comp[(i, delta)])]
                        == cat.id_of(base),
                }
                vstr = _strong_epi(cat, p_mor, budget)
                if vstr.inconclusive:
                    scan.skip("strong-epi test on the image part out of "
                              "budget")
                else:
                    claims["image part is a strong epi"] = vstr.holds
                scaffold.extend(name for name, ok in claims.items()
                                if not ok)
    vm = fincat.is_mono(cat, i, budget)
    vs = _strong_epi(cat, i, budget)
    if vm.inconclusive or vs.inconclusive:
        scan.skip("mono or strong-epi test on the comparison out of budget")
        return None, scaffold
    return (vm.holds and vs.holds), scaffold


def check_exactness(cat, budget=DEFAULT_BUDGET,
                    all_witnesses=False) -> CheckReport:
    if cat.zero_object() is None:
        return _no_zero_report(cat, "exact", CLAIM_EXACT, budget)
    scan = _Scan(budget)
    rels, skipped = equivalence_relations(cat, budget)
    for note in skipped:
        scan.skip(note)
    scan.bump("equivalence_relations", len(rels))
    disagreements = []
    scaffold_violations = []
    for er in rels:
        if scan.expired() or (not all_witnesses and scan.failures):
            break
        co = fincat.coequalizer(cat, er.r0, er.r1, budget)
        if co.inconclusive:
            scan.skip(f"coequalizer of ({cat.names[er.r0]}, "
                      f"{cat.names[er.r1]}) out of budget")
            continue
        if co.absent:
            if cat.view is not None:
                raise EngineInconsistency(
                    "backend window lost a relation coequalizer")
            scan.skip(f"relation ({cat.names[er.r0]}, {cat.names[er.r1]}) "
                      "has no coequalizer; instance undecidable")
            continue
        q = co.cone.legs[1]
        out, p0, p1, _ = fincat.kernel_pair(cat, q, budget)
        if out.inconclusive:
            scan.skip(f"kernel pair of {cat.names[q]} out of budget")
            continue
        if out.found:
            i = _comparison_into_kernel_pair(cat, er.r0, er.r1, p0, p1,
                                             out.cone.apex)
            direct = cat.is_iso(i)
            proof, scaffold = _proof_path_strong_epi(
                cat, er, i, p0, p1, out.cone.apex, budget, scan)
            rel_label = f"({cat.names[er.r0]}, {cat.names[er.r1]})"
            scaffold_violations.extend(
                f"relation {rel_label}: {s}" for s in scaffold)
            if proof is not None:
                if proof != direct:
                    disagreements.append(
                        f"relation {rel_label}: direct iso test {direct}, "
                        f"mono-plus-strong-epi route {proof}")
                else:
                    scan.bump("routes_compared")
            if not direct:
                scan.fail(make_witness(
                    cat, {"r0": er.r0, "r1": er.r1, "q": q, "i": i,
                          "p0": p0, "p1": p1},
                    note="the comparison into the kernel pair of the "
                         "coequalizer is not an isomorphism"))
            continue
        # kernel pair escapes the window
        if cat.view is None:
            scan.skip(f"kernel pair of {cat.names[q]} absent; instance "
                      "undecidable")
            continue
        dec, cert = cat.view.relation_is_kernel_pair(er.r0, er.r1, q)
        if not cert.ok:
            raise EngineInconsistency(
                "native kernel pair failed certification: " + cert.note)
        if dec:
            scan.bump("decided_natively")
            if len(scan.notes) < MAX_LISTED_SKIPS:
                scan.notes.append(
                    f"kernel pair of {cat.names[q]} escapes the window "
                    f"({cert.apex_label}); comparison decided natively; "
                    "proof-path route skipped")
        else:
            scan.fail(make_witness(
                cat, {"r0": er.r0, "r1": er.r1, "q": q},
                note="native comparison into the kernel pair is not an "
                     "isomorphism"))
    details = {"routes_compared": scan.counts.get("routes_compared", 0)}
    if scaffold_violations:
        details["scaffold_violations"] = scaffold_violations
    if disagreements:
        details["route_disagreements"] = disagreements
        details["note"] = ("direct and proof-path routes disagree; treat "
                           "as an engine defect until triaged")
        rep = scan.report("exact", CLAIM_EXACT, **details)
        rep.verdict = FAILS
        return rep
    return scan.report("exact", CLAIM_EXACT, **details)


# -- the classification ladder -------------------------------------------------------


LADDER = ("pointed-finitely-complete", "protomodular", "homological",
          "finitely-cocomplete-homological", "semi-abelian")


def _conj(*verdicts):
    if any(v == FAILS for v in verdicts):
        return FAILS
    if any(v == OOB for v in verdicts):
        return OOB
    return HOLDS


def classify(cat, budget=DEFAULT_BUDGET, a1_variant="full",
             all_witnesses=False):
    """Run the ladder bottom-up.  Returns (reports, ladder) where ladder
    is a list of (rung, verdict) pairs."""
    reports = []
    r_fc = check_finite_completeness(cat, budget, all_witnesses)
    reports.append(r_fc)
    r_proto = check_protomodular(cat, budget, all_witnesses)
    reports.append(r_proto)
    r_reg = check_regularity(cat, budget, all_witnesses)
    reports.append(r_reg)
    r_a1 = check_A1(cat, budget, a1_variant, all_witnesses)
    reports.append(r_a1)
    r_a2 = check_A2(cat, budget, all_witnesses)
    reports.append(r_a2)
    r_a3 = check_A3(cat, budget, all_witnesses)
    reports.append(r_a3)
    r_a4 = check_A4(cat, budget, all_witnesses)
    reports.append(r_a4)
    ladder = [
        ("pointed-finitely-complete", r_fc.verdict),
        ("protomodular", _conj(r_fc.verdict, r_proto.verdict)),
        ("homological", _conj(r_fc.verdict, r_proto.verdict, r_reg.verdict)),
        ("finitely-cocomplete-homological",
         _conj(r_a1.verdict, r_a2.verdict, r_a3.verdict)),
        ("semi-abelian",
         _conj(r_a1.verdict, r_a2.verdict, r_a3.verdict, r_a4.verdict)),
    ]
    return reports, ladder


def strongest_confirmed(ladder):
    best = None
    for rung, verdict in ladder:
        if verdict == HOLDS:
            best = rung
        else:
            break
    return best


# -- audits ----------------------------------------------------------------------


CLAIM_LEMMA1 = ("implication graph between the split-extension conditions: "
                "(A) implies (B) implies (C), (C) and (D) are equivalent, "
                "and (B) implies (E)")


def audit_lemma1(cat, budget=DEFAULT_BUDGET, all_witnesses=False) -> CheckReport:
    ra = check_condA(cat, budget, all_witnesses)
    rb = check_condB(cat, budget, all_witnesses)
    rc = check_condC(cat, budget, all_witnesses)
    rd = check_condD(cat, budget, all_witnesses)
    re_ = check_condE(cat, budget, all_witnesses)
    by = {"A": ra, "B": rb, "C": rc, "D": rd, "E": re_}
    scan = _Scan(budget)
    edges = [("A", "B"), ("B", "C"), ("B", "E")]
    for ante, cons in edges:
        va, vc = by[ante].verdict, by[cons].verdict
        if OOB in (va, vc):
            scan.skip(f"edge ({ante}) => ({cons}) skipped: "
                      f"({ante}) is {va}, ({cons}) is {vc}")
            continue
        scan.bump("edges_checked")
        if va == HOLDS and vc == FAILS:
            scan.fail(by[cons].witness or
                      {"roles": {}, "objects": [], "fragment": "",
                       "note": f"({ante}) holds but ({cons}) fails"})
            scan.notes.append(
                f"violated: ({ante}) holds but ({cons}) fails; treat as a "
                "falsification candidate / engine defect")
    if OOB in (rc.verdict, rd.verdict):
        scan.skip(f"equivalence (C) <=> (D) skipped: (C) is {rc.verdict}, "
                  f"(D) is {rd.verdict}")
    else:
        scan.bump("edges_checked")
        if rc.verdict != rd.verdict:
            scan.fail((rc.witness or rd.witness) or
                      {"roles": {}, "objects": [], "fragment": "",
                       "note": "(C) and (D) verdicts differ"})
            scan.notes.append("violated: (C) and (D) verdicts differ")
    return scan.report(
        "audit-lemma1", CLAIM_LEMMA1,
        verdicts={name: r.verdict for name, r in by.items()})


CLAIM_CRITPROTO = ("the strongly-epimorphic-family route and the "
                   "split-short-five route compute the same "
                   "protomodularity verdict")


def audit_critproto(cat, budget=DEFAULT_BUDGET,
                    all_witnesses=False) -> CheckReport:
    rep = check_protomodular(cat, budget, all_witnesses)
    d = rep.details
    agree = not d.get("route_disagreement", False)
    skipped = OOB in (d.get("route_family"), d.get("route_ssfl_and_kernels"))
    verdict = OOB if skipped else (HOLDS if agree else FAILS)
    details = dict(d)
    return CheckReport("audit-critproto", verdict, CLAIM_CRITPROTO,
                       budget.as_dict(),
                       witness=rep.witness if not agree else None,
                       details=details)


CLAIM_PRODSEMDIR = ("for every split extension whose sum exists in the "
                    "window, the copairing is a strong epimorphism exactly "
                    "when (kernel, section) is a strongly epimorphic family")


def audit_prodsemdir(cat, budget=DEFAULT_BUDGET,
                     all_witnesses=False) -> CheckReport:
    if cat.zero_object() is None:
        return _no_zero_report(cat, "audit-prodsemdir", CLAIM_PRODSEMDIR,
                               budget)
    scan = _Scan(budget)
    exts, skipped = split_extensions(cat, budget)
    for note in skipped:
        scan.skip(note)
    for ext in exts:
        if scan.expired() or (not all_witnesses and scan.failures):
            break
        kobj, xobj, yobj = ext.objects(cat)
        out = fincat.coproduct(cat, kobj, yobj, budget)
        if out.inconclusive:
            scan.skip(f"sum of ({kobj}, {yobj}) out of budget")
            continue
        if not out.found:
            scan.bump("sums_not_in_window")
            continue
        u = _copairing(cat, out.cone, ext.k, ext.s)
        vu = _strong_epi(cat, u, budget)
        va = condition_A_for(cat, ext, budget)
        if vu.inconclusive or va.inconclusive:
            scan.skip(f"instance for p={cat.names[ext.p]} out of budget")
            continue
        scan.bump("instances_compared")
        if vu.holds != va.holds:
            scan.fail(_ext_witness(
                cat, ext, vu if vu.failed else va, {"u": u}))
            scan.notes.append(
                f"disagreement at p={cat.names[ext.p]}: copairing strong "
                f"epi {vu.holds}, family strongly epimorphic {va.holds}")
    return scan.report("audit-prodsemdir", CLAIM_PRODSEMDIR)


CLAIM_HOMOLEX = ("on every equivalence relation decided in the window, the "
                 "direct isomorphism test and the mono-plus-strong-epi "
                 "proof route agree")


def audit_homolex(cat, budget=DEFAULT_BUDGET,
                  all_witnesses=False) -> CheckReport:
    rep = check_exactness(cat, budget, all_witnesses=True)
    disagreements = rep.details.get("route_disagreements", [])
    verdict = FAILS if disagreements else (
        OOB if rep.verdict == OOB and not rep.details.get("routes_compared")
        else HOLDS)
    details = {
        "exactness_verdict": rep.verdict,
        "routes_compared": rep.details.get("routes_compared", 0),
        "equivalence_relations": rep.details.get("equivalence_relations", 0),
    }
    if disagreements:
        details["route_disagreements"] = disagreements
    return CheckReport("audit-homolex", verdict, CLAIM_HOMOLEX,
                       budget.as_dict(), details=details)
