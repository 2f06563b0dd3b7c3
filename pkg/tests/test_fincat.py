"""Core category machinery on small hand-built categories.

The hand-built tables below are the independent oracles: composition is
written out explicitly, so every solver verdict can be checked against
what the table forces.
"""
import pytest

from catcheck import fincat
from catcheck.fincat import (
    CategoryError, Cone, Diagram, FinCategory, is_epi, is_mono,
    is_strong_epi, is_strongly_epimorphic_family, make_witness,
    verify_limit_cone,
)
from catcheck.budget import Budget, DEFAULT_BUDGET


def two_object_arrow():
    # x --f--> y and nothing else
    return FinCategory(
        objects=["x", "y"],
        morphisms=[("x", "x"), ("y", "y"), ("x", "y")],
        identities={"x": 0, "y": 1},
        comp={(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2},
        names=["id:x", "id:y", "f"],
    )


def parallel_pair_cat():
    # f, g: x -> y with no equalizing object besides nothing
    return FinCategory(
        objects=["x", "y"],
        morphisms=[("x", "x"), ("y", "y"), ("x", "y"), ("x", "y")],
        identities={"x": 0, "y": 1},
        comp={(0, 0): 0, (1, 1): 1, (2, 0): 2, (3, 0): 3,
              (1, 2): 2, (1, 3): 3},
        names=["id:x", "id:y", "f", "g"],
    )


class TestValidation:
    def test_valid_category_passes(self):
        two_object_arrow()

    def test_missing_composite_rejected(self):
        with pytest.raises(CategoryError, match="missing composition"):
            FinCategory(
                objects=["x", "y"],
                morphisms=[("x", "x"), ("y", "y"), ("x", "y")],
                identities={"x": 0, "y": 1},
                comp={(2, 0): 2},   # (id_y, f) absent
                names=["id:x", "id:y", "f"],
            )

    def test_identity_law_violation_rejected(self):
        with pytest.raises(CategoryError, match="identity law"):
            FinCategory(
                objects=["x"],
                morphisms=[("x", "x"), ("x", "x")],
                identities={"x": 0},
                comp={(0, 0): 0, (0, 1): 0, (1, 0): 1, (1, 1): 0},
                names=["id:x", "e"],
            )

    def test_associativity_violation_rejected(self):
        # e∘e = id but (e∘e)∘e = e forced both ways; break one entry
        with pytest.raises(CategoryError, match="associativity"):
            FinCategory(
                objects=["x"],
                morphisms=[("x", "x"), ("x", "x"), ("x", "x")],
                identities={"x": 0},
                comp={(0, 0): 0, (0, 1): 1, (1, 0): 1, (0, 2): 2,
                      (2, 0): 2, (1, 1): 2, (1, 2): 0, (2, 1): 1,
                      (2, 2): 1},
                names=["id:x", "a", "b"],
            )

    def test_wrong_endpoints_rejected(self):
        with pytest.raises(CategoryError):
            FinCategory(
                objects=["x", "y"],
                morphisms=[("x", "x"), ("y", "y"), ("x", "y")],
                identities={"x": 0, "y": 1},
                comp={(2, 0): 1, (1, 2): 2},   # composite lands wrong
                names=["id:x", "id:y", "f"],
            )


class TestAccessors:
    def test_hom_and_compose(self):
        cat = two_object_arrow()
        assert cat.hom("x", "y") == (2,)
        assert cat.hom("y", "x") == ()
        assert cat.compose(1, 2) == 2
        assert cat.id_of("x") == 0

    def test_find_by_name(self):
        cat = two_object_arrow()
        assert cat.find("f") == 2
        with pytest.raises(KeyError):
            cat.find("nope")

    def test_subcategory_keeps_names(self):
        cat = two_object_arrow()
        frag, idmap = cat.subcategory(["x"])
        assert frag.objects == ("x",)
        assert frag.names == ("id:x",)
        assert idmap[0] == 0


class TestMonoEpiIso:
    def test_identity_is_mono_epi_iso(self):
        cat = two_object_arrow()
        assert 0 in cat.mono_set()
        assert 0 in cat.epi_set()
        assert cat.is_iso(0)

    def test_unique_arrow_is_mono_and_epi(self):
        # f is vacuously cancellable in both directions here
        cat = two_object_arrow()
        assert 2 in cat.mono_set()
        assert 2 in cat.epi_set()
        assert not cat.is_iso(2)

    def test_parallel_pair_targets_not_mono_over_shared_source(self):
        cat = parallel_pair_cat()
        v = is_mono(cat, 2, DEFAULT_BUDGET)
        assert v.holds   # nothing equalizes f with g from the left
        assert is_epi(cat, 2, DEFAULT_BUDGET).holds


def pointed_two():
    """Zero object z and one extra object a; the composite through z is
    the zero endomorphism of a."""
    # morphisms: id:z, id:a, in: z->a, out: a->z, zero = in∘out
    return FinCategory(
        objects=["z", "a"],
        morphisms=[("z", "z"), ("a", "a"), ("z", "a"), ("a", "z"),
                   ("a", "a")],
        identities={"z": 0, "a": 1},
        comp={
            (0, 0): 0, (1, 1): 1, (2, 0): 2, (0, 3): 3,
            (1, 2): 2, (3, 1): 3, (1, 4): 4, (4, 1): 4,
            (3, 2): 0, (2, 3): 4,
            (3, 4): 3, (4, 2): 2, (4, 4): 4,
        },
        names=["id:z", "id:a", "in", "out", "zero"],
    )


class TestPointedness:
    def test_zero_object_found(self):
        cat = pointed_two()
        assert cat.zero_object() == "z"
        assert cat.zero_mor("a", "a") == 4

    def test_no_zero_object_in_plain_arrow(self):
        assert two_object_arrow().zero_object() is None
        with pytest.raises(CategoryError):
            two_object_arrow().zero_mor("x", "y")


class TestLimits:
    def test_terminal_object_as_empty_product(self, finab4):
        out = fincat.limit(finab4, Diagram.empty(), DEFAULT_BUDGET)
        assert out.found
        assert out.cone.apex == "Z1"

    def test_product_in_window(self, finab4):
        out = fincat.product(finab4, "Z2", "Z2", DEFAULT_BUDGET)
        assert out.found
        assert out.cone.apex == "V4"    # Z2 x Z2 up to iso

    def test_product_escapes_window(self, finab4):
        out = fincat.product(finab4, "Z2", "Z3", DEFAULT_BUDGET)
        assert out.absent                # Z6 has order 6 > 4

    def test_equalizer_of_equal_pair_is_identity_like(self, finab4):
        f = finab4.hom("Z2", "Z4")[0]
        out = fincat.equalizer(finab4, f, f, DEFAULT_BUDGET)
        assert out.found
        assert finab4.is_iso(out.cone.legs[0])

    def test_kernel_of_quotient(self, finab4):
        # the surjection Z4 -> Z2 has kernel Z2
        q = next(f for f in finab4.hom("Z4", "Z2")
                 if f in finab4.epi_set() and not finab4.is_iso(f))
        out = fincat.kernel(finab4, q, DEFAULT_BUDGET)
        assert out.found
        k = fincat.kernel_mor(out)
        assert finab4.doms[k] == "Z2"

    def test_verify_limit_cone_rejects_non_limit(self, finab4):
        d = Diagram.discrete(["Z2", "Z2"])
        bad = Cone("Z2", (finab4.id_of("Z2"), finab4.id_of("Z2")))
        assert not verify_limit_cone(finab4, d, bad)

    def test_zero_apex_budget_is_inconclusive(self, finab4):
        out = fincat.product(finab4, "Z2", "Z2",
                             Budget(max_candidate_apexes=0))
        assert out.inconclusive


class TestColimits:
    def test_coproduct_is_direct_sum(self, finab4):
        out = fincat.coproduct(finab4, "Z2", "Z2", DEFAULT_BUDGET)
        assert out.found
        assert out.cone.apex == "V4"

    def test_cokernel_of_kernel(self, finab4):
        q = next(f for f in finab4.hom("Z4", "Z2")
                 if f in finab4.epi_set() and not finab4.is_iso(f))
        k = fincat.kernel_mor(fincat.kernel(finab4, q, DEFAULT_BUDGET))
        out = fincat.cokernel(finab4, k, DEFAULT_BUDGET)
        assert out.found
        co = fincat.cokernel_mor(out)
        assert finab4.cods[co] == "Z2"


class TestRegularAndStrong:
    def test_quotient_is_regular_epi_both_routes(self, finab4):
        # Z2 -> Z1 keeps its kernel pair in the window (Z2 x Z2 = V4),
        # so both decision routes complete and must agree
        q = finab4.hom("Z2", "Z1")[0]
        v_kp = fincat.is_regular_epi(finab4, q, DEFAULT_BUDGET,
                                     route="kernel_pair")
        v_scan = fincat.is_regular_epi(finab4, q, DEFAULT_BUDGET,
                                       route="search")
        assert v_kp.holds and v_scan.holds

    def test_quotient_regular_by_scan_when_pair_escapes(self, finab4):
        # the kernel pair of Z4 -> Z2 has order 8, outside the window;
        # the existential scan still certifies the coequalizer property
        q = next(f for f in finab4.hom("Z4", "Z2")
                 if f in finab4.epi_set() and not finab4.is_iso(f))
        assert fincat.is_regular_epi(finab4, q, DEFAULT_BUDGET).holds

    def test_non_epi_is_not_regular_epi(self, finab4):
        m = finab4.hom("Z1", "Z2")[0]
        assert not fincat.is_regular_epi(finab4, m, DEFAULT_BUDGET).holds

    def test_strong_epi_on_quotient(self, finab4):
        q = next(f for f in finab4.hom("Z4", "Z2")
                 if f in finab4.epi_set() and not finab4.is_iso(f))
        assert is_strong_epi(finab4, q, DEFAULT_BUDGET).holds

    def test_family_through_proper_mono_fails(self, finptset3):
        # the basepoint inclusion alone never covers P3
        k = finptset3.hom("P1", "P3")[0]
        v = is_strongly_epimorphic_family(finptset3, [k], DEFAULT_BUDGET)
        assert v.failed
        assert "m" in v.witness["roles"]


class TestWitnesses:
    def test_fragment_round_trips(self, finptset3):
        from catcheck import catfile
        f = finptset3.hom("P3", "P2")[0]
        w = make_witness(finptset3, {"f": f}, note="demo")
        frag = catfile.parse_category(w["fragment"])
        assert set(frag.objects) == {"P2", "P3"}
        assert frag.find(w["roles"]["f"]) is not None

    def test_witness_note_preserved(self, finab4):
        w = make_witness(finab4, {"f": finab4.id_of("Z1")}, note="n1")
        assert w["note"] == "n1"
