"""Unit tests for the bifiltered complex data model and its regions."""

import pytest

from hfsurgery import f2
from hfsurgery.cfk import (
    CfkComplex,
    DiffTerm,
    FlipPair,
    FlipRequiredError,
    Generator,
    HatA,
    HatB,
    JLevel,
    Quadrant,
    UndefinedRegionError,
    UnknownRegionError,
)
from hfsurgery.f2 import InvalidComplexError
from hfsurgery.knots import builtin


@pytest.fixture
def unknot():
    return builtin("unknot")


@pytest.fixture
def trefoil():
    return builtin("trefoil_rh")


@pytest.fixture
def fig8():
    return builtin("figure_eight")


class TestValidate:
    def test_unknot_valid(self, unknot):
        assert unknot.validate().ok

    def test_trefoil_valid(self, trefoil):
        # d^2(b) = U d(a) + d(c) = 0 by inspection
        assert trefoil.validate().ok

    def test_reducedness_violation(self, trefoil):
        bad = CfkComplex(
            trefoil.generators,
            list(trefoil.differential) + [DiffTerm("b", "b", 0)],
            trefoil.flip_pairs,
            "bad",
        )
        report = bad.validate()
        assert not report.ok
        assert any(issue.code == "reduced" for issue in report.issues)

    def test_d_squared_violation(self):
        c = CfkComplex(
            [Generator("x", 1), Generator("y", 0), Generator("z", -1)],
            [DiffTerm("x", "y", 0), DiffTerm("y", "z", 0)],
            None,
            "not-a-complex",
        )
        report = c.validate()
        assert any(issue.code == "d-squared" for issue in report.issues)

    def test_filtration_violation(self):
        c = CfkComplex(
            [Generator("x", 0), Generator("y", 3)],
            [DiffTerm("x", "y", 1)],
            None,
            "raises-j",
        )
        assert any(i.code == "filtration" for i in c.validate().issues)

    def test_duplicate_ids_flagged(self):
        c = CfkComplex([Generator("x", 0), Generator("x", 0)], [], None, "dup")
        assert any(i.code == "duplicate-id" for i in c.validate().issues)

    def test_flip_must_negate_alexander(self):
        c = CfkComplex(
            [Generator("x", 1), Generator("y", 0)],
            [],
            [FlipPair("x", "x"), FlipPair("y", "y")],
            "bad-flip",
        )
        assert any(i.code == "flip-alexander" for i in c.validate().issues)

    def test_flip_must_commute(self):
        # x sits at A = 1 with partner y at A = -1, but the differential
        # only leaves x, so the induced involution cannot commute.
        c = CfkComplex(
            [Generator("x", 1), Generator("y", -1), Generator("w", 0)],
            [DiffTerm("x", "w", 0)],
            [FlipPair("x", "y"), FlipPair("w", "w")],
            "non-commuting",
        )
        assert any(i.code == "flip-commute" for i in c.validate().issues)

    def test_validate_never_raises(self):
        c = CfkComplex([], [DiffTerm("ghost", "ghost", 0)], None, "broken")
        report = c.validate()
        assert not report.ok

    def test_validate_never_raises_with_flip_and_bad_term(self):
        c = CfkComplex(
            [Generator("x", 0)],
            [DiffTerm("x", "ghost", 1)],
            [FlipPair("x", "x")],
            "broken-with-flip",
        )
        report = c.validate()
        assert any(i.code == "unknown-generator" for i in report.issues)

    def test_require_valid_raises(self):
        c = CfkComplex([Generator("x", 0), Generator("x", 0)], [], None, "dup")
        with pytest.raises(InvalidComplexError):
            c.require_valid()


class TestRegions:
    def test_trefoil_hat_a0(self, trefoil):
        region = trefoil.region_complex(HatA(0))
        assert set(region.basis) == {("a", 1), ("b", 0), ("c", 0)}
        col = region.position("b", 0)
        image = [row for row in range(region.dim) if region.boundary.entry(row, col)]
        assert {region.basis[r] for r in image} == {("a", 1), ("c", 0)}
        assert region.homology.dim == 1

    def test_trefoil_hat_b(self, trefoil):
        region = trefoil.region_complex(HatB())
        assert set(region.basis) == {("a", 0), ("b", 0), ("c", 0)}
        # the U a component has i = -1 and is dropped
        col = region.position("b", 0)
        image = [row for row in range(region.dim) if region.boundary.entry(row, col)]
        assert {region.basis[r] for r in image} == {("c", 0)}
        assert region.homology.dim == 1

    def test_unknot_j_level(self, unknot):
        region = unknot.region_complex(JLevel(0))
        assert region.dim == 1 and region.homology.dim == 1

    def test_quadrant_single_point(self, trefoil):
        region = trefoil.region_complex(Quadrant(0))
        assert region.basis == (("a", 1),)

    def test_unknown_tag(self, trefoil):
        with pytest.raises(UnknownRegionError):
            trefoil.region_complex("nonsense")

    def test_region_memoized(self, trefoil):
        assert trefoil.region_complex(HatA(0)) is trefoil.region_complex(HatA(0))


class TestVhat:
    def test_unknot_identity(self, unknot):
        for s in range(0, 4):
            assert unknot.v_hat(s).induced.data == (1,)

    def test_trefoil_zero_at_0(self, trefoil):
        # [U a] generates H(HatA(0)) and projects to [c] = d(b) = 0 in H(HatB)
        v0 = trefoil.v_hat(0)
        assert v0.induced.data == (0,)
        assert v0.induced_rank() == 0 and v0.induced_kernel_dim() == 1

    def test_trefoil_iso_at_1(self, trefoil):
        assert trefoil.v_hat(1).is_induced_iso()

    def test_works_without_flip(self):
        c = CfkComplex(
            [Generator("a", 1), Generator("b", 0), Generator("c", -1)],
            [DiffTerm("b", "a", 1), DiffTerm("b", "c", 0)],
            None,
            "flipless",
        )
        assert c.v_hat(0).induced.data == (0,)
        assert c.genus() == 1


class TestHhat:
    def test_unknot_identity_nonpositive(self, unknot):
        for s in (0, -1, -2):
            assert unknot.h_hat(s).induced.data == (1,)

    def test_trefoil_zero_at_0(self, trefoil):
        # U a projects to U a in the j = 0 level, flips to c, and [c] = 0
        assert trefoil.h_hat(0).induced.data == (0,)

    def test_trefoil_iso_at_minus_1(self, trefoil):
        assert trefoil.h_hat(-1).is_induced_iso()

    def test_missing_flip(self):
        c = CfkComplex([Generator("x", 0)], [], None, "flipless")
        with pytest.raises(FlipRequiredError):
            c.h_hat(0)

    def test_matches_three_stage_composite(self, fig8):
        """h_hat agrees with projection, U^s shift, then flip, assembled
        explicitly through the JLevel regions."""
        for s in (-1, 0, 1):
            source = fig8.region_complex(HatA(s))
            j_s = fig8.region_complex(JLevel(s))
            j_0 = fig8.region_complex(JLevel(0))
            target = fig8.region_complex(HatB())
            proj = [0] * j_s.dim
            for col, (gid, k) in enumerate(source.basis):
                if fig8.alexander[gid] - k == s:
                    proj[j_s.position(gid, fig8.alexander[gid] - s)] |= 1 << col
            shift = [0] * j_0.dim
            for col, (gid, k) in enumerate(j_s.basis):
                shift[j_0.position(gid, fig8.alexander[gid])] |= 1 << col
            flip = [0] * target.dim
            for col, (gid, k) in enumerate(j_0.basis):
                flip[target.position(fig8.flip_map[gid], 0)] |= 1 << col
            composite = (
                f2.F2Matrix(target.dim, j_0.dim, tuple(flip))
                @ f2.F2Matrix(j_0.dim, j_s.dim, tuple(shift))
                @ f2.F2Matrix(j_s.dim, source.dim, tuple(proj))
            )
            assert composite.data == fig8.h_hat(s).matrix.data


class TestInvariants:
    def test_hfk_unknot(self, unknot):
        assert unknot.hfk_hat(0) == 1 and unknot.hfk_hat(1) == 0

    def test_hfk_trefoil(self, trefoil):
        assert [trefoil.hfk_hat(s) for s in (-1, 0, 1)] == [1, 1, 1]

    def test_hfk_fig8(self, fig8):
        assert [fig8.hfk_hat(s) for s in (1, 0, -1)] == [1, 3, 1]

    def test_b_rank(self, unknot, trefoil):
        assert unknot.b_rank() == 1
        assert trefoil.b_rank() == 1

    def test_b_rank_dots(self):
        gens = [Generator(f"e{i}", 0) for i in range(3)]
        c = CfkComplex(gens, [], [FlipPair(g.id, g.id) for g in gens], "dots")
        assert c.b_rank() == 3

    def test_genus(self, unknot, trefoil, fig8):
        assert unknot.genus() == 0
        assert trefoil.genus() == 1
        assert fig8.genus() == 1
        assert builtin("t25").genus() == 2

    def test_single_point_region(self, trefoil, fig8):
        assert trefoil.single_point_region_rank() == 1
        assert fig8.single_point_region_rank() == 1
        assert builtin("t25").single_point_region_rank() == 1

    def test_single_point_needs_genus(self, unknot):
        with pytest.raises(UndefinedRegionError):
            unknot.single_point_region_rank()


class TestReflected:
    def test_unknot_fixed(self, unknot):
        r = unknot.reflected()
        assert r.validate().ok
        assert r.hfk_profile() == unknot.hfk_profile()

    def test_trefoil_relabels_staircase(self, trefoil):
        r = trefoil.reflected()
        assert r.validate().ok
        # the staircase is flip symmetric: swapping i and j relabels a and c
        assert r.alexander == {"a": -1, "b": 0, "c": 1}
        assert set(r.differential) == {DiffTerm("b", "a", 0), DiffTerm("b", "c", 1)}

    def test_rank_symmetry_with_h(self, trefoil, fig8):
        for c in (trefoil, fig8, builtin("t25")):
            r = c.reflected()
            for s in range(-3, 4):
                assert r.v_hat(s).induced_rank() == c.h_hat(-s).induced_rank()
                assert r.v_hat(s).induced_kernel_dim() == c.h_hat(-s).induced_kernel_dim()

    def test_requires_flip(self):
        c = CfkComplex([Generator("x", 0)], [], None, "flipless")
        with pytest.raises(FlipRequiredError):
            c.reflected()


class TestFlipEquivalence:
    def test_induced_invertible(self, trefoil, fig8):
        # the flip conjugated with U^s is a chain homotopy equivalence
        # HatA(s) -> HatA(-s); its induced matrix must be invertible
        for c in (trefoil, fig8):
            for s in range(-2, 3):
                eq = c.region_flip_equivalence(s)
                assert eq.is_induced_iso()


class TestJson:
    def test_round_trip_bit_exact(self, trefoil, fig8):
        for c in (trefoil, fig8, builtin("t27")):
            text = c.to_json()
            again = CfkComplex.from_json(text)
            assert again.to_json() == text

    def test_maslov_survives(self):
        c = CfkComplex([Generator("x", 0, maslov=-2)], [], None, "graded")
        again = CfkComplex.from_json(c.to_json())
        assert again.generators[0].maslov == -2

    def test_flipless_has_no_flip_key(self):
        c = CfkComplex([Generator("x", 0)], [], None, "flipless")
        assert "flip" not in c.to_json_dict()
