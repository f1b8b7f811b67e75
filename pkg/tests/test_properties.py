"""Property tests over random dots-and-boxes complexes and random slopes.

The structural laws here mirror what the acceptance battery checks on a
fixed 100-seed corpus, but with hypothesis searching the RandomSpec space.
"""

import math

from hypothesis import given, settings, strategies as st

from hfsurgery import f2
from hfsurgery.cfk import CfkComplex, HatA
from hfsurgery.knots import RandomSpec, builtin, random_complex
from hfsurgery.obstructions import hypothesis_check
from hfsurgery.surgery import (
    Slope,
    build_cone,
    cone_rank_chain,
    cone_rank_homological,
    kernel_basis_construction,
    kernel_rank,
    rank_formula,
    t_closed_form,
    t_invariant,
    truncation_bound,
)

specs = st.builds(
    RandomSpec,
    seed=st.integers(0, 10**6),
    dots=st.integers(1, 3),
    boxes=st.integers(0, 2),
    max_side=st.integers(1, 2),
    max_offset=st.integers(0, 2),
)

complexes = specs.map(random_complex)

slopes = (
    st.tuples(st.integers(1, 5), st.integers(1, 5))
    .filter(lambda pq: math.gcd(*pq) == 1)
    .map(lambda pq: Slope(*pq))
)


@settings(max_examples=60, deadline=None)
@given(complexes)
def test_random_complexes_validate(c):
    assert c.validate().ok


@settings(max_examples=40, deadline=None)
@given(complexes)
def test_v_h_rank_symmetry(c):
    g = c.genus()
    for s in range(-g - 1, g + 2):
        v = c.v_hat(s)
        h = c.h_hat(-s)
        assert v.induced_rank() == h.induced_rank()
        assert v.induced_kernel_dim() == h.induced_kernel_dim()


@settings(max_examples=40, deadline=None)
@given(complexes)
def test_image_monotonicity(c):
    g = c.genus()
    for s in range(-g - 1, g + 1):
        v_small = c.v_hat(s).induced
        v_big = c.v_hat(s + 1).induced
        assert f2.image_intersection_rank(v_small, v_big) == f2.rank(v_small)
        h_small = c.h_hat(s).induced
        h_big = c.h_hat(s + 1).induced
        assert f2.image_intersection_rank(h_small, h_big) == f2.rank(h_big)


@settings(max_examples=40, deadline=None)
@given(complexes)
def test_genus_thresholds(c):
    g = c.genus()
    assert c.v_hat(g).is_induced_iso()
    assert c.h_hat(-g).is_induced_iso()
    assert c.h_hat(g + 1).induced.is_zero()
    assert c.v_hat(-g - 1).induced.is_zero()


@settings(max_examples=40, deadline=None)
@given(complexes)
def test_a_region_stabilizes_at_b(c):
    g, b = c.genus(), c.b_rank()
    for s in (g, g + 1, -g, -g - 1):
        assert c.region_complex(HatA(s)).homology.dim == b


@settings(max_examples=40, deadline=None)
@given(complexes)
def test_hfk_symmetry(c):
    profile = c.hfk_profile()
    for s, count in profile.items():
        assert profile.get(-s, 0) == count


@settings(max_examples=40, deadline=None)
@given(complexes)
def test_single_point_region_is_top_hfk(c):
    if c.genus() >= 1:
        assert c.single_point_region_rank() == c.hfk_hat(c.genus()) > 0


@settings(max_examples=30, deadline=None)
@given(complexes, slopes)
def test_oracles_agree(c, slope):
    assert cone_rank_chain(c, slope) == cone_rank_homological(c, slope)


@settings(max_examples=30, deadline=None)
@given(complexes, slopes)
def test_formula_matches_oracle_under_hypothesis(c, slope):
    if hypothesis_check(c).overall:
        assert rank_formula(c, slope) == cone_rank_chain(c, slope)


@settings(max_examples=20, deadline=None)
@given(complexes, slopes)
def test_truncation_stability(c, slope):
    bound = truncation_bound(c, slope)
    base = cone_rank_chain(c, slope, bound)
    assert cone_rank_chain(c, slope, bound + 1) == base
    assert cone_rank_chain(c, slope, bound + 3) == base


@settings(max_examples=20, deadline=None)
@given(complexes, slopes)
def test_kernel_construction_counts(c, slope):
    if not hypothesis_check(c).overall:
        return
    cone = build_cone(c, slope)
    basis = kernel_basis_construction(c, slope)
    true_kernel = cone.a_homology_dim - f2.rank(cone.block_matrix())
    assert len(basis) == kernel_rank(c, slope) == true_kernel
    for element in basis:
        assert cone.block_apply(element) == 0
    stacked = f2.F2Matrix.from_columns(
        [cone.flatten(e) for e in basis], cone.a_homology_dim
    )
    assert f2.rank(stacked) == len(basis)


@settings(max_examples=30, deadline=None)
@given(specs.filter(lambda s: s.dots == 1).map(random_complex), slopes)
def test_t_closed_form_for_b_one(c, slope):
    assert t_invariant(c, slope) == t_closed_form(c, slope)


@settings(max_examples=40, deadline=None)
@given(complexes)
def test_json_round_trip(c):
    text = c.to_json()
    assert CfkComplex.from_json(text).to_json() == text


@settings(max_examples=30, deadline=None)
@given(complexes)
def test_reflected_swaps_v_and_h(c):
    r = c.reflected()
    assert r.validate().ok
    g = c.genus()
    for s in range(-g - 1, g + 2):
        assert r.v_hat(s).induced_rank() == c.h_hat(-s).induced_rank()
        assert r.v_hat(s).induced_kernel_dim() == c.h_hat(-s).induced_kernel_dim()


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["unknot", "trefoil_rh", "trefoil_lh", "figure_eight", "t25"]), slopes)
def test_builtin_oracle_agreement(name, slope):
    c = builtin(name)
    assert cone_rank_chain(c, slope) == cone_rank_homological(c, slope) == rank_formula(c, slope)
