"""Subcomplex homology, forbidden sets, and the two acyclicity routes."""

import itertools
import random

import pytest

from toric_exc.cohomology import (cohomology_table, forbidden_sets, full_subcomplex,
                                  has_nonzero_global_sections, is_acyclic,
                                  is_forbidden_form, reduced_homology_ranks)
from toric_exc.errors import BoxUnstable, TooManyRays
from toric_exc.fan import Fan
from toric_exc.picard import anticanonical_divisor, canonical_divisor, class_to_divisor

D_FORBIDDEN = {(), (3, 6), (4, 6), (3, 5), (1, 2, 5), (1, 2, 4), (1, 2, 4, 5),
               (1, 2, 3, 5), (1, 2, 4, 6), (3, 5, 6), (3, 4, 6)}
E_FORBIDDEN = {(), (2, 4), (3, 5), (1, 3), (2, 5), (1, 4), (6, 7),
               (2, 4, 5), (1, 2, 4), (1, 3, 5), (2, 3, 5), (1, 3, 4),
               (1, 3, 6, 7), (3, 5, 6, 7), (2, 4, 6, 7), (1, 4, 6, 7), (2, 5, 6, 7),
               (1, 3, 5, 6, 7), (2, 4, 5, 6, 7), (1, 2, 4, 6, 7), (1, 3, 4, 6, 7),
               (2, 3, 5, 6, 7), (1, 2, 3, 4, 5)}


def one_based(sets):
    return {tuple(i + 1 for i in s) for s in sets}


class TestReducedHomology:
    def test_two_primitive_pairs_leave_a_gap(self, e1):
        # vertices {2,4,5}: one edge plus an isolated vertex
        ranks = reduced_homology_ranks(full_subcomplex(e1.fan, [1, 3, 4]))
        assert ranks == (0, 1, 0, 0)

    def test_maximal_cone_is_contractible(self, d1):
        for cone in d1.fan.max_cones:
            assert reduced_homology_ranks(full_subcomplex(d1.fan, cone)) == (0, 0, 0, 0)

    def test_empty_set_has_degree_minus_one_homology(self, d1):
        assert reduced_homology_ranks(full_subcomplex(d1.fan, [])) == (1, 0, 0, 0)

    def test_triangle_boundary_is_a_circle(self, d1):
        # {1,2,4} spans no cone but every pair does
        assert reduced_homology_ranks(full_subcomplex(d1.fan, [0, 1, 3])) == (0, 0, 1, 0)

    def test_whole_fan_is_a_two_sphere(self, records):
        for rec in records.values():
            ranks = reduced_homology_ranks(full_subcomplex(rec.fan, range(rec.fan.n_rays)))
            assert ranks == (0, 0, 0, 1), rec.name


class TestForbiddenSets:
    def test_d1_matches_the_known_eleven(self, d1):
        assert one_based(forbidden_sets(d1.fan).forbidden) == D_FORBIDDEN

    def test_d2_same_collections_same_sets(self, records):
        assert one_based(forbidden_sets(records["D2"].fan).forbidden) == D_FORBIDDEN

    @pytest.mark.parametrize("name", ["E1", "E2", "E4"])
    def test_e_fans_match_the_deduplicated_list(self, records, name):
        got = one_based(forbidden_sets(records[name].fan).forbidden)
        assert got == E_FORBIDDEN, (sorted(got - E_FORBIDDEN), sorted(E_FORBIDDEN - got))

    def test_p3_only_the_empty_set(self):
        p3 = Fan.make(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)],
                      [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
        assert forbidden_sets(p3).forbidden == ((),)

    def test_three_four_complement_symmetry_on_e_fans(self, records):
        # observed on the S2-bundle fans: I of size 3 forbidden iff its
        # complement (size 4) is forbidden
        for name in ("E1", "E2", "E4"):
            fan = records[name].fan
            forb = set(forbidden_sets(fan).forbidden)
            all_rays = set(range(fan.n_rays))
            threes = {s for s in forb if len(s) == 3}
            fours = {s for s in forb if len(s) == 4}
            assert {tuple(sorted(all_rays - set(s))) for s in threes} == fours

    def test_too_many_rays_guard(self):
        rays = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)]
        fan = Fan.make(3, rays, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
        big = Fan(3, fan.rays * 6, fan.max_cones)  # 24 nominal rays
        with pytest.raises(TooManyRays):
            forbidden_sets(big)


class TestForbiddenForm:
    def test_minus_z6_is_not_forbidden_for_46(self, d1_ctx):
        minus_z6 = class_to_divisor(d1_ctx, (0, 0, -1))
        assert not is_forbidden_form(d1_ctx, minus_z6, (3, 5), box_radius=4)

    def test_structure_sheaf_never_forbidden(self, d1, d1_ctx):
        O = (0,) * 6
        for I in forbidden_sets(d1.fan).forbidden:
            assert not is_forbidden_form(d1_ctx, O, I, box_radius=4)

    def test_canonical_class_fits_the_empty_pattern(self, d1, d1_ctx):
        assert is_forbidden_form(d1_ctx, canonical_divisor(d1.fan), (), box_radius=4)


class TestAcyclicity:
    def test_d1_examples(self, d1, d1_ctx):
        assert is_acyclic(d1_ctx, class_to_divisor(d1_ctx, (-1, -1, 0)))   # -(Z4+Z5)
        assert is_acyclic(d1_ctx, class_to_divisor(d1_ctx, (1, 1, 1)))     # Mustata case
        assert not is_acyclic(d1_ctx, canonical_divisor(d1.fan))

    def test_structure_sheaf_table(self, d1_ctx):
        assert cohomology_table(d1_ctx, (0,) * 6).dims == (1, 0, 0, 0)

    def test_canonical_table(self, d1, d1_ctx):
        assert cohomology_table(d1_ctx, canonical_divisor(d1.fan)).dims == (0, 0, 0, 1)

    def test_minus_z6_fully_vanishes(self, d1_ctx):
        table = cohomology_table(d1_ctx, class_to_divisor(d1_ctx, (0, 0, -1)))
        assert table.dims == (0, 0, 0, 0)

    def test_anticanonical_sections_count_lattice_points(self, d1, d1_ctx):
        # -K on a Fano 3-fold is ample: h^0 > 1 and no higher cohomology
        table = cohomology_table(d1_ctx, anticanonical_divisor(d1.fan), escalate=True)
        assert table.dims[1:] == (0, 0, 0) and table.dims[0] > 1

    def test_box_instability_is_surfaced_then_resolved(self, d1_ctx):
        hard = class_to_divisor(d1_ctx, (-2, 2, -2))
        with pytest.raises(BoxUnstable):
            cohomology_table(d1_ctx, hard, box_radius=4)
        table = cohomology_table(d1_ctx, hard, box_radius=4, escalate=True)
        assert table.dims == (0, 33, 0, 0)

    def test_mustata_filter_is_sound(self, d1, d1_ctx):
        report = forbidden_sets(d1.fan)
        for cls in itertools.product(range(-1, 3), repeat=3):
            D = class_to_divisor(d1_ctx, cls)
            with_filter = is_acyclic(d1_ctx, D, report, escalate=True)
            without = is_acyclic(d1_ctx, D, report, escalate=True, use_mustata=False)
            assert with_filter == without


class TestSections:
    def test_d1_negative_ray_has_none(self, d1_ctx):
        assert not has_nonzero_global_sections(d1_ctx, class_to_divisor(d1_ctx, (-1, 0, 0)))

    def test_trivial_bundle_has_constants(self, d1_ctx):
        assert has_nonzero_global_sections(d1_ctx, (0,) * 6)

    def test_e1_minus_z7(self, e1_ctx):
        assert not has_nonzero_global_sections(e1_ctx, class_to_divisor(e1_ctx, (0, 0, 0, -1)))


class TestOracleAgreement:
    @pytest.mark.parametrize("name", ["P3", "B2", "C5", "D1"])
    def test_criterion_matches_oracle_on_class_box(self, records, contexts, name):
        # full radius-2 sweep runs in the acceptance suite; spot-check here
        fan, ctx = records[name].fan, contexts[name]
        report = forbidden_sets(fan)
        rng = random.Random(17)
        boxes = list(itertools.product(range(-2, 3), repeat=ctx.rank))
        sample = rng.sample(boxes, min(40, len(boxes)))
        for cls in sample:
            D = class_to_divisor(ctx, cls)
            table = cohomology_table(ctx, D, escalate=True)
            assert is_acyclic(ctx, D, report, escalate=True) == table.is_acyclic
            assert has_nonzero_global_sections(ctx, D, escalate=True) == (table.dims[0] > 0)

    def test_serre_duality_sample(self, records, contexts):
        rng = random.Random(31)
        for name in ("B3", "E2"):
            fan, ctx = records[name].fan, contexts[name]
            K = canonical_divisor(fan)
            for _ in range(15):
                D = tuple(rng.randint(-2, 2) for _ in range(fan.n_rays))
                KD = tuple(k - d for k, d in zip(K, D))
                h = cohomology_table(ctx, D, escalate=True).dims
                hk = cohomology_table(ctx, KD, escalate=True).dims
                assert h == tuple(reversed(hk)), (name, D)
