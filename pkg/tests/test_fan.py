"""Fan combinatorics: validation, primitive collections/relations, Fano test."""

import pytest

from toric_exc.errors import InteriorCoverFailure
from toric_exc.fan import (Fan, is_face, is_fano, primitive_collections,
                           primitive_relations, validate_fan)

P3 = Fan.make(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)],
              [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
HIRZEBRUCH_F2 = Fan.make(2, [(1, 0), (0, 1), (-1, 2), (0, -1)],
                         [(0, 1), (1, 2), (2, 3), (3, 0)])


def one_based(sets):
    return {tuple(i + 1 for i in s) for s in sets}


class TestValidateFan:
    def test_p3_passes(self):
        v = validate_fan(P3)
        assert v.ok and v.smooth and v.complete and v.simplicial

    def test_d1_passes_with_eight_cones(self, d1):
        assert validate_fan(d1.fan).ok
        assert len(d1.fan.max_cones) == 8  # 2*upsilon - 4 with upsilon = 6

    def test_duplicate_ray_fails(self):
        bad = Fan.make(3, [(1, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)],
                       [(0, 2, 3), (1, 2, 3)])
        report = validate_fan(bad)
        assert not report.ok
        assert any("duplicate" in p for p in report.problems)

    def test_non_primitive_ray_fails(self):
        bad = Fan.make(2, [(2, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (2, 0)])
        report = validate_fan(bad)
        assert not report.ok

    def test_singular_cone_detected(self):
        # cone spanned by (1,0) and (1,2) has index 2
        bad = Fan.make(2, [(1, 0), (1, 2), (-1, -1)], [(0, 1), (1, 2), (2, 0)])
        report = validate_fan(bad)
        assert not report.smooth

    def test_missing_cone_breaks_completeness(self):
        halfopen = Fan.make(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)],
                            [(0, 1, 2), (0, 1, 3), (0, 2, 3)])
        report = validate_fan(halfopen)
        assert not report.complete

    def test_catalog_euler_identity(self, records):
        for rec in records.values():
            assert validate_fan(rec.fan).ok, rec.name
            assert len(rec.fan.max_cones) == 2 * rec.fan.n_rays - 4


class TestPrimitiveCollections:
    def test_d1(self, d1):
        got = one_based(primitive_collections(d1.fan))
        assert got == {(3, 6), (4, 6), (3, 5), (1, 2, 4), (1, 2, 5)}

    def test_e1(self, e1):
        got = one_based(primitive_collections(e1.fan))
        assert got == {(2, 4), (3, 5), (1, 3), (2, 5), (1, 4), (6, 7)}

    def test_p3_single_collection(self):
        assert one_based(primitive_collections(P3)) == {(1, 2, 3, 4)}

    def test_minimality_by_enumeration(self, records):
        for rec in records.values():
            fan = rec.fan
            for pc in primitive_collections(fan):
                assert not is_face(fan, pc)
                for i in pc:
                    assert is_face(fan, set(pc) - {i})


class TestPrimitiveRelations:
    def test_d1_relations(self, d1):
        rels = {tuple(i + 1 for i in r.collection): (tuple((t + 1, c) for t, c in r.target), r.degree)
                for r in primitive_relations(d1.fan)}
        assert rels[(3, 6)] == ((), 2)
        assert rels[(1, 2, 4)] == (((3, 2),), 1)
        assert rels[(1, 2, 5)] == (((3, 1),), 2)

    def test_e4_twist_relation(self, records):
        rels = {tuple(i + 1 for i in r.collection): tuple((t + 1, c) for t, c in r.target)
                for r in primitive_relations(records["E4"].fan)}
        assert rels[(6, 7)] == ((3, 1),)

    def test_relations_reevaluate_exactly(self, records):
        for rec in records.values():
            fan = rec.fan
            for rel in primitive_relations(fan):
                lhs = [sum(fan.rays[i][j] for i in rel.collection) for j in range(fan.dim)]
                rhs = [sum(c * fan.rays[t][j] for t, c in rel.target) for j in range(fan.dim)]
                assert lhs == rhs
                assert all(c > 0 for _, c in rel.target)

    def test_incomplete_fan_raises(self):
        # P^2 fan with one maximal cone removed: {v1, v3} spans no cone and
        # its ray sum (0, -1) escapes the remaining support
        open_fan = Fan.make(2, [(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2)])
        with pytest.raises(InteriorCoverFailure):
            primitive_relations(open_fan)


class TestIsFano:
    def test_d1_and_p3_are_fano(self, d1):
        assert is_fano(d1.fan)
        assert is_fano(P3)

    def test_hirzebruch_f2_is_not(self):
        assert validate_fan(HIRZEBRUCH_F2).ok
        assert not is_fano(HIRZEBRUCH_F2)
        # the flat relation: v1 + v3 = 2 v2, degree 0
        rels = {tuple(r.collection): r.degree for r in primitive_relations(HIRZEBRUCH_F2)}
        assert rels[(0, 2)] == 0

    def test_catalog_all_fano(self, records):
        assert all(is_fano(rec.fan) for rec in records.values())
