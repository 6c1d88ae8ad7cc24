"""Class group structure and canonical coordinates."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stackycoh.catalog import catalog_fan, catalog_names
from stackycoh.picard import (
    class_from_canonical,
    class_of,
    class_to_json,
    classes_equal,
    pic_structure,
)


def _shift(fan, a, w):
    return [
        a[i] + sum(w[j] * fan.rays[i][j] for j in range(fan.rank))
        for i in range(fan.nrays)
    ]


class TestStructure:
    @pytest.mark.parametrize(
        "name,free_rank,torsion",
        [
            ("p1", 1, ()),
            ("p1_21", 1, ()),
            ("p1_22", 1, (2,)),
            ("p2", 1, ()),
            ("p2_211", 1, ()),
            ("p2_221", 1, (2,)),
            ("p1xp1", 2, ()),
            ("hirzebruch1", 2, ()),
            ("cyclic5", 3, ()),
            ("p3", 1, ()),
            ("p3_2111", 1, ()),
            ("p1xp2", 2, ()),
            ("p1xp1xp1", 3, ()),
            ("blp3_123", 2, ()),
            ("blp3_center", 2, ()),
            ("tilted_bipyramid", 2, ()),
        ],
    )
    def test_frozen_ranks(self, name, free_rank, torsion):
        st_ = pic_structure(catalog_fan(name))
        assert st_.free_rank == free_rank
        assert st_.torsion == torsion

    def test_free_rank_is_rays_minus_rank(self):
        for name in catalog_names():
            fan = catalog_fan(name)
            assert pic_structure(fan).free_rank == fan.nrays - fan.rank


class TestClassesEqual:
    def test_p2_hyperplanes_agree(self):
        fan = catalog_fan("p2")
        assert classes_equal(fan, (1, 0, 0), (0, 1, 0))
        assert classes_equal(fan, (1, 0, 0), (0, 0, 1))
        assert not classes_equal(fan, (1, 0, 0), (0, 0, 2))

    def test_non_integral_solution_rejected(self):
        fan = catalog_fan("p1_22")
        # rays (2) and (-2): difference (1, 0) needs w = 1/2
        assert not classes_equal(fan, (1, 0), (0, 0))
        assert classes_equal(fan, (2, 0), (0, 2))

    def test_matches_canonical_coordinates(self):
        rng = random.Random(5)
        for name in catalog_names():
            fan = catalog_fan(name)
            for _ in range(25):
                a = [rng.randint(-6, 6) for _ in range(fan.nrays)]
                b = [rng.randint(-6, 6) for _ in range(fan.nrays)]
                ca, cb = class_of(fan, a), class_of(fan, b)
                same = (ca.free, ca.torsion) == (cb.free, cb.torsion)
                assert classes_equal(fan, a, b) == same, (name, a, b)


class TestCanonicalCoordinates:
    def test_shift_invariance_random(self):
        rng = random.Random(17)
        for name in catalog_names():
            fan = catalog_fan(name)
            for _ in range(100):
                a = [rng.randint(-9, 9) for _ in range(fan.nrays)]
                w = [rng.randint(-9, 9) for _ in range(fan.rank)]
                ca = class_of(fan, a)
                cb = class_of(fan, _shift(fan, a, w))
                assert (ca.free, ca.torsion) == (cb.free, cb.torsion)

    def test_round_trip_through_canonical(self):
        rng = random.Random(23)
        for name in catalog_names():
            fan = catalog_fan(name)
            for _ in range(20):
                a = [rng.randint(-5, 5) for _ in range(fan.nrays)]
                c = class_of(fan, a)
                back = class_from_canonical(fan, c.free, c.torsion)
                assert classes_equal(fan, back.raw, a)
                assert (back.free, back.torsion) == (c.free, c.torsion)

    @settings(max_examples=60, deadline=None)
    @given(
        st.sampled_from(["p2", "p1xp1", "p1_22", "p2_221", "p1xp2"]),
        st.data(),
    )
    def test_addition_is_coordinatewise(self, name, data):
        fan = catalog_fan(name)
        st_ = pic_structure(fan)
        a = data.draw(
            st.lists(st.integers(-6, 6), min_size=fan.nrays, max_size=fan.nrays)
        )
        b = data.draw(
            st.lists(st.integers(-6, 6), min_size=fan.nrays, max_size=fan.nrays)
        )
        ca, cb = class_of(fan, a), class_of(fan, b)
        cs = class_of(fan, [x + y for x, y in zip(a, b)])
        assert cs.free == tuple(x + y for x, y in zip(ca.free, cb.free))
        assert cs.torsion == tuple(
            (x + y) % d for x, y, d in zip(ca.torsion, cb.torsion, st_.torsion)
        )

    def test_torsion_detects_two_classes(self):
        fan = catalog_fan("p1_22")
        c10 = class_of(fan, (1, 0))
        c01 = class_of(fan, (0, 1))
        assert c10.free == c01.free
        assert c10.torsion != c01.torsion
        assert not classes_equal(fan, (1, 0), (0, 1))

    def test_torsion_residues_in_range(self):
        fan = catalog_fan("p2_221")
        st_ = pic_structure(fan)
        assert st_.torsion == (2,)
        for a0 in range(-3, 4):
            c = class_of(fan, (a0, 0, 0))
            assert all(0 <= t < d for t, d in zip(c.torsion, st_.torsion))

    def test_json_shape(self):
        fan = catalog_fan("p1_22")
        js = class_to_json(class_of(fan, (1, 0)))
        assert js == {
            "raw": [1, 0],
            "canonical": {"free": [1], "torsion": [1]},
        }

    def test_wrong_lengths_rejected(self):
        fan = catalog_fan("p2")
        with pytest.raises(ValueError):
            class_of(fan, (1, 0))
        with pytest.raises(ValueError):
            class_from_canonical(fan, (1, 2))
