"""Tiles, fan jigsaws, vertical tessellation structure, tangency data."""

from fractions import Fraction

import pytest

from jigsaw import INF, IsometryClass, ProjectiveMatrix, classify, compose, mobius_apply
from jigsaw.errors import (
    EmptyFingerprint,
    EmptyJigsaw,
    NotATranslation,
    UnsupportedTileType,
)
from jigsaw.tiling import (
    MarkedPoint,
    Tile,
    assemble_fan_jigsaw,
    balance_check,
    base_tile,
    enumerate_vertical_tiles,
    fan_jigsaw_group,
    fundamental_length,
    tangency_fingerprint,
    tangency_period,
    tile_rotations,
    weierstrass_group,
    width_pattern,
)

F = Fraction


class TestBaseTile:
    def test_marked_points_type_1(self):
        t = base_tile(1)
        marks = [(s.marked.x, s.marked.y_squared) for s in t.sides]
        assert marks == [(F(-1), F(1)), (F(-1, 2), F(1, 4)), (F(0), F(1))]

    def test_marked_points_type_4(self):
        t = base_tile(4)
        assert (t.sides[2].marked.x, t.sides[2].marked.y_squared) == (F(0), F(4))

    def test_marked_points_type_2_bottom(self):
        t = base_tile(2)
        assert (t.sides[1].marked.x, t.sides[1].marked.y_squared) == (F(-2, 3), F(2, 9))

    def test_side_types(self):
        t = base_tile(4)
        assert [s.side_type for s in t.sides] == [F(1), F(1, 4), F(4)]

    def test_vertices(self):
        t = base_tile(7)
        assert t.vertices == (INF, F(-1), F(0))

    def test_side_rotation_swaps_endpoints(self):
        for n in (1, 2, 4, 9):
            for side in base_tile(n).sides:
                r = side.marked.rotation
                p, q = side.endpoints
                assert mobius_apply(r, p) == q and mobius_apply(r, q) == p


class TestTileRotations:
    def test_integer_representatives(self):
        a, b, c = tile_rotations(4)
        assert a.entries() == (1, 2, -1, -1)
        assert b.entries() == (4, 4, -5, -4)
        assert c.entries() == (0, 4, -1, 0)

    def test_type_1(self):
        a, b, c = tile_rotations(1)
        assert a.entries() == (1, 2, -1, -1)
        assert b.entries() == (1, 1, -2, -1)
        assert c.entries() == (0, 1, -1, 0)

    def test_involutions(self):
        for n in (1, 2, 3, 4, 10, 25):
            for r in tile_rotations(n):
                assert compose(r, r).is_identity()
                assert r.a + r.d == 0

    def test_matches_base_tile_marks(self):
        for n in (1, 2, 4, 6):
            rotations = tile_rotations(n)
            tile = base_tile(n)
            assert tuple(s.marked.rotation for s in tile.sides) == rotations


class TestBalance:
    def test_base_tiles_balanced_up_to_50(self):
        for n in range(1, 51):
            assert balance_check(base_tile(n))

    def test_type_4_product_value(self):
        a, b, c = tile_rotations(4)
        assert compose(a, compose(b, c)).entries() == (1, -6, 0, 1)

    def test_corrupted_tile_unbalanced(self):
        t = base_tile(4)
        bad_side = t.sides[2].annotated()
        bad = Tile(
            4,
            t.placement,
            t.vertices,
            (
                t.sides[0],
                t.sides[1],
                type(t.sides[2])(
                    t.sides[2].endpoints, t.sides[2].side_type, MarkedPoint.at(F(0), F(9))
                ),
            ),
        )
        assert not balance_check(bad)
        del bad_side


class TestWeierstrass:
    def test_w4_length(self):
        assert weierstrass_group(4).fundamental_length == 6

    def test_w1_length(self):
        assert weierstrass_group(1).fundamental_length == 3

    def test_w6_product(self):
        # ordered product of the three half-turns is the translation by n + 2
        g = weierstrass_group(6)
        p = compose(g.generators[2], compose(g.generators[1], g.generators[0]))
        assert p.entries() == (1, 8, 0, 1)

    def test_generator_count(self):
        assert len(weierstrass_group(9).generators) == 3


class TestAssemble:
    def test_single_type_4(self):
        j = assemble_fan_jigsaw(0, 1)
        assert j.tile_count == 1
        assert j.vertices == (INF, F(-1), F(0))
        assert j.tiles[0].tile_type == 4

    def test_one_one(self):
        j = assemble_fan_jigsaw(1, 1)
        assert j.tile_count == 2
        assert j.vertices == (INF, F(-2), F(-1), F(0))
        assert [t.tile_type for t in j.tiles] == [1, 4]

    def test_two_one_leftmost(self):
        j = assemble_fan_jigsaw(2, 1)
        assert j.tile_count == 3
        assert j.vertices[1] == F(-3)

    def test_chain_vertices(self):
        j = assemble_fan_jigsaw(0, 4)
        assert j.vertices == (INF, F(-1), F(0), F(4), F(5), F(6))

    def test_glued_sides_match(self):
        for m, n in [(0, 2), (1, 1), (2, 3), (3, 2), (0, 7)]:
            j = assemble_fan_jigsaw(m, n)
            for prev, cur in zip(j.tiles, j.tiles[1:]):
                assert prev.sides[2].side_type == cur.sides[0].side_type
                assert prev.sides[2].marked == cur.sides[0].marked

    def test_all_tiles_balanced(self):
        for m, n in [(1, 1), (2, 2), (0, 5)]:
            for t in assemble_fan_jigsaw(m, n).tiles:
                assert balance_check(t)

    def test_empty_rejected(self):
        with pytest.raises(EmptyJigsaw):
            assemble_fan_jigsaw(1, 0)

    def test_generator_on_right_vertical(self):
        # J 1 1: the rightmost boundary point is the height-2 point above 0
        j = assemble_fan_jigsaw(1, 1)
        mark = j.exterior_marked_points[-1]
        assert (mark.x, mark.y_squared) == (F(0), F(4))

    def test_generators_are_involutions(self):
        for m, n in [(1, 1), (2, 1), (1, 2), (0, 3)]:
            g = fan_jigsaw_group(m, n)
            for rho in g.generators:
                assert compose(rho, rho).is_identity()


class TestFundamentalLength:
    def test_formula_small(self):
        assert fan_jigsaw_group(1, 1).fundamental_length == 9
        assert fan_jigsaw_group(3, 2).fundamental_length == 21
        assert fan_jigsaw_group(0, 1).fundamental_length == 6

    def test_not_a_translation(self):
        g = weierstrass_group(4)
        with pytest.raises(NotATranslation):
            fundamental_length((g.generators[0], g.generators[1]))

    def test_translation_letters_round_trip(self):
        g = fan_jigsaw_group(1, 1)
        letters = g.translation_letters(1)
        product = g.generators[letters[0]]
        for l in letters[1:]:
            product = compose(product, g.generators[l])
        assert product == g.translation


class TestVerticalTiles:
    def test_gamma_m1_window(self, g11):
        tiles = enumerate_vertical_tiles(g11, F(-1), F(5))
        spans = [(t.left_vertex, t.right_vertex, t.tile_type) for t in tiles]
        assert spans == [(F(-1), F(0), 4), (F(0), F(4), 4), (F(4), F(5), 4)]
        assert width_pattern(tiles) == (1, 4, 1)

    def test_width_pattern_half_tiles(self, g11):
        tiles = enumerate_vertical_tiles(g11, F(0), F(4))
        assert width_pattern(tiles, split_half_tiles=True) == (2, 2)

    def test_empty_pattern(self):
        assert width_pattern([]) == ()

    def test_type_4_width_4_marks(self, g11):
        tiles = enumerate_vertical_tiles(g11, F(0), F(4))
        (t,) = tiles
        assert t.width == 4
        marks = [(s.marked.x, s.marked.y_squared) for s in t.sides()]
        assert marks == [(F(0), F(4)), (F(2), F(4)), (F(4), F(4))]

    def test_periodicity(self, w4):
        length = w4.fundamental_length
        base = enumerate_vertical_tiles(w4, F(0), F(6))
        shifted = enumerate_vertical_tiles(w4, F(length), F(length + 6))
        assert [(t.left_vertex + length, t.width, t.tile_type) for t in base] == [
            (t.left_vertex, t.width, t.tile_type) for t in shifted
        ]

    def test_exterior_flags_transport(self, g21):
        # the [0,4] tile of J 2 1 has an interior bottom (a type-1 tile sits below)
        tiles = enumerate_vertical_tiles(g21, F(0), F(4))
        (t,) = [v for v in tiles if v.width == 4]
        assert not t.bottom.exterior
        assert t.left.exterior and t.right.exterior


def conforms_to_configuration(t) -> bool:
    """Check a vertical tile against the three legal type-4 shapes or the type-1 shape."""
    x = t.left_vertex
    marks = [(s.marked.x, s.marked.y_squared) for s in t.sides()]
    types = [s.side_type for s in t.sides()]
    if t.tile_type == 1:
        return (
            t.width == 1
            and marks == [(x, F(1)), (x + F(1, 2), F(1, 4)), (x + 1, F(1))]
            and types == [F(1), F(1), F(1)]
        )
    if t.tile_type != 4:
        return False
    shapes = {
        F(1): (1, [F(1), F(1, 4), F(4)], [(x, F(1)), (x + F(1, 5), F(4, 25)), (x + 1, F(4))]),
        F(4): (4, [F(4), F(1), F(1, 4)], [(x, F(4)), (x + 2, F(4)), (x + 4, F(4))]),
        F(1, 4): (1, [F(1, 4), F(4), F(1)], [(x, F(4)), (x + F(4, 5), F(4, 25)), (x + 1, F(1))]),
    }
    width, expect_types, expect_marks = shapes[types[0]]
    return t.width == width and types == expect_types and marks == expect_marks


class TestConfigurations:
    @pytest.mark.parametrize("m,n", [(0, 1), (1, 1), (2, 1), (1, 2), (2, 3), (0, 4)])
    def test_every_tile_conforms(self, m, n):
        g = fan_jigsaw_group(m, n)
        window = 2 * g.fundamental_length
        for t in enumerate_vertical_tiles(g, F(-window), F(window)):
            assert conforms_to_configuration(t)
            assert t.left_vertex.denominator == 1

    @pytest.mark.parametrize("m,n", [(1, 1), (1, 2), (2, 2), (0, 3)])
    def test_no_forbidden_width_patterns(self, m, n):
        g = fan_jigsaw_group(m, n)
        tiles = enumerate_vertical_tiles(g, F(0), F(3 * g.fundamental_length))
        pattern = width_pattern(tiles)
        for a, b in zip(pattern, pattern[1:]):
            assert (a, b) != (4, 4)
        halved = width_pattern(tiles, split_half_tiles=True)
        for i in range(len(halved) - 2):
            assert halved[i : i + 3] != (1, 2, 1)


class TestTangency:
    def test_gamma_m1_points(self, g11):
        fp = tangency_fingerprint(g11)
        length = g11.fundamental_length
        assert fp.points == (F(0), F(4), F(0) + length, F(4) + length)

    def test_gamma_13_pattern(self):
        g = fan_jigsaw_group(1, 3)
        fp = tangency_fingerprint(g)
        # one period carries the arithmetic-progression block ending at 2n - 4
        one_period = [x for x in fp.points if x < g.fundamental_length]
        assert F(2) in one_period and F(2 * 3 - 4) in one_period

    def test_w1_empty(self):
        fp = tangency_fingerprint(weierstrass_group(1))
        assert fp.points == ()
        with pytest.raises(EmptyFingerprint):
            tangency_period(weierstrass_group(1))

    def test_unsupported_type(self):
        with pytest.raises(UnsupportedTileType):
            tangency_fingerprint(weierstrass_group(3))

    def test_invariance_under_length_shift(self, g12):
        fp = tangency_fingerprint(g12)
        length = g12.fundamental_length
        first = {x for x in fp.points if x < length}
        second = {x - length for x in fp.points if x >= length}
        assert first == second

    def test_periods(self):
        assert tangency_period(fan_jigsaw_group(2, 1)) == 12
        assert tangency_period(fan_jigsaw_group(1, 2)) == 15
        assert tangency_period(fan_jigsaw_group(1, 3)) == 21

    def test_w4_has_smaller_period(self, w4):
        # the one-tile chain is 2-periodic at height 2; only m,n >= 1 fans
        # are expected to realize the full length
        assert tangency_period(w4) == 2
