"""Decorated ideal triangles, fan jigsaws, and their rotation groups.

A tile of type n is an isometric copy of the base triangle with vertices
infinity, -1, 0 and one marked point on each side; the half-turns about the
marked points generate everything.  A fan jigsaw is a row of tiles all sharing
the vertex at infinity, glued so that identified sides carry the same side
type and the same marked point.

Anchoring convention: the base tile placed at (infinity, -1, 0) is the first
type-4 tile of the chain (or the single tile for one-tile jigsaws); type-1
tiles extend to its left, further type-4 tiles to its right.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    EmptyJigsaw,
    NotATranslation,
    BudgetExceeded,
    EmptyFingerprint,
    UnsupportedTileType,
)
from .exact import (
    INF,
    ExtendedRational,
    IsometryClass,
    ProjectiveMatrix,
    apply_to_point,
    classify,
    compose,
    inverse,
    is_infinite,
    mobius_apply,
    rotation_about,
)

F = Fraction

# Side types are the rationals 1, n, 1/n; two sides match iff their types are
# equal as rationals (so every side of a type-1 tile has type 1).
SideType = Fraction


@dataclass(frozen=True)
class MarkedPoint:
    """A marked point (x, y) on a geodesic side, stored as x and y^2."""

    x: Fraction
    y_squared: Fraction
    rotation: ProjectiveMatrix

    @staticmethod
    def at(x: Fraction, y_squared: Fraction) -> "MarkedPoint":
        return MarkedPoint(F(x), F(y_squared), rotation_about(x, y_squared))


@dataclass(frozen=True)
class TileSide:
    """One side of a placed tile.

    interior_neighbor / generator_index are jigsaw-level annotations: exactly
    one of them is set once the tile belongs to a jigsaw, and both are None
    for a free-standing tile.
    """

    endpoints: tuple[ExtendedRational, ExtendedRational]
    side_type: SideType
    marked: MarkedPoint
    interior_neighbor: Optional[int] = None
    generator_index: Optional[int] = None

    def is_vertical(self) -> bool:
        return any(is_infinite(e) for e in self.endpoints)

    def annotated(self, interior_neighbor=None, generator_index=None) -> "TileSide":
        return TileSide(
            self.endpoints, self.side_type, self.marked, interior_neighbor, generator_index
        )


@dataclass(frozen=True)
class Tile:
    """A placed tile: an isometric image of the base tile of its type.

    sides are listed in the cyclic order (left vertical, bottom, right
    vertical) for fan tiles, which is the image of the base order
    ([inf,-1], [-1,0], [0,inf]).
    """

    tile_type: int
    placement: ProjectiveMatrix
    vertices: tuple[ExtendedRational, ExtendedRational, ExtendedRational]
    sides: tuple[TileSide, TileSide, TileSide]

    @property
    def left_vertex(self) -> Fraction:
        return self.vertices[1]

    @property
    def right_vertex(self) -> Fraction:
        return self.vertices[2]


def tile_rotations(n: int) -> tuple[ProjectiveMatrix, ProjectiveMatrix, ProjectiveMatrix]:
    """Half-turns about the three base marked points of a type-n tile.

    Integer representatives: (1,2,-1,-1), (n,n,-n-1,-n), (0,n,-1,0).
    """
    if n < 1:
        raise UnsupportedTileType(f"tile type must be a positive integer, got {n}")
    return (
        ProjectiveMatrix(1, 2, -1, -1),
        ProjectiveMatrix(n, n, -n - 1, -n),
        ProjectiveMatrix(0, n, -1, 0),
    )


def base_tile(n: int) -> Tile:
    """The type-n tile with vertices infinity, -1, 0 and its standard marks."""
    if n < 1:
        raise UnsupportedTileType(f"tile type must be a positive integer, got {n}")
    n = int(n)
    sides = (
        TileSide((INF, F(-1)), F(1), MarkedPoint.at(F(-1), F(1))),
        TileSide((F(-1), F(0)), F(1, n), MarkedPoint.at(F(-n, n + 1), F(n, (n + 1) ** 2))),
        TileSide((F(0), INF), F(n), MarkedPoint.at(F(0), F(n))),
    )
    return Tile(n, ProjectiveMatrix(1, 0, 0, 1), (INF, F(-1), F(0)), sides)


def _conjugate(g: ProjectiveMatrix, r: ProjectiveMatrix) -> ProjectiveMatrix:
    return compose(g, compose(r, inverse(g)))


def place_tile(base: Tile, g: ProjectiveMatrix) -> Tile:
    """Transport a tile by the isometry g, keeping the fan side order.

    Requires the image to be a fan tile (one vertex at infinity); sides are
    relabelled so they stay in (left, bottom, right) order.
    """
    images = [mobius_apply(g, v) for v in base.vertices]
    finite = sorted(v for v in images if not is_infinite(v))
    if len(finite) != 2:
        raise ValueError("placement does not yield a fan tile")
    lo, hi = finite
    arrangement = {
        frozenset_key((INF, lo)): 0,
        frozenset_key((lo, hi)): 1,
        frozenset_key((hi, INF)): 2,
    }
    new_sides: list[Optional[TileSide]] = [None, None, None]
    for side, v_pair in zip(base.sides, ((base.vertices[0], base.vertices[1]),
                                         (base.vertices[1], base.vertices[2]),
                                         (base.vertices[2], base.vertices[0]))):
        imgs = (mobius_apply(g, v_pair[0]), mobius_apply(g, v_pair[1]))
        slot = arrangement[frozenset_key(imgs)]
        x, y2 = apply_to_point(g, side.marked.x, side.marked.y_squared)
        marked = MarkedPoint(x, y2, _conjugate(g, side.marked.rotation))
        new_sides[slot] = TileSide(
            imgs, side.side_type, marked, side.interior_neighbor, side.generator_index
        )
    return Tile(base.tile_type, compose(g, base.placement), (INF, lo, hi),
                (new_sides[0], new_sides[1], new_sides[2]))


def frozenset_key(pair) -> frozenset:
    return frozenset("inf" if is_infinite(v) else v for v in pair)


def balance_check(tile: Tile) -> bool:
    """A tile is balanced iff its three side half-turns compose to a parabolic."""
    product = compose(tile.sides[0].marked.rotation,
                      compose(tile.sides[1].marked.rotation, tile.sides[2].marked.rotation))
    # cyclic order of the product does not affect the isometry class
    return classify(product) is IsometryClass.PARABOLIC


@dataclass(frozen=True)
class Jigsaw:
    """A fan of tiles sharing the vertex at infinity.

    vertices = (infinity, v_1 < ... < v_{N+1}); exterior_marked_points are
    ordered along the boundary: left vertical side, each bottom side left to
    right, right vertical side.
    """

    tiles: tuple[Tile, ...]
    vertices: tuple[ExtendedRational, ...]
    exterior_marked_points: tuple[MarkedPoint, ...]
    description: str

    @property
    def tile_count(self) -> int:
        return len(self.tiles)


def _annotate_fan(tiles: list[Tile], description: str) -> Jigsaw:
    """Mark interior/exterior sides of a fan and collect boundary marked points."""
    count = len(tiles)
    annotated: list[Tile] = []
    for i, tile in enumerate(tiles):
        left, bottom, right = tile.sides
        left = left.annotated(interior_neighbor=i - 1) if i > 0 else left.annotated(generator_index=0)
        bottom = bottom.annotated(generator_index=i + 1)
        right = (right.annotated(interior_neighbor=i + 1) if i < count - 1
                 else right.annotated(generator_index=count + 1))
        annotated.append(Tile(tile.tile_type, tile.placement, tile.vertices, (left, bottom, right)))
    for prev, cur in zip(annotated, annotated[1:]):
        if prev.sides[2].side_type != cur.sides[0].side_type:
            raise ValueError("glued sides have mismatched types")
        if prev.sides[2].marked != cur.sides[0].marked:
            raise ValueError("glued sides disagree on the shared marked point")
    marks = [annotated[0].sides[0].marked]
    marks += [t.sides[1].marked for t in annotated]
    marks.append(annotated[-1].sides[2].marked)
    vertices: tuple[ExtendedRational, ...] = (INF,) + tuple(
        t.left_vertex for t in annotated
    ) + (annotated[-1].right_vertex,)
    return Jigsaw(tuple(annotated), vertices, tuple(marks), description)


def assemble_fan_jigsaw(m: int, n: int) -> Jigsaw:
    """Fan jigsaw with m type-1 tiles followed by a chain of n type-4 tiles.

    The first type-4 tile is the base tile at (infinity, -1, 0); each further
    chain tile is obtained by reflecting the previous one across its right
    side with the half-turn about the shared marked point, so identified sides
    match by construction.  The type-1 tiles are unit translates extending to
    the left.
    """
    if n < 1 or m < 0:
        raise EmptyJigsaw(f"need m >= 0 and n >= 1, got m={m}, n={n}")
    tiles: list[Tile] = []
    one = base_tile(1)
    for j in range(m):
        shift = ProjectiveMatrix(1, -m + j, 0, 1)
        tiles.append(place_tile(one, shift))
    four = base_tile(4)
    current = four
    tiles.append(current)
    for _ in range(n - 1):
        shared = current.sides[2].marked
        current = place_tile(four, compose(shared.rotation, current.placement))
        tiles.append(current)
    return _annotate_fan(tiles, f"J {m} {n}")


@dataclass(frozen=True)
class JigsawGroup:
    """A jigsaw plus the half-turn generators about its boundary marked points."""

    jigsaw: Jigsaw
    generators: tuple[ProjectiveMatrix, ...]
    fundamental_length: int
    product_translates_right: bool = True

    @property
    def group_id(self) -> str:
        return self.jigsaw.description

    @property
    def tile_types(self) -> tuple[int, ...]:
        return tuple(t.tile_type for t in self.jigsaw.tiles)

    @property
    def translation(self) -> ProjectiveMatrix:
        return ProjectiveMatrix(1, self.fundamental_length, 0, 1)

    def translation_letters(self, power: int = 1) -> tuple[int, ...]:
        """Generator word for the horizontal translation by power * length."""
        count = len(self.generators)
        forward = tuple(range(count - 1, -1, -1))
        if not self.product_translates_right:
            power = -power
        if power >= 0:
            return forward * power
        return tuple(reversed(forward)) * (-power)


def jigsaw_generators(jigsaw: Jigsaw) -> tuple[ProjectiveMatrix, ...]:
    """Half-turns about the exterior marked points, in boundary order."""
    return tuple(mark.rotation for mark in jigsaw.exterior_marked_points)


def fundamental_length(generators: tuple[ProjectiveMatrix, ...]) -> int:
    """Translation amount of the ordered product of the generators.

    The product taken from the last generator down to the first must be a
    horizontal integer translation; its absolute size is returned.
    """
    size, _ = _translation_of_product(generators)
    return size


def _translation_of_product(generators) -> tuple[int, bool]:
    product = generators[-1]
    for g in reversed(generators[:-1]):
        product = compose(product, g)
    a, b, c, d = product.entries()
    if c != 0 or a != d or b == 0:
        raise NotATranslation(f"generator product {product} is not a translation")
    return abs(b), b > 0


def _group_from_jigsaw(jigsaw: Jigsaw) -> JigsawGroup:
    gens = jigsaw_generators(jigsaw)
    size, rightward = _translation_of_product(gens)
    return JigsawGroup(jigsaw, gens, size, rightward)


def weierstrass_group(n: int) -> JigsawGroup:
    """The one-tile group generated by the three base half-turns of a type-n tile."""
    jigsaw = _annotate_fan([base_tile(n)], f"W {n}")
    return _group_from_jigsaw(jigsaw)


def fan_jigsaw_group(m: int, n: int) -> JigsawGroup:
    return _group_from_jigsaw(assemble_fan_jigsaw(m, n))


# ---------------------------------------------------------------------------
# Vertical tiles of the induced tessellation


@dataclass(frozen=True)
class VerticalSide:
    side_type: SideType
    exterior: bool
    marked: MarkedPoint


@dataclass(frozen=True)
class VerticalTile:
    """A tile of the induced tessellation having infinity as a vertex."""

    left_vertex: Fraction
    width: Fraction
    tile_type: int
    left: VerticalSide
    bottom: VerticalSide
    right: VerticalSide

    @property
    def right_vertex(self) -> Fraction:
        return self.left_vertex + self.width

    def sides(self) -> tuple[VerticalSide, VerticalSide, VerticalSide]:
        return (self.left, self.bottom, self.right)


def _vertical_tile_from_placed(group: JigsawGroup, placement: ProjectiveMatrix,
                               index: int) -> tuple[Tile, VerticalTile]:
    tile = place_tile(group.jigsaw.tiles[index], placement)
    sides = []
    for side in tile.sides:
        sides.append(VerticalSide(side.side_type, side.generator_index is not None, side.marked))
    vt = VerticalTile(tile.left_vertex, tile.right_vertex - tile.left_vertex,
                      tile.tile_type, sides[0], sides[1], sides[2])
    return tile, vt


def _step(group: JigsawGroup, placed: Tile, placement: ProjectiveMatrix, index: int,
          side_slot: int) -> tuple[ProjectiveMatrix, int]:
    """Cross the given (vertical) side of the placed jigsaw tile.

    The placed tile's sides carry the transported jigsaw annotations: across
    an exterior side with base rotation r the neighbour is (placement * r,
    same tile); across an interior side it is the sharing jigsaw tile with
    the same placement.
    """
    side = placed.sides[side_slot]
    if side.generator_index is not None:
        return compose(placement, group.generators[side.generator_index]), index
    return placement, side.interior_neighbor


def enumerate_vertical_tiles(group: JigsawGroup, x_lo: Fraction, x_hi: Fraction,
                             max_steps: Optional[int] = None) -> list[VerticalTile]:
    """Consecutive vertical tiles of the tessellation covering [x_lo, x_hi].

    Expansion is purely combinatorial: starting from the jigsaw's own fan,
    neighbours are produced by crossing vertical sides only (reflecting by the
    side's half-turn when it is exterior, switching to the sharing tile when
    it is interior).
    """
    x_lo, x_hi = F(x_lo), F(x_hi)
    if x_lo >= x_hi:
        raise ValueError("window must satisfy x_lo < x_hi")
    if max_steps is None:
        max_steps = 16 * (int(x_hi - x_lo) + group.fundamental_length + 4)

    identity = ProjectiveMatrix(1, 0, 0, 1)
    order: list[tuple[Tile, "VerticalTile", ProjectiveMatrix, int]] = []
    for i in range(group.jigsaw.tile_count):
        tile, vt = _vertical_tile_from_placed(group, identity, i)
        order.append((tile, vt, identity, i))
    steps = 0

    def expand(direction: int):
        nonlocal steps
        while True:
            tile, vt, placement, index = order[-1] if direction > 0 else order[0]
            if direction > 0 and vt.right_vertex >= x_hi:
                return
            if direction < 0 and vt.left_vertex <= x_lo:
                return
            steps += 1
            if steps > max_steps:
                raise BudgetExceeded(
                    f"vertical expansion exceeded {max_steps} steps for window "
                    f"[{x_lo}, {x_hi}]"
                )
            slot = 2 if direction > 0 else 0
            new_placement, new_index = _step(group, tile, placement, index, slot)
            new_tile, new_vt = _vertical_tile_from_placed(group, new_placement, new_index)
            if direction > 0:
                assert new_vt.left_vertex == vt.right_vertex
                order.append((new_tile, new_vt, new_placement, new_index))
            else:
                assert new_vt.right_vertex == vt.left_vertex
                order.insert(0, (new_tile, new_vt, new_placement, new_index))

    expand(+1)
    expand(-1)
    return [entry[1] for entry in order
            if entry[1].right_vertex > x_lo and entry[1].left_vertex < x_hi]


def width_pattern(tiles: list[VerticalTile], split_half_tiles: bool = False) -> tuple[int, ...]:
    """Widths of consecutive vertical tiles; width-4 tiles optionally split as 2+2."""
    widths: list[int] = []
    for tile in tiles:
        if tile.width.denominator != 1:
            raise ValueError(f"non-integer tile width {tile.width}")
        w = int(tile.width)
        if split_half_tiles and w == 4:
            widths.extend((2, 2))
        else:
            widths.append(w)
    return tuple(widths)


# ---------------------------------------------------------------------------
# Tangency points of the maximal horocycle


@dataclass(frozen=True)
class TangencyFingerprint:
    """Sorted tangency coordinates over a half-open window of two periods."""

    window: tuple[Fraction, Fraction]
    points: tuple[Fraction, ...]


def tangency_fingerprint(group: JigsawGroup) -> TangencyFingerprint:
    """x-coordinates of exterior marked points at height 2 over [0, 2 length).

    Only defined when every tile has type 1 or 4, so that all marked points of
    the tessellation lie on or below height 2.
    """
    for t in group.tile_types:
        if t not in (1, 4):
            raise UnsupportedTileType(
                f"tangency fingerprint needs tile types 1 and 4 only, found {t}"
            )
    length = group.fundamental_length
    window = (F(0), F(2 * length))
    points: set[Fraction] = set()
    for vt in enumerate_vertical_tiles(group, window[0] - 1, window[1] + 1):
        for side in vt.sides():
            if side.exterior and side.marked.y_squared == 4:
                x = side.marked.x
                if window[0] <= x < window[1]:
                    points.add(x)
    return TangencyFingerprint(window, tuple(sorted(points)))


def tangency_period(group: JigsawGroup) -> Fraction:
    """Least t > 0 such that the tangency set mod the fundamental length is t-invariant."""
    fingerprint = tangency_fingerprint(group)
    if not fingerprint.points:
        raise EmptyFingerprint(f"{group.group_id} has no height-2 tangency points")
    length = group.fundamental_length
    reduced = {x % length for x in fingerprint.points}
    candidates = sorted({(p - q) % length for p in reduced for q in reduced if p != q})
    for t in candidates:
        if {(x + t) % length for x in reduced} == reduced:
            return t
    return F(length)
