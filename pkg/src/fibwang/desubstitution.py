"""Marker tiles and desubstitution of Wang shifts.

Markers in direction ``e_i`` occupy whole lines orthogonal to ``e_i`` and
two such lines are never adjacent.  Admissibility of dominoes is only
checked in a finite neighborhood, so every claim made here holds relative
to the radius that was used.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .morphisms import PHI, Morphism2D, Word2D, _UnionFind, compose2
from .wang import (
    EquivalenceCertificate,
    WangTile,
    WangTileSet,
    admissible_dominoes,
    is_equivalent,
)

__all__ = [
    "MarkerError",
    "PipelineError",
    "MarkerSet",
    "DesubResult",
    "PipelineResult",
    "marker_violations",
    "find_markers",
    "find_substitution",
    "fuse",
    "compose2",
    "relabel_morphism",
    "self_similarity_pipeline",
]


class MarkerError(ValueError):
    pass


class PipelineError(RuntimeError):
    def __init__(self, stage: str, message: str):
        self.stage = stage
        super().__init__(f"{stage}: {message}")


@dataclass(frozen=True)
class MarkerSet:
    direction: int
    letters: tuple[int, ...]
    radius: int

    def __contains__(self, a: int) -> bool:
        return a in self.letters


@dataclass(frozen=True)
class DesubResult:
    new_set: WangTileSet
    morphism: Morphism2D
    side: str
    direction: int
    markers: MarkerSet


def marker_violations(tiles: WangTileSet, letters, direction: int, radius: int,
                      _dominoes=None) -> list[str]:
    """Local marker conditions that fail; an empty list means none fail."""
    m = set(letters)
    problems = []
    if not m:
        problems.append("marker set is empty")
    if len(m) >= len(tiles) or not m <= set(range(len(tiles))):
        problems.append("marker set must be a proper subset of the tile indices")
    across, parallel = _dominoes or (
        admissible_dominoes(tiles, direction, radius),
        admissible_dominoes(tiles, 3 - direction, radius),
    )
    for u, v in sorted(parallel):
        if (u in m) != (v in m):
            problems.append(f"domino ({u}, {v}) along the marker lines mixes markers and non-markers")
    for u, v in sorted(across):
        if u in m and v in m:
            problems.append(f"domino ({u}, {v}) puts two marker lines side by side")
    return problems


def find_markers(tiles: WangTileSet, direction: int, radius: int) -> list[MarkerSet]:
    """Maximal marker sets in the given direction, ordered by smallest member.

    Dominoes along the marker lines force their two letters to agree on
    membership, so candidates are unions of connected classes of that
    relation.  A union qualifies when no admissible domino across the lines
    has both ends inside it.
    """
    if direction not in (1, 2):
        raise ValueError(f"direction must be 1 or 2, got {direction}")
    n = len(tiles)
    across = admissible_dominoes(tiles, direction, radius)
    parallel = admissible_dominoes(tiles, 3 - direction, radius)
    uf = _UnionFind(range(n))
    for u, v in parallel:
        uf.union(u, v)
    groups: dict[int, set[int]] = {}
    for a in range(n):
        groups.setdefault(uf.find(a), set()).add(a)
    classes = sorted((frozenset(g) for g in groups.values()), key=min)
    class_of = {a: k for k, c in enumerate(classes) for a in c}
    clash = set()  # pairs of classes joined by a domino across the lines
    for u, v in across:
        clash.add((class_of[u], class_of[v]))
        clash.add((class_of[v], class_of[u]))

    solutions: list[frozenset[int]] = []

    def extend(k: int, chosen: list[int]):
        if k == len(classes):
            if chosen:
                solutions.append(frozenset(chosen))
            return
        if all((k, c) not in clash for c in chosen + [k]):
            extend(k + 1, chosen + [k])
        extend(k + 1, chosen)

    extend(0, [])
    proper = [s for s in solutions if sum(len(classes[k]) for k in s) < n]
    maximal = [s for s in proper if not any(s < t for t in proper)]
    out = [
        MarkerSet(direction, tuple(sorted(a for k in s for a in classes[k])), radius)
        for s in maximal
    ]
    return sorted(out, key=lambda m: m.letters)


def fuse(first: WangTile, second: WangTile, direction: int) -> WangTile:
    """Single tile for ``first`` followed by ``second`` along ``e_direction``.

    Edges cut by the join keep their outer color; the two edges lying
    along the join are concatenated, ``first`` then ``second``.
    """
    if direction == 1:
        return WangTile(second.east, first.north + second.north, first.west, first.south + second.south)
    if direction == 2:
        return WangTile(first.east + second.east, second.north, first.west + second.west, first.south)
    raise ValueError(f"direction must be 1 or 2, got {direction}")


def _domino(u: int, v: int, direction: int) -> Word2D:
    if direction == 1:
        return Word2D(((u, v),))
    return Word2D(((u,), (v,)))


def find_substitution(tiles: WangTileSet, markers: MarkerSet | Sequence[int], direction: int,
                      radius: int, side: str = "right") -> DesubResult:
    """Desubstitute along marker lines.

    New letters are the non-marker tiles that can be followed (side
    ``right``) or preceded (side ``left``) by a non-marker, in index order,
    then the admissible dominoes pairing a non-marker with a marker on the
    chosen side, in lexicographic order of the pair.
    """
    if side not in ("right", "left"):
        raise ValueError(f"side must be 'right' or 'left', got {side!r}")
    if not isinstance(markers, MarkerSet):
        markers = MarkerSet(direction, tuple(sorted(markers)), radius)
    across = admissible_dominoes(tiles, direction, radius)
    parallel = admissible_dominoes(tiles, 3 - direction, radius)
    problems = marker_violations(tiles, markers.letters, direction, radius, (across, parallel))
    if problems:
        raise MarkerError("; ".join(problems))
    m = set(markers.letters)
    if side == "right":
        singles = sorted({u for u, v in across if u not in m and v not in m})
        pairs = sorted((u, v) for u, v in across if u not in m and v in m)
    else:
        singles = sorted({v for u, v in across if u not in m and v not in m})
        pairs = sorted((u, v) for u, v in across if u in m and v not in m)
    new_tiles = [tiles[a] for a in singles]
    rule = {k: Word2D.letter(a) for k, a in enumerate(singles)}
    for k, (u, v) in enumerate(pairs, start=len(singles)):
        new_tiles.append(fuse(tiles[u], tiles[v], direction))
        rule[k] = _domino(u, v, direction)
    return DesubResult(WangTileSet(tuple(new_tiles)), Morphism2D(rule), side, direction, markers)


def relabel_morphism(certificate: EquivalenceCertificate, source: WangTileSet | None = None,
                     target: WangTileSet | None = None) -> Morphism2D:
    """Letter-to-letter morphism sending each tile to its image under the certificate."""
    if source is not None and target is not None and not certificate.verify(source, target):
        raise ValueError("certificate does not relabel the source set onto the target set")
    return Morphism2D({a: Word2D.letter(b) for a, b in sorted(certificate.tile_map.items())})


@dataclass(frozen=True)
class PipelineResult:
    stages: tuple[DesubResult, DesubResult]
    certificate: EquivalenceCertificate
    gamma2: Morphism2D
    composite: Morphism2D
    transcript: str

    @property
    def matches_phi(self) -> bool:
        return self.composite == PHI


def _table(morphism: Morphism2D) -> list[str]:
    return [f"  {a} -> {w}" for a, w in morphism.rule.items()]


def self_similarity_pipeline(tiles: WangTileSet, expected: Morphism2D | None = PHI) -> PipelineResult:
    """Two marker desubstitutions then a relabeling back onto ``tiles``.

    The parameters (direction 2 at radius 2, then direction 1 at radius 1,
    markers on the right) are the ones that work for the 16-tile set Z.
    """
    lines: list[str] = []

    def stage(name, tile_set, direction, radius, expected_size):
        found = find_markers(tile_set, direction, radius)
        listed = ", ".join("[" + ",".join(map(str, m.letters)) + "]" for m in found) or "none"
        lines.append(f"markers e{direction} r{radius}: {listed}")
        if len(found) != 1:
            raise PipelineError(f"markers e{direction} r{radius}", f"expected one marker set, found {len(found)}")
        result = find_substitution(tile_set, found[0], direction, radius, "right")
        lines.append(f"{name}: {len(result.new_set)} tiles")
        if len(result.new_set) != expected_size:
            raise PipelineError(name, f"expected {expected_size} tiles, got {len(result.new_set)}")
        return result

    first = stage("Z1", tiles, 2, 2, len(tiles) + 2)
    lines.append("gamma0:")
    lines.extend(_table(first.morphism))
    second = stage("Z2", first.new_set, 1, 1, len(tiles))
    lines.append("gamma1:")
    lines.extend(_table(second.morphism))
    certificate = is_equivalent(tiles, second.new_set)
    lines.append(f"equivalent(Z, Z2): {certificate is not None}")
    if certificate is None:
        raise PipelineError("equivalence", "final tile set is not equivalent to the input")
    gamma2 = relabel_morphism(certificate, tiles, second.new_set)
    lines.append("gamma2:")
    lines.extend(_table(gamma2))
    composite = compose2(first.morphism, compose2(second.morphism, gamma2))
    lines.append("composite:")
    lines.extend(_table(composite))
    if expected is not None:
        verdict = "PASS" if composite == expected else "FAIL"
        lines.append(f"composite == phi: {verdict}")
    return PipelineResult((first, second), certificate, gamma2, composite, "\n".join(lines) + "\n")
