"""One- and two-dimensional words and morphisms.

Two-dimensional words use Cartesian indexing: ``w[i, j]`` is column ``i``
(left to right) and row ``j`` (bottom to top).  Printing and the JSON format
list rows top-down, the way matrices are usually written.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

__all__ = [
    "MorphismError",
    "AlignmentError",
    "SeedError",
    "Word2D",
    "Morphism1D",
    "Morphism2D",
    "Seed2x2",
    "concat",
    "apply1",
    "apply2",
    "power1",
    "power2",
    "compose2",
    "two_sided_fixed_point",
    "quadrant_fixed_point",
    "list_factors",
    "prolongable_seeds",
    "column_row_equivalence",
    "horiz_vert_structure",
    "FIBONACCI",
    "PHI",
    "PHI_SEED",
]

Letter = Hashable


class MorphismError(ValueError):
    pass


class AlignmentError(MorphismError):
    """Images of letters sharing a column (row) have different widths (heights)."""


class SeedError(MorphismError):
    """The seed is not prolongable for the square of the morphism."""


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


@dataclass(frozen=True)
class Word2D:
    """Rectangular word stored as bottom-up rows: ``rows[j][i] == w[i, j]``."""

    rows: tuple[tuple[Letter, ...], ...]
    _width: int = 0

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise MorphismError(f"ragged rows: widths {sorted(widths)}")
        object.__setattr__(self, "rows", rows)
        if rows:
            object.__setattr__(self, "_width", len(rows[0]))

    @classmethod
    def from_top_rows(cls, rows: Iterable[Sequence[Letter]]) -> Word2D:
        return cls(tuple(tuple(r) for r in reversed(list(rows))))

    @classmethod
    def letter(cls, a: Letter) -> Word2D:
        return cls(((a,),))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Letter]]) -> Word2D:
        """Build from columns listed left to right, each column bottom-up."""
        if not columns:
            return cls(())
        return cls(tuple(zip(*columns)))

    @property
    def width(self) -> int:
        return self._width

    @property
    def height(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self._width, len(self.rows))

    def __getitem__(self, pos: tuple[int, int]) -> Letter:
        i, j = pos
        if not (0 <= i < self._width and 0 <= j < len(self.rows)):
            raise IndexError(f"position {pos} outside shape {self.shape}")
        return self.rows[j][i]

    def top_rows(self) -> list[list[Letter]]:
        return [list(r) for r in reversed(self.rows)]

    def column(self, i: int) -> tuple[Letter, ...]:
        return tuple(r[i] for r in self.rows)

    def letters(self) -> set[Letter]:
        return {a for r in self.rows for a in r}

    def subword(self, i: int, j: int, m: int, n: int) -> Word2D:
        return Word2D(tuple(r[i:i + m] for r in self.rows[j:j + n]))

    def subwords(self, shape: tuple[int, int]) -> set[Word2D]:
        m, n = shape
        return {
            self.subword(i, j, m, n)
            for i in range(self._width - m + 1)
            for j in range(self.height - n + 1)
        }

    def __str__(self) -> str:
        return " / ".join(" ".join(str(a) for a in r) for r in reversed(self.rows))

    def __repr__(self) -> str:
        return f"Word2D.from_top_rows({self.top_rows()!r})"


def concat(direction: int, u: Word2D, v: Word2D) -> Word2D:
    """``u`` followed by ``v`` along e1 (left to right) or e2 (bottom to top)."""
    if direction == 1:
        if u.height != v.height:
            raise MorphismError(f"cannot concatenate shapes {u.shape} and {v.shape} along e1")
        return Word2D(tuple(a + b for a, b in zip(u.rows, v.rows)))
    if direction == 2:
        if u.width != v.width:
            raise MorphismError(f"cannot concatenate shapes {u.shape} and {v.shape} along e2")
        return Word2D(u.rows + v.rows)
    raise MorphismError(f"direction must be 1 or 2, got {direction}")


def _as_word(word, letters_are_str: bool):
    return "".join(word) if letters_are_str else tuple(word)


@dataclass(frozen=True)
class Morphism1D:
    rule: Mapping[Letter, tuple[Letter, ...]]

    def __post_init__(self):
        rule = {a: tuple(w) for a, w in dict(self.rule).items()}
        for a, w in rule.items():
            if not w:
                raise MorphismError(f"image of {a!r} is empty")
            for b in w:
                if b not in rule:
                    raise MorphismError(f"image of {a!r} uses unknown letter {b!r}")
        object.__setattr__(self, "rule", rule)

    @property
    def alphabet(self) -> list[Letter]:
        return list(self.rule)

    def __call__(self, word):
        return apply1(self, word)

    def __eq__(self, other):
        return isinstance(other, Morphism1D) and self.rule == other.rule

    def __hash__(self):
        return hash(tuple(sorted(self.rule.items(), key=repr)))

    def __str__(self):
        return ", ".join(f"{a}->{''.join(map(str, w))}" for a, w in self.rule.items())


def apply1(sigma: Morphism1D, word):
    out = []
    for a in word:
        try:
            out.extend(sigma.rule[a])
        except KeyError:
            raise MorphismError(f"letter {a!r} not in the alphabet") from None
    return _as_word(out, isinstance(word, str))


def power1(sigma: Morphism1D, k: int) -> Morphism1D:
    if k < 1:
        raise MorphismError(f"power must be >= 1, got {k}")
    rule = {a: (a,) for a in sigma.rule}
    for _ in range(k):
        rule = {a: tuple(apply1(sigma, w)) for a, w in rule.items()}
    return Morphism1D(rule)


FIBONACCI = Morphism1D({"a": "ab", "b": "a"})


def two_sided_fixed_point(sigma: Morphism1D, seed, window: tuple[int, int]):
    """Letters ``x[lo:hi]`` of the two-sided fixed point of ``sigma**2``.

    ``seed`` is ``"b.a"`` or a pair ``(left, right)``: ``right`` sits at
    position 0 and ``left`` at position -1.
    """
    if isinstance(seed, str):
        left, _, right = seed.partition(".")
    else:
        left, right = seed
    sq = power1(sigma, 2)
    if sq.rule[right][0] != right or sq.rule[left][-1] != left:
        raise SeedError(f"seed {left}.{right} is not prolongable for the square")
    lo, hi = window
    pos, neg = (right,), (left,)
    while len(pos) < hi or len(neg) < -lo:
        new_pos, new_neg = tuple(apply1(sq, pos)), tuple(apply1(sq, neg))
        if len(new_pos) == len(pos) and len(new_neg) == len(neg):
            raise SeedError("fixed point does not grow; window cannot be covered")
        pos, neg = new_pos, new_neg
    letters = [neg[len(neg) + n] if n < 0 else pos[n] for n in range(lo, hi)]
    return _as_word(letters, all(isinstance(a, str) for a in letters))


@dataclass(frozen=True)
class Morphism2D:
    rule: Mapping[Letter, Word2D]

    def __post_init__(self):
        rule = {}
        for a, w in dict(self.rule).items():
            if not isinstance(w, Word2D):
                w = Word2D.from_top_rows(w)
            if w.width == 0 or w.height == 0:
                raise MorphismError(f"image of {a!r} is empty")
            rule[a] = w
        object.__setattr__(self, "rule", rule)

    @property
    def alphabet(self) -> list[Letter]:
        return list(self.rule)

    def __call__(self, w):
        return apply2(self, w)

    def __eq__(self, other):
        return isinstance(other, Morphism2D) and self.rule == other.rule

    def __hash__(self):
        return hash(tuple(sorted(self.rule.items(), key=repr)))

    def table(self) -> str:
        return "\n".join(f"{a} -> {w}" for a, w in self.rule.items())

    def to_json(self) -> str:
        doc = {
            "alphabet": list(self.rule),
            "rule": {
                str(a): {"shape": list(w.shape), "rows": w.top_rows()}
                for a, w in self.rule.items()
            },
        }
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text: str) -> Morphism2D:
        doc = json.loads(text)
        by_name = {str(a): a for a in doc["alphabet"]}
        rule = {}
        for name, entry in doc["rule"].items():
            w = Word2D.from_top_rows(entry["rows"])
            if list(w.shape) != list(entry["shape"]):
                raise MorphismError(f"image of {name} has shape {w.shape}, declared {entry['shape']}")
            rule[by_name[name]] = w
        return cls(rule)


def apply2(omega: Morphism2D, w: Word2D) -> Word2D:
    """Block image of ``w``; every column must agree on width, every row on height."""
    if w.width == 0 or w.height == 0:
        return Word2D(())
    try:
        images = [[omega.rule[a] for a in row] for row in w.rows]
    except KeyError as e:
        raise MorphismError(f"letter {e.args[0]!r} not in the alphabet") from None
    widths = [img.width for img in images[0]]
    heights = [row[0].height for row in images]
    for j, row in enumerate(images):
        for i, img in enumerate(row):
            if img.width != widths[i] or img.height != heights[j]:
                raise AlignmentError(
                    f"image of {w.rows[j][i]!r} at ({i}, {j}) has shape {img.shape}, "
                    f"expected ({widths[i]}, {heights[j]})"
                )
    out = []
    for j, row in enumerate(images):
        for jj in range(heights[j]):
            line = []
            for img in row:
                line.extend(img.rows[jj])
            out.append(tuple(line))
    return Word2D(tuple(out))


def power2(omega: Morphism2D, k: int) -> Morphism2D:
    if k < 1:
        raise MorphismError(f"power must be >= 1, got {k}")
    rule = dict(omega.rule)
    for _ in range(k - 1):
        rule = {a: apply2(omega, w) for a, w in rule.items()}
    return Morphism2D(rule)


def compose2(outer: Morphism2D, inner: Morphism2D) -> Morphism2D:
    """The morphism ``a -> outer(inner(a))``."""
    return Morphism2D({a: apply2(outer, w) for a, w in inner.rule.items()})


@dataclass(frozen=True)
class Seed2x2:
    """One letter per quadrant, named by the cell it occupies around the origin."""

    top_left: Letter  # (-1, 0)
    top_right: Letter  # (0, 0)
    bottom_left: Letter  # (-1, -1)
    bottom_right: Letter  # (0, -1)

    @classmethod
    def from_top_rows(cls, rows) -> Seed2x2:
        (tl, tr), (bl, br) = rows
        return cls(tl, tr, bl, br)

    @classmethod
    def from_word(cls, w: Word2D) -> Seed2x2:
        if w.shape != (2, 2):
            raise MorphismError(f"seed must have shape (2, 2), got {w.shape}")
        return cls.from_top_rows(w.top_rows())

    def as_word(self) -> Word2D:
        return Word2D.from_top_rows([[self.top_left, self.top_right], [self.bottom_left, self.bottom_right]])

    def at(self, pos: tuple[int, int]) -> Letter:
        return {
            (-1, 0): self.top_left,
            (0, 0): self.top_right,
            (-1, -1): self.bottom_left,
            (0, -1): self.bottom_right,
        }[pos]

    def __str__(self):
        return str(self.as_word())


def _center(w: Word2D, origin: tuple[int, int]) -> Word2D:
    x, y = origin
    return w.subword(x - 1, y - 1, 2, 2)


def _grow(omega: Morphism2D, w: Word2D, origin: tuple[int, int]):
    """Apply ``omega`` to ``w`` and track where the origin lands."""
    image = apply2(omega, w)
    x, y = origin
    ox = sum(omega.rule[w.rows[0][i]].width for i in range(x))
    oy = sum(omega.rule[w.rows[j][0]].height for j in range(y))
    return image, (ox, oy)


def _seed_iterate(omega: Morphism2D, seed: Seed2x2, covers, max_steps: int = 64):
    sq = power2(omega, 2)
    w, origin = seed.as_word(), (1, 1)
    image, new_origin = _grow(sq, w, origin)
    if _center(image, new_origin) != w:
        raise SeedError(f"seed {seed} is not prolongable for the square of the morphism")
    steps = 0
    while not covers(w, origin):
        grown, grown_origin = _grow(sq, w, origin)
        if grown.shape == w.shape:
            raise SeedError("fixed point does not grow; window cannot be covered")
        w, origin = grown, grown_origin
        steps += 1
        if steps > max_steps:
            raise SeedError("iteration budget exhausted")
    return w, origin


def quadrant_fixed_point(omega: Morphism2D, seed: Seed2x2, window) -> dict[tuple[int, int], Letter]:
    """Restriction of the fixed point of ``omega**2`` grown from ``seed``.

    ``window`` is ``(x0, y0, x1, y1)``, half-open.  The four seed letters
    sit at ``(-1, 0)``, ``(0, 0)``, ``(-1, -1)`` and ``(0, -1)``.
    """
    x0, y0, x1, y1 = window

    def covers(w, origin):
        ox, oy = origin
        return ox + x0 >= 0 and oy + y0 >= 0 and ox + x1 <= w.width and oy + y1 <= w.height

    w, (ox, oy) = _seed_iterate(omega, seed, covers)
    return {
        (x, y): w.rows[y + oy][x + ox]
        for y in range(y0, y1)
        for x in range(x0, x1)
    }


def _small_shapes(shape):
    m, n = shape
    return [(a, b) for a in range(1, m + 1) for b in range(1, n + 1)]


def list_factors(omega: Morphism2D, shape: tuple[int, int] = (2, 2), max_rounds: int = 64) -> set[Word2D]:
    """All subwords of the given shape in iterated images of letters.

    Every window of shape ``(m, n)`` in ``omega(u)`` meets at most ``m``
    block columns and ``n`` block rows, so closing the set of factors of
    shape at most ``shape`` under ``omega`` reaches the whole language.
    """
    shapes = _small_shapes(shape)
    known = {Word2D.letter(a) for a in omega.rule}
    frontier = set(known)
    for _ in range(max_rounds):
        found = set()
        for u in frontier:
            image = apply2(omega, u)
            for s in shapes:
                found |= image.subwords(s)
        frontier = found - known
        if not frontier:
            break
        known |= frontier
    else:
        raise MorphismError("factor closure did not stabilise")
    return {u for u in known if u.shape == tuple(shape)}


def _center_map(omega: Morphism2D, s: Word2D) -> Word2D:
    (tl, tr), (bl, br) = s.top_rows()
    a, b, c, d = (omega.rule[x] for x in (tl, tr, bl, br))
    return Word2D.from_top_rows([
        [a[a.width - 1, 0], b[0, 0]],
        [c[c.width - 1, c.height - 1], d[0, d.height - 1]],
    ])


def prolongable_seeds(omega: Morphism2D, max_period: int = 8) -> list[Seed2x2]:
    """2x2 factors that come back to the origin under some power of ``omega``.

    The letters around the origin of ``omega(s)`` are the inner corners of
    the four images, so a seed is a periodic point of that corner map.
    Seeds are grouped by cycle; cycles are ordered by their smallest member
    (reading rows top-down) and each cycle starts there.
    """
    def key(w):
        return tuple(a for row in w.top_rows() for a in row)

    factors = list_factors(omega, (2, 2))
    periodic = set()
    for s in factors:
        t = s
        for _ in range(max_period):
            t = _center_map(omega, t)
            if t == s:
                periodic.add(s)
                break
    seeds = []
    seen = set()
    for s in sorted(periodic, key=key):
        if s in seen:
            continue
        t = s
        while t not in seen:
            seen.add(t)
            seeds.append(Seed2x2.from_word(t))
            t = _center_map(omega, t)
    return seeds


def column_row_equivalence(omega: Morphism2D):
    """Class maps ``(pi_col, pi_row)``; each class is named by its smallest letter."""
    letters = list(omega.rule)
    col, row = _UnionFind(letters), _UnionFind(letters)
    for d in list_factors(omega, (1, 2)):
        col.union(d[0, 0], d[0, 1])
    for d in list_factors(omega, (2, 1)):
        row.union(d[0, 0], d[1, 0])

    def named(uf):
        members = {}
        for a in letters:
            members.setdefault(uf.find(a), []).append(a)
        return {a: min(members[uf.find(a)]) for a in letters}

    return named(col), named(row)


def horiz_vert_structure(omega: Morphism2D):
    """The 1D morphisms read along the bottom row and the left column of images."""
    pi_col, pi_row = column_row_equivalence(omega)
    horiz, vert = {}, {}
    for a, w in omega.rule.items():
        h = tuple(pi_col[w[i, 0]] for i in range(w.width))
        v = tuple(pi_row[w[0, j]] for j in range(w.height))
        for target, cls, img, name in ((horiz, pi_col[a], h, "horizontal"), (vert, pi_row[a], v, "vertical")):
            if target.setdefault(cls, img) != img:
                raise MorphismError(f"{name} structure is not well defined at letter {a!r}")
    return Morphism1D(horiz), Morphism1D(vert)


PHI = Morphism2D({
    0: [[14]],
    1: [[13]],
    2: [[12, 10]],
    3: [[11, 8]],
    4: [[14, 7]],
    5: [[13, 7]],
    6: [[12, 7]],
    7: [[6], [12]],
    8: [[3], [14]],
    9: [[3], [13]],
    10: [[2], [12]],
    11: [[6, 1], [12, 10]],
    12: [[6, 1], [11, 8]],
    13: [[5, 1], [15, 9]],
    14: [[4, 1], [11, 8]],
    15: [[2, 0], [12, 7]],
})

PHI_SEED = Seed2x2.from_top_rows([[8, 12], [1, 6]])

