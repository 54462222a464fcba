"""Deterministic finite automata with output built from morphisms.

The output of a run is the state it ends in.  Automata built from a seed
have an extra ``START`` state whose outgoing edges read the one-letter
representations of the positions next to the origin.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cache, lru_cache
from typing import Hashable, Mapping

from .morphisms import (
    FIBONACCI,
    PHI,
    PHI_SEED,
    Morphism1D,
    Morphism2D,
    Seed2x2,
    SeedError,
    power1,
)
from .numeration import ZWord2, rep_f, rep_f2

__all__ = [
    "START",
    "DFAO",
    "RejectionError",
    "LanguageError",
    "AbstractNumerationSystem",
    "dfao_from_morphism",
    "dfao_from_seed_1d",
    "dfao_from_seed_2d",
    "run",
    "run_from",
    "trace",
    "ans_rep",
    "ans_val",
    "decompose_ans",
    "dot_export",
    "json_export",
    "fibonacci_dfao",
    "wang_dfao",
    "fibonacci_letter_at",
    "tile_at",
    "tile_trace",
]

START = "START"

State = Hashable


class RejectionError(ValueError):
    """No transition for the next input letter."""

    def __init__(self, prefix, state, letter):
        self.prefix = tuple(prefix)
        self.state = state
        self.letter = letter
        super().__init__(
            f"no transition from state {state!r} on {letter!r} after reading {len(self.prefix)} letters"
        )


class LanguageError(ValueError):
    pass


def _state_key(q):
    if q == START:
        return (0, 0, "")
    if isinstance(q, int):
        return (1, q, "")
    return (2, 0, str(q))


@dataclass(frozen=True)
class DFAO:
    states: frozenset
    alphabet: tuple
    transitions: Mapping[tuple[State, Hashable], State]
    start: State

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "transitions", dict(self.transitions))
        if self.start not in self.states:
            raise ValueError(f"start state {self.start!r} is not a state")
        for (q, c), r in self.transitions.items():
            if q not in self.states or r not in self.states:
                raise ValueError(f"edge {q!r} -{c!r}-> {r!r} leaves the state set")
            if c not in self.alphabet:
                raise ValueError(f"edge label {c!r} not in the input alphabet")
            if r == START:
                raise ValueError("edges into START are not allowed")

    def step(self, q: State, c) -> State | None:
        return self.transitions.get((q, c))

    def edges(self):
        """Edges sorted by source state, then label."""
        order = {c: k for k, c in enumerate(self.alphabet)}
        return sorted(
            ((q, c, r) for (q, c), r in self.transitions.items()),
            key=lambda e: (_state_key(e[0]), order[e[1]]),
        )

    def sorted_states(self):
        return sorted(self.states, key=_state_key)


def _letters(word):
    if isinstance(word, ZWord2):
        return word.columns()
    if isinstance(word, str):
        return [int(ch) for ch in word]
    return list(word)


def run_from(dfao: DFAO, q: State, word) -> State:
    letters = _letters(word)
    for k, c in enumerate(letters):
        nxt = dfao.transitions.get((q, c))
        if nxt is None:
            raise RejectionError(letters[:k], q, c)
        q = nxt
    return q


def run(dfao: DFAO, word) -> State:
    return run_from(dfao, dfao.start, word)


def trace(dfao: DFAO, word) -> list[State]:
    """States visited while reading ``word``, starting state included."""
    q = dfao.start
    path = [q]
    letters = _letters(word)
    for k, c in enumerate(letters):
        nxt = dfao.transitions.get((q, c))
        if nxt is None:
            raise RejectionError(letters[:k], q, c)
        q = nxt
        path.append(q)
    return path


def dfao_from_morphism(sigma: Morphism1D, a) -> DFAO:
    """Edges ``b -i-> sigma(b)[i]``; the morphism must be prolongable on ``a``."""
    image = sigma.rule[a]
    if image[0] != a or len(image) < 2:
        raise SeedError(f"morphism is not prolongable on {a!r}")
    if START in sigma.rule:
        raise ValueError("START is reserved and cannot be a letter")
    k = max(len(w) for w in sigma.rule.values())
    transitions = {(b, i): c for b, w in sigma.rule.items() for i, c in enumerate(w)}
    return DFAO(frozenset(sigma.rule), tuple(range(k)), transitions, a)


def _split_seed(seed):
    if isinstance(seed, str):
        left, _, right = seed.partition(".")
        return left, right
    return tuple(seed)


def dfao_from_seed_1d(sigma: Morphism1D, seed="b.a") -> DFAO:
    left, right = _split_seed(seed)
    sq = power1(sigma, 2)
    if sq.rule[right][0] != right or sq.rule[left][-1] != left:
        raise SeedError(f"seed {left}.{right} is not prolongable for the square")
    base = dfao_from_morphism(sigma, right)
    transitions = dict(base.transitions)
    transitions[START, int(rep_f(0))] = right
    transitions[START, int(rep_f(-1))] = left
    alphabet = tuple(range(max(2, len(base.alphabet))))
    return DFAO(base.states | {START}, alphabet, transitions, START)


COLUMN_LETTERS = ((0, 0), (0, 1), (1, 0), (1, 1))


def dfao_from_seed_2d(omega: Morphism2D, seed: Seed2x2) -> DFAO:
    """``a -(e1/e2)-> b`` when ``b`` sits at column ``e1``, row ``e2`` of ``omega(a)``."""
    if START in omega.rule:
        raise ValueError("START is reserved and cannot be a letter")
    for a, w in omega.rule.items():
        if w.width > 2 or w.height > 2:
            raise ValueError(f"image of {a!r} has shape {w.shape}; cells must be indexed by {{0,1}}^2")
    transitions = {}
    for a, w in omega.rule.items():
        for e1 in range(w.width):
            for e2 in range(w.height):
                transitions[a, (e1, e2)] = w[e1, e2]
    for n in ((0, 0), (-1, 0), (-1, -1), (0, -1)):
        (col,) = rep_f2(n).columns()
        transitions[START, col] = seed.at(n)
    for letter in (seed.top_left, seed.top_right, seed.bottom_left, seed.bottom_right):
        if letter not in omega.rule:
            raise SeedError(f"seed letter {letter!r} not in the alphabet")
    return DFAO(frozenset(omega.rule) | {START}, COLUMN_LETTERS, transitions, START)


class AbstractNumerationSystem:
    """Radix-ordered words of a DFAO's language that do not start with 0.

    Every state counts as accepting, so the language is the set of words
    with a defined path.  Ranking and unranking use path counts per length,
    cached as they are needed.
    """

    def __init__(self, dfao: DFAO, morphism: Morphism1D | None = None):
        self.dfao = dfao
        self.morphism = morphism
        self.digits = tuple(sorted(dfao.alphabet))
        self._count = lru_cache(maxsize=None)(self._count_uncached)
        self._total = lru_cache(maxsize=None)(self._total_uncached)

    @classmethod
    def from_morphism(cls, sigma: Morphism1D, a) -> AbstractNumerationSystem:
        return cls(dfao_from_morphism(sigma, a), sigma)

    def _count_uncached(self, q, length: int) -> int:
        if length == 0:
            return 1
        total = 0
        for c in self.digits:
            r = self.dfao.step(q, c)
            if r is not None:
                total += self._count(r, length - 1)
        return total

    def _total_uncached(self, length: int) -> int:
        """Number of words of this length in the system (no leading zero)."""
        if length == 0:
            return 1
        total = 0
        for c in self.digits:
            if c == 0:
                continue
            r = self.dfao.step(self.dfao.start, c)
            if r is not None:
                total += self._count(r, length - 1)
        return total

    def rep(self, n: int) -> tuple[int, ...]:
        if n < 0:
            raise ValueError(f"n must be nonnegative, got {n}")
        length = 0
        while n >= self._total(length):
            n -= self._total(length)
            length += 1
            if length > 10_000:
                raise LanguageError("language is too thin to reach this index")
        word = []
        q = self.dfao.start
        for pos in range(length):
            for c in self.digits:
                if pos == 0 and c == 0 and length > 0:
                    continue
                r = self.dfao.step(q, c)
                if r is None:
                    continue
                k = self._count(r, length - pos - 1)
                if n < k:
                    word.append(c)
                    q = r
                    break
                n -= k
        return tuple(word)

    def val(self, word) -> int:
        letters = _letters(word)
        try:
            run(self.dfao, letters)
        except RejectionError as e:
            raise LanguageError(f"{word!r} is not in the language") from e
        while letters and letters[0] == 0:
            letters = letters[1:]
        length = len(letters)
        index = sum(self._total(L) for L in range(length))
        q = self.dfao.start
        for pos, c in enumerate(letters):
            for d in self.digits:
                if d >= c:
                    break
                if pos == 0 and d == 0:
                    continue
                r = self.dfao.step(q, d)
                if r is not None:
                    index += self._count(r, length - pos - 1)
            q = self.dfao.step(q, c)
            if q is None:
                raise LanguageError(f"{word!r} without its leading zeros is not in the language")
        return index


def ans_rep(system: AbstractNumerationSystem, n: int) -> str:
    return "".join(str(c) for c in system.rep(n))


def ans_val(system: AbstractNumerationSystem, word) -> int:
    return system.val(word)


def decompose_ans(system: AbstractNumerationSystem, n: int) -> tuple[int, int]:
    """``(m, l)`` with ``rep(n) == rep(m) + l``."""
    if n <= 0:
        raise ValueError(f"n must be positive, got {n}")
    word = system.rep(n)
    return system.val(word[:-1]), word[-1]


def _label_text(c) -> str:
    if isinstance(c, tuple):
        return "(" + ",".join(map(str, c)) + ")"
    return str(c)


def dot_export(dfao: DFAO, name: str = "dfao") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for q in dfao.sorted_states():
        shape = "box" if q == START else "circle"
        lines.append(f'  "{q}" [shape={shape}];')
    lines.append(f'  __init [shape=point]; __init -> "{dfao.start}";')
    for q, c, r in dfao.edges():
        label = _label_text(c)
        lines.append(f'  "{q}" -> "{r}" [label="{label}"];  // {q} -{label}-> {r}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _json_label(c):
    return list(c) if isinstance(c, tuple) else c


def json_export(dfao: DFAO) -> str:
    doc = {
        "states": [q for q in dfao.sorted_states()],
        "alphabet": [_json_label(c) for c in dfao.alphabet],
        "edges": [{"from": q, "label": _json_label(c), "to": r} for q, c, r in dfao.edges()],
        "start": dfao.start,
    }
    return json.dumps(doc)


@cache
def fibonacci_dfao() -> DFAO:
    return dfao_from_seed_1d(FIBONACCI, "b.a")


@cache
def wang_dfao() -> DFAO:
    return dfao_from_seed_2d(PHI, PHI_SEED)


def fibonacci_letter_at(n: int) -> str:
    """Letter at position ``n`` of the two-sided Fibonacci word grown from ``b.a``."""
    return run(fibonacci_dfao(), rep_f(n))


def tile_at(n: tuple[int, int]) -> int:
    return run(wang_dfao(), rep_f2(n))


def tile_trace(n: tuple[int, int]) -> list[State]:
    return trace(wang_dfao(), rep_f2(n))
