"""Signed Fibonacci numeration for integers and integer pairs.

Words are strings over ``"01"`` written most-significant digit first, so the
last character carries weight ``F_1``.  A word of odd length ``2k+1`` has
value ``sum(w_i F_i for i <= 2k) - w_{2k+1} F_{2k}``: the leading digit acts
as a sign bit, much like two's complement.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple

__all__ = [
    "NumerationError",
    "ZWord2",
    "LevelInterval",
    "fib",
    "zeckendorf_rep",
    "val_f",
    "rep_f",
    "is_canonical",
    "pad",
    "rep_f2",
    "val_f2",
    "level_of",
    "level_of2",
    "level_interval",
    "h_recode",
    "h_recode_word",
    "h_recode2",
    "h_decode",
    "decompose_z",
    "decompose_z2",
    "canonical_words",
]

_BINARY = re.compile(r"[01]*\Z")
_H = {0: "00", 1: "01", 2: "10"}
_H_INV = {v: k for k, v in _H.items()}

_fibs = [1, 1]


class NumerationError(ValueError):
    """Raised for malformed words or arguments outside an operation's domain."""


def fib(i: int) -> int:
    """Return ``F_i`` with ``F_0 = F_1 = 1``."""
    if i < 0:
        raise NumerationError(f"Fibonacci index must be nonnegative, got {i}")
    while len(_fibs) <= i:
        _fibs.append(_fibs[-1] + _fibs[-2])
    return _fibs[i]


def _check_word(w: str) -> None:
    if not isinstance(w, str) or not _BINARY.match(w):
        raise NumerationError(f"not a binary word: {w!r}")


def zeckendorf_rep(n: int) -> str:
    """Greedy Zeckendorf expansion of ``n >= 0`` over ``F_1, F_2, ...``.

    The empty word represents zero.
    """
    if n < 0:
        raise NumerationError(f"Zeckendorf representation needs n >= 0, got {n}")
    if n == 0:
        return ""
    top = 1
    while fib(top + 1) <= n:
        top += 1
    digits = []
    for i in range(top, 0, -1):
        if fib(i) <= n:
            digits.append("1")
            n -= fib(i)
        else:
            digits.append("0")
    return "".join(digits)


def val_f(w: str) -> int:
    """Value of an odd-length word; ``w`` need not be canonical."""
    _check_word(w)
    if len(w) % 2 == 0:
        raise NumerationError(f"word must have odd length, got {len(w)}: {w!r}")
    k2 = len(w) - 1
    total = 0
    for i, d in enumerate(reversed(w[1:]), start=1):
        if d == "1":
            total += fib(i)
    if w[0] == "1":
        total -= fib(k2)
    return total


def rep_f(n: int) -> str:
    """Canonical representation of an integer."""
    if n == 0:
        return "0"
    if n == -1:
        return "1"
    if n > 0:
        u = zeckendorf_rep(n)
        return ("00" if len(u) % 2 else "0") + u
    # -F_{2k} <= n < -F_{2k-2}
    k = 1
    while -fib(2 * k) > n:
        k += 1
    rest = rep_f(n + fib(2 * k))
    # rest is nonnegative, so it starts with 0; widen it to 000w with |w| = 2k-2
    body = ("00" * ((2 * k + 1 - len(rest)) // 2) + rest)[3:]
    return "100" + body


def is_canonical(w: str) -> bool:
    if not isinstance(w, str) or not _BINARY.match(w):
        return False
    return (
        len(w) % 2 == 1
        and "11" not in w
        and not w.startswith("000")
        and not w.startswith("101")
    )


def pad(w: str, t: int) -> str:
    """Left-pad ``w`` to length ``t`` with ``00`` or ``10`` blocks by sign."""
    _check_word(w)
    if not w:
        raise NumerationError("cannot pad the empty word")
    if t < len(w) or (t - len(w)) % 2:
        raise NumerationError(f"cannot pad word of length {len(w)} to {t}")
    block = "00" if w[0] == "0" else "10"
    return block * ((t - len(w)) // 2) + w


class ZWord2(NamedTuple):
    """Two-row word; ``top`` encodes the first coordinate."""

    top: str
    bottom: str

    def columns(self) -> list[tuple[int, int]]:
        return [(int(a), int(b)) for a, b in zip(self.top, self.bottom)]

    def __len__(self) -> int:  # type: ignore[override]
        return len(self.top)

    def __str__(self) -> str:
        return f"{self.top}/{self.bottom}"

    @classmethod
    def parse(cls, text: str) -> ZWord2:
        parts = text.split("/")
        if len(parts) != 2:
            raise NumerationError(f"expected 'row1/row2', got {text!r}")
        return cls(parts[0], parts[1])

    @classmethod
    def from_columns(cls, cols) -> ZWord2:
        cols = list(cols)
        return cls("".join(str(a) for a, _ in cols), "".join(str(b) for _, b in cols))


def rep_f2(n: tuple[int, int]) -> ZWord2:
    n1, n2 = n
    r1, r2 = rep_f(n1), rep_f(n2)
    t = max(len(r1), len(r2))
    return ZWord2(pad(r1, t), pad(r2, t))


def val_f2(w: ZWord2 | tuple[str, str]) -> tuple[int, int]:
    top, bottom = w
    if len(top) != len(bottom):
        raise NumerationError(f"rows have unequal lengths {len(top)} and {len(bottom)}")
    return val_f(top), val_f(bottom)


@dataclass(frozen=True)
class LevelInterval:
    """Half-open interval ``[lo, hi)`` of integers whose words have length <= 2k+1."""

    k: int
    lo: int
    hi: int

    def __contains__(self, n: int) -> bool:
        return self.lo <= n < self.hi

    def __len__(self) -> int:
        return self.hi - self.lo


def level_interval(k: int) -> LevelInterval:
    if k == -1:
        return LevelInterval(-1, 0, 0)
    if k < -1:
        raise NumerationError(f"level must be >= -1, got {k}")
    return LevelInterval(k, -fib(2 * k), fib(2 * k + 1))


def level_of(n: int) -> int:
    return (len(rep_f(n)) - 1) // 2


def level_of2(n: tuple[int, int]) -> int:
    return max(level_of(n[0]), level_of(n[1]))


def h_recode(d: int) -> str:
    try:
        return _H[d]
    except (KeyError, TypeError):
        raise NumerationError(f"digit must be 0, 1 or 2, got {d!r}") from None


def h_recode_word(digits) -> str:
    return "".join(h_recode(d) for d in digits)


def h_recode2(d: tuple[int, int]) -> ZWord2:
    """Two-column block with ``h(d[0])`` stacked over ``h(d[1])``."""
    return ZWord2(h_recode(d[0]), h_recode(d[1]))


def h_decode(pair: str) -> int:
    try:
        return _H_INV[pair]
    except KeyError:
        raise NumerationError(f"{pair!r} is not in the image of h") from None


def decompose_z(n: int) -> tuple[int, int]:
    """Split ``rep_f(n)`` as ``rep_f(m) + h(l)``; requires ``n`` outside ``{-1, 0}``."""
    if n in (-1, 0):
        raise NumerationError(f"{n} lies in the base level and has no parent")
    w = rep_f(n)
    return val_f(w[:-2]), h_decode(w[-2:])


def decompose_z2(n: tuple[int, int]) -> tuple[tuple[int, int], tuple[int, int]]:
    if n[0] in (-1, 0) and n[1] in (-1, 0):
        raise NumerationError(f"{n} lies in the base level and has no parent")
    top, bottom = rep_f2(n)
    m = (val_f(top[:-2]), val_f(bottom[:-2]))
    return m, (h_decode(top[-2:]), h_decode(bottom[-2:]))


def canonical_words(max_len: int):
    """Yield every canonical word of length at most ``max_len``, shortest first."""
    for length in range(1, max_len + 1, 2):
        for bits in range(2**length):
            w = format(bits, f"0{length}b")
            if is_canonical(w):
                yield w
