"""Level schemes, return words, and the generalized Bratteli diagram.

Level n partitions X into the base E_n (2n+1 marker letters on [-n, n]) and
all other window cylinders.  A return word of length k is the cylinder of a
content string on [-n, k+n] whose two end blocks are all-marker and whose
k-1 internal windows are not; its translates T^l(W), 0 <= l < k, tile X up
to measure zero.  Enumeration is a pruned depth-first walk over the free
letters, in (length, lexicographic) order.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator

from .errors import LevelMismatch
from .space import ClopenSet, Point, SystemConfig, cylinder, level_base


@dataclass(frozen=True)
class LevelScheme:
    """Level n: the base E_n plus the implicit partition of its complement."""

    config: SystemConfig
    level: int

    @property
    def base(self) -> ClopenSet:
        return level_base(self.config, self.level)

    @property
    def window_width(self) -> int:
        return 2 * self.level + 1

    def partition_words(self) -> Iterator[str]:
        """All non-marker window words (the cells of the partition)."""
        marker_block = self.config.marker_char * self.window_width
        for letters in product(self.config.letters, repeat=self.window_width):
            w = "".join(letters)
            if w != marker_block:
                yield w


@dataclass(frozen=True, slots=True)
class ReturnWord:
    """A return word W: merged cylinder content on [-n, k+n] with its measure."""

    config: SystemConfig
    level: int
    content: str
    measure: Fraction

    @property
    def length(self) -> int:
        return len(self.content) - (2 * self.level + 1)

    def cell(self, j: int) -> str:
        """The j-th internal window word (1 <= j <= k-1)."""
        w = 2 * self.level + 1
        return self.content[j : j + w]

    def cells(self) -> list[str]:
        return [self.cell(j) for j in range(1, self.length)]

    def clopen(self) -> ClopenSet:
        return cylinder(self.config, -self.level, self.content)

    def rep_point(self, i: int = 0) -> Point:
        """Representative of T^i(W): content at offset -n-i, marker default."""
        return Point(-self.level - i, self.content, self.config.marker)

    def rep_window_word(self, i: int, lo: int, hi: int) -> str:
        """Letters of the T^i(W) representative on coordinates [lo, hi]."""
        n = self.level
        content = self.content
        top = len(content)
        marker = self.config.marker_char
        out = []
        for c in range(lo, hi + 1):
            idx = c + n + i
            out.append(content[idx] if 0 <= idx < top else marker)
        return "".join(out)

    def to_json_dict(self) -> dict:
        return {
            "level": self.level,
            "k": self.length,
            "content": self.content,
            "measure": f"{self.measure.numerator}/{self.measure.denominator}",
        }


@dataclass(frozen=True)
class TowerFamily:
    """Return words of length <= kmax at one level, with the exact tail mass."""

    scheme: LevelScheme
    kmax: int
    words: tuple[ReturnWord, ...]
    tail: Fraction

    def __iter__(self):
        return iter(self.words)

    def __len__(self):
        return len(self.words)


def _free_strings(letters: str, marker: str, length: int, maxrun: int) -> list[str]:
    """Free inner strings: first/last letter differs from the marker and no
    marker run reaches maxrun (= window width).  Lexicographic order.

    Iterative depth-first walk; frame i chooses the letter at position i.
    """
    if length <= 0:
        return []
    out: list[str] = []
    word: list[str] = []
    stack = [(iter(letters), 0)]
    while stack:
        it, run = stack[-1]
        ch = next(it, None)
        if ch is None:
            stack.pop()
            if word:
                word.pop()
            continue
        pos = len(word)
        if ch == marker:
            if pos == 0 or pos == length - 1:
                continue
            r = run + 1
            if r >= maxrun:
                continue
        else:
            r = 0
        if pos == length - 1:
            out.append("".join(word) + ch)
            continue
        word.append(ch)
        stack.append((iter(letters), r))
    return out


def iter_return_words(scheme: LevelScheme, kmax: int) -> Iterator[ReturnWord]:
    """Stream the nonempty return words with length <= kmax, shortest first."""
    config = scheme.config
    n = scheme.level
    marker = config.marker_char
    block = marker * (2 * n + 1)
    for k in range(1, kmax + 1):
        if k == 1:
            content = marker * (2 * n + 2)
            yield ReturnWord(config, n, content, config.word_measure(content))
            continue
        free_len = k - 2 * n - 1
        if free_len < 1:
            continue
        for free in _free_strings(config.letters, marker, free_len, 2 * n + 1):
            content = block + free + block
            yield ReturnWord(config, n, content, config.word_measure(content))


def enumerate_return_words(scheme: LevelScheme, kmax: int) -> TowerFamily:
    words = tuple(iter_return_words(scheme, kmax))
    mass = sum((w.length * w.measure for w in words), Fraction(0))
    return TowerFamily(scheme, kmax, words, 1 - mass)


def tail_mass(family: TowerFamily) -> Fraction:
    """1 - sum |W| mu(W) over the enumerated words, exactly."""
    mass = sum((w.length * w.measure for w in family.words), Fraction(0))
    return 1 - mass


_family_cache: dict[tuple, TowerFamily] = {}
_FAMILY_CACHE_LIMIT = 12
_family_lock = threading.Lock()


def get_family(config: SystemConfig, level: int, kmax: int) -> TowerFamily:
    """Cached enumeration; large families are reused across computations."""
    key = (config, level, kmax)
    with _family_lock:
        fam = _family_cache.get(key)
    if fam is None:
        fam = enumerate_return_words(LevelScheme(config, level), kmax)
        with _family_lock:
            if len(_family_cache) >= _FAMILY_CACHE_LIMIT:
                _family_cache.pop(next(iter(_family_cache)))
            _family_cache[key] = fam
    return fam


def edge_offsets(coarse: ReturnWord, fine: ReturnWord) -> tuple[int, ...]:
    """Offsets j' with T^(j')(W') contained in the coarse word W.

    Containment of cylinders is a letter match of the coarse content inside
    the fine content; offsets run through 0 .. |W'| - |W|.
    """
    cw = coarse.content
    k = coarse.length
    kp = fine.length
    if k > kp:
        return ()
    fc = fine.content
    # coordinate j' - n of the shifted coarse window sits at string index j' + 1
    # in the fine content (fine level = coarse level + 1)
    last_start = kp - k + 1
    out = []
    start = 1
    while True:
        idx = fc.find(cw, start)
        if idx < 0 or idx > last_start:
            break
        out.append(idx - 1)
        start = idx + 1
    return tuple(out)


def bratteli_edges(fine: TowerFamily, coarse: ReturnWord) -> dict[ReturnWord, tuple[int, ...]]:
    """Map fine word -> offset set J(W, W'); words without edges are omitted."""
    if fine.scheme.level != coarse.level + 1:
        raise LevelMismatch(
            f"fine family level {fine.scheme.level} != coarse level {coarse.level} + 1"
        )
    out = {}
    for wp in fine.words:
        offs = edge_offsets(coarse, wp)
        if offs:
            out[wp] = offs
    return out


@dataclass(frozen=True)
class MassIdentity:
    """One tower cell mass against its refinement: lhs = mu(W), rhs partial."""

    lhs: Fraction
    partial_rhs: Fraction
    deficit: Fraction


def verify_mass_identity(coarse: ReturnWord, fine: TowerFamily) -> MassIdentity:
    if fine.scheme.level != coarse.level + 1:
        raise LevelMismatch(
            f"fine family level {fine.scheme.level} != coarse level {coarse.level} + 1"
        )
    rhs = Fraction(0)
    for wp in fine.words:
        cnt = len(edge_offsets(coarse, wp))
        if cnt:
            rhs += cnt * wp.measure
    lhs = coarse.measure
    return MassIdentity(lhs, rhs, lhs - rhs)


def bratteli_export(config: SystemConfig, from_level: int, kmax: int,
                    fmt: str = "json") -> str:
    """Render the level n -> n+1 diagram slice with edge multiplicities |J|."""
    if kmax < 1:
        coarse_words: tuple[ReturnWord, ...] = ()
        fine_words: tuple[ReturnWord, ...] = ()
    else:
        coarse_words = get_family(config, from_level, kmax).words
        fine_words = get_family(config, from_level + 1, kmax).words
    edges = []
    for w in coarse_words:
        for wp in fine_words:
            offs = edge_offsets(w, wp)
            if offs:
                edges.append((w, wp, offs))
    if fmt == "json":
        doc = {
            "from_level": from_level,
            "kmax": kmax,
            "vertices": [w.to_json_dict() for w in coarse_words]
            + [w.to_json_dict() for w in fine_words],
            "edges": [
                {
                    "from": {"level": w.level, "content": w.content},
                    "to": {"level": wp.level, "content": wp.content},
                    "offsets": list(offs),
                    "multiplicity": len(offs),
                }
                for w, wp, offs in edges
            ],
        }
        return json.dumps(doc, indent=2)
    if fmt == "dot":
        lines = ["digraph bratteli {", "  rankdir=TB;"]
        for w in list(coarse_words) + list(fine_words):
            mu = f"{w.measure.numerator}/{w.measure.denominator}"
            lines.append(
                f'  "{w.level}:{w.content}" '
                f'[label="{w.content}\\nk={w.length} mu={mu}"];'
            )
        for w, wp, offs in edges:
            lines.append(
                f'  "{w.level}:{w.content}" -> "{wp.level}:{wp.content}" '
                f'[label="{len(offs)}"];'
            )
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
