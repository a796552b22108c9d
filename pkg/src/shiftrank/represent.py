"""Per-word finite-dimensional representation of truncated elements.

A level-n element a maps, for each return word W, to the |W| x |W| matrix
of h_W a in the matrix-unit basis: the degree-d part of a contributes its
coefficient value on the i-th tower cell to entry (i, i-d).  Evaluation at
the cell representative is exact because level-n coefficients are constant
on the cells.

The occurrence formula provides a fully independent second route for
monomials supported away from the base, used as an oracle in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .crossed import CrossedElement, TruncatedElement
from .errors import IndexOutOfRange, LevelMismatch, MalformedSegment
from .fields import Field
from .space import ClopenSet, SystemConfig, cylinder
from .towers import ReturnWord


@dataclass(frozen=True)
class WordMatrix:
    """Matrix of h_W a in the basis e_ij(W); row minus column is the t-degree."""

    word: ReturnWord
    field: Field
    rows: tuple

    @classmethod
    def zero(cls, word: ReturnWord, field: Field) -> "WordMatrix":
        k = word.length
        z = field.zero
        return cls(word, field, tuple(tuple(z for _ in range(k)) for _ in range(k)))

    @classmethod
    def elementary(cls, word: ReturnWord, field: Field, i: int, j: int) -> "WordMatrix":
        k = word.length
        z, o = field.zero, field.one
        return cls(
            word, field,
            tuple(
                tuple(o if (r == i and c == j) else z for c in range(k))
                for r in range(k)
            ),
        )

    def __mul__(self, other: "WordMatrix") -> "WordMatrix":
        if other.word != self.word:
            raise LevelMismatch("matrix product across different words")
        k = self.word.length
        z = self.field.zero
        out = []
        for r in range(k):
            row = []
            for c in range(k):
                acc = z
                for m in range(k):
                    a = self.rows[r][m]
                    if a:
                        acc = acc + a * other.rows[m][c]
                row.append(acc)
            out.append(tuple(row))
        return WordMatrix(self.word, self.field, tuple(out))

    def __add__(self, other: "WordMatrix") -> "WordMatrix":
        if other.word != self.word:
            raise LevelMismatch("matrix sum across different words")
        return WordMatrix(
            self.word, self.field,
            tuple(
                tuple(a + b for a, b in zip(r1, r2))
                for r1, r2 in zip(self.rows, other.rows)
            ),
        )

    def transpose(self) -> "WordMatrix":
        return WordMatrix(self.word, self.field, tuple(zip(*self.rows)))

    def is_zero(self) -> bool:
        return all(not x for row in self.rows for x in row)

    def to_json_dict(self) -> dict:
        return {
            "word": self.word.to_json_dict(),
            "rows": [[self.field.render(x) for x in row] for row in self.rows],
        }


def project_element(a: TruncatedElement, word: ReturnWord) -> WordMatrix:
    """The matrix of h_W a for a in the level-n algebra."""
    if a.level != word.level:
        raise LevelMismatch(f"element level {a.level} != word level {word.level}")
    k = word.length
    field = a.element.field
    zero = field.zero
    rows = [[zero] * k for _ in range(k)]
    for d, f in a.element.coeffs.items():
        lo = min(d, 0)
        hi = max(d, 0)
        if f.hi < f.lo:
            const = f.values.get("", zero)
            for i in range(hi, k + lo):
                rows[i][i - d] = rows[i][i - d] + const
            continue
        vals = f.values
        flo, fhi = f.lo, f.hi
        for i in range(hi, k + lo):
            v = vals.get(word.rep_window_word(i, flo, fhi))
            if v is not None:
                rows[i][i - d] = rows[i][i - d] + v
    return WordMatrix(word, field, tuple(tuple(r) for r in rows))


def project_matrix(entries: Sequence[Sequence[TruncatedElement]],
                   word: ReturnWord) -> list:
    """Entrywise projection of a d x d element matrix into block form."""
    d = len(entries)
    k = word.length
    blocks = [[project_element(e, word) for e in row] for row in entries]
    field = blocks[0][0].field
    out = [[field.zero] * (d * k) for _ in range(d * k)]
    for r in range(d):
        for c in range(d):
            rows = blocks[r][c].rows
            for i in range(k):
                base = out[r * k + i]
                off = c * k
                row = rows[i]
                for j in range(k):
                    if row[j]:
                        base[off + j] = base[off + j] + row[j]
    return out


def matrix_unit_element(word: ReturnWord, i: int, j: int, field: Field) -> CrossedElement:
    """The element e_ij(W), built by explicit products in the crossed product."""
    k = word.length
    if not (0 <= i < k and 0 <= j < k):
        raise IndexOutOfRange(f"matrix-unit index ({i},{j}) outside 0..{k - 1}")
    config = word.config
    from .space import level_base  # local import keeps module ordering simple

    off_base = level_base(config, word.level).complement()
    s = CrossedElement.from_clopen(off_base, field) * CrossedElement.shift_unit(config, field)
    s_star = s.adjoint()
    acc = CrossedElement.from_clopen(word.clopen(), field)
    for _ in range(i):
        acc = s * acc
    for _ in range(j):
        acc = acc * s_star
    return acc


def occurrences(segment: Sequence[str], word: ReturnWord) -> list[int]:
    """Offsets l at which the cell sequence occurs inside W's internal cells."""
    _check_segment(segment, word.config, word.level)
    cells = word.cells()
    s = len(segment)
    if s == 0 or s > len(cells):
        return []
    seg = list(segment)
    return [l for l in range(len(cells) - s + 1) if cells[l : l + s] == seg]


def occurrence_project(segment: Sequence[str], s: int, d: int,
                       word: ReturnWord, field: Field) -> WordMatrix:
    """Independent projection of the monomial chi_S t^d via the occurrence formula.

    The segment lists the cells of S left to right; s of them sit at
    nonnegative shift positions (s >= d when d > 0, and the remaining
    r = len(segment) - s satisfy r >= -d when d < 0).
    """
    r = len(segment) - s
    if s < 0 or r < 0:
        raise MalformedSegment(f"bad split s={s} of a segment of length {len(segment)}")
    if d > 0 and s < d:
        raise MalformedSegment(f"need s >= d for d={d}, got s={s}")
    if d < 0 and r < -d:
        raise MalformedSegment(f"need r >= -d for d={d}, got r={r}")
    occ = occurrences(segment, word)
    mat = WordMatrix.zero(word, field)
    for l in occ:
        mat = mat + WordMatrix.elementary(word, field, l + s, l + s - d)
    return mat


def segment_element(segment: Sequence[str], s: int, d: int,
                    config: SystemConfig, level: int, field: Field) -> TruncatedElement:
    """The truncated monomial chi_S t^d denoted by an occurrence segment."""
    _check_segment(segment, config, level)
    r = len(segment) - s
    if d > 0 and s < d:
        raise MalformedSegment(f"need s >= d for d={d}, got s={s}")
    if d < 0 and r < -d:
        raise MalformedSegment(f"need r >= -d for d={d}, got r={r}")
    S = ClopenSet.all(config)
    for idx, cell_word in enumerate(segment):
        shift = s - 1 - idx
        S = S.intersect(cylinder(config, -level - shift, cell_word))
    elem = CrossedElement.from_clopen(S, field) * CrossedElement.shift_unit(config, field, d) \
        if d else CrossedElement.from_clopen(S, field)
    return TruncatedElement.wrap(elem, level)


def _check_segment(segment: Sequence[str], config: SystemConfig, level: int):
    width = 2 * level + 1
    marker_block = config.marker_char * width
    for cell_word in segment:
        if len(cell_word) != width:
            raise MalformedSegment(
                f"cell {cell_word!r} is not a level-{level} window word"
            )
        config.check_word(cell_word)
        if cell_word == marker_block:
            raise MalformedSegment("segment cells must avoid the marker block")
