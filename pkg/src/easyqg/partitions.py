"""Colored two-row set partitions and their category operations.

A partition ``p`` has ``k`` upper and ``l`` lower points.  Upper points are
numbered 1..k left to right, lower points k+1..k+l left to right.  Every
point is colored white (``"w"``) or black (``"b"``).  The block structure is
stored in canonical form: each block sorted ascending, blocks sorted by
their minimal element.

Conventions fixed here and relied on everywhere else:

* ``compose(q, p)`` stacks ``p`` *above* ``q`` (so it models "q after p" on
  linear maps) and also returns the number of blocks that were swallowed
  entirely by the middle row.
* Crossings are tested in the boundary cyclic order: upper row left to
  right, then lower row right to left.  Cutting the circle between the
  lower-left and upper-left point makes this a linear stack test.
* Rotations move the outermost point of one row to the same side of the
  other row; the moved point changes color but keeps its block.

Canonical text form: ``P(k,l;U;L;B)`` where U and L are color strings over
{w, b} and B lists the blocks in canonical order, e.g. the white identity
is ``P(1,1;w;w;{{1,2}})`` and the white cup is ``P(0,2;;ww;{{1,2}})``.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Sequence

from .errors import ColorMismatch, EmptyRow, ParseError, ShapeMismatch

WHITE = "w"
BLACK = "b"
COLORS = (WHITE, BLACK)


def flip_color(color: str) -> str:
    return BLACK if color == WHITE else WHITE


class ColoredPartition:
    """An immutable colored partition in canonical form."""

    __slots__ = ("k", "l", "upper_colors", "lower_colors", "blocks", "_hash")

    def __init__(
        self,
        k: int,
        l: int,
        upper_colors: Sequence[str],
        lower_colors: Sequence[str],
        blocks: Iterable[Iterable[int]],
    ):
        upper = tuple(upper_colors)
        lower = tuple(lower_colors)
        if len(upper) != k or len(lower) != l:
            raise ValueError("color strings must match the point counts")
        if any(c not in COLORS for c in upper + lower):
            raise ValueError("colors must be 'w' or 'b'")
        canon = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))
        seen = sorted(x for b in canon for x in b)
        if seen != list(range(1, k + l + 1)) or any(not b for b in canon):
            raise ValueError("blocks must be disjoint, nonempty and cover 1..k+l")
        self.k = k
        self.l = l
        self.upper_colors = upper
        self.lower_colors = lower
        self.blocks = canon
        self._hash = hash((k, l, upper, lower, canon))

    # -- basic protocol ------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColoredPartition):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.k == other.k
            and self.l == other.l
            and self.upper_colors == other.upper_colors
            and self.lower_colors == other.lower_colors
            and self.blocks == other.blocks
        )

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self):
        return (
            self.k + self.l,
            self.k,
            self.upper_colors,
            self.lower_colors,
            self.blocks,
        )

    def __lt__(self, other: "ColoredPartition") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return to_literal(self)

    # -- derived data ---------------------------------------------------

    @property
    def points(self) -> int:
        return self.k + self.l

    def is_lower(self, point: int) -> bool:
        return point > self.k

    def color_of(self, point: int) -> str:
        if point <= self.k:
            return self.upper_colors[point - 1]
        return self.lower_colors[point - self.k - 1]

    def all_white(self) -> bool:
        return all(c == WHITE for c in self.upper_colors + self.lower_colors)

    def uncolored(self) -> "ColoredPartition":
        """The same diagram with every point white (T_p only sees this)."""
        return ColoredPartition(
            self.k, self.l, WHITE * self.k, WHITE * self.l, self.blocks
        )


# ---------------------------------------------------------------------------
# Constructors for the named partitions of the theory.
# ---------------------------------------------------------------------------


def empty_partition() -> ColoredPartition:
    return ColoredPartition(0, 0, "", "", ())


def vertical_pair(upper: str, lower: str) -> ColoredPartition:
    """One upper and one lower point joined; identity when colors agree."""
    return ColoredPartition(1, 1, upper, lower, ({1, 2},))


def identity(color: str = WHITE) -> ColoredPartition:
    return vertical_pair(color, color)


def identity_power(n: int, color: str = WHITE) -> ColoredPartition:
    return ColoredPartition(
        n, n, color * n, color * n, tuple({i, n + i} for i in range(1, n + 1))
    )


def lower_pair(c1: str, c2: str) -> ColoredPartition:
    return ColoredPartition(0, 2, "", c1 + c2, ({1, 2},))


def singleton(color: str = WHITE, lower: bool = True) -> ColoredPartition:
    if lower:
        return ColoredPartition(0, 1, "", color, ({1},))
    return ColoredPartition(1, 0, color, "", ({1},))


def one_block(k: int, l: int, upper_colors: str, lower_colors: str) -> ColoredPartition:
    """All k+l points in a single block (b_s, four-blocks, ...)."""
    return ColoredPartition(
        k, l, upper_colors, lower_colors, (range(1, k + l + 1),)
    )


def b_block(s: int) -> ColoredPartition:
    """The generator b_s: s white lower points in one block."""
    return one_block(0, s, "", WHITE * s)


def four_block_wwbb() -> ColoredPartition:
    return one_block(0, 4, "", "wwbb")


BASE_PARTITIONS = (
    identity(WHITE),
    identity(BLACK),
    lower_pair(WHITE, BLACK),
    lower_pair(BLACK, WHITE),
)


# ---------------------------------------------------------------------------
# Category operations.
# ---------------------------------------------------------------------------


def tensor(p: ColoredPartition, q: ColoredPartition) -> ColoredPartition:
    """Place p and q side by side."""
    # Joint numbering: p's uppers, q's uppers, p's lowers, q's lowers.
    blocks = []
    for b in p.blocks:
        blocks.append(tuple(x if x <= p.k else x + q.k for x in b))
    for b in q.blocks:
        blocks.append(
            tuple(x + p.k if x <= q.k else x + p.k + p.l for x in b)
        )
    return ColoredPartition(
        p.k + q.k,
        p.l + q.l,
        p.upper_colors + q.upper_colors,
        p.lower_colors + q.lower_colors,
        blocks,
    )


def compose(q: ColoredPartition, p: ColoredPartition) -> tuple[ColoredPartition, int]:
    """Stack p above q; return (qp, removed block count).

    Requires l_p = k_q and matching middle colors.  Middle points are glued
    pairwise; blocks that end up entirely inside the middle row are dropped
    and counted.
    """
    t = p.l
    if t != q.k:
        raise ColorMismatch(
            f"cannot compose: p has {p.l} lower points, q has {q.k} upper points"
        )
    if p.lower_colors != q.upper_colors:
        raise ColorMismatch(
            f"middle colors disagree: {''.join(p.lower_colors)} vs "
            f"{''.join(q.upper_colors)}"
        )

    # Node layout: 0..k_p-1 result uppers, k_p..k_p+t-1 middle,
    # k_p+t..k_p+t+l_q-1 result lowers.
    n_nodes = p.k + t + q.l
    parent = list(range(n_nodes))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for b in p.blocks:  # p's point i maps to node i-1
        first = b[0] - 1
        for x in b[1:]:
            union(first, x - 1)
    for b in q.blocks:  # q's point i maps to node k_p + i - 1
        first = p.k + b[0] - 1
        for x in b[1:]:
            union(first, p.k + x - 1)

    classes: dict[int, list[int]] = {}
    for node in range(n_nodes):
        classes.setdefault(find(node), []).append(node)

    blocks = []
    removed = 0
    for members in classes.values():
        pts = []
        for node in members:
            if node < p.k:
                pts.append(node + 1)
            elif node >= p.k + t:
                pts.append(node - t + 1)
        if pts:
            blocks.append(pts)
        else:
            removed += 1
    result = ColoredPartition(p.k, q.l, p.upper_colors, q.lower_colors, blocks)
    return result, removed


def involute(p: ColoredPartition) -> ColoredPartition:
    """Reflect p at the horizontal axis."""

    def reflect(x: int) -> int:
        # old upper i -> new lower l+i, old lower k+j -> new upper j
        return p.l + x if x <= p.k else x - p.k

    return ColoredPartition(
        p.l,
        p.k,
        p.lower_colors,
        p.upper_colors,
        (tuple(reflect(x) for x in b) for b in p.blocks),
    )


CORNERS = ("UL", "UR", "LL", "LR")
INVERSE_CORNER = {"UL": "LL", "LL": "UL", "UR": "LR", "LR": "UR"}


def rotate(p: ColoredPartition, corner: str) -> ColoredPartition:
    """Move the outermost point of one row to the other row at the same side.

    The moved point's color is inverted; its block membership is kept.
    """
    if corner not in CORNERS:
        raise ValueError(f"corner must be one of {CORNERS}")
    k, l = p.k, p.l
    if corner in ("UL", "UR"):
        if k == 0:
            raise EmptyRow("upper row is empty")
        if corner == "UL":
            # old upper 1 -> new lower-left (number k); uppers shift down by 1
            relabel = {1: k}
            for i in range(2, k + 1):
                relabel[i] = i - 1
            for j in range(k + 1, k + l + 1):
                relabel[j] = j
            upper = p.upper_colors[1:]
            lower = (flip_color(p.upper_colors[0]),) + p.lower_colors
        else:
            # old upper k -> new lower-right (number k+l); lowers shift by -1
            relabel = {k: k + l}
            for i in range(1, k):
                relabel[i] = i
            for j in range(k + 1, k + l + 1):
                relabel[j] = j - 1
            upper = p.upper_colors[:-1]
            lower = p.lower_colors + (flip_color(p.upper_colors[-1]),)
        new_k, new_l = k - 1, l + 1
    else:
        if l == 0:
            raise EmptyRow("lower row is empty")
        if corner == "LL":
            # old lower-left (k+1) -> new upper 1; uppers shift up by 1
            relabel = {k + 1: 1}
            for i in range(1, k + 1):
                relabel[i] = i + 1
            for j in range(k + 2, k + l + 1):
                relabel[j] = j
            upper = (flip_color(p.lower_colors[0]),) + p.upper_colors
            lower = p.lower_colors[1:]
        else:
            # old lower-right (k+l) -> new upper k+1; other lowers shift by +1
            relabel = {k + l: k + 1}
            for i in range(1, k + 1):
                relabel[i] = i
            for j in range(k + 1, k + l):
                relabel[j] = j + 1
            upper = p.upper_colors + (flip_color(p.lower_colors[-1]),)
            lower = p.lower_colors[:-1]
        new_k, new_l = k + 1, l - 1
    return ColoredPartition(
        new_k, new_l, upper, lower, (tuple(relabel[x] for x in b) for b in p.blocks)
    )


def is_noncrossing(p: ColoredPartition) -> bool:
    """True iff no two blocks interleave in the boundary cyclic order."""
    order = list(range(1, p.k + 1)) + list(range(p.k + p.l, p.k, -1))
    block_of = {}
    remaining = {}
    for idx, b in enumerate(p.blocks):
        remaining[idx] = len(b)
        for x in b:
            block_of[x] = idx
    stack: list[int] = []
    opened: set[int] = set()
    for point in order:
        b = block_of[point]
        if stack and stack[-1] == b:
            pass
        elif b in opened:
            return False
        else:
            stack.append(b)
            opened.add(b)
        remaining[b] -= 1
        if remaining[b] == 0:
            stack.pop()
    return True


def is_projective(p: ColoredPartition) -> bool:
    """True iff p = p* and p = p^2 (as partitions)."""
    if p.k != p.l or p.upper_colors != p.lower_colors:
        return False
    if involute(p) != p:
        return False
    return compose(p, p)[0] == p


def precedes(q: ColoredPartition, p: ColoredPartition) -> bool:
    """The strict subprojection order: q < p iff pq = qp = q and p != q."""
    if not (is_projective(p) and is_projective(q)):
        raise ShapeMismatch("precedes requires projective partitions")
    if (p.k, p.l) != (q.k, q.l) or p.upper_colors != q.upper_colors:
        raise ShapeMismatch("precedes requires equal sizes and colors")
    if p == q:
        return False
    qp = compose(q, p)[0]  # p above q
    pq = compose(p, q)[0]  # q above p
    return qp == q and pq == q


def color_counts(p: ColoredPartition) -> tuple[int, int, int]:
    """Return (c_white, c_black, c) with c = c_white - c_black.

    c_white counts lower white plus upper black points, c_black the rest;
    c is invariant under all four rotations.
    """
    c_w = sum(1 for c in p.lower_colors if c == WHITE) + sum(
        1 for c in p.upper_colors if c == BLACK
    )
    c_b = sum(1 for c in p.lower_colors if c == BLACK) + sum(
        1 for c in p.upper_colors if c == WHITE
    )
    return c_w, c_b, c_w - c_b


def block_color_sum(p: ColoredPartition, block: Sequence[int]) -> int:
    """The c-value of a single block (lower white / upper black count +1)."""
    total = 0
    for x in block:
        sign = 1 if p.is_lower(x) else -1
        total += sign if p.color_of(x) == WHITE else -sign
    return total


# ---------------------------------------------------------------------------
# Canonical literal format.
# ---------------------------------------------------------------------------

_LITERAL_RE = re.compile(
    r"P\((\d+),(\d+);([wb]*);([wb]*);\{(.*)\}\)\Z", re.DOTALL
)
_BLOCK_RE = re.compile(r"\{(\d+(?:,\d+)*)\}\Z")


def to_literal(p: ColoredPartition) -> str:
    body = ",".join("{" + ",".join(map(str, b)) + "}" for b in p.blocks)
    return (
        f"P({p.k},{p.l};{''.join(p.upper_colors)};"
        f"{''.join(p.lower_colors)};{{{body}}})"
    )


def _split_blocks(body: str) -> Iterator[str]:
    depth = 0
    start = 0
    for i, ch in enumerate(body):
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        elif ch == "," and depth == 0:
            yield body[start:i]
            start = i + 1
    yield body[start:]


def parse_partition(text: str) -> ColoredPartition:
    """Parse the canonical literal; rejects non-canonical block order."""
    m = _LITERAL_RE.match(text.strip())
    if not m:
        raise ParseError(f"not a partition literal: {text!r}")
    k, l = int(m.group(1)), int(m.group(2))
    upper, lower, body = m.group(3), m.group(4), m.group(5)
    blocks = []
    if body:
        for chunk in _split_blocks(body):
            bm = _BLOCK_RE.match(chunk)
            if not bm:
                raise ParseError(f"bad block {chunk!r} in {text!r}")
            blocks.append(tuple(int(x) for x in bm.group(1).split(",")))
    try:
        p = ColoredPartition(k, l, upper, lower, blocks)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    if p.blocks != tuple(blocks):
        raise ParseError(f"blocks not in canonical order in {text!r}")
    return p
