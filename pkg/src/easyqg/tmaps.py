"""Exact matrix realizations T_p of partitions on (C^n)^{tensor k}.

All arithmetic is over the rationals (``fractions.Fraction``); there is no
floating point anywhere in this module.  A multi-index (x_1, ..., x_k)
with entries in 1..n maps to the flat index sum (x_t - 1) * n^(k-t), so
the first tensor factor is the most significant digit and the Kronecker
product of matrices matches the tensor product of partitions.

The colors of a partition never enter T_p; only the block structure does.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    IndexOutOfRange,
    MissingSubprojectives,
    NotProjective,
    ParseError,
    ShapeMismatch,
    SizeOverflow,
)
from .partitions import (
    ColoredPartition,
    compose,
    involute,
    is_projective,
    precedes,
    tensor,
)

DEFAULT_ENTRY_CAP = 10**7
ENTRY_CAP_ENV = "EASYQG_MAX_TMAP_ENTRIES"


def _entry_cap() -> int:
    raw = os.environ.get(ENTRY_CAP_ENV)
    return int(raw) if raw else DEFAULT_ENTRY_CAP


class ExactMatrix:
    """A sparse matrix over Q; zero entries are never stored."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: dict | None = None):
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for key, val in entries.items():
                if val:
                    r, c = key
                    if not (0 <= r < rows and 0 <= c < cols):
                        raise ValueError(f"entry {key} outside {rows}x{cols}")
                    self.entries[key] = val

    # -- constructors ----------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols)

    # -- protocol --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        if len(self.entries) != len(other.entries):
            return False
        for key, val in self.entries.items():
            if other.entries.get(key, 0) != val:
                return False
        return True

    def __hash__(self):
        raise TypeError("ExactMatrix is not hashable")

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"

    def is_zero(self) -> bool:
        return not self.entries

    def copy(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, dict(self.entries))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatch("matrix addition needs equal shapes")
        out = dict(self.entries)
        for key, val in other.entries.items():
            new = out.get(key, 0) + val
            if new:
                out[key] = new
            else:
                out.pop(key, None)
        return ExactMatrix(self.rows, self.cols, out)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + other.scale(-1)

    def scale(self, factor) -> "ExactMatrix":
        if not factor:
            return ExactMatrix(self.rows, self.cols)
        return ExactMatrix(
            self.rows, self.cols, {k: v * factor for k, v in self.entries.items()}
        )

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        by_row: dict[int, list[tuple[int, object]]] = {}
        for (r, c), val in other.entries.items():
            by_row.setdefault(r, []).append((c, val))
        out: dict[tuple[int, int], object] = {}
        for (r, c), val in self.entries.items():
            for c2, val2 in by_row.get(c, ()):
                key = (r, c2)
                new = out.get(key, 0) + val * val2
                if new:
                    out[key] = new
                else:
                    del out[key]
        return ExactMatrix(self.rows, other.cols, out)

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        out = {}
        for (r1, c1), v1 in self.entries.items():
            for (r2, c2), v2 in other.entries.items():
                out[(r1 * other.rows + r2, c1 * other.cols + c2)] = v1 * v2
        return ExactMatrix(self.rows * other.rows, self.cols * other.cols, out)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()}
        )

    def column(self, c: int) -> dict[int, object]:
        return {r: v for (r, cc), v in self.entries.items() if cc == c}

    def columns(self) -> list[dict[int, object]]:
        cols: list[dict[int, object]] = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def flatten(self) -> dict[int, object]:
        return {r * self.cols + c: v for (r, c), v in self.entries.items()}

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        entries = [
            [r, c, str(Fraction(v))]
            for (r, c), v in sorted(self.entries.items())
        ]
        return {"rows": self.rows, "cols": self.cols, "entries": entries}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: dict) -> "ExactMatrix":
        try:
            entries = {
                (int(r), int(c)): Fraction(v) for r, c, v in data["entries"]
            }
            return cls(int(data["rows"]), int(data["cols"]), entries)
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseError(f"bad matrix payload: {exc}") from exc


# ---------------------------------------------------------------------------
# delta_p and T_p.
# ---------------------------------------------------------------------------


def delta_p(
    p: ColoredPartition,
    i: Sequence[int],
    j: Sequence[int],
    n: int,
) -> int:
    """1 iff every block of p carries a constant index label."""
    if len(i) != p.k or len(j) != p.l:
        raise ShapeMismatch("multi-index lengths must match the partition")
    for x in tuple(i) + tuple(j):
        if not 1 <= x <= n:
            raise IndexOutOfRange(f"index {x} outside 1..{n}")

    def label(point: int) -> int:
        return i[point - 1] if point <= p.k else j[point - p.k - 1]

    for b in p.blocks:
        first = label(b[0])
        for x in b[1:]:
            if label(x) != first:
                return 0
    return 1


def _flat_index(labels: Sequence[int], n: int) -> int:
    idx = 0
    for x in labels:
        idx = idx * n + (x - 1)
    return idx


def t_map(p: ColoredPartition, n: int, cap: int | None = None) -> ExactMatrix:
    """The 0/1 matrix of T_p at size n, shape n^l by n^k."""
    if n < 1:
        raise ValueError("n must be positive")
    cap = _entry_cap() if cap is None else cap
    if n ** max(p.k, p.l) > cap:
        raise SizeOverflow(
            f"n^max(k,l) = {n}^{max(p.k, p.l)} exceeds the cap {cap}"
        )
    m = len(p.blocks)
    entries = {}
    block_of = {}
    for idx, b in enumerate(p.blocks):
        for x in b:
            block_of[x] = idx
    # one value per block; every consistent labeling contributes entry 1
    values = [1] * m
    while True:
        i = [values[block_of[t]] for t in range(1, p.k + 1)]
        j = [values[block_of[t]] for t in range(p.k + 1, p.k + p.l + 1)]
        entries[(_flat_index(j, n), _flat_index(i, n))] = 1
        pos = m - 1
        while pos >= 0 and values[pos] == n:
            values[pos] = 1
            pos -= 1
        if pos < 0:
            break
        values[pos] += 1
        if m == 0:
            break
    return ExactMatrix(n**p.l, n**p.k, entries)


def check_functoriality(p: ColoredPartition, q: ColoredPartition, n: int) -> bool:
    """Verify the three compatibility laws of p -> T_p, exactly.

    Tensor and involution are always checked; the composition law is
    checked when the shapes match (a color mismatch then propagates).
    """
    tp, tq = t_map(p, n), t_map(q, n)
    if t_map(tensor(p, q), n) != tp.kron(tq):
        return False
    if t_map(involute(p), n) != tp.transpose():
        return False
    if t_map(involute(q), n) != tq.transpose():
        return False
    if p.l == q.k:
        qp, removed = compose(q, p)
        if (tq @ tp) != t_map(qp, n).scale(n**removed):
            return False
    return True


# ---------------------------------------------------------------------------
# Exact rank over Q (fraction-free row reduction on integer rows).
# ---------------------------------------------------------------------------


class IntRowReducer:
    """Incremental fraction-free row echelon over Z (rank over Q)."""

    def __init__(self):
        self.pivot_rows: dict[int, dict[int, int]] = {}

    @staticmethod
    def _normalize(row: dict[int, int]) -> dict[int, int]:
        g = 0
        for v in row.values():
            g = math.gcd(g, v)
        lead = row[min(row)]
        if lead < 0:
            g = -g
        return {c: v // g for c, v in row.items()}

    def reduce(self, vec: dict[int, int]) -> dict[int, int]:
        vec = {c: v for c, v in vec.items() if v}
        while vec:
            col = min(vec)
            piv = self.pivot_rows.get(col)
            if piv is None:
                return vec
            a, b = piv[col], vec[col]
            new = {}
            for c, v in vec.items():
                new[c] = a * v
            for c, v in piv.items():
                w = new.get(c, 0) - b * v
                if w:
                    new[c] = w
                else:
                    new.pop(c, None)
            vec = new
        return vec

    def add(self, vec: dict[int, int]) -> bool:
        """Insert a vector; returns True when it enlarges the span."""
        vec = self.reduce(vec)
        if not vec:
            return False
        vec = self._normalize(vec)
        self.pivot_rows[min(vec)] = vec
        return True

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)


def _integerize(vec: dict[int, object]) -> dict[int, int]:
    denoms = [Fraction(v).denominator for v in vec.values()]
    scale = math.lcm(*denoms) if denoms else 1
    return {c: int(Fraction(v) * scale) for c, v in vec.items()}


def rank_of_vectors(vectors: Iterable[dict[int, object]]) -> int:
    red = IntRowReducer()
    for vec in vectors:
        red.add(_integerize(vec))
    return red.rank


def matrix_rank(m: ExactMatrix) -> int:
    by_row: dict[int, dict[int, object]] = {}
    for (r, c), v in m.entries.items():
        by_row.setdefault(r, {})[c] = v
    return rank_of_vectors(by_row.values())


def intertwiner_dim(
    sample, k: int, l: int, n: int
) -> tuple[int, list[ColoredPartition]]:
    """Rank of {T_p : p all-white in C(k,l)} plus a greedy independent basis.

    The partitions are visited in canonical order, so the basis is the
    lexicographically earliest maximal independent subset.
    """
    if k + l > sample.max_points:
        raise ShapeMismatch(
            f"shape ({k},{l}) exceeds the sample bound {sample.max_points}"
        )
    red = IntRowReducer()
    basis = []
    for p in sorted(sample.iter_members(k=k, l=l, all_white=True)):
        vec = t_map(p, n).flatten()
        if red.add({c: int(v) for c, v in vec.items()}):
            basis.append(p)
    return red.rank, basis


# ---------------------------------------------------------------------------
# Projections P_p = normalized T_p minus the span of smaller projectives.
# ---------------------------------------------------------------------------


@dataclass
class ProjectionReport:
    p: ColoredPartition
    P_matrix: ExactMatrix
    R_matrix: ExactMatrix
    sub_projectives_used: list[ColoredPartition] = field(default_factory=list)

    def verify(self) -> bool:
        P, R = self.P_matrix, self.R_matrix
        return (
            (P @ P) == P
            and P.transpose() == P
            and (P @ R).is_zero()
            and (R @ R) == R
        )


def _solve_rational(a: list[list[Fraction]], rhs: list[list[Fraction]]):
    """Solve a X = rhs for square invertible a, by Gaussian elimination."""
    t = len(a)
    m = [row[:] + r[:] for row, r in zip(a, rhs)]
    width = len(m[0])
    for col in range(t):
        piv = next(r for r in range(col, t) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        inv = Fraction(1, 1) / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(t):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[t:width] for row in m]


def range_projection(columns: list[dict[int, object]], dim: int) -> ExactMatrix:
    """Orthogonal projection onto the span of the given column vectors.

    Computed over Q via the normal equations B (B^t B)^{-1} B^t on an
    independent column subset B.
    """
    red = IntRowReducer()
    basis: list[dict[int, object]] = []
    for col in columns:
        if red.add(_integerize(col)):
            basis.append(col)
    if not basis:
        return ExactMatrix.zeros(dim, dim)
    t = len(basis)
    gram = [
        [
            Fraction(
                sum(
                    Fraction(basis[i].get(r, 0)) * Fraction(basis[j].get(r, 0))
                    for r in set(basis[i]) & set(basis[j])
                )
            )
            for j in range(t)
        ]
        for i in range(t)
    ]
    # rhs = B^t as a dense t x dim block (sparse columns keep this cheap)
    rhs = [[Fraction(0)] * dim for _ in range(t)]
    for i, col in enumerate(basis):
        for r, v in col.items():
            rhs[i][r] = Fraction(v)
    x = _solve_rational(gram, rhs)  # t x dim
    entries: dict[tuple[int, int], Fraction] = {}
    for i, col in enumerate(basis):
        for r, v in col.items():
            vf = Fraction(v)
            for c in range(dim):
                if x[i][c]:
                    key = (r, c)
                    new = entries.get(key, 0) + vf * x[i][c]
                    if new:
                        entries[key] = new
                    else:
                        entries.pop(key, None)
    return ExactMatrix(dim, dim, entries)


def sub_projectives(p: ColoredPartition, sample) -> list[ColoredPartition]:
    """All projective q strictly below p in the sample, canonical order."""
    out = []
    for q in sorted(sample.iter_members(k=p.k, l=p.l)):
        if q.upper_colors != p.upper_colors or q.lower_colors != p.lower_colors:
            continue
        if q == p or not is_projective(q):
            continue
        if precedes(q, p):
            out.append(q)
    return out


def projective_projection(
    p: ColoredPartition, sample, n: int
) -> ProjectionReport:
    """P_p = T_p / n^{b(p,p)} minus the projection onto smaller ranges."""
    if not is_projective(p):
        raise NotProjective(f"{p!r} is not projective")
    if not sample.saturated:
        raise MissingSubprojectives(
            "sample is not saturated; sub-projectives may be missing"
        )
    if p not in sample:
        raise MissingSubprojectives(f"{p!r} is not in the sample")
    subs = sub_projectives(p, sample)
    loops = compose(p, p)[1]
    dim = n**p.k
    normalized = t_map(p, n).scale(Fraction(1, n**loops))
    columns: list[dict[int, object]] = []
    for q in subs:
        columns.extend(c for c in t_map(q, n).columns() if c)
    r_matrix = range_projection(columns, dim)
    return ProjectionReport(p, normalized - r_matrix, r_matrix, subs)


def cp1_witness_check(
    p: ColoredPartition,
    q: ColoredPartition,
    r: ColoredPartition,
    n: int,
    sample,
) -> bool:
    """Exact evaluation of (P_p tensor P_q) T_r != 0.

    The sample supplies the sub-projectives entering P_p and P_q.
    """
    if r.k != 0 or r.l != p.k + q.k:
        raise ShapeMismatch(
            "witness r must live in C(0, size(p) + size(q))"
        )
    pp = projective_projection(p, sample, n).P_matrix
    pq = projective_projection(q, sample, n).P_matrix
    return not (pp.kron(pq) @ t_map(r, n)).is_zero()
