"""Fusion rings: SU(2)-type, SO(3)-type, and word rings over Z/sZ.

Irreducible labels are plain data: an integer k for the u_k families, a
tuple of letters in {1, ..., s} for the word family (the class of 0 is
written as the letter s).  A fusion vector is a dict mapping labels to
integer multiplicities with no stored zeros.  The ring object carries the
family tag and all memoized products, so labels never need to.

The word family (s >= 1) follows the two monoid rules

    involution   (i_1 ... i_k)~ = (-i_k) ... (-i_1)
    fusion       (i_1 ... i_k) . (j_1 ... j_l) = i_1 ... (i_k + j_1) ... j_l

with the tensor decomposition summing, over all splittings x = vz and
y = z~ w, the concatenation term vw plus the fused term v.w (undefined
when v or w is empty).  Multiplicities from distinct splittings add up;
the associativity tests pin that reading down.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from .errors import (
    InconsistentDimension,
    ModulusMismatch,
    NotReachable,
    OddLabel,
    ParseError,
    WrongFamily,
)

DEFAULT_LEVEL_CAP = 32


# ---------------------------------------------------------------------------
# Raw word operations (letters in 1..s; the letter s represents the class 0).
# ---------------------------------------------------------------------------


def _check_letters(letters: tuple[int, ...], s: int) -> None:
    if any(not 1 <= x <= s for x in letters):
        raise ValueError(f"letters must lie in 1..{s}: {letters}")


def _involution(letters: tuple[int, ...], s: int) -> tuple[int, ...]:
    return tuple((-x) % s or s for x in reversed(letters))


def _fusion(a: tuple[int, ...], b: tuple[int, ...], s: int):
    if not a or not b:
        return None
    merged = (a[-1] + b[0]) % s or s
    return a[:-1] + (merged,) + b[1:]


def _pair_product(
    x: tuple[int, ...], y: tuple[int, ...], s: int
) -> dict[tuple[int, ...], int]:
    """r_x tensor r_y expanded over all cancelable splittings."""
    out: dict[tuple[int, ...], int] = {}
    for cut in range(len(x), -1, -1):
        v, z = x[:cut], x[cut:]
        zbar = _involution(z, s)
        if y[: len(z)] != zbar:
            continue
        w = y[len(z):]
        concat = v + w
        out[concat] = out.get(concat, 0) + 1
        fused = _fusion(v, w, s)
        if fused is not None:
            out[fused] = out.get(fused, 0) + 1
    return out


@dataclass(frozen=True)
class Word:
    """A word over Z/sZ with letters written in {1, ..., s}."""

    letters: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be >= 1")
        _check_letters(self.letters, self.modulus)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return f"r[{','.join(map(str, self.letters))}]@{self.modulus}"


def word_involution(w: Word) -> Word:
    return Word(_involution(w.letters, w.modulus), w.modulus)


def word_fusion(a: Word, b: Word) -> Word | None:
    """The fused word, or None when either factor is empty."""
    if a.modulus != b.modulus:
        raise ModulusMismatch(f"moduli differ: {a.modulus} vs {b.modulus}")
    fused = _fusion(a.letters, b.letters, a.modulus)
    return None if fused is None else Word(fused, a.modulus)


def h_decompose(x: Word, y: Word) -> dict[Word, int]:
    if x.modulus != y.modulus:
        raise ModulusMismatch(f"moduli differ: {x.modulus} vs {y.modulus}")
    raw = _pair_product(x.letters, y.letters, x.modulus)
    return {Word(k, x.modulus): v for k, v in raw.items()}


# ---------------------------------------------------------------------------
# Vector helpers (fusion vectors are plain dicts label -> multiplicity).
# ---------------------------------------------------------------------------


def _add_scaled(acc: dict, vec: dict, factor: int) -> None:
    for label, mult in vec.items():
        new = acc.get(label, 0) + factor * mult
        if new:
            acc[label] = new
        else:
            del acc[label]


def _freeze(vec: dict) -> tuple:
    return tuple(sorted(vec.items()))


# ---------------------------------------------------------------------------
# Rings.
# ---------------------------------------------------------------------------


class FusionRing:
    """Base class; subclasses define labels and the pair product."""

    family: str = "?"

    def __init__(self):
        self._pair_cache: dict[tuple, dict] = {}
        self._power_cache: dict[tuple, list[dict]] = {}

    # subclass surface -------------------------------------------------

    def trivial(self):
        raise NotImplementedError

    def fundamental(self) -> dict:
        raise NotImplementedError

    def _pair(self, a, b) -> dict:
        raise NotImplementedError

    def conjugate(self, label):
        raise NotImplementedError

    def sort_key(self, label):
        raise NotImplementedError

    def format_label(self, label) -> str:
        raise NotImplementedError

    def parse_label(self, text: str):
        raise NotImplementedError

    def dim(self, label, n: int) -> int:
        raise NotImplementedError

    # shared machinery ---------------------------------------------------

    def decompose(self, a, b) -> dict:
        key = (a, b)
        cached = self._pair_cache.get(key)
        if cached is None:
            cached = self._pair(a, b)
            assert all(m > 0 for m in cached.values())
            self._pair_cache[key] = cached
        return cached

    def multiply(self, va: dict, vb: dict) -> dict:
        out: dict = {}
        for a, ma in va.items():
            for b, mb in vb.items():
                _add_scaled(out, self.decompose(a, b), ma * mb)
        return out

    def vector_power(self, generator: dict, exponent: int) -> dict:
        """generator^(tensor exponent), memoized level by level."""
        if exponent < 0:
            raise ValueError("exponent must be >= 0")
        key = _freeze(generator)
        levels = self._power_cache.setdefault(key, [{self.trivial(): 1}])
        while len(levels) <= exponent:
            levels.append(self.multiply(levels[-1], generator))
        return levels[exponent]

    def power(self, exponent: int) -> dict:
        return self.vector_power(self.fundamental(), exponent)

    def support(self, exponent: int) -> frozenset:
        return frozenset(self.power(exponent))

    def degree(self, label, level_cap: int = DEFAULT_LEVEL_CAP) -> int:
        """Smallest power of the fundamental containing the label (BFS)."""
        for ell in range(level_cap + 1):
            if label in self.power(ell):
                return ell
        raise NotReachable(
            f"{self.format_label(label)} not found in powers up to {level_cap}"
        )

    def irreducibles_up_to_degree(self, cap: int) -> list:
        """All labels of degree <= cap, in sort order."""
        seen = set()
        for ell in range(cap + 1):
            seen.update(self.power(ell))
        return sorted(seen, key=self.sort_key)


class SU2Ring(FusionRing):
    """Labels u_k, k >= 0; the SU(2) ladder rule."""

    family = "su2"

    def trivial(self):
        return 0

    def fundamental(self) -> dict:
        return {1: 1}

    def _pair(self, a: int, b: int) -> dict:
        return {m: 1 for m in range(abs(a - b), a + b + 1, 2)}

    def conjugate(self, label: int) -> int:
        return label

    def sort_key(self, label: int):
        return (label, (label,))

    def format_label(self, label: int) -> str:
        return f"u{label}"

    def parse_label(self, text: str) -> int:
        m = re.fullmatch(r"u(\d+)", text.strip())
        if not m:
            raise ParseError(f"bad label {text!r} for family {self.family}")
        return int(m.group(1))

    def dim(self, label: int, n: int) -> int:
        if n < 2:
            raise InconsistentDimension("SU(2)-type dims need n >= 2")
        prev, cur = 1, n
        if label == 0:
            return 1
        for _ in range(label - 1):
            prev, cur = cur, n * cur - prev
        if cur <= 0:
            raise InconsistentDimension(f"dim u_{label} <= 0 at n={n}")
        return cur


class SO3Ring(FusionRing):
    """Even labels u_{2k} with the same ladder rule; u_{2k} has degree k."""

    family = "so3"

    @staticmethod
    def _check_even(label: int) -> None:
        if label % 2:
            raise OddLabel(f"SO(3)-type labels must be even, got {label}")

    def trivial(self):
        return 0

    def fundamental(self) -> dict:
        # the natural representation splits as trivial plus u_2
        return {0: 1, 2: 1}

    def _pair(self, a: int, b: int) -> dict:
        self._check_even(a)
        self._check_even(b)
        return {m: 1 for m in range(abs(a - b), a + b + 1, 2)}

    def conjugate(self, label: int) -> int:
        return label

    def sort_key(self, label: int):
        return (label // 2, (label,))

    def format_label(self, label: int) -> str:
        return f"u{label}"

    def parse_label(self, text: str) -> int:
        m = re.fullmatch(r"u(\d+)", text.strip())
        if not m:
            raise ParseError(f"bad label {text!r} for family {self.family}")
        label = int(m.group(1))
        self._check_even(label)
        return label

    def dim(self, label: int, n: int) -> int:
        self._check_even(label)
        if n < 4:
            raise InconsistentDimension("SO(3)-type dims need n >= 4")
        if label == 0:
            return 1
        prev, cur = 1, n - 1
        for _ in range(label // 2 - 1):
            prev, cur = cur, (n - 2) * cur - prev
        if cur <= 0:
            raise InconsistentDimension(f"dim u_{label} <= 0 at n={n}")
        return cur


class HWordRing(FusionRing):
    """Words over Z/sZ; the fundamental is the one-letter word (1).

    Dimensions follow the quantum-group values: a single letter j < s has
    dimension n, the letter s has dimension n - 1 (it is the block fixed
    by relabeling the cyclic group), and longer words are forced by the
    product expansions, which are triangular in (degree, length).  For
    s = 1 the fundamental is the letter s itself, so its dimension is
    n - 1; the suite cross-checks these values against ranks of the
    partition-level projections.
    """

    family = "hword"

    def __init__(self, s: int):
        if s < 1:
            raise ValueError("s must be >= 1")
        super().__init__()
        self.s = s
        self._dim_cache: dict[tuple, int] = {}

    def trivial(self):
        return ()

    def fundamental(self) -> dict:
        return {(1,): 1}

    def _pair(self, a: tuple, b: tuple) -> dict:
        return _pair_product(a, b, self.s)

    def conjugate(self, label: tuple) -> tuple:
        return _involution(label, self.s)

    def sort_key(self, label: tuple):
        return (sum(label), label)

    def letter_sum(self, label: tuple) -> int:
        return sum(label)

    def format_label(self, label: tuple) -> str:
        return f"r[{','.join(map(str, label))}]@{self.s}"

    def parse_label(self, text: str) -> tuple:
        m = re.fullmatch(r"r\[([\d,\s]*)\](@(\d+))?", text.strip())
        if not m:
            raise ParseError(f"bad label {text!r} for family {self.family}")
        if m.group(3) is not None and int(m.group(3)) != self.s:
            raise ModulusMismatch(
                f"label modulus {m.group(3)} differs from ring modulus {self.s}"
            )
        body = m.group(1).strip()
        letters = tuple(int(x) for x in body.split(",")) if body else ()
        try:
            _check_letters(letters, self.s)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
        return letters

    def dim(self, label: tuple, n: int) -> int:
        if n < 2:
            raise InconsistentDimension("word-family dims need n >= 2")
        key = (label, n)
        cached = self._dim_cache.get(key)
        if cached is not None:
            return cached
        if not label:
            value = 1
        elif len(label) == 1:
            value = n - 1 if label[0] == self.s else n
        else:
            y, j = label[:-1], (label[-1],)
            total = self.dim(y, n) * self.dim(j, n)
            for gamma, mult in self.decompose(y, j).items():
                if gamma == label:
                    mult -= 1
                if mult:
                    # every other term is strictly smaller in (degree, length)
                    assert (sum(gamma), len(gamma)) < (sum(label), len(label))
                    total -= mult * self.dim(gamma, n)
            value = total
        if value <= 0:
            raise InconsistentDimension(
                f"dim {self.format_label(label)} = {value} at n={n}"
            )
        self._dim_cache[key] = value
        return value


_RING_CACHE: dict[tuple, FusionRing] = {}


def get_ring(family: str, s: int | None = None) -> FusionRing:
    """Ring for a CLI family name: O+ -> SU2, S+ -> SO3, H+ -> words."""
    key = (family, s)
    ring = _RING_CACHE.get(key)
    if ring is None:
        if family in ("O+", "su2"):
            ring = SU2Ring()
        elif family in ("S+", "so3"):
            ring = SO3Ring()
        elif family in ("H+", "hword"):
            if s is None or s < 1:
                raise ValueError("family H+ needs s >= 1")
            ring = HWordRing(s)
        else:
            raise WrongFamily(f"no fusion ring shipped for family {family!r}")
        _RING_CACHE[key] = ring
    return ring


# ---------------------------------------------------------------------------
# Spec-level operation wrappers.
# ---------------------------------------------------------------------------


def su2_decompose(k: int, l: int) -> dict[int, int]:
    if k < 0 or l < 0:
        raise ValueError("labels must be >= 0")
    return dict(get_ring("su2").decompose(k, l))


def so3_decompose(a: int, b: int) -> dict[int, int]:
    if a < 0 or b < 0:
        raise ValueError("labels must be >= 0")
    SO3Ring._check_even(a)
    SO3Ring._check_even(b)
    return dict(get_ring("so3").decompose(a, b))


def power_decompose(ring: FusionRing, generator: dict, exponent: int) -> dict:
    return ring.vector_power(generator, exponent)


def degree(ring: FusionRing, label, level_cap: int = DEFAULT_LEVEL_CAP) -> int:
    return ring.degree(label, level_cap)


def length(ring: FusionRing, label) -> int:
    if not isinstance(ring, HWordRing):
        raise WrongFamily("length is defined for the word family only")
    return len(label)


def dim(ring: FusionRing, label, n: int) -> int:
    return ring.dim(label, n)


def chain_group_order(ring: FusionRing, level_cap: int = 10) -> int:
    """Number of co-occurrence classes of irreducibles within the cap.

    Two labels are identified when they appear in a common tensor power of
    the fundamental; the quotient is the chain group, computed here rather
    than assumed.  Returns the class count (the group is cyclic, generated
    by the class of the fundamental).
    """
    parent: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for ell in range(level_cap + 1):
        labels = sorted(ring.support(ell), key=ring.sort_key)
        for lab in labels:
            parent.setdefault(lab, lab)
        for lab in labels[1:]:
            union(labels[0], lab)
    return len({find(x) for x in parent})


def format_vector(ring: FusionRing, vec: dict) -> dict[str, int]:
    """JSON form of a fusion vector: label string -> multiplicity."""
    return {
        ring.format_label(label): vec[label]
        for label in sorted(vec, key=ring.format_label)
    }
