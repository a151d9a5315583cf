"""Spectra: sets of countable cardinalities of models.

Three shapes are enough for the catalogue: an explicit finite set of positive
integers, the complement of such a set within the positive integers plus
aleph_0, and the singleton {aleph_0}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

ALEPH0 = math.inf

FINITE = "finite"
COFINITE = "cofinite"
INFINITY_ONLY = "infinity"


def is_aleph0(x) -> bool:
    return x == ALEPH0


def card_text(x) -> str:
    return "ℵ0" if is_aleph0(x) else str(x)


@dataclass(frozen=True)
class Spectrum:
    kind: str
    members: frozenset = frozenset()  # included set (finite) or excluded set (cofinite)

    def __post_init__(self):
        if self.kind not in (FINITE, COFINITE, INFINITY_ONLY):
            raise ValueError(f"unknown spectrum kind {self.kind!r}")
        if any((not isinstance(n, int)) or n < 1 for n in self.members):
            raise ValueError("spectrum members must be positive integers")
        if self.kind == INFINITY_ONLY and self.members:
            raise ValueError("the infinity-only spectrum has no finite members")

    @classmethod
    def finite(cls, members: Iterable[int] = ()) -> "Spectrum":
        return cls(FINITE, frozenset(members))

    @classmethod
    def cofinite(cls, excluded: Iterable[int] = ()) -> "Spectrum":
        return cls(COFINITE, frozenset(excluded))

    @classmethod
    def infinity_only(cls) -> "Spectrum":
        return cls(INFINITY_ONLY)

    def is_empty(self) -> bool:
        return self.kind == FINITE and not self.members

    def __contains__(self, k) -> bool:
        return contains(self, k)

    def tail_start(self) -> int:
        """Smallest n such that every finite n' >= n is in the spectrum (cofinite only)."""
        if self.kind != COFINITE:
            raise ValueError("only cofinite spectra have a tail")
        return 1 + max(self.members, default=0)

    def finite_part(self, upto: int) -> frozenset:
        return frozenset(k for k in range(1, upto + 1) if contains(self, k))

    def __str__(self) -> str:
        inner = ",".join(str(n) for n in sorted(self.members))
        if self.kind == FINITE:
            return "{" + inner + "}"
        if self.kind == COFINITE:
            return "co{" + inner + "}"
        return "{ℵ0}"


EMPTY = Spectrum.finite()


@dataclass(frozen=True)
class IntervalPiece:
    """[lo, hi] with hi finite, or the tail {n >= lo} plus aleph_0 when hi is ALEPH0."""

    lo: int
    hi: float

    def __post_init__(self):
        if self.lo < 1:
            raise ValueError("interval pieces start at a positive integer")
        if not is_aleph0(self.hi) and self.hi < self.lo:
            raise ValueError("empty interval piece")


def normalize(pieces: Iterable[IntervalPiece]) -> Spectrum:
    pieces = list(pieces)
    tails = [p.lo for p in pieces if is_aleph0(p.hi)]
    finite = set()
    for p in pieces:
        if not is_aleph0(p.hi):
            finite.update(range(p.lo, int(p.hi) + 1))
    if not tails:
        return Spectrum.finite(finite)
    start = min(tails)
    return Spectrum.cofinite(n for n in range(1, start) if n not in finite)


def to_pieces(spec: Spectrum) -> list:
    """Decompose a finite or cofinite spectrum into maximal interval pieces."""
    if spec.kind == INFINITY_ONLY:
        raise ValueError("the infinity-only spectrum has no interval decomposition")
    if spec.kind == FINITE:
        included = sorted(spec.members)
        tail = None
    else:
        start = spec.tail_start()
        included = [n for n in range(1, start) if n not in spec.members]
        tail = start
    pieces = []
    for n in included:
        if pieces and pieces[-1][1] == n - 1:
            pieces[-1][1] = n
        else:
            pieces.append([n, n])
    out = [IntervalPiece(lo, hi) for lo, hi in pieces]
    if tail is not None:
        if out and out[-1].hi == tail - 1:
            out[-1] = IntervalPiece(out[-1].lo, ALEPH0)
        else:
            out.append(IntervalPiece(tail, ALEPH0))
    return out


def union(a: Spectrum, b: Spectrum) -> Spectrum:
    if a.kind == INFINITY_ONLY or b.kind == INFINITY_ONLY:
        other = b if a.kind == INFINITY_ONLY else a
        if other.kind == INFINITY_ONLY:
            return other
        if other.kind == COFINITE:
            return other
        if not other.members:
            return Spectrum.infinity_only()
        raise ValueError("a finite set plus aleph_0 is not representable")
    return normalize(to_pieces(a) + to_pieces(b))


def contains(spec: Spectrum, k) -> bool:
    if is_aleph0(k):
        return spec.kind in (COFINITE, INFINITY_ONLY)
    if spec.kind == FINITE:
        return k in spec.members
    if spec.kind == COFINITE:
        return k not in spec.members
    return False


def intersect_empty(a: Spectrum, b: Spectrum) -> bool:
    """Whether the two spectra share no cardinality."""
    if a.kind != FINITE and b.kind != FINITE:
        return False  # both contain aleph_0
    if a.kind == FINITE and b.kind == FINITE:
        return not (a.members & b.members)
    fin, other = (a, b) if a.kind == FINITE else (b, a)
    return not any(contains(other, k) for k in fin.members)


def intersect_empty_vs_cfs(
    a: Spectrum,
    probe: Callable[[int], bool],
    inf_tail: Optional[Callable[[int], bool]] = None,
) -> bool:
    """Disjointness of a gentle spectrum from one known only through queries.

    ``probe(k)`` answers whether k is in the other spectrum; ``inf_tail(n)``
    whether the other side has a model with at least n elements.
    """
    if a.kind == FINITE:
        return not any(probe(k) for k in sorted(a.members))
    if a.kind == INFINITY_ONLY:
        raise ValueError("the infinity-only spectrum is not a gentle output")
    if inf_tail is None:
        raise ValueError("a cofinite spectrum needs the tail test")
    start = a.tail_start()
    residual = [k for k in range(1, start) if k not in a.members]
    if any(probe(k) for k in residual):
        return False
    return not inf_tail(start)
