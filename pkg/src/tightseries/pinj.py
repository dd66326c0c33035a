"""Partial one-to-one transformations of a finite ground set.

Points are stored 0-based as indices into ``{0, ..., m-1}``.  Element
literals follow the two-row notation and number points from 1, so the
literal ``[1->3, 2->4]`` is the map sending the first point to the third
and the second to the fourth.

Composition follows ``(a * b)(x) = a(b(x))``: the right factor acts first.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .errors import DomainMismatchError, ParseError

__all__ = [
    "PartialInjection",
    "compose",
    "invert",
    "identity_on",
    "rank",
    "is_idempotent",
    "natural_leq",
    "parse",
    "render",
    "zero",
]


class PartialInjection:
    """An injective partial map on ``{0, ..., ground_size-1}``.

    Internally the map is an image tuple of length ``ground_size + 1``
    where ``-1`` marks "undefined" and the trailing slot is a ``-1``
    sentinel, so composition is a single gather: ``a._img[b._img[x]]``.
    """

    __slots__ = ("ground_size", "_img", "_hash")

    def __init__(self, ground_size: int, pairs: Iterable[tuple[int, int]] = ()):
        if ground_size < 0:
            raise ValueError("ground_size must be non-negative")
        img = [-1] * (ground_size + 1)
        seen_targets = set()
        for s, t in pairs:
            if not (0 <= s < ground_size and 0 <= t < ground_size):
                raise ValueError(f"pair ({s}, {t}) outside ground set of size {ground_size}")
            if img[s] != -1:
                raise ValueError(f"duplicate source {s}")
            if t in seen_targets:
                raise ValueError(f"duplicate target {t}")
            img[s] = t
            seen_targets.add(t)
        self.ground_size = ground_size
        self._img = tuple(img)
        self._hash = hash((ground_size, self._img))

    @classmethod
    def _from_image(cls, ground_size: int, img: tuple) -> PartialInjection:
        obj = cls.__new__(cls)
        obj.ground_size = ground_size
        obj._img = img
        obj._hash = hash((ground_size, img))
        return obj

    @classmethod
    def from_pairs(cls, ground_size: int, pairs: Iterable[tuple[int, int]]) -> PartialInjection:
        return cls(ground_size, pairs)

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        """Pairs ``(source, target)`` sorted by source."""
        return tuple((s, t) for s, t in enumerate(self._img[:-1]) if t >= 0)

    @property
    def image(self) -> tuple[int, ...]:
        """Image list of length ``ground_size`` with ``-1`` for undefined points."""
        return self._img[:-1]

    def domain(self) -> tuple[int, ...]:
        return tuple(s for s, t in enumerate(self._img[:-1]) if t >= 0)

    def range(self) -> tuple[int, ...]:
        return tuple(sorted(t for t in self._img[:-1] if t >= 0))

    @property
    def rank(self) -> int:
        return len(self._img) - self._img.count(-1)

    def __call__(self, x: int) -> int | None:
        t = self._img[x]
        return None if t < 0 else t

    def __mul__(self, other: PartialInjection) -> PartialInjection:
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, PartialInjection):
            return NotImplemented
        return self.ground_size == other.ground_size and self._img == other._img

    def __hash__(self):
        return self._hash

    def sort_key(self):
        """Rank first, then the sorted domain, then the matching targets."""
        pairs = self.pairs
        return (len(pairs), tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    def __lt__(self, other: PartialInjection) -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"PartialInjection({self.ground_size}, {list(self.pairs)})"

    def __str__(self):
        return render(self)

    def to_json(self) -> dict:
        return {"ground_size": self.ground_size, "pairs": [[s + 1, t + 1] for s, t in self.pairs]}


def zero(ground_size: int) -> PartialInjection:
    """The empty transformation."""
    return PartialInjection(ground_size)


def compose(a: PartialInjection, b: PartialInjection) -> PartialInjection:
    """Return ``a * b``, the map ``x -> a(b(x))`` wherever defined."""
    if a.ground_size != b.ground_size:
        raise DomainMismatchError(
            f"cannot compose maps on ground sets of size {a.ground_size} and {b.ground_size}"
        )
    return PartialInjection._from_image(a.ground_size, tuple(map(a._img.__getitem__, b._img)))


def invert(a: PartialInjection) -> PartialInjection:
    img = [-1] * (a.ground_size + 1)
    for s, t in enumerate(a._img[:-1]):
        if t >= 0:
            img[t] = s
    return PartialInjection._from_image(a.ground_size, tuple(img))


def identity_on(points: Iterable[int], ground_size: int) -> PartialInjection:
    return PartialInjection(ground_size, ((p, p) for p in sorted(set(points))))


def rank(a: PartialInjection) -> int:
    return a.rank


def is_idempotent(a: PartialInjection) -> bool:
    return all(t < 0 or t == s for s, t in enumerate(a._img[:-1]))


def natural_leq(a: PartialInjection, b: PartialInjection) -> bool:
    """Restriction order: every pair of ``a`` is a pair of ``b``."""
    if a.ground_size != b.ground_size:
        raise DomainMismatchError("natural order needs a common ground set")
    bi = b._img
    return all(t < 0 or bi[s] == t for s, t in enumerate(a._img[:-1]))


_PAIR_RE = re.compile(r"^\s*(\d+)\s*->\s*(\d+)\s*$")


def parse(text: str, ground_size: int | None = None) -> PartialInjection:
    """Parse ``[s->t, ...]`` or ``0`` with 1-based points.

    When ``ground_size`` is omitted the largest point mentioned is used.
    """
    body = text.strip()
    if body == "0":
        return zero(ground_size or 0)
    if not (body.startswith("[") and body.endswith("]")):
        raise ParseError(f"expected '[s->t, ...]' or '0', got {text!r}")
    inner = body[1:-1].strip()
    tokens = [tok for tok in inner.split(",")] if inner else []
    pairs: list[tuple[int, int]] = []
    sources: set[int] = set()
    targets: set[int] = set()
    for tok in tokens:
        m = _PAIR_RE.match(tok)
        if m is None:
            raise ParseError(f"malformed pair {tok.strip()!r}")
        s, t = int(m.group(1)), int(m.group(2))
        if s < 1 or t < 1:
            raise ParseError(f"points are numbered from 1: {tok.strip()!r}")
        if s in sources:
            raise ParseError(f"duplicate source in {tok.strip()!r}")
        if t in targets:
            raise ParseError(f"duplicate target in {tok.strip()!r}")
        if ground_size is not None and (s > ground_size or t > ground_size):
            raise ParseError(f"point out of range 1..{ground_size} in {tok.strip()!r}")
        sources.add(s)
        targets.add(t)
        pairs.append((s - 1, t - 1))
    if ground_size is None:
        ground_size = max((max(s, t) + 1 for s, t in pairs), default=0)
    return PartialInjection(ground_size, pairs)


def render(a: PartialInjection) -> str:
    if a.rank == 0:
        return "0"
    return "[" + ", ".join(f"{s + 1}->{t + 1}" for s, t in a.pairs) + "]"


def from_json(obj: dict) -> PartialInjection:
    return PartialInjection(obj["ground_size"], ((s - 1, t - 1) for s, t in obj["pairs"]))


def widen(a: PartialInjection, ground_size: int) -> PartialInjection:
    """Reinterpret ``a`` on a larger ground set."""
    if ground_size < a.ground_size:
        raise DomainMismatchError("cannot shrink the ground set")
    return PartialInjection(ground_size, a.pairs)


def point_set(points: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted(set(points)))
