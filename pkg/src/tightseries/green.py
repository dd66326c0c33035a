"""Green's relations on a finite element set, and factorisation inside a
regular D-class.

``s L t`` iff ``S^1 s = S^1 t`` and ``s R t`` iff ``s S^1 = t S^1``.  With the
composition convention ``(ab)(x) = a(b(x))`` a partial injection's principal
left ideal is fixed by its domain and its principal right ideal by its
range, so on partial injections L means "same domain" and R means "same
range".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .enumeration import ElementSet, regularity_witnesses
from .errors import NotRegularError, PreconditionError


def _classes_from_rows(rows: np.ndarray) -> np.ndarray:
    """Class id per row, numbering classes by first appearance."""
    ids: dict[bytes, int] = {}
    out = np.empty(rows.shape[0], dtype=np.int64)
    for i, row in enumerate(rows):
        out[i] = ids.setdefault(np.packbits(row).tobytes(), len(ids))
    return out


def _renumber(labels: np.ndarray) -> np.ndarray:
    ids: dict[int, int] = {}
    return np.fromiter((ids.setdefault(int(x), len(ids)) for x in labels), dtype=np.int64,
                       count=len(labels))


def _members(labels: np.ndarray) -> list[tuple[int, ...]]:
    groups: list[list[int]] = [[] for _ in range(int(labels.max()) + 1)] if labels.size else []
    for i, c in enumerate(labels):
        groups[c].append(i)
    return [tuple(g) for g in groups]


@dataclass
class DClassSummary:
    index: int
    size: int
    l_count: int
    r_count: int
    h_size: int
    regular: bool
    idempotents: int


@dataclass
class GreenStructure:
    """Class ids per element (index into ``elements``) and derived data."""

    elements: ElementSet
    l_of: np.ndarray
    r_of: np.ndarray
    h_of: np.ndarray
    d_of: np.ndarray
    regular: np.ndarray
    idempotent: np.ndarray
    left_ideals: np.ndarray
    right_ideals: np.ndarray

    @property
    def l_classes(self):
        return _members(self.l_of)

    @property
    def r_classes(self):
        return _members(self.r_of)

    @property
    def h_classes(self):
        return _members(self.h_of)

    @property
    def d_classes(self):
        return _members(self.d_of)

    def relation(self, kind: str) -> np.ndarray:
        """Boolean ``(N, N)`` matrix of the relation ``kind`` in L, R, H, D."""
        labels = {"L": self.l_of, "R": self.r_of, "H": self.h_of, "D": self.d_of}[kind]
        return labels[:, None] == labels[None, :]

    def class_elements(self, indices) -> list:
        return [self.elements[i] for i in indices]

    def d_class_regular(self, d: int) -> bool:
        return bool(self.regular[self.d_of == d].any())

    def egg_box(self) -> list[DClassSummary]:
        out = []
        for d, members in enumerate(self.d_classes):
            idx = np.array(members)
            hs = {int(self.h_of[i]) for i in idx}
            out.append(DClassSummary(
                d, len(idx),
                len({int(self.l_of[i]) for i in idx}),
                len({int(self.r_of[i]) for i in idx}),
                len(idx) // len(hs),
                bool(self.regular[idx].any()),
                int(self.idempotent[idx].sum()),
            ))
        return out


def compute_green(s: ElementSet) -> GreenStructure:
    table = s.table()
    n = len(s)
    ar = np.arange(n)
    left = np.zeros((n, n), dtype=bool)   # left[x] = S^1 x
    right = np.zeros((n, n), dtype=bool)  # right[x] = x S^1
    left[ar[:, None], table.T] = True
    right[ar[:, None], table] = True
    left[ar, ar] = True
    right[ar, ar] = True
    l_of = _classes_from_rows(left)
    r_of = _classes_from_rows(right)
    pairs: dict[tuple[int, int], int] = {}
    h_of = np.fromiter((pairs.setdefault((int(l), int(r)), len(pairs)) for l, r in zip(l_of, r_of)),
                       dtype=np.int64, count=n)
    d_of = _renumber(_join(l_of, r_of))
    regular = regularity_witnesses(s) >= 0
    idempotent = table[ar, ar] == ar
    return GreenStructure(s, l_of, r_of, h_of, d_of, regular, idempotent, left, right)


def _join(l_of: np.ndarray, r_of: np.ndarray) -> np.ndarray:
    """Smallest equivalence containing both partitions (union-find)."""
    n = len(l_of)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for labels in (l_of, r_of):
        first: dict[int, int] = {}
        for i, c in enumerate(labels):
            j = first.setdefault(int(c), i)
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    return np.array([find(i) for i in range(n)])


def compose_relations(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``x (a o b) z`` iff some ``y`` has ``x a y`` and ``y b z``."""
    return (a.astype(np.int64) @ b.astype(np.int64)) > 0


class Factorization(NamedTuple):
    s: object
    t: object
    b: object
    e: object
    u: object
    f: object
    v: object


def factorization_witness(a, c, g: GreenStructure) -> Factorization:
    """Build ``s, t`` in the D-class of ``a`` with ``s * a * t = c``.

    Pick ``b`` with ``a R b`` and ``b L c``, an idempotent ``e`` R-related
    to ``a`` and ``u`` with ``a u = e``; then ``t = u b`` gives ``a t = b``.
    Dually an idempotent ``f`` L-related to ``b`` and ``v`` with ``v b = f``
    give ``s = c v`` with ``s b = c``.  Every free choice takes the least
    candidate in element order.
    """
    S = g.elements
    table = S.table()
    ia, ic = S.index[a], S.index[c]
    d = g.d_of[ia]
    if g.d_of[ic] != d:
        raise PreconditionError(f"{a} and {c} lie in different D-classes")
    if not g.d_class_regular(d):
        raise PreconditionError(f"the D-class of {a} is not regular")
    in_d = g.d_of == d
    ib = int(np.flatnonzero(in_d & (g.r_of == g.r_of[ia]) & (g.l_of == g.l_of[ic]))[0])
    ie = int(np.flatnonzero((g.r_of == g.r_of[ia]) & g.idempotent)[0])
    iu = int(np.flatnonzero(table[ia, :] == ie)[0])
    it = int(table[iu, ib])
    i_f = int(np.flatnonzero((g.l_of == g.l_of[ib]) & g.idempotent)[0])
    iv = int(np.flatnonzero(table[:, ib] == i_f)[0])
    i_s = int(table[ic, iv])
    assert table[table[i_s, ia], it] == ic and in_d[i_s] and in_d[it]
    return Factorization(*(S[i] for i in (i_s, it, ib, ie, iu, i_f, iv)))


def d_class_factorize(a, c, g: GreenStructure) -> tuple:
    w = factorization_witness(a, c, g)
    return w.s, w.t


def find_inverse(x, s: ElementSet):
    """An inverse ``x' = y x y`` built from the least ``y`` with ``x y x = x``."""
    table = s.table()
    i = s.index[x]
    hits = np.flatnonzero(table[table[i, :], i] == i)
    if hits.size == 0:
        raise NotRegularError(f"{x} is not regular in {s.label or 'the set'}")
    y = int(hits[0])
    return s[int(table[table[y, i], y])]
