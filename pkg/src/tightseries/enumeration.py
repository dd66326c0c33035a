"""Finite element sets with a multiplication oracle, and the enumeration of
the rank-bounded symmetric inverse semigroups."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb, factorial
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .errors import BudgetExceededError, InvalidRankError
from .pinj import PartialInjection, compose

DEFAULT_BUDGET = 10**7
# entries of a Cayley table we are willing to materialise
TABLE_BUDGET = 10**7


class NotClosedError(ValueError):
    pass


class ElementSet:
    """An ordered, duplicate-free collection of semigroup elements.

    ``table()`` returns the Cayley table as an ``(N, N)`` integer array of
    element indices, built on first use.  Closure under ``multiply`` is
    verified when the table is built; with ``check_closed=None`` that
    happens at construction whenever the table fits in ``table_budget``.
    """

    def __init__(
        self,
        elements: Iterable[Hashable],
        multiply: Callable,
        label: str = "",
        *,
        check_closed: bool | None = None,
        table_budget: int = TABLE_BUDGET,
    ):
        seen = {}
        for e in elements:
            seen.setdefault(e, len(seen))
        self.elements = tuple(seen)
        self.index = seen
        self.multiply = multiply
        self.label = label
        self.table_budget = table_budget
        self._table = None
        if check_closed is None:
            check_closed = len(self.elements) ** 2 <= table_budget
        if check_closed:
            self.table()

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.index

    def __getitem__(self, i):
        return self.elements[i]

    def __repr__(self):
        return f"ElementSet({self.label!r}, {len(self)} elements)"

    def mul(self, x, y):
        return self.multiply(x, y)

    def table(self) -> np.ndarray:
        if self._table is None:
            n = len(self.elements)
            if n * n > self.table_budget:
                raise BudgetExceededError(self.table_budget, "table entries")
            table = _pinj_table(self.elements)
            if table is None:
                table = self._generic_table()
            table.setflags(write=False)
            self._table = table
        return self._table

    def _generic_table(self) -> np.ndarray:
        n = len(self.elements)
        table = np.empty((n, n), dtype=np.int64)
        index, mul = self.index, self.multiply
        for i, x in enumerate(self.elements):
            row = table[i]
            for j, y in enumerate(self.elements):
                p = mul(x, y)
                try:
                    row[j] = index[p]
                except KeyError:
                    raise NotClosedError(f"{x} * {y} = {p} lies outside {self.label or 'the set'}") from None
        return table

    def indices(self, subset: Iterable) -> np.ndarray:
        return np.fromiter((self.index[x] for x in subset), dtype=np.int64)

    def mask(self, subset: Iterable) -> np.ndarray:
        m = np.zeros(len(self), dtype=bool)
        for x in subset:
            m[self.index[x]] = True
        return m


def _pinj_table(elements: Sequence) -> np.ndarray | None:
    """Vectorised Cayley table for a set of partial injections.

    Returns None when the elements are not partial injections on a common
    ground set small enough for integer encoding.
    """
    if not elements or not all(type(e) is PartialInjection for e in elements):
        return None
    m = elements[0].ground_size
    if any(e.ground_size != m for e in elements) or (m + 1) ** m >= 2**62:
        return None
    imgs = np.array([e._img for e in elements], dtype=np.int64)
    weights = (m + 1) ** np.arange(m, dtype=np.int64)
    codes = (imgs[:, :m] + 1) @ weights
    order = np.argsort(codes, kind="stable")
    sorted_codes = codes[order]
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    chunk = max(1, 2_000_000 // (n * (m + 1)))
    for i0 in range(0, n, chunk):
        a = imgs[i0:i0 + chunk]
        # prod[i, j, p] = a_i(b_j(p)); b_j(p) = -1 picks a_i's trailing -1
        prod = a[np.arange(len(a))[:, None, None], imgs[None, :, :]]
        pc = (prod[..., :m] + 1) @ weights
        pos = np.searchsorted(sorted_codes, pc)
        pos = np.minimum(pos, n - 1)
        bad = sorted_codes[pos] != pc
        if bad.any():
            i, j = np.argwhere(bad)[0]
            x, y = elements[i0 + i], elements[j]
            raise NotClosedError(f"{x} * {y} = {compose(x, y)} lies outside the set")
        table[i0:i0 + chunk] = order[pos]
    return table


@dataclass(frozen=True)
class RankStratum:
    rank: int
    members: tuple

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return x in self._set

    @property
    def _set(self):
        # frozen dataclass: cache by hand
        s = self.__dict__.get("_members_set")
        if s is None:
            s = frozenset(self.members)
            object.__setattr__(self, "_members_set", s)
        return s


def inverse_semigroup_size(m: int, n: int) -> int:
    return sum(comb(m, k) ** 2 * factorial(k) for k in range(n + 1))


def iter_rank(m: int, k: int):
    """Rank-k partial injections on m points in canonical order."""
    for dom in combinations(range(m), k):
        for targets in permutations(range(m), k):
            yield PartialInjection(m, zip(dom, targets))


def enumerate_inverse_semigroup(m: int, n: int, *, budget: int = DEFAULT_BUDGET) -> ElementSet:
    """All partial injections on ``m`` points of rank at most ``n``."""
    if m < 0 or not 0 <= n <= m:
        raise InvalidRankError(f"need 0 <= n <= m, got m={m}, n={n}")
    size = inverse_semigroup_size(m, n)
    if size > budget:
        raise BudgetExceededError(budget)
    elements = [e for k in range(n + 1) for e in iter_rank(m, k)]
    return ElementSet(elements, compose, label=f"I_{m}^{n}")


def stratify_by_rank(s: ElementSet) -> list[RankStratum]:
    top = max((x.rank for x in s), default=0)
    buckets: list[list] = [[] for _ in range(top + 1)]
    for x in s:
        buckets[x.rank].append(x)
    return [RankStratum(k, tuple(b)) for k, b in enumerate(buckets)]


def _canonical_sorted(xs):
    try:
        return sorted(xs)
    except TypeError:
        return list(xs)


def closure_of(generators: Iterable, multiply: Callable, *, budget: int = DEFAULT_BUDGET,
               label: str = "closure") -> ElementSet:
    """Least multiplication-closed set containing ``generators``.

    Breadth-first: each layer holds the new products of the previous
    layers, sorted canonically when the elements are orderable.
    """
    layer = _canonical_sorted(dict.fromkeys(generators))
    found = dict.fromkeys(layer)
    if len(found) > budget:
        raise BudgetExceededError(budget)
    while layer:
        fresh = {}
        current = list(found)
        for y in layer:
            for x in current:
                for p in (multiply(x, y), multiply(y, x)):
                    if p not in found and p not in fresh:
                        fresh[p] = None
                        if len(found) + len(fresh) > budget:
                            raise BudgetExceededError(budget)
        layer = _canonical_sorted(fresh)
        found.update(dict.fromkeys(layer))
    return ElementSet(found, multiply, label=label)


def regularity_witnesses(s: ElementSet) -> np.ndarray:
    """For each element x, the least index y with ``x*y*x = x``, or -1."""
    table = s.table()
    n = len(s)
    out = np.full(n, -1, dtype=np.int64)
    for x in range(n):
        xyx = table[table[x, :], x]
        hits = np.flatnonzero(xyx == x)
        if hits.size:
            out[x] = hits[0]
    return out
