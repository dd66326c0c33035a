"""Ideal series, their verification, and the finite stabilizer certificate.

Omega-unstability is a statement about infinite subsets and is vacuous on a
finite carrier.  What can be checked exactly is the counting bound behind
it: for ``a`` in a difference ``D = I_k \\ I_{k-1}``, the set

    stab(a) = { b in D : a*b in D and b*a in D }

is small.  For the top stratum of the rank-``n`` partial injections it has
exactly ``n!`` members, so any ``B`` with ``n! + 1`` members must push some
product out of ``D``.  Reports call a series *finitely tight* when every
level respects its stated bound; that notion is local to this package.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import factorial
from typing import Callable, Iterable, Sequence

import numpy as np

from .enumeration import ElementSet, RankStratum, enumerate_inverse_semigroup
from .errors import InvalidSeriesError, PreconditionError
from .pinj import compose

FINITE_CERTIFICATE_NOTE = (
    "finite certificate: per level, max |{b in D_k : ab in D_k and ba in D_k}| "
    "is reported in place of omega-unstability, which is vacuous on finite sets"
)


@dataclass
class IdealSeries:
    """A chain ``I_0 <= I_1 <= ... <= I_m`` of subsets of ``ambient``.

    ``bounds[k-1]`` is the expected certificate bound for level ``k`` when
    one is known (``k!`` for the rank series of partial injections).
    """

    ambient: ElementSet
    chain: tuple[frozenset, ...]
    bounds: tuple[int, ...] | None = None
    label: str = ""

    def __post_init__(self):
        self.chain = tuple(frozenset(level) for level in self.chain)
        if not self.chain:
            raise ValueError("an ideal series needs at least one level")

    def __len__(self):
        return len(self.chain)

    def difference(self, k: int) -> tuple:
        """Members of ``I_k \\ I_{k-1}`` in ambient order (``I_0`` for k = 0)."""
        prev = self.chain[k - 1] if k > 0 else frozenset()
        level = self.chain[k]
        return tuple(x for x in self.ambient if x in level and x not in prev)


def rank_series(ambient: ElementSet, bounds: Sequence[int] | None = None, label: str = "") -> IdealSeries:
    """``I_k`` = members of rank at most ``k``, for ``k = 0 .. top rank``."""
    top = max(x.rank for x in ambient)
    chain = [frozenset(x for x in ambient if x.rank <= k) for k in range(top + 1)]
    return IdealSeries(ambient, tuple(chain), tuple(bounds) if bounds is not None else None,
                       label or f"rank series of {ambient.label}")


def inverse_rank_series(m: int, n: int) -> IdealSeries:
    ambient = enumerate_inverse_semigroup(m, n)
    return rank_series(ambient, bounds=[factorial(k) for k in range(1, n + 1)])


@dataclass
class LevelCheck:
    level: int
    size: int
    is_ideal: bool
    included: bool
    witness: dict | None = None


@dataclass
class SeriesReport:
    passed: bool
    levels: list[LevelCheck]
    top_is_ambient: bool
    label: str = ""


def _ideal_witness(table: np.ndarray, mask: np.ndarray, ambient: ElementSet) -> dict | None:
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return None
    left = table[:, idx]  # s * x
    bad = ~mask[left]
    if bad.any():
        si, xi = np.argwhere(bad)[0]
        s, x = ambient[si], ambient[idx[xi]]
        return {"side": "left", "s": s, "x": x, "product": ambient[left[si, xi]]}
    right = table[idx, :]  # x * s
    bad = ~mask[right]
    if bad.any():
        xi, si = np.argwhere(bad)[0]
        s, x = ambient[si], ambient[idx[xi]]
        return {"side": "right", "s": s, "x": x, "product": ambient[right[xi, si]]}
    return None


def verify_ideal_series(s: IdealSeries) -> SeriesReport:
    """Check that every level is an ideal and the levels form a chain.

    Failures are recorded in the report with a concrete product witness.
    """
    amb = s.ambient
    table = amb.table()
    levels = []
    prev = None
    for k, level in enumerate(s.chain):
        outside = [x for x in level if x not in amb]
        mask = amb.mask(x for x in level if x in amb)
        included = prev is None or prev <= level
        if outside:
            witness = {"side": "membership", "x": outside[0]}
        else:
            witness = _ideal_witness(table, mask, amb)
        is_ideal = witness is None
        if is_ideal and not included:
            missing = next(x for x in prev if x not in level)
            witness = {"side": "inclusion", "x": missing}
        levels.append(LevelCheck(k, len(level), is_ideal, included, witness))
        prev = level
    top_ok = s.chain[-1] == frozenset(amb)
    passed = top_ok and all(lc.is_ideal and lc.included for lc in levels)
    return SeriesReport(passed, levels, top_ok, s.label)


@dataclass
class UnstabilityCertificate:
    element: object
    stabilizer_count: int
    bound: int
    stabilizers: tuple = field(default=(), repr=False)

    @property
    def valid(self) -> bool:
        return self.stabilizer_count <= self.bound


def unstability_certificate(a, stratum: RankStratum, ambient: ElementSet | None = None,
                            multiply: Callable | None = None) -> UnstabilityCertificate:
    """Scan ``stratum`` for every ``b`` with ``a*b`` and ``b*a`` in the stratum."""
    if a not in stratum:
        raise PreconditionError(f"{a} is not a member of the rank-{stratum.rank} stratum")
    mul = multiply or (ambient.mul if ambient is not None else compose)
    stab = tuple(b for b in stratum.members if mul(a, b) in stratum and mul(b, a) in stratum)
    return UnstabilityCertificate(a, len(stab), factorial(stratum.rank), stab)


@dataclass
class Escape:
    b: object
    side: str  # "ab" or "ba"
    product: object
    product_rank: int | None


def find_escape(a, B: Iterable, stratum: RankStratum, multiply: Callable = compose) -> Escape | None:
    """First product in ``aB`` or ``Ba`` that leaves the stratum, if any."""
    for b in B:
        for side, p in (("ab", multiply(a, b)), ("ba", multiply(b, a))):
            if p not in stratum:
                return Escape(b, side, p, getattr(p, "rank", None))
    return None


def check_unstable_witness(a, B: Iterable, stratum: RankStratum, multiply: Callable = compose) -> bool:
    return find_escape(a, B, stratum, multiply) is not None


@dataclass
class LevelTightness:
    level: int
    size: int
    max_count: int
    argmax: object
    bound: int | None

    @property
    def within_bound(self) -> bool | None:
        return None if self.bound is None else self.max_count <= self.bound


@dataclass
class TightnessReport:
    levels: list[LevelTightness]
    finitely_tight: bool | None
    bound_attained: bool | None
    i0_size: int
    note: str = FINITE_CERTIFICATE_NOTE
    label: str = ""

    @property
    def maxima(self) -> list[int]:
        return [lv.max_count for lv in self.levels]


def stabilizer_counts(table: np.ndarray, members: np.ndarray, threads: int = 1) -> np.ndarray:
    """``counts[i] = |{b in D : a_i b in D and b a_i in D}|`` for ``D = members``."""
    n = table.shape[0]
    in_d = np.zeros(n, dtype=bool)
    in_d[members] = True
    sub = table[np.ix_(members, members)]
    both = in_d[sub] & in_d[sub.T]

    def rows(span):
        return both[span[0]:span[1]].sum(axis=1)

    if threads <= 1 or len(members) < 2 * threads:
        return both.sum(axis=1)
    step = -(-len(members) // threads)
    spans = [(i, min(i + step, len(members))) for i in range(0, len(members), step)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return np.concatenate(list(pool.map(rows, spans)))


def tightness_report(s: IdealSeries, *, levels: Iterable[int] | None = None, threads: int = 1) -> TightnessReport:
    if not verify_ideal_series(s).passed:
        raise InvalidSeriesError(f"{s.label or 'series'} is not an ideal series")
    amb = s.ambient
    table = amb.table()
    wanted = range(1, len(s.chain)) if levels is None else levels
    out = []
    for k in wanted:
        if not 1 <= k < len(s.chain):
            raise InvalidSeriesError(f"level {k} out of range 1..{len(s.chain) - 1}")
        members = amb.indices(s.difference(k))
        bound = s.bounds[k - 1] if s.bounds is not None else None
        if members.size == 0:
            out.append(LevelTightness(k, 0, 0, None, bound))
            continue
        counts = stabilizer_counts(table, members, threads)
        i = int(np.argmax(counts))
        out.append(LevelTightness(k, int(members.size), int(counts[i]), amb[members[i]], bound))
    if s.bounds is None:
        tight = attained = None
    else:
        tight = all(lv.within_bound for lv in out)
        attained = all(lv.max_count == lv.bound for lv in out)
    return TightnessReport(out, tight, attained, len(s.chain[0]), label=s.label)
