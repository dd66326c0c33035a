"""Products of ideal series and pullbacks along finite-fiber homomorphisms."""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

from .enumeration import ElementSet
from .errors import InvalidSeriesError, NotHomomorphismError
from .ideals import IdealSeries, tightness_report, verify_ideal_series


class ProductElement(NamedTuple):
    left: object
    right: object

    def __str__(self):
        return f"({self.left}, {self.right})"


def product_set(S: ElementSet, T: ElementSet) -> ElementSet:
    """``S x T`` with coordinatewise multiplication, ordered left-major."""
    def mul(x, y):
        return ProductElement(S.mul(x.left, y.left), T.mul(x.right, y.right))

    elements = [ProductElement(s, t) for s in S for t in T]
    return ElementSet(elements, mul, label=f"{S.label} x {T.label}")


def product_series(sA: IdealSeries, sB: IdealSeries) -> IdealSeries:
    """``K_i = I_i x J_0`` for ``i <= m``, then ``K_i = S x J_{i-m}``."""
    for s in (sA, sB):
        if not verify_ideal_series(s).passed:
            raise InvalidSeriesError(f"{s.label or 'input series'} is not an ideal series")
    S, T = sA.ambient, sB.ambient
    amb = product_set(S, T)
    m, n = len(sA.chain) - 1, len(sB.chain) - 1
    J0 = sB.chain[0]
    chain = []
    for i in range(m + 1):
        I = sA.chain[i]
        chain.append(frozenset(ProductElement(s, t) for s in S if s in I for t in T if t in J0))
    for i in range(m + 1, m + n + 1):
        J = sB.chain[i - m]
        chain.append(frozenset(ProductElement(s, t) for s in S for t in T if t in J))
    return IdealSeries(amb, tuple(chain), label=f"({sA.label}) x ({sB.label})")


class Homomorphism:
    """A surjective semigroup homomorphism between finite element sets.

    Multiplicativity and surjectivity are checked exhaustively on
    construction; a failure raises ``NotHomomorphismError`` naming a witness.
    """

    def __init__(self, source: ElementSet, target: ElementSet, map: Callable, label: str = ""):
        self.source = source
        self.target = target
        self.map = map
        self.label = label
        try:
            self.values = np.fromiter((target.index[map(x)] for x in source), dtype=np.int64,
                                      count=len(source))
        except KeyError as exc:
            raise NotHomomorphismError(f"image {exc.args[0]} is not in the target") from None
        ts, tt = source.table(), target.table()
        h = self.values
        bad = h[ts] != tt[h[:, None], h[None, :]]
        if bad.any():
            i, j = np.argwhere(bad)[0]
            raise NotHomomorphismError(
                f"h({source[i]} * {source[j]}) != h({source[i]}) * h({source[j]})")
        hit = np.zeros(len(target), dtype=bool)
        hit[h] = True
        if not hit.all():
            raise NotHomomorphismError(f"{target[int(np.argmin(hit))]} has no preimage")

    def __call__(self, x):
        return self.target[self.values[self.source.index[x]]]

    def preimage(self, subset) -> frozenset:
        mask = self.target.mask(subset)
        return frozenset(self.source[i] for i in np.flatnonzero(mask[self.values]))


def identity_homomorphism(s: ElementSet) -> Homomorphism:
    return Homomorphism(s, s, lambda x: x, label=f"id on {s.label}")


def fiber_sizes(h: Homomorphism) -> dict:
    counts = np.bincount(h.values, minlength=len(h.target))
    return {t: int(c) for t, c in zip(h.target, counts)}


def pullback_series(h: Homomorphism, s: IdealSeries) -> IdealSeries:
    """The chain ``h^-1(I_0) <= ... <= h^-1(I_m)`` over the source.

    Each level of the result carries the heuristic bound
    ``(target level max count) * (max fiber size)**2``.
    """
    if not verify_ideal_series(s).passed:
        raise InvalidSeriesError(f"{s.label or 'input series'} is not an ideal series")
    chain = tuple(h.preimage(level) for level in s.chain)
    bounds = None
    if len(s.chain) > 1:
        fmax = max(fiber_sizes(h).values())
        maxima = tightness_report(s).maxima
        bounds = tuple(c * fmax * fmax for c in maxima)
    return IdealSeries(h.source, chain, bounds, label=f"pullback of ({s.label})")
