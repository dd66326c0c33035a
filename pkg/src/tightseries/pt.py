"""Block-respecting partial functions ``PT(X, I)^n``.

The carrier ``X`` is a disjoint union of finite blocks ``X_i``; a point is
the pair ``(block, offset)``.  An element is a partial injection ``alpha``
on the block indices together with, for each ``i`` in its domain, a total
function ``X_i -> X_alpha(i)``.  These block functions need not be
injective, so the semigroup is regular but not inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod

from .enumeration import DEFAULT_BUDGET, ElementSet, enumerate_inverse_semigroup, iter_rank, regularity_witnesses
from .errors import BudgetExceededError, DomainMismatchError, InvalidRankError
from .pinj import PartialInjection, compose, identity_on
from .products import Homomorphism


@dataclass(frozen=True)
class BlockStructure:
    block_sizes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "block_sizes", tuple(self.block_sizes))
        if any(b < 1 for b in self.block_sizes):
            raise ValueError("every block needs at least one point")

    @property
    def index_count(self) -> int:
        return len(self.block_sizes)

    def points(self):
        return [(i, o) for i, size in enumerate(self.block_sizes) for o in range(size)]


class BlockMap:
    """``alpha`` on block indices plus ``funcs[i]``, the offsets of the
    images of ``X_i`` inside ``X_alpha(i)`` (``None`` off the domain)."""

    __slots__ = ("structure", "alpha", "funcs", "_hash")

    def __init__(self, structure: BlockStructure, alpha: PartialInjection, funcs):
        funcs = tuple(None if f is None else tuple(f) for f in funcs)
        if alpha.ground_size != structure.index_count or len(funcs) != structure.index_count:
            raise DomainMismatchError("alpha and block functions must cover the index set")
        sizes = structure.block_sizes
        for i, f in enumerate(funcs):
            j = alpha(i)
            if (j is None) != (f is None):
                raise ValueError(f"block function on block {i} must exist iff alpha is defined there")
            if f is not None and (len(f) != sizes[i] or any(not 0 <= o < sizes[j] for o in f)):
                raise ValueError(f"block {i}: x in X_{i} must map into X_{j}")
        self.structure = structure
        self.alpha = alpha
        self.funcs = funcs
        self._hash = hash((structure.block_sizes, alpha, funcs))

    @property
    def rank(self) -> int:
        return self.alpha.rank

    def __call__(self, point):
        i, o = point
        j = self.alpha(i)
        return None if j is None else (j, self.funcs[i][o])

    def __eq__(self, other):
        if not isinstance(other, BlockMap):
            return NotImplemented
        return (self.structure == other.structure and self.alpha == other.alpha
                and self.funcs == other.funcs)

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return (self.alpha.sort_key(), tuple(f for f in self.funcs if f is not None))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __mul__(self, other):
        return compose_blockmaps(self, other)

    def __str__(self):
        if self.rank == 0:
            return "0"
        parts = []
        for i, f in enumerate(self.funcs):
            if f is not None:
                offs = " ".join(str(o + 1) for o in f)
                parts.append(f"{i + 1}->{self.alpha(i) + 1}:{offs}")
        return "[" + ", ".join(parts) + "]"

    __repr__ = __str__


def compose_blockmaps(a: BlockMap, b: BlockMap) -> BlockMap:
    """``a * b``: apply ``b`` first."""
    if a.structure != b.structure:
        raise DomainMismatchError("block maps over different block structures")
    alpha = compose(a.alpha, b.alpha)
    funcs = [None] * a.structure.index_count
    for i, bf in enumerate(b.funcs):
        if bf is None:
            continue
        af = a.funcs[b.alpha(i)]
        if af is not None:
            funcs[i] = tuple(af[o] for o in bf)
    return BlockMap(a.structure, alpha, funcs)


def block_identity(structure: BlockStructure) -> BlockMap:
    k = structure.index_count
    return BlockMap(structure, identity_on(range(k), k),
                    [tuple(range(size)) for size in structure.block_sizes])


def fiber_formula(structure: BlockStructure, alpha: PartialInjection) -> int:
    sizes = structure.block_sizes
    return prod(sizes[j] ** sizes[i] for i, j in alpha.pairs)


def pt_size(structure: BlockStructure, n: int) -> int:
    k = structure.index_count
    return sum(fiber_formula(structure, alpha) for r in range(n + 1) for alpha in iter_rank(k, r))


def blockmaps_over(structure: BlockStructure, alpha: PartialInjection):
    """Every block map with index map ``alpha``."""
    sizes = structure.block_sizes
    dom = [i for i, _ in alpha.pairs]
    choices = [product(range(sizes[alpha(i)]), repeat=sizes[i]) for i in dom]
    for combo in product(*choices):
        funcs = [None] * structure.index_count
        for i, f in zip(dom, combo):
            funcs[i] = f
        yield BlockMap(structure, alpha, funcs)


def enumerate_pt(structure: BlockStructure, n: int, *, budget: int = DEFAULT_BUDGET) -> ElementSet:
    k = structure.index_count
    if not 0 <= n <= k:
        raise InvalidRankError(f"need 0 <= n <= |I| = {k}, got n={n}")
    if pt_size(structure, n) > budget:
        raise BudgetExceededError(budget)
    elements = [f for r in range(n + 1) for alpha in iter_rank(k, r) for f in blockmaps_over(structure, alpha)]
    sizes = ",".join(map(str, structure.block_sizes))
    return ElementSet(elements, compose_blockmaps, label=f"PT({sizes})^{n}")


def index_homomorphism(structure: BlockStructure, n: int, source: ElementSet | None = None) -> Homomorphism:
    """``h: PT(X, I)^n -> I_{|I|}^n``, sending a block map to its index map."""
    source = source if source is not None else enumerate_pt(structure, n)
    target = enumerate_inverse_semigroup(structure.index_count, n)
    return Homomorphism(source, target, lambda f: f.alpha, label="index map")


@dataclass
class RegularityReport:
    non_regular: list
    witnesses: dict

    @property
    def regular(self) -> bool:
        return not self.non_regular


def check_regular(s: ElementSet) -> RegularityReport:
    """Exhaustive ``x*y*x = x`` search for every element of ``s``."""
    ys = regularity_witnesses(s)
    bad = [s[i] for i, y in enumerate(ys) if y < 0]
    found = {s[i]: s[y] for i, y in enumerate(ys) if y >= 0}
    return RegularityReport(bad, found)
