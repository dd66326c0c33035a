"""Neighbourhood bases over truncated countable carriers.

The countable carrier ``omega`` is cut down to the points ``1..N``; points are
numbered from 1 here, and ``pt(N, p)`` shifts them onto the 0-based ground
set used by :mod:`tightseries.pinj`.  Adjoined elements (the extra point of
the locally compact extension, the adjoined identity) are :class:`Symbol`
values with hand-written multiplication.

Nothing here decides a statement about the infinite carrier.  Each check is
exact over a documented finite universe, and ``enlarge=True`` repeats it
with ``2N`` points and records whether the verdict survived.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from .enumeration import iter_rank
from .errors import TruncationError
from .pinj import PartialInjection, compose, identity_on, invert, natural_leq, zero


@dataclass(frozen=True)
class Symbol:
    name: str

    def __str__(self):
        return self.name

    @property
    def rank(self):
        return None


POINT_A = Symbol("a")
IOTA = Symbol("iota")


def pt(N: int, p: int) -> int:
    """1-based carrier point -> 0-based ground index."""
    if not 1 <= p <= N:
        raise TruncationError(p, N)
    return p - 1


def element(N: int, pairs: Iterable[tuple[int, int]]) -> PartialInjection:
    """A partial injection on ``1..N`` from 1-based pairs."""
    return PartialInjection(N, ((pt(N, s), pt(N, t)) for s, t in pairs))


def max_coordinate(x: PartialInjection) -> int:
    """Largest 1-based point in the domain or range (0 for the empty map)."""
    return max((max(s, t) + 1 for s, t in x.pairs), default=0)


def support(x: PartialInjection) -> tuple[int, ...]:
    """0-based points in the domain or range."""
    return tuple(sorted({p for pair in x.pairs for p in pair}))


@dataclass
class TruncatedCarrier:
    N: int
    rank_cap: int | None = None

    def universe(self) -> Iterator[PartialInjection]:
        top = self.N if self.rank_cap is None else min(self.rank_cap, self.N)
        for k in range(top + 1):
            yield from iter_rank(self.N, k)


# ---------------------------------------------------------------------------
# locally compact extension by one point


def ex5_multiply(x, y, N: int):
    """``a*a = a*x = x*a = 0``; partial injections on ``1..N`` compose as usual."""
    if x is POINT_A or y is POINT_A:
        return zero(N)
    return compose(x, y)


class Example5Base:
    """``U_n(a) = {a} u {(2l-1 -> 2l) : l >= n}``."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n starts at 1")
        self.n = n

    def __contains__(self, x) -> bool:
        if x is POINT_A:
            return True
        if not isinstance(x, PartialInjection) or x.rank != 1:
            return False
        (s, t), = x.pairs
        s, t = s + 1, t + 1
        return s % 2 == 1 and t == s + 1 and t // 2 >= self.n

    def arc_members(self, N: int) -> list[PartialInjection]:
        """``A_n`` truncated to ``1..N``."""
        return [element(N, [(2 * l - 1, 2 * l)]) for l in range(self.n, N // 2 + 1)]

    def members(self, N: int) -> list:
        return [POINT_A] + self.arc_members(N)


@dataclass
class CheckReport:
    name: str
    N: int
    passed: bool
    checks: dict[str, bool]
    violations: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    stable_under_enlargement: bool | None = None
    enlarged: "CheckReport | None" = None

    def verdict(self):
        return (self.passed, tuple(sorted(self.checks.items())))


def _with_enlargement(run, N: int, enlarge: bool, **kw) -> CheckReport:
    report = run(N, **kw)
    if enlarge:
        big = run(2 * N, **kw)
        report.enlarged = big
        report.stable_under_enlargement = big.verdict() == report.verdict()
        report.passed = report.passed and report.stable_under_enlargement
    return report


def verify_example5(N: int, k: int = 1, n_max: int | None = None, *, enlarge: bool = False) -> CheckReport:
    """Check the product identities of the one-point extension of ``I^k``.

    a) ``x U_n(a) = U_n(a) x = {0}`` for every ``x`` in ``I_N^k`` and every
       ``n`` at least the largest coordinate of ``x``;
    b) ``U_n(a) U_n(a) = U_n(a) {0} = {0} U_n(a) = {0}``.

    For (a) it suffices to test the least admissible ``n`` because the base
    sets are nested, and nesting is checked as well.  Taken literally, (a)
    fails for ``x = [1->1]`` and ``n = 1``: ``[1->2] * [1->1] = [1->2]``.  The
    report records that violation; ``details["a_holds_for_n_above_max"]``
    says whether (a) holds once ``n`` exceeds the largest coordinate.
    """
    if n_max is None:
        n_max = N // 2
    if n_max < 1 or N < 2 * n_max:
        raise TruncationError(2 * max(n_max, 1), N)
    if not 1 <= k <= N:
        raise ValueError(f"rank k must lie in 1..{N}")
    return _with_enlargement(_example5, N, enlarge, k=k, n_max=n_max)


def _example5(N: int, k: int, n_max: int) -> CheckReport:
    violations: list[dict] = []
    zero_n = zero(N)
    bases = [Example5Base(n) for n in range(1, n_max + 1)]
    arcs = {b.n: b.arc_members(N) for b in bases}

    nested = True
    for b, b_next in zip(bases, bases[1:]):
        for u in b_next.members(N):
            if u not in b:
                nested = False
                violations.append({"check": "nesting", "n": b_next.n, "element": u})

    arcs_rank_one = all(u.rank == 1 and u.rank <= k for n in arcs for u in arcs[n])

    products_checked = 0
    item_a = True
    for x in TruncatedCarrier(N, k).universe():
        n0 = max(max_coordinate(x), 1)
        if n0 > n_max:
            continue
        for u in [POINT_A] + arcs[n0]:
            for side, p in (("xU", ex5_multiply(x, u, N)), ("Ux", ex5_multiply(u, x, N))):
                products_checked += 1
                if p != zero_n:
                    item_a = False
                    violations.append({"check": "a", "side": side, "x": x, "u": u, "product": p})

    item_b = True
    for b in bases:
        members = b.members(N)
        for u in members:
            for v in members:
                p = ex5_multiply(u, v, N)
                if p != zero_n:
                    item_b = False
                    violations.append({"check": "b", "n": b.n, "u": u, "v": v, "product": p})
            for p in (ex5_multiply(u, zero_n, N), ex5_multiply(zero_n, u, N)):
                if p != zero_n:
                    item_b = False
                    violations.append({"check": "b-zero", "n": b.n, "u": u, "product": p})

    # informational: does (a) survive once n is strictly above the largest coordinate?
    above = not any(v["u"] is POINT_A or v["u"] in Example5Base(max_coordinate(v["x"]) + 1)
                    for v in violations if v["check"] == "a")
    checks = {"a": item_a, "b": item_b, "nested": nested, "arcs_rank_one": arcs_rank_one}
    return CheckReport("example5", N, all(checks.values()), checks, violations,
                       {"k": k, "n_max": n_max, "products_checked": products_checked,
                        "a_holds_for_n_above_max": above})


def density_witness_example5(N: int, k: int, n: int) -> PartialInjection:
    """A member of ``A_n`` inside ``I_N^k``: the point ``a`` is a limit of ``I^k``."""
    if N < 2 * n + 2:
        raise TruncationError(2 * n + 2, N)
    if k < 1:
        raise ValueError("I^0 contains no member of A_n")
    w = element(N, [(2 * n - 1, 2 * n)])
    assert w in Example5Base(n) and w.rank <= k
    return w


# ---------------------------------------------------------------------------
# adjoined identity over the finite-rank union


def ex6_multiply(x, y):
    if x is IOTA:
        return y
    if y is IOTA:
        return x
    return compose(x, y)


def ex6_inverse(x):
    return IOTA if x is IOTA else invert(x)


class Example6Base:
    """``U_eps(iota) = {iota} u M(eps)`` with ``M(eps) = {chi : eps chi = chi eps = eps}``."""

    def __init__(self, eps: PartialInjection):
        self.eps = eps

    def in_m(self, chi) -> bool:
        return (isinstance(chi, PartialInjection)
                and compose(self.eps, chi) == self.eps and compose(chi, self.eps) == self.eps)

    def __contains__(self, x) -> bool:
        return x is IOTA or self.in_m(x)

    def m_members(self, extra_rank: int = 1) -> list[PartialInjection]:
        """Members of ``M(eps)`` that add at most ``extra_rank`` pairs off ``eps``.

        Every member of ``M(eps)`` is ``eps`` plus a partial injection on the
        complement of its support; the truncation caps that extra rank.
        """
        N = self.eps.ground_size
        fixed = set(self.eps.domain())
        rest = [p for p in range(N) if p not in fixed]
        out = []
        for r in range(min(extra_rank, len(rest)) + 1):
            for gamma in iter_rank(len(rest), r):
                out.append(PartialInjection(N, [(p, p) for p in sorted(fixed)]
                                            + [(rest[s], rest[t]) for s, t in gamma.pairs]))
        return out

    def members(self, extra_rank: int = 1) -> list:
        return [IOTA] + self.m_members(extra_rank)


def support_identity(chi: PartialInjection) -> PartialInjection:
    """Identity on ``K``, the union of the domain and range of ``chi``."""
    return identity_on(support(chi), chi.ground_size)


def _ex6_probes(eps: PartialInjection) -> list[PartialInjection]:
    """Elements near ``M(eps)`` used to cross-check the literal predicate:
    rank <= 1 maps, restrictions of ``eps``, ``eps`` plus one extra pair,
    and ``eps`` with one point redirected."""
    N = eps.ground_size
    K = eps.domain()
    fixed = dict(eps.pairs)
    probes = set(TruncatedCarrier(N, 1).universe())
    for r in range(len(K) + 1):
        for sub in combinations(K, r):
            probes.add(identity_on(sub, N))
    for gamma in TruncatedCarrier(N, 1).universe():
        for s, t in gamma.pairs:
            if s not in fixed and t not in fixed:
                probes.add(PartialInjection(N, list(fixed.items()) + [(s, t)]))
            elif s in fixed and t not in fixed:
                moved = dict(fixed)
                moved[s] = t
                probes.add(PartialInjection(N, moved.items()))
    return sorted(probes)


def verify_example6(N: int, chi: PartialInjection, extra_rank: int = 1, *, enlarge: bool = False) -> CheckReport:
    """Check the identities behind continuity at the adjoined identity.

    With ``K`` the points moved or hit by ``chi`` and ``eps = id_K``:
    ``eps chi = chi eps = chi``, ``U_eps(iota) chi = {chi}`` and
    ``chi U_eps(iota) = {chi}`` (both sides are tested), closure
    ``U U <= U``, and ``U^-1 = U``.  ``M(eps)`` is truncated to members of
    rank at most ``|K| + extra_rank``.
    """
    if max_coordinate(chi) > N:
        raise TruncationError(max_coordinate(chi), N)
    pairs1 = [(s + 1, t + 1) for s, t in chi.pairs]
    return _with_enlargement(lambda n: _example6(n, element(n, pairs1), extra_rank), N, enlarge)


def _example6(N: int, chi: PartialInjection, extra_rank: int) -> CheckReport:
    violations: list[dict] = []
    eps = support_identity(chi)
    base = Example6Base(eps)
    checks: dict[str, bool] = {}

    checks["eps_chi"] = compose(eps, chi) == chi
    checks["chi_eps"] = compose(chi, eps) == chi

    members = base.members(extra_rank)
    checks["generated_in_M"] = all(u in base for u in members)
    probes = _ex6_probes(eps)
    allowed = eps.rank + extra_rank
    member_set = set(members)
    stray = [p for p in probes if base.in_m(p) and p.rank <= allowed and p not in member_set]
    checks["M_truncation_complete"] = not stray
    violations += [{"check": "M_truncation_complete", "element": p} for p in stray]

    left = {ex6_multiply(u, chi) for u in members}
    right = {ex6_multiply(chi, u) for u in members}
    checks["U_chi"] = left == {chi}
    checks["chi_U"] = right == {chi}
    violations += [{"check": "U_chi", "product": p} for p in sorted(left - {chi})]
    violations += [{"check": "chi_U", "product": p} for p in sorted(right - {chi})]

    closed = True
    for u in members:
        for v in members:
            p = ex6_multiply(u, v)
            if p not in base:
                closed = False
                violations.append({"check": "UU", "u": u, "v": v, "product": p})
    checks["UU_in_U"] = closed

    inverses = {ex6_inverse(u) for u in members}
    checks["U_inverse"] = inverses == set(members)

    details = {"K": [p + 1 for p in eps.domain()], "epsilon": eps, "chi": chi,
               "members": len(members), "probes": len(probes),
               "note": "both U*chi and chi*U are checked"}
    return CheckReport("example6", N, all(checks.values()), checks, violations, details)


# ---------------------------------------------------------------------------
# clopen cover without a finite subcover


def chain_idempotent(N: int, k: int) -> PartialInjection:
    """``eps_k``: the identity on ``1..k``."""
    return identity_on(range(k), N)


class LeftStabilizer:
    """``U_l(eps) = {beta : beta eps = eps}``."""

    def __init__(self, eps: PartialInjection):
        self.eps = eps

    def __contains__(self, beta) -> bool:
        return compose(beta, self.eps) == self.eps


def theorem12_universe(N: int, K_max: int) -> list[PartialInjection]:
    """``I_N^1`` plus every ``eps_j`` extended by at most one pair off ``1..j``."""
    elems = set(TruncatedCarrier(N, 1).universe())
    for j in range(K_max + 1):
        rest = list(range(j, N))
        for gamma in TruncatedCarrier(len(rest), 1).universe():
            elems.add(PartialInjection(N, [(p, p) for p in range(j)]
                                       + [(rest[s], rest[t]) for s, t in gamma.pairs]))
    return sorted(elems)


@dataclass
class CoverReport:
    N: int
    K_max: int
    passed: bool
    checks: dict[str, bool]
    piece_sizes: list[int]
    remainder_size: int
    universe_size: int
    subfamilies_checked: int
    witnesses: list[dict] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)
    stable_under_enlargement: bool | None = None
    enlarged: "CoverReport | None" = None

    def verdict(self):
        return (self.passed, tuple(sorted(self.checks.items())), self.subfamilies_checked)


def build_cover_theorem12(N: int, K_max: int, *, enlarge: bool = False,
                          keep_witnesses: bool = True) -> CoverReport:
    """Chain ``eps_1 < ... < eps_K``, pieces ``O_1 = U^c``, ``O_k = U_l(eps_{k-1}) \\ U_l(eps_k)``.

    Checks the chain, disjointness of the pieces, that they cover the
    truncated universe outside ``U_l(eps_K)``, and for every nonempty
    subfamily ``F`` an element it misses (``eps_j`` for ``j = max F``).
    """
    if K_max > N:
        raise TruncationError(K_max, N)
    if K_max < 1:
        raise ValueError("the chain needs at least one idempotent")
    report = _cover(N, K_max, keep_witnesses)
    if enlarge:
        big = _cover(2 * N, K_max, False)
        report.enlarged = big
        report.stable_under_enlargement = big.verdict() == report.verdict()
        report.passed = report.passed and report.stable_under_enlargement
    return report


def _cover(N: int, K: int, keep_witnesses: bool) -> CoverReport:
    checks: dict[str, bool] = {}
    violations: list[dict] = []
    chain = [chain_idempotent(N, k) for k in range(K + 1)]  # chain[0] = 0
    strict = all(natural_leq(chain[k - 1], chain[k]) and chain[k - 1] != chain[k] for k in range(1, K + 1))
    checks["chain_strict"] = strict
    checks["chain_ranks"] = all(chain[k].rank == k for k in range(K + 1))

    universe = theorem12_universe(N, K)
    stabs = [None] + [LeftStabilizer(chain[k]) for k in range(1, K + 1)]
    inside = {beta: [True] + [beta in stabs[k] for k in range(1, K + 1)] for beta in universe}

    def piece(beta, k):
        u = inside[beta]
        return u[k - 1] and not u[k]

    nested = all(not u[k] or u[k - 1] for u in inside.values() for k in range(1, K + 1))
    checks["stabilizers_nested"] = nested

    sizes = [0] * K
    disjoint = covered = True
    remainder = 0
    for beta in universe:
        hits = [k for k in range(1, K + 1) if piece(beta, k)]
        for k in hits:
            sizes[k - 1] += 1
        in_rest = inside[beta][K]
        remainder += in_rest
        if len(hits) > 1:
            disjoint = False
            violations.append({"check": "disjoint", "element": beta, "pieces": hits})
        if not hits and not in_rest:
            covered = False
            violations.append({"check": "cover", "element": beta})
        if hits and in_rest:
            disjoint = False
            violations.append({"check": "remainder_disjoint", "element": beta})
    checks["pieces_disjoint"] = disjoint
    checks["pieces_cover"] = covered

    witnesses = []
    all_valid = True
    count = 0
    universe_set = set(universe)
    for mask in range(1, 2**K):
        F = [k for k in range(1, K + 1) if mask >> (k - 1) & 1]
        w = chain[max(F)]
        ok = w in universe_set and not any(piece(w, k) for k in F)
        count += 1
        all_valid &= ok
        if keep_witnesses or not ok:
            witnesses.append({"F": F, "witness": w, "valid": ok})
        if not ok:
            violations.append({"check": "subcover", "F": F, "witness": w})
    checks["no_finite_subcover"] = all_valid

    return CoverReport(N, K, all(checks.values()), checks, sizes, remainder, len(universe), count,
                       witnesses, violations)
