"""Exact solvers for the domination invariants.

Three engines, different scales:

* a subset-table oracle (numpy, all 2^n subsets) for small graphs -- the
  ground truth everything else is checked against;
* a branch-and-bound maximizer for the largest minimal dominating set,
  pruned by per-member viability of the isolated-or-privately-served
  condition;
* an iterative-deepening search for the domination number and a plain
  include/exclude branch-and-bound for the independence number.

All searches are single-threaded and explore in a pinned order, so values,
witnesses and node counts are reproducible run to run.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from enum import Enum
from time import perf_counter

import numpy as np

from .domination import (
    DominationCertificate,
    certify_minimal,
    is_dominating,
    minimalize,
)
from .graphs import Graph, VertexSet, bits, vertex_list

ORACLE_CAP = 22
ENUMERATION_CAP = 18

sys.setrecursionlimit(10_000)


class TooLargeError(ValueError):
    """The graph exceeds the hard cap of an exhaustive routine."""


class NotIndependentError(ValueError):
    """A required independent set has an internal edge."""


class _BudgetExhausted(Exception):
    pass


class _OptimumReached(Exception):
    pass


@dataclass(frozen=True)
class SearchBudget:
    """Limits for the branch-and-bound searches.

    ``workers`` is carried for the sweep drivers; the solvers themselves are
    single-threaded so that witnesses never depend on scheduling.
    ``tight_bound`` switches the optimistic completion bound from "every
    undecided vertex may still join" to the per-vertex viability count.
    """

    node_limit: int | None = 10_000_000
    time_limit_ms: float | None = None
    workers: int = 1
    tight_bound: bool = False


DEFAULT_BUDGET = SearchBudget()


class SolveStatus(str, Enum):
    EXACT = "exact"
    BOUND_ONLY = "bound_only"


@dataclass
class SearchStats:
    nodes: int = 0
    elapsed_ms: float = 0.0


@dataclass
class SolveResult:
    """Value plus the witness set attaining it.

    When the budget runs out the value is the best bound found: a lower
    bound for the maximization problems, an upper bound for the domination
    number.  The witness is always a valid attaining set of size ``value``.
    """

    value: int
    witness: VertexSet
    certificate: DominationCertificate | None
    status: SolveStatus
    stats: SearchStats

    def to_json(self) -> dict:
        return {"value": self.value, "status": self.status.value,
                "witness": vertex_list(self.witness)}


class _Budget:
    __slots__ = ("node_limit", "deadline", "nodes")

    def __init__(self, budget: SearchBudget):
        self.node_limit = budget.node_limit
        self.deadline = (None if budget.time_limit_ms is None
                         else perf_counter() + budget.time_limit_ms / 1000.0)
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise _BudgetExhausted
        if self.deadline is not None and self.nodes & 1023 == 0:
            if perf_counter() > self.deadline:
                raise _BudgetExhausted


# ---------------------------------------------------------------------------
# Greedy helpers (seed solutions; also part of the public surface)
# ---------------------------------------------------------------------------

def greedy_maximal_independent(g: Graph, must_include: VertexSet = 0) -> VertexSet:
    """Grow ``must_include`` to a maximal independent set, lowest index first."""
    for v in bits(must_include):
        if g.adj[v] & must_include:
            raise NotIndependentError(f"vertices {v} and its neighbor are both required")
    chosen = must_include
    blocked = must_include
    for v in bits(must_include):
        blocked |= g.adj[v]
    for v in range(g.n):
        if not (blocked >> v & 1):
            chosen |= 1 << v
            blocked |= g.closed(v)
    return chosen


def greedy_dominating(g: Graph) -> VertexSet:
    """Max-coverage greedy dominating set (ties to the lowest index)."""
    chosen = 0
    covered = 0
    full = g.full_mask
    while covered != full:
        best_v = -1
        best_gain = -1
        for v in range(g.n):
            gain = (g.closed(v) & ~covered).bit_count()
            if gain > best_gain:
                best_gain = gain
                best_v = v
        chosen |= 1 << best_v
        covered |= g.closed(best_v)
    return chosen


# ---------------------------------------------------------------------------
# Subset-table oracle
# ---------------------------------------------------------------------------

def _coverage_table(g: Graph) -> np.ndarray:
    """coverage[mask] = N[mask] for every subset mask (n <= ORACLE_CAP)."""
    cov = np.zeros(1 << g.n, dtype=np.int64)
    for v in range(g.n):
        block = 1 << v
        cov[block:2 * block] = cov[:block] | g.closed(v)
    return cov


def _minimal_dominating_flags(g: Graph) -> np.ndarray:
    """Boolean table of which subsets are minimal dominating sets."""
    cov = _coverage_table(g)
    full = g.full_mask
    dominating = cov == full
    size = 1 << g.n
    masks = np.arange(size, dtype=np.int64)
    removable = np.zeros(size, dtype=bool)
    for v in range(g.n):
        bit = 1 << v
        has_v = (masks & bit) != 0
        removable |= has_v & dominating[masks ^ bit]
    return dominating & ~removable


def _sorted_list_smaller(a: VertexSet, b: VertexSet) -> bool:
    """Order of equal-size sets as sorted vertex lists: the set containing
    the lowest vertex in the symmetric difference comes first."""
    d = a ^ b
    if not d:
        return False
    return bool(a & (d & -d))


def upper_gamma_oracle(g: Graph) -> SolveResult:
    """Largest minimal dominating set by scanning all subsets.

    Witness is the lexicographically smallest maximizer (as sorted vertex
    lists).  Hard-capped at n <= ORACLE_CAP.
    """
    if g.n > ORACLE_CAP:
        raise TooLargeError(f"oracle needs n <= {ORACLE_CAP}, got {g.n}")
    t0 = perf_counter()
    if g.n == 0:
        cert = certify_minimal(g, 0)
        return SolveResult(0, 0, cert, SolveStatus.EXACT,
                           SearchStats(1, (perf_counter() - t0) * 1000))
    minimal = _minimal_dominating_flags(g)
    masks = np.nonzero(minimal)[0]
    sizes = np.bitwise_count(masks)
    best = int(sizes.max())
    witness = None
    for m in masks[sizes == best]:
        m = int(m)
        if witness is None or _sorted_list_smaller(m, witness):
            witness = m
    cert = certify_minimal(g, witness)
    stats = SearchStats(1 << g.n, (perf_counter() - t0) * 1000)
    return SolveResult(best, witness, cert, SolveStatus.EXACT, stats)


def enumerate_minimal_dominating(g: Graph, cap: int | None = None) -> tuple[list[VertexSet], bool]:
    """All minimal dominating sets, ordered as sorted vertex lists.

    Returns (sets, truncated); ``truncated`` is True when ``cap`` cut the
    list short.  Hard-capped at n <= ENUMERATION_CAP.
    """
    if g.n > ENUMERATION_CAP:
        raise TooLargeError(f"enumeration needs n <= {ENUMERATION_CAP}, got {g.n}")
    if g.n == 0:
        sets = [0]
    else:
        minimal = _minimal_dominating_flags(g)
        sets = [int(m) for m in np.nonzero(minimal)[0]]
        sets.sort(key=lambda m: tuple(vertex_list(m)))
    if cap is not None and len(sets) > cap:
        return sets[:cap], True
    return sets, False


# ---------------------------------------------------------------------------
# Domination number (iterative deepening)
# ---------------------------------------------------------------------------

def gamma_exact(g: Graph, budget: SearchBudget = DEFAULT_BUDGET) -> SolveResult:
    """Minimum dominating set via iterative deepening.

    Branches on the lowest-indexed undominated vertex and tries each of its
    closed-neighborhood dominators in ascending order.  On budget exhaustion
    the greedy (minimalized) seed is reported as an upper bound.
    """
    t0 = perf_counter()
    n = g.n
    tracker = _Budget(budget)
    if n == 0:
        return SolveResult(0, 0, certify_minimal(g, 0), SolveStatus.EXACT,
                           SearchStats(0, (perf_counter() - t0) * 1000))
    closed = [g.closed(v) for v in range(n)]
    full = g.full_mask
    seed = minimalize(g, greedy_dominating(g))
    ub = seed.bit_count()
    max_closed = max(c.bit_count() for c in closed)
    found: list[VertexSet] = []

    def dfs(depth_left: int, dominated: VertexSet, chosen: VertexSet) -> bool:
        tracker.tick()
        und = full & ~dominated
        if not und:
            found.append(chosen)
            return True
        if depth_left == 0:
            return False
        # admissible coverage bound: each further pick dominates at most
        # max_closed new vertices
        if max_closed * depth_left < und.bit_count():
            return False
        v = (und & -und).bit_length() - 1
        for u in bits(closed[v]):
            if dfs(depth_left - 1, dominated | closed[u], chosen | (1 << u)):
                return True
        return False

    lower = -(-n // max_closed)  # ceil
    try:
        for k in range(lower, ub):
            if dfs(k, 0, 0):
                witness = found[-1]
                cert = certify_minimal(g, witness)
                stats = SearchStats(tracker.nodes, (perf_counter() - t0) * 1000)
                return SolveResult(witness.bit_count(), witness, cert,
                                   SolveStatus.EXACT, stats)
        # no smaller set exists: the seed is optimal
        stats = SearchStats(tracker.nodes, (perf_counter() - t0) * 1000)
        return SolveResult(ub, seed, certify_minimal(g, seed), SolveStatus.EXACT, stats)
    except _BudgetExhausted:
        stats = SearchStats(tracker.nodes, (perf_counter() - t0) * 1000)
        return SolveResult(ub, seed, certify_minimal(g, seed),
                           SolveStatus.BOUND_ONLY, stats)


# ---------------------------------------------------------------------------
# Upper domination number (branch and bound)
# ---------------------------------------------------------------------------

def upper_gamma_bnb(g: Graph, budget: SearchBudget = DEFAULT_BUDGET) -> SolveResult:
    """Largest minimal dominating set by in/out branch and bound.

    Branches on the lowest-indexed undecided vertex, "in" first, so large
    candidate sets are found early.  A branch dies as soon as

    * some in-vertex has an in-neighbor but no live private candidate
      (a neighbor outside the set with no second in-neighbor), or
    * some out-vertex has had its whole neighborhood decided out.

    At a full assignment those two checks make the in-set a minimal
    dominating set by construction, so leaves need no further test.  The
    optimistic completion bound adds either all undecided vertices
    (default) or only the still-viable ones (``budget.tight_bound``); both
    are admissible, so the reported value and witness do not depend on the
    flag.  For isolate-free graphs the search also stops once the incumbent
    reaches n - gamma, the complement bound on any minimal dominating set.
    """
    t0 = perf_counter()
    n = g.n
    if n == 0:
        return SolveResult(0, 0, certify_minimal(g, 0), SolveStatus.EXACT,
                           SearchStats(0, (perf_counter() - t0) * 1000))
    nbr = g.adj
    tracker = _Budget(budget)
    tight = budget.tight_bound

    seed = greedy_maximal_independent(g)
    best = seed.bit_count()
    best_mask = seed

    cap = None
    if not g.has_isolated_vertex():
        # complement of any minimal dominating set dominates, so the optimum
        # is at most n - gamma; only an exact gamma gives a sound cap
        inner = gamma_exact(g, SearchBudget(node_limit=200_000, time_limit_ms=None))
        if inner.status is SolveStatus.EXACT:
            cap = n - inner.value

    status = SolveStatus.EXACT
    node_limit = tracker.node_limit
    deadline = tracker.deadline

    def dfs(v: int, in_mask: VertexSet, out_mask: VertexSet,
            once: VertexSet, twice: VertexSet, in_count: int) -> None:
        nonlocal best, best_mask
        tracker.nodes += 1
        if node_limit is not None and tracker.nodes > node_limit:
            raise _BudgetExhausted
        if deadline is not None and tracker.nodes & 1023 == 0 \
                and perf_counter() > deadline:
            raise _BudgetExhausted
        if v == n:
            if in_count > best:
                best = in_count
                best_mask = in_mask
                if cap is not None and best >= cap:
                    raise _OptimumReached
            return
        bit = 1 << v
        row_v = nbr[v]

        # ---- in branch ----
        new_in = in_mask | bit
        gained_twice = once & row_v & ~twice
        new_twice = twice | gained_twice
        new_once = once | row_v
        # viability is monotone, so only members whose in-neighborhood or
        # candidate pool just changed need rechecking: v itself, in-neighbors
        # of v, and in-neighbors of freshly double-covered vertices
        affected = bit | (row_v & in_mask)
        gg = gained_twice
        while gg:
            low = gg & -gg
            gg ^= low
            affected |= nbr[low.bit_length() - 1] & new_in
        viable = True
        while affected:
            low = affected & -affected
            affected ^= low
            u = low.bit_length() - 1
            if nbr[u] & new_in and not nbr[u] & ~new_in & ~new_twice:
                viable = False
                break
        if viable:
            need = best - in_count - 1
            # even taking every undecided vertex cannot improve when
            # n - v - 1 <= need; the viable-count room only shrinks that
            if n - v - 1 > need:
                if tight:
                    room = 0
                    u = v + 1
                    while u < n and room <= need:
                        if not nbr[u] & new_in or nbr[u] & ~new_in & ~new_once:
                            room += 1
                        u += 1
                    if room > need:
                        dfs(v + 1, new_in, out_mask, new_once, new_twice, in_count + 1)
                else:
                    dfs(v + 1, new_in, out_mask, new_once, new_twice, in_count + 1)

        # ---- out branch ----
        new_out = out_mask | bit
        dead = not row_v & ~new_out
        if not dead:
            ww = row_v & new_out
            while ww:
                low = ww & -ww
                ww ^= low
                if not nbr[low.bit_length() - 1] & ~new_out:
                    dead = True
                    break
        if not dead:
            need = best - in_count
            if n - v - 1 > need:
                if tight:
                    room = 0
                    u = v + 1
                    while u < n and room <= need:
                        if not nbr[u] & in_mask or nbr[u] & ~in_mask & ~once:
                            room += 1
                        u += 1
                    if room > need:
                        dfs(v + 1, in_mask, new_out, once, twice, in_count)
                else:
                    dfs(v + 1, in_mask, new_out, once, twice, in_count)

    try:
        if cap is None or best < cap:
            dfs(0, 0, 0, 0, 0, 0)
    except _BudgetExhausted:
        status = SolveStatus.BOUND_ONLY
    except _OptimumReached:
        pass
    cert = certify_minimal(g, best_mask)
    stats = SearchStats(tracker.nodes, (perf_counter() - t0) * 1000)
    return SolveResult(best, best_mask, cert, status, stats)


# ---------------------------------------------------------------------------
# Independence number
# ---------------------------------------------------------------------------

def alpha_exact(g: Graph, budget: SearchBudget = DEFAULT_BUDGET) -> SolveResult:
    """Maximum independent set by branch and bound on the max-degree vertex.

    Incumbents are greedily extended to maximal independent sets, so the
    witness is always maximal (hence also a minimal dominating set).
    """
    t0 = perf_counter()
    n = g.n
    tracker = _Budget(budget)
    if n == 0:
        return SolveResult(0, 0, None, SolveStatus.EXACT,
                           SearchStats(0, (perf_counter() - t0) * 1000))
    closed = [g.closed(v) for v in range(n)]
    nbr = g.adj
    seed = greedy_maximal_independent(g)
    best = seed.bit_count()
    best_mask = seed
    status = SolveStatus.EXACT

    def dfs(cand: VertexSet, cur: VertexSet, count: int) -> None:
        nonlocal best, best_mask
        tracker.tick()
        if not cand:
            if count > best:
                ext = greedy_maximal_independent(g, cur)
                best = ext.bit_count()
                best_mask = ext
            return
        if count + cand.bit_count() <= best:
            return
        pick = -1
        pick_deg = -1
        for u in bits(cand):
            deg = (nbr[u] & cand).bit_count()
            if deg > pick_deg:
                pick_deg = deg
                pick = u
        dfs(cand & ~closed[pick], cur | (1 << pick), count + 1)
        dfs(cand & ~(1 << pick), cur, count)

    try:
        dfs(g.full_mask, 0, 0)
    except _BudgetExhausted:
        status = SolveStatus.BOUND_ONLY
    stats = SearchStats(tracker.nodes, (perf_counter() - t0) * 1000)
    return SolveResult(best, best_mask, None, status, stats)
