"""Brute-force reference implementations used as independent test oracles.

Everything recomputes from first principles over explicit vertex sets with
itertools, deliberately sharing no logic with the package's bitset and
numpy code paths.
"""

from itertools import combinations


def neighbor_sets(g) -> list[set]:
    nbrs = [set() for _ in range(g.n)]
    for u, v in g.edges():
        nbrs[u].add(v)
        nbrs[v].add(u)
    return nbrs


def is_dominating(nbrs, n, d) -> bool:
    d = set(d)
    return all(v in d or nbrs[v] & d for v in range(n))


def is_minimal_dominating(nbrs, n, d) -> bool:
    d = set(d)
    if not is_dominating(nbrs, n, d):
        return False
    return all(not is_dominating(nbrs, n, d - {v}) for v in d)


def all_minimal_dominating(g) -> list[frozenset]:
    nbrs = neighbor_sets(g)
    out = []
    for k in range(g.n + 1):
        for combo in combinations(range(g.n), k):
            if is_minimal_dominating(nbrs, g.n, combo):
                out.append(frozenset(combo))
    return out


def upper_gamma(g) -> int:
    sets = all_minimal_dominating(g)
    return max((len(s) for s in sets), default=0)


def gamma(g) -> int:
    nbrs = neighbor_sets(g)
    for k in range(g.n + 1):
        for combo in combinations(range(g.n), k):
            if is_dominating(nbrs, g.n, combo):
                return k
    return 0


def alpha(g) -> int:
    nbrs = neighbor_sets(g)
    best = 0
    for k in range(g.n, -1, -1):
        for combo in combinations(range(g.n), k):
            if all(v not in nbrs[u] for u, v in combinations(combo, 2)):
                return k
    return best
