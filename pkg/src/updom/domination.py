"""Dominating-set predicates, minimality certificates, and the deterministic
reduction of a dominating set to a minimal one.

A minimal dominating set is certified vertex by vertex: each member is either
isolated inside the set or has a private neighbor outside it (a neighbor
adjacent to no other member).  That characterization is what every solver and
witness construction in this package checks against.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, VertexSet, bits, closed_neighborhood, vertex_list


class DominationError(Exception):
    """Base class for domination predicate failures."""


class NotDominatingError(DominationError):
    """Some vertex outside the set has no neighbor in it."""

    def __init__(self, vertex: int):
        super().__init__(f"vertex {vertex} is not dominated")
        self.vertex = vertex


class NotMinimalError(DominationError):
    """A member is neither isolated in the set nor privately served."""

    def __init__(self, vertex: int):
        super().__init__(f"vertex {vertex} is neither isolated nor privately served")
        self.vertex = vertex


class ForcedNotProtectedError(DominationError):
    """A vertex required to survive minimalization fails its hypothesis."""

    def __init__(self, vertex: int):
        super().__init__(
            f"forced vertex {vertex} is neither isolated nor privately served; "
            "it is not guaranteed to survive minimalization"
        )
        self.vertex = vertex


def is_dominating(g: Graph, d: VertexSet) -> bool:
    """True iff N[d] covers every vertex."""
    return closed_neighborhood(g, d) == g.full_mask


def undominated(g: Graph, d: VertexSet) -> VertexSet:
    return g.full_mask & ~closed_neighborhood(g, d)


def is_set_isolated(g: Graph, d: VertexSet, v: int) -> bool:
    """True when member v has no neighbor inside d."""
    return not g.adj[v] & d


def private_neighbors(g: Graph, d: VertexSet, v: int) -> VertexSet:
    """Neighbors of member v outside d that are adjacent to no other member."""
    bit = 1 << v
    out = 0
    for w in bits(g.adj[v] & ~d):
        if g.adj[w] & d == bit:
            out |= 1 << w
    return out


@dataclass(frozen=True)
class DominationCertificate:
    """A minimal dominating set with one justification per member.

    ``justification`` maps each member to ``None`` (isolated inside the set)
    or to its designated private neighbor.
    """

    set_mask: VertexSet
    justification: dict[int, int | None]

    @property
    def size(self) -> int:
        return self.set_mask.bit_count()

    def validate(self, g: Graph) -> None:
        """Re-check every certificate invariant from scratch."""
        d = self.set_mask
        if set(self.justification) != set(vertex_list(d)):
            raise DominationError("justification keys do not match the set")
        missing = undominated(g, d)
        if missing:
            raise NotDominatingError(next(bits(missing)))
        for v, w in self.justification.items():
            if w is None:
                if g.adj[v] & d:
                    raise DominationError(f"vertex {v} tagged isolated but has a set neighbor")
            else:
                if d >> w & 1 or not g.adj[v] >> w & 1 or g.adj[w] & d != 1 << v:
                    raise DominationError(f"vertex {w} is not a private neighbor of {v}")

    def to_json(self) -> dict:
        just: dict[str, object] = {}
        for v in sorted(self.justification):
            w = self.justification[v]
            just[str(v)] = "isolated" if w is None else {"private": w}
        return {"set": vertex_list(self.set_mask), "justification": just}

    @classmethod
    def from_json(cls, data: dict) -> "DominationCertificate":
        mask = 0
        for v in data["set"]:
            mask |= 1 << v
        just: dict[int, int | None] = {}
        for key, tag in data["justification"].items():
            just[int(key)] = None if tag == "isolated" else int(tag["private"])
        return cls(mask, just)


def certify_minimal(g: Graph, d: VertexSet) -> DominationCertificate:
    """Certificate that d is a minimal dominating set.

    Raises NotDominatingError for the lowest undominated vertex, or
    NotMinimalError for the lowest member that is neither isolated nor
    privately served.  When a member is both, the isolated tag wins.
    """
    missing = undominated(g, d)
    if missing:
        raise NotDominatingError(next(bits(missing)))
    justification: dict[int, int | None] = {}
    for v in bits(d):
        if not g.adj[v] & d:
            justification[v] = None
            continue
        priv = private_neighbors(g, d, v)
        if not priv:
            raise NotMinimalError(v)
        justification[v] = next(bits(priv))
    return DominationCertificate(d, justification)


def is_minimal_dominating(g: Graph, d: VertexSet) -> bool:
    try:
        certify_minimal(g, d)
        return True
    except DominationError:
        return False


def minimalize(g: Graph, d: VertexSet, forced: VertexSet = 0) -> VertexSet:
    """Shrink a dominating set to a minimal dominating subset.

    Deterministic rule: repeatedly drop the lowest-indexed member whose
    removal keeps the set dominating, skipping ``forced``, and rescan from
    vertex 0 after every removal.  Members that are isolated or privately
    served are never droppable (their removal breaks domination), so they
    need no explicit protection.

    ``forced`` members must already be isolated or privately served in d;
    that hypothesis is what guarantees they survive, and violating it is a
    caller bug reported as ForcedNotProtectedError.
    """
    if forced & ~d:
        raise ValueError("forced vertices must belong to the dominating set")
    missing = undominated(g, d)
    if missing:
        raise NotDominatingError(next(bits(missing)))
    for v in bits(forced):
        if g.adj[v] & d and not private_neighbors(g, d, v):
            raise ForcedNotProtectedError(v)
    current = d
    changed = True
    while changed:
        changed = False
        for v in bits(current & ~forced):
            reduced = current & ~(1 << v)
            if is_dominating(g, reduced):
                current = reduced
                changed = True
                break
    return current


@dataclass(frozen=True)
class DomSplit:
    """Partition of a minimal dominating set by private-neighbor existence.

    ``private_members`` hold at least one private neighbor;
    ``isolated_members`` are the rest, necessarily isolated inside the set.
    ``chosen_private`` designates the lowest-indexed private neighbor of each
    private member.
    """

    private_members: VertexSet
    isolated_members: VertexSet
    chosen_private: dict[int, int]


def split_by_private_neighbor(g: Graph, cert: DominationCertificate) -> DomSplit:
    """Recompute the private/isolated split semantically.

    Membership is decided by actual private-neighbor existence, not by the
    certificate tags: a member can be isolated and privately served at once,
    and such members count as private here.
    """
    d = cert.set_mask
    private_members = 0
    chosen: dict[int, int] = {}
    for v in bits(d):
        priv = private_neighbors(g, d, v)
        if priv:
            private_members |= 1 << v
            chosen[v] = next(bits(priv))
    return DomSplit(private_members, d & ~private_members, chosen)
