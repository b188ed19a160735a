"""Bitset graph core: immutable graphs, standard families, Cartesian products,
and the two text formats (graph6, edge list).

Vertices are always 0..n-1.  A ``VertexSet`` is a plain ``int`` used as a
bitmask over the owning graph's vertices; this keeps the solver loops
branch-free and makes witnesses cheap to copy and compare.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Iterator

#: Hard cap on vertex count for any constructed graph.  Large enough for every
#: desk-scale product handled here; anything bigger fails loudly instead of
#: silently degrading.
CAPACITY = 512

VertexSet = int


class CapacityError(ValueError):
    """Construction would exceed the fixed vertex capacity."""


class FamilyParameterError(ValueError):
    """A graph family was requested with out-of-range parameters."""


class GraphParseError(ValueError):
    """Malformed graph text.  ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


def mask_of(vertices: Iterable[int]) -> VertexSet:
    """Bitmask with exactly the given vertex positions set."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def vertex_list(mask: VertexSet) -> list[int]:
    """Vertices of a mask in ascending order."""
    return list(bits(mask))


def bits(mask: VertexSet) -> Iterator[int]:
    """Iterate set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph with one neighbor bitmask per vertex.

    Invariants checked at construction: symmetric and irreflexive adjacency,
    no neighbor bits at positions >= n, and n within capacity.
    """

    n: int
    adj: tuple[VertexSet, ...]
    label: str = ""

    def __post_init__(self) -> None:
        if not 0 <= self.n <= CAPACITY:
            raise CapacityError(f"vertex count {self.n} outside 0..{CAPACITY}")
        if len(self.adj) != self.n:
            raise ValueError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {u} has neighbors beyond n-1")
            if row >> u & 1:
                raise ValueError(f"self-loop at vertex {u}")
            for v in bits(row):
                if not self.adj[v] >> u & 1:
                    raise ValueError(f"adjacency not symmetric at ({u}, {v})")

    @property
    def full_mask(self) -> VertexSet:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> VertexSet:
        return self.adj[v]

    def closed(self, v: int) -> VertexSet:
        return self.adj[v] | (1 << v)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(row.bit_count() for row in self.adj))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def is_nontrivial(self) -> bool:
        """True when the graph has at least one edge."""
        return any(self.adj)

    def min_degree(self) -> int:
        return min((row.bit_count() for row in self.adj), default=0)

    def has_isolated_vertex(self) -> bool:
        return self.n > 0 and self.min_degree() == 0

    def relabeled(self, label: str) -> "Graph":
        return Graph(self.n, self.adj, label)


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]], label: str = "") -> Graph:
    """Build a graph from an edge list; rejects self-loops and out-of-range ids."""
    if not 0 <= n <= CAPACITY:
        raise CapacityError(f"vertex count {n} outside 0..{CAPACITY}")
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj), label)


def closed_neighborhood(g: Graph, s: VertexSet) -> VertexSet:
    """N[s]: the set itself plus every vertex with a neighbor in it."""
    out = s
    for v in bits(s):
        out |= g.adj[v]
    return out


def components(g: Graph) -> list[VertexSet]:
    """Connected components as masks, ordered by their smallest vertex."""
    seen = 0
    out = []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp = 1 << v
        frontier = g.adj[v] & ~comp
        while frontier:
            comp |= frontier
            grown = 0
            for u in bits(frontier):
                grown |= g.adj[u]
            frontier = grown & ~comp
        seen |= comp
        out.append(comp)
    return out


def disjoint_union(graphs: Iterable[Graph], label: str = "") -> Graph:
    """Block-diagonal union; input order fixes the vertex numbering."""
    gs = list(graphs)
    total = sum(g.n for g in gs)
    if total > CAPACITY:
        raise CapacityError(f"union needs {total} vertices, capacity is {CAPACITY}")
    adj: list[VertexSet] = []
    offset = 0
    for g in gs:
        adj.extend(row << offset for row in g.adj)
        offset += g.n
    if not label:
        label = "+".join(g.label or "?" for g in gs)
    return Graph(total, tuple(adj), label)


def induced_subgraph(g: Graph, keep: VertexSet) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on ``keep`` plus the map new-index -> original vertex."""
    orig = vertex_list(keep)
    pos = {v: i for i, v in enumerate(orig)}
    adj = []
    for v in orig:
        row = 0
        for w in bits(g.adj[v] & keep):
            row |= 1 << pos[w]
        adj.append(row)
    return Graph(len(orig), tuple(adj), g.label), tuple(orig)


# ---------------------------------------------------------------------------
# Cartesian products
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProductGraph:
    """A Cartesian product graph plus its (row, column) coordinate maps.

    Vertex (u, v) of the product lives at index u * n_h + v.  Row u is
    {u} x V(H); column v is V(G) x {v}.
    """

    graph: Graph
    n_g: int
    n_h: int

    def index(self, u: int, v: int) -> int:
        return u * self.n_h + v

    def coords(self, idx: int) -> tuple[int, int]:
        return divmod(idx, self.n_h)

    def row_mask(self, u: int) -> VertexSet:
        return ((1 << self.n_h) - 1) << (u * self.n_h)

    def column_mask(self, v: int) -> VertexSet:
        m = 0
        for u in range(self.n_g):
            m |= 1 << (u * self.n_h + v)
        return m

    def pairs_mask(self, g_set: VertexSet, h_set: VertexSet) -> VertexSet:
        """Mask of the block g_set x h_set."""
        m = 0
        for u in bits(g_set):
            m |= h_set << (u * self.n_h)
        return m

    def transpose_mask(self, mask: VertexSet) -> VertexSet:
        """Re-index a product vertex set for the factor-swapped product."""
        out = 0
        for idx in bits(mask):
            u, v = divmod(idx, self.n_h)
            out |= 1 << (v * self.n_g + u)
        return out


def cartesian_product(g: Graph, h: Graph) -> ProductGraph:
    """Cartesian product: (u1,v1) ~ (u2,v2) iff equal in one coordinate and
    adjacent in the other."""
    n = g.n * h.n
    if n > CAPACITY:
        raise CapacityError(f"product needs {n} vertices, capacity is {CAPACITY}")
    adj = []
    col_bit = [1 << (x * h.n) for x in range(g.n)]
    for u in range(g.n):
        base = u * h.n
        for v in range(h.n):
            row = h.adj[v] << base
            gi = g.adj[u]
            for x in bits(gi):
                row |= col_bit[x] << v
            adj.append(row)
    label = f"{g.label or '?'}x{h.label or '?'}"
    return ProductGraph(Graph(n, tuple(adj), label), g.n, h.n)


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------

def complete(n: int) -> Graph:
    if n < 0:
        raise FamilyParameterError("complete(n) needs n >= 0")
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)), f"k:{n}")


def edgeless(n: int) -> Graph:
    if n < 0:
        raise FamilyParameterError("edgeless(n) needs n >= 0")
    return Graph(n, (0,) * n, f"edgeless:{n}")


def star(n: int) -> Graph:
    """Star with n leaves; vertex 0 is the center, so n+1 vertices total."""
    if n < 1:
        raise FamilyParameterError("star(n) needs n >= 1")
    leaves = ((1 << (n + 1)) - 1) & ~1
    return Graph(n + 1, (leaves,) + (1,) * n, f"star:{n}")


def complete_bipartite(m: int, n: int) -> Graph:
    """Sides 0..m-1 and m..m+n-1, fully joined."""
    if m < 1 or n < 1:
        raise FamilyParameterError("complete_bipartite(m, n) needs m, n >= 1")
    left = (1 << m) - 1
    right = ((1 << (m + n)) - 1) & ~left
    return Graph(m + n, (right,) * m + (left,) * n, f"kb:{m},{n}")


def path(n: int) -> Graph:
    if n < 1:
        raise FamilyParameterError("path(n) needs n >= 1")
    return graph_from_edges(n, [(v, v + 1) for v in range(n - 1)], f"path:{n}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise FamilyParameterError("cycle(n) needs n >= 3")
    edges = [(v, (v + 1) % n) for v in range(n)]
    return graph_from_edges(n, edges, f"cycle:{n}")


def matched_cliques(n: int) -> Graph:
    """Two (n+1)-cliques joined by a perfect matching on positions 1..n.

    Vertices 0..n form the first clique (0 is its unmatched vertex) and
    n+1..2n+1 the second (n+1 unmatched); position i of each clique is
    matched to position i of the other for i >= 1.
    """
    if n < 1:
        raise FamilyParameterError("matched_cliques(n) needs n >= 1")
    edges = _clique_edges(range(n + 1)) + _clique_edges(range(n + 1, 2 * n + 2))
    edges += [(i, n + 1 + i) for i in range(1, n + 1)]
    return graph_from_edges(2 * n + 2, edges, f"mc:{n}")


def matched_cliques_trimmed(n: int) -> Graph:
    """``matched_cliques(n)`` with the first clique's unmatched vertex removed.

    Vertices 0..n-1 are the trimmed clique (all matched); n..2n the intact
    one, with n its unmatched vertex.  Position i >= 1 of the intact clique
    (vertex n+i) is matched to vertex i-1.
    """
    if n < 1:
        raise FamilyParameterError("matched_cliques_trimmed(n) needs n >= 1")
    edges = _clique_edges(range(n)) + _clique_edges(range(n, 2 * n + 1))
    edges += [(i - 1, n + i) for i in range(1, n + 1)]
    return graph_from_edges(2 * n + 1, edges, f"mct:{n}")


def matched_cliques_pendant(n: int) -> Graph:
    """``matched_cliques(n)`` plus a pendant path: 0 - 1 - (first unmatched).

    Vertex 0 is the degree-one tip, vertex 1 its only other neighbor besides
    the clique vertex; the embedded matched-cliques graph is shifted by 2.
    """
    if n < 1:
        raise FamilyParameterError("matched_cliques_pendant(n) needs n >= 1")
    base = matched_cliques(n)
    edges = [(u + 2, v + 2) for u, v in base.edges()]
    edges += [(0, 1), (1, 2)]
    return graph_from_edges(base.n + 2, edges, f"mcp:{n}")


def matched_cliques_bridged(n: int) -> Graph:
    """``matched_cliques(n)`` plus an edge between the two unmatched vertices."""
    if n < 1:
        raise FamilyParameterError("matched_cliques_bridged(n) needs n >= 1")
    base = matched_cliques(n)
    edges = base.edges() + [(0, n + 1)]
    return graph_from_edges(base.n, edges, f"mcb:{n}")


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """G(n, p) with a pinned sampling order so output is seed-reproducible."""
    if n < 0:
        raise FamilyParameterError("erdos_renyi(n, p, seed) needs n >= 0")
    if not 0.0 <= p <= 1.0:
        raise FamilyParameterError("erdos_renyi probability must be in [0, 1]")
    rng = random.Random(seed)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v))
    return graph_from_edges(n, edges, f"er:{n},{p:g},{seed}")


def _clique_edges(vertices) -> list[tuple[int, int]]:
    vs = list(vertices)
    return [(u, v) for i, u in enumerate(vs) for v in vs[i + 1 :]]


# ---------------------------------------------------------------------------
# Family specs (CLI / report identities)
# ---------------------------------------------------------------------------

_FAMILIES = {
    "k": (complete, 1),
    "edgeless": (edgeless, 1),
    "star": (star, 1),
    "kb": (complete_bipartite, 2),
    "path": (path, 1),
    "cycle": (cycle, 1),
    "mc": (matched_cliques, 1),
    "mct": (matched_cliques_trimmed, 1),
    "mcp": (matched_cliques_pendant, 1),
    "mcb": (matched_cliques_bridged, 1),
    "er": (erdos_renyi, 3),
}


@dataclass(frozen=True)
class FamilySpec:
    """A named graph family instance, e.g. ``k:5`` or ``er:8,0.5,42``."""

    kind: str
    args: tuple

    def __str__(self) -> str:
        return f"{self.kind}:{','.join(repr(a) if isinstance(a, float) else str(a) for a in self.args)}"


def parse_family(text: str) -> FamilySpec:
    """Parse a ``kind:arg[,arg...]`` family token."""
    kind, sep, rest = text.partition(":")
    if not sep or kind not in _FAMILIES:
        known = ", ".join(sorted(_FAMILIES))
        raise FamilyParameterError(f"unknown family spec {text!r}; expected one of: {known}")
    _, arity = _FAMILIES[kind]
    parts = rest.split(",") if rest else []
    if len(parts) != arity:
        raise FamilyParameterError(f"family {kind!r} takes {arity} argument(s), got {len(parts)}")
    args: list = []
    for i, part in enumerate(parts):
        if kind == "er" and i == 1:
            args.append(float(part))
        else:
            args.append(int(part))
    return FamilySpec(kind, tuple(args))


def generate(spec: FamilySpec) -> Graph:
    """Deterministically build the graph for a family spec."""
    builder, _ = _FAMILIES[spec.kind]
    return builder(*spec.args)


# ---------------------------------------------------------------------------
# graph6 and edge-list formats
# ---------------------------------------------------------------------------

_G6_HEADER = b">>graph6<<"


def to_graph6(g: Graph) -> bytes:
    """Standard graph6 encoding (no header, no trailing newline)."""
    chunks = [_g6_encode_n(g.n)]
    bit_buf = 0
    bit_len = 0
    for j in range(1, g.n):
        col = g.adj[j]
        for i in range(j):
            bit_buf = (bit_buf << 1) | (col >> i & 1)
            bit_len += 1
            if bit_len == 6:
                chunks.append(bytes([bit_buf + 63]))
                bit_buf = 0
                bit_len = 0
    if bit_len:
        bit_buf <<= 6 - bit_len
        chunks.append(bytes([bit_buf + 63]))
    return b"".join(chunks)


def from_graph6(data: bytes | str) -> Graph:
    """Parse one graph6 line; tolerates the ``>>graph6<<`` header."""
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(_G6_HEADER):
        data = data[len(_G6_HEADER):]
    if not data:
        raise GraphParseError("empty graph6 input", 0)
    for pos, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise GraphParseError(f"invalid graph6 byte {byte}", pos)
    n, body_start = _g6_decode_n(data)
    if n > CAPACITY:
        raise CapacityError(f"graph6 declares {n} vertices, capacity is {CAPACITY}")
    need = n * (n - 1) // 2
    body = data[body_start:]
    if len(body) != (need + 5) // 6:
        raise GraphParseError(
            f"graph6 body has {len(body)} bytes, expected {(need + 5) // 6}", body_start
        )
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6]
            if (byte - 63) >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, tuple(adj), f"g6:{data.decode('ascii')}")


def _g6_encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    raise CapacityError(f"graph6 size field for n={n} not supported")


def _g6_decode_n(data: bytes) -> tuple[int, int]:
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        raise GraphParseError("graph6 sizes beyond 258047 not supported", 0)
    if len(data) < 4:
        raise GraphParseError("truncated graph6 size field", 0)
    n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
    return n, 4


def read_graph6_lines(text: bytes | str) -> list[Graph]:
    """Parse a whole graph6 file (one graph per line)."""
    if isinstance(text, bytes):
        text = text.decode("ascii")
    out = []
    for line in text.splitlines():
        line = line.strip()
        if line:
            out.append(from_graph6(line))
    return out


def to_edge_list(g: Graph) -> bytes:
    lines = [str(g.n)]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return ("\n".join(lines) + "\n").encode("ascii")


def from_edge_list(data: bytes | str) -> Graph:
    """Parse the edge-list format: vertex count on line 1, then ``u v`` pairs."""
    if isinstance(data, str):
        data = data.encode("ascii")
    offset = 0
    lines = data.split(b"\n")
    header_seen = False
    n = 0
    edges = []
    for raw in lines:
        line = raw.strip()
        if line:
            parts = line.split()
            if not header_seen:
                if len(parts) != 1:
                    raise GraphParseError("first line must be the vertex count", offset)
                n = _parse_int(parts[0], offset)
                if n < 0:
                    raise GraphParseError("negative vertex count", offset)
                if n > CAPACITY:
                    raise CapacityError(f"edge list declares {n} vertices, capacity is {CAPACITY}")
                header_seen = True
            else:
                if len(parts) != 2:
                    raise GraphParseError("edge lines must be 'u v'", offset)
                u = _parse_int(parts[0], offset)
                v = _parse_int(parts[1], offset)
                if not (0 <= u < n and 0 <= v < n):
                    raise GraphParseError(f"edge ({u}, {v}) out of range for n={n}", offset)
                if u == v:
                    raise GraphParseError(f"self-loop at vertex {u}", offset)
                edges.append((u, v))
        offset += len(raw) + 1
    if not header_seen:
        raise GraphParseError("empty edge-list input", 0)
    return graph_from_edges(n, edges, f"edges:{n}")


def _parse_int(token: bytes, offset: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphParseError(f"expected an integer, got {token!r}", offset) from None


def parse_graph(data: bytes | str, fmt: str) -> Graph:
    if fmt == "graph6":
        return from_graph6(data)
    if fmt == "edge_list":
        return from_edge_list(data)
    raise ValueError(f"unknown graph format {fmt!r}")


def serialize_graph(g: Graph, fmt: str) -> bytes:
    if fmt == "graph6":
        return to_graph6(g)
    if fmt == "edge_list":
        return to_edge_list(g)
    raise ValueError(f"unknown graph format {fmt!r}")


# ---------------------------------------------------------------------------
# Structure tests and small-graph canonical forms
# ---------------------------------------------------------------------------

def is_complete_graph(g: Graph) -> bool:
    return all(row == g.full_mask & ~(1 << v) for v, row in enumerate(g.adj))


def is_two_leaf_star(g: Graph) -> bool:
    """True for the 3-vertex path (the star with exactly two leaves)."""
    return g.n == 3 and g.degree_sequence() == (1, 1, 2)


_CANON_CAP = 8


def canonical_form(g: Graph) -> tuple:
    """Exact isomorphism key by brute force over vertex relabelings (n <= 8)."""
    if g.n > _CANON_CAP:
        raise ValueError(f"canonical_form is brute force; n={g.n} exceeds {_CANON_CAP}")
    best = None
    for perm in permutations(range(g.n)):
        code = 0
        k = 0
        for i in range(g.n):
            for j in range(i + 1, g.n):
                code = code << 1 | (g.adj[perm[i]] >> perm[j] & 1)
                k += 1
        if best is None or code < best:
            best = code
    return (g.n, best)


def are_isomorphic(g: Graph, h: Graph) -> bool:
    """Brute-force isomorphism test for graphs with at most 8 vertices."""
    if g.n != h.n or g.edge_count() != h.edge_count():
        return False
    if g.degree_sequence() != h.degree_sequence():
        return False
    return canonical_form(g) == canonical_form(h)
