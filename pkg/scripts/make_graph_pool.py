#!/usr/bin/env python3
"""Regenerate the packaged five-vertex graph pool (src/updom/data/graphs5.g6).

Enumerates all 2^10 labeled graphs on five vertices, deduplicates them by the
exact brute-force canonical form, and writes one graph6 line per isomorphism
class, ordered by (edge count, graph6 bytes).  The class count must come out
at the known value of 34.
"""

import sys
from itertools import combinations
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from updom.graphs import canonical_form, graph_from_edges, to_graph6

OUT = Path(__file__).resolve().parent.parent / "src" / "updom" / "data" / "graphs5.g6"


def main() -> None:
    n = 5
    pairs = list(combinations(range(n), 2))
    seen = {}
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        g = graph_from_edges(n, edges)
        key = canonical_form(g)
        if key not in seen:
            seen[key] = g
    graphs = sorted(seen.values(), key=lambda g: (g.edge_count(), to_graph6(g)))
    assert len(graphs) == 34, f"expected 34 classes, found {len(graphs)}"
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_bytes(b"\n".join(to_graph6(g) for g in graphs) + b"\n")
    print(f"wrote {len(graphs)} graphs to {OUT}")


if __name__ == "__main__":
    main()
