"""Small exact graph toolkit: balls, induced subgraphs, line graphs,
matchings, independent sets, cliques and the induced star number.

Everything here works on :class:`Graph`, an immutable simple graph over the
node ids ``0..n-1``.  Enumeration routines are exponential and guarded by
explicit size caps; exceeding one raises :class:`SizeLimitError`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

Edge = tuple[int, int]

MATCHING_EDGE_CAP = 24
ENUMERATION_NODE_CAP = 20
ODD_HOLE_NODE_CAP = 16


class SizeLimitError(ValueError):
    """Raised when an instance exceeds an enumeration cap."""


def _check_cap(size: int, cap: int, what: str) -> None:
    if size > cap:
        raise SizeLimitError(f"{what} has size {size}, above the cap of {cap}")


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on nodes ``0..n-1``.

    ``edges`` is kept as a sorted tuple of ``(u, v)`` pairs with ``u < v``.
    Construct through :func:`build_graph` to get validation.
    """

    n: int
    edges: tuple[Edge, ...]
    _adj: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)
    _masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))
        object.__setattr__(
            self, "_masks", tuple(sum(1 << w for w in a) for a in adj)
        )

    @property
    def nodes(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def neighbor_mask(self, v: int) -> int:
        return self._masks[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self._adj[u]

    def incident_edges(self, v: int) -> list[Edge]:
        return [norm_edge(v, w) for w in sorted(self._adj[v])]

    def __len__(self) -> int:
        return self.n


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise ValueError(f"node count must be nonnegative, got {n}")
    seen: set[Edge] = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if u == v:
            raise ValueError(f"self-loop at node {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) has a node outside 0..{n - 1}")
        seen.add(norm_edge(u, v))
    return Graph(n, tuple(sorted(seen)))


def empty_graph(n: int) -> Graph:
    return Graph(n, ())


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 nodes")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with the hub at node 0."""
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, combinations(range(n), 2))


def _check_node(G: Graph, v: int) -> None:
    if not 0 <= v < G.n:
        raise ValueError(f"node {v} not in graph with {G.n} nodes")


def ball(G: Graph, v: int, d: int) -> frozenset[int]:
    """Nodes at hop distance at most ``d`` from ``v``."""
    _check_node(G, v)
    if d < 0:
        raise ValueError("radius must be nonnegative")
    return frozenset(distances_from(G, v, d))


def distances_from(G: Graph, v: int, limit: int | None = None) -> dict[int, int]:
    """BFS distances from ``v``, optionally truncated at ``limit`` hops."""
    dist = {v: 0}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        if limit is not None and dist[u] >= limit:
            continue
        for w in sorted(G.neighbors(u)):
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def induced_subgraph(G: Graph, W: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced by ``W``; nodes are relabelled ``0..|W|-1`` in
    ascending order of their original id.  Returns the graph and the
    original-to-new id map."""
    members = sorted(set(W))
    for v in members:
        _check_node(G, v)
    relabel = {v: i for i, v in enumerate(members)}
    edges = [
        (relabel[u], relabel[v])
        for u, v in G.edges
        if u in relabel and v in relabel
    ]
    return Graph(len(members), tuple(sorted(edges))), relabel


class EdgeIndexMap:
    """Bijection between edges of a graph and vertices of its line graph."""

    def __init__(self, edges: Iterable[Edge]):
        self.edges: tuple[Edge, ...] = tuple(edges)
        self._index = {e: i for i, e in enumerate(self.edges)}

    def vertex_of(self, edge: tuple[int, int]) -> int:
        return self._index[norm_edge(*edge)]

    def edge_of(self, vertex: int) -> Edge:
        return self.edges[vertex]

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)


def line_graph(G: Graph) -> tuple[Graph, EdgeIndexMap]:
    emap = EdgeIndexMap(G.edges)
    lg_edges = set()
    for v in G.nodes:
        inc = [emap.vertex_of(e) for e in G.incident_edges(v)]
        lg_edges.update(combinations(sorted(inc), 2))
    return Graph(len(emap), tuple(sorted(lg_edges))), emap


def enumerate_matchings(
    G: Graph, cap: int = MATCHING_EDGE_CAP
) -> list[frozenset[Edge]]:
    """All matchings of ``G``, the empty one included."""
    _check_cap(len(G.edges), cap, "edge set")
    edges = G.edges
    out: list[frozenset[Edge]] = []

    def extend(start: int, used: int, chosen: list[Edge]) -> None:
        out.append(frozenset(chosen))
        for i in range(start, len(edges)):
            u, v = edges[i]
            if used >> u & 1 or used >> v & 1:
                continue
            chosen.append(edges[i])
            extend(i + 1, used | 1 << u | 1 << v, chosen)
            chosen.pop()

    extend(0, 0, [])
    return out


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_to_set(mask: int) -> frozenset[int]:
    return frozenset(_bits(mask))


def enumerate_independent_sets(
    G: Graph, cap: int = ENUMERATION_NODE_CAP
) -> list[frozenset[int]]:
    """All independent sets of ``G``, the empty set included."""
    _check_cap(G.n, cap, "node set")
    out: list[frozenset[int]] = []

    def extend(start: int, blocked: int, chosen: int) -> None:
        out.append(mask_to_set(chosen))
        for v in range(start, G.n):
            if not blocked >> v & 1:
                extend(v + 1, blocked | G.neighbor_mask(v), chosen | 1 << v)

    extend(0, 0, 0)
    return out


def _bron_kerbosch(n: int, masks: Iterable[int]) -> list[int]:
    """Maximal cliques as bitmasks for the graph given by neighbour masks."""
    masks = list(masks)
    found: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            found.append(r)
            return
        pivot_pool = p | x
        pivot = max(_bits(pivot_pool), key=lambda u: (masks[u] & p).bit_count())
        for v in _bits(p & ~masks[pivot]):
            expand(r | 1 << v, p & masks[v], x & masks[v])
            p &= ~(1 << v)
            x |= 1 << v

    expand(0, (1 << n) - 1, 0)
    return found


def maximal_cliques(G: Graph, cap: int = ENUMERATION_NODE_CAP) -> list[frozenset[int]]:
    _check_cap(G.n, cap, "node set")
    if G.n == 0:
        return []
    cliques = [mask_to_set(m) for m in _bron_kerbosch(G.n, G._masks)]
    return sorted(cliques, key=lambda c: sorted(c))


def maximal_independent_sets(
    G: Graph, cap: int = ENUMERATION_NODE_CAP
) -> list[frozenset[int]]:
    _check_cap(G.n, cap, "node set")
    if G.n == 0:
        return [frozenset()]
    full = (1 << G.n) - 1
    comp = [full & ~G.neighbor_mask(v) & ~(1 << v) for v in G.nodes]
    sets = [mask_to_set(m) for m in _bron_kerbosch(G.n, comp)]
    return sorted(sets, key=lambda s: sorted(s))


def _max_independent_in(G: Graph, candidates: int) -> int:
    """Largest independent subset (as a mask) of the nodes in ``candidates``."""
    best = 0

    def search(chosen: int, remaining: int) -> None:
        nonlocal best
        if chosen.bit_count() + remaining.bit_count() <= best.bit_count():
            return
        if not remaining:
            best = chosen
            return
        v = (remaining & -remaining).bit_length() - 1
        rest = remaining & ~(1 << v)
        search(chosen | 1 << v, rest & ~G.neighbor_mask(v))
        search(chosen, rest)

    search(0, candidates)
    return best


def independence_number(G: Graph, cap: int = ENUMERATION_NODE_CAP) -> int:
    _check_cap(G.n, cap, "node set")
    return _max_independent_in(G, (1 << G.n) - 1).bit_count()


@dataclass(frozen=True)
class InducedStar:
    size: int
    center: int | None
    leaves: frozenset[int]


def induced_star_number(G: Graph, cap: int = ENUMERATION_NODE_CAP) -> InducedStar:
    """sigma(G): the most pairwise non-adjacent neighbours any vertex has.

    Returns the value with a witnessing centre and leaf set.  Graphs without
    edges give ``InducedStar(0, None, frozenset())``.
    """
    _check_cap(G.n, cap, "node set")
    best = InducedStar(0, None, frozenset())
    for v in G.nodes:
        if G.degree(v) <= best.size:
            continue
        leaves = _max_independent_in(G, G.neighbor_mask(v))
        if leaves.bit_count() > best.size:
            best = InducedStar(leaves.bit_count(), v, mask_to_set(leaves))
    return best


def contains_claw(
    G: Graph, cap: int = ENUMERATION_NODE_CAP
) -> tuple[int, tuple[int, int, int]] | None:
    """An induced K_{1,3} as ``(center, (leaf, leaf, leaf))``, or None."""
    star = induced_star_number(G, cap)
    if star.size < 3:
        return None
    leaves = sorted(star.leaves)[:3]
    return star.center, (leaves[0], leaves[1], leaves[2])


def _has_induced_cycle(G: Graph, length: int) -> bool:
    # Cycles are rooted at their smallest vertex; every path vertex other
    # than the root must be larger than it.
    for root in G.nodes:
        allowed = ~((1 << (root + 1)) - 1)
        root_nbrs = G.neighbor_mask(root)

        def walk(last: int, path_mask: int, size: int) -> bool:
            # path_mask excludes root; interior vertices may touch only
            # their path neighbours
            for w in _bits(G.neighbor_mask(last) & allowed & ~path_mask):
                interior = path_mask & ~(1 << last)
                if G.neighbor_mask(w) & interior:
                    continue
                touches_root = bool(root_nbrs >> w & 1)
                if size + 1 == length:
                    if touches_root:
                        return True
                    continue
                if touches_root:
                    continue
                if walk(w, path_mask | 1 << w, size + 1):
                    return True
            return False

        for first in _bits(root_nbrs & allowed):
            if walk(first, 1 << first, 2):
                return True
    return False


def min_odd_hole_length(G: Graph, cap: int = ODD_HOLE_NODE_CAP) -> int | None:
    """Length of the shortest induced odd cycle of length >= 5, or None."""
    _check_cap(G.n, cap, "node set")
    for length in range(5, G.n + 1, 2):
        if _has_induced_cycle(G, length):
            return length
    return None


def replace_vertex_with_clique(G: Graph, v: int, r: int) -> Graph:
    """G[v <- K_r].

    Nodes of ``G - v`` keep their relative order as ``0..n-2``; the clique
    occupies ``n-1..n+r-2`` and each clique node is joined to every former
    neighbour of ``v``.
    """
    _check_node(G, v)
    if r < 1:
        raise ValueError("clique size must be at least 1")

    def shift(u: int) -> int:
        return u - 1 if u > v else u

    edges = [(shift(a), shift(b)) for a, b in G.edges if v not in (a, b)]
    clique = range(G.n - 1, G.n - 1 + r)
    edges.extend(combinations(clique, 2))
    for w in G.neighbors(v):
        edges.extend((shift(w), c) for c in clique)
    return build_graph(G.n - 1 + r, edges)


def is_bipartite(G: Graph) -> bool:
    colour: dict[int, int] = {}
    for s in G.nodes:
        if s in colour:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in G.neighbors(u):
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return False
    return True


def is_connected(G: Graph) -> bool:
    return G.n == 0 or len(distances_from(G, 0)) == G.n


def triangles(G: Graph) -> list[tuple[int, int, int]]:
    out = []
    for u, v in G.edges:
        for w in sorted(G.neighbors(u) & G.neighbors(v)):
            if w > v:
                out.append((u, v, w))
    return out
