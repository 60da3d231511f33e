"""Simple digraphs and undirected graphs, the auxiliary graphs H_D and K_D,
and purely combinatorial oracles (cycles, topological order, matchings,
bipartitions) used to check the algebraic answers."""

from __future__ import annotations

import random
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .toric import IntMatrix

DEFAULT_CYCLE_CAP = 10_000


class GraphError(ValueError):
    """Invalid graph: loops, duplicate or antiparallel edges, bad labels."""


class CapExceeded(RuntimeError):
    """An exhaustive enumeration hit its configured cap."""


class Edge(NamedTuple):
    label: str
    tail: str
    head: str


class UEdge(NamedTuple):
    label: str
    a: str
    b: str

    def other(self, v: str) -> str:
        return self.b if v == self.a else self.a


def _check_labels(vertices: Sequence[str], edges: Sequence[Tuple[str, str, str]]) -> None:
    if len(set(vertices)) != len(vertices):
        dup = next(v for v in vertices if list(vertices).count(v) > 1)
        raise GraphError(f"duplicate vertex {dup!r}")
    seen = set()
    vset = set(vertices)
    for label, x, y in edges:
        if label in seen:
            raise GraphError(f"duplicate edge label {label!r}")
        seen.add(label)
        for v in (x, y):
            if v not in vset:
                raise GraphError(f"edge {label!r} uses unknown vertex {v!r}")
        if x == y:
            raise GraphError(f"edge {label!r} is a loop at {x!r}")
    clash = seen & vset
    if clash:
        raise GraphError(f"label {sorted(clash)[0]!r} names both a vertex and an edge")


@dataclass(frozen=True)
class Digraph:
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        vertices = tuple(self.vertices)
        edges = tuple(Edge(*e) for e in self.edges)
        _check_labels(vertices, edges)
        pairs = set()
        for e in edges:
            if (e.tail, e.head) in pairs:
                raise GraphError(f"duplicate edge {e.tail}->{e.head} ({e.label})")
            if (e.head, e.tail) in pairs:
                raise GraphError(f"antiparallel edges between {e.tail} and {e.head} ({e.label})")
            pairs.add((e.tail, e.head))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_pairs(cls, n: int, pairs: Sequence[Tuple[int, int]]) -> "Digraph":
        """Vertices v1..vn and edges e1..em from 1-based (tail, head) pairs."""
        vs = tuple(f"v{i}" for i in range(1, n + 1))
        es = tuple(Edge(f"e{h}", f"v{a}", f"v{b}") for h, (a, b) in enumerate(pairs, 1))
        return cls(vs, es)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def edge_labels(self) -> Tuple[str, ...]:
        return tuple(e.label for e in self.edges)

    def edge(self, label: str) -> Edge:
        for e in self.edges:
            if e.label == label:
                return e
        raise KeyError(label)

    def edge_index(self) -> Dict[str, int]:
        return {e.label: h for h, e in enumerate(self.edges)}

    def vertex_index(self) -> Dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def out_edges(self) -> Dict[str, List[Edge]]:
        out = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.tail].append(e)
        return out

    def in_edges(self) -> Dict[str, List[Edge]]:
        inn = {v: [] for v in self.vertices}
        for e in self.edges:
            inn[e.head].append(e)
        return inn

    def tails(self) -> List[str]:
        """Vertices with at least one outgoing edge, in vertex order."""
        ts = {e.tail for e in self.edges}
        return [v for v in self.vertices if v in ts]

    def heads(self) -> List[str]:
        hs = {e.head for e in self.edges}
        return [v for v in self.vertices if v in hs]


@dataclass(frozen=True)
class UGraph:
    vertices: Tuple[str, ...]
    edges: Tuple[UEdge, ...]

    def __post_init__(self):
        vertices = tuple(self.vertices)
        edges = tuple(UEdge(*e) for e in self.edges)
        _check_labels(vertices, edges)
        pairs = set()
        for e in edges:
            key = frozenset((e.a, e.b))
            if key in pairs:
                raise GraphError(f"duplicate edge {e.a}--{e.b} ({e.label})")
            pairs.add(key)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency(self) -> Dict[str, List[Tuple[str, str]]]:
        """vertex -> [(neighbour, edge label)] in edge order."""
        adj = {v: [] for v in self.vertices}
        for e in self.edges:
            adj[e.a].append((e.b, e.label))
            adj[e.b].append((e.a, e.label))
        return adj

    def isolated(self) -> List[str]:
        used = {v for e in self.edges for v in (e.a, e.b)}
        return [v for v in self.vertices if v not in used]

    def without_isolated(self) -> "UGraph":
        drop = set(self.isolated())
        return UGraph(tuple(v for v in self.vertices if v not in drop), self.edges)

    def components(self) -> List[List[str]]:
        adj = self.adjacency()
        seen = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y, _ in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(comp)
        return comps


Matching = FrozenSet[str]


@dataclass(frozen=True)
class CycleWitness:
    """An elementary cycle given as a closed traversal.

    ``vertices[k]`` is where ``edges[k]`` starts during the traversal; the
    sign is +1 when the edge is traversed along its orientation.
    """

    edges: Tuple[str, ...]
    signs: Tuple[int, ...]
    vertices: Tuple[str, ...] = field(default=())

    @property
    def directed(self) -> bool:
        return all(s == 1 for s in self.signs)

    @property
    def edge_set(self) -> FrozenSet[str]:
        return frozenset(self.edges)

    @property
    def forward(self) -> FrozenSet[str]:
        return frozenset(e for e, s in zip(self.edges, self.signs) if s > 0)

    @property
    def backward(self) -> FrozenSet[str]:
        return frozenset(e for e, s in zip(self.edges, self.signs) if s < 0)

    def __len__(self) -> int:
        return len(self.edges)

    def signed_vector(self, D: Digraph) -> List[int]:
        idx = D.edge_index()
        x = [0] * D.m
        for e, s in zip(self.edges, self.signs):
            x[idx[e]] = s
        return x


# -- basic constructions -----------------------------------------------------


def incidence_matrix(D: Digraph) -> IntMatrix:
    """n x m matrix: -1 where an edge leaves a vertex, +1 where it arrives."""
    vi = D.vertex_index()
    rows = [[0] * D.m for _ in range(D.n)]
    for h, e in enumerate(D.edges):
        rows[vi[e.tail]][h] = -1
        rows[vi[e.head]][h] = 1
    return IntMatrix(tuple(tuple(r) for r in rows), D.m)


def underlying(D: Digraph) -> UGraph:
    return UGraph(D.vertices, tuple(UEdge(e.label, e.tail, e.head) for e in D.edges))


def twin_name(v: str, taken: Iterable[str] = ()) -> str:
    """Name of the z-vertex paired with ``v``: v3 -> z3, otherwise z_<v>."""
    m = re.fullmatch(r"v(\d+)", v)
    name = f"z{m.group(1)}" if m else f"z_{v}"
    taken = set(taken)
    while name in taken:
        name = "_" + name
    return name


def twin_names(D: Digraph) -> Dict[str, str]:
    taken = set(D.vertices) | set(D.edge_labels)
    out = {}
    for v in D.vertices:
        z = twin_name(v, taken)
        taken.add(z)
        out[v] = z
    return out


def matching_labels(D: Digraph) -> Dict[str, str]:
    """Labels f1..fn for the edges {z_i, v_i} of H_D."""
    taken = set(D.vertices) | set(D.edge_labels) | set(twin_names(D).values())
    out = {}
    for i, v in enumerate(D.vertices, 1):
        name = f"f{i}"
        while name in taken:
            name = "_" + name
        taken.add(name)
        out[v] = name
    return out


def build_k_graph(D: Digraph) -> UGraph:
    """K_D: vertices v_i and z_i, one edge {z_i, v_j} per edge [v_i, v_j]."""
    z = twin_names(D)
    verts = D.vertices + tuple(z[v] for v in D.vertices)
    edges = tuple(UEdge(e.label, z[e.tail], e.head) for e in D.edges)
    return UGraph(verts, edges)


def build_h_graph(D: Digraph) -> UGraph:
    """H_D: K_D plus the matching edges f_i = {z_i, v_i}."""
    K = build_k_graph(D)
    z = twin_names(D)
    f = matching_labels(D)
    extra = tuple(UEdge(f[v], z[v], v) for v in D.vertices)
    return UGraph(K.vertices, K.edges + extra)


def h_matching(D: Digraph) -> Matching:
    """The perfect matching {f_1, ..., f_n} of H_D."""
    return frozenset(matching_labels(D).values())


# -- bipartiteness and matchings ---------------------------------------------


def is_bipartite(G: UGraph) -> Optional[Tuple[FrozenSet[str], FrozenSet[str]]]:
    """A 2-colouring as (side 0, side 1), or None when an odd cycle exists.

    Each component is coloured from its first vertex in ``G.vertices``,
    which lands on side 0.
    """
    adj = G.adjacency()
    colour: Dict[str, int] = {}
    for s in G.vertices:
        if s in colour:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y, _ in adj[x]:
                if y not in colour:
                    colour[y] = 1 - colour[x]
                    queue.append(y)
                elif colour[y] == colour[x]:
                    return None
    left = frozenset(v for v in G.vertices if colour[v] == 0)
    right = frozenset(v for v in G.vertices if colour[v] == 1)
    return left, right


def perfect_matching(G: UGraph) -> Optional[Matching]:
    """A perfect matching of a bipartite graph by augmenting paths, or None."""
    parts = is_bipartite(G)
    if parts is None:
        raise GraphError("perfect_matching only supports bipartite graphs")
    if G.n % 2:
        return None
    left, right = parts
    if len(left) != len(right):
        return None
    adj = G.adjacency()
    mate: Dict[str, Tuple[str, str]] = {}  # right vertex -> (left vertex, edge)

    def augment(u: str, seen: set) -> bool:
        for w, label in adj[u]:
            if w in seen:
                continue
            seen.add(w)
            if w not in mate or augment(mate[w][0], seen):
                mate[w] = (u, label)
                return True
        return False

    for u in G.vertices:
        if u in left and not augment(u, set()):
            return None
    return frozenset(label for _, label in mate.values())


def is_matching(G: UGraph, M: Iterable[str]) -> bool:
    by_label = {e.label: e for e in G.edges}
    used = set()
    for label in M:
        e = by_label.get(label)
        if e is None or e.a in used or e.b in used:
            return False
        used.update((e.a, e.b))
    return True


def is_perfect_matching(G: UGraph, M: Iterable[str]) -> bool:
    M = list(M)
    return is_matching(G, M) and 2 * len(M) == G.n


def digraph_from_bipartite(G: UGraph, M: Iterable[str]) -> Digraph:
    """Rebuild D with H_D = G from a bipartite G and a perfect matching M.

    Side 0 of :func:`is_bipartite` plays the role of the v-vertices; each
    matched partner on side 1 is the corresponding z-vertex.  Every
    unmatched edge {z_i, v_j} becomes [v_i, v_j] with the same label.
    """
    parts = is_bipartite(G)
    if parts is None:
        raise GraphError("graph is not bipartite")
    M = frozenset(M)
    if not is_perfect_matching(G, M):
        raise GraphError("not a perfect matching")
    left, _ = parts
    partner: Dict[str, str] = {}
    for e in G.edges:
        if e.label in M:
            v, z = (e.a, e.b) if e.a in left else (e.b, e.a)
            partner[z] = v
    vertices = tuple(v for v in G.vertices if v in left)
    edges = []
    for e in G.edges:
        if e.label in M:
            continue
        v, z = (e.a, e.b) if e.a in left else (e.b, e.a)
        edges.append(Edge(e.label, partner[z], v))
    return Digraph(vertices, tuple(edges))


# -- cycles ------------------------------------------------------------------


def _natural_key(label: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", label)]


def witness_from_cycle(D: Digraph, vertices: Sequence[str], edges: Sequence[str]) -> CycleWitness:
    """Orient a closed traversal so a directed cycle reads all +1.

    Undirected cycles keep whichever direction has more forward edges;
    ties go to the direction whose first edge label is smaller.
    """
    by_label = {e.label: e for e in D.edges}
    k = len(edges)

    def signs_for(vs, es):
        return tuple(1 if by_label[e].tail == vs[i] else -1 for i, e in enumerate(es))

    fwd = signs_for(vertices, edges)
    # reverse traversal: start at the same vertex, walk the other way
    rv = (vertices[0],) + tuple(reversed(vertices[1:]))
    re_ = tuple(reversed(edges))
    bwd = signs_for(rv, re_)
    a, b = sum(fwd), sum(bwd)
    if a > b or (a == b and _natural_key(edges[0]) <= _natural_key(re_[0])):
        return CycleWitness(tuple(edges), fwd, tuple(vertices))
    assert len(re_) == k
    return CycleWitness(re_, bwd, rv)


def witness_from_edge_set(D: Digraph, labels: Iterable[str]) -> Optional[CycleWitness]:
    """The cycle formed by ``labels``, or None if they are not one
    elementary cycle."""
    labels = list(dict.fromkeys(labels))
    if len(labels) < 3:
        return None
    try:
        es = [D.edge(l) for l in labels]
    except KeyError:
        return None
    inc: Dict[str, List[Edge]] = {}
    for e in es:
        inc.setdefault(e.tail, []).append(e)
        inc.setdefault(e.head, []).append(e)
    if any(len(v) != 2 for v in inc.values()):
        return None
    order_v = [min(inc, key=D.vertices.index)]
    order_e: List[str] = []
    prev = None
    while True:
        v = order_v[-1]
        nxt = next(e for e in inc[v] if e.label != prev and e.label not in order_e)
        order_e.append(nxt.label)
        prev = nxt.label
        w = nxt.head if nxt.tail == v else nxt.tail
        if w == order_v[0]:
            break
        order_v.append(w)
        if len(order_e) > len(es):
            return None
    if len(order_e) != len(es):
        return None
    return witness_from_cycle(D, order_v, order_e)


def enumerate_cycles_oracle(D: Digraph, cap: int = DEFAULT_CYCLE_CAP) -> List[CycleWitness]:
    """All elementary cycles of the underlying graph.

    Each cycle is rooted at its smallest vertex (in ``D.vertices`` order)
    and the two traversal directions are deduplicated by edge set.  Output
    is sorted by the edge positions of the cycle, i.e. lexicographically by
    edge-label set.
    """
    vi = D.vertex_index()
    ei = D.edge_index()
    adj: Dict[str, List[Tuple[str, str]]] = {v: [] for v in D.vertices}
    for e in D.edges:
        adj[e.tail].append((e.head, e.label))
        adj[e.head].append((e.tail, e.label))
    found: Dict[FrozenSet[str], CycleWitness] = {}

    for root in D.vertices:
        r = vi[root]
        path_v = [root]
        path_e: List[str] = []
        on_path = {root}

        def dfs(x: str) -> None:
            for y, label in adj[x]:
                if path_e and label == path_e[-1]:
                    continue
                if y == root and len(path_e) >= 2:
                    es = path_e + [label]
                    key = frozenset(es)
                    if key not in found:
                        if len(found) >= cap:
                            raise CapExceeded(f"more than {cap} cycles")
                        found[key] = witness_from_cycle(D, list(path_v), es)
                    continue
                if y in on_path or vi[y] < r:
                    continue
                path_v.append(y)
                path_e.append(label)
                on_path.add(y)
                dfs(y)
                on_path.discard(y)
                path_e.pop()
                path_v.pop()

        dfs(root)
    return sorted(found.values(), key=lambda c: sorted(ei[e] for e in c.edges))


def topological_sort(D: Digraph) -> Tuple[Optional[List[str]], Optional[CycleWitness]]:
    """(order, None) for a DAG, else (None, a directed cycle)."""
    indeg = {v: 0 for v in D.vertices}
    out = D.out_edges()
    for e in D.edges:
        indeg[e.head] += 1
    queue = deque(v for v in D.vertices if indeg[v] == 0)
    order = []
    while queue:
        v = queue.popleft()
        order.append(v)
        for e in out[v]:
            indeg[e.head] -= 1
            if indeg[e.head] == 0:
                queue.append(e.head)
    if len(order) == D.n:
        return order, None
    # every leftover vertex has a leftover predecessor; walk backwards
    left = {v for v in D.vertices if indeg[v] > 0}
    pred = {}
    for e in D.edges:
        if e.tail in left and e.head in left and e.head not in pred:
            pred[e.head] = e
    v = next(x for x in D.vertices if x in left)
    seen: Dict[str, int] = {}
    walk: List[Edge] = []
    while v not in seen:
        seen[v] = len(walk)
        e = pred[v]
        walk.append(e)
        v = e.tail
    cyc = walk[seen[v]:]
    cyc.reverse()
    return None, CycleWitness(
        tuple(e.label for e in cyc), (1,) * len(cyc), tuple(e.tail for e in cyc)
    )


def directed_path_counts(D: Digraph, limit: int = 2) -> Dict[Tuple[str, str], int]:
    """Number of elementary directed paths u -> v (u != v) for every
    reachable pair, counting each pair up to ``limit``."""
    out = D.out_edges()
    counts: Dict[Tuple[str, str], int] = {}

    for u in D.vertices:
        on_path = {u}

        def dfs(x: str) -> None:
            for e in out[x]:
                y = e.head
                if y in on_path:
                    continue
                c = counts.get((u, y), 0)
                if c < limit:
                    counts[(u, y)] = c + 1
                on_path.add(y)
                dfs(y)
                on_path.discard(y)

        dfs(u)
    return counts


def connected_components(D: Digraph) -> int:
    return len(underlying(D).components())


# -- orientation and random graphs -------------------------------------------


def orient(G: UGraph, seed: int) -> Digraph:
    """A digraph over G's vertices with each edge given a random direction."""
    rng = random.Random(seed)
    edges = []
    for e in G.edges:
        a, b = (e.a, e.b) if rng.random() < 0.5 else (e.b, e.a)
        edges.append(Edge(e.label, a, b))
    return Digraph(G.vertices, tuple(edges))


def random_digraph(n: int, m: int, seed: int) -> Digraph:
    """A simple digraph on v1..vn with m edges e1..em, no antiparallel pairs."""
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    if m > len(pairs):
        raise GraphError(f"a simple digraph on {n} vertices has at most {len(pairs)} edges")
    rng = random.Random(seed)
    chosen = rng.sample(pairs, m)
    return Digraph.from_pairs(n, [(a, b) if rng.random() < 0.5 else (b, a) for a, b in chosen])


def cycle_graph(n: int, prefix: str = "v") -> UGraph:
    vs = tuple(f"{prefix}{i}" for i in range(1, n + 1))
    es = tuple(UEdge(f"e{i}", vs[i - 1], vs[i % n]) for i in range(1, n + 1))
    return UGraph(vs, es)
