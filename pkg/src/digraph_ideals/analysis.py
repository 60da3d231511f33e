"""Decision procedures on digraphs driven by their edge and vertex ideals.

Every algebraic answer here can be cross-checked against the combinatorial
oracles in :mod:`.graphs`; where the two are expected to agree, the
functions do the check themselves and raise :class:`StructuralError` on a
mismatch.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .graphs import (
    DEFAULT_CYCLE_CAP,
    CapExceeded,
    CycleWitness,
    Digraph,
    UGraph,
    build_k_graph,
    connected_components,
    directed_path_counts,
    enumerate_cycles_oracle,
    incidence_matrix,
    orient,
    topological_sort,
    twin_names,
    witness_from_edge_set,
)
from .groebner import IdealBasis, contains, eliminate, s_polynomial
from .poly import Polynomial, TermOrder, VarTable
from .toric import rational_rank, toric_by_elimination, toric_by_saturation

DIRECTED = "directed"
UNDIRECTED = "undirected"
DEFAULT_COVER_CAP = 10_000


class StructuralError(ValueError):
    """An ideal generator does not have the shape the theory predicts."""


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class CycleEntry:
    edges: Tuple[str, ...]
    cls: str
    length: int
    binomial: Optional[str] = None

    def as_dict(self) -> dict:
        return {"edges": list(self.edges), "class": self.cls, "length": self.length}


@dataclass(frozen=True)
class CycleReport:
    cycles: Tuple[CycleEntry, ...]
    source: str
    ideal: Tuple[str, ...] = ()

    def edge_sets(self) -> Dict[FrozenSet[str], str]:
        return {frozenset(c.edges): c.cls for c in self.cycles}


@dataclass(frozen=True)
class CoverReport:
    vertex_covers: Tuple[FrozenSet[str], ...]
    source_covers: Tuple[FrozenSet[str], ...]
    sink_covers: Tuple[FrozenSet[str], ...]


@dataclass(frozen=True)
class BipartitionReport:
    directly_bipartite: bool
    sources: Tuple[str, ...]
    sinks: Tuple[str, ...]
    witness: Optional[Polynomial]
    ideal: Optional[IdealBasis]
    reason: str = ""


class DagResult(NamedTuple):
    dag: bool
    witness: Optional[Tuple[str, ...]]
    ideal_evidence: bool
    diagnostic: Optional[str] = None


class UpdResult(NamedTuple):
    upd: bool
    reason: str


# -- ideals of a digraph -------------------------------------------------------


def edge_vars(D: Digraph) -> VarTable:
    return VarTable(D.edge_labels)


def default_order(vars: VarTable) -> TermOrder:
    return TermOrder.grevlex(vars)


def _order_for(D: Digraph, order: Optional[TermOrder]) -> Tuple[VarTable, TermOrder]:
    ev = edge_vars(D)
    if order is None:
        order = default_order(ev)
    elif order.nvars != len(ev):
        raise ValueError("term order must range over the edge variables")
    return ev, order


def extended_diedge_ideal(D: Digraph, order: Optional[TermOrder] = None) -> IdealBasis:
    """I(D,E): e_h - z_i v_j for each edge [v_i, v_j], and z_i v_i - 1."""
    from .toric import extended_toric_ideal

    ev, order = _order_for(D, order)
    z = twin_names(D)
    return extended_toric_ideal(
        incidence_matrix(D), ev, order, aux=(D.vertices, [z[v] for v in D.vertices])
    )


def diedge_ideal(D: Digraph, order: Optional[TermOrder] = None, method: str = "elimination") -> IdealBasis:
    """Reduced Groebner basis of the binomial diedge ideal in the edge
    variables (the toric ideal whose columns are those of IM(D))."""
    ev, order = _order_for(D, order)
    M = incidence_matrix(D)
    if method == "elimination":
        z = twin_names(D)
        return toric_by_elimination(M, ev, order, aux=(D.vertices, [z[v] for v in D.vertices]))
    if method == "saturation":
        return toric_by_saturation(M, ev, order)
    raise ValueError(f"unknown toric method {method!r}")


def cycle_binomial(C: CycleWitness, vars: VarTable) -> Polynomial:
    """f_C: product of forward edges minus product of backward edges."""
    pos = vars.monomial({e: 1 for e in C.forward})
    neg = vars.monomial({e: 1 for e in C.backward})
    return Polynomial.binomial(vars, pos, neg)


def _split_binomial(g: Polynomial, order: TermOrder) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    names = g.vars.names
    if len(g) != 2:
        raise StructuralError(f"{g} is not a binomial")
    c, lead = g.leading_term(order)
    other = next(m for m in g.terms if m != lead)
    if g.terms[other] != -c:
        raise StructuralError(f"{g} is not of the form x^a - x^b")
    if any(k > 1 for k in lead) or any(k > 1 for k in other):
        raise StructuralError(f"{g} is not squarefree")
    pos = frozenset(names[i] for i, k in enumerate(lead) if k)
    neg = frozenset(names[i] for i, k in enumerate(other) if k)
    if pos & neg:
        raise StructuralError(f"{g} has overlapping supports")
    return pos, neg


def classify_generators(
    gb: IdealBasis, D: Digraph, verify: bool = True, cap: int = DEFAULT_CYCLE_CAP
) -> CycleReport:
    """Read each generator as a cycle: prod(e) - 1 is a directed cycle of
    length |I|, prod(e_I) - prod(e_J) an undirected one of length |I|+|J|.

    With ``verify`` every edge set is matched against the cycle oracle,
    including the orientation split.
    """
    if gb.vars != edge_vars(D):
        raise ValueError("basis is not over the edge variables of D")
    oracle = {}
    if verify and gb.generators:
        oracle = {c.edge_set: c for c in enumerate_cycles_oracle(D, cap)}
    ei = D.edge_index()
    entries = []
    for g in gb.generators:
        pos, neg = _split_binomial(g, gb.order)
        cls = DIRECTED if not neg else UNDIRECTED
        edges = tuple(sorted(pos | neg, key=ei.__getitem__))
        if verify:
            w = oracle.get(pos | neg)
            if w is None:
                raise StructuralError(f"{g} does not correspond to a cycle of the digraph")
            if w.directed != (cls == DIRECTED) or {w.forward, w.backward} != {pos, neg}:
                raise StructuralError(f"{g} disagrees with the orientation of its cycle")
        length = len(pos) + len(neg)
        entries.append(CycleEntry(edges, cls, length, g.render(gb.order)))
    entries.sort(key=lambda c: [ei[e] for e in c.edges])
    return CycleReport(tuple(entries), "toric-generators", tuple(gb.rendered()))


def oracle_cycle_report(D: Digraph, cap: int = DEFAULT_CYCLE_CAP) -> CycleReport:
    ei = D.edge_index()
    entries = []
    for c in enumerate_cycles_oracle(D, cap):
        edges = tuple(sorted(c.edges, key=ei.__getitem__))
        entries.append(CycleEntry(edges, DIRECTED if c.directed else UNDIRECTED, len(c)))
    return CycleReport(tuple(entries), "oracle")


def cycles(D: Digraph, order: Optional[TermOrder] = None, method: str = "elimination") -> CycleReport:
    return classify_generators(diedge_ideal(D, order, method), D)


# -- DAG and UPD ---------------------------------------------------------------


def _has_directed_generator(gb: IdealBasis) -> bool:
    one = gb.vars.one()
    return any(len(g) == 2 and one in g.terms for g in gb.generators)


def is_dag(D: Digraph, order: Optional[TermOrder] = None, gb: Optional[IdealBasis] = None) -> DagResult:
    """Decided by topological sort; the ideal only supplies evidence.

    ``ideal_evidence`` says whether the reduced basis has a generator of
    the form prod(e) - 1.
    """
    topo, witness = topological_sort(D)
    if gb is None:
        gb = diedge_ideal(D, order)
    evidence = _has_directed_generator(gb)
    dag = topo is not None
    diagnostic = None
    if dag and evidence:
        diagnostic = "basis has a prod(e)-1 generator but the digraph is acyclic"
    elif not dag and not evidence:
        diagnostic = "directed cycle found but no prod(e)-1 generator in this basis"
    return DagResult(dag, witness.edges if witness else None, evidence, diagnostic)


def is_upd(D: Digraph, order: Optional[TermOrder] = None, gb: Optional[IdealBasis] = None) -> UpdResult:
    """UPD test on the diedge ideal: it is (0), or every generator is
    prod(e) - 1 and these products are pairwise coprime."""
    if gb is None:
        gb = diedge_ideal(D, order)
    if gb.is_zero_ideal():
        return UpdResult(True, "diedge ideal is (0): no cycles")
    one = gb.vars.one()
    supports = []
    for g in gb.generators:
        if not (len(g) == 2 and one in g.terms):
            return UpdResult(False, f"generator {g.render(gb.order)} is not of the form prod(e) - 1")
        supports.append((g, g.support()))
    for a in range(len(supports)):
        for b in range(a + 1, len(supports)):
            if supports[a][1] & supports[b][1]:
                ga, gb_ = supports[a][0], supports[b][0]
                return UpdResult(False, f"generators {ga} and {gb_} share an edge")
    return UpdResult(True, f"{len(supports)} pairwise coprime directed-cycle generators")


def unique_directed_paths(D: Digraph) -> bool:
    """Every reachable ordered pair is joined by exactly one elementary
    directed path (exhaustive enumeration)."""
    return all(c == 1 for c in directed_path_counts(D, limit=2).values())


def cycles_directed_and_sparse(D: Digraph, cap: int = DEFAULT_CYCLE_CAP) -> bool:
    """Every cycle is directed and two cycles share at most one vertex."""
    cs = enumerate_cycles_oracle(D, cap)
    if any(not c.directed for c in cs):
        return False
    vsets = [set(c.vertices) for c in cs]
    return all(len(vsets[a] & vsets[b]) <= 1 for a in range(len(cs)) for b in range(a + 1, len(cs)))


def symmetric_difference_cycle(
    C1: CycleWitness, C2: CycleWitness, D: Digraph, order: Optional[TermOrder] = None
) -> CycleWitness:
    """The undirected cycle on the symmetric difference of two directed
    cycles that share an edge, read off the S-polynomial of their
    binomials."""
    if not (C1.directed and C2.directed):
        raise ValueError("both cycles must be directed")
    if not (C1.edge_set & C2.edge_set):
        raise ValueError("cycles are edge-disjoint")
    ev = edge_vars(D)
    if order is None:
        order = TermOrder.lex(ev)
    s = s_polynomial(cycle_binomial(C1, ev), cycle_binomial(C2, ev), order)
    if not s:
        raise ValueError("the cycles coincide; the symmetric difference is empty")
    labels = [ev.names[i] for i in sorted(s.support())]
    w = witness_from_edge_set(D, labels)
    if w is None:
        raise StructuralError(f"S-polynomial {s} is not supported on a single elementary cycle")
    return w


# -- linear ideals -------------------------------------------------------------


def extended_linear_ideal(D: Digraph, order: Optional[TermOrder] = None) -> IdealBasis:
    """LI(D,E): e_h + v_i - v_j for each edge [v_i, v_j]."""
    ev, order = _order_for(D, order)
    big = ev.extend(_vertex_names(D))
    gens = []
    for h, e in enumerate(D.edges):
        t = big.names[D.m + D.vertices.index(e.tail)]
        hd = big.names[D.m + D.vertices.index(e.head)]
        gens.append(
            Polynomial.variable(big, e.label) + Polynomial.variable(big, t) - Polynomial.variable(big, hd)
        )
    return IdealBasis.of(gens, big, order.extended(D.n))


def _vertex_names(D: Digraph) -> List[str]:
    taken = set(D.edge_labels)
    out = []
    for v in D.vertices:
        name = v
        while name in taken:
            name = "_" + name
        taken.add(name)
        out.append(name)
    return out


def _integral(p: Polynomial) -> Polynomial:
    den = 1
    for c in p.terms.values():
        den = lcm(den, c.denominator)
    return p * den if den != 1 else p


def linear_edge_ideal(D: Digraph, order: Optional[TermOrder] = None) -> List[Polynomial]:
    """Integer linear forms in the edge variables spanning the cycle space:
    the vertex variables are eliminated from LI(D,E)."""
    ext = extended_linear_ideal(D, order)
    small = eliminate(ext, range(D.m, D.m + D.n))
    return [_integral(g) for g in small.generators]


def linear_form_vector(p: Polynomial) -> List[Fraction]:
    vec = [Fraction(0)] * len(p.vars)
    for m, c in p.terms.items():
        if sum(m) != 1:
            raise ValueError(f"{p} is not a linear form")
        vec[m.index(1)] = c
    return vec


def cycle_space_dimension(D: Digraph) -> int:
    return D.m - D.n + connected_components(D)


def in_span(vec: Sequence, basis: Sequence[Sequence]) -> bool:
    if not any(vec):
        return True
    if not basis:
        return False
    return rational_rank(list(basis) + [list(vec)]) == rational_rank(basis)


def check_cycle_in_linear_ideal(
    C: CycleWitness, D: Digraph, basis: Optional[Sequence[Polynomial]] = None
) -> bool:
    """Whether the signed linear form of C lies in the span of the linear
    edge ideal's basis."""
    if basis is None:
        basis = linear_edge_ideal(D)
    ev = edge_vars(D)
    vec = [0] * D.m
    ei = D.edge_index()
    for e, s in zip(C.edges, C.signs):
        if e not in ei:
            return False
        vec[ei[e]] = s
    rows = [linear_form_vector(p if p.vars == ev else p.restrict(ev)) for p in basis]
    return in_span(vec, rows)


def linear_cycle_report(D: Digraph, order: Optional[TermOrder] = None) -> CycleReport:
    """Basis elements of the linear edge ideal that are single cycles."""
    basis = linear_edge_ideal(D, order)
    ev = edge_vars(D)
    ei = D.edge_index()
    entries = []
    for p in basis:
        labels = [ev.names[i] for i in sorted(p.support())]
        w = witness_from_edge_set(D, labels)
        if w is None:
            continue
        coeffs = {ev.names[m.index(1)]: c for m, c in p.terms.items()}
        plus = frozenset(e for e, c in coeffs.items() if c == 1)
        minus = frozenset(e for e, c in coeffs.items() if c == -1)
        if len(plus) + len(minus) != len(coeffs) or {plus, minus} != {w.forward, w.backward}:
            continue
        cls = DIRECTED if w.directed else UNDIRECTED
        entries.append(CycleEntry(tuple(sorted(labels, key=ei.__getitem__)), cls, len(labels), str(p)))
    render_order = order if order is not None else default_order(ev)
    return CycleReport(tuple(entries), "linear-basis", tuple(p.render(render_order) for p in basis))


# -- vertex ideals, direct bipartiteness, covers -------------------------------


def vertex_ideal(G: UGraph, order: Optional[TermOrder] = None) -> IdealBasis:
    """Reduced Groebner basis of I(G,V) intersected with the vertex ring,
    where I(G,V) = (v - product of the edges at v)."""
    if G.isolated():
        raise PreconditionError(
            f"isolated vertices {G.isolated()}: strip them first (D* = K_D minus isolated vertices)"
        )
    vv = VarTable(G.vertices)
    if order is None:
        order = TermOrder.grevlex(vv)
    big = vv.extend(e.label for e in G.edges)
    gens = []
    for v in G.vertices:
        prod = {e.label: 1 for e in G.edges if v in (e.a, e.b)}
        gens.append(Polynomial.variable(big, v) - Polynomial.monomial(big, prod))
    ext = IdealBasis.of(gens, big, order.extended(G.m))
    return eliminate(ext, range(G.n, G.n + G.m))


def divertex_ideal(D: Digraph) -> IdealBasis:
    """Vertex ideal of D* (K_D without its isolated vertices)."""
    return vertex_ideal(build_k_graph(D).without_isolated())


def directly_bipartite_oracle(D: Digraph) -> Tuple[bool, Tuple[str, ...], Tuple[str, ...]]:
    """Combinatorial check: some edge exists, every vertex touching an edge
    is a pure source or a pure sink."""
    tails, heads = D.tails(), D.heads()
    ok = bool(D.edges) and not (set(tails) & set(heads))
    return ok, tuple(tails), tuple(heads)


def is_directly_bipartite(D: Digraph) -> BipartitionReport:
    """Look for prod(z_i, i in I) - prod(v_j, j in J) in the divertex ideal.

    The binomial must use every variable of D* and disjoint index sets, so
    I is the set of edge tails and J the set of edge heads.
    """
    tails, heads = D.tails(), D.heads()
    if not D.edges:
        return BipartitionReport(False, (), (), None, None, "digraph has no edges")
    I = divertex_ideal(D)
    both = [v for v in tails if v in set(heads)]
    if both:
        return BipartitionReport(
            False, tuple(tails), tuple(heads), None, I,
            f"{both[0]} has both incoming and outgoing edges",
        )
    z = twin_names(D)
    vv = I.vars
    p = Polynomial.monomial(vv, {z[v]: 1 for v in tails}) - Polynomial.monomial(vv, {v: 1 for v in heads})
    p = p.monic(I.order)
    ok = contains(I, p)
    reason = "divertex ideal contains the source/sink binomial" if ok else "binomial not in the divertex ideal"
    return BipartitionReport(ok, tuple(tails), tuple(heads), p if ok else None, I, reason)


def minimal_vertex_covers(G: UGraph, cap: int = DEFAULT_COVER_CAP) -> List[FrozenSet[str]]:
    """All minimal vertex covers, as complements of maximal independent
    sets (Bron-Kerbosch with pivoting on the complement graph)."""
    verts = list(G.vertices)
    adj = {v: set() for v in verts}
    for e in G.edges:
        adj[e.a].add(e.b)
        adj[e.b].add(e.a)
    # non-neighbours: the neighbourhood in the complement graph
    co = {v: set(verts) - adj[v] - {v} for v in verts}
    out: List[FrozenSet[str]] = []

    def bk(R: set, P: set, X: set) -> None:
        if not P and not X:
            if len(out) >= cap:
                raise CapExceeded(f"more than {cap} minimal vertex covers")
            out.append(frozenset(verts) - R)
            return
        pivot = max(P | X, key=lambda u: len(co[u] & P))
        for v in [u for u in verts if u in P and u not in co[pivot]]:
            bk(R | {v}, P & co[v], X & co[v])
            P = P - {v}
            X = X | {v}

    bk(set(), set(verts), set())
    pos = {v: i for i, v in enumerate(verts)}
    out.sort(key=lambda c: (len(c), sorted(pos[v] for v in c)))
    return out


def source_sink_covers(D: Digraph, cap: int = DEFAULT_COVER_CAP) -> CoverReport:
    """Source covers from the z-only minimal vertex covers of K_D, sink
    covers from the v-only ones, with z_i read back as v_i."""
    K = build_k_graph(D)
    z = twin_names(D)
    back = {zz: v for v, zz in z.items()}
    covers = minimal_vertex_covers(K, cap)
    vset = set(D.vertices)
    sources = tuple(frozenset(back[x] for x in c) for c in covers if c <= set(back))
    sinks = tuple(c for c in covers if c <= vset)
    return CoverReport(tuple(covers), sources, sinks)


# -- undirected graphs via orientation -----------------------------------------


def undirected_cycles_via_orientation(
    G: UGraph, seed: int, order: Optional[TermOrder] = None
) -> CycleReport:
    """Orient G at random (seeded) and read cycles of G off the diedge
    ideal of the orientation."""
    Gd = orient(G, seed)
    return classify_generators(diedge_ideal(Gd, order), Gd)
