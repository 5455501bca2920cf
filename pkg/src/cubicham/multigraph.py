"""Labeled multigraph kernel.

Vertices are identified by their labels (unique strings); edges carry an
integer id (insertion order) plus a unique string label used for all
serialization.  Graphs are immutable after construction: every transform
returns a new graph with freshly assigned ids, preserving insertion order.
Loops contribute 2 to the degree of their vertex.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Malformed graph input or an operation precondition violation."""


class SimplifyError(GraphError):
    """Contraction was asked to simplify but would have to merge edges."""


@dataclass(frozen=True)
class EdgeRecord:
    id: int
    label: str
    u: str
    v: str

    @property
    def ends(self) -> tuple[str, str]:
        return (self.u, self.v)

    def is_loop(self) -> bool:
        return self.u == self.v

    def other_end(self, vertex: str) -> str:
        if vertex == self.u:
            return self.v
        if vertex == self.v:
            return self.u
        raise GraphError(f"vertex {vertex!r} is not an end of edge {self.label!r}")


class MultiGraph:
    """Finite multigraph with labeled vertices and edges, loops allowed."""

    __slots__ = ("vertices", "edges", "_vset", "_incident", "_by_label")

    def __init__(self, vertices: Sequence[str], edges: Sequence[tuple[str | None, str, str]]):
        vs = tuple(vertices)
        if len(set(vs)) != len(vs):
            raise GraphError("duplicate vertex label")
        self.vertices: tuple[str, ...] = vs
        self._vset = frozenset(vs)
        recs = []
        labels: set[str] = set()
        for i, (label, u, v) in enumerate(edges):
            if u not in self._vset:
                raise GraphError(f"unknown endpoint label {u!r}")
            if v not in self._vset:
                raise GraphError(f"unknown endpoint label {v!r}")
            lab = label if label is not None else f"_e{i}"
            if lab in labels:
                raise GraphError(f"duplicate edge label {lab!r}")
            labels.add(lab)
            recs.append(EdgeRecord(i, lab, u, v))
        self.edges: tuple[EdgeRecord, ...] = tuple(recs)
        self._by_label = {e.label: e for e in self.edges}
        inc: dict[str, list[int]] = {v: [] for v in vs}
        for e in self.edges:
            inc[e.u].append(e.id)
            if not e.is_loop():
                inc[e.v].append(e.id)
        self._incident = {v: tuple(ids) for v, ids in inc.items()}

    # -- queries -----------------------------------------------------------

    def __contains__(self, vertex: str) -> bool:
        return vertex in self._vset

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge(self, edge_id: int) -> EdgeRecord:
        return self.edges[edge_id]

    def edge_by_label(self, label: str) -> EdgeRecord:
        try:
            return self._by_label[label]
        except KeyError:
            raise GraphError(f"unknown edge label {label!r}") from None

    def edges_at(self, vertex: str) -> tuple[int, ...]:
        """Ids of edges incident to `vertex` (a loop appears once)."""
        try:
            return self._incident[vertex]
        except KeyError:
            raise GraphError(f"unknown vertex {vertex!r}") from None

    def degree(self, vertex: str) -> int:
        return sum(2 if self.edges[i].is_loop() else 1 for i in self.edges_at(vertex))

    def is_cubic(self) -> bool:
        return all(self.degree(v) == 3 for v in self.vertices)

    def is_nearly_cubic(self) -> bool:
        degs = sorted(self.degree(v) for v in self.vertices)
        return degs.count(2) == 1 and degs.count(3) == len(degs) - 1

    def is_simple(self) -> bool:
        seen = set()
        for e in self.edges:
            if e.is_loop():
                return False
            key = frozenset(e.ends)
            if key in seen:
                return False
            seen.add(key)
        return True

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            v = stack.pop()
            for i in self.edges_at(v):
                w = self.edges[i].other_end(v)
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def edge_cut(self, side: Iterable[str]) -> "EdgeCut":
        s = frozenset(side)
        bad = s - self._vset
        if bad:
            raise GraphError(f"cut side contains unknown vertices: {sorted(bad)}")
        cut = frozenset(e.id for e in self.edges if (e.u in s) != (e.v in s))
        return EdgeCut(side=s, cut_edges=cut)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> str:
        doc = {
            "vertices": [{"label": v} for v in self.vertices],
            "edges": [{"label": e.label, "ends": [e.u, e.v]} for e in self.edges],
        }
        return json.dumps(doc, indent=2)

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for e in self.edges:
            lines.append(f'  "{e.u}" -- "{e.v}" [label="{e.label}"];')
        lines.append("}")
        return "\n".join(lines)


@dataclass(frozen=True)
class EdgeCut:
    side: frozenset[str]
    cut_edges: frozenset[int]


def build_graph(
    vertex_labels: Sequence[str],
    edge_specs: Sequence[tuple[str | None, str, str] | tuple[str, str]] = (),
) -> MultiGraph:
    """Build a graph from vertex labels and (label, u, v) or (u, v) edge specs."""
    edges = []
    for spec in edge_specs:
        if len(spec) == 2:
            edges.append((None, spec[0], spec[1]))
        else:
            edges.append(tuple(spec))
    return MultiGraph(vertex_labels, edges)


def from_json(text: str) -> MultiGraph:
    doc = json.loads(text)
    try:
        vertices = [v["label"] for v in doc["vertices"]]
        edges = [(e["label"], e["ends"][0], e["ends"][1]) for e in doc["edges"]]
    except (KeyError, TypeError, IndexError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from exc
    return MultiGraph(vertices, edges)


# -- transforms -------------------------------------------------------------


def contract_to_dummy(
    G: MultiGraph, keep: Iterable[str], dummy_label: str, simplify: bool = False
) -> MultiGraph:
    """Merge all vertices outside `keep` into one dummy vertex.

    Edges inside the contracted set are dropped; cut edges are re-attached to
    the dummy.  With `simplify` the result must come out simple (this mirrors
    an assumption made explicit rather than silently repaired).
    """
    keep_set = frozenset(keep)
    if not keep_set:
        raise GraphError("keep set must be nonempty")
    if not keep_set < G._vset:
        raise GraphError("keep set must be a proper subset of the vertices")
    if dummy_label in keep_set:
        raise GraphError(f"dummy label {dummy_label!r} collides with a kept vertex")
    vertices = [v for v in G.vertices if v in keep_set] + [dummy_label]
    edges = []
    for e in G.edges:
        inside = (e.u in keep_set, e.v in keep_set)
        if inside == (True, True):
            edges.append((e.label, e.u, e.v))
        elif inside == (True, False):
            edges.append((e.label, e.u, dummy_label))
        elif inside == (False, True):
            edges.append((e.label, dummy_label, e.v))
        # both outside: dropped
    out = MultiGraph(vertices, edges)
    if simplify and not out.is_simple():
        raise SimplifyError("contraction produced parallel edges or loops")
    return out


def quotient(G: MultiGraph, identifications: Sequence[tuple[str, str]]) -> MultiGraph:
    """Merge vertices per the union-find closure of the given label pairs.

    All edges are retained (this may create loops and parallel edges).  Each
    merged class keeps the label of its earliest-inserted member.
    """
    parent = {v: v for v in G.vertices}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    order = {v: i for i, v in enumerate(G.vertices)}
    for a, b in identifications:
        if a not in parent:
            raise GraphError(f"unknown label {a!r}")
        if b not in parent:
            raise GraphError(f"unknown label {b!r}")
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        if order[ra] > order[rb]:
            ra, rb = rb, ra
        parent[rb] = ra

    reps = []
    seen = set()
    for v in G.vertices:
        r = find(v)
        if r not in seen:
            seen.add(r)
            reps.append(r)
    edges = [(e.label, find(e.u), find(e.v)) for e in G.edges]
    return MultiGraph(reps, edges)


def relabel_vertices(G: MultiGraph, mapping: dict[str, str]) -> MultiGraph:
    for old in mapping:
        if old not in G:
            raise GraphError(f"unknown label {old!r}")
    sub = lambda v: mapping.get(v, v)
    return MultiGraph([sub(v) for v in G.vertices], [(e.label, sub(e.u), sub(e.v)) for e in G.edges])


def disjoint_union(G1: MultiGraph, G2: MultiGraph) -> MultiGraph:
    overlap = set(G1.vertices) & set(G2.vertices)
    if overlap:
        raise GraphError(f"vertex labels overlap: {sorted(overlap)}")
    vertices = list(G1.vertices) + list(G2.vertices)
    edges = [(e.label, e.u, e.v) for e in G1.edges] + [(e.label, e.u, e.v) for e in G2.edges]
    return MultiGraph(vertices, edges)


def delete_vertex(G: MultiGraph, vertex: str) -> MultiGraph:
    if vertex not in G:
        raise GraphError(f"unknown vertex {vertex!r}")
    vertices = [v for v in G.vertices if v != vertex]
    edges = [(e.label, e.u, e.v) for e in G.edges if vertex not in e.ends]
    return MultiGraph(vertices, edges)


def add_edges(G: MultiGraph, specs: Sequence[tuple[str | None, str, str]]) -> MultiGraph:
    edges = [(e.label, e.u, e.v) for e in G.edges] + [tuple(s) for s in specs]
    return MultiGraph(G.vertices, edges)


# -- flow-based connectivity queries ----------------------------------------


class _FlowNet:
    """Unit-capacity max flow via BFS augmenting paths (Edmonds-Karp)."""

    def __init__(self) -> None:
        self.adj: dict[str, list[list]] = {}

    def add_node(self, x: str) -> None:
        self.adj.setdefault(x, [])

    def add_arc(self, u: str, v: str, cap: int) -> None:
        self.add_node(u)
        self.add_node(v)
        self.adj[u].append([v, cap, len(self.adj[v])])
        self.adj[v].append([u, 0, len(self.adj[u]) - 1])

    def max_flow(self, s: str, t: str) -> int:
        total = 0
        while True:
            prev: dict[str, tuple[str, int]] = {s: ("", -1)}
            queue = [s]
            while queue and t not in prev:
                u = queue.pop(0)
                for i, (v, cap, _) in enumerate(self.adj[u]):
                    if cap > 0 and v not in prev:
                        prev[v] = (u, i)
                        queue.append(v)
            if t not in prev:
                return total
            v = t
            while v != s:
                u, i = prev[v]
                arc = self.adj[u][i]
                arc[1] -= 1
                self.adj[arc[0]][arc[2]][1] += 1
                v = u
            total += 1


_BIG = 10**9


def min_edge_cut(G: MultiGraph, sources: Iterable[str], sink: str) -> int:
    """Maximum number of edge-disjoint source-to-sink paths (= min separating cut)."""
    src = frozenset(sources)
    if not src:
        raise GraphError("sources must be nonempty")
    if sink in src:
        raise GraphError("sink must not be a source")
    for v in src | {sink}:
        if v not in G:
            raise GraphError(f"unknown vertex {v!r}")
    net = _FlowNet()
    for e in G.edges:
        if e.is_loop():
            continue
        net.add_arc(e.u, e.v, 1)
        net.add_arc(e.v, e.u, 1)
    net.add_node(sink)
    for s in src:
        net.add_arc("__src__", s, _BIG)
    net.add_node("__src__")
    return net.max_flow("__src__", sink)


def max_vertex_disjoint_paths(G: MultiGraph, sources: Iterable[str], sink: str) -> int:
    """Maximum number of internally vertex-disjoint source-to-sink paths."""
    src = frozenset(sources)
    if not src:
        raise GraphError("sources must be nonempty")
    if sink in src:
        raise GraphError("sink must not be a source")
    free = src | {sink}  # not split; may be shared by paths
    for v in free:
        if v not in G:
            raise GraphError(f"unknown vertex {v!r}")

    def head(v: str) -> str:
        return v if v in free else v + "#in"

    def tail(v: str) -> str:
        return v if v in free else v + "#out"

    net = _FlowNet()
    for v in G.vertices:
        if v not in free:
            net.add_arc(head(v), tail(v), 1)
    for e in G.edges:
        if e.is_loop():
            continue
        net.add_arc(tail(e.u), head(e.v), 1)
        net.add_arc(tail(e.v), head(e.u), 1)
    net.add_node(sink)
    for s in src:
        net.add_arc("__src__", s, _BIG)
    net.add_node("__src__")
    return net.max_flow("__src__", sink)
