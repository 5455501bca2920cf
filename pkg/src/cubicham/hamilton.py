"""Exact Hamilton-cycle enumeration, filtered counting, parity audits,
and the lollipop exchange walk for a second cycle through a fixed edge.

A Hamilton cycle is represented as a frozenset of edge ids; output lists are
always sorted by the sorted edge-id tuple, so repeated runs (and parallel
runs) produce identical order.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable

from .multigraph import GraphError, MultiGraph

HamiltonCycle = frozenset  # of edge ids

_UND, _IN, _OUT = 0, 1, 2


def is_hamilton_cycle(G: MultiGraph, edge_ids: Iterable[int]) -> bool:
    """Check the cycle invariant: spanning, connected, 2-regular, loop-free."""
    ids = set(edge_ids)
    if any(G.edges[i].is_loop() for i in ids):
        return False
    deg = {v: 0 for v in G.vertices}
    for i in ids:
        e = G.edges[i]
        deg[e.u] += 1
        deg[e.v] += 1
    if any(d != 2 for d in deg.values()) or len(ids) != G.n:
        return False
    # 2-regular spanning subgraph with |E| = |V| and connectivity = one cycle
    if not G.vertices:
        return False
    start = G.vertices[0]
    seen = {start}
    stack = [start]
    inc = {v: [i for i in G.edges_at(v) if i in ids] for v in G.vertices}
    while stack:
        v = stack.pop()
        for i in inc[v]:
            w = G.edges[i].other_end(v)
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == G.n


class _Enumerator:
    """Backtracking over edge in/out states with degree-2 propagation.

    A disjoint-set forest over vertices tracks the paths formed by in-edges
    so partial cycles are rejected as soon as they would close early.
    """

    def __init__(self, G: MultiGraph):
        self.G = G
        self.n = G.n
        self.m = G.m
        self.vidx = {v: i for i, v in enumerate(G.vertices)}
        self.ends = [(self.vidx[e.u], self.vidx[e.v]) for e in G.edges]
        self.inc: list[list[int]] = [[] for _ in range(self.n)]
        for e in G.edges:
            self.inc[self.vidx[e.u]].append(e.id)
            if not e.is_loop():
                self.inc[self.vidx[e.v]].append(e.id)

    def run(self, require: Iterable[int], forbid: Iterable[int]) -> list[HamiltonCycle]:
        n, m = self.n, self.m
        if n == 0:
            return []
        state = [_UND] * m
        in_cnt = [0] * n
        und_cnt = [0] * n
        for vi in range(n):
            und_cnt[vi] = len(self.inc[vi])
        parent = list(range(n))
        self.state, self.in_cnt, self.und_cnt, self.parent = state, in_cnt, und_cnt, parent
        self.in_total = 0
        self.closed = False
        self.trail: list[tuple] = []
        self.out: list[HamiltonCycle] = []

        seed = []
        for e in self.G.edges:
            if e.is_loop():
                seed.append((e.id, _OUT))
        for i in require:
            seed.append((i, _IN))
        for i in forbid:
            seed.append((i, _OUT))
        ok = True
        touched: list[int] = []
        for i, val in seed:
            if not self._set(i, val, touched):
                ok = False
                break
        if ok and self._propagate(touched):
            self._search()
        self.out.sort(key=lambda c: tuple(sorted(c)))
        return self.out

    def _find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            x = parent[x]
        return x

    def _set(self, i: int, val: int, touched: list[int]) -> bool:
        state = self.state
        if state[i] != _UND:
            return state[i] == val
        u, v = self.ends[i]
        state[i] = val
        self.trail.append(("e", i))
        self.und_cnt[u] -= 1
        if u != v:
            self.und_cnt[v] -= 1
        touched.append(u)
        touched.append(v)
        if val == _IN:
            if self.closed:
                return False
            if u == v:
                return False
            self.in_cnt[u] += 1
            self.in_cnt[v] += 1
            if self.in_cnt[u] > 2 or self.in_cnt[v] > 2:
                return False
            ru, rv = self._find(u), self._find(v)
            if ru == rv:
                if self.in_total + 1 != self.n:
                    return False
                self.closed = True
                self.trail.append(("c",))
            else:
                self.parent[rv] = ru
                self.trail.append(("u", rv))
            self.in_total += 1
            self.trail.append(("t",))
        return True

    def _propagate(self, touched: list[int]) -> bool:
        while touched:
            vi = touched.pop()
            need = 2 - self.in_cnt[vi]
            if need < 0:
                return False
            und = self.und_cnt[vi]
            if und < need:
                return False
            if need == 0 and und > 0:
                for i in self.inc[vi]:
                    if self.state[i] == _UND and not self._set(i, _OUT, touched):
                        return False
            elif und == need and und > 0:
                for i in self.inc[vi]:
                    if self.state[i] == _UND and not self._set(i, _IN, touched):
                        return False
        return True

    def _checkpoint(self) -> int:
        return len(self.trail)

    def _rollback(self, mark: int) -> None:
        while len(self.trail) > mark:
            tag = self.trail.pop()
            if tag[0] == "e":
                i = tag[1]
                val = self.state[i]
                self.state[i] = _UND
                u, v = self.ends[i]
                self.und_cnt[u] += 1
                if u != v:
                    self.und_cnt[v] += 1
                if val == _IN:
                    self.in_cnt[u] -= 1
                    self.in_cnt[v] -= 1
            elif tag[0] == "u":
                self.parent[tag[1]] = tag[1]
            elif tag[0] == "c":
                self.closed = False
            else:  # "t"
                self.in_total -= 1

    def _branch_edge(self) -> int:
        best, best_key = -1, None
        for i in range(self.m):
            if self.state[i] != _UND:
                continue
            u, v = self.ends[i]
            key = (-(self.in_cnt[u] + self.in_cnt[v]), self.und_cnt[u] + self.und_cnt[v], i)
            if best_key is None or key < best_key:
                best, best_key = i, key
                if key[0] == -2:
                    break
        return best

    def _search(self) -> None:
        i = self._branch_edge()
        if i < 0:
            if self.in_total == self.n and self.closed:
                cyc = frozenset(j for j in range(self.m) if self.state[j] == _IN)
                self.out.append(cyc)
            return
        for val in (_IN, _OUT):
            mark = self._checkpoint()
            touched: list[int] = []
            if self._set(i, val, touched) and self._propagate(touched):
                self._search()
            self._rollback(mark)


def _enumerate_task(args) -> list[tuple[int, ...]]:
    G, require, forbid = args
    return [tuple(sorted(c)) for c in _Enumerator(G).run(require, forbid)]


def enumerate_hamilton_cycles(
    G: MultiGraph,
    require: Iterable[int] = (),
    forbid: Iterable[int] = (),
    jobs: int = 1,
) -> list[HamiltonCycle]:
    """All Hamilton cycles of G, each once, sorted by edge-id tuple.

    `require`/`forbid` restrict to cycles containing all/none of the given
    edge ids.  With `jobs` > 1 the search space is partitioned over a process
    pool; the merged output is identical to the serial order.
    """
    require = frozenset(require)
    forbid = frozenset(forbid)
    if require & forbid:
        raise GraphError("require and forbid overlap")
    for i in require | forbid:
        if not 0 <= i < G.m:
            raise GraphError(f"unknown edge id {i}")
    if jobs <= 1 or G.m - len(require) - len(forbid) < 4:
        return _Enumerator(G).run(require, forbid)

    splits = 1
    free = [i for i in range(G.m) if i not in require and i not in forbid]
    split_edges: list[int] = []
    while splits < jobs and split_edges != free:
        split_edges.append(free[len(split_edges)])
        splits *= 2
    tasks = []
    for mask in range(1 << len(split_edges)):
        req = set(require)
        forb = set(forbid)
        for b, i in enumerate(split_edges):
            (req if mask >> b & 1 else forb).add(i)
        tasks.append((G, frozenset(req), frozenset(forb)))
    merged: list[tuple[int, ...]] = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_enumerate_task, tasks):
            merged.extend(part)
    merged.sort()
    return [frozenset(t) for t in merged]


def count_through(G: MultiGraph, require: Iterable[int] = (), forbid: Iterable[int] = ()) -> int:
    """Number of Hamilton cycles containing all of `require`, none of `forbid`."""
    return len(enumerate_hamilton_cycles(G, require, forbid))


def cycles_through(
    G: MultiGraph, require: Iterable[int] = (), forbid: Iterable[int] = ()
) -> list[HamiltonCycle]:
    return enumerate_hamilton_cycles(G, require, forbid)


@dataclass(frozen=True)
class EdgeParityReport:
    counts: dict[int, int]  # edge id -> number of Hamilton cycles through it
    total: int
    all_degrees_odd: bool
    odd_count_edges: tuple[int, ...]  # nonempty with all_degrees_odd falsifies Thomason

    @property
    def all_even(self) -> bool:
        return not self.odd_count_edges

    def to_csv(self, G: MultiGraph) -> str:
        lines = ["edge,count"]
        for e in G.edges:
            lines.append(f"{e.label},{self.counts[e.id]}")
        return "\n".join(lines)


def edge_parity_report(G: MultiGraph) -> EdgeParityReport:
    cycles = enumerate_hamilton_cycles(G)
    counts = {e.id: 0 for e in G.edges}
    for c in cycles:
        for i in c:
            counts[i] += 1
    odd_degrees = all(G.degree(v) % 2 == 1 for v in G.vertices)
    odd_edges = tuple(i for i in sorted(counts) if counts[i] % 2 == 1) if odd_degrees else ()
    return EdgeParityReport(counts, len(cycles), odd_degrees, odd_edges)


def second_cycle_lollipop(G: MultiGraph, cycle: Iterable[int], edge_id: int) -> HamiltonCycle:
    """A Hamilton cycle distinct from `cycle` through `edge_id`.

    Requires a simple graph with all degrees odd; existence is then a
    theorem, so exhausting the exchange walk without a find is a defect.
    The walk anchors the fixed edge at its second endpoint, rotates the free
    end of the resulting Hamilton path, and keeps a visited-path guard;
    extensions are tried in edge-id order for reproducibility.
    """
    C = frozenset(cycle)
    if not G.is_simple():
        raise GraphError("lollipop walk requires a simple graph")
    if any(G.degree(v) % 2 == 0 for v in G.vertices):
        raise GraphError("lollipop walk requires all degrees odd")
    if not is_hamilton_cycle(G, C):
        raise GraphError("given edge set is not a Hamilton cycle")
    if edge_id not in C:
        raise GraphError("edge must lie on the given cycle")

    e = G.edges[edge_id]
    y, x = e.v, e.u  # anchor at the second stored endpoint
    y_edges = [i for i in G.edges_at(y) if i in C]
    drop = y_edges[0] if y_edges[1] == edge_id else y_edges[1]

    # path as vertex sequence y, x, ..., free end; plus its edge set
    def cycle_to_path() -> list[str]:
        seq = [y, x]
        used = {edge_id}
        cur = x
        while len(seq) < G.n:
            for i in G.edges_at(cur):
                if i in C and i not in used:
                    used.add(i)
                    cur = G.edges[i].other_end(cur)
                    seq.append(cur)
                    break
        return seq

    start_seq = cycle_to_path()
    start_edges = frozenset(C - {drop})
    visited = {start_edges}
    stack: list[tuple[list[str], frozenset[int]]] = [(start_seq, start_edges)]

    while stack:
        seq, edges = stack.pop()
        u = seq[-1]
        pos = {v: i for i, v in enumerate(seq)}
        for i in sorted(G.edges_at(u)):
            if i in edges:
                continue
            z = G.edges[i].other_end(u)
            if z == u:
                continue
            if z == y:
                closed = edges | {i}
                if closed != C:
                    return frozenset(closed)
                continue
            j = pos[z]
            # rotation: break the path edge from z toward the free end
            succ = seq[j + 1]
            broken = next(
                k for k in G.edges_at(z) if k in edges and G.edges[k].other_end(z) == succ
            )
            new_edges = frozenset((edges - {broken}) | {i})
            if new_edges in visited:
                continue
            visited.add(new_edges)
            new_seq = seq[: j + 1] + seq[j + 1 :][::-1]
            stack.append((new_seq, new_edges))
    raise RuntimeError("lollipop walk exhausted without a second cycle (implementation defect)")


def second_cycle_nearly_cubic(G: MultiGraph) -> tuple[HamiltonCycle, HamiltonCycle]:
    """Two distinct Hamilton cycles of a nearly cubic Hamiltonian graph."""
    if not G.is_nearly_cubic():
        raise GraphError("graph is not nearly cubic")
    cycles = enumerate_hamilton_cycles(G)
    if not cycles:
        raise GraphError("graph is not Hamiltonian")
    if len(cycles) < 2:
        raise RuntimeError("nearly cubic Hamiltonian graph with a single cycle (defect)")
    return cycles[0], cycles[1]


def cycle_labels(G: MultiGraph, cycle: Iterable[int]) -> list[str]:
    """Serialize a cycle as its sorted edge labels."""
    return sorted(G.edges[i].label for i in cycle)
