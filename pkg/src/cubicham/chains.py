"""Cut-chain presentations of one- and two-ended infinite cubic graphs.

A chain is an eventually periodic sequence of finite pieces glued along
2- or 3-edge interfaces.  Finite windows materialize as minors with dummy
vertices; transfer layers count segment Hamilton cycles per boundary pair
state; a greatest-fixed-point survival analysis classifies the number of
Hamilton cycles of the limit graph as Zero, Finite(k) or Infinite.

Pair states at a cut are frozensets of cut positions (indices into the
ordered interface matching), so edge identities are carried through the
explicit matchings and never unified by name.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable

from .hamilton import enumerate_hamilton_cycles, is_hamilton_cycle
from .multigraph import GraphError, MultiGraph, from_json as graph_from_json, min_edge_cut

State = frozenset  # of cut positions
Matching = tuple[tuple[str, str], ...]  # (right stub of left piece, left stub of right piece)


class ChainError(ValueError):
    """Malformed chain or violated chain invariant."""


@dataclass(frozen=True)
class ChainPiece:
    """Finite piece with dangling boundary stubs on each side.

    A port (stub, vertex) stands for a half-edge named `stub` attached to
    the interior vertex `vertex`; gluing two matched stubs produces one cut
    edge, attaching stubs to a dummy produces dummy edges.
    """

    graph: MultiGraph
    left_ports: tuple[tuple[str, str], ...]
    right_ports: tuple[tuple[str, str], ...]

    def __post_init__(self):
        stubs = [s for s, _ in self.left_ports] + [s for s, _ in self.right_ports]
        if len(set(stubs)) != len(stubs):
            raise ChainError("stub labels must be unique within a piece")
        for stub, v in self.left_ports + self.right_ports:
            if v not in self.graph:
                raise ChainError(f"port vertex {v!r} not in piece")
            if stub in {e.label for e in self.graph.edges}:
                raise ChainError(f"stub {stub!r} collides with an interior edge label")

    def left_stub_vertex(self, stub: str) -> str:
        for s, v in self.left_ports:
            if s == stub:
                return v
        raise ChainError(f"unknown left stub {stub!r}")

    def right_stub_vertex(self, stub: str) -> str:
        for s, v in self.right_ports:
            if s == stub:
                return v
        raise ChainError(f"unknown right stub {stub!r}")


@dataclass(frozen=True)
class Tail:
    """Eventually periodic run of pieces, indexed from 1 going outward."""

    pre: tuple[ChainPiece, ...]
    period: tuple[ChainPiece, ...]
    entry_ifaces: tuple[Matching, ...]  # junctions 1..len(pre)
    period_ifaces: tuple[Matching, ...]  # then cycling with the period

    def __post_init__(self):
        if not self.period:
            raise ChainError("period must be nonempty")
        if len(self.entry_ifaces) != len(self.pre):
            raise ChainError("need one entry interface per pre-period junction")
        if len(self.period_ifaces) != len(self.period):
            raise ChainError("need one interface per period junction")

    @property
    def plen(self) -> int:
        return len(self.period)

    def piece(self, j: int) -> ChainPiece:
        if j < 1:
            raise ChainError(f"invalid tail piece index {j}")
        if j <= len(self.pre):
            return self.pre[j - 1]
        return self.period[(j - 1 - len(self.pre)) % self.plen]

    def iface(self, j: int) -> Matching:
        """Matching at the junction between pieces j and j+1."""
        if j < 1:
            raise ChainError(f"invalid tail junction index {j}")
        if j <= len(self.pre):
            return self.entry_ifaces[j - 1]
        return self.period_ifaces[(j - 1 - len(self.pre)) % self.plen]


def _check_iface(matching: Matching, left: ChainPiece, right: ChainPiece) -> None:
    if len(matching) not in (2, 3):
        raise ChainError(f"interface size {len(matching)} unsupported (only 2 or 3)")
    rstubs = [s for s, _ in matching]
    lstubs = [s for _, s in matching]
    if sorted(rstubs) != sorted(s for s, _ in left.right_ports):
        raise ChainError("interface does not match right boundary of the left piece")
    if sorted(lstubs) != sorted(s for s, _ in right.left_ports):
        raise ChainError("interface does not match left boundary of the right piece")


@dataclass(frozen=True)
class OneEndedChain:
    initial: ChainPiece
    entry_iface: Matching  # junction 0, between the initial piece and tail piece 1
    tail: Tail
    name: str = ""

    def __post_init__(self):
        if self.initial.left_ports:
            raise ChainError("initial piece must have no left boundary")
        _check_iface(self.entry_iface, self.initial, self.tail.piece(1))
        for j in range(1, len(self.tail.pre) + self.tail.plen + 1):
            _check_iface(self.tail.iface(j), self.tail.piece(j), self.tail.piece(j + 1))
        sizes = {len(self.entry_iface)} | {
            len(self.tail.iface(j)) for j in range(1, len(self.tail.pre) + self.tail.plen + 1)
        }
        if len(sizes) != 1:
            raise ChainError("interface size must be constant along the tail")

    mode = "one-ended"

    @property
    def cut_size(self) -> int:
        return len(self.entry_iface)

    def piece(self, i: int) -> ChainPiece:
        return self.initial if i == 0 else self.tail.piece(i)

    def iface(self, j: int) -> Matching:
        return self.entry_iface if j == 0 else self.tail.iface(j)


@dataclass(frozen=True)
class TwoEndedChain:
    """Bi-infinite chain; both tails are stored in rightward orientation.

    Left-tail piece j sits between cuts F(-j) and F(-(j-1)); the junction
    matching left.iface(j) pairs the right stubs of piece j+1 with the left
    stubs of piece j.  The central matching pairs the right stubs of left
    piece 1 with the left stubs of right piece 1 and is cut F(0).
    """

    left: Tail
    central: Matching
    right: Tail
    name: str = ""

    def __post_init__(self):
        _check_iface(self.central, self.left.piece(1), self.right.piece(1))
        for tail in (self.left, self.right):
            for j in range(1, len(tail.pre) + tail.plen + 1):
                _check_iface(tail.iface(j), tail.piece(j + 1), tail.piece(j))
        sizes = {len(self.central)}
        for tail in (self.left, self.right):
            sizes |= {len(tail.iface(j)) for j in range(1, len(tail.pre) + tail.plen + 1)}
        if len(sizes) != 1:
            raise ChainError("interface size must be constant")

    mode = "two-ended"

    @property
    def cut_size(self) -> int:
        return len(self.central)


CutChain = OneEndedChain | TwoEndedChain


# -- materialization ---------------------------------------------------------


def _tag(label: str, tag) -> str:
    return label if tag is None else f"{label}@{tag}"


def materialize(
    pieces: list[ChainPiece],
    ifaces: list[Matching],
    tags: list,
    left_dummy: str | None = None,
    right_dummy: str | None = None,
) -> MultiGraph:
    if len(ifaces) != len(pieces) - 1:
        raise ChainError("need exactly one interface per junction")
    vertices: list[str] = []
    edges: list[tuple[str, str, str]] = []
    for piece, t in zip(pieces, tags):
        vertices.extend(_tag(v, t) for v in piece.graph.vertices)
        edges.extend((_tag(e.label, t), _tag(e.u, t), _tag(e.v, t)) for e in piece.graph.edges)
    for j, matching in enumerate(ifaces):
        lp, rp = pieces[j], pieces[j + 1]
        for rstub, lstub in matching:
            edges.append(
                (
                    _tag(rstub, tags[j]),
                    _tag(lp.right_stub_vertex(rstub), tags[j]),
                    _tag(rp.left_stub_vertex(lstub), tags[j + 1]),
                )
            )
    if left_dummy is not None:
        vertices.append(left_dummy)
        for stub, v in pieces[0].left_ports:
            edges.append((_tag(stub, tags[0]), left_dummy, _tag(v, tags[0])))
    if right_dummy is not None:
        vertices.append(right_dummy)
        for stub, v in pieces[-1].right_ports:
            edges.append((_tag(stub, tags[-1]), _tag(v, tags[-1]), right_dummy))
    return MultiGraph(vertices, edges)


DUMMY = "dummy"
DUMMY_LEFT = "dummy_left"
DUMMY_RIGHT = "dummy_right"


def truncation_minor(chain: CutChain, k: int) -> MultiGraph:
    """Finite minor with the tail(s) beyond level k contracted to dummies."""
    if isinstance(chain, OneEndedChain):
        if k < 0:
            raise ChainError("truncation level must be nonnegative")
        pieces = [chain.piece(i) for i in range(k + 1)]
        ifaces = [chain.iface(j) for j in range(k)]
        return materialize(pieces, ifaces, list(range(k + 1)), right_dummy=DUMMY)
    if k < 1:
        raise ChainError("two-ended windows need k >= 1")
    pieces = [chain.left.piece(j) for j in range(k, 0, -1)] + [
        chain.right.piece(j) for j in range(1, k + 1)
    ]
    ifaces = [chain.left.iface(j) for j in range(k - 1, 0, -1)] + [chain.central] + [
        chain.right.iface(j) for j in range(1, k)
    ]
    tags = list(range(-(k - 1), k + 1))
    return materialize(pieces, ifaces, tags, left_dummy=DUMMY_LEFT, right_dummy=DUMMY_RIGHT)


def segment_minor(chain: CutChain, n: int) -> MultiGraph:
    """The piece between cuts F(n) and F(n+1) with dummies alpha and beta."""
    if isinstance(chain, OneEndedChain):
        if n < 0:
            raise ChainError("segment level must be nonnegative")
        piece = chain.piece(n + 1)
    else:
        piece = chain.right.piece(n + 1) if n >= 0 else chain.left.piece(-n)
    seg = materialize([piece], [], [None], left_dummy="alpha", right_dummy="beta")
    if not seg.is_simple():
        raise ChainError(f"segment minor at level {n} is not simple")
    return seg


# -- transfer layers ---------------------------------------------------------


def _states(cut_size: int) -> tuple[State, ...]:
    return tuple(frozenset(c) for c in combinations(range(cut_size), 2))


@dataclass(frozen=True)
class TransferLayer:
    """Hamilton counts of one segment, bucketed by boundary pair states."""

    left_states: tuple[State, ...]
    right_states: tuple[State, ...]
    left_names: tuple[str, ...]  # cut-edge stub name per left position
    right_names: tuple[str, ...]
    buckets: dict  # (left state, right state) -> tuple of interior edge-label frozensets

    def mult(self, p: State, q: State) -> int:
        return len(self.buckets.get((p, q), ()))

    def matrix(self) -> list[list[int]]:
        return [[self.mult(p, q) for q in self.right_states] for p in self.left_states]

    def state_name(self, names: tuple[str, ...], s: State) -> str:
        return "{" + ",".join(names[i] for i in sorted(s)) + "}"

    def to_text(self) -> str:
        rows = [[""] + [self.state_name(self.right_names, q) for q in self.right_states]]
        for p in self.left_states:
            rows.append(
                [self.state_name(self.left_names, p)]
                + [str(self.mult(p, q)) for q in self.right_states]
            )
        widths = [max(len(r[j]) for r in rows) for j in range(len(rows[0]))]
        return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows)


def _compute_layer(piece: ChainPiece, left_iface: Matching, right_iface: Matching) -> TransferLayer:
    seg = materialize([piece], [], [None], left_dummy="alpha", right_dummy="beta")
    if not seg.is_simple():
        raise ChainError("segment minor is not simple")
    lpos = {stub: i for i, (_, stub) in enumerate(left_iface)}
    rpos = {stub: i for i, (stub, _) in enumerate(right_iface)}
    alpha_ids = frozenset(seg.edges_at("alpha"))
    beta_ids = frozenset(seg.edges_at("beta"))
    buckets: dict = {}
    for cycle in enumerate_hamilton_cycles(seg):
        p = frozenset(lpos[seg.edges[i].label] for i in cycle & alpha_ids)
        q = frozenset(rpos[seg.edges[i].label] for i in cycle & beta_ids)
        interior = frozenset(
            seg.edges[i].label for i in cycle - alpha_ids - beta_ids
        )
        buckets.setdefault((p, q), []).append(interior)
    buckets = {k: tuple(v) for k, v in buckets.items()}
    size = len(left_iface)
    return TransferLayer(
        _states(size),
        _states(len(right_iface)),
        tuple(stub for _, stub in left_iface),
        tuple(stub for stub, _ in right_iface),
        buckets,
    )


# cache layers per segment description; pieces hash by graph identity, so the
# key also carries the label-level content to make value-equal chains share
def _segment_key(piece: ChainPiece, left_iface, right_iface) -> tuple:
    return (
        piece.graph.vertices,
        tuple((e.label, e.u, e.v) for e in piece.graph.edges),
        piece.left_ports,
        piece.right_ports,
        left_iface,
        right_iface,
    )


_LAYER_CACHE: dict = {}


def transfer_layer(chain: CutChain, n: int) -> TransferLayer:
    """Transfer layer between cuts F(n) and F(n+1), rows at F(n)."""
    if isinstance(chain, OneEndedChain):
        pre = len(chain.tail.pre)
        plen = chain.tail.plen
        norm = n if n <= pre + 1 else pre + 1 + (n - pre - 1) % plen
        piece = chain.piece(norm + 1)
        left_iface, right_iface = chain.iface(norm), chain.iface(norm + 1)
    elif n >= 0:
        tail = chain.right
        pre = len(tail.pre)
        norm = n if n <= pre + 1 else pre + 1 + (n - pre - 1) % tail.plen
        piece = tail.piece(norm + 1)
        left_iface = chain.central if norm == 0 else tail.iface(norm)
        right_iface = tail.iface(norm + 1)
    else:
        tail = chain.left
        j = -n  # piece index in the left tail, between F(-j) and F(-(j-1))
        pre = len(tail.pre)
        norm = j if j <= pre + 1 else pre + 2 + (j - pre - 2) % tail.plen
        piece = tail.piece(norm)
        left_iface = tail.iface(norm)
        right_iface = chain.central if norm == 1 else tail.iface(norm - 1)
    key = _segment_key(piece, left_iface, right_iface)
    if key not in _LAYER_CACHE:
        _LAYER_CACHE[key] = _compute_layer(piece, left_iface, right_iface)
    return _LAYER_CACHE[key]


# -- ray analysis ------------------------------------------------------------


@dataclass(frozen=True)
class _Step:
    """Transition from cut j-1 to cut j along one ray direction."""

    mat: dict  # state -> state -> multiplicity
    buckets: dict  # (state, state) -> tuple of interior frozensets


def _step_from_layer(layer: TransferLayer, transpose: bool) -> _Step:
    mat: dict = {}
    buckets: dict = {}
    for (p, q), cycles in layer.buckets.items():
        a, b = (q, p) if transpose else (p, q)
        mat.setdefault(a, {})[b] = len(cycles)
        buckets[(a, b)] = cycles
    return _Step(mat, buckets)


class _Direction:
    """One ray direction of a chain: steps indexed from 1, periodic data."""

    def __init__(self, chain: CutChain, side: str):
        self.chain = chain
        self.side = side
        if isinstance(chain, OneEndedChain):
            tail = chain.tail
        else:
            tail = chain.right if side == "right" else chain.left
        self.plen = tail.plen
        self.pre_len = len(tail.pre)
        self.J = self.pre_len + 1  # cuts >= J have periodic survival
        self.states = _states(chain.cut_size)
        self._steps: dict[int, _Step] = {}

    def step(self, j: int) -> _Step:
        """Transition from cut j-1 to cut j (j >= 1)."""
        norm = j if j <= self.J + 1 else self.J + 1 + (j - self.J - 1) % self.plen
        if norm not in self._steps:
            if isinstance(self.chain, OneEndedChain) or self.side == "right":
                layer = transfer_layer(self.chain, norm - 1)
                self._steps[norm] = _step_from_layer(layer, transpose=False)
            else:
                layer = transfer_layer(self.chain, -norm)
                self._steps[norm] = _step_from_layer(layer, transpose=True)
        return self._steps[norm]

    # survival -------------------------------------------------------------

    def survival(self) -> tuple[list[frozenset], list[frozenset]]:
        """(prefix survival for cuts 0..J-1, periodic survival per residue)."""
        periodic = [set(self.states) for _ in range(self.plen)]
        changed = True
        while changed:
            changed = False
            for r in range(self.plen):
                step = self.step(self.J + r + 1)
                nxt = periodic[(r + 1) % self.plen]
                new = {
                    s
                    for s in periodic[r]
                    if any(step.mat.get(s, {}).get(t, 0) > 0 for t in nxt)
                }
                if new != periodic[r]:
                    periodic[r] = new
                    changed = True
        prefix: list[frozenset] = [frozenset()] * self.J
        nxt = frozenset(periodic[0])
        for j in range(self.J - 1, -1, -1):
            step = self.step(j + 1)
            prefix[j] = frozenset(
                s for s in self.states if any(step.mat.get(s, {}).get(t, 0) > 0 for t in nxt)
            )
            nxt = prefix[j]
        return prefix, [frozenset(p) for p in periodic]

    def surv(self, j: int) -> frozenset:
        if not hasattr(self, "_surv"):
            self._surv = self.survival()
        prefix, periodic = self._surv
        return prefix[j] if j < self.J else periodic[(j - self.J) % self.plen]


@dataclass(frozen=True)
class RayAnalysis:
    tag: str  # "zero" | "finite" | "infinite"
    count: int | None
    witness: tuple | None  # (cut level, state, surviving out-multiplicity)
    seeds: dict  # surviving state at cut 0 -> seed weight
    supports: tuple  # supports per cut level up to the detected recurrence
    j_enter: int | None
    j_repeat: int | None


def _prefix_totals(direction: _Direction, seeds: dict, k: int) -> list[int]:
    w = dict(seeds)
    totals = [sum(w.values())]
    for j in range(k):
        step = direction.step(j + 1)
        nxt: dict = {}
        for s, c in w.items():
            for t, mult in step.mat.get(s, {}).items():
                if t in direction.surv(j + 1):
                    nxt[t] = nxt.get(t, 0) + c * mult
        w = nxt
        totals.append(sum(w.values()))
    return totals


def _analyze_rays(direction: _Direction, seed: dict) -> RayAnalysis:
    seeds = {s: c for s, c in seed.items() if c > 0 and s in direction.surv(0)}
    if not seeds:
        return RayAnalysis("zero", 0, None, {}, (), None, None)
    weights = dict(seeds)
    sup_list = [frozenset(weights)]
    seen: dict = {}
    j = 0
    limit = direction.J + direction.plen * (2 ** len(direction.states) + 8)
    j_enter = j_repeat = None
    while j <= limit:
        if j >= direction.J:
            key = ((j - direction.J) % direction.plen, sup_list[j])
            if key in seen:
                j_enter, j_repeat = seen[key], j
                break
            seen[key] = j
        step = direction.step(j + 1)
        nxt: dict = {}
        for s, c in weights.items():
            for t, mult in step.mat.get(s, {}).items():
                if t in direction.surv(j + 1):
                    nxt[t] = nxt.get(t, 0) + c * mult
        weights = nxt
        sup_list.append(frozenset(weights))
        j += 1
    if j_repeat is None:
        raise RuntimeError("support recurrence not found (implementation defect)")

    # branching inside the recurrent support cycle means unboundedly many rays
    for jj in range(j_enter, j_repeat):
        step = direction.step(jj + 1)
        alive_next = direction.surv(jj + 1)
        for s in sup_list[jj]:
            out = sum(m for t, m in step.mat.get(s, {}).items() if t in alive_next)
            if out >= 2:
                # cross-check: recurrent branching must grow the prefix totals
                totals = _prefix_totals(direction, seeds, j_repeat)
                if totals[j_repeat] <= totals[j_enter]:
                    raise RuntimeError("branching without prefix growth (defect)")
                return RayAnalysis(
                    "infinite", None, (jj, s, out), seeds, tuple(sup_list), j_enter, j_repeat
                )

    # deterministic from j_enter on: total weight is already stable there
    weights = dict(seeds)
    for jj in range(j_enter):
        step = direction.step(jj + 1)
        nxt = {}
        for s, c in weights.items():
            for t, mult in step.mat.get(s, {}).items():
                if t in direction.surv(jj + 1):
                    nxt[t] = nxt.get(t, 0) + c * mult
        weights = nxt
    total = sum(weights.values())
    return RayAnalysis("finite", total, None, seeds, tuple(sup_list), j_enter, j_repeat)


def _continuations(direction: _Direction, analysis: RayAnalysis) -> dict:
    """All surviving ray continuations from each seed state at cut 0.

    Returns seed state -> list of (pre_choices, period_choices); a choice is
    (left state, right state, interior edge-label frozenset).
    """
    D = analysis.j_repeat - analysis.j_enter
    sup_cycle = analysis.supports[analysis.j_enter : analysis.j_repeat]

    def recurrent(j: int, s: State) -> bool:
        return j >= analysis.j_enter and s in sup_cycle[(j - analysis.j_enter) % D]

    def periodic_tail(j: int, s: State) -> list:
        choices = []
        jj, cur = j, s
        guard = D * (len(direction.states) + 2)
        while True:
            step = direction.step(jj + 1)
            nxt = [
                (t, cyc)
                for t, m in sorted(step.mat.get(cur, {}).items(), key=lambda kv: sorted(kv[0]))
                if t in direction.surv(jj + 1)
                for cyc in step.buckets[(cur, t)]
            ]
            if len(nxt) != 1:
                raise RuntimeError("non-deterministic recurrent state (defect)")
            choices.append((cur, nxt[0][0], nxt[0][1]))
            cur = nxt[0][0]
            jj += 1
            if (jj - j) % D == 0 and cur == s:
                return choices
            if jj - j > guard:
                raise RuntimeError("periodic tail did not close (defect)")

    result: dict = {}

    def walk(j: int, s: State, acc: list, out: list) -> None:
        if recurrent(j, s):
            out.append((list(acc), periodic_tail(j, s)))
            return
        step = direction.step(j + 1)
        for t in sorted(step.mat.get(s, {}), key=sorted):
            if t not in direction.surv(j + 1):
                continue
            for cyc in step.buckets[(s, t)]:
                acc.append((s, t, cyc))
                walk(j + 1, t, acc, out)
                acc.pop()

    for s in analysis.seeds:
        conts: list = []
        walk(0, s, [], conts)
        result[s] = conts
    return result


# -- certificates ------------------------------------------------------------


@dataclass(frozen=True)
class LimitCycleCertificate:
    """Eventually periodic per-level choice sequence for one limit cycle.

    One-ended: `initial_interior` holds the level-0 interior edges (window
    labels) and `pre`/`period` the per-level segment choices from level 1 on.
    Two-ended: `left_pre`/`left_period` hold the outward choices for the left
    tail and `initial_state` is the state at the central cut.
    """

    mode: str
    initial_state: State
    initial_interior: frozenset = frozenset()
    pre: tuple = ()
    period: tuple = ()
    left_pre: tuple = ()
    left_period: tuple = ()

    def choice_at(self, level: int, side: str = "right") -> tuple:
        pre = self.pre if side == "right" else self.left_pre
        per = self.period if side == "right" else self.left_period
        if level <= len(pre):
            return pre[level - 1]
        return per[(level - len(pre) - 1) % len(per)]

    def state_at(self, level: int, side: str = "right") -> State:
        if level == 0:
            return self.initial_state
        return self.choice_at(level, side)[1]


def _cut_edge_labels(chain: OneEndedChain, j: int, state: State) -> set[str]:
    """Window edge labels of the chosen pair at cut j."""
    matching = chain.iface(j)
    return {f"{matching[p][0]}@{j}" for p in state}


def splice_certificate(chain: CutChain, cert: LimitCycleCertificate, k: int) -> set[str]:
    """Edge labels of the certificate's restriction to the level-k window."""
    if isinstance(chain, OneEndedChain):
        labels = set(cert.initial_interior)
        for j in range(0, k + 1):
            labels |= _cut_edge_labels(chain, j, cert.state_at(j))
        for j in range(1, k + 1):
            left, right, interior = cert.choice_at(j)
            if left != cert.state_at(j - 1):
                raise ChainError("certificate states disagree at a shared cut")
            labels |= {f"{lab}@{j}" for lab in interior}
        return labels
    labels: set[str] = set()
    # right half: choices j cover piece R_j (tag j), cuts F(0)..F(k)
    for j in range(0, k + 1):
        state = cert.state_at(j)
        matching = chain.central if j == 0 else chain.right.iface(j)
        labels |= {f"{matching[p][0]}@{j}" for p in state}
    for j in range(1, k + 1):
        _, _, interior = cert.choice_at(j)
        labels |= {f"{lab}@{j}" for lab in interior}
    # left half: choice j covers piece L_j (tag -(j-1)), cuts F(-1)..F(-k)
    for j in range(1, k + 1):
        _, _, interior = cert.choice_at(j, "left")
        labels |= {f"{lab}@{-(j - 1)}" for lab in interior}
    for j in range(1, k):
        state = cert.state_at(j, "left")
        matching = chain.left.iface(j)
        labels |= {f"{matching[p][0]}@{-j}" for p in state}
    state = cert.state_at(k, "left")
    piece = chain.left.piece(k)
    matching = chain.left.iface(k)
    labels |= {f"{matching[p][1]}@{-(k - 1)}" for p in state}
    return labels


def validate_certificate(chain: CutChain, cert: LimitCycleCertificate, k: int) -> bool:
    """Splice the first k levels and check against the brute-forced minor."""
    window = truncation_minor(chain, k)
    labels = splice_certificate(chain, cert, k)
    try:
        ids = [window.edge_by_label(lab).id for lab in labels]
    except GraphError:
        return False
    return is_hamilton_cycle(window, ids)


# -- classification ----------------------------------------------------------


@dataclass(frozen=True)
class LimitCount:
    tag: str  # "zero" | "finite" | "infinite"
    count: int | None
    witness: tuple | None  # (cut level, state, surviving out-multiplicity)
    certificates: tuple[LimitCycleCertificate, ...]

    def __str__(self) -> str:
        if self.tag == "zero":
            return "Zero"
        if self.tag == "finite":
            return f"Finite({self.count})"
        return "Infinite"


def initial_vector(chain: OneEndedChain) -> dict:
    """Hamilton-cycle counts of the level-0 truncation per dummy pair state."""
    vec, _ = _initial_data(chain)
    return vec


def _initial_data(chain: OneEndedChain) -> tuple[dict, dict]:
    if not isinstance(chain, OneEndedChain):
        raise ChainError("initial vector is defined for one-ended chains")
    G0 = truncation_minor(chain, 0)
    dummy_ids = frozenset(G0.edges_at(DUMMY))
    pos = {stub: i for i, (stub, _) in enumerate(chain.entry_iface)}
    vec = {s: 0 for s in _states(chain.cut_size)}
    cycles: dict = {s: [] for s in vec}
    for cycle in enumerate_hamilton_cycles(G0):
        state = frozenset(pos[G0.edges[i].label.rsplit("@", 1)[0]] for i in cycle & dummy_ids)
        vec[state] += 1
        cycles[state].append(frozenset(G0.edges[i].label for i in cycle - dummy_ids))
    return vec, {s: tuple(v) for s, v in cycles.items()}


def surviving_states(chain: CutChain) -> dict:
    """Greatest-fixed-point survival sets, per cut (prefix) and per residue."""
    if isinstance(chain, OneEndedChain):
        d = _Direction(chain, "right")
        prefix, periodic = d.survival()
        return {"prefix": prefix, "periodic": periodic, "period_start": d.J}
    out = {}
    for side in ("left", "right"):
        d = _Direction(chain, side)
        prefix, periodic = d.survival()
        out[side] = {"prefix": prefix, "periodic": periodic, "period_start": d.J}
    return out


def count_limit_hamilton_cycles(chain: CutChain) -> LimitCount:
    """Classify the number of Hamilton cycles of the chain's limit graph."""
    if isinstance(chain, OneEndedChain):
        return _count_one_ended(chain)
    return _count_two_ended(chain)


def _count_one_ended(chain: OneEndedChain) -> LimitCount:
    direction = _Direction(chain, "right")
    vec, init_cycles = _initial_data(chain)
    analysis = _analyze_rays(direction, vec)
    if analysis.tag == "zero":
        return LimitCount("zero", 0, None, ())
    if analysis.tag == "infinite":
        return LimitCount("infinite", None, analysis.witness, ())
    conts = _continuations(direction, analysis)
    certs = []
    for s in sorted(analysis.seeds, key=sorted):
        for interior in init_cycles[s]:
            for pre, period in conts[s]:
                certs.append(
                    LimitCycleCertificate(
                        "one-ended", s, interior, tuple(pre), tuple(period)
                    )
                )
    if len(certs) != analysis.count:
        raise RuntimeError("certificate count disagrees with the classification (defect)")
    return LimitCount("finite", analysis.count, None, tuple(certs))


def _count_two_ended(chain: TwoEndedChain) -> LimitCount:
    dirs = {side: _Direction(chain, side) for side in ("left", "right")}
    per_state: dict = {}
    for s in _states(chain.cut_size):
        per_state[s] = {
            side: _analyze_rays(dirs[side], {s: 1}) for side in ("left", "right")
        }
    total = 0
    certs = []
    for s in sorted(per_state, key=sorted):
        left, right = per_state[s]["left"], per_state[s]["right"]
        if left.tag == "zero" or right.tag == "zero":
            continue
        if left.tag == "infinite" or right.tag == "infinite":
            bad = left if left.tag == "infinite" else right
            return LimitCount("infinite", None, bad.witness, ())
        total += left.count * right.count
        lconts = _continuations(dirs["left"], left)[s]
        rconts = _continuations(dirs["right"], right)[s]
        for lpre, lper in lconts:
            for rpre, rper in rconts:
                certs.append(
                    LimitCycleCertificate(
                        "two-ended",
                        s,
                        pre=tuple(rpre),
                        period=tuple(rper),
                        left_pre=tuple(lpre),
                        left_period=tuple(lper),
                    )
                )
    if total == 0:
        return LimitCount("zero", 0, None, ())
    if len(certs) != total:
        raise RuntimeError("certificate count disagrees with the classification (defect)")
    return LimitCount("finite", total, None, tuple(certs))


# -- oracles and reports -----------------------------------------------------


@dataclass(frozen=True)
class ConsistencyReport:
    ok: bool
    predicted: dict
    actual: dict


def truncation_consistency(chain: CutChain, k: int) -> ConsistencyReport:
    """Check transfer-matrix predictions against brute force on the minor."""
    if isinstance(chain, OneEndedChain):
        vec, _ = _initial_data(chain)
        w = dict(vec)
        for j in range(k):
            layer = transfer_layer(chain, j)
            nxt = {s: 0 for s in layer.right_states}
            for s, c in w.items():
                for t in layer.right_states:
                    nxt[t] += c * layer.mult(s, t)
            w = nxt
        G = truncation_minor(chain, k)
        dummy_ids = frozenset(G.edges_at(DUMMY))
        pos = {stub: i for i, (stub, _) in enumerate(chain.iface(k))}
        actual = {s: 0 for s in _states(chain.cut_size)}
        for cycle in enumerate_hamilton_cycles(G):
            state = frozenset(pos[G.edges[i].label.rsplit("@", 1)[0]] for i in cycle & dummy_ids)
            actual[state] += 1
        return ConsistencyReport(w == actual, w, actual)

    states = _states(chain.cut_size)
    prod = {a: {b: 1 if a == b else 0 for b in states} for a in states}

    def multiply(prod: dict, layer: TransferLayer) -> dict:
        return {
            a: {
                b: sum(prod[a][c] * layer.mult(c, b) for c in states)
                for b in layer.right_states
            }
            for a in prod
        }

    for j in range(k, 0, -1):
        prod = multiply(prod, transfer_layer(chain, -j))
    for j in range(0, k):
        prod = multiply(prod, transfer_layer(chain, j))
    G = truncation_minor(chain, k)
    lids = frozenset(G.edges_at(DUMMY_LEFT))
    rids = frozenset(G.edges_at(DUMMY_RIGHT))
    lpos = {stub: i for i, (_, stub) in enumerate(chain.left.iface(k))}
    rpos = {stub: i for i, (stub, _) in enumerate(chain.right.iface(k))}
    actual = {a: {b: 0 for b in states} for a in states}
    for cycle in enumerate_hamilton_cycles(G):
        a = frozenset(lpos[G.edges[i].label.rsplit("@", 1)[0]] for i in cycle & lids)
        b = frozenset(rpos[G.edges[i].label.rsplit("@", 1)[0]] for i in cycle & rids)
        actual[a][b] += 1
    return ConsistencyReport(prod == actual, prod, actual)


def prefix_counts(chain: OneEndedChain, k_max: int) -> list[int]:
    """Total multiplicity of surviving length-k prefixes, for k = 0..k_max."""
    direction = _Direction(chain, "right")
    vec, _ = _initial_data(chain)
    w = {s: c for s, c in vec.items() if c > 0 and s in direction.surv(0)}
    out = [sum(w.values())]
    for j in range(k_max):
        step = direction.step(j + 1)
        nxt: dict = {}
        for s, c in w.items():
            for t, mult in step.mat.get(s, {}).items():
                if t in direction.surv(j + 1):
                    nxt[t] = nxt.get(t, 0) + c * mult
        w = nxt
        out.append(sum(w.values()))
    return out


def end_degree(chain: CutChain, end: str = "right") -> int:
    """Stabilized minimum cut from a fixed finite core to the chosen end."""
    prev = None
    for k in range(1, 9):
        G = truncation_minor(chain, k)
        if isinstance(chain, OneEndedChain):
            core = [f"{v}@0" for v in chain.initial.graph.vertices]
            sink = DUMMY
        else:
            core = [f"{v}@0" for v in chain.left.piece(1).graph.vertices]
            sink = DUMMY_RIGHT if end == "right" else DUMMY_LEFT
        val = min_edge_cut(G, core, sink)
        if val == prev:
            return val
        prev = val
    return prev


def witness_two_cycles(
    chain: OneEndedChain,
) -> tuple[LimitCycleCertificate, LimitCycleCertificate]:
    """Two distinct limit-cycle certificates of a Hamiltonian one-ended chain."""
    if not isinstance(chain, OneEndedChain):
        raise ChainError("witness extraction is defined for one-ended chains")
    result = count_limit_hamilton_cycles(chain)
    if result.tag == "zero":
        raise ChainError("chain limit is not Hamiltonian")
    if result.tag == "finite":
        if result.count < 2:
            raise ChainError("analysis found a single limit Hamilton cycle")
        return result.certificates[0], result.certificates[1]
    return _two_infinite_witnesses(chain, result.witness)


def _two_infinite_witnesses(chain: OneEndedChain, witness: tuple) -> tuple:
    direction = _Direction(chain, "right")
    vec, init_cycles = _initial_data(chain)
    j_w, s_w, _ = witness

    # breadth-first choice path from a seed to the branching state
    seeds = sorted(
        (s for s in vec if vec[s] > 0 and s in direction.surv(0)), key=sorted
    )
    paths = {s: [] for s in seeds}
    level = 0
    while not any(s == s_w for s in paths) or level < j_w:
        if level == j_w and s_w in paths:
            break
        step = direction.step(level + 1)
        nxt: dict = {}
        for s, acc in paths.items():
            for t in sorted(step.mat.get(s, {}), key=sorted):
                if t in direction.surv(level + 1) and t not in nxt:
                    nxt[t] = acc + [(s, t, step.buckets[(s, t)][0])]
        paths = nxt
        level += 1
        if level > j_w:
            raise RuntimeError("branching witness unreachable (defect)")
    prefix = paths[s_w]
    seed = prefix[0][0] if prefix else s_w
    interior = init_cycles[seed][0]

    step = direction.step(j_w + 1)
    options = [
        (t, cyc)
        for t in sorted(step.mat.get(s_w, {}), key=sorted)
        if t in direction.surv(j_w + 1)
        for cyc in step.buckets[(s_w, t)]
    ]

    def greedy_tail(j: int, s: State) -> tuple[list, list]:
        choices = []
        seen: dict = {}
        jj, cur = j, s
        while True:
            key = ((jj - direction.J) % direction.plen if jj >= direction.J else jj, cur)
            if jj >= direction.J and key in seen:
                cut = seen[key]
                return choices[:cut], choices[cut:]
            if jj >= direction.J:
                seen[key] = len(choices)
            step = direction.step(jj + 1)
            t, cyc = next(
                (t, step.buckets[(cur, t)][0])
                for t in sorted(step.mat.get(cur, {}), key=sorted)
                if t in direction.surv(jj + 1)
            )
            choices.append((cur, t, cyc))
            cur = t
            jj += 1

    certs = []
    for t, cyc in options[:2]:
        tail_pre, tail_period = greedy_tail(j_w + 1, t)
        pre = prefix + [(s_w, t, cyc)] + tail_pre
        certs.append(
            LimitCycleCertificate("one-ended", seed, interior, tuple(pre), tuple(tail_period))
        )
    return certs[0], certs[1]


# -- serialization -----------------------------------------------------------


def _piece_to_doc(piece: ChainPiece) -> dict:
    return {
        "graph": json.loads(piece.graph.to_json()),
        "left_ports": [list(p) for p in piece.left_ports],
        "right_ports": [list(p) for p in piece.right_ports],
    }


def _piece_from_doc(doc: dict) -> ChainPiece:
    return ChainPiece(
        graph_from_json(json.dumps(doc["graph"])),
        tuple(tuple(p) for p in doc["left_ports"]),
        tuple(tuple(p) for p in doc["right_ports"]),
    )


def _tail_to_doc(tail: Tail) -> dict:
    return {
        "pre_period": [_piece_to_doc(p) for p in tail.pre],
        "period": [_piece_to_doc(p) for p in tail.period],
        "entry_interfaces": [[list(m) for m in iface] for iface in tail.entry_ifaces],
        "period_interfaces": [[list(m) for m in iface] for iface in tail.period_ifaces],
    }


def _tail_from_doc(doc: dict) -> Tail:
    return Tail(
        tuple(_piece_from_doc(p) for p in doc["pre_period"]),
        tuple(_piece_from_doc(p) for p in doc["period"]),
        tuple(tuple(tuple(m) for m in iface) for iface in doc["entry_interfaces"]),
        tuple(tuple(tuple(m) for m in iface) for iface in doc["period_interfaces"]),
    )


def chain_to_json(chain: CutChain) -> str:
    if isinstance(chain, OneEndedChain):
        doc = {
            "mode": "one-ended",
            "name": chain.name,
            "pieces": {"initial": _piece_to_doc(chain.initial)},
            "interfaces": {"entry": [list(m) for m in chain.entry_iface]},
            "tail": _tail_to_doc(chain.tail),
        }
    else:
        doc = {
            "mode": "two-ended",
            "name": chain.name,
            "interfaces": {"central": [list(m) for m in chain.central]},
            "left": _tail_to_doc(chain.left),
            "right": _tail_to_doc(chain.right),
        }
    return json.dumps(doc, indent=2)


def chain_from_json(text: str) -> CutChain:
    doc = json.loads(text)
    if doc.get("mode") == "one-ended":
        return OneEndedChain(
            _piece_from_doc(doc["pieces"]["initial"]),
            tuple(tuple(m) for m in doc["interfaces"]["entry"]),
            _tail_from_doc(doc["tail"]),
            doc.get("name", ""),
        )
    if doc.get("mode") == "two-ended":
        return TwoEndedChain(
            _tail_from_doc(doc["left"]),
            tuple(tuple(m) for m in doc["interfaces"]["central"]),
            _tail_from_doc(doc["right"]),
            doc.get("name", ""),
        )
    raise ChainError(f"unknown chain mode {doc.get('mode')!r}")


def transfer_dot(chain: CutChain, levels: int = 3) -> str:
    """Layered transfer multigraph (parallel edges drawn separately)."""
    lines = ["graph transfer {", "  rankdir=LR;"]
    rng = range(levels) if isinstance(chain, OneEndedChain) else range(-levels, levels)
    for n in rng:
        layer = transfer_layer(chain, n)
        for p in layer.left_states:
            lines.append(
                f'  "F{n}:{layer.state_name(layer.left_names, p)}";'
            )
        for p, q in layer.buckets:
            for _ in layer.buckets[(p, q)]:
                lines.append(
                    f'  "F{n}:{layer.state_name(layer.left_names, p)}" -- '
                    f'"F{n + 1}:{layer.state_name(layer.right_names, q)}";'
                )
    last = levels if isinstance(chain, OneEndedChain) else levels
    layer = transfer_layer(chain, last - 1)
    for q in layer.right_states:
        lines.append(f'  "F{last}:{layer.state_name(layer.right_names, q)}";')
    lines.append("}")
    return "\n".join(lines)
