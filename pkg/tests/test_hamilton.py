import random

import pytest

from cubicham import (
    GraphError,
    MultiGraph,
    build_graph,
    count_through,
    cube,
    cycle_labels,
    cycles_through,
    edge_parity_report,
    enumerate_hamilton_cycles,
    is_hamilton_cycle,
    k4,
    petersen,
    random_cubic_hamiltonian,
    second_cycle_lollipop,
    second_cycle_nearly_cubic,
    tutte_quotient,
)
from util import naive_hamilton_cycles


def test_k4_has_three_cycles():
    cycles = enumerate_hamilton_cycles(k4())
    assert len(cycles) == 3
    for c in cycles:
        assert is_hamilton_cycle(k4(), c)


def test_petersen_not_hamiltonian():
    assert enumerate_hamilton_cycles(petersen()) == []


def test_cube_six_cycles_each_edge_on_four():
    G = cube()
    report = edge_parity_report(G)
    assert report.total == 6
    assert all(c == 4 for c in report.counts.values())


def test_matches_naive_oracle_on_classics():
    for G in (k4(), cube(), petersen()):
        got = sorted(tuple(sorted(c)) for c in enumerate_hamilton_cycles(G))
        assert got == naive_hamilton_cycles(G)


def test_matches_naive_oracle_on_random_graphs():
    rng = random.Random(7)
    for _ in range(30):
        n = rng.randint(4, 7)
        labels = [f"v{i}" for i in range(n)]
        edges = [
            (None, u, v)
            for i, u in enumerate(labels)
            for v in labels[i + 1 :]
            if rng.random() < 0.5
        ]
        G = MultiGraph(labels, edges)
        got = sorted(tuple(sorted(c)) for c in enumerate_hamilton_cycles(G))
        assert got == naive_hamilton_cycles(G)


def test_multigraph_cases():
    two = MultiGraph(["a", "b"], [("p1", "a", "b"), ("p2", "a", "b"), ("p3", "a", "b")])
    assert len(enumerate_hamilton_cycles(two)) == 3  # any two parallels close up
    doubled = MultiGraph(
        ["a", "b", "c"],
        [("ab1", "a", "b"), ("ab2", "a", "b"), ("bc", "b", "c"), ("ca", "c", "a")],
    )
    assert len(enumerate_hamilton_cycles(doubled)) == 2
    looped = MultiGraph(
        ["a", "b", "c"],
        [("ab", "a", "b"), ("bc", "b", "c"), ("ca", "c", "a"), ("loop", "a", "a")],
    )
    cycles = enumerate_hamilton_cycles(looped)
    assert len(cycles) == 1
    assert looped.edge_by_label("loop").id not in cycles[0]


def test_require_and_forbid():
    Q = tutte_quotient()
    ex, ey, ez = (Q.edge_by_label(lab).id for lab in ("e_x", "e_y", "e_z"))
    assert count_through(Q, {ex, ey}) == 0
    assert count_through(Q, {ey, ez}) == 4
    assert count_through(Q, {ex, ez}) == 2
    assert count_through(Q, forbid={ez}) == 0  # every cycle leaves w twice
    with pytest.raises(GraphError):
        count_through(Q, {ex}, {ex})
    with pytest.raises(GraphError):
        count_through(Q, {999})


def test_parallel_jobs_match_serial_order():
    Q = tutte_quotient()
    assert enumerate_hamilton_cycles(Q, jobs=2) == enumerate_hamilton_cycles(Q)
    assert enumerate_hamilton_cycles(cube(), jobs=3) == enumerate_hamilton_cycles(cube())


def test_deterministic_order():
    Q = tutte_quotient()
    assert enumerate_hamilton_cycles(Q) == enumerate_hamilton_cycles(Q)


def test_is_hamilton_cycle_rejects_bad_sets():
    G = k4()
    full = frozenset(range(G.m))
    assert not is_hamilton_cycle(G, full)  # degree 3 everywhere
    cycles = enumerate_hamilton_cycles(G)
    short = set(next(iter(cycles)))
    short.pop()
    assert not is_hamilton_cycle(G, short)


def test_lollipop_on_k4():
    G = k4()
    ids = {e.label: e.id for e in G.edges}
    C = frozenset({ids["12"], ids["23"], ids["34"], ids["14"]})
    assert is_hamilton_cycle(G, C)
    C2 = second_cycle_lollipop(G, C, ids["12"])
    assert C2 == frozenset({ids["12"], ids["24"], ids["34"], ids["13"]})


def test_lollipop_on_quotient_fragment():
    Q = tutte_quotient()
    ez = Q.edge_by_label("e_z").id
    through = cycles_through(Q, {ez})
    assert len(through) == 6
    for C in through:
        C2 = second_cycle_lollipop(Q, C, ez)
        assert C2 != C and ez in C2 and is_hamilton_cycle(Q, C2)


def test_lollipop_on_cube_everywhere():
    G = cube()
    for C in enumerate_hamilton_cycles(G):
        for e in C:
            C2 = second_cycle_lollipop(G, C, e)
            assert C2 != C and e in C2 and is_hamilton_cycle(G, C2)


def test_lollipop_pairs_cycles_through_edge():
    # sampled instances: the result is always one of the enumerated cycles
    rng = random.Random(11)
    for _ in range(10):
        G = random_cubic_hamiltonian(10, rng)
        cycles = enumerate_hamilton_cycles(G)
        C = cycles[0]
        e = min(C)
        C2 = second_cycle_lollipop(G, C, e)
        assert C2 in cycles and C2 != C


def test_second_cycle_nearly_cubic():
    G = build_graph(
        ["o", "m", "u", "l", "d"],
        [
            ("e1", "o", "u"),
            ("e2", "o", "l"),
            ("om", "o", "m"),
            ("f1", "m", "u"),
            ("f2", "m", "l"),
            ("ru", "u", "d"),
            ("rl", "l", "d"),
        ],
    )
    a, b = second_cycle_nearly_cubic(G)
    assert a != b
    assert is_hamilton_cycle(G, a) and is_hamilton_cycle(G, b)
    with pytest.raises(GraphError):
        second_cycle_nearly_cubic(k4())


def test_parity_report_on_quotient_fragment():
    Q = tutte_quotient()
    report = edge_parity_report(Q)
    by_label = {Q.edges[i].label: c for i, c in report.counts.items()}
    assert by_label["e_x"] == 2 and by_label["e_y"] == 4 and by_label["e_z"] == 6
    assert report.all_degrees_odd and report.all_even
    assert sum(report.counts.values()) == Q.n * report.total
    assert report.to_csv(Q).splitlines()[0] == "edge,count"


def test_cycle_labels_sorted():
    G = k4()
    C = enumerate_hamilton_cycles(G)[0]
    labels = cycle_labels(G, C)
    assert labels == sorted(labels) and len(labels) == 4
