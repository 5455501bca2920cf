import pytest

from cubicham import (
    ChainError,
    ChainPiece,
    MultiGraph,
    OneEndedChain,
    Tail,
    chain_G,
    chain_H,
    chain_Hprime,
    chain_double_ladder,
    chain_from_json,
    chain_ladder,
    chain_to_json,
    count_limit_hamilton_cycles,
    end_degree,
    initial_vector,
    prefix_counts,
    segment_minor,
    splice_certificate,
    surviving_states,
    transfer_dot,
    transfer_layer,
    truncation_consistency,
    truncation_minor,
    validate_certificate,
)

S01, S02, S12 = frozenset({0, 1}), frozenset({0, 2}), frozenset({1, 2})
ALL_CHAINS = {
    "G": chain_G,
    "H": chain_H,
    "Hprime": chain_Hprime,
    "ladder": chain_ladder,
    "double_ladder": chain_double_ladder,
}


def test_chain_G_transfer_matrix():
    layer = transfer_layer(chain_G(), 1)
    assert layer.left_states == (S01, S02, S12)
    assert layer.matrix() == [[0, 0, 0], [1, 1, 0], [1, 1, 2]]
    # the same layer repeats at every level
    assert transfer_layer(chain_G(), 5).matrix() == layer.matrix()


def test_chain_H_entry_layer_is_crosswise():
    layer = transfer_layer(chain_H(), 0)
    # crosswise gluing permutes the left states relative to the periodic layer
    assert layer.matrix() == [[1, 1, 2], [1, 1, 0], [0, 0, 0]]
    assert transfer_layer(chain_H(), 1).matrix() == [[0, 0, 0], [1, 1, 0], [1, 1, 2]]


def test_ladder_layers_are_unit():
    for n in range(4):
        assert transfer_layer(chain_ladder(), n).matrix() == [[1]]
    for n in (-2, -1, 0, 1, 2):
        assert transfer_layer(chain_double_ladder(), n).matrix() == [[1]]


def test_hprime_layers_both_sides():
    c = chain_Hprime()
    assert transfer_layer(c, 0).matrix() == [[1, 1, 2], [1, 1, 0], [0, 0, 0]]
    assert transfer_layer(c, 1).matrix() == [[0, 0, 0], [1, 1, 0], [1, 1, 2]]
    # left side, oriented rightward: transposed role of the pair classes
    assert transfer_layer(c, -1).matrix() == [[0, 1, 1], [0, 1, 1], [0, 0, 2]]
    assert transfer_layer(c, -2).matrix() == transfer_layer(c, -3).matrix()


def test_initial_vectors():
    assert initial_vector(chain_G()) == {S01: 2, S02: 2, S12: 2}
    assert initial_vector(chain_H()) == {S01: 0, S02: 2, S12: 4}
    assert initial_vector(chain_ladder()) == {S01: 2}
    with pytest.raises(ChainError):
        initial_vector(chain_double_ladder())


def test_surviving_states():
    surv = surviving_states(chain_G())
    assert surv["periodic"] == [frozenset({S02, S12})]
    assert surv["prefix"] == [frozenset({S02, S12})]
    surv_h = surviving_states(chain_H())
    assert surv_h["periodic"] == [frozenset({S02, S12})]
    assert surv_h["prefix"] == [frozenset({S01, S02})]
    both = surviving_states(chain_double_ladder())
    assert both["left"]["periodic"] == [frozenset({S01})]
    assert both["right"]["periodic"] == [frozenset({S01})]


def test_classifications():
    expected = {
        "G": "Infinite",
        "H": "Finite(2)",
        "Hprime": "Finite(1)",
        "ladder": "Finite(2)",
        "double_ladder": "Finite(1)",
    }
    for name, make in ALL_CHAINS.items():
        assert str(count_limit_hamilton_cycles(make())) == expected[name]


def test_chain_G_witness():
    result = count_limit_hamilton_cycles(chain_G())
    level, state, out = result.witness
    chain = chain_G()
    assert {chain.iface(level)[p][1] for p in state} == {"e_y", "e_z"}
    assert out >= 2
    assert result.certificates == ()


def test_finite_counts_come_with_certificates():
    for name in ("H", "Hprime", "ladder", "double_ladder"):
        result = count_limit_hamilton_cycles(ALL_CHAINS[name]())
        assert len(result.certificates) == result.count


def test_certificates_validate():
    for name in ("H", "Hprime", "ladder", "double_ladder"):
        chain = ALL_CHAINS[name]()
        result = count_limit_hamilton_cycles(chain)
        for cert in result.certificates:
            for k in range(1, 5):
                assert validate_certificate(chain, cert, k), (name, k)


def test_certificates_distinct():
    for name in ("H", "ladder"):
        chain = ALL_CHAINS[name]()
        certs = count_limit_hamilton_cycles(chain).certificates
        spliced = {frozenset(splice_certificate(chain, c, 4)) for c in certs}
        assert len(spliced) == len(certs)


def test_truncation_consistency_three_cut_chains():
    for make in (chain_G, chain_H):
        for k in range(3):
            assert truncation_consistency(make(), k).ok
    for k in (1, 2):
        assert truncation_consistency(chain_Hprime(), k).ok


def test_truncation_consistency_ladders():
    for k in range(7):
        assert truncation_consistency(chain_ladder(), k).ok
    for k in range(1, 7):
        assert truncation_consistency(chain_double_ladder(), k).ok


def test_prefix_counts_monotone():
    for make in (chain_G, chain_H, chain_ladder):
        counts = prefix_counts(make(), 8)
        assert all(a <= b for a, b in zip(counts, counts[1:]))
    assert prefix_counts(chain_H(), 8) == [2] * 9
    # recurrent branching makes the chain_G prefix counts grow without bound
    g = prefix_counts(chain_G(), 8)
    assert g[-1] > g[0]


def test_end_degrees():
    assert end_degree(chain_G()) == 3
    assert end_degree(chain_H()) == 3
    assert end_degree(chain_ladder()) == 2
    assert end_degree(chain_Hprime(), "left") == 3
    assert end_degree(chain_Hprime(), "right") == 3
    assert end_degree(chain_double_ladder(), "left") == 2


def test_chain_json_roundtrip():
    for make in ALL_CHAINS.values():
        chain = make()
        again = chain_from_json(chain_to_json(chain))
        assert chain_to_json(again) == chain_to_json(chain)
        assert str(count_limit_hamilton_cycles(again)) == str(
            count_limit_hamilton_cycles(chain)
        )


def test_chain_json_rejects_unknown_mode():
    with pytest.raises(ChainError):
        chain_from_json('{"mode": "three-ended"}')


def test_interface_size_four_refused():
    graph = MultiGraph(("x",), [])
    ports_l = tuple((f"l{i}", "x") for i in range(4))
    ports_r = tuple((f"r{i}", "x") for i in range(4))
    piece = ChainPiece(graph, ports_l, ports_r)
    initial = ChainPiece(graph, (), ports_r)
    iface = tuple((f"r{i}", f"l{i}") for i in range(4))
    with pytest.raises(ChainError):
        OneEndedChain(initial, iface, Tail((), (piece,), (), (iface,)))


def test_nonsimple_segment_refused():
    graph = MultiGraph(("x",), [])
    piece = ChainPiece(graph, (("l1", "x"), ("l2", "x")), (("r1", "x"), ("r2", "x")))
    initial = ChainPiece(graph, (), (("r1", "x"), ("r2", "x")))
    iface = (("r1", "l1"), ("r2", "l2"))
    chain = OneEndedChain(initial, iface, Tail((), (piece,), (), (iface,)))
    with pytest.raises(ChainError):
        segment_minor(chain, 0)
    with pytest.raises(ChainError):
        transfer_layer(chain, 0)


def test_truncation_labels_follow_levels():
    G = truncation_minor(chain_ladder(), 1)
    labels = {e.label for e in G.edges}
    assert {"e_1@0", "ru@0", "rl@0", "u_l@1", "ru@1", "rl@1"} <= labels


def test_mismatched_interface_rejected():
    graph = MultiGraph(("x", "y"), [("xy", "x", "y")])
    piece = ChainPiece(graph, (("lu", "x"), ("ll", "y")), (("ru", "x"), ("rl", "y")))
    initial = ChainPiece(graph, (), (("ru", "x"), ("rl", "y")))
    with pytest.raises(ChainError):
        OneEndedChain(
            initial,
            (("ru", "nope"), ("rl", "ll")),
            Tail((), (piece,), (), ((("ru", "lu"), ("rl", "ll")),)),
        )


def test_transfer_dot_renders_levels():
    dot = transfer_dot(chain_G(), 2)
    assert dot.startswith("graph")
    assert "F0:" in dot and "F2:" in dot
    dot2 = transfer_dot(chain_double_ladder(), 1)
    assert "F-1:" in dot2
