import json
import math

import numpy as np
import pytest

from decoygraph.game import (
    GameParams,
    build_matrix,
    defender_actions,
    load_params,
    pad_strategy,
    params_to_document,
    reward,
)
from decoygraph.graph import EnumerationLimitError, augment, enumerate_attack_paths
from decoygraph import fixtures
from oracles import literal_reward


def test_params_round_trip():
    doc = {
        "cap": 10,
        "esc": 5,
        "honeypot_cost": 1,
        "attack_cost_per_hop": 1,
        "budget": 1,
        "terminate_on_capture": False,
    }
    params = load_params(json.dumps(doc))
    assert params.cap == 10
    assert params_to_document(params)["budget"] == 1


def test_params_validation():
    with pytest.raises(ValueError, match="cap"):
        GameParams(cap=-1)
    with pytest.raises(ValueError, match="budget"):
        GameParams(budget=-2)
    with pytest.raises(ValueError, match="unknown params keys"):
        load_params({"cap": 1, "bogus": 2})
    with pytest.raises(ValueError, match="invalid params document"):
        load_params("{nope")


def test_action_counts_small(line3):
    graph, params, _, _ = line3
    actions = defender_actions(graph, params)
    assert actions == ((), (0,), (1,))
    assert defender_actions(graph, GameParams(budget=0)) == ((),)


def test_action_count_binomial_sum(net20):
    graph, params, _, _ = net20
    actions = defender_actions(graph, params)
    assert len(actions) == 1 + 22 + math.comb(22, 2) == 254
    sizes = [len(a) for a in actions]
    assert sizes == sorted(sizes)
    # lexicographic within each size class
    pairs = [a for a in actions if len(a) == 2]
    assert pairs == sorted(pairs)


def test_action_budget_and_limit_checks(line3):
    graph, _, _, _ = line3
    with pytest.raises(ValueError, match="exceeds edge count"):
        defender_actions(graph, GameParams(budget=5))
    with pytest.raises(EnumerationLimitError):
        defender_actions(graph, GameParams(budget=1), limit=2)


def test_reward_examples(line3):
    graph, params, game, _ = line3
    path = game.paths[0]
    assert reward(graph, params, (0,), path) == pytest.approx(1.0)
    assert reward(graph, params, (), path) == pytest.approx(-13.0)
    assert reward(graph, params, (1,), path) == pytest.approx(16.0)


def test_reward_terminate_on_capture(line3):
    graph, _, game, _ = line3
    params = GameParams(cap=10, esc=5, honeypot_cost=1, attack_cost_per_hop=1, budget=1,
                        terminate_on_capture=True)
    path = game.paths[0]
    # capture at node 2 stops the value sum before node 3
    assert reward(graph, params, (0,), path) == pytest.approx(10.0 - 1.0 + 2.0)
    # no capture: identical to the default mode
    assert reward(graph, params, (), path) == pytest.approx(-13.0)
    game_t = build_matrix(graph, params)
    assert game_t.matrix[1, 0] == pytest.approx(11.0)


def test_reward_honeypot_cost_monotonicity():
    rng = np.random.default_rng(5)
    graph = fixtures.tree7_graph()
    params = GameParams(budget=3)
    game = build_matrix(graph, params)
    for _ in range(50):
        path = game.paths[rng.integers(len(game.paths))]
        off_path = [e for e in range(len(graph.edges)) if e not in path.edges]
        extra = int(rng.choice(off_path))
        action = tuple(rng.choice(len(graph.edges), size=1))
        if extra in action:
            continue
        base = reward(graph, params, action, path)
        more = reward(graph, params, tuple(set(action) | {extra}), path)
        assert more == pytest.approx(base - params.honeypot_cost)


def test_reward_capture_dominance_per_cell(tree7):
    graph, params, game, _ = tree7
    path = game.paths[0]
    for eid, node in zip(path.edges, path.nodes[1:]):
        without = reward(graph, params, (), path)
        with_hp = reward(graph, params, (eid,), path)
        swing = (params.cap + params.esc) * graph.value(node) - params.honeypot_cost
        assert with_hp - without == pytest.approx(swing)


def test_matrix_line_graph(line3):
    _, _, game, _ = line3
    assert game.matrix.tolist() == [[-13.0], [1.0], [16.0]]


def test_matrix_matches_literal_oracle_exactly(line3, tree7, net20):
    for graph, params, game, _ in (line3, tree7, net20):
        values = {n.id: n.value for n in graph.nodes}
        for i, action in enumerate(game.actions):
            for j, path in enumerate(game.paths):
                expected = literal_reward(values, graph.edges, params, action, path.nodes)
                assert game.matrix[i, j] == expected  # bit-exact


def test_matrix_oracle_on_terminate_mode(tree7):
    graph, _, _, _ = tree7
    params = GameParams(cap=3, esc=2, honeypot_cost=1, attack_cost_per_hop=1,
                        budget=2, terminate_on_capture=True)
    game = build_matrix(graph, params)
    values = {n.id: n.value for n in graph.nodes}
    for i, action in enumerate(game.actions):
        for j, path in enumerate(game.paths):
            assert game.matrix[i, j] == literal_reward(values, graph.edges, params, action, path.nodes)


def test_augment_grows_columns(line3):
    graph, params, game, _ = line3
    game2 = build_matrix(augment(graph, (1, 3)), params)
    assert game2.matrix.shape[1] == game.matrix.shape[1] + 1
    assert game2.matrix.shape[0] == len(game.actions) + 1


def test_pinned_reward_covers_non_graph_edge(line3):
    graph, params, game, _ = line3
    g2 = augment(graph, (1, 3))
    short = enumerate_attack_paths(g2)[1]
    assert short.nodes == (1, 3)
    # pin on the hypothetical edge: capture node 3, pay for both honeypots
    got = reward(graph, params, (1,), short, pinned=[(1, 3)])
    assert got == pytest.approx(10 * 2.0 - 2.0 + 1.0)


def test_pad_strategy_examples(line3):
    graph, params, game, _ = line3
    game2 = build_matrix(augment(graph, (1, 3)), params)
    padded = pad_strategy([0.0, 0.0, 1.0], game, game2)
    assert padded.tolist() == [0.0, 0.0, 1.0, 0.0]
    uniform = pad_strategy(np.full(3, 1 / 3), game, game2)
    assert uniform == pytest.approx([1 / 3, 1 / 3, 1 / 3, 0.0])
    assert np.argmax(uniform) == np.argmax(np.full(3, 1 / 3))
    identity = pad_strategy([0.0, 0.0, 1.0], game, game)
    assert identity.tolist() == [0.0, 0.0, 1.0]


def test_pad_strategy_rejects_misaligned(line3):
    graph, params, game, _ = line3
    game2 = build_matrix(augment(graph, (1, 3)), params)
    with pytest.raises(ValueError, match="missing from the augmented game"):
        pad_strategy([0.0, 0.0, 1.0, 0.0], game2, game)
    with pytest.raises(ValueError, match="sums to"):
        pad_strategy([0.5, 0.0, 0.0], game, game2)
