import pytest

from decoygraph import fixtures
from decoygraph.game import build_matrix
from decoygraph.lp import solve_zero_sum


@pytest.fixture(scope="session")
def line3():
    graph = fixtures.line3_graph()
    params = fixtures.line3_params()
    game = build_matrix(graph, params)
    return graph, params, game, solve_zero_sum(game.matrix)


@pytest.fixture(scope="session")
def tree7():
    graph = fixtures.tree7_graph()
    params = fixtures.tree7_params()
    game = build_matrix(graph, params)
    return graph, params, game, solve_zero_sum(game.matrix)


@pytest.fixture(scope="session")
def net20():
    graph = fixtures.net20_graph()
    params = fixtures.net20_params()
    game = build_matrix(graph, params)
    return graph, params, game, solve_zero_sum(game.matrix)
