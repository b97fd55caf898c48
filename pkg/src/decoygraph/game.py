"""Zero-sum honeypot allocation game: action spaces, rewards, payoff matrix.

The defender picks a set of up to ``budget`` edges to trap with honeypots,
the attacker picks an attack path. Each non-entry node on the path pays the
defender ``cap * value`` if the edge entering it carries a honeypot and costs
``esc * value`` otherwise; the defender pays a fixed cost per deployed
honeypot and collects the attacker's per-hop movement cost. The game is
zero-sum: the attacker's reward is the exact negation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .graph import AttackGraph, AttackPath, EnumerationLimitError, enumerate_attack_paths

DEFAULT_ACTION_LIMIT = 1_000_000

STRATEGY_SUM_TOL = 1e-9


@dataclass(frozen=True)
class GameParams:
    """Scalar knobs of the reward function plus the honeypot budget."""

    cap: float = 10.0
    esc: float = 5.0
    honeypot_cost: float = 1.0
    attack_cost_per_hop: float = 1.0
    budget: int = 1
    terminate_on_capture: bool = False

    def __post_init__(self):
        for name in ("cap", "esc", "honeypot_cost", "attack_cost_per_hop"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative, got {getattr(self, name)}")
        if not isinstance(self.budget, int) or isinstance(self.budget, bool) or self.budget < 0:
            raise ValueError(f"budget must be a nonnegative integer, got {self.budget!r}")


def load_params(source) -> GameParams:
    """Parse a params document (JSON text, bytes, or dict)."""
    if isinstance(source, (str, bytes)):
        try:
            document = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ValueError(f"invalid params document: {exc}") from exc
    else:
        document = source
    if not isinstance(document, dict):
        raise ValueError("params document must be a JSON object")
    known = {
        "cap", "esc", "honeypot_cost", "attack_cost_per_hop", "budget",
        "terminate_on_capture",
    }
    unknown = set(document) - known
    if unknown:
        raise ValueError(f"unknown params keys: {sorted(unknown)}")
    return GameParams(**document)


def params_to_document(params: GameParams) -> dict:
    return {
        "cap": params.cap,
        "esc": params.esc,
        "honeypot_cost": params.honeypot_cost,
        "attack_cost_per_hop": params.attack_cost_per_hop,
        "budget": params.budget,
        "terminate_on_capture": params.terminate_on_capture,
    }


@dataclass(eq=False)
class GameInstance:
    """Enumerated action spaces plus the dense defender payoff matrix.

    ``actions[i]`` is a sorted tuple of edge ids, ``paths[j]`` an attack
    path, and ``matrix[i, j]`` the defender reward for that profile. The
    attacker payoff matrix is ``-matrix``.
    """

    graph: AttackGraph
    params: GameParams
    actions: tuple[tuple[int, ...], ...]
    paths: tuple[AttackPath, ...]
    matrix: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape


def defender_actions(
    graph: AttackGraph, params: GameParams, limit: int = DEFAULT_ACTION_LIMIT
) -> tuple[tuple[int, ...], ...]:
    """All edge subsets of size 0..budget, ordered by (size, edge ids)."""
    n_edges = len(graph.edges)
    if params.budget > n_edges:
        raise ValueError(f"budget {params.budget} exceeds edge count {n_edges}")
    total = sum(math.comb(n_edges, k) for k in range(params.budget + 1))
    if total > limit:
        raise EnumerationLimitError(f"defender action count {total} exceeds limit {limit}")
    out = []
    for k in range(params.budget + 1):
        out.extend(combinations(range(n_edges), k))
    return tuple(out)


def reward(
    graph: AttackGraph,
    params: GameParams,
    action,
    path: AttackPath,
    pinned=(),
) -> float:
    """Defender reward for one action profile.

    ``action`` is an iterable of edge ids; ``pinned`` an optional iterable of
    extra honeypot locations given as (u, v) pairs, which may name edges the
    graph does not contain (hypothetical zero-day locations). Deployments are
    deduplicated by location; each deployed honeypot costs ``honeypot_cost``.
    The entry node contributes no value term. With ``terminate_on_capture``
    the node-value sum stops after the first captured node; the per-hop
    attacker cost always counts the full path.
    """
    honeypots = {graph.edges[e] for e in action}
    honeypots.update(tuple(p) for p in pinned)
    total = 0.0
    prev = path.nodes[0]
    for node in path.nodes[1:]:
        v = graph.value(node)
        if (prev, node) in honeypots:
            total += params.cap * v
            if params.terminate_on_capture:
                break
        else:
            total -= params.esc * v
        prev = node
    total -= params.honeypot_cost * len(honeypots)
    total += params.attack_cost_per_hop * path.hops
    return total


def build_matrix(
    graph: AttackGraph,
    params: GameParams,
    *,
    entries=None,
    action_limit: int = DEFAULT_ACTION_LIMIT,
    path_limit: int = 1_000_000,
) -> GameInstance:
    """Assemble the full game: both action spaces and the payoff matrix.

    Deterministic given graph and params; ``entries`` restricts which entry
    nodes may start attack paths (compromised-entry sweeps).
    """
    actions = defender_actions(graph, params, limit=action_limit)
    paths = enumerate_attack_paths(graph, entries=entries, limit=path_limit)
    if params.terminate_on_capture:
        matrix = np.empty((len(actions), len(paths)))
        for i, action in enumerate(actions):
            for j, path in enumerate(paths):
                matrix[i, j] = reward(graph, params, action, path)
    else:
        matrix = _bulk_matrix(graph, params, actions, paths)
    return GameInstance(graph=graph, params=params, actions=actions, paths=paths, matrix=matrix)


def _bulk_matrix(graph, params, actions, paths):
    # R[i, j] = -esc * S_j + (cap + esc) * (covered value) - cost_i + hop term
    n_edges = len(graph.edges)
    weights = np.zeros((n_edges, len(paths)))
    base = np.zeros(len(paths))
    for j, path in enumerate(paths):
        total_value = 0.0
        for eid, node in zip(path.edges, path.nodes[1:]):
            v = graph.value(node)
            weights[eid, j] = v
            total_value += v
        base[j] = -params.esc * total_value + params.attack_cost_per_hop * path.hops
    incidence = np.zeros((len(actions), n_edges))
    costs = np.zeros(len(actions))
    for i, action in enumerate(actions):
        for eid in action:
            incidence[i, eid] = 1.0
        costs[i] = params.honeypot_cost * len(action)
    covered = incidence @ weights
    return base[None, :] + (params.cap + params.esc) * covered - costs[:, None]


def pure_strategy(size: int, index: int) -> np.ndarray:
    out = np.zeros(size)
    out[index] = 1.0
    return out


def uniform_strategy(size: int) -> np.ndarray:
    return np.full(size, 1.0 / size)


def check_distribution(strategy, tol: float = STRATEGY_SUM_TOL) -> np.ndarray:
    arr = np.asarray(strategy, dtype=float)
    if np.any(arr < -tol):
        raise ValueError("strategy has negative entries")
    if abs(arr.sum() - 1.0) > tol:
        raise ValueError(f"strategy sums to {arr.sum()!r}, not 1")
    return arr


def pad_strategy(x1, game1: GameInstance, game2: GameInstance) -> np.ndarray:
    """Lift a game-1 defender strategy into game 2's action ordering.

    Every game-1 action keeps its probability; actions that only exist in
    game 2 (allocations touching the new edge) get zero. Raises ValueError
    if some game-1 action is missing from game 2.
    """
    x_arr = check_distribution(x1)
    if x_arr.size != len(game1.actions):
        raise ValueError("strategy length does not match game-1 action count")
    index = {action: i for i, action in enumerate(game2.actions)}
    out = np.zeros(len(game2.actions))
    for action, prob in zip(game1.actions, x_arr):
        if action not in index:
            raise ValueError(f"defender action {action} missing from the augmented game")
        out[index[action]] = prob
    return out
