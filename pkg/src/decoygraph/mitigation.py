"""Zero-day mitigation planning and evaluation.

Four planners: pin honeypots on the highest-impact candidate edges, place a
mitigating honeypot by minimizing a probability-weighted impact residual via
an LP, hedge against an adversarial choice of vulnerability by solving an
auxiliary game against nature, or reshape the base policy itself by boosting
the values of critical nodes and re-solving. Pinned honeypots are
deterministic extras layered on top of every base allocation draw; they cost
the usual per-honeypot fee and do not consume the budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .game import GameInstance, GameParams, build_matrix, pad_strategy, reward
from .graph import AttackGraph, NodeRecord, augment, enumerate_attack_paths, graph_from_parts
from .lp import GameSolution, LinearProgram, solve_lp, solve_zero_sum
from .zeroday import rank_records

PREVENTION_TOL = 1e-6

PLAN_KINDS = ("alpha", "lp", "nature", "critical_point", "random", "none")


@dataclass(frozen=True)
class CandidateOutcome:
    edge: tuple[int, int]
    reward_before: float
    reward_after: float
    capture_before: float
    capture_after: float
    prevented: bool


@dataclass
class MitigationMetrics:
    outcomes: list[CandidateOutcome]
    effectiveness: float
    capture_before: float
    capture_after: float


@dataclass
class MitigationPlan:
    """A mitigation decision: pinned edges and/or a modified base policy."""

    kind: str
    pinned_edges: tuple[tuple[int, int], ...] = ()
    distribution: dict | None = None
    modified_policy: np.ndarray | None = None
    boosted_values: dict | None = None
    objective: float | None = None
    metrics: MitigationMetrics | None = None


@dataclass
class NatureGame:
    """Auxiliary zero-sum game: nature picks the vulnerability, the defender
    picks where to pin the mitigating honeypot."""

    locations: tuple[tuple[int, int], ...]
    matrix: np.ndarray
    solution: GameSolution


def none_mitigation() -> MitigationPlan:
    return MitigationPlan(kind="none")


def alpha_mitigation(report, k: int = 1) -> MitigationPlan:
    """Pin one extra honeypot on each of the top-k impact edges."""
    ranked = rank_records(report)
    if not ranked:
        raise ValueError("empty zero-day report")
    if not 1 <= k <= len(ranked):
        raise ValueError(f"k must be in 1..{len(ranked)}, got {k}")
    return MitigationPlan(kind="alpha", pinned_edges=tuple(r.edge for r in ranked[:k]))


def random_mitigation(report, rng) -> MitigationPlan:
    """Pin a single uniformly drawn candidate edge (seeded baseline)."""
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    rows = list(report)
    if not rows:
        raise ValueError("empty zero-day report")
    edge = rows[int(rng.integers(len(rows)))].edge
    return MitigationPlan(kind="random", pinned_edges=(edge,))


def weighted_residual(report, allocation, probabilities=None) -> float:
    """Probability-weighted impact left uncovered by an allocation x.

    Sum over candidates of P(e) * impact(e) * (1 - y(e) * x(e)); x values
    outside the allocation mapping count as zero.
    """
    rows = list(report)
    probs = _candidate_probabilities(rows, probabilities)
    total = 0.0
    for rec, p in zip(rows, probs):
        x_e = float(allocation.get(rec.edge, 0.0))
        total += p * rec.impact * (1.0 - rec.exploit_probability * x_e)
    return total


def _candidate_probabilities(rows, probabilities):
    if probabilities is None:
        return np.full(len(rows), 1.0 / len(rows))
    probs = np.asarray(
        [probabilities[r.edge] for r in rows] if isinstance(probabilities, dict) else probabilities,
        dtype=float,
    )
    if probs.size != len(rows):
        raise ValueError("one probability per candidate required")
    if np.any(probs < 0) or abs(probs.sum() - 1.0) > 1e-9:
        raise ValueError("candidate probabilities must be nonnegative and sum to 1")
    return probs


def lp_mitigation(report, probabilities=None, budget: float = 1.0) -> MitigationPlan:
    """Minimize the weighted impact residual over fractional pin placements.

    Solves min J(x) over 0 <= x(e) <= 1 with sum x <= budget. With budget 1
    the optimum concentrates on the candidate maximizing
    P(e) * impact(e) * y(e); zero-coefficient candidates keep x = 0.
    """
    rows = list(report)
    if not rows:
        raise ValueError("empty zero-day report")
    if budget < 0:
        raise ValueError(f"budget must be nonnegative, got {budget}")
    probs = _candidate_probabilities(rows, probabilities)
    gains = np.array([p * r.impact * r.exploit_probability for p, r in zip(probs, rows)])
    lp = LinearProgram(
        objective=gains,
        lhs_ineq=np.ones((1, len(rows))),
        rhs_ineq=np.array([budget]),
        bounds=(0.0, 1.0),
        maximize=True,
    )
    sol = solve_lp(lp)
    allocation = {r.edge: float(x) for r, x in zip(rows, sol.x)}
    residual = float(sum(p * r.impact for p, r in zip(probs, rows)) - sol.objective)
    pinned = tuple(r.edge for r, x in zip(rows, sol.x) if x > 1.0 - 1e-9)
    return MitigationPlan(kind="lp", pinned_edges=pinned, distribution=allocation, objective=residual)


@lru_cache(maxsize=4096)
def _augmented_paths(graph: AttackGraph, edge: tuple[int, int]):
    return enumerate_attack_paths(augment(graph, edge))


def _mixed_columns(graph, params, actions, policy, paths, pinned):
    """Attacker reward and capture probability per path against a mixed
    defender (support-only sums) with deterministic pinned extras."""
    support = [(i, float(p)) for i, p in enumerate(np.asarray(policy)) if p > 1e-12]
    pinned_pairs = tuple(tuple(p) for p in pinned)
    rewards = np.zeros(len(paths))
    capture = np.zeros(len(paths))
    for j, path in enumerate(paths):
        path_pairs = {(path.nodes[k], path.nodes[k + 1]) for k in range(path.hops)}
        pin_hit = any(p in path_pairs for p in pinned_pairs)
        r = 0.0
        c = 0.0
        for i, prob in support:
            r -= prob * reward(graph, params, actions[i], path, pinned_pairs)
            if pin_hit or {graph.edges[e] for e in actions[i]} & path_pairs:
                c += prob
        rewards[j] = r
        capture[j] = c
    return rewards, capture


def nature_game(
    game1: GameInstance,
    x1,
    report,
    *,
    criterion: str = "pessimistic",
    mitigation_kind: str = "pinned",
) -> NatureGame:
    """Worst-case mitigation: solve defender-vs-nature over pin locations.

    Off-diagonal cells carry the defender's unmitigated expected reward for
    nature's chosen vulnerability under the given criterion; diagonal cells
    score the base policy plus one pinned honeypot at the matching location
    against the attacker's best response on the augmented graph.
    """
    rows = list(report)
    if not rows:
        raise ValueError("no candidate locations for the nature game")
    if mitigation_kind != "pinned":
        raise ValueError(f"unsupported mitigation_kind {mitigation_kind!r}")
    if criterion not in ("pessimistic", "optimistic"):
        raise ValueError(f"criterion must be 'pessimistic' or 'optimistic', got {criterion!r}")

    n = len(rows)
    matrix = np.empty((n, n))
    for j, rec in enumerate(rows):
        unmitigated = rec.pessimistic if criterion == "pessimistic" else rec.optimistic
        matrix[:, j] = -unmitigated
    for i, rec in enumerate(rows):
        paths2 = _augmented_paths(game1.graph, rec.edge)
        graph2 = augment(game1.graph, rec.edge)
        rewards, _ = _mixed_columns(
            graph2, game1.params, game1.actions, x1, paths2, (rec.edge,)
        )
        matrix[i, i] = -float(np.max(rewards))
    solution = solve_zero_sum(matrix)
    return NatureGame(locations=tuple(r.edge for r in rows), matrix=matrix, solution=solution)


def critical_point_mitigation(
    game1: GameInstance,
    params: GameParams,
    report,
    *,
    kappa: float = 1.5,
    top_n: int = 10,
    add_honeypot: bool = False,
) -> MitigationPlan:
    """Reshape the base policy around critical nodes instead of pinning.

    Critical nodes are non-entry endpoints of the positive-impact candidate
    edges (up to ``top_n`` in impact order) that lie on at least two attack
    paths of the original graph. Their values are scaled by ``kappa`` and the
    base game is re-solved on the boosted values; actual rewards keep the
    true values. Optionally one honeypot is pinned on the top-impact edge.
    """
    if kappa < 1:
        raise ValueError(f"kappa must be >= 1, got {kappa}")
    ranked = rank_records(report)
    top = [r for r in ranked if r.impact > 1e-9][:top_n]

    entries = set(game1.graph.entry_ids)
    candidate_nodes = {n for r in top for n in r.edge if n not in entries}
    path_hits = {n: 0 for n in candidate_nodes}
    for path in game1.paths:
        for n in candidate_nodes & set(path.nodes):
            path_hits[n] += 1
    critical = sorted(n for n, hits in path_hits.items() if hits >= 2)

    boosted = {n: game1.graph.value(n) * kappa for n in critical}
    nodes = tuple(
        NodeRecord(id=n.id, value=boosted.get(n.id, n.value), role=n.role)
        for n in game1.graph.nodes
    )
    boosted_graph = graph_from_parts(nodes, game1.graph.edges)
    boosted_game = build_matrix(boosted_graph, params)
    solution = solve_zero_sum(boosted_game.matrix)

    pinned = ()
    if add_honeypot and top:
        pinned = (top[0].edge,)
    return MitigationPlan(
        kind="critical_point",
        pinned_edges=pinned,
        modified_policy=solution.defender_strategy,
        boosted_values=boosted,
    )


def _optimistic_outcome(game1, policy, pins, edge):
    """Equilibrium attacker strategy of the pinned augmented game, scored
    against the padded mitigated policy."""
    graph2 = augment(game1.graph, edge)
    game2 = build_matrix(graph2, game1.params)
    pinned_matrix = np.empty_like(game2.matrix)
    for i, action in enumerate(game2.actions):
        for j, path in enumerate(game2.paths):
            pinned_matrix[i, j] = reward(graph2, game1.params, action, path, pins)
    y2 = solve_zero_sum(pinned_matrix).attacker_strategy
    xhat = pad_strategy(policy, game1, game2)
    reward_after = float(-(xhat @ pinned_matrix @ y2))
    _, capture_cols = _mixed_columns(graph2, game1.params, game1.actions, policy, game2.paths, pins)
    return reward_after, float(capture_cols @ y2), game2.paths


def evaluate_mitigation(
    plan: MitigationPlan,
    game1: GameInstance,
    x_base,
    report,
    *,
    criterion: str = "pessimistic",
    tol: float = PREVENTION_TOL,
) -> MitigationMetrics:
    """Score a plan over every scanned candidate.

    For each candidate the attacker's criterion strategy is recomputed
    against the mitigated defender (modified or base policy plus pins). A
    candidate counts as prevented when the mitigated attacker reward does not
    exceed what the attacker could already get on the original graph against
    the same mitigated defender, so the zero-day yields no residual benefit.
    Capture proportions are exact expectations under both strategies.
    """
    policy = plan.modified_policy if plan.modified_policy is not None else np.asarray(x_base)
    pins = tuple(tuple(p) for p in plan.pinned_edges)
    outcomes = []
    for rec in report:
        paths2 = _augmented_paths(game1.graph, rec.edge)
        graph2 = augment(game1.graph, rec.edge)

        before_rewards, before_capture = _mixed_columns(
            graph2, game1.params, game1.actions, x_base, paths2, ()
        )
        b_idx = int(np.argmax(before_rewards))

        if criterion == "optimistic":
            reward_after, capture_after, _ = _optimistic_outcome(game1, policy, pins, rec.edge)
        else:
            after_rewards, after_capture = _mixed_columns(
                graph2, game1.params, game1.actions, policy, paths2, pins
            )
            a_idx = int(np.argmax(after_rewards))
            reward_after = float(after_rewards[a_idx])
            capture_after = float(after_capture[a_idx])

        base_rewards, _ = _mixed_columns(
            game1.graph, game1.params, game1.actions, policy, game1.paths, pins
        )
        baseline = float(np.max(base_rewards))
        outcomes.append(
            CandidateOutcome(
                edge=rec.edge,
                reward_before=float(before_rewards[b_idx]),
                reward_after=reward_after,
                capture_before=float(before_capture[b_idx]),
                capture_after=capture_after,
                prevented=bool(reward_after <= baseline + tol),
            )
        )
    effectiveness = sum(o.prevented for o in outcomes) / len(outcomes) if outcomes else 0.0
    capture_before = float(np.mean([o.capture_before for o in outcomes])) if outcomes else 0.0
    capture_after = float(np.mean([o.capture_after for o in outcomes])) if outcomes else 0.0
    return MitigationMetrics(
        outcomes=outcomes,
        effectiveness=effectiveness,
        capture_before=capture_before,
        capture_after=capture_after,
    )
