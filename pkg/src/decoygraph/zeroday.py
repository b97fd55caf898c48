"""Zero-day edge impact analysis against a fixed base deception policy.

For each candidate edge the augmented game is built and the attacker reward
is evaluated two ways: optimistic (the attacker hedges against the defender
knowing the edge, so the padded base policy is scored against the augmented
game's equilibrium attacker strategy) and pessimistic (the attacker is sure
the defender is blind and plays a best response to the fixed base policy over
the enlarged path set). Impact is the chosen criterion's reward minus the
attacker reward of the original game.
"""

from __future__ import annotations

import io
import csv
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .game import GameInstance, GameParams, build_matrix, pad_strategy, pure_strategy
from .graph import AttackGraph, augment, generate_zero_day_candidates
from .lp import solve_zero_sum

CRITERIA = ("pessimistic", "optimistic")
PESSIMISTIC_MODES = ("best_response", "game2_ne")

CSV_COLUMNS = ("edge_u", "edge_v", "naive", "optimistic", "pessimistic", "impact", "y_e", "dominance")

THREADS_ENV_VAR = "DECOYGRAPH_THREADS"


@dataclass(frozen=True)
class ZeroDayRecord:
    """One scanned candidate edge with its reward columns and impact."""

    edge: tuple[int, int]
    status: str
    naive: float
    optimistic: float
    pessimistic: float
    impact: float
    new_path_count: int
    exploit_probability: float
    dominance: str
    criterion: str
    pessimistic_mode: str


def normalize_criterion(criterion: str) -> str:
    aliases = {"pes": "pessimistic", "opt": "optimistic"}
    criterion = aliases.get(criterion, criterion)
    if criterion not in CRITERIA:
        raise ValueError(f"criterion must be one of {CRITERIA}, got {criterion!r}")
    return criterion


def _new_path_columns(game2: GameInstance, new_edge_id: int) -> np.ndarray:
    return np.array([new_edge_id in path.edges for path in game2.paths])


def _classify_dominance(column_rewards, new_mask, y1, naive_mixed) -> str:
    """Strict-dominance classification of the best new path vs the old set.

    ``old_idx[k]`` is the augmented-game column of game-1 path k: sorting the
    enlarged path set preserves the relative order of the original paths.
    """
    new_idx = np.nonzero(new_mask)[0]
    if new_idx.size == 0:
        return "neither"
    old_idx = np.nonzero(~new_mask)[0]
    best_new = int(new_idx[np.argmax(column_rewards[new_idx])])
    r_new = column_rewards[best_new]
    if np.all(r_new > column_rewards[old_idx]):
        return "dominant"
    if y1 is None:
        return "neither"
    supported = [old_idx[k] for k, p in enumerate(np.asarray(y1)) if p > 1e-12]
    if supported and np.all(r_new < column_rewards[supported]) and r_new < naive_mixed:
        return "dominated"
    return "neither"


def evaluate_candidate(
    game1: GameInstance,
    x1,
    edge,
    *,
    criterion: str = "pessimistic",
    pessimistic_mode: str = "best_response",
    y1=None,
    status: str = "analyzed",
    compute_optimistic: bool = True,
) -> ZeroDayRecord:
    """Build the augmented game for one candidate edge and score it.

    ``x1`` is the base deception policy (game-1 defender equilibrium). The
    optional ``y1`` (game-1 attacker equilibrium) enables the dominance
    classification against the supported old paths. When
    ``compute_optimistic`` is false the equilibrium solve of the augmented
    game is skipped and the optimistic column reports the direct
    best-response value (used for rule-dominant entry-to-target edges).
    """
    criterion = normalize_criterion(criterion)
    if pessimistic_mode not in PESSIMISTIC_MODES:
        raise ValueError(f"pessimistic_mode must be one of {PESSIMISTIC_MODES}")

    graph2 = augment(game1.graph, edge)
    game2 = build_matrix(graph2, game1.params)
    xhat = pad_strategy(x1, game1, game2)

    naive = float(np.max(-(np.asarray(x1) @ game1.matrix)))
    column_rewards = -(xhat @ game2.matrix)
    new_mask = _new_path_columns(game2, len(game1.graph.edges))
    new_path_count = int(new_mask.sum())

    br_index = int(np.argmax(column_rewards))
    br_value = float(column_rewards[br_index])
    br_strategy = pure_strategy(len(game2.paths), br_index)

    need_solution = compute_optimistic or pessimistic_mode == "game2_ne"
    if need_solution:
        solution2 = solve_zero_sum(game2.matrix)
        y2 = solution2.attacker_strategy
        padded_value = float(-(xhat @ game2.matrix @ y2))
    else:
        y2 = None
        padded_value = br_value

    optimistic = padded_value if need_solution else br_value
    if pessimistic_mode == "best_response":
        pessimistic = br_value
        pes_strategy = br_strategy
    else:
        pessimistic = padded_value
        pes_strategy = y2

    reward_for_criterion = pessimistic if criterion == "pessimistic" else optimistic
    strategy_for_criterion = pes_strategy if criterion == "pessimistic" else (y2 if y2 is not None else br_strategy)
    impact = reward_for_criterion - naive
    exploit_probability = float(np.asarray(strategy_for_criterion)[new_mask].sum()) if new_path_count else 0.0

    naive_mixed = float(-(np.asarray(x1) @ game1.matrix @ np.asarray(y1))) if y1 is not None else None
    dominance = _classify_dominance(column_rewards, new_mask, y1, naive_mixed)

    return ZeroDayRecord(
        edge=tuple(edge),
        status=status,
        naive=naive,
        optimistic=optimistic,
        pessimistic=pessimistic,
        impact=impact,
        new_path_count=new_path_count,
        exploit_probability=exploit_probability,
        dominance=dominance,
        criterion=criterion,
        pessimistic_mode=pessimistic_mode,
    )


def check_dominance(game1: GameInstance, x1, edge, y1=None) -> str:
    """Classify a candidate edge as dominant, dominated, or neither.

    Dominant: the best new path strictly beats every pre-existing path
    against the fixed policy, so any best response plays it with probability
    one. Dominated: it is strictly worse than every supported old path and
    the old mixed value, so it gets zero probability.
    """
    if y1 is None:
        y1 = solve_zero_sum(game1.matrix).attacker_strategy
    graph2 = augment(game1.graph, edge)
    game2 = build_matrix(graph2, game1.params)
    xhat = pad_strategy(x1, game1, game2)
    column_rewards = -(xhat @ game2.matrix)
    new_mask = _new_path_columns(game2, len(game1.graph.edges))
    if not new_mask.any():
        raise ValueError(f"candidate {tuple(edge)} induces no new attack path")
    naive_mixed = float(-(np.asarray(x1) @ game1.matrix @ np.asarray(y1)))
    return _classify_dominance(column_rewards, new_mask, y1, naive_mixed)


def rank_records(records) -> list[ZeroDayRecord]:
    """Descending by impact, ties broken by ascending (u, v)."""
    return sorted(records, key=lambda r: (-r.impact, r.edge))


def _thread_count(threads) -> int:
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get(THREADS_ENV_VAR)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            return 1
    return 1


def scan_candidates(
    graph: AttackGraph,
    params: GameParams,
    *,
    criterion: str = "pessimistic",
    pessimistic_mode: str = "best_response",
    solution=None,
    threads=None,
) -> list[ZeroDayRecord]:
    """Evaluate every analyzed or rule-dominant candidate edge, ranked.

    Candidates are independent, so the scan may run them on a thread pool
    (``threads`` argument or the DECOYGRAPH_THREADS environment variable);
    results merge in candidate order either way, so output is deterministic.
    """
    criterion = normalize_criterion(criterion)
    game1 = build_matrix(graph, params)
    if solution is None:
        solution = solve_zero_sum(game1.matrix)
    x1 = solution.defender_strategy
    y1 = solution.attacker_strategy

    work = [c for c in generate_zero_day_candidates(graph) if c.status in ("analyzed", "dominant")]

    def run(candidate):
        skip_opt = candidate.status == "dominant" and criterion == "pessimistic"
        return evaluate_candidate(
            game1,
            x1,
            candidate.edge,
            criterion=criterion,
            pessimistic_mode=pessimistic_mode,
            y1=y1,
            status=candidate.status,
            compute_optimistic=not skip_opt,
        )

    n_threads = _thread_count(threads)
    if n_threads > 1 and len(work) > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            records = list(pool.map(run, work))
    else:
        records = [run(c) for c in work]
    return rank_records(records)


def fmt6(value: float) -> str:
    """Six-decimal fixed-point with negative zero normalized away."""
    return f"{round(value, 6) + 0.0:.6f}"


def report_csv(records) -> str:
    """Render scan records as CSV matching the report column layout."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow(
            [
                r.edge[0],
                r.edge[1],
                fmt6(r.naive),
                fmt6(r.optimistic),
                fmt6(r.pessimistic),
                fmt6(r.impact),
                fmt6(r.exploit_probability),
                r.dominance,
            ]
        )
    return buf.getvalue()
