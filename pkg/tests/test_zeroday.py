import pytest

from decoygraph.game import GameParams, build_matrix
from decoygraph.graph import NodeRecord, graph_from_parts
from decoygraph.lp import solve_zero_sum
from decoygraph.zeroday import (
    ZeroDayRecord,
    check_dominance,
    evaluate_candidate,
    rank_records,
    report_csv,
    scan_candidates,
)


def make_record(edge, impact):
    return ZeroDayRecord(
        edge=edge, status="analyzed", naive=0.0, optimistic=0.0, pessimistic=impact,
        impact=impact, new_path_count=1, exploit_probability=0.0, dominance="neither",
        criterion="pessimistic", pessimistic_mode="best_response",
    )


class TestEvaluateCandidate:
    def test_line_graph_pessimistic_impact(self, line3):
        _, _, game, sol = line3
        rec = evaluate_candidate(game, sol.defender_strategy, (1, 3), y1=sol.attacker_strategy)
        assert rec.naive == pytest.approx(-16.0, abs=1e-9)
        assert rec.pessimistic == pytest.approx(10.0, abs=1e-9)
        assert rec.impact == pytest.approx(26.0, abs=1e-9)
        assert rec.new_path_count == 1
        assert rec.exploit_probability == pytest.approx(1.0)

    def test_line_graph_optimistic_value(self, line3):
        _, _, game, sol = line3
        rec = evaluate_candidate(game, sol.defender_strategy, (1, 3), criterion="optimistic",
                                 y1=sol.attacker_strategy)
        assert rec.optimistic == pytest.approx(-3.0, abs=1e-6)
        assert rec.impact == pytest.approx(13.0, abs=1e-6)

    def test_no_new_path_candidate_is_flat(self, line3):
        _, _, game, sol = line3
        rec = evaluate_candidate(game, sol.defender_strategy, (3, 2), y1=sol.attacker_strategy)
        assert rec.new_path_count == 0
        assert rec.optimistic == pytest.approx(rec.naive, abs=1e-9)
        assert rec.pessimistic == pytest.approx(rec.naive, abs=1e-9)
        assert rec.impact == pytest.approx(0.0, abs=1e-9)
        assert rec.exploit_probability == 0.0

    def test_game2_ne_mode_matches_padded_formula(self, line3):
        _, _, game, sol = line3
        rec = evaluate_candidate(
            game, sol.defender_strategy, (1, 3), pessimistic_mode="game2_ne",
            y1=sol.attacker_strategy,
        )
        # with the equilibrium attacker strategy both criteria coincide
        assert rec.pessimistic == pytest.approx(rec.optimistic, abs=1e-9)

    def test_rejects_unknown_criterion(self, line3):
        _, _, game, sol = line3
        with pytest.raises(ValueError, match="criterion"):
            evaluate_candidate(game, sol.defender_strategy, (1, 3), criterion="hopeful")


class TestScan:
    def test_naive_column_constant(self, tree7):
        graph, params, _, sol = tree7
        rows = scan_candidates(graph, params, solution=sol)
        naives = {round(r.naive, 9) for r in rows}
        assert len(naives) == 1

    def test_pessimistic_monotonicity(self, tree7):
        graph, params, _, sol = tree7
        rows = scan_candidates(graph, params, solution=sol)
        assert all(r.pessimistic >= r.naive - 1e-9 for r in rows)

    def test_zero_and_positive_impacts_present(self, tree7):
        graph, params, _, sol = tree7
        rows = scan_candidates(graph, params, solution=sol)
        assert any(r.impact > 1e-9 for r in rows)
        assert any(abs(r.impact) <= 1e-9 for r in rows)

    def test_thread_count_does_not_change_report(self, tree7):
        graph, params, _, sol = tree7
        seq = scan_candidates(graph, params, solution=sol, threads=1)
        par = scan_candidates(graph, params, solution=sol, threads=4)
        assert seq == par

    def test_env_var_thread_cap(self, tree7, monkeypatch):
        graph, params, _, sol = tree7
        monkeypatch.setenv("DECOYGRAPH_THREADS", "3")
        rows = scan_candidates(graph, params, solution=sol)
        assert rows == scan_candidates(graph, params, solution=sol, threads=1)

    def test_csv_layout(self, line3):
        graph, params, _, sol = line3
        rows = scan_candidates(graph, params, solution=sol)
        text = report_csv(rows)
        lines = text.strip().split("\n")
        assert lines[0] == "edge_u,edge_v,naive,optimistic,pessimistic,impact,y_e,dominance"
        assert lines[1].startswith("1,3,-16.000000,")
        assert "26.000000" in lines[1]


class TestRanking:
    def test_tie_break_on_edge(self):
        rows = [make_record((2, 5), 26.0), make_record((9, 9), 0.0), make_record((1, 3), 26.0)]
        ranked = rank_records(rows)
        assert [r.edge for r in ranked] == [(1, 3), (2, 5), (9, 9)]

    def test_singleton(self):
        rows = [make_record((1, 2), 5.0)]
        assert rank_records(rows) == rows


def dominated_fixture():
    """Chain 1-2-3 plus a costly zero-value detour 4-5-6 into the target."""
    nodes = [
        NodeRecord(1, 0.0, "entry"),
        NodeRecord(2, 1.0, "intermediate"),
        NodeRecord(3, 2.0, "target"),
        NodeRecord(4, 0.0, "intermediate"),
        NodeRecord(5, 0.0, "intermediate"),
        NodeRecord(6, 0.0, "intermediate"),
    ]
    edges = [(1, 2), (2, 3), (4, 5), (5, 6), (6, 3)]
    return graph_from_parts(nodes, edges)


class TestDominance:
    def test_dominant_case_agrees_with_best_response(self, line3):
        _, _, game, sol = line3
        klass = check_dominance(game, sol.defender_strategy, (1, 3), y1=sol.attacker_strategy)
        assert klass == "dominant"
        rec = evaluate_candidate(game, sol.defender_strategy, (1, 3), y1=sol.attacker_strategy)
        assert rec.dominance == "dominant"
        # the fixed-defender best response indeed plays the new path
        assert rec.exploit_probability == pytest.approx(1.0)

    @pytest.mark.parametrize("hop_cost, expected", [(13.0, "dominated"), (12.5, "neither")])
    def test_dominated_and_boundary(self, hop_cost, expected):
        graph = dominated_fixture()
        params = GameParams(cap=10, esc=5, honeypot_cost=1, attack_cost_per_hop=hop_cost, budget=1)
        game = build_matrix(graph, params)
        sol = solve_zero_sum(game.matrix)
        assert sol.defender_strategy[game.actions.index((1,))] == pytest.approx(1.0)
        klass = check_dominance(game, sol.defender_strategy, (1, 4), y1=sol.attacker_strategy)
        assert klass == expected
        rec = evaluate_candidate(game, sol.defender_strategy, (1, 4), y1=sol.attacker_strategy)
        assert rec.dominance == expected
        if expected == "dominated":
            # best response keeps zero probability on the new path
            assert rec.exploit_probability == pytest.approx(0.0)
            assert rec.impact == pytest.approx(0.0, abs=1e-9)

    def test_requires_new_path(self, line3):
        _, _, game, sol = line3
        with pytest.raises(ValueError, match="no new attack path"):
            check_dominance(game, sol.defender_strategy, (3, 2), y1=sol.attacker_strategy)


def test_candidate_independence_matches_itemwise(line3):
    graph, params, game, sol = line3
    rows = scan_candidates(graph, params, solution=sol)
    for rec in rows:
        skip_opt = rec.status == "dominant"
        again = evaluate_candidate(
            game, sol.defender_strategy, rec.edge, y1=sol.attacker_strategy,
            status=rec.status, compute_optimistic=not skip_opt,
        )
        assert again == rec
