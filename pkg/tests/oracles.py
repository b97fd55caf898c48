"""Independent reference implementations used to cross-check the package.

Everything here is deliberately written from scratch against the model
definitions (brute-force recursion, literal per-node reward sums, the 2x2
closed form) and must stay independent of the library code paths it checks.
"""

from fractions import Fraction
from itertools import permutations


def brute_force_paths(node_ids, edges, entry_ids, target_ids, max_hops=None):
    """Every simple entry-to-target path by exhaustive permutation search.

    Only viable for tiny graphs (<= 8 nodes). Returns sorted tuples of node
    sequences matching the library's (entry, target, lexicographic) order.
    """
    edge_set = set(edges)
    found = set()
    nodes = list(node_ids)
    for k in range(2, len(nodes) + 1):
        for seq in permutations(nodes, k):
            if seq[0] not in entry_ids or seq[-1] not in target_ids:
                continue
            if max_hops is not None and len(seq) - 1 > max_hops:
                continue
            if all((seq[i], seq[i + 1]) in edge_set for i in range(len(seq) - 1)):
                found.add(seq)
    return sorted(found, key=lambda s: (s[0], s[-1], s))


def literal_reward(values, edge_pairs, params, action_edge_ids, path_nodes, pinned=()):
    """Per-node evaluation of the reward sum, term by term.

    ``action_edge_ids`` index into ``edge_pairs``; ``pinned`` holds extra
    honeypot locations as pairs. Mirrors the defender reward definition
    without any algebraic regrouping.
    """
    honeypots = {edge_pairs[e] for e in action_edge_ids}
    honeypots |= {tuple(p) for p in pinned}
    total = 0.0
    for k in range(1, len(path_nodes)):
        node = path_nodes[k]
        covered = (path_nodes[k - 1], node) in honeypots
        if covered:
            total += params.cap * values[node]
        else:
            total -= params.esc * values[node]
        if covered and params.terminate_on_capture:
            break
    total -= params.honeypot_cost * len(honeypots)
    total += params.attack_cost_per_hop * (len(path_nodes) - 1)
    return total


def solve_2x2_exact(matrix):
    """Closed-form value of a 2x2 zero-sum game, exact over rationals.

    Checks for a saddle point first; otherwise applies the mixed-strategy
    indifference formula value = (ad - bc) / (a - b - c + d).
    """
    (a, b), (c, d) = [[Fraction(x).limit_denominator(10**9) for x in row] for row in matrix]
    lower = max(min(a, b), min(c, d))
    upper = min(max(a, c), max(b, d))
    if lower == upper:
        return float(lower)
    denom = a - b - c + d
    return float((a * d - b * c) / denom)
