"""Equilibrium efficiency: coordinated benchmark, cost bounds, PoA, PoS.

The coordinated benchmark prices every cross link at the cheaper of the
two operators' cross costs, since a joint designer would always hand a
cross link to whichever side builds it more cheaply.  On small instances
(n1 + n2 <= 7) the benchmark is an exact minimum-cost search; on larger
symmetric instances it is the cheaper of two certified constructions
(an all-cross band, or one Harary ring per layer plus k + 1 bridges),
reported together with the analytic lower bound and an exactness flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .connectivity import edge_connectivity_pairs
from .construction import build_harary, stage1_allocate, structured_solve
from .game import (
    DEFAULT_SEARCH_CAP,
    CostProfile,
    _Budget,
    attack_budget,
    get_universe,
    null_spe_check,
    solve_spe_exact,
)
from .graph import LayeredGraph, Owner, from_pairs


class MetricsError(ValueError):
    pass


@dataclass(frozen=True)
class TeamResult:
    """Coordinated (team-optimal) design: graph, total cost, exactness."""

    graph: LayeredGraph | None
    cost: Fraction | None
    exact: bool
    null: bool


@dataclass(frozen=True)
class EfficiencyReport:
    c_spe: Fraction | None
    c_co: Fraction | None
    poa: Fraction | None
    lower_bound: Fraction
    upper_bound: Fraction | None
    spe_null: bool
    co_exact: bool


@dataclass(frozen=True)
class SeniorityReport:
    c2_second: Fraction
    c2_first: Fraction
    pos: Fraction | None
    infinite: bool


@dataclass(frozen=True)
class SweepEntry:
    k: int
    null: bool
    reason: str | None
    op1_intra: int
    op1_cross: int
    op2_intra: int
    op2_cross: int
    u1: Fraction | None
    u2: Fraction | None


def cost_bounds(n1: int, n2: int, k: int, costs: CostProfile):
    """Analytic (lower, upper) bounds on the coordinated build cost.

    The lower bound prices the k + 1 mandatory cross links at the cheaper
    cross cost and every remaining link at min(c1, c2); it is valid when
    intra links are no pricier than cross links (min(c1, c2) <=
    min(c12, c21)), the framework's standing assumption.  The upper bound
    (two Harary rings plus k + 1 bridges) is only defined when both
    layers have at least k + 1 nodes; None otherwise.
    """
    cmin = min(costs.c12, costs.c21)
    lower = (k + 1) * cmin + (((n1 + n2 - 2) * (k + 1) + 1) // 2) * min(
        costs.c1, costs.c2
    )
    upper = None
    if n1 >= k + 1 and n2 >= k + 1:
        upper = (
            (k + 1) * cmin
            + ((n1 * (k + 1) + 1) // 2) * costs.c1
            + ((n2 * (k + 1) + 1) // 2) * costs.c2
        )
    return lower, upper


def _solve_team_exact(n1, n2, k, costs, cap):
    uni = get_universe(n1, n2)
    cmin = min(costs.c12, costs.c21)
    budget = _Budget(cap)
    p1, p2, px = uni.intra1_bits, uni.intra2_bits, uni.cross_bits
    need_total = ((n1 + n2) * (k + 1) + 1) // 2

    lattice = []
    for a in range(len(p1) + 1):
        for b in range(len(p2) + 1):
            for x in range(len(px) + 1):
                if x < k + 1 or a + b + x < need_total:
                    continue
                if 2 * a + x < n1 * (k + 1) or 2 * b + x < n2 * (k + 1):
                    continue
                cost = a * costs.c1 + b * costs.c2 + x * cmin
                lattice.append((cost, a + b + x, a, b, x))
    lattice.sort()

    for cost, _, a, b, x in lattice:
        mask = _place_team(uni, k, a, b, x, budget)
        if mask is not None:
            return mask, cost
    return None, None


def _place_team(uni, k, a, b, x, budget):
    """Search for a intra-1 + b intra-2 + x cross edges with lam >= k + 1."""
    groups = [
        (uni.intra1_bits, a),
        (uni.intra2_bits, b),
        (uni.cross_bits, x),
    ]
    slots = [0] * uni.n
    for cands, _ in groups:
        for bit in cands:
            u, v = uni.pairs[bit]
            slots[u] += 1
            slots[v] += 1
    deficit = [k + 1] * uni.n

    def rec(gi, idx, left, mask):
        budget.tick()
        if gi == len(groups):
            return mask if uni.lam(mask) >= k + 1 else None
        cands, want = groups[gi]
        if left is None:
            left = want
        if left == 0:
            return rec(gi + 1, 0, None, mask)
        if left > len(cands) - idx:
            return None
        if any(deficit[v] > slots[v] for v in range(uni.n)):
            return None
        bit = cands[idx]
        u, v = uni.pairs[bit]
        slots[u] -= 1
        slots[v] -= 1
        deficit[u] -= 1
        deficit[v] -= 1
        result = rec(gi, idx + 1, left - 1, mask | (1 << bit))
        deficit[u] += 1
        deficit[v] += 1
        if result is None:
            result = rec(gi, idx + 1, left, mask)
        slots[u] += 1
        slots[v] += 1
        return result

    return rec(0, 0, None, 0)


def _team_mask_graph(uni, mask, costs) -> LayeredGraph:
    cross_owner = Owner.OPERATOR1 if costs.c12 <= costs.c21 else Owner.OPERATOR2
    triples = []
    for u, v in uni.pairs_of(mask):
        if v < uni.n1:
            triples.append((u, v, Owner.OPERATOR1))
        elif u >= uni.n1:
            triples.append((u, v, Owner.OPERATOR2))
        else:
            triples.append((u, v, cross_owner))
    return from_pairs(uni.n1, uni.n2, triples)


def _team_structured(n1, n2, k, costs):
    """Cheapest certified large-instance construction (symmetric only)."""
    if n1 != n2 or k >= n1:
        raise MetricsError("structured benchmark needs n1 == n2 and k < n1")
    cmin = min(costs.c12, costs.c21)
    cross_owner = Owner.OPERATOR1 if costs.c12 <= costs.c21 else Owner.OPERATOR2
    candidates = []

    band = [(i, n1 + (i + c) % n1, cross_owner) for i in range(n1) for c in range(k + 1)]
    candidates.append((Fraction(n1 * (k + 1)) * cmin, band))

    if k + 1 < n1:
        ring = build_harary(n1, k + 1)
        triples = [(u, v, Owner.OPERATOR1) for u, v in ring]
        triples += [(u + n1, v + n1, Owner.OPERATOR2) for u, v in ring]
        triples += [(i, n1 + i, cross_owner) for i in range(k + 1)]
        cost = (
            ((n1 * (k + 1) + 1) // 2) * (costs.c1 + costs.c2) + (k + 1) * cmin
        )
        candidates.append((cost, triples))

    best = None
    for cost, triples in sorted(candidates, key=lambda t: t[0]):
        pairs = [(u, v) for u, v, _ in triples]
        if edge_connectivity_pairs(n1 + n2, pairs, cap_at=k + 1) >= k + 1:
            best = (cost, triples)
            break
    if best is None:
        raise MetricsError("no certified structured benchmark construction")
    cost, triples = best
    return from_pairs(n1, n2, triples), cost


def team_optimal(
    n1: int, n2: int, k: int, costs: CostProfile, cap: int = DEFAULT_SEARCH_CAP
) -> TeamResult:
    """Minimum-cost k-resistant design when the operators coordinate.

    Exact for n1 + n2 <= 7; certified upper-bound construction (flagged
    inexact unless it meets the analytic lower bound) for larger
    symmetric instances.  Null when no design can exist or the joint
    lower bound already reaches 2.
    """
    lower, _ = cost_bounds(n1, n2, k, costs)
    if n1 + n2 - 1 < k + 1 or lower >= 2:
        return TeamResult(None, None, exact=True, null=True)
    if n1 + n2 <= 7:
        uni = get_universe(n1, n2)
        mask, cost = _solve_team_exact(n1, n2, k, costs, cap)
        if mask is None:
            return TeamResult(None, None, exact=True, null=True)
        return TeamResult(_team_mask_graph(uni, mask, costs), cost, True, False)
    graph, cost = _team_structured(n1, n2, k, costs)
    return TeamResult(graph, cost, exact=(cost == lower), null=False)


def solve_game(
    n1: int,
    n2: int,
    costs: CostProfile,
    mode: str = "auto",
    cap: int = DEFAULT_SEARCH_CAP,
):
    """Dispatch to the structured or exact equilibrium solver.

    Returns (SpeSolution, BuiltNetwork or None).  Auto mode prefers the
    structured route on symmetric instances satisfying its cost-ordering
    precondition, falls back to exact search for n1 + n2 <= 7, and
    raises otherwise.
    """
    k = attack_budget(costs.ca)
    structured_ok = (
        n1 == n2 and 1 <= k < n1 and costs.c1 <= costs.c12 and costs.c2 <= costs.c21
    )
    if mode == "structured" or (mode == "auto" and structured_ok):
        if not structured_ok:
            raise MetricsError("instance violates structured-solver preconditions")
        return structured_solve(n1, n2, costs)
    if mode == "exact" or (mode == "auto" and n1 + n2 <= 7):
        if n1 + n2 > 7 and mode != "exact":
            raise MetricsError("instance too large for exact search")
        return solve_spe_exact(n1, n2, costs, cap=cap), None
    raise MetricsError("no applicable solver for this instance")


def price_of_anarchy(
    n1: int,
    n2: int,
    costs: CostProfile,
    mode: str = "auto",
    cap: int = DEFAULT_SEARCH_CAP,
) -> EfficiencyReport:
    """Worst equilibrium build cost over the coordinated optimum."""
    k = attack_budget(costs.ca)
    solution, _ = solve_game(n1, n2, costs, mode=mode, cap=cap)
    lower, upper = cost_bounds(n1, n2, k, costs)
    team = team_optimal(n1, n2, k, costs, cap=cap)
    if solution.is_null or team.null:
        return EfficiencyReport(
            c_spe=None if solution.is_null else Fraction(0),
            c_co=team.cost,
            poa=None,
            lower_bound=lower,
            upper_bound=upper,
            spe_null=solution.is_null,
            co_exact=team.exact,
        )
    c_spe = (1 - solution.u1) + max(1 - u2 for u2 in solution.u2_values)
    return EfficiencyReport(
        c_spe=c_spe,
        c_co=team.cost,
        poa=c_spe / team.cost,
        lower_bound=lower,
        upper_bound=upper,
        spe_null=False,
        co_exact=team.exact,
    )


def price_of_seniority(
    n1: int,
    n2: int,
    costs: CostProfile,
    mode: str = "auto",
    cap: int = DEFAULT_SEARCH_CAP,
) -> SeniorityReport:
    """Operator 2's cost penalty for moving second instead of first.

    The swapped ordering relabels the layers: the new first mover keeps
    operator 2's admissible pools and unit costs.
    """
    solution, _ = solve_game(n1, n2, costs, mode=mode, cap=cap)
    swapped = CostProfile(
        c1=costs.c2, c2=costs.c1, c12=costs.c21, c21=costs.c12, ca=costs.ca
    )
    solution_swapped, _ = solve_game(n2, n1, swapped, mode=mode, cap=cap)
    c2_second = max(1 - u2 for u2 in solution.u2_values)
    c2_first = 1 - solution_swapped.u1
    if c2_first == 0:
        if c2_second == 0:
            return SeniorityReport(c2_second, c2_first, Fraction(1), False)
        return SeniorityReport(c2_second, c2_first, None, True)
    return SeniorityReport(c2_second, c2_first, c2_second / c2_first, False)


def threat_sweep(n1: int, costs: CostProfile, ks) -> list:
    """Equilibrium link counts and utilities across attack budgets.

    Symmetric instances only; ``costs.ca`` is ignored (each entry fixes k
    directly).  k = 0 falls outside the (k+1)-regular family: there the
    cheapest design is operator 2's spanning tree (n1 cross links plus
    n1 - 1 intra links), recorded when it costs less than 1.
    """
    entries = []
    for k in ks:
        if k < 0:
            raise MetricsError("attack budget must be non-negative")
        if k == 0:
            tree_cost = n1 * costs.c21 + (n1 - 1) * costs.c2
            if tree_cost < 1:
                entries.append(
                    SweepEntry(0, False, "spanning-tree", 0, 0, n1 - 1, n1, Fraction(1), 1 - tree_cost)
                )
            else:
                entries.append(
                    SweepEntry(0, True, "outside modeled regime", 0, 0, 0, 0, Fraction(0), Fraction(0))
                )
            continue
        is_null, reason = null_spe_check(n1, n1, k, costs)
        plan = None
        if not is_null:
            plan = stage1_allocate(n1, k, costs)
            if not plan.feasible:
                is_null, reason = True, "stage1-infeasible"
        if is_null:
            entries.append(SweepEntry(k, True, reason, 0, 0, 0, 0, Fraction(0), Fraction(0)))
        else:
            entries.append(
                SweepEntry(
                    k,
                    False,
                    None,
                    plan.e11,
                    plan.e12,
                    plan.op2_intra,
                    plan.op2_cross,
                    1 - plan.c1_total,
                    1 - plan.c2_total,
                )
            )
    return entries
