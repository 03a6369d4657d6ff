import random
from fractions import Fraction as F
from itertools import combinations

import pytest

from adhocqos.feasibility import (
    DemandVector,
    MissingDemandError,
    check_d1_condition,
    check_degree_condition,
    check_row_constraints,
    check_shannon_condition,
    clique_bound,
    demand_degree,
    density,
    fractional_chromatic_index,
    fractional_chromatic_number_lp,
    imperfection_ratio,
    max_demand_degree,
    uniform_demands,
    vertex_demands,
)
from adhocqos.generators import random_demands, random_graph, random_vertex_demands
from adhocqos.graphs import (
    SizeLimitError,
    build_graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    enumerate_independent_sets,
    is_bipartite,
    path_graph,
    star_graph,
)
from adhocqos.interference import primary_conflict_graph, protocol_conflict_graph
from adhocqos.experiments import claw_network
from tests.test_lp import scipy_value


def one_hot(G):
    tau = {e: F(0) for e in G.edges}
    tau[G.edges[0]] = F(1)
    return DemandVector(tau)


def brute_density(G, tau):
    best = F(0)
    for k in range(3, G.n + 1, 2):
        for W in combinations(range(G.n), k):
            s = sum((tau[e] for e in G.edges if e[0] in W and e[1] in W), F(0))
            best = max(best, s / F(k - 1, 2))
    return best


def random_instances(count, seed, max_nodes=7):
    rng = random.Random(seed)
    for _ in range(count):
        G = random_graph(rng.randint(2, max_nodes), F(rng.randint(1, 3), 4), rng)
        yield G, random_demands(G, rng)


class TestDemandVector:
    def test_from_rates(self):
        tau = DemandVector.from_rates({(1, 0): 3}, {(1, 0): 12})
        assert tau[(0, 1)] == F(1, 4)
        assert tau.rates == {(1, 0): 3}

    def test_rejects_negative_and_zero_capacity(self):
        with pytest.raises(ValueError):
            DemandVector({(0, 1): F(-1)})
        with pytest.raises(ValueError):
            DemandVector.from_rates({(0, 1): 1}, {(0, 1): 0})

    def test_scaled(self):
        assert DemandVector({3: F(1, 3)}).scaled(3)[3] == 1


class TestDegree:
    def test_examples(self):
        assert demand_degree(cycle_graph(3), uniform_demands(cycle_graph(3), F(1, 3)), 1) == F(2, 3)
        assert max_demand_degree(cycle_graph(4), uniform_demands(cycle_graph(4), F(1, 2))) == (1, 0)
        assert max_demand_degree(cycle_graph(5), uniform_demands(cycle_graph(5), 0))[0] == 0

    def test_missing(self):
        with pytest.raises(MissingDemandError):
            demand_degree(path_graph(3), {(0, 1): F(1)}, 1)


class TestDensity:
    def test_c5(self):
        assert density(cycle_graph(5), uniform_demands(cycle_graph(5), 1)) == (F(5, 2), frozenset(range(5)))

    def test_c3(self):
        assert density(cycle_graph(3), uniform_demands(cycle_graph(3), F(1, 3))) == (1, frozenset(range(3)))

    def test_single_edge(self):
        assert density(path_graph(2), {(0, 1): F(1)}) == (0, frozenset())

    def test_cap(self):
        with pytest.raises(SizeLimitError):
            density(cycle_graph(17), uniform_demands(cycle_graph(17), 1))

    def test_against_brute_force(self):
        for G, tau in random_instances(80, 2):
            val, W = density(G, tau)
            assert val == brute_density(G, tau)
            if val:
                s = sum((tau[e] for e in G.edges if e[0] in W and e[1] in W), F(0))
                assert s / F(len(W) - 1, 2) == val


class TestExactOracles:
    @pytest.mark.parametrize(
        "G, value, expected",
        [(cycle_graph(5), 1, F(5, 2)), (cycle_graph(5), F(1, 2), F(5, 4)), (cycle_graph(4), F(1, 2), 1)],
    )
    def test_fractional_chromatic_index(self, G, value, expected):
        assert fractional_chromatic_index(G, uniform_demands(G, value)) == expected

    def test_lp_examples(self):
        assert fractional_chromatic_number_lp(complete_graph(3), [1, 1, 1]).value == 3
        assert fractional_chromatic_number_lp(empty_graph(3), [F(1, 3), F(1, 2), 0]).value == F(1, 2)

    def test_lp_c5_against_all_independent_sets(self):
        G = cycle_graph(5)
        everything = [s for s in enumerate_independent_sets(G) if s]
        assert len(everything) == 10
        oracle = scipy_value(everything, [1] * 5)
        assert oracle == pytest.approx(2.5)
        res = fractional_chromatic_number_lp(G, [1] * 5)
        assert res.value == F(5, 2)
        assert res.covers([F(1)] * 5)

    def test_lp_accepts_edge_keyed_demands(self):
        G = cycle_graph(5)
        cg = primary_conflict_graph(G)
        assert fractional_chromatic_number_lp(cg, uniform_demands(G, 1)).value == F(5, 2)

    def test_lp_cap(self):
        with pytest.raises(SizeLimitError):
            fractional_chromatic_number_lp(empty_graph(21), [1] * 21)

    def test_missing_vertex_demand(self):
        with pytest.raises(MissingDemandError):
            vertex_demands(complete_graph(3), {0: 1})

    def test_edmonds_matches_lp(self):
        for G, tau in random_instances(60, 4):
            cg = primary_conflict_graph(G)
            res = fractional_chromatic_number_lp(cg, tau)
            assert fractional_chromatic_index(G, tau) == res.value
            assert res.covers(vertex_demands(cg, tau))


class TestCliqueAndImperfection:
    def test_clique_examples(self):
        assert clique_bound(complete_graph(3), [F(1, 3)] * 3) == (1, frozenset({0, 1, 2}))
        assert clique_bound(cycle_graph(5), [F(2, 5)] * 5)[0] == F(4, 5)
        assert clique_bound(empty_graph(3), [F(1), F(2), F(1, 2)]) == (2, frozenset({1}))

    def test_imperfection(self):
        assert imperfection_ratio(primary_conflict_graph(cycle_graph(5))) == F(5, 4)
        assert imperfection_ratio(primary_conflict_graph(cycle_graph(7))) == F(7, 6)
        assert imperfection_ratio(primary_conflict_graph(cycle_graph(6))) == 1
        assert imperfection_ratio(primary_conflict_graph(star_graph(4))) == 1

    def test_imperfection_refuses_protocol_graphs(self):
        with pytest.raises(ValueError):
            imperfection_ratio(protocol_conflict_graph(claw_network()))
        with pytest.raises(ValueError):
            imperfection_ratio(cycle_graph(5))

    def test_sandwich_and_scaled_clique(self):
        rng = random.Random(9)
        checked = 0
        while checked < 80:
            G = random_graph(rng.randint(3, 7), F(rng.randint(1, 3), 4), rng)
            cg = primary_conflict_graph(G)
            if cg.graph.n > 16:
                continue
            tau = random_demands(G, rng)
            lp = fractional_chromatic_number_lp(cg, tau).value
            clique, _ = clique_bound(cg, tau)
            assert clique <= lp <= imperfection_ratio(cg) * clique
            if is_bipartite(G):
                assert lp == clique
            checked += 1


class TestSufficientConditions:
    def test_row_examples(self):
        v = check_row_constraints(cycle_graph(5), [F(1, 3)] * 5, 1)
        assert v.accepted and v.bound_value == 1
        v = check_row_constraints(star_graph(3), [0, 1, 1, 1], 1)
        assert (v.accepted, v.bound_value, v.witness) == (False, 3, 0)
        assert check_row_constraints(empty_graph(1), [1], 1).accepted

    def test_degree_examples(self):
        assert check_degree_condition(complete_graph(3), [F(1, 3)] * 3).accepted
        assert not check_degree_condition(complete_graph(3), [F(1, 2)] * 3).accepted
        assert check_degree_condition(empty_graph(3), [1, 1, 1]).accepted

    def test_shannon_examples(self):
        C3 = cycle_graph(3)
        assert check_shannon_condition(C3, uniform_demands(C3, F(1, 3))).accepted
        G = cycle_graph(5)
        v = check_shannon_condition(G, one_hot(G))
        assert not v.accepted and fractional_chromatic_index(G, one_hot(G)) == 1
        assert check_shannon_condition(G, uniform_demands(G, 0)).accepted

    def test_d1_examples(self):
        C5, C4, C3 = cycle_graph(5), cycle_graph(4), cycle_graph(3)
        assert check_d1_condition(C5, uniform_demands(C5, F(2, 5))).accepted
        v = check_d1_condition(C4, uniform_demands(C4, F(1, 2)))
        assert not v.accepted and v.bound_value == 1
        v = check_d1_condition(C3, uniform_demands(C3, F(1, 3)))
        assert not v.accepted and v.bound_value == 1 and v.witness == (0, 1, 2)

    def test_soundness(self):
        rng = random.Random(21)
        hits = {"shannon": 0, "d1": 0, "row": 0, "degree": 0}
        for _ in range(300):
            G = random_graph(rng.randint(2, 7), F(rng.randint(1, 3), 4), rng)
            tau = random_demands(G, rng).scaled(F(rng.randint(1, 4), 4))
            exact = fractional_chromatic_index(G, tau)
            cg = primary_conflict_graph(G)
            checks = {
                "shannon": check_shannon_condition(G, tau),
                "d1": check_d1_condition(G, tau),
                "row": check_row_constraints(cg, tau, 1),
                "degree": check_degree_condition(cg, tau),
            }
            for name, verdict in checks.items():
                if verdict.accepted:
                    hits[name] += 1
                    assert exact <= 1
        assert all(h > 10 for h in hits.values()), hits

    def test_row_ratio_bounded_by_sigma(self):
        from adhocqos.graphs import induced_star_number
        from adhocqos.feasibility import row_sums

        rng = random.Random(33)
        for _ in range(100):
            G = random_graph(rng.randint(2, 8), F(rng.randint(1, 3), 4), rng)
            if not G.edges:
                continue
            tau = random_vertex_demands(G.n, rng)
            if not any(tau):
                continue
            exact = fractional_chromatic_number_lp(G, tau).value
            assert max(row_sums(G, tau)) <= induced_star_number(G).size * exact

    def test_witnesses_reevaluate(self):
        for G, tau in random_instances(40, 6):
            v = check_shannon_condition(G, tau)
            if v.witness is not None:
                assert demand_degree(G, tau, v.witness) == v.bound_value
            cg = primary_conflict_graph(G)
            val, K = clique_bound(cg, tau)
            dem = vertex_demands(cg, tau)
            assert sum((dem[k] for k in K), F(0)) == val


@pytest.mark.parametrize("c", [F(1, 3), F(2), F(7, 5)])
def test_positive_homogeneity(c):
    for G, tau in random_instances(25, 7):
        scaled = tau.scaled(c)
        assert fractional_chromatic_index(G, scaled) == c * fractional_chromatic_index(G, tau)
        cg = primary_conflict_graph(G)
        assert fractional_chromatic_number_lp(cg, scaled).value == c * fractional_chromatic_number_lp(cg, tau).value
        assert clique_bound(cg, scaled)[0] == c * clique_bound(cg, tau)[0]
