import json
import math
from fractions import Fraction
from itertools import combinations

import pytest

from threshold_lab.constructions import blow_up, make_template
from threshold_lab.errors import BudgetExceededError, DomainError
from threshold_lab.graphs import Graph
from threshold_lab.harness import (
    ExperimentReport,
    GnpParams,
    RNG_NAME,
    SplitMix64,
    bad_pair_count,
    check_ambient_properties,
    count_completable,
    derive_trial_seed,
    embed_template,
    evaluate_candidate,
    lower_regular_check,
    parse_probability,
    robust_second_neighbourhood,
    run_template_experiment,
    sample_gnp,
)


# -- sampling ------------------------------------------------------------------


def test_probability_parsing():
    assert parse_probability("0.3") == Fraction(3, 10)
    assert parse_probability("1/3") == Fraction(1, 3)
    assert parse_probability(1) == 1
    with pytest.raises(DomainError):
        parse_probability("1.5")


def test_sample_determinism():
    params = GnpParams(50, "0.3", 99)
    assert sample_gnp(params) == sample_gnp(params)
    other = sample_gnp(GnpParams(50, "0.3", 100))
    assert other != sample_gnp(params)


def test_sample_extremes():
    assert sample_gnp(GnpParams(0, "0.5", 1)).n == 0
    assert sample_gnp(GnpParams(10, 0, 1)).edge_count() == 0
    assert sample_gnp(GnpParams(10, 1, 1)).edge_count() == 45


def test_sample_edge_count_calibration():
    n, p = 300, Fraction(3, 10)
    mean = float(p) * math.comb(n, 2)
    sd = math.sqrt(mean * (1 - float(p)))
    for seed in range(20):
        g = sample_gnp(GnpParams(n, p, seed))
        assert abs(g.edge_count() - mean) < 5 * sd


def test_trial_seed_derivation_distinct():
    seeds = {derive_trial_seed(42, i) for i in range(100)}
    assert len(seeds) == 100


# -- robust second neighbourhood -----------------------------------------------------


def test_robust_second_neighbourhood_complete():
    g = Graph.complete(6)
    # cutoff d p^2 n = 4 <= n-2
    assert robust_second_neighbourhood(g, 0, Fraction(2, 3), 1) == [1, 2, 3, 4, 5]


def test_robust_second_neighbourhood_star_and_empty():
    star = Graph.from_edges(6, [(0, i) for i in range(1, 6)])
    d = Fraction(1, 6)  # cutoff = 1 with p = 1, n = 6
    assert robust_second_neighbourhood(star, 1, d, 1) == [2, 3, 4, 5]
    assert robust_second_neighbourhood(star, 0, d, 1) == []
    assert robust_second_neighbourhood(Graph.empty(5), 0, Fraction(1, 5), 1) == []


def test_robust_second_neighbourhood_symmetry():
    g = sample_gnp(GnpParams(12, "0.5", 3))
    sets = {v: set(robust_second_neighbourhood(g, v, Fraction(1, 4), "0.5"))
            for v in range(12)}
    for v in range(12):
        for w in sets[v]:
            assert v in sets[w]


# -- completable sets ------------------------------------------------------------------


def test_count_completable_complete():
    g = Graph.complete(9)
    out = count_completable(g, 0, 1, 2, range(2, 9))
    assert out["mode"] == "exhaustive" and out["count"] == math.comb(7, 2)


def test_count_completable_edgeless_and_oracle():
    assert count_completable(Graph.empty(6), 0, 1, 2, range(2, 6))["count"] == 0
    g = Graph.complete_multipartite([6, 6, 6])
    out = count_completable(g, 0, 1, 2, range(6, 12))
    brute = 0
    for z in combinations(range(6, 12), 2):
        common = g.common_neighbourhood(z)
        if (common & g.adj[0]).bit_count() >= 2 and \
                (common & g.adj[1]).bit_count() >= 2:
            brute += 1
    assert out["count"] == brute


def test_count_completable_sampling_mode():
    g = Graph.complete(30)
    out = count_completable(g, 0, 1, 4, range(2, 30), exhaustive_limit=100,
                            sample_count=500, seed=5)
    assert out["mode"] == "sampled"
    exact = math.comb(28, 4)
    lo, hi = out["ci95"]
    assert lo <= exact <= hi  # every subset completable: rate is exactly 1


# -- bad pairs -------------------------------------------------------------------------


def test_bad_pair_count_extremes():
    assert bad_pair_count(Graph.empty(6), [0, 1, 2], [3, 4, 5],
                          Fraction(1, 10), "0.5") == 3
    assert bad_pair_count(Graph.complete(8), [0, 1, 2], [3, 4, 5, 6, 7],
                          Fraction(1, 2), 1) == 0
    with pytest.raises(DomainError):
        bad_pair_count(Graph.empty(4), [0, 1], [1, 2], Fraction(1, 2), 1)


def test_bad_pair_count_monotone_in_gamma():
    g = sample_gnp(GnpParams(20, "0.4", 8))
    u, w = list(range(8)), list(range(8, 20))
    counts = [bad_pair_count(g, u, w, Fraction(k, 10), "0.4") for k in range(11)]
    assert counts == sorted(counts)


# -- lower regularity --------------------------------------------------------------------


def oracle_lower_regular(g, aa, bb, eps, d, p):
    """Brute force over all qualifying subset pairs."""
    need = (Fraction(d) - Fraction(eps)) * parse_probability(p)
    min_x = math.ceil(Fraction(eps) * len(aa))
    min_y = math.ceil(Fraction(eps) * len(bb))
    for xs in range(max(min_x, 1), len(aa) + 1):
        for x in combinations(aa, xs):
            for ys in range(max(min_y, 1), len(bb) + 1):
                for y in combinations(bb, ys):
                    e = sum(1 for a in x for b in y if g.has_edge(a, b))
                    if e < need * len(x) * len(y):
                        return False
    return True


def test_lower_regular_extremes():
    kbip = Graph.complete_multipartite([4, 4])
    assert lower_regular_check(kbip, range(4), range(4, 8),
                               Fraction(1, 4), 1, 1)["regular"]
    out = lower_regular_check(Graph.empty(8), range(4), range(4, 8),
                              Fraction(1, 4), Fraction(1, 2), 1)
    assert not out["regular"]
    assert out["violating_x"] and out["violating_y"]


def test_lower_regular_against_oracle():
    for seed in range(12):
        g = sample_gnp(GnpParams(10, "0.5", seed))
        aa, bb = list(range(5)), list(range(5, 10))
        got = lower_regular_check(g, aa, bb, Fraction(1, 5), Fraction(1, 2), "0.5")
        assert got["regular"] == oracle_lower_regular(
            g, aa, bb, Fraction(1, 5), Fraction(1, 2), "0.5")
        if not got["regular"]:
            x, y = got["violating_x"], got["violating_y"]
            e = sum(1 for a in x for b in y if g.has_edge(a, b))
            need = (Fraction(1, 2) - Fraction(1, 5)) * Fraction(1, 2)
            assert e < need * len(x) * len(y)


def test_lower_regular_monotone_under_edge_addition():
    rng = SplitMix64(31)
    for seed in range(8):
        g = sample_gnp(GnpParams(8, "0.35", seed))
        aa, bb = list(range(4)), list(range(4, 8))
        before = lower_regular_check(g, aa, bb, Fraction(1, 4),
                                     Fraction(1, 2), "0.5")["regular"]
        if before:
            continue
        rows = list(g.adj)
        for a in aa:  # add all cross edges: must become regular
            for b in bb:
                rows[a] |= 1 << b
                rows[b] |= 1 << a
        full = Graph(8, tuple(rows))
        assert lower_regular_check(full, aa, bb, Fraction(1, 4),
                                   Fraction(1, 2), "0.5")["regular"]


def test_lower_regular_cap_and_sampling():
    big = Graph.empty(40)
    with pytest.raises(BudgetExceededError):
        lower_regular_check(big, range(20), range(20, 40),
                            Fraction(1, 4), Fraction(1, 2), "0.5")
    out = lower_regular_check(big, range(20), range(20, 40), Fraction(1, 4),
                              Fraction(1, 2), "0.5", sample_count=50, seed=1)
    assert out["mode"] == "sampled" and not out["regular"]


# -- ambient audit ------------------------------------------------------------------------


def test_audit_complete_graph():
    g = Graph.complete(30)
    rep = check_ambient_properties(g, 1, set_size_cap=1, sample_count=50)
    assert rep["A1"][0]["relative_deviation"] == pytest.approx(1 / 30)


def test_audit_mismatch_flagged():
    rep = check_ambient_properties(Graph.empty(40), "0.3",
                                   set_size_cap=1, sample_count=50)
    assert rep["A3"]["mean_relative_deviation"] == pytest.approx(1.0)


def test_audit_sampled_graph_close():
    g = sample_gnp(GnpParams(400, "0.3", 4))
    rep = check_ambient_properties(g, "0.3", set_size_cap=2, sample_count=200,
                                   seed=2)
    for entry in rep["A1"]:
        assert entry["relative_deviation"] < 0.15
    assert rep["A3"]["mean_relative_deviation"] < 0.15


# -- template embedding ---------------------------------------------------------------------


def test_embed_template_p1_exact():
    tpl = make_template(Graph.complete(3), 30, 3)
    rec = embed_template(tpl, GnpParams(30, 1, 0), Fraction(1, 10))
    assert rec["clique_found"]
    assert rec["min_degree"] == tpl.graph.min_degree()
    assert rec["x_edges_preserved"]


def test_embed_template_k1_always_passes_round1():
    from threshold_lab.constructions import TemplateGraph
    g = Graph.from_edges(10, [(u, v) for u in range(3, 10)
                              for v in range(u + 1, 10)])
    tpl = TemplateGraph(g, (0,), (1, 2))
    for seed in range(5):
        rec = embed_template(tpl, GnpParams(10, "0.5", seed), Fraction(1, 10))
        assert rec["clique_found"]


def test_embed_template_p0_no_clique():
    tpl = make_template(Graph.complete(3), 12, 3)
    rec = embed_template(tpl, GnpParams(12, 0, 1), Fraction(1, 10))
    assert not rec["clique_found"] and rec["min_degree"] is None


def test_experiment_report_shape_and_determinism():
    tpl = make_template(Graph.complete(3), 40, 3)
    rep1 = run_template_experiment(tpl, 40, "0.5", 7, 5, Fraction(1, 10),
                                   Fraction(3, 5))
    rep2 = run_template_experiment(tpl, 40, "0.5", 7, 5, Fraction(1, 10),
                                   Fraction(3, 5))
    assert rep1.to_json_lines() == rep2.to_json_lines()
    assert rep1.trials == 5 and len(rep1.per_trial) == 5
    lines = rep1.to_json_lines().strip().split("\n")
    assert len(lines) == 6
    summary = json.loads(lines[-1])
    assert summary["rng"] == RNG_NAME and summary["trials"] == 5
    with pytest.raises(DomainError):
        ExperimentReport(1, 2, ({},))


# -- candidate evaluation ----------------------------------------------------------------------


def test_evaluate_candidate():
    g = blow_up(Graph.cycle(5), 3)
    rec = evaluate_candidate(g, Graph.cycle(5), Fraction(1, 2), 1)
    assert rec["h_free"] is False
    rec2 = evaluate_candidate(Graph.complete_multipartite([4, 4]),
                              Graph.complete(3), Fraction(1, 4), 1)
    assert rec2["h_free"] is True
    assert rec2["chromatic_number"] == 2
    assert rec2["degree_ok"] == (4 >= Fraction(1, 4) * 8)
