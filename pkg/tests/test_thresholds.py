from fractions import Fraction

import pytest

from threshold_lab.constructions import blow_up
from threshold_lab.errors import BudgetExceededError, DomainError
from threshold_lab.exact import are_isomorphic, canonical_form, chromatic_number
from threshold_lab.formats import parse_graph6
from threshold_lab.graphs import Graph
from threshold_lab.harness import GnpParams, sample_gnp
from threshold_lab.thresholds import (
    PBoundary,
    RegimeRow,
    RegimeTable,
    ThresholdValue,
    chromatic_threshold,
    chromatic_threshold_star,
    enumerate_quotients,
    quotients_with_partitions,
    regime_table,
    regime_table_star,
)


def exact(v):
    return ThresholdValue.exact(v)


# -- threshold values ---------------------------------------------------------------


def test_value_invariants():
    assert exact("1/3").lo == Fraction(1, 3)
    iv = ThresholdValue.interval(0, "1/3", "conjectured zero")
    assert iv.lo == 0 and iv.hi == Fraction(1, 3)
    with pytest.raises(AssertionError):
        ThresholdValue.interval("1/3", "1/3")
    with pytest.raises(DomainError):
        ThresholdValue("Nope")


def test_pboundary_invariants():
    with pytest.raises(DomainError):
        PBoundary("PowerOfN", Fraction(2))
    with pytest.raises(DomainError):
        PBoundary("Constant", Fraction(1, 2))
    assert PBoundary("Constant").order_key() < \
        PBoundary("SubpolynomialOne").order_key() < \
        PBoundary("PowerOfN", Fraction(1, 3)).order_key() < \
        PBoundary("PowerOfN", Fraction(1, 2)).order_key() < \
        PBoundary("LogOverN").order_key()


# -- chromatic_threshold ----------------------------------------------------------


@pytest.mark.parametrize("g,value", [
    (Graph.complete(3), Fraction(1, 3)),
    (Graph.cycle(5), Fraction(0)),
    (Graph.cycle(7), Fraction(0)),
    (Graph.cycle(9), Fraction(0)),
    (Graph.complete(4), Fraction(3, 5)),
    (Graph.complete(5), Fraction(5, 7)),
    (Graph.path(4), Fraction(0)),
])
def test_threshold_known_values(g, value):
    got, _ = chromatic_threshold(g)
    assert got.kind == "Exact" and got.lo == value


def test_threshold_three_cases_shape():
    for seed in range(20):
        g = sample_gnp(GnpParams(6, "0.5", seed))
        if g.edge_count() == 0:
            continue
        r = chromatic_number(g)
        got, witness = chromatic_threshold(g)
        if r == 2:
            assert got.lo == 0
        else:
            allowed = {Fraction(r - 3, r - 2), Fraction(2 * r - 5, 2 * r - 3),
                       Fraction(r - 2, r - 1)}
            assert got.lo in allowed
            assert Fraction(r - 3, r - 2) < Fraction(2 * r - 5, 2 * r - 3) \
                < Fraction(r - 2, r - 1)


def test_threshold_needs_an_edge():
    with pytest.raises(DomainError):
        chromatic_threshold(Graph.empty(3))


# -- quotients -----------------------------------------------------------------------


def test_quotients_k3_only_itself():
    qs = list(enumerate_quotients(Graph.complete(3)))
    assert len(qs) == 1 and are_isomorphic(qs[0], Graph.complete(3))


def test_quotients_c4():
    codes = {canonical_form(q) for q in enumerate_quotients(Graph.cycle(4))}
    assert canonical_form(Graph.complete(2)) in codes
    assert canonical_form(Graph.cycle(4)) in codes


def test_quotients_c6():
    codes = {canonical_form(q) for q in enumerate_quotients(Graph.cycle(6))}
    for expected in (Graph.cycle(6), Graph.complete(2), Graph.complete(3)):
        assert canonical_form(expected) in codes


def test_quotients_include_self_and_are_valid():
    for seed in range(10):
        g = sample_gnp(GnpParams(6, "0.5", seed))
        got_self = False
        for q, partition in quotients_with_partitions(g):
            classes = [set(c) for c in partition]
            assert sorted(v for c in classes for v in c) == list(range(g.n))
            for ci in classes:
                assert not any(g.has_edge(u, v) for u in ci for v in ci if u < v)
            index = {v: i for i, c in enumerate(classes) for v in c}
            for u, v in g.edges():
                assert q.has_edge(index[u], index[v])
            if q.n == g.n:
                got_self = True
        assert got_self


def test_quotient_vertex_cap():
    with pytest.raises(BudgetExceededError):
        list(enumerate_quotients(Graph.empty(13)))


# -- chromatic_threshold_star -------------------------------------------------------


def test_star_k3():
    got, _ = chromatic_threshold_star(Graph.complete(3))
    assert got.lo == Fraction(1, 3)


def test_star_blow_up_c5():
    h = blow_up(Graph.cycle(5), 2)
    got, witness = chromatic_threshold_star(h)
    assert got.lo == 0
    quotient = parse_graph6(witness["quotient_graph6"].encode("ascii"))
    assert are_isomorphic(quotient, Graph.cycle(5))


def test_star_bipartite_is_zero():
    got, witness = chromatic_threshold_star(Graph.cycle(6))
    assert got.lo == 0


def test_star_at_most_plain():
    for seed in range(10):
        g = sample_gnp(GnpParams(6, "0.5", seed))
        if g.edge_count() == 0:
            continue
        star, _ = chromatic_threshold_star(g)
        plain, _ = chromatic_threshold(g)
        assert star.lo <= plain.lo


# -- regime tables ---------------------------------------------------------------------


def row_values(table):
    return [(r.describe_range(), r.value) for r in table.rows]


def test_regime_c5_display():
    table = regime_table(Graph.cycle(5))
    vals = [r.value for r in table.rows]
    assert [v.kind for v in vals] == ["Exact"] * 5
    assert [v.lo for v in vals] == [0, Fraction(1, 3), Fraction(1, 2), 1, 0]
    b = table.rows
    assert b[1].lower.exponent == Fraction(1, 2)
    assert b[2].upper.exponent == Fraction(1, 2)
    assert b[2].lower.exponent == Fraction(3, 4)
    assert b[3].upper.exponent == Fraction(3, 4)
    assert b[3].lower.kind == "LogOverN"


def test_regime_k5():
    table = regime_table(Graph.complete(5))
    assert table.rows[0].value.lo == Fraction(5, 7)
    assert table.rows[1].value.lo == Fraction(3, 4)
    assert table.rows[1].lower.exponent == Fraction(1, 3)
    theta = table.rows[2]
    assert theta.value.kind == "Unknown"
    sparse = table.rows[3]
    assert sparse.value.lo == 1 and sparse.upper.exponent == Fraction(1, 3)
    assert sparse.lower.kind == "LogOverN"


def test_regime_bipartite_all_zero():
    table = regime_table(Graph.path(3))
    assert all(r.value.kind == "Exact" and r.value.lo == 0 for r in table.rows)


def test_regime_chi3_trichotomy():
    blow = blow_up(Graph.cycle(5), 2)  # not cloud-forest
    assert regime_table(blow).rows[1].value.lo == Fraction(1, 2)
    c7 = Graph.cycle(7)  # thundercloud odd cycle: refined to exact zero
    assert regime_table(c7).rows[1].value.lo == 0
    c9_plus_leaf = Graph.from_edges(
        10, [(i, (i + 1) % 9) for i in range(9)] + [(0, 9)])
    row = regime_table(c9_plus_leaf).rows[1]  # thundercloud, not a pure cycle
    assert row.value.kind == "Interval"
    assert (row.value.lo, row.value.hi) == (0, Fraction(1, 3))


def test_regime_rows_ordered_disjoint():
    for g in (Graph.complete(3), Graph.cycle(5), Graph.complete(5),
              Graph.path(4), blow_up(Graph.cycle(5), 2)):
        table = regime_table(g)  # RegimeTable asserts order on construction
        assert isinstance(table, RegimeTable)
        assert all(r.source for r in table.rows)


def test_regime_star_k3():
    table = regime_table_star(Graph.complete(3))
    assert len(table.rows) == 2
    dense, sparse = table.rows
    assert dense.value.lo == Fraction(1, 3)
    assert dense.lower.exponent == Fraction(1, 2)
    assert sparse.value.lo == 1
    assert sparse.upper.exponent == Fraction(1, 2)
    assert sparse.lower.kind == "LogOverN"


def test_regime_star_blow_up_and_bipartite():
    assert regime_table_star(blow_up(Graph.cycle(5), 2)).rows[0].value.lo == 0
    assert regime_table_star(Graph.cycle(6)).rows[0].value.lo == 0
    # K_2 has no 3-vertex subgraph: 2-density undefined, single Unknown row
    table = regime_table_star(Graph.complete(2))
    assert table.rows[0].value.kind == "Unknown" or table.rows[0].value.lo == 0


def test_table_json_shape():
    table = regime_table(Graph.cycle(5))
    data = table.to_json()
    row = data["rows"][2]
    assert row["range"]["lo"]["kind"] == "PowerOfN"
    assert row["range"]["lo"]["exp"] == "3/4"
    assert row["range"]["hi"]["exp"] == "1/2"
    assert row["value"] == {"kind": "Exact", "v": "1/2"}
    assert isinstance(row["source"], str)
