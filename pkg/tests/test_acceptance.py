"""The acceptance criteria, one test each, exact tolerances.

Every test reports through the ``criterion`` fixture, so the run ends with a
``criterion N [...]: PASS/FAIL`` line per criterion.
"""

from __future__ import annotations

import time

from almostplanar.core.canon import enumerate_graphs
from almostplanar.core.graph import contract_edge, delete_edge, delete_vertex
from almostplanar.families import K5, K33
from almostplanar.minors import has_minor, has_topological_minor
from almostplanar.planarity import planar
from almostplanar.recognition import Kind, decide_by_definition
from almostplanar import suites

from oracles import burnside_graph_count, has_minor_by_partitions


def _failures(records):
    records = list(records)
    return records, [r for r in records if not r["ok"]]


def test_criterion_1_three_connected_equivalence(criterion):
    t0 = time.perf_counter()
    small, bad = _failures(suites.thm1(max_n=7))
    t_small = time.perf_counter() - t0
    full, bad8 = _failures(suites.thm1(max_n=8))
    t_full = time.perf_counter() - t0
    passed = not bad and not bad8 and t_small < 30 and t_full < 600
    criterion(1, "3-connected equivalence, <= 8 vertices", passed,
              f"{len(full)} graphs, {len(bad8)} disagreements; <=7 slice {t_small:.1f}s, total {t_full:.1f}s")
    assert not bad8, bad8[:3]
    assert t_small < 30 and t_full < 600


def test_criterion_2_general_equivalence(criterion):
    recs, bad = _failures(suites.thm4(max_n=7))
    criterion(2, "general equivalence, <= 7 vertices", not bad, f"{len(recs)} graphs, {len(bad)} disagreements")
    assert not bad, bad[:3]


def test_criterion_3_triad_identities(criterion):
    recs, bad = _failures(suites.triad_records())
    criterion(3, "triad additions of K5 and K33", not bad, "; ".join(r["claim"] for r in recs))
    assert not bad


def test_criterion_4_obstruction_minimality(criterion):
    from almostplanar.families import obstruction_set_Fprime

    recs = [suites.minimality_record(k, g) for k, g in obstruction_set_Fprime().items()]
    bad = [r for r in recs if not r["ok"]]
    detail = ", ".join(f"{r['claim'].split()[0]}:{r['proper_minors']}" for r in recs)
    criterion(4, "F' minimality by full minor closure", not bad, f"proper minors checked {detail}")
    assert not bad, bad


def test_criterion_5_containments(criterion):
    recs, bad = _failures(suites.containment_claims())
    criterion(5, "containment regressions with audited models", not bad, f"{len(recs)} claims")
    assert len(recs) == 5 and not bad, bad


def test_criterion_6_family_facts(criterion):
    recs, bad = _failures(suites.family_claims(max_rim=5))
    criterion(6, "family identities and containments", not bad, f"{len(recs)} claims")
    assert not bad, [r["claim"] for r in bad]


def test_criterion_7_mobius_minor_lemma(criterion):
    recs, bad = _failures(suites.lemma_mobius(6))
    counts = {r["k"]: len(r["minors"]) for r in recs}
    criterion(7, "internally 4-connected nonplanar minors of M_k, k <= 6", not bad and set(counts) == {3, 4, 5, 6},
              f"classes per k {counts}")
    assert not bad and set(counts) == {3, 4, 5, 6}


def test_criterion_8_minor_closedness(criterion):
    bad = []
    checked = 0
    for n in range(1, 8):
        for g in enumerate_graphs(n):
            if decide_by_definition(g, certificates=False).kind is Kind.NEITHER:
                continue
            checked += 1
            minors = [delete_edge(g, e) for e in g.sorted_edges()] + [contract_edge(g, e) for e in g.sorted_edges()]
            minors += [delete_vertex(g, v) for v in range(g.order)]
            for h in minors:
                if decide_by_definition(h, certificates=False).kind is Kind.NEITHER:
                    bad.append((g, h))
    criterion(8, "planar or almost-planar is minor-closed, <= 7 vertices", not bad,
              f"{checked} graphs, {len(bad)} violations")
    assert not bad, bad[:3]


def test_criterion_9_infrastructure_oracles(criterion):
    planarity_bad = []
    total = 0
    for n in range(1, 9):
        for g in enumerate_graphs(n):
            total += 1
            subdivision = has_topological_minor(g, K5) is not None or has_topological_minor(g, K33) is not None
            if planar(g) == subdivision:
                planarity_bad.append(g)
    minor_bad = []
    hosts = 0
    for n in range(1, 8):
        for g in enumerate_graphs(n):
            hosts += 1
            edges = g.sorted_edges()
            for name, pat in (("K5", K5), ("K33", K33)):
                if (has_minor(g, pat) is not None) != has_minor_by_partitions(n, edges, name):
                    minor_bad.append((g, name))
    counts = {n: sum(1 for _ in enumerate_graphs(n)) for n in range(1, 8)}
    count_bad = {n: c for n, c in counts.items() if c != burnside_graph_count(n)}
    passed = not planarity_bad and not minor_bad and not count_bad
    criterion(9, "planarity, minor and enumeration oracles", passed,
              f"planarity {total} graphs/{len(planarity_bad)} bad; minors {hosts} hosts/{len(minor_bad)} bad; "
              f"counts {list(counts.values())}")
    assert passed, (planarity_bad[:3], minor_bad[:3], count_bad)
