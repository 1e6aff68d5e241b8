"""Verification suites behind ``almost-planar verify``.

Every suite yields JSON-ready records, one per checked graph or claim, each
with an ``ok`` flag. Records come out in a fixed order (sorted graph6 within
each vertex count) whatever the number of worker processes.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Iterable, Iterator, Sequence, TypeVar

from .core.canon import canonical_form, enumerate_graphs, is_isomorphic
from .core.connectivity import is_k_connected
from .core.graph import Graph
from .core.graph6 import decode, encode
from .families import (
    K5,
    K33,
    WClassSpec,
    alternating_double_wheel,
    cube_plus_v,
    double_wheel,
    line_graph_k33,
    mobius_ladder,
    obstruction_set_F,
    obstruction_set_Fprime,
    squared_cycle,
    triad_additions,
    validate_obstruction,
    w_class,
)
from .minors import MinorModel, check_model, free_of, has_minor
from .planarity import planar
from .recognition import Kind, cross_check, decide_by_definition, minor_closure, verify_lemma_mobius_minors

T = TypeVar("T")
R = TypeVar("R")

SUITES = ("thm1", "thm4", "lemma-mobius", "figures", "obstructions")


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("ALMOST_PLANAR_THREADS", "1")))
    except ValueError:
        return 1


def parallel_map(fn: Callable[[T], R], items: Sequence[T], workers: int | None = None) -> Iterator[R]:
    """``map`` that keeps input order; uses processes when more than one worker is allowed."""
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(items) < 2:
        yield from map(fn, items)
        return
    chunk = max(1, len(items) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(fn, items, chunksize=chunk)


def _record(g6: str) -> dict[str, Any]:
    rep = cross_check(decode(g6))
    out = rep.to_json()
    out["ok"] = rep.agree
    return out


def _graphs(max_n: int, keep: Callable[[Graph], bool]) -> list[str]:
    return [encode(g) for n in range(1, max_n + 1) for g in enumerate_graphs(n) if keep(g)]


def thm1(max_n: int = 8, workers: int | None = None) -> Iterator[dict[str, Any]]:
    """3-connected nonplanar graphs: definition, F-freeness and family witness agree."""
    items = _graphs(max_n, lambda g: g.order >= 5 and not planar(g) and is_k_connected(g, 3))
    for rec in parallel_map(_record, items, workers):
        yield {"suite": "thm1", **rec}


def thm4(max_n: int = 7, workers: int | None = None) -> Iterator[dict[str, Any]]:
    """All nonplanar graphs: definition, F'-freeness and the decomposition agree."""
    items = _graphs(max_n, lambda g: not planar(g))
    for rec in parallel_map(_record, items, workers):
        yield {"suite": "thm4", **rec}


def lemma_mobius(max_k: int = 6) -> Iterator[dict[str, Any]]:
    rep = verify_lemma_mobius_minors(max_k)
    for k, found in rep.checked.items():
        bad = [v for v in rep.violations if v.startswith(f"M_{k} ")]
        yield {"suite": "lemma-mobius", "k": k, "minors": found, "ok": not bad, "violations": bad}


# -- claims about named graphs --------------------------------------------------


def _claim(name: str, host: Graph, pattern: Graph, model: MinorModel | None, **extra: Any) -> dict[str, Any]:
    ok = model is not None and check_model(host, pattern, model) is None
    return {
        "claim": name,
        "host": encode(host),
        "pattern": encode(pattern),
        "model": model.to_json() if model else None,
        "ok": ok,
        **extra,
    }


def least_mobius_host(g: Graph) -> tuple[int, MinorModel] | None:
    """Smallest k with g a minor of M_k; for nonplanar g it suffices to try k <= |g|."""
    for k in range(max(3, math.ceil(g.order / 2)), max(3, g.order) + 1):
        model = has_minor(mobius_ladder(k), g, limit=2 * k)
        if model is not None:
            return k, model
    return None


def figure_w_specs(max_rim: int = 5) -> list[WClassSpec]:
    """W-class graphs whose hubs are not identified: all-none, and distinct slots with rims up to ``max_rim``."""
    specs = [WClassSpec.of((3, "none"), (3, "none"), (3, "none"))]
    for a in range(3, max_rim + 1):
        for b in range(a, max_rim + 1):
            for c in range(b, max_rim + 1):
                specs.append(WClassSpec.of((a, 0), (b, 1), (c, 2)))
    return specs


def containment_claims() -> Iterator[dict[str, Any]]:
    F = obstruction_set_F()
    Fp = obstruction_set_Fprime()
    pairs = [
        ("EX2 contains K5+", F["EX2"], Fp["K5+"]),
        ("EX1 contains K33+", F["EX1"], Fp["K33+"]),
        ("EX8 contains K33+", F["EX8"], Fp["K33+"]),
        ("L(K33) contains K33h", line_graph_k33(), Fp["K33h"]),
        ("Cube+v contains K33+", cube_plus_v(), Fp["K33+"]),
    ]
    for name, host, pattern in pairs:
        yield {"suite": "figures", **_claim(name, host, pattern, has_minor(host, pattern))}


def family_claims(max_rim: int = 5) -> Iterator[dict[str, Any]]:
    iso = [
        ("DW_3 = K5", double_wheel(3), K5),
        ("C2_5 = K5", squared_cycle(5), K5),
        ("M_3 = K33", mobius_ladder(3), K33),
    ]
    for name, a, b in iso:
        yield {"suite": "figures", "claim": name, "ok": is_isomorphic(a, b)}
    for n in range(2, 5):
        host, pat = mobius_ladder(2 * n + 1), squared_cycle(2 * n + 1)
        model = has_minor(host, pat, limit=host.order)
        yield {"suite": "figures", **_claim(f"C2_{2 * n + 1} <= M_{2 * n + 1}", host, pat, model)}
        host, pat = double_wheel(2 * n), alternating_double_wheel(2 * n)
        model = has_minor(host, pat, limit=host.order)
        yield {"suite": "figures", **_claim(f"AW_{2 * n} <= DW_{2 * n}", host, pat, model)}
    for spec in figure_w_specs(max_rim):
        g = w_class(spec)
        found = least_mobius_host(g)
        if found is None:
            yield {"suite": "figures", "claim": f"{spec.key()} <= some M_k", "pattern": encode(g), "ok": False}
            continue
        k, model = found
        yield {"suite": "figures", **_claim(f"{spec.key()} <= M_{k}", mobius_ladder(k), g, model)}


def figures(max_rim: int = 5) -> Iterator[dict[str, Any]]:
    yield from containment_claims()
    yield from family_claims(max_rim)


# -- obstruction sets ----------------------------------------------------------


def minimality_record(name: str, g: Graph) -> dict[str, Any]:
    """g is an obstruction and every proper minor is planar or almost-planar."""
    closure = minor_closure(g)
    bad = [encode(h) for h in closure.values() if decide_by_definition(h, certificates=False).kind is Kind.NEITHER]
    return {
        "suite": "obstructions",
        "claim": f"{name} is a minimal obstruction",
        "graph": encode(g),
        "obstruction": validate_obstruction(g),
        "proper_minors": len(closure),
        "bad_minors": bad,
        "ok": validate_obstruction(g) and not bad,
    }


def triad_records() -> Iterator[dict[str, Any]]:
    F = obstruction_set_F()
    t5 = triad_additions(K5)
    yield {
        "suite": "obstructions",
        "claim": "K5 has one triad addition and it is EX2",
        "classes": [encode(g) for g in t5],
        "ok": len(t5) == 1 and is_isomorphic(t5[0], F["EX2"]),
    }
    t33 = triad_additions(K33)
    names = sorted(canonical_form(g) for g in t33)
    ok = len(t33) == 2 and names == sorted(canonical_form(F[k]) for k in ("EX1", "EX8"))
    yield {
        "suite": "obstructions",
        "claim": "K33 has two triad additions and they are EX1 and EX8",
        "classes": [encode(g) for g in t33],
        "ok": ok,
    }


def obstructions() -> Iterator[dict[str, Any]]:
    yield from triad_records()
    for name, g in obstruction_set_F().items():
        ok = validate_obstruction(g) and is_k_connected(g, 3) and not planar(g)
        yield {"suite": "obstructions", "claim": f"{name} is a 3-connected nonplanar obstruction", "graph": encode(g), "ok": ok}
    for name, g in obstruction_set_Fprime().items():
        yield minimality_record(name, g)


def run(suite: str, *, max_n: int | None = None, workers: int | None = None) -> Iterator[dict[str, Any]]:
    if suite == "thm1":
        return thm1(8 if max_n is None else max_n, workers)
    if suite == "thm4":
        return thm4(7 if max_n is None else max_n, workers)
    if suite == "lemma-mobius":
        return lemma_mobius(6 if max_n is None else max_n)
    if suite == "figures":
        return figures(5 if max_n is None else max_n)
    if suite == "obstructions":
        return obstructions()
    raise KeyError(suite)


def swapped_names_agree(graphs: Iterable[Graph]) -> bool:
    """F-freeness does not depend on which K33 triad addition is called EX1."""
    F = obstruction_set_F()
    a = list(F.values())
    swapped = dict(F)
    swapped["EX1"], swapped["EX8"] = F["EX8"], F["EX1"]
    b = list(swapped.values())
    return all((free_of(g, a) is None) == (free_of(g, b) is None) for g in graphs)
