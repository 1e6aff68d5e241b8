"""The three almost-planarity deciders and the harness that compares them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Any, Iterable, Union

from .core.canon import canonical_form, is_isomorphic
from .core.connectivity import is_k_connected
from .core.decompose import SuppressionError, suppress_degree2
from .core.graph import Graph, GraphError, _norm, contract_edge, delete_edge, delete_vertex
from .core.graph6 import encode
from .families import (
    WClassSpec,
    double_wheel,
    mobius_ladder,
    obstruction_set_F,
    obstruction_set_Fprime,
    w_class,
)
from .minors import MinorModel, QuotientTable, check_model, free_of, subgraph_embedding
from .planarity import PlanarityCertificate, certify, check_certificate, planar


class Kind(str, Enum):
    PLANAR = "planar"
    ALMOST_PLANAR = "almost-planar"
    NEITHER = "neither"


@dataclass(frozen=True)
class EdgeRecord:
    edge: tuple[int, int]
    deletion_planar: bool
    contraction_planar: bool
    certificate: PlanarityCertificate | None = None  # rotation for the planar side

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "edge": list(self.edge),
            "deletion_planar": self.deletion_planar,
            "contraction_planar": self.contraction_planar,
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


@dataclass(frozen=True)
class Verdict:
    kind: Kind
    method: str
    planarity: PlanarityCertificate | None = None
    edge_table: tuple[EdgeRecord, ...] | None = None
    failing_edge: tuple[int, int] | None = None
    deletion_certificate: PlanarityCertificate | None = None
    contraction_certificate: PlanarityCertificate | None = None
    obstruction: tuple[str, MinorModel] | None = None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"class": self.kind.value, "method": self.method}
        if self.planarity is not None:
            out["planarity"] = self.planarity.to_json()
        if self.edge_table is not None:
            out["edges"] = [r.to_json() for r in self.edge_table]
        if self.failing_edge is not None:
            out["failing_edge"] = list(self.failing_edge)
        if self.deletion_certificate is not None:
            out["deletion_certificate"] = self.deletion_certificate.to_json()
        if self.contraction_certificate is not None:
            out["contraction_certificate"] = self.contraction_certificate.to_json()
        if self.obstruction is not None:
            name, model = self.obstruction
            out["obstruction"] = {"name": name, "model": model.to_json()}
        return out


class ObstructionDisagreement(AssertionError):
    """The two obstruction sets gave different answers on a 3-connected graph."""


# -- definition ---------------------------------------------------------------


def decide_by_definition(g: Graph, *, certificates: bool = True) -> Verdict:
    """Classify g by testing deletion and contraction of every edge.

    With ``certificates`` every claim carries a planarity certificate; without,
    only the booleans are computed, which is what the exhaustive harness needs.
    """
    if planar(g):
        return Verdict(Kind.PLANAR, "definition", planarity=certify(g) if certificates else None)
    top = certify(g) if certificates else None
    table = []
    for e in g.sorted_edges():
        d, c = delete_edge(g, e), contract_edge(g, e)
        dp, cp = planar(d), planar(c)
        if not dp and not cp:
            return Verdict(
                Kind.NEITHER,
                "definition",
                planarity=top,
                failing_edge=e,
                deletion_certificate=certify(d) if certificates else None,
                contraction_certificate=certify(c) if certificates else None,
            )
        cert = None
        if certificates:
            cert = certify(d) if dp else certify(c)
        table.append(EdgeRecord(e, dp, cp, cert))
    return Verdict(Kind.ALMOST_PLANAR, "definition", planarity=top, edge_table=tuple(table))


def is_almost_planar(g: Graph) -> bool:
    return decide_by_definition(g, certificates=False).kind is Kind.ALMOST_PLANAR


# -- obstructions -------------------------------------------------------------


@lru_cache(maxsize=None)
def _obstructions(which: str) -> tuple[tuple[str, Graph], ...]:
    src = obstruction_set_F() if which == "F" else obstruction_set_Fprime()
    return tuple(src.items())


def obstruction_hit(g: Graph, which: str) -> tuple[str, MinorModel] | None:
    """The first member of F or F' found as a minor of g, with its model."""
    items = _obstructions(which)
    hit = free_of(g, [p for _, p in items])
    if hit is None:
        return None
    return items[hit[0]][0], hit[1]


def decide_by_obstructions(g: Graph, *, which: str = "auto", certificates: bool = True) -> Verdict:
    """Classify g as planar, F'-free (almost-planar) or containing an F' member.

    ``which`` chooses ``"F'"``, ``"F"`` (3-connected inputs only) or ``"auto"``,
    which uses F' and on 3-connected inputs also F, insisting both agree.
    """
    if which not in ("auto", "F", "F'"):
        raise ValueError(f"obstruction set must be 'auto', 'F' or \"F'\", not {which!r}")
    if planar(g):
        return Verdict(Kind.PLANAR, "obstructions", planarity=certify(g) if certificates else None)
    top = certify(g) if certificates else None
    three = is_k_connected(g, 3)
    if which == "F" and not three:
        raise GraphError("the set F only characterises 3-connected graphs")
    hit = obstruction_hit(g, "F" if which == "F" else "F'")
    if which == "auto" and three:
        other = obstruction_hit(g, "F")
        if (hit is None) != (other is None):
            raise ObstructionDisagreement(
                f"{encode(g)}: F' hit {hit and hit[0]}, F hit {other and other[0]}"
            )
    if hit is None:
        return Verdict(Kind.ALMOST_PLANAR, "obstructions", planarity=top)
    return Verdict(Kind.NEITHER, "obstructions", planarity=top, obstruction=hit)


def check_verdict(g: Graph, v: Verdict) -> str | None:
    """Audit the evidence inside a verdict produced with certificates."""
    if v.kind is Kind.PLANAR:
        if v.planarity is None or not v.planarity.planar:
            return "planar verdict needs an embedding"
        return check_certificate(g, v.planarity)
    if v.planarity is None or v.planarity.planar:
        return "nonplanar verdicts need a Kuratowski certificate"
    reason = check_certificate(g, v.planarity)
    if reason:
        return reason
    if v.method == "definition" and v.kind is Kind.ALMOST_PLANAR:
        if v.edge_table is None or sorted(r.edge for r in v.edge_table) != g.sorted_edges():
            return "edge table must cover every edge"
        for r in v.edge_table:
            if r.certificate is None or not r.certificate.planar:
                return f"edge {r.edge} lacks a planar certificate"
            target = delete_edge(g, r.edge) if r.deletion_planar else contract_edge(g, r.edge)
            if not (r.deletion_planar or r.contraction_planar):
                return f"edge {r.edge} has no planar side"
            reason = check_certificate(target, r.certificate)
            if reason:
                return f"edge {r.edge}: {reason}"
        return None
    if v.method == "definition":
        e = v.failing_edge
        if e is None or v.deletion_certificate is None or v.contraction_certificate is None:
            return "neither verdict needs a failing edge with two certificates"
        for h, c in ((delete_edge(g, e), v.deletion_certificate), (contract_edge(g, e), v.contraction_certificate)):
            if c.planar:
                return "failing edge certificates must be nonplanar"
            reason = check_certificate(h, c)
            if reason:
                return reason
        return None
    if v.kind is Kind.NEITHER:
        if v.obstruction is None:
            return "neither verdict needs an obstruction model"
        name, model = v.obstruction
        pattern = dict(_obstructions("F'") + _obstructions("F"))[name]
        return check_model(g, pattern, model)
    return None


# -- structure: 3-connected case -------------------------------------------------


@dataclass(frozen=True)
class FamilyWitness:
    family: str  # "DoubleWheel" | "MobiusLadder" | "WClass"
    parameter: Union[int, WClassSpec]
    model: MinorModel

    @property
    def host(self) -> Graph:
        if self.family == "DoubleWheel":
            return double_wheel(self.parameter)  # type: ignore[arg-type]
        if self.family == "MobiusLadder":
            return mobius_ladder(self.parameter)  # type: ignore[arg-type]
        return w_class(self.parameter)  # type: ignore[arg-type]

    def to_json(self) -> dict[str, Any]:
        p = self.parameter.key() if isinstance(self.parameter, WClassSpec) else self.parameter
        return {"kind": "family", "family": self.family, "parameter": p, "model": self.model.to_json()}


@lru_cache(maxsize=None)
def _table(family: str, param: Any, n: int) -> QuotientTable:
    host = {"M": mobius_ladder, "W": w_class}[family](param)
    return QuotientTable(host, n)


def _singleton_model(g: Graph, host: Graph, phi: list[int]) -> MinorModel:
    bs = {v: frozenset([phi[v]]) for v in range(g.order)}
    return MinorModel(bs, {e: _norm(phi[e[0]], phi[e[1]]) for e in g.sorted_edges()})


def w_class_specs(max_rim: int) -> list[WClassSpec]:
    """Every W-class spec with rims up to ``max_rim``, one per unordered choice of parts,
    smallest rim total first. Slots are renamed in order of first use."""
    options: list[tuple[int, Any]] = [(3, "none")] + [(r, s) for r in range(3, max_rim + 1) for s in (0, 1, 2)]
    seen = set()
    out = []
    for a in range(len(options)):
        for b in range(a, len(options)):
            for c in range(b, len(options)):
                parts = [options[a], options[b], options[c]]
                rename: dict[int, int] = {}
                norm = []
                for r, s in parts:
                    if s != "none":
                        s = rename.setdefault(s, len(rename))
                    norm.append((r, s))
                key = tuple(sorted(norm, key=repr))
                if key in seen:
                    continue
                seen.add(key)
                out.append(WClassSpec.of(*norm))
    out.sort(key=lambda sp: (sum(p.rim for p in sp.parts), sp.key()))
    return out


_MAXIMAL_PLACEMENTS = ((0, 1, 2), (0, 0, 1), (0, 0, 0))


def structural_witness_3conn(g: Graph, bound: int | None = None) -> FamilyWitness | None:
    """The least family member containing g as a minor, or None.

    Double wheels come first, then Möbius ladders, then class W, each by
    increasing size. A nonplanar minor of a double wheel on n vertices is a
    spanning subgraph of DW_{n-2}, and a nonplanar minor of a Möbius ladder on n
    vertices is a minor of M_n, so the searches stop there (or at ``bound``).
    """
    if planar(g) or not is_k_connected(g, 3):
        raise GraphError("structural search needs a 3-connected nonplanar graph")
    n, m = g.order, g.size
    bound = n + m if bound is None else bound
    if 3 <= n - 2 <= bound:
        host = double_wheel(n - 2)
        phi = subgraph_embedding(g, host)
        if phi is not None:
            return FamilyWitness("DoubleWheel", n - 2, _singleton_model(g, host, phi))
    for k in range(max(3, math.ceil(n / 2)), min(n, bound) + 1):
        model = _table("M", k, n).find(g)
        if model is not None:
            return FamilyWitness("MobiusLadder", k, model)
    rim = max(3, n)
    if not any(_table("W", WClassSpec.of(*((rim, s) for s in pl)), n).find(g) for pl in _MAXIMAL_PLACEMENTS):
        return None
    for spec in w_class_specs(rim):
        model = _table("W", spec, n).find(g)
        if model is not None:
            return FamilyWitness("WClass", spec, model)
    raise AssertionError("a maximal W-class host contains g but no smaller spec does")


# -- structure: general case ------------------------------------------------------


@dataclass(frozen=True)
class DecompositionWitness:
    core: Graph
    branch: tuple[int, ...]  # vertices of g* that became core vertices
    path_map: dict[tuple[int, int], tuple[int, ...]]
    isolated: tuple[int, ...]
    core_verdict: Verdict

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": "decomposition",
            "core": encode(self.core),
            "branch": list(self.branch),
            "subdivided": {f"{u},{v}": list(p) for (u, v), p in sorted(self.path_map.items()) if p},
            "isolated": list(self.isolated),
        }


StructuralWitness = Union[FamilyWitness, DecompositionWitness]


def explain_decomposition(g: Graph) -> tuple[DecompositionWitness | None, str | None]:
    """The decomposition witness, or None with the first condition that failed."""
    if planar(g):
        raise GraphError("decomposition is defined for nonplanar graphs")
    isolated = tuple(g.isolated_vertices())
    star = g.subgraph([v for v in range(g.order) if g.adj[v]])
    if not star.is_connected():
        return None, "not connected after removing isolated vertices"
    if min(star.degrees()) < 2:
        return None, "a vertex of degree 1 remains"
    try:
        tc = suppress_degree2(star)
    except SuppressionError as exc:
        return None, f"degree-2 suppression failed: {exc}"
    h = tc.core
    if not is_k_connected(h, 3):
        return None, "the core is not 3-connected"
    verdict = decide_by_definition(h, certificates=False)
    if verdict.kind is not Kind.ALMOST_PLANAR:
        return None, "the core is not almost-planar"
    for e in tc.subdivided_edges():
        if not planar(delete_edge(h, e)):
            return None, f"subdivided core edge {e} is not in D(core)"
    return DecompositionWitness(h, tc.branch, tc.path_map, isolated, verdict), None


def decompose_general(g: Graph) -> DecompositionWitness | None:
    return explain_decomposition(g)[0]


def check_witness(g: Graph, w: StructuralWitness) -> str | None:
    if isinstance(w, FamilyWitness):
        return check_model(w.host, g, w.model)
    star = g.subgraph([v for v in range(g.order) if g.adj[v]])
    if sorted(w.isolated) != g.isolated_vertices():
        return "isolated vertex list is wrong"
    try:
        tc = suppress_degree2(star)
    except SuppressionError as exc:
        return f"not a subdivision: {exc}"
    if not is_isomorphic(tc.core, w.core):
        return "core does not match"
    if not is_k_connected(w.core, 3) or not is_almost_planar(w.core):
        return "core is not 3-connected almost-planar"
    sub = [e for e, p in w.path_map.items() if p]
    if not all(planar(delete_edge(w.core, e)) for e in sub):
        return "a subdivided edge is outside D(core)"
    if tc.core != w.core or tc.path_map != w.path_map:
        return "path map does not match the graph"
    return None


# -- harness ---------------------------------------------------------------------


@dataclass
class CrossCheck:
    graph: Graph
    definition: Verdict
    obstructions: Verdict
    f_hit: str | None = None  # F member found (3-connected inputs)
    family: FamilyWitness | None = None
    decomposition: DecompositionWitness | None = None
    decomposition_reason: str | None = None
    three_connected: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return not self.notes

    def to_json(self) -> dict[str, Any]:
        hit = self.obstructions.obstruction
        structural: dict[str, Any] = {}
        if self.three_connected and self.definition.kind is not Kind.PLANAR:
            structural["family"] = self.family.to_json() if self.family else None
        if self.definition.kind is not Kind.PLANAR:
            structural["decomposition"] = (
                self.decomposition.to_json() if self.decomposition else {"absent": self.decomposition_reason}
            )
        obs: dict[str, Any] = {"set": "F'", "hit": hit[0] if hit else None}
        if self.three_connected:
            obs["F_hit"] = self.f_hit
        return {
            "g6": encode(self.graph),
            "definition": self.definition.kind.value,
            "obstructions": obs,
            "structural": structural or None,
            "agree": self.agree,
            "certificates": {
                "planarity": self.definition.planarity.to_json() if self.definition.planarity else None,
                "obstruction_model": hit[1].to_json() if hit else None,
            },
            **({"violations": self.notes} if self.notes else {}),
        }


def cross_check(g: Graph, *, bound: int | None = None, certificates: bool = False) -> CrossCheck:
    """Run every decider on g and record whether they tell the same story."""
    d = decide_by_definition(g, certificates=certificates)
    try:
        o = decide_by_obstructions(g, certificates=certificates)
    except ObstructionDisagreement as exc:
        o = decide_by_obstructions(g, which="F'", certificates=certificates)
        rep = CrossCheck(g, d, o)
        rep.notes.append(str(exc))
        return rep
    rep = CrossCheck(g, d, o)
    if d.kind is not o.kind:
        rep.notes.append(f"definition says {d.kind.value}, obstructions say {o.kind.value}")
    if d.kind is Kind.PLANAR:
        return rep
    almost = d.kind is Kind.ALMOST_PLANAR
    rep.three_connected = is_k_connected(g, 3)
    if rep.three_connected:
        f = obstruction_hit(g, "F")
        rep.f_hit = f[0] if f else None
        if (f is None) != almost:
            rep.notes.append(f"F-freeness is {f is None} but almost-planar is {almost}")
        rep.family = structural_witness_3conn(g, bound)
        if (rep.family is not None) != almost:
            rep.notes.append(f"family witness {'found' if rep.family else 'absent'} but almost-planar is {almost}")
        elif rep.family is not None and check_witness(g, rep.family):
            rep.notes.append(f"family witness fails: {check_witness(g, rep.family)}")
    rep.decomposition, rep.decomposition_reason = explain_decomposition(g)
    if (rep.decomposition is not None) != almost:
        rep.notes.append(
            f"decomposition {'found' if rep.decomposition else 'absent'} but almost-planar is {almost}"
        )
    return rep


# -- minor closure ----------------------------------------------------------------


def one_step_minors(g: Graph, *, drop_isolated: bool = False) -> Iterable[Graph]:
    """Every single edge deletion, edge contraction and isolated-vertex deletion."""
    for e in g.sorted_edges():
        d = delete_edge(g, e)
        if drop_isolated:
            d = d.subgraph([v for v in range(d.order) if d.adj[v]])
        yield d
        yield contract_edge(g, e)
    if not drop_isolated:
        for v in g.isolated_vertices():
            yield delete_vertex(g, v)


def minor_closure(g: Graph, *, nonplanar_only: bool = False, drop_isolated: bool = False) -> dict[bytes, Graph]:
    """All proper minors of g up to isomorphism (reached by one-step moves).

    With ``nonplanar_only`` planar minors are not expanded or reported; every
    nonplanar minor is still reached because all its ancestors are nonplanar.
    """
    seen: dict[bytes, Graph] = {}
    stack = [g]
    while stack:
        h = stack.pop()
        for x in one_step_minors(h, drop_isolated=drop_isolated):
            if nonplanar_only and planar(x):
                continue
            k = canonical_form(x)
            if k not in seen:
                seen[k] = x
                stack.append(x)
    return seen


@dataclass
class LemmaReport:
    checked: dict[int, list[str]]  # k -> graph6 of the internally-4-connected nonplanar minors
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_lemma_mobius_minors(max_k: int = 6) -> LemmaReport:
    """Every internally-4-connected nonplanar minor of M_k (k <= max_k) is some M_n or C^2_{2n-1}."""
    from .core.connectivity import is_internally_4_connected
    from .families import squared_cycle

    checked: dict[int, list[str]] = {}
    bad: list[str] = []
    for k in range(3, max_k + 1):
        mk = mobius_ladder(k)
        cands = minor_closure(mk, nonplanar_only=True, drop_isolated=True)
        cands[canonical_form(mk)] = mk
        found = []
        for h in cands.values():
            if not is_internally_4_connected(h):
                continue
            found.append(encode(h))
            n = h.order
            ok = (n % 2 == 0 and n >= 6 and is_isomorphic(h, mobius_ladder(n // 2))) or (
                n % 2 == 1 and n >= 5 and is_isomorphic(h, squared_cycle(n))
            )
            if not ok:
                bad.append(f"M_{k} has internally 4-connected minor {encode(h)}")
        checked[k] = sorted(found)
    return LemmaReport(checked, bad)

