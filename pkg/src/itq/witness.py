"""phi-witness modules: modules M with phi(M) = phidim(A)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import Dict, FrozenSet, List, Optional, Tuple

from itq.quiver import Quiver, classify_simples, sinks, sources
from itq.syzygy import (
    INF,
    FormalModule,
    Summand,
    findim,
    is_selfinjective,
    pd_simple,
    pd_summand,
    phi,
    phidim,
    simple_summand,
    unit,
)


class WitnessError(ValueError):
    pass


@dataclass(frozen=True)
class WitnessModule:
    module: FormalModule
    achieved_phi: int
    minimal: bool
    construction_note: str


def build_M_S(q: Quiver, v: int) -> FormalModule:
    """The module P_w / S_v for the lowest-numbered predecessor w of v.

    Its first syzygy is S_v.  It is the simple S_w exactly when the radical
    of P_w is a single copy of S_v.
    """
    preds = q.predecessors[v]
    if not preds:
        raise WitnessError(f"vertex {q.label(v)} is a source")
    w = preds[0]
    if q.out_degree(w) == 1:
        return FormalModule((simple_summand(q, w),))
    return FormalModule((Summand(f"M_S{q.label(v)}", unit(q, v), cover=w),))


def _lift(q: Quiver, vertices) -> FormalModule:
    out = FormalModule(())
    for v in sorted(vertices):
        out = out + build_M_S(q, v)
    return out


def build_witness(q: Quiver) -> WitnessModule:
    """Explicit module realising phidim, following the non-selfinjective case analysis.

    Base candidate: the lifts M_S over S in S_D together with the simples of
    S_D, used when some lift is not simple.  When every lift is simple, adjoin
    an injective simple S_0 (or, if S_0 is itself a lift, a simple of S_D that
    is not), or else the lift of a projective simple.
    """
    if is_selfinjective(q):
        raise WitnessError("selfinjective: every module has phi = 0")
    target = phidim(q)
    cls = classify_simples(q)
    sd = sorted(cls.sd)
    lifts = _lift(q, sd)
    sd_simples = FormalModule.of_simples(q, sd)
    lift_keys = {s.key for s in lifts.summands}

    candidates: List[Tuple[str, FormalModule]] = []
    if any(s.simple_at is None for s in lifts.summands):
        candidates.append(("some M_S is not simple: lifts of S_D plus S_D", lifts + sd_simples))
    else:
        inj_only = sorted(cls.injective - cls.projective)
        proj_only = sorted(cls.projective - cls.injective)
        for s0 in inj_only:
            s0_mod = FormalModule.of_simples(q, [s0])
            if ("S", s0) not in lift_keys:
                candidates.append((f"injective simple S{q.label(s0)} adjoined to the lifts", lifts + s0_mod))
            else:
                for s1 in sd:
                    if ("S", s1) not in lift_keys:
                        candidates.append((
                            f"S{q.label(s0)} is a lift; S{q.label(s1)} from S_D adjoined",
                            lifts + FormalModule.of_simples(q, [s1]),
                        ))
                        break
        for s0 in proj_only:
            candidates.append((
                f"lift of projective simple S{q.label(s0)} adjoined",
                lifts + build_M_S(q, s0),
            ))

    for note, module in candidates:
        module = FormalModule(tuple(module.basic()))
        got = phi(q, module).phi
        if got == target:
            return WitnessModule(module, got, False, note)
    raise WitnessError("no case of the construction reached phidim")


# -- the graph Gamma(M) ----------------------------------------------------

@dataclass(frozen=True)
class WitnessGraph:
    vertices: Tuple[str, ...]
    edges: FrozenSet[FrozenSet[str]]

    def components(self) -> List[List[str]]:
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            a, b = tuple(e)
            parent[find(a)] = find(b)
        groups: Dict[str, List[str]] = {}
        for v in self.vertices:
            groups.setdefault(find(v), []).append(v)
        return list(groups.values())

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def components_complete(self) -> bool:
        for comp in self.components():
            for a, b in combinations(comp, 2):
                if frozenset((a, b)) not in self.edges:
                    return False
        return True


def gamma_graph(q: Quiver, module: FormalModule) -> WitnessGraph:
    """Edge {M_i, M_j} whenever phi(M_i + M_j) >= 1."""
    summands = module.basic()
    names = [s.name for s in summands]
    if len(set(names)) != len(names):
        raise ValueError("summand names must be distinct")
    edges = set()
    for a, b in combinations(summands, 2):
        if phi(q, FormalModule((a, b))).phi >= 1:
            edges.add(frozenset((a.name, b.name)))
    return WitnessGraph(tuple(names), frozenset(edges))


def gamma_structure_ok(q: Quiver, module: FormalModule, g: Optional[WitnessGraph] = None) -> bool:
    """The shape Gamma(M) actually has.

    A summand of finite projective dimension has a class that eventually
    vanishes, so it is joined to every other summand.  Among the summands of
    infinite projective dimension, phi >= 1 on a pair means their classes end
    up proportional, which is transitive, so those edges form disjoint cliques.
    """
    if g is None:
        g = gamma_graph(q, module)
    summands = module.basic()
    finite = {s.name for s in summands if pd_summand(q, s) != INF}
    for a in finite:
        for b in g.vertices:
            if a != b and frozenset((a, b)) not in g.edges:
                return False
    rest = [v for v in g.vertices if v not in finite]
    edges = {e for e in g.edges if e <= set(rest)}
    return WitnessGraph(tuple(rest), frozenset(edges)).components_complete()


# -- minimal witnesses -----------------------------------------------------

def is_phi_maximal(q: Quiver) -> bool:
    from itq.quiver import heart_member

    target = q.n if not heart_member(q).member else q.n - 1
    return phidim(q) == target


def minimal_witness(q: Quiver) -> WitnessModule:
    """Two-summand witness for an algebra of maximal phi-dimension.

    Pairs of simples from S_D with phi(S_i + S_j) = phi(S_D) are lifted
    through M_S.  When S_D is too small for a pair, the search widens to
    pairs (possibly repeated) of known non-projective indecomposables.
    """
    if not is_phi_maximal(q):
        raise WitnessError("algebra not phi-maximal: two-summand witness not guaranteed")
    target = phidim(q)
    sd = sorted(classify_simples(q).sd)
    goal = target - 1

    for i, j in combinations(sd, 2):
        if phi(q, FormalModule.of_simples(q, [i, j])).phi == goal:
            module = build_M_S(q, i) + build_M_S(q, j)
            got = phi(q, module).phi
            if got == target:
                return WitnessModule(module, got, True,
                                     f"lift of S{q.label(i)} + S{q.label(j)}")
    for i in sd:
        if phi(q, FormalModule.of_simples(q, [i])).phi == goal:
            module = build_M_S(q, i) + build_M_S(q, i)
            got = phi(q, module).phi
            if got == target:
                return WitnessModule(module, got, True,
                                     f"lift of S{q.label(i)}, repeated (S_D has one class)")

    pool = _indecomposable_pool(q)
    for a, b in combinations_with_replacement(pool, 2):
        module = FormalModule((a, b))
        got = phi(q, module).phi
        if got == target:
            return WitnessModule(module, got, True, f"pair search: {a.name} + {b.name}")
    raise WitnessError("no two-summand witness found")


def _indecomposable_pool(q: Quiver) -> List[Summand]:
    pool = {}
    for v in range(q.n):
        s = simple_summand(q, v)
        if not s.projective:
            pool[s.key] = s
    src = sources(q)
    for v in range(q.n):
        if v not in src:
            for s in build_M_S(q, v).summands:
                pool.setdefault(s.key, s)
    return list(pool.values())


def indecomposable_witness(q: Quiver) -> Optional[WitnessModule]:
    """A one-summand witness, which exists iff findim = phidim.

    Returns an indecomposable of largest finite projective dimension when the
    two dimensions agree, and None otherwise.
    """
    target = phidim(q)
    if findim(q) != target:
        return None
    best = None
    for s in _indecomposable_pool(q):
        p = pd_summand(q, s)
        if p != INF and (best is None or p > best[0]):
            best = (p, s)
    if best is None:
        return None
    module = FormalModule((best[1],))
    got = phi(q, module).phi
    if got != target:
        return None
    return WitnessModule(module, got, True, f"indecomposable of pd {int(best[0])}")


@dataclass(frozen=True)
class SyzygyAudit:
    """Which projective radicals could host each side of a kernel relation."""

    relation: Dict[int, int]
    positive: Tuple[int, ...]
    negative: Tuple[int, ...]
    hosts: Dict[int, Tuple[int, ...]]
    single_cover: bool


def kernel_audit(q: Quiver) -> List[SyzygyAudit]:
    """For each kernel relation of Omega-bar, the projectives whose radical holds each simple.

    ``single_cover`` is False when no single indecomposable projective has
    every positive-side simple in its radical, so a summand whose syzygy
    carries the whole positive side cannot be a quotient of one P_w.
    """
    from itq.syzygy import kernel_relations

    out = []
    for rel in kernel_relations(q):
        pos = tuple(sorted(v for v, c in rel.items() if c > 0))
        neg = tuple(sorted(v for v, c in rel.items() if c < 0))
        hosts = {v: tuple(w for w in range(q.n) if q.arrows[w][v]) for v in pos + neg}
        single = any(all(q.arrows[w][v] for v in pos) for w in range(q.n))
        out.append(SyzygyAudit(rel, pos, neg, hosts, single))
    return out
