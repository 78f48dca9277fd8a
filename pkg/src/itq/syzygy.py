"""Syzygies, the Igusa-Todorov functions phi and psi, and the dimensions built on them.

Over kQ/J^2 the syzygy of a simple S_i is the semisimple module with one copy
of S_j per arrow i -> j, so a semisimple module is just a multiplicity vector
and Omega acts on it by ``v -> v . arrows``.  An arbitrary non-projective
indecomposable is represented only through its first syzygy (semisimple) and
whether it is itself simple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from itq import linalg
from itq.quiver import (
    Quiver,
    classify_simples,
    heart_member,
    is_cycle_quiver,
    longest_path_from,
    member_order_stats,
    sinks,
    sources,
)

INF = math.inf


def syzygy(q: Quiver, m: Sequence[int]) -> Tuple[int, ...]:
    """Omega of the semisimple module with multiplicities ``m``."""
    n = q.n
    out = [0] * n
    for i, c in enumerate(m):
        if c:
            row = q.arrows[i]
            for j in range(n):
                out[j] += c * row[j]
    return tuple(out)


def cosyzygy(q: Quiver, m: Sequence[int]) -> Tuple[int, ...]:
    """Omega^{-1} of a semisimple module: one S_i per arrow i -> j into the support."""
    n = q.n
    out = [0] * n
    for j, c in enumerate(m):
        if c:
            for i in range(n):
                out[i] += c * q.arrows[i][j]
    return tuple(out)


def unit(q: Quiver, v: int) -> Tuple[int, ...]:
    return tuple(int(i == v) for i in range(q.n))


def semisimple(q: Quiver, vertices: Iterable[int]) -> Tuple[int, ...]:
    vs = set(vertices)
    return tuple(int(i in vs) for i in range(q.n))


# -- formal modules --------------------------------------------------------

@dataclass(frozen=True)
class Summand:
    """One indecomposable summand, known through its first syzygy.

    ``simple_at`` is set when the summand is the simple S_v; ``cover`` is the
    vertex of its projective cover for the non-simple M_S modules.
    """

    name: str
    first_syzygy: Tuple[int, ...]
    projective: bool = False
    simple_at: Optional[int] = None
    cover: Optional[int] = None

    @property
    def key(self):
        if self.simple_at is not None:
            return ("S", self.simple_at)
        return (self.name, self.first_syzygy)


def simple_summand(q: Quiver, v: int) -> Summand:
    syz = q.arrows[v]
    return Summand(f"S{q.label(v)}", tuple(syz), projective=not any(syz), simple_at=v)


@dataclass(frozen=True)
class FormalModule:
    summands: Tuple[Summand, ...]

    def __add__(self, other: "FormalModule") -> "FormalModule":
        return FormalModule(self.summands + other.summands)

    def __len__(self):
        return len(self.summands)

    def basic(self) -> List[Summand]:
        """Distinct non-projective summands, in first-seen order."""
        seen = set()
        out = []
        for s in self.summands:
            if s.projective or s.key in seen:
                continue
            seen.add(s.key)
            out.append(s)
        return out

    def names(self) -> List[str]:
        return [s.name for s in self.summands]

    @classmethod
    def of_simples(cls, q: Quiver, vertices: Iterable[int]) -> "FormalModule":
        return cls(tuple(simple_summand(q, v) for v in sorted(set(vertices))))

    @classmethod
    def of_semisimple(cls, q: Quiver, m: Sequence[int]) -> "FormalModule":
        return cls.of_simples(q, [v for v, c in enumerate(m) if c])


# -- the syzygy operator on K_0 --------------------------------------------

@dataclass(frozen=True)
class SyzygyMatrix:
    """Matrix of Omega-bar on the classes of non-projective simples.

    Column convention: column ``b`` holds the image of the ``b``-th basis
    class.  Classes of projective simples are zero and are dropped.
    """

    basis: Tuple[int, ...]
    matrix: Tuple[Tuple[int, ...], ...]

    def restrict(self, v: Sequence[int]) -> List[int]:
        return [v[i] for i in self.basis]


@lru_cache(maxsize=4096)
def syzygy_matrix(q: Quiver) -> SyzygyMatrix:
    proj = sinks(q)
    basis = tuple(v for v in range(q.n) if v not in proj)
    mat = tuple(tuple(q.arrows[i][j] for i in basis) for j in basis)
    return SyzygyMatrix(basis, mat)


@lru_cache(maxsize=4096)
def _horizon(q: Quiver) -> int:
    """Syzygy step past which lattice ranks can no longer drop."""
    N = syzygy_matrix(q).matrix
    return 1 + (linalg.nilpotency_index(N) if N else 0)


@dataclass(frozen=True)
class PhiResult:
    phi: int
    rank_trace: Tuple[int, ...]
    stabilized_at: int


def phi(q: Quiver, module: FormalModule) -> PhiResult:
    """phi of a formal module: first step after which the rank of the syzygy lattice is stable.

    W_0 has one basis class per distinct non-projective summand; W_l for
    l >= 1 is spanned by N^(l-1) applied to the first syzygies.  Ranks are
    taken through the certification horizon so that a temporary plateau is
    never mistaken for the stable rank.
    """
    summands = module.basic()
    if not summands:
        return PhiResult(0, (0,), 0)
    sm = syzygy_matrix(q)
    N = sm.matrix
    vecs = [sm.restrict(s.first_syzygy) for s in summands]
    horizon = _horizon(q)
    trace = [len(summands)]
    for step in range(1, horizon + 1):
        vecs = [v for v in vecs if any(v)]
        r = linalg.rank(vecs) if vecs else 0
        trace.append(r)
        if r == 0:
            break
        if step < horizon:
            vecs = [linalg.mat_vec(N, v) for v in vecs]
    stable = trace[-1]
    value = next(l for l, r in enumerate(trace) if r == stable)
    return PhiResult(value, tuple(trace), value)


def phi_semisimple(q: Quiver, m: Sequence[int]) -> PhiResult:
    return phi(q, FormalModule.of_semisimple(q, m))


def phi_A0(q: Quiver) -> PhiResult:
    return phi(q, FormalModule.of_simples(q, range(q.n)))


def phi_SD(q: Quiver) -> PhiResult:
    return phi(q, FormalModule.of_simples(q, classify_simples(q).sd))


def is_selfinjective(q: Quiver) -> bool:
    """Z_n, or the simple algebra (one vertex, no arrows)."""
    if q.n == 1 and q.arrow_count == 0:
        return True
    return is_cycle_quiver(q)


def phidim(q: Quiver) -> int:
    if is_selfinjective(q):
        return 0
    return phi_SD(q).phi + 1


# -- projective dimensions -------------------------------------------------

def pd_simple(q: Quiver, v: int) -> float:
    """0 at a sink, infinity if ``v`` reaches a cycle, else the longest path from ``v``."""
    d = longest_path_from(q, v)
    return INF if d is None else d


def pd_semisimple(q: Quiver, m: Sequence[int]) -> float:
    return max((pd_simple(q, v) for v, c in enumerate(m) if c), default=0)


def pd_summand(q: Quiver, s: Summand) -> float:
    if s.projective or not any(s.first_syzygy):
        return 0
    return 1 + pd_semisimple(q, s.first_syzygy)


def pd_module(q: Quiver, module: FormalModule) -> float:
    return max((pd_summand(q, s) for s in module.summands), default=0)


def gldim(q: Quiver) -> float:
    """pd(A_0); finite exactly when the quiver has no oriented cycle."""
    return max(pd_simple(q, v) for v in range(q.n))


def findim(q: Quiver) -> int:
    """Finitistic dimension.

    0 without a sink.  Otherwise every syzygy is a sum of simples at non-source
    vertices and each such S_v is the syzygy of M_{S_v}, so the supremum is
    one more than the largest finite pd of a non-source simple.
    """
    if not sinks(q):
        return 0
    src = sources(q)
    finite = [pd_simple(q, v) for v in range(q.n) if v not in src]
    finite = [p for p in finite if p != INF]
    if not finite:
        return 0
    return 1 + int(max(finite))


# -- psi -------------------------------------------------------------------

def syzygy_power(q: Quiver, module: FormalModule, k: int) -> Optional[Tuple[int, ...]]:
    """Omega^k of a formal module as a multiplicity vector (None for k = 0)."""
    if k == 0:
        return None
    total = [0] * q.n
    for s in module.summands:
        if not s.projective:
            total = [a + b for a, b in zip(total, s.first_syzygy)]
    v = tuple(total)
    for _ in range(k - 1):
        v = syzygy(q, v)
    return v


def psi(q: Quiver, module: FormalModule) -> int:
    """phi(M) plus the largest finite pd among summands of Omega^phi(M)."""
    f = phi(q, module).phi
    if f == 0:
        pds = [pd_summand(q, s) for s in module.summands]
    else:
        top = syzygy_power(q, module, f)
        pds = [pd_simple(q, v) for v, c in enumerate(top) if c]
    finite = [p for p in pds if p != INF]
    return f + int(max(finite, default=0))


def psi_semisimple(q: Quiver, m: Sequence[int]) -> int:
    return psi(q, FormalModule.of_semisimple(q, m))


@dataclass(frozen=True)
class PsiDim:
    lo: int
    hi: int
    exact: bool
    reason: str

    @property
    def value(self) -> Optional[int]:
        return self.lo if self.exact else None


def psi_maximal_shape(q: Quiver) -> bool:
    """Structural test for psidim = 2n - 3 (n > 3).

    Member totally ordered, a sink exists, the heart is a single vertex with
    loops, arrows between heart and member only leave the heart, and one of
    them reaches the member's source.
    """
    if q.n <= 3:
        return False
    hm = heart_member(q)
    if len(hm.heart) != 1 or not hm.member or not sinks(q):
        return False
    (h,) = hm.heart
    if q.loops(h) == 0:
        return False
    order = member_order_stats(q)
    if not order.is_total_order:
        return False
    if any(q.arrows[m][h] for m in hm.member):
        return False
    return q.arrows[h][order.chain[0]] > 0


def psi_probes(q: Quiver) -> Dict[str, FormalModule]:
    """Modules whose psi values give a lower bound for psidim."""
    from itq.witness import build_M_S, build_witness

    cls = classify_simples(q)
    probes = {
        "A0": FormalModule.of_simples(q, range(q.n)),
        "S_D": FormalModule.of_simples(q, cls.sd),
    }
    lifts = {v: build_M_S(q, v) for v in range(q.n) if v not in cls.injective}
    for v, lift in lifts.items():
        probes[f"M_S{q.label(v)}"] = lift
    for (a, la), (b, lb) in combinations(lifts.items(), 2):
        probes[f"M_S{q.label(a)}+M_S{q.label(b)}"] = la + lb
    if lifts:
        everything = FormalModule(())
        for lift in lifts.values():
            everything = everything + lift
        probes["all lifts + S_D"] = everything + probes["S_D"]
    if not is_selfinjective(q):
        probes["witness"] = build_witness(q).module
    return probes


def psidim(q: Quiver) -> PsiDim:
    n = q.n
    pdim = phidim(q)
    if pdim == n:
        return PsiDim(n, n, True, "phidim = n")
    if not sinks(q):
        return PsiDim(pdim, pdim, True, "no sink: findim = 0, psidim = phidim")
    if gldim(q) != INF:
        return PsiDim(pdim, pdim, True, "finite global dimension")
    if psi_maximal_shape(q):
        return PsiDim(2 * n - 3, 2 * n - 3, True, "maximal psi shape")
    d = member_order_stats(q).longest_path_to_sink
    hi = n - 1 + (d or 0)
    best = max(psi(q, m) for m in psi_probes(q).values())
    lo = max(pdim, best)
    if lo == hi:
        return PsiDim(lo, hi, True, "probe meets upper bound n - 1 + d")
    return PsiDim(lo, hi, False, "bounded: probes below, n - 1 + d above")


# -- kernel of Omega-bar ----------------------------------------------------

def kernel_relations(q: Quiver) -> List[Dict[int, int]]:
    """Integer basis of ker(Omega-bar) on the non-projective simple classes."""
    sm = syzygy_matrix(q)
    if not sm.basis:
        return []
    return [
        {sm.basis[i]: c for i, c in enumerate(vec) if c}
        for vec in linalg.nullspace(sm.matrix)
    ]


def format_relation(q: Quiver, rel: Dict[int, int]) -> str:
    parts = []
    for v in sorted(rel):
        c = rel[v]
        mag = "" if abs(c) == 1 else f"{abs(c)}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, f"{mag}[S{q.label(v)}]"))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text
