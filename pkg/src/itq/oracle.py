"""Brute-force cross-check of the closed-form engine.

Nothing here reuses the engine's linear algebra or its syzygy matrix: the
lattice lives in a K_0 with one coordinate per non-projective indecomposable
that appears (summands plus every simple), ranks come from a plain Fraction
elimination, and projective dimensions come from running resolutions.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import List, Optional, Sequence, Tuple

from itq.quiver import Quiver

DEFAULT_CAP = 8
CAP_ENV = "ITQ_ORACLE_CAP"


class CapExceeded(ValueError):
    pass


def resolve_cap(flag: Optional[int] = None) -> int:
    """Flag beats environment beats default."""
    if flag is not None:
        return flag
    env = os.environ.get(CAP_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"{CAP_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_CAP


def fraction_rank(rows: Sequence[Sequence[int]]) -> int:
    return len(echelon(rows))


def echelon(rows: Sequence[Sequence]) -> List[List[Fraction]]:
    """Nonzero rows of the reduced row echelon form, by plain Fraction elimination."""
    m = [[Fraction(x) for x in r] for r in rows if any(r)]
    if not m:
        return []
    cols = len(m[0])
    rank = 0
    for c in range(cols):
        pivot = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return m[:rank]


def _omega(q: Quiver, vec: Sequence[int]) -> List[int]:
    """Syzygy of a semisimple module: each S_i contributes one S_j per arrow i -> j."""
    n = q.n
    out = [0] * n
    for i in range(n):
        if vec[i]:
            row = q.arrows[i]
            for j in range(n):
                out[j] += vec[i] * row[j]
    return out


def resolution_length(q: Quiver, vec: Sequence[int]) -> Optional[int]:
    """pd of a semisimple module by running its resolution; None if it never stops."""
    cur = list(vec)
    for step in range(q.n + 1):
        nonproj = [c if any(q.arrows[v]) else 0 for v, c in enumerate(cur)]
        if not any(nonproj):
            return step
        cur = _omega(q, cur)
    return None


def literal_phi(q: Quiver, summands: Sequence[Tuple[Tuple[int, ...], Optional[int]]]) -> int:
    """phi of a module given as (first syzygy, simple vertex or None) pairs.

    K_0 coordinates: simples 0..n-1, then one per distinct non-simple summand.
    The module's lattice is pushed 2n + t steps, and phi is the least l from
    which Omega-bar never loses rank again.
    """
    n = q.n
    proj = [not any(q.arrows[v]) for v in range(n)]
    extra = []
    basis = []
    for syz, simple in summands:
        if simple is not None:
            if not proj[simple]:
                basis.append(("S", simple))
        elif any(syz):
            if ("M", syz) not in extra:
                extra.append(("M", syz))
            basis.append(("M", syz))
    basis = list(dict.fromkeys(basis))
    if not basis:
        return 0
    dim = n + len(extra)

    def class_of(item):
        v = [0] * dim
        if item[0] == "S":
            v[item[1]] = 1
        else:
            v[n + extra.index(item)] = 1
        return v

    def omega_bar(vec):
        out = [0] * dim
        for i in range(n):
            if vec[i]:
                for j in range(n):
                    if not proj[j]:
                        out[j] += vec[i] * q.arrows[i][j]
        for k, item in enumerate(extra):
            c = vec[n + k]
            if c:
                for j in range(n):
                    if not proj[j]:
                        out[j] += c * item[1][j]
        return out

    # each W_l is replaced by an echelon basis of its span before pushing on;
    # the image of a basis spans the image of the lattice
    steps = 2 * n + len(basis)
    current = echelon([class_of(b) for b in basis])
    ranks = [len(current)]
    for _ in range(steps):
        current = echelon([omega_bar(v) for v in current])
        ranks.append(len(current))
    # injective on W_l iff rank(W_{l+1}) = rank(W_l)
    for l in range(len(ranks)):
        if all(ranks[s + 1] == ranks[s] for s in range(l, len(ranks) - 1)):
            return l
    return len(ranks)


def literal_findim(q: Quiver) -> int:
    """Largest finite pd over every module whose syzygy is a 0/1 semisimple on non-sources."""
    targets = [v for v in range(q.n) if any(q.arrows[u][v] for u in range(q.n))]
    best = 0
    for bits in product((0, 1), repeat=len(targets)):
        if not any(bits):
            continue
        vec = [0] * q.n
        for v, b in zip(targets, bits):
            vec[v] = b
        p = resolution_length(q, vec)
        if p is not None:
            best = max(best, 1 + p)
    return best


@dataclass
class OracleReport:
    n: int
    comparisons: List[Tuple[str, object, object]] = field(default_factory=list)

    @property
    def mismatches(self) -> List[Tuple[str, object, object]]:
        return [c for c in self.comparisons if c[1] != c[2]]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _as_pairs(module):
    return [(s.first_syzygy, s.simple_at) for s in module.summands if not s.projective]


def run_oracle(q: Quiver, cap: Optional[int] = None) -> OracleReport:
    from itq import syzygy as eng
    from itq.quiver import classify_simples
    from itq.witness import build_witness

    limit = resolve_cap(cap)
    if q.n > limit:
        raise CapExceeded(f"quiver has {q.n} vertices, oracle cap is {limit}")
    rep = OracleReport(q.n)
    simples = [(tuple(q.arrows[v]), v) for v in range(q.n)]
    sd = sorted(classify_simples(q).sd)
    rep.comparisons.append(("phi(A0)", eng.phi_A0(q).phi, literal_phi(q, simples)))
    rep.comparisons.append(("phi(S_D)", eng.phi_SD(q).phi, literal_phi(q, [simples[v] for v in sd])))

    # a connected quiver whose matrix is a permutation is a single cycle
    cyclic = all(sum(r) == 1 for r in q.arrows) and \
        all(sum(q.arrows[i][j] for i in range(q.n)) == 1 for j in range(q.n))
    simple_algebra = q.n == 1 and not any(q.arrows[0])
    selfinj = cyclic or simple_algebra
    lit_phidim = 0 if selfinj else literal_phi(q, [simples[v] for v in sd]) + 1
    rep.comparisons.append(("phidim", eng.phidim(q), lit_phidim))
    if not selfinj:
        w = build_witness(q)
        rep.comparisons.append(("phi(witness)", w.achieved_phi, literal_phi(q, _as_pairs(w.module))))

    for v in range(q.n):
        p = resolution_length(q, [int(i == v) for i in range(q.n)])
        got = eng.pd_simple(q, v)
        rep.comparisons.append((f"pd(S{q.label(v)})", None if got == eng.INF else int(got), p))
    rep.comparisons.append(("findim", eng.findim(q), literal_findim(q)))
    return rep
