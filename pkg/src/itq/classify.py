"""Maximality verdicts, the low-phidim trichotomy, and the full algebra profile."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Union

from itq import linalg
from itq.quiver import (
    HeartMember,
    Quiver,
    SimpleClassification,
    classify_simples,
    heart_by_cycles,
    heart_by_support,
    heart_member,
    is_strongly_connected,
    member_order_stats,
    opposite,
    sinks,
    subhearts,
)
from itq.syzygy import (
    INF,
    PsiDim,
    findim,
    gldim,
    is_selfinjective,
    phi_A0,
    phidim,
    psi_maximal_shape,
    psidim,
    syzygy_matrix,
)

LowClass = Union[int, str]


class MemberError(ValueError):
    pass


@dataclass(frozen=True)
class Audit:
    """Necessary conditions for phidim = n on a memberless quiver.

    ``regular_loops`` is None when the quiver is not regular at starting.
    """

    strongly_connected: bool
    loops_at_two_vertices: bool
    regular_loops: Optional[bool]
    no_proper_subhearts: bool

    @property
    def passed(self) -> bool:
        return (self.strongly_connected and self.loops_at_two_vertices
                and self.regular_loops is not False and self.no_proper_subhearts)


@dataclass(frozen=True)
class MaximalityVerdict:
    phi_maximal: bool
    rank_pattern: Optional[bool]   # None when the member is nonempty
    psi_maximal: Optional[bool]    # None for n <= 3
    audit: Audit


def _rank_pattern(q: Quiver) -> bool:
    """rank(M^l) = n - l for l < n - 1 and rank(M^(n-1)) = rank(M^n) = 1."""
    n = q.n
    if n == 1:
        return q.arrows[0][0] > 0
    ranks = linalg.rank_sequence(q.matrix(), upto=n)
    want = [n - l for l in range(n - 1)] + [1, 1]
    return list(ranks) == want


def audit(q: Quiver) -> Audit:
    n = q.n
    looped = sum(1 for v in range(n) if q.loops(v))
    degrees = {q.out_degree(v) for v in range(n)}
    regular = None
    if len(degrees) == 1:
        regular = q.loop_count == degrees.pop()
    sh = subhearts(q)
    everything = frozenset(range(n))
    no_proper = list(sh.final) == [everything] and list(sh.initial) == [everything]
    return Audit(is_strongly_connected(q), n == 1 or looped >= 2, regular, no_proper)


def classify_maximality(q: Quiver) -> MaximalityVerdict:
    member = heart_member(q).member
    pdim = phidim(q)
    if member:
        maximal = pdim == q.n - 1
        pattern = None
    else:
        maximal = pdim == q.n
        pattern = _rank_pattern(q) if q.n > 1 else maximal
    psi_max = psi_maximal_shape(q) if q.n > 3 else None
    return MaximalityVerdict(maximal, pattern, psi_max, audit(q))


def classify_low_phidim(q: Quiver) -> LowClass:
    """0, 1, 2 or "above" from the zero-eigenvalue multiplicities; memberless only."""
    if heart_member(q).member:
        raise MemberError("quiver has a member: the low-phidim classification needs an empty member")
    if is_selfinjective(q):
        return 0
    zm = linalg.zero_multiplicities(q.matrix())
    if zm.algebraic == 0:
        return 1
    if zm.algebraic == zm.geometric:
        return 2
    return "above"


@dataclass(frozen=True)
class OppositeCheck:
    phidim: int
    phidim_op: int

    @property
    def equal(self) -> bool:
        return self.phidim == self.phidim_op


def phidim_opposite_check(q: Quiver) -> OppositeCheck:
    return OppositeCheck(phidim(q), phidim(opposite(q)))


# -- the profile -----------------------------------------------------------

@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class AlgebraProfile:
    n: int
    classification: SimpleClassification
    heart_member: HeartMember
    selfinjective: bool
    phi_A0: int
    rank_trace: tuple
    phidim: int
    phidim_op: int
    findim: int
    gldim: float
    psidim: PsiDim
    maximality: MaximalityVerdict
    low_class: Optional[LowClass]
    zero_mult: linalg.ZeroMultiplicities
    checks: List[Check] = field(default_factory=list)

    @property
    def findim_zero(self) -> bool:
        return self.findim == 0

    @property
    def failed(self) -> List[Check]:
        return [c for c in self.checks if not c.ok]


def analyze(q: Quiver) -> AlgebraProfile:
    cls = classify_simples(q)
    hm = heart_member(q)
    a0 = phi_A0(q)
    pdim = phidim(q)
    op = phidim(opposite(q))
    fd = findim(q)
    gd = gldim(q)
    pd = psidim(q)
    low = None if hm.member else classify_low_phidim(q)
    zm = linalg.zero_multiplicities(q.matrix())
    profile = AlgebraProfile(
        q.n, cls, hm, is_selfinjective(q), a0.phi, a0.rank_trace, pdim, op, fd, gd, pd,
        classify_maximality(q), low, zm,
    )
    object.__setattr__(profile, "checks", theorem_checks(q, profile))
    return profile


def theorem_checks(q: Quiver, p: AlgebraProfile) -> List[Check]:
    """Every stated relation between the computed invariants, evaluated on ``q``."""
    n = q.n
    out: List[Check] = []

    def add(name, ok, detail=""):
        out.append(Check(name, bool(ok), detail))

    add("phidim <= phi(A0) + 1", p.phidim <= p.phi_A0 + 1, f"{p.phidim} vs {p.phi_A0}+1")
    add("phi(A0) <= n - 1", p.phi_A0 <= n - 1)
    add("phidim <= n", p.phidim <= n)
    add("phidim = phidim(op)", p.phidim == p.phidim_op, f"{p.phidim} vs {p.phidim_op}")
    add("findim <= phidim <= psidim", p.findim <= p.phidim <= p.psidim.hi,
        f"{p.findim} <= {p.phidim} <= {p.psidim.hi}")
    add("psidim interval ordered", p.psidim.lo <= p.psidim.hi)
    if q.arrow_count:
        add("findim = 0 iff no sink", (p.findim == 0) == (not sinks(q)))
    add("heart by support = heart by cycles", heart_by_support(q) == heart_by_cycles(q))
    add("member empty iff no sinks and no sources",
        (not p.heart_member.member) == (not p.classification.projective and not p.classification.injective))
    trace = linalg.trace(q.matrix())
    add("trace = loop count", trace == q.loop_count)

    if p.gldim != INF:
        g = int(p.gldim)
        add("finite gldim: findim = phidim = gldim <= n - 1",
            p.findim == p.phidim == g and g <= n - 1, f"findim {p.findim}, phidim {p.phidim}, gldim {g}")

    if p.heart_member.member:
        add("member nonempty: phidim <= n - 1", p.phidim <= n - 1)
        if p.gldim == INF:
            sd = len(p.classification.sd)
            add("infinite gldim with member: phidim <= #S_D", p.phidim <= sd, f"{p.phidim} vs {sd}")
    else:
        if not p.selfinjective:
            add("memberless: phidim = phi(A0) + 1", p.phidim == p.phi_A0 + 1)
            if n >= 2:
                m = linalg.nilpotency_index(syzygy_matrix(q).matrix)
                # the syzygy matrix is the (transposed) adjacency matrix here
                add("memberless: phidim = nilpotency index + 1", p.phidim == m + 1,
                    f"{p.phidim} vs {m}+1")
        want = {0: p.phidim == 0, 1: p.phidim == 1, 2: p.phidim == 2, "above": p.phidim > 2}
        add("low-phidim trichotomy", want[p.low_class], f"class {p.low_class}, phidim {p.phidim}")
        if n > 1:
            add("phi-maximal iff rank pattern", p.maximality.phi_maximal == p.maximality.rank_pattern)
        if p.maximality.phi_maximal:
            add("phi-maximal: necessary conditions", p.maximality.audit.passed, str(p.maximality.audit))

    if linalg.is_symmetric(q.matrix()):
        add("symmetric: phidim <= 2", p.phidim <= 2)
        if not p.selfinjective:
            det = linalg.det(q.matrix())
            add("symmetric: phidim = 2 iff det = 0", (p.phidim == 2) == (det == 0), f"det {det}")

    if p.phidim == n:
        add("phidim = n: psidim = n", p.psidim.exact and p.psidim.lo == n)
    if not sinks(q):
        add("no sink: psidim = phidim", p.psidim.exact and p.psidim.lo == p.phidim)
    if p.maximality.psi_maximal:
        add("psi-maximal shape: psidim = 2n - 3", p.psidim.lo == 2 * n - 3)
    return out


def order_summary(q: Quiver) -> Dict[str, object]:
    o = member_order_stats(q)
    return {"total_order": o.is_total_order, "longest_path_to_sink": o.longest_path_to_sink,
            "chain": q.labelset(o.chain) if o.chain else []}
