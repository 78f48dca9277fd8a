"""Equitable partitions, quotient quivers, and how phidim behaves under quotients.

A partition of the vertices is equitable when every vertex of block C_i
sends the same number of arrows (counted with multiplicity) into block C_j.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from itq import linalg
from itq.quiver import Quiver, heart_member

MAX_ENUMERATION = 8


@dataclass(frozen=True)
class Partition:
    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else -1))
        if any(not b for b in blocks):
            raise ValueError("empty block")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def trivial(cls, n: int) -> "Partition":
        return cls(tuple((v,) for v in range(n)))

    @classmethod
    def from_labels(cls, q: Quiver, blocks: Sequence[Sequence[str]]) -> "Partition":
        index = {q.label(v): v for v in range(q.n)}
        return cls(tuple(tuple(index[str(x)] for x in b) for b in blocks))

    @property
    def r(self) -> int:
        return len(self.blocks)

    def block_of(self) -> Dict[int, int]:
        return {v: i for i, b in enumerate(self.blocks) for v in b}

    def validate(self, n: int):
        seen = [v for b in self.blocks for v in b]
        if sorted(seen) != list(range(n)):
            raise ValueError("blocks must be disjoint and cover every vertex")

    def refines(self, other: "Partition") -> bool:
        """True if every block of ``self`` sits inside a block of ``other``."""
        where = other.block_of()
        return all(len({where[v] for v in b}) == 1 for b in self.blocks)

    def labelled(self, q: Quiver) -> List[List[str]]:
        return [q.labelset(b) for b in self.blocks]


@dataclass(frozen=True)
class EquitableCheck:
    equitable: bool
    b: Optional[Tuple[Tuple[int, ...], ...]]
    violation: Optional[Tuple[int, int, int]]  # (v, v', target block)

    def __bool__(self):
        return self.equitable


def _count_into(q: Quiver, v: int, block: Sequence[int]) -> int:
    row = q.arrows[v]
    return sum(row[w] for w in block)


def is_equitable(q: Quiver, p: Partition) -> EquitableCheck:
    p.validate(q.n)
    b = []
    for bi in p.blocks:
        row = []
        for j, bj in enumerate(p.blocks):
            counts = [_count_into(q, v, bj) for v in bi]
            for v, c in zip(bi, counts):
                if c != counts[0]:
                    return EquitableCheck(False, None, (bi[0], v, j))
            row.append(counts[0])
        b.append(tuple(row))
    return EquitableCheck(True, tuple(b), None)


def characteristic_matrix(n: int, p: Partition) -> List[List[int]]:
    where = p.block_of()
    return [[int(where[v] == i) for i in range(p.r)] for v in range(n)]


@dataclass(frozen=True)
class QuotientResult:
    quotient: Quiver
    b: Tuple[Tuple[int, ...], ...]
    characteristic_matrix: Tuple[Tuple[int, ...], ...]


def quotient(q: Quiver, p: Partition) -> QuotientResult:
    check = is_equitable(q, p)
    if not check:
        raise ValueError("partition not equitable")
    P = characteristic_matrix(q.n, p)
    B = [list(row) for row in check.b]
    M = q.matrix()
    Pt = linalg.transpose(P)

    PtP = linalg.mat_mul(Pt, P)
    sizes = [len(blk) for blk in p.blocks]
    if PtP != [[sizes[i] if i == j else 0 for j in range(p.r)] for i in range(p.r)]:
        raise AssertionError("P^t P is not diag(|C_i|)")
    if linalg.mat_mul(M, P) != linalg.mat_mul(P, B):
        raise AssertionError("M_Q P != P M_Q/pi")
    # (P^t P)^{-1} P^t M P, with the diagonal inverse taken exactly
    core = linalg.mat_mul(linalg.mat_mul(Pt, M), P)
    recon = [[Fraction(core[i][j], sizes[i]) for j in range(p.r)] for i in range(p.r)]
    if recon != [[Fraction(x) for x in row] for row in B]:
        raise AssertionError("(P^t P)^-1 P^t M P != M_Q/pi")

    labels = tuple("{" + ",".join(q.labelset(blk)) + "}" for blk in p.blocks)
    return QuotientResult(Quiver(tuple(map(tuple, B)), labels), check.b, tuple(map(tuple, P)))


def coarsest_equitable(q: Quiver) -> Partition:
    """Iterated refinement by out-count signatures into the current blocks."""
    color = [0] * q.n
    while True:
        ncolors = max(color) + 1
        sigs = []
        for v in range(q.n):
            counts = [0] * ncolors
            for w in range(q.n):
                counts[color[w]] += q.arrows[v][w]
            sigs.append((color[v], tuple(counts)))
        palette = {}
        new = []
        for s in sigs:
            palette.setdefault(s, len(palette))
            new.append(palette[s])
        if len(palette) == ncolors:
            break
        color = new
    blocks: Dict[int, List[int]] = {}
    for v, c in enumerate(color):
        blocks.setdefault(c, []).append(v)
    return Partition(tuple(map(tuple, blocks.values())))


def enumerate_equitable(q: Quiver, max_n: int = MAX_ENUMERATION) -> List[Partition]:
    """All equitable partitions, in restricted-growth-string order.

    A partial assignment is abandoned as soon as two vertices in one block
    can no longer end up with equal arrow counts into some block, whatever
    the unassigned vertices do.
    """
    n = q.n
    if n > max_n:
        raise ValueError(f"too many vertices for exhaustive enumeration ({n} > {max_n})")
    out = []
    for rgs in _rgs(q, n):
        blocks: Dict[int, List[int]] = {}
        for v, c in enumerate(rgs):
            blocks.setdefault(c, []).append(v)
        p = Partition(tuple(map(tuple, blocks.values())))
        if is_equitable(q, p):
            out.append(p)
    return out


def _rgs(q: Quiver, n: int) -> Iterator[List[int]]:
    outdeg = [q.out_degree(v) for v in range(n)]
    assignment: List[int] = []

    def viable() -> bool:
        k = len(assignment)
        blocks: Dict[int, List[int]] = {}
        for v, c in enumerate(assignment):
            blocks.setdefault(c, []).append(v)
        for members in blocks.values():
            if len(members) < 2:
                continue
            if len({outdeg[v] for v in members}) > 1:
                return False
            for target in blocks.values():
                lo_hi = []
                for v in members:
                    known = _count_into(q, v, target)
                    free = sum(q.arrows[v][w] for w in range(k, n))
                    lo_hi.append((known, known + free))
                if max(lo for lo, _ in lo_hi) > min(hi for _, hi in lo_hi):
                    return False
        return True

    def extend(top: int) -> Iterator[List[int]]:
        if len(assignment) == n:
            yield list(assignment)
            return
        for c in range(top + 2):
            assignment.append(c)
            if viable():
                yield from extend(max(top, c))
            assignment.pop()

    yield from extend(-1)


@dataclass(frozen=True)
class TransferReport:
    """Outcome of the quotient checks; None marks a check that does not apply."""

    charpoly_divides: bool
    no_member_preserved: Optional[bool]
    phidim_bound_ok: Optional[bool]
    defect_bound_ok: Optional[bool]
    maximality_inherited: Optional[bool]
    quotient_phidim: int
    phidim: int
    certifies_nonmaximal: bool
    notes: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        checks = (self.charpoly_divides, self.no_member_preserved, self.phidim_bound_ok,
                  self.defect_bound_ok, self.maximality_inherited)
        return all(c is not False for c in checks)


def verify_transfer(q: Quiver, p: Partition) -> TransferReport:
    from itq.syzygy import phidim
    from itq.witness import is_phi_maximal

    res = quotient(q, p)
    Q = res.quotient
    divides = linalg.poly_divides(linalg.char_poly(Q.matrix()), linalg.char_poly(q.matrix()))
    pd_q = phidim(q)
    pd_quot = phidim(Q)
    notes = []
    memberless = not heart_member(q).member
    if memberless:
        preserved = not heart_member(Q).member
        bound = pd_quot <= min(p.r, pd_q)
        defect = p.r - pd_quot <= q.n - pd_q
        q_max = is_phi_maximal(q)
        quot_max = is_phi_maximal(Q)
        inherited = (not q_max) or quot_max
        nonmax = not quot_max
    else:
        preserved = bound = defect = inherited = None
        nonmax = False
        notes.append("quiver has a member: quotient phidim bounds not applicable")
    return TransferReport(divides, preserved, bound, defect, inherited, pd_quot, pd_q, nonmax, tuple(notes))
