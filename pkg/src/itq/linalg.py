"""Exact integer/rational matrix arithmetic.

Matrices are lists of rows of Python ints (or Fractions where noted); no
floating point is used anywhere in this module.  Polynomials are tuples of
integer coefficients in ascending degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

Matrix = List[List[int]]
Poly = Tuple[int, ...]


def shape(m: Sequence[Sequence]) -> Tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    return rows, cols


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def transpose(m: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*m)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(m: Sequence[Sequence[int]], v: Sequence[int]) -> List[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in m]


def mat_pow(m: Sequence[Sequence[int]], k: int) -> Matrix:
    """Exact ``m**k`` by repeated squaring; ``m**0`` is the identity."""
    if k < 0:
        raise ValueError("negative exponent")
    n = len(m)
    result = identity(n)
    base = [list(row) for row in m]
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def trace(m: Sequence[Sequence[int]]) -> int:
    return sum(m[i][i] for i in range(len(m)))


def is_symmetric(m: Sequence[Sequence[int]]) -> bool:
    n = len(m)
    return all(m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n))


def _bareiss(m: Sequence[Sequence[int]]) -> Tuple[int, int]:
    """Fraction-free elimination; returns (rank, sign-adjusted last pivot).

    The second value is the determinant when ``m`` is square and of full
    rank, and is meaningless otherwise.
    """
    a = [list(row) for row in m]
    rows, cols = shape(a)
    if rows == 0 or cols == 0:
        return 0, 1
    prev = 1
    sign = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            sign = -sign
        p = a[r][c]
        for i in range(r + 1, rows):
            ai = a[i]
            f = ai[c]
            ar = a[r]
            for j in range(c + 1, cols):
                # exact division: Bareiss invariant
                ai[j] = (p * ai[j] - f * ar[j]) // prev
            ai[c] = 0
        prev = p
        r += 1
    return r, sign * prev


def rank(m: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals of an integer matrix (Bareiss elimination)."""
    return _bareiss(m)[0]


def det(m: Sequence[Sequence[int]]) -> int:
    n, c = shape(m)
    if n != c:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    r, d = _bareiss(m)
    return d if r == n else 0


def rank_sequence(m: Sequence[Sequence[int]], upto: int | None = None) -> List[int]:
    """``[rank(m**0), rank(m**1), ..., rank(m**upto)]``; ``upto`` defaults to n."""
    n = len(m)
    if upto is None:
        upto = n
    seq = [n]
    power = identity(n)
    for _ in range(upto):
        power = mat_mul(power, m)
        seq.append(rank(power))
    return seq


@dataclass(frozen=True)
class ZeroMultiplicities:
    """Jordan data of the eigenvalue 0, read off the rank sequence."""

    algebraic: int
    geometric: int
    nilpotency_index: int
    rank_sequence: Tuple[int, ...]


def zero_multiplicities(m: Sequence[Sequence[int]]) -> ZeroMultiplicities:
    n = len(m)
    seq = rank_sequence(m, n)
    index = next(l for l in range(n + 1) if l == n or seq[l] == seq[l + 1])
    return ZeroMultiplicities(
        algebraic=n - seq[n],
        geometric=n - seq[1] if n else 0,
        nilpotency_index=index,
        rank_sequence=tuple(seq),
    )


def nilpotency_index(m: Sequence[Sequence[int]]) -> int:
    """Size of the largest Jordan block at 0 (0 when ``m`` is invertible)."""
    return zero_multiplicities(m).nilpotency_index


def nullspace(m: Sequence[Sequence[int]]) -> List[List[int]]:
    """Basis of the right kernel as primitive integer vectors.

    Each vector is scaled so its first nonzero entry is positive.
    """
    rows, cols = shape(m)
    a = [[Fraction(x) for x in row] for row in m]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -a[i][f]
        basis.append(_primitive(v))
    return basis


def _primitive(v: Sequence[Fraction]) -> List[int]:
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g:
        ints = [x // g for x in ints]
    lead = next((x for x in ints if x), 0)
    if lead < 0:
        ints = [-x for x in ints]
    return ints


# -- polynomials -----------------------------------------------------------

def poly_trim(p: Sequence[int]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def char_poly(m: Sequence[Sequence[int]]) -> Poly:
    """det(xI - m) by Faddeev-LeVerrier; all divisions are exact."""
    n = len(m)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = zeros(n, n)
    for k in range(1, n + 1):
        # M_k = m * M_{k-1} + c_{n-k+1} I
        mk = mat_mul(m, mk)
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            mk[i][i] += c_prev
        t = -trace(mat_mul(m, mk))
        if t % k:
            raise ArithmeticError("Faddeev-LeVerrier division not exact")
        coeffs[n - k] = t // k
    return tuple(coeffs)


def poly_divmod(p: Sequence[int], q: Sequence[int]) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
    """Long division of ``p`` by ``q`` over the rationals."""
    q = poly_trim(q)
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = [Fraction(x) for x in poly_trim(p)]
    dq = len(q) - 1
    if len(rem) - 1 < dq:
        return (), tuple(rem)
    quot = [Fraction(0)] * (len(rem) - dq)
    lead = Fraction(q[-1])
    for shift in range(len(rem) - 1 - dq, -1, -1):
        c = rem[shift + dq] / lead
        quot[shift] = c
        if c:
            for i, qi in enumerate(q):
                rem[shift + i] -= c * qi
    while rem and rem[-1] == 0:
        rem.pop()
    return tuple(quot), tuple(rem)


def poly_divides(p: Sequence[int], q: Sequence[int]) -> bool:
    """True iff ``p`` divides ``q`` in Q[x]."""
    _, rem = poly_divmod(q, p)
    return not rem


def zero_root_multiplicity(p: Sequence[int]) -> int:
    p = poly_trim(p)
    return next((i for i, c in enumerate(p) if c), len(p))


def poly_str(p: Sequence[int], var: str = "x") -> str:
    p = poly_trim(p)
    if not p:
        return "0"
    terms = []
    for deg in range(len(p) - 1, -1, -1):
        c = p[deg]
        if not c:
            continue
        mag = abs(c)
        if deg == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else str(mag)) + (var if deg == 1 else f"{var}^{deg}")
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    first_sign, first_body = terms[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out
