"""Acceptance criteria 1-7, each printed as one PASS/FAIL line at the end of the run."""

import time

import pytest

from itq import linalg
from itq.classify import analyze, classify_low_phidim, classify_maximality
from itq.equitable import Partition, enumerate_equitable, quotient, verify_transfer
from itq.generators import cycle, generate, line, loopline, midk
from itq.oracle import run_oracle
from itq.quiver import (
    classify_simples,
    heart_by_cycles,
    heart_by_support,
    heart_member,
    is_strongly_connected,
    opposite,
    sinks,
    subhearts,
)
from itq.syzygy import (
    FormalModule,
    findim,
    is_selfinjective,
    phi,
    phi_A0,
    phidim,
    psidim,
    syzygy_matrix,
)
from itq.witness import build_witness, gamma_graph, gamma_structure_ok, is_phi_maximal, minimal_witness

RESULTS = {}


def record(criterion, ok, detail):
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS.setdefault(criterion, []).append((ok, line))
    print(line)


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def labels(q, vs):
    return sorted(q.label(v) for v in vs)


# -- 1. golden values ---------------------------------------------------------------

def _golden_cases(fx):
    def cycles():
        return all(phidim(cycle(n)) == 0 and psidim(cycle(n)).value == 0 and findim(cycle(n)) == 0
                   for n in range(2, 9))

    def lines():
        return all(phidim(line(n)) == n - 1 for n in range(2, 9))

    def one_loop():
        return phidim(cycle(1)) == 0

    def looplines():
        for n in range(3, 9):
            q = loopline(n)
            if phidim(q) != n - 1 or psidim(q).value != 2 * n - 3:
                return False
            if n > 3 and classify_maximality(q).psi_maximal is not True:
                return False
        return True

    def kernel_chain():
        q = fx["kernel_chain"]
        return phi_A0(q).rank_trace[:3] == (4, 3, 3) and phidim(q) == 2

    def looped_square():
        q = fx["looped_square"]
        return (phi_A0(q).phi == 1 and phidim(q) == 2 and is_strongly_connected(q)
                and not classify_maximality(q).phi_maximal)

    def member_chains():
        q = fx["member_chains"]
        return labels(q, heart_member(q).heart) == ["3", "4", "5", "6", "7", "8"]

    def subhearts6():
        q = fx["subhearts6"]
        sh = subhearts(q)
        return ([labels(q, s) for s in sh.final] == [["0"], ["4", "5"]]
                and [labels(q, s) for s in sh.initial] == [["1"]])

    def quotient_pair():
        q = fx["quotient_pair"]
        p = Partition.from_labels(q, [["1", "4"], ["2", "3"]])
        t = verify_transfer(q, p)
        return quotient(q, p).quotient.matrix() == [[0, 1], [1, 1]] and t.quotient_phidim == 1 and t.certifies_nonmaximal

    def looped_square():
        q = fx["looped_square"]
        parts = enumerate_equitable(q)
        want = {
            Partition.trivial(4),
            Partition.from_labels(q, [["1", "3"], ["2", "4"]]),
            Partition.from_labels(q, [["1", "2", "3", "4"]]),
        }
        if set(parts) != want or len(parts) != 3:
            return False
        dims = {p.r: verify_transfer(q, p).quotient_phidim for p in parts if p.r < 4}
        return dims == {2: 2, 1: 1}

    return {
        "Z_n n=2..8": cycles, "A_n n=2..8": lines, "one loop": one_loop,
        "loop-line n=3..8": looplines, "kernel chain": kernel_chain, "looped square": looped_square,
        "member chains": member_chains, "subhearts": subhearts6, "quotient pair": quotient_pair, "square partitions": looped_square,
    }


def test_criterion_1_golden_values(fixture_quivers):
    failures = []
    slowest = 0.0
    for name, case in _golden_cases(fixture_quivers).items():
        with Timer() as t:
            ok = case()
        slowest = max(slowest, t.elapsed)
        if not ok or t.elapsed >= 1.0:
            failures.append(f"{name} ({'wrong' if not ok else f'{t.elapsed:.2f}s'})")
    record(1, not failures, f"10 golden groups, slowest {slowest:.3f}s" + (f"; failed: {failures}" if failures else ""))
    assert not failures


# -- 2. generated maximal family ---------------------------------------------------

def test_criterion_2_phimax_family():
    bad = []
    with Timer() as t:
        for n in range(3, 9):
            q = generate("phimax", n, n - 1)
            prof = analyze(q)
            ranks = linalg.rank_sequence(q.matrix(), upto=n)
            pattern = ranks == [n - l for l in range(n - 1)] + [1, 1]
            lam = linalg.trace(q.matrix())
            cp = linalg.char_poly(q.matrix())
            # x^(n-1) (x - lambda), stored from the constant term up
            want_cp = (0,) * (n - 1) + (-lam, 1)
            looped = sum(1 for v in range(n) if q.loops(v))
            checks = {
                "phidim": prof.phidim == n,
                "psidim": prof.psidim.exact and prof.psidim.value == n,
                "rank pattern": pattern and prof.maximality.rank_pattern,
                "lambda = trace = loops": cp == want_cp and lam == q.loop_count,
                "loops at >= 2 vertices": looped >= 2,
                "strongly connected": is_strongly_connected(q),
            }
            bad += [f"n={n} {k}" for k, v in checks.items() if not v]
    ok = not bad and t.elapsed < 5
    record(2, ok, f"phimax n=3..8 in {t.elapsed:.2f}s" + (f"; failed: {bad}" if bad else ""))
    assert not bad
    assert t.elapsed < 5


# -- 3. dual-path agreement --------------------------------------------------------

def test_criterion_3_dual_paths(corpus):
    mism = {"nilpotency": 0, "transpose": 0, "heart": 0, "oracle": 0}
    with Timer() as t:
        for q in corpus:
            pd = phidim(q)
            if not heart_member(q).member and q.n >= 2 and not is_selfinjective(q):
                if pd != linalg.nilpotency_index(syzygy_matrix(q).matrix) + 1:
                    mism["nilpotency"] += 1
            if pd != phidim(opposite(q)):
                mism["transpose"] += 1
            if heart_by_support(q) != heart_by_cycles(q):
                mism["heart"] += 1
            if not run_oracle(q, cap=12).ok:
                mism["oracle"] += 1
    total = sum(mism.values())
    ok = total == 0 and t.elapsed < 60
    record(3, ok, f"{len(corpus)} quivers, mismatches {mism}, {t.elapsed:.1f}s")
    assert total == 0
    assert t.elapsed < 60


# -- 4. inequality suite -------------------------------------------------------------

def test_criterion_4_inequalities(corpus):
    violations = []
    for idx, q in enumerate(corpus):
        n = q.n
        p = analyze(q)
        member = bool(p.heart_member.member)
        conds = {
            "findim <= phidim <= psidim hi": p.findim <= p.phidim <= p.psidim.hi,
            "phidim <= phi(A0) + 1": p.phidim <= p.phi_A0 + 1,
            "phi(A0) <= n - 1": p.phi_A0 <= n - 1,
            "phidim <= n": p.phidim <= n,
        }
        if member:
            conds["member: phidim <= n - 1"] = p.phidim <= n - 1
        if linalg.is_symmetric(q.matrix()):
            conds["symmetric: phidim <= 2"] = p.phidim <= 2
            if not p.selfinjective:
                det = linalg.det(q.matrix())
                conds["symmetric det split"] = (p.phidim == 2) == (det == 0) and (p.phidim == 1) == (det != 0)
        if not member:
            cls = classify_low_phidim(q)
            conds["trichotomy"] = {0: p.phidim == 0, 1: p.phidim == 1, 2: p.phidim == 2,
                                   "above": p.phidim > 2}[cls]
        violations += [(idx, k) for k, v in conds.items() if not v]
    record(4, not violations, f"{len(corpus)} quivers, {len(violations)} violations")
    assert not violations


# -- 5. equitable transfer -------------------------------------------------------------

def test_criterion_5_equitable_transfer(corpus):
    violations = []
    count = 0
    with Timer() as t:
        for idx, q in enumerate(corpus):
            if q.n > 6 or heart_member(q).member:
                continue
            q_max = is_phi_maximal(q)
            all_quotients_max = True
            for part in enumerate_equitable(q):
                count += 1
                rep = verify_transfer(q, part)
                if not rep.ok:
                    violations.append((idx, part.blocks))
                quot_max = is_phi_maximal(quotient(q, part).quotient)
                all_quotients_max &= quot_max
                if q_max and not quot_max:
                    violations.append((idx, part.blocks, "maximality not inherited"))
            if all_quotients_max != q_max:
                violations.append((idx, "converse through the trivial partition"))
    ok = not violations and t.elapsed < 120
    record(5, ok, f"{count} equitable partitions checked, {len(violations)} violations, {t.elapsed:.1f}s")
    assert not violations
    assert t.elapsed < 120


# -- 6. witnesses --------------------------------------------------------------------------

def _maximal_fixtures(fx):
    return {k: q for k, q in fx.items() if is_phi_maximal(q) and not is_selfinjective(q)}


def test_criterion_6_witnesses(corpus, fixture_quivers):
    bad = []
    for idx, q in enumerate(corpus):
        if not is_selfinjective(q) and build_witness(q).achieved_phi != phidim(q):
            bad.append((idx, "build_witness"))
    maximal = _maximal_fixtures(fixture_quivers)
    for name, q in maximal.items():
        w = minimal_witness(q)
        if len(w.module) != 2 or phi(q, w.module).phi != phidim(q):
            bad.append((name, "minimal_witness"))
        g = gamma_graph(q, FormalModule.of_simples(q, classify_simples(q).sd))
        if not g.is_connected():
            bad.append((name, "Gamma(S_D) connected"))
    record(6, not bad, f"witness on every non-selfinjective quiver, minimal witness and connected "
                       f"Gamma(S_D) on {len(maximal)} maximal fixtures" + (f"; failed: {bad}" if bad else ""))
    assert not bad


def _gamma_graphs(corpus):
    for q in corpus:
        for m in (FormalModule.of_simples(q, classify_simples(q).sd), FormalModule.of_simples(q, range(q.n))):
            yield q, m, gamma_graph(q, m)


def test_criterion_6_gamma_structure(corpus):
    """Finite-pd summands are joined to everything; the rest form disjoint cliques."""
    bad = sum(not gamma_structure_ok(q, m, g) for q, m, g in _gamma_graphs(corpus))
    record(6, bad == 0, f"Gamma shape (finite-pd summands universal, others in cliques): {bad} violations")
    assert bad == 0


@pytest.mark.xfail(strict=True, reason="summands of finite projective dimension are joined to every "
                                       "other summand, so a component need not be complete")
def test_criterion_6_gamma_components_complete(corpus):
    graphs = list(_gamma_graphs(corpus))
    bad = [g for _, _, g in graphs if not g.components_complete()]
    record(6, not bad, f"every Gamma component complete: {len(bad)} of {len(graphs)} graphs have an "
                       f"incomplete component (e.g. member_chains, S9 joined to S3 and S4)")
    assert not bad


# -- 7. no-sink property and the midk family ----------------------------------------------

def test_criterion_7_no_sink_and_midk(corpus):
    bad = []
    for idx, q in enumerate(corpus):
        if not sinks(q):
            p = psidim(q)
            if findim(q) != 0 or not p.exact or p.value != phidim(q):
                bad.append(idx)
    for n in range(1, 9):
        for k in range(n + 1):
            if phidim(midk(n, k)) != k:
                bad.append(("midk", n, k))
    record(7, not bad, f"no-sink quivers and midk n<=8, 0<=k<=n" + (f"; failed: {bad}" if bad else ""))
    assert not bad
