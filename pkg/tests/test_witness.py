import pytest

from itq.generators import cycle, line, loopline, phimax, random_corpus
from itq.quiver import classify_simples, sources
from itq.syzygy import FormalModule, findim, is_selfinjective, pd_summand, phi, phidim, psi
from itq.witness import (
    WitnessError,
    build_M_S,
    build_witness,
    gamma_graph,
    gamma_structure_ok,
    indecomposable_witness,
    is_phi_maximal,
    kernel_audit,
    minimal_witness,
)


def test_M_S_at_sink_of_loopline():
    q = loopline(4)
    m = build_M_S(q, 3)
    (s,) = m.summands
    assert s.first_syzygy == (0, 0, 0, 1)
    assert s.simple_at == 2  # vertex 3 has a single arrow, so P_3/S_4 = S_3
    assert pd_summand(q, s) == 1


def test_M_S_non_simple_when_cover_has_more_arrows():
    q = loopline(3)
    (s,) = build_M_S(q, 0).summands  # predecessor of 1 is 1 itself, which has two arrows
    assert s.simple_at is None and s.cover == 0 and s.name == "M_S1"


@pytest.mark.parametrize("n", range(1, 6))
def test_M_S_over_cycle_is_simple(n):
    q = cycle(n)
    for v in range(n):
        (s,) = build_M_S(q, v).summands
        assert s.simple_at == (v - 1) % n


def test_M_S_source_rejected():
    with pytest.raises(WitnessError, match="source"):
        build_M_S(line(3), 0)


def test_witness_A3():
    w = build_witness(line(3))
    assert w.achieved_phi == 2 == phidim(line(3))


def test_witness_loopline():
    w = build_witness(loopline(4))
    assert w.achieved_phi == 3


def test_witness_kernel_chain(fixture_quivers):
    q = fixture_quivers["kernel_chain"]
    assert build_witness(q).achieved_phi == 2
    (audit,) = kernel_audit(q)
    assert audit.positive == (1, 2) and audit.negative == (3,)
    assert not audit.single_cover


def test_witness_selfinjective_rejected():
    with pytest.raises(WitnessError, match="selfinjective"):
        build_witness(cycle(3))


def test_witness_reaches_phidim_on_random():
    for q in random_corpus(31, 300):
        if not is_selfinjective(q):
            w = build_witness(q)
            assert phi(q, w.module).phi == phidim(q)


def test_gamma_single_summand():
    q = line(3)
    g = gamma_graph(q, FormalModule.of_simples(q, [0]))
    assert g.vertices == ("S1",) and not g.edges


def test_gamma_A4_simples_are_joined():
    # every simple over A4 has finite pd, so the pair S1 + S3 loses rank at step 1
    q = line(4)
    m = FormalModule.of_simples(q, [0, 2])
    assert phi(q, m).rank_trace[:2] == (2, 1)
    assert gamma_graph(q, m).edges == {frozenset({"S1", "S3"})}


def test_gamma_disjoint_cycles_have_no_edges():
    from itq.quiver import Quiver
    # two loops joined by one arrow: S1 and S2 keep independent classes forever
    q = Quiver(((1, 1), (0, 1)))
    g = gamma_graph(q, FormalModule.of_simples(q, [0, 1]))
    assert phi(q, FormalModule.of_simples(q, [0, 1])).phi == 0
    assert not g.edges


def test_gamma_connected_for_maximal(fixture_quivers):
    for name, q in fixture_quivers.items():
        if is_phi_maximal(q) and not is_selfinjective(q):
            g = gamma_graph(q, FormalModule.of_simples(q, classify_simples(q).sd))
            assert g.is_connected(), name


def test_gamma_structure_on_random():
    for q in random_corpus(32, 300):
        for m in (FormalModule.of_simples(q, classify_simples(q).sd),
                  FormalModule.of_simples(q, range(q.n))):
            assert gamma_structure_ok(q, m)


def test_gamma_finite_pd_summand_joins_everything(fixture_quivers):
    # S9 has finite projective dimension, so it is adjacent to S3 and S4,
    # which are not adjacent to each other: that component is not complete
    q = fixture_quivers["member_chains"]
    g = gamma_graph(q, FormalModule.of_simples(q, classify_simples(q).sd))
    assert frozenset({"S3", "S9"}) in g.edges and frozenset({"S4", "S9"}) in g.edges
    assert frozenset({"S3", "S4"}) not in g.edges
    assert not g.components_complete()
    assert gamma_structure_ok(q, FormalModule.of_simples(q, classify_simples(q).sd), g)


@pytest.mark.parametrize("q", [loopline(4), phimax(3, 2), phimax(5, 4), line(2), line(5)],
                         ids=["loopline4", "phimax3", "phimax5", "A2", "A5"])
def test_minimal_witness(q):
    w = minimal_witness(q)
    assert len(w.module) == 2
    assert w.achieved_phi == phidim(q) == phi(q, w.module).phi
    assert w.minimal


def test_minimal_witness_rejects_non_maximal(fixture_quivers):
    with pytest.raises(WitnessError, match="not phi-maximal"):
        minimal_witness(fixture_quivers["looped_square"])


def test_indecomposable_witness_when_findim_equals_phidim():
    for q in random_corpus(33, 300):
        iw = indecomposable_witness(q)
        if findim(q) == phidim(q) and phidim(q) > 0:
            assert iw is not None and len(iw.module) == 1 and iw.achieved_phi == phidim(q)
        if iw is not None:
            assert findim(q) == phidim(q)


def test_phi_shift_on_witness():
    # when Omega-bar^k keeps the lattice rank dropping strictly at step k,
    # phi(M) = phi(Omega^k M) + k
    for q in random_corpus(34, 200):
        if is_selfinjective(q):
            continue
        m = build_witness(q).module
        r = phi(q, m)
        if r.phi >= 2:
            from itq.syzygy import syzygy_power
            top = syzygy_power(q, m, 1)
            shifted = FormalModule.of_semisimple(q, top)
            trace = r.rank_trace
            if trace[1] == len(shifted.basic()):
                assert phi(q, shifted).phi == r.phi - 1
