import pytest

from itq.generators import cycle, line, phimax, random_corpus
from itq.oracle import (
    CAP_ENV,
    DEFAULT_CAP,
    CapExceeded,
    fraction_rank,
    literal_findim,
    literal_phi,
    resolution_length,
    resolve_cap,
    run_oracle,
)


def test_fraction_rank():
    assert fraction_rank([[1, 2], [2, 4]]) == 1
    assert fraction_rank([[0, 0]]) == 0
    assert fraction_rank([[1, 0], [0, 1], [1, 1]]) == 2


def test_resolution_length():
    q = line(3)
    assert resolution_length(q, (1, 0, 0)) == 2
    assert resolution_length(q, (0, 0, 1)) == 0
    assert resolution_length(cycle(3), (1, 0, 0)) is None


def test_literal_findim():
    assert literal_findim(line(3)) == 2
    assert literal_findim(cycle(4)) == 0


def test_literal_phi_kernel_chain(fixture_quivers):
    q = fixture_quivers["kernel_chain"]
    assert literal_phi(q, [(tuple(q.arrows[v]), v) for v in range(4)]) == 1


def test_fixtures_pass(fixture_quivers):
    for name, q in fixture_quivers.items():
        rep = run_oracle(q, cap=12)
        assert rep.ok, (name, rep.mismatches)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_phimax_passes(n):
    rep = run_oracle(phimax(n, n - 1))
    assert rep.ok
    assert dict((k, a) for k, a, _ in rep.comparisons)["phidim"] == n


def test_seeded_batch():
    assert all(run_oracle(q).ok for q in random_corpus(51, 200))


def test_cap(monkeypatch):
    monkeypatch.delenv(CAP_ENV, raising=False)
    assert resolve_cap() == DEFAULT_CAP
    monkeypatch.setenv(CAP_ENV, "3")
    assert resolve_cap() == 3
    assert resolve_cap(5) == 5
    with pytest.raises(CapExceeded):
        run_oracle(line(4))
    monkeypatch.setenv(CAP_ENV, "x")
    with pytest.raises(ValueError):
        resolve_cap()
