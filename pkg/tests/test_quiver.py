import pytest

from itq.generators import cycle, line, loopline, phimax, random_corpus
from itq.quiver import (
    ParseError,
    Quiver,
    classify_simples,
    format_quiver,
    heart_by_cycles,
    heart_by_support,
    heart_member,
    is_connected,
    is_strongly_connected,
    member_order_stats,
    opposite,
    parse_quiver,
    reaches_within,
    sinks,
    sources,
    strongly_connected_components,
    subhearts,
)


def labelled(q, vs):
    return {q.label(v) for v in vs}


# -- parsing ---------------------------------------------------------------

def test_parse_arrow_list():
    q = parse_quiver("vertices 3\narrow 1 2\narrow 2 3\n")
    assert q.arrows == ((0, 1, 0), (0, 0, 1), (0, 0, 0))


def test_parse_matrix_block():
    q = parse_quiver("matrix 3\n1 0 2\n1 1 3\n0 1 1\n")
    assert q.matrix() == [[1, 0, 2], [1, 1, 3], [0, 1, 1]]


def test_repeated_arrow_lines_add_up():
    q = parse_quiver("vertices 2\narrow 1 2\narrow 1 2\narrow 2 2")
    assert q.arrows == ((0, 2), (0, 1))


def test_comments_and_labels():
    text = "# a comment\nvertices 2\nlabels a b  # inline\narrow a b\narrow b a\n"
    q = parse_quiver(text)
    assert q.labels == ("a", "b")
    assert q.arrows == ((0, 1), (1, 0))


def test_disconnected_rejected():
    with pytest.raises(ParseError, match="disconnected quiver"):
        parse_quiver("vertices 2")


@pytest.mark.parametrize("text", ["", "# only a comment\n", "vertices 0"])
def test_no_vertices(text):
    with pytest.raises(ParseError, match="no vertices"):
        parse_quiver(text)


@pytest.mark.parametrize("text, line", [
    ("vertices 2\narrow 1 3\n", 2),
    ("vertices 2\narow 1 2\n", 2),
    ("matrix 2\n0 1\n1 x\n", 3),
    ("vertices two\n", 1),
    ("vertices 2\nlabels a\n", 2),
])
def test_syntax_errors_carry_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_quiver(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_matrix_row_count_checked():
    with pytest.raises(ParseError, match="expected 2 matrix rows"):
        parse_quiver("matrix 2\n0 1\n")


@pytest.mark.parametrize("style", ["matrix", "arrows"])
def test_format_round_trip(style):
    for q in random_corpus(3, 40):
        assert parse_quiver(format_quiver(q, style)) == q


def test_format_round_trip_with_labels():
    q = Quiver(((0, 1), (2, 0)), ("x", "y"))
    for style in ("matrix", "arrows"):
        assert parse_quiver(format_quiver(q, style)) == q


def test_quiver_validation():
    with pytest.raises(ValueError):
        Quiver(((0, 1),))
    with pytest.raises(ValueError):
        Quiver(((0, -1), (0, 0)))
    with pytest.raises(ValueError):
        Quiver((), None)


# -- simples ----------------------------------------------------------------

def test_classify_A3():
    c = classify_simples(line(3))
    assert (c.sp, c.si, c.sd) == ({2}, {0}, {1})
    assert c.k == 2


def test_classify_cycle_all_sd():
    c = classify_simples(cycle(4))
    assert not c.sp and not c.si and c.sd == {0, 1, 2, 3}


def test_classify_one_loop():
    c = classify_simples(cycle(1))
    assert c.sd == {0} and not c.sp and not c.si


def test_simple_classification_covers_vertices():
    for q in random_corpus(5, 200):
        c = classify_simples(q)
        assert c.sp == sinks(q) and c.si == sources(q)
        assert not (c.sd & (c.sp | c.si))
        assert c.sd | c.sp | c.si == set(range(q.n))


# -- heart and member ---------------------------------------------------------

def test_heart_member_chains(fixture_quivers):
    q = fixture_quivers["member_chains"]
    hm = heart_member(q)
    assert labelled(q, hm.heart) == {"3", "4", "5", "6", "7", "8"}
    assert labelled(q, hm.member) == {"1", "2", "9", "10"}
    # member quiver is 1 -> 2 and 9 -> 10
    assert hm.member_quiver.arrow_count == 2


def test_heart_of_cycle_is_everything():
    hm = heart_member(cycle(5))
    assert hm.heart == set(range(5)) and not hm.member


def test_heart_of_acyclic_is_empty():
    hm = heart_member(line(3))
    assert not hm.heart and hm.member == {0, 1, 2}
    assert hm.heart_quiver is None


def test_heart_partition_and_cross_check():
    for q in random_corpus(11, 300, max_n=7):
        hm = heart_member(q)
        assert hm.heart | hm.member == set(range(q.n))
        assert not (hm.heart & hm.member)
        assert heart_by_support(q) == heart_by_cycles(q)


def test_member_empty_iff_no_sinks_and_sources():
    for q in random_corpus(12, 300):
        assert (not heart_member(q).member) == (not sinks(q) and not sources(q))


# -- subhearts ----------------------------------------------------------------

def test_subhearts_subhearts6(fixture_quivers):
    q = fixture_quivers["subhearts6"]
    sh = subhearts(q)
    assert [labelled(q, s) for s in sh.final] == [{"0"}, {"4", "5"}]
    assert [labelled(q, s) for s in sh.initial] == [{"1"}]


def test_subhearts_strongly_connected():
    q = phimax(4, 3)
    sh = subhearts(q)
    assert list(sh.final) == [set(range(4))] == list(sh.initial)


def test_subhearts_A3():
    sh = subhearts(line(3))
    assert list(sh.final) == [{2}] and list(sh.initial) == [{0}]


def test_subheart_properties():
    for q in random_corpus(13, 300):
        sh = subhearts(q)
        heart = heart_member(q).heart
        for s in sh.final + sh.initial:
            sub = Quiver(tuple(tuple(q.arrows[i][j] for j in sorted(s)) for i in sorted(s)))
            assert is_connected(sub)
        for s in sh.final:
            assert all(w in s for v in s for w in q.successors[v])
            if any(q.arrows[i][j] for i in s for j in s):
                assert s <= heart
        for v in sinks(q):
            assert frozenset({v}) in sh.final
        assert is_strongly_connected(q) == (list(sh.final) == [set(range(q.n))] == list(sh.initial))


def test_scc_cover():
    for q in random_corpus(14, 100):
        comps = strongly_connected_components(q)
        assert sorted(v for c in comps for v in c) == list(range(q.n))


# -- member order --------------------------------------------------------------

def test_member_order_loopline():
    o = member_order_stats(loopline(4))
    assert o.is_total_order and o.longest_path_to_sink == 2
    assert o.chain == (1, 2, 3)


def test_member_order_cycle():
    o = member_order_stats(cycle(4))
    assert o.is_total_order and o.longest_path_to_sink is None


def test_member_order_member_chains(fixture_quivers):
    o = member_order_stats(fixture_quivers["member_chains"])
    assert not o.is_total_order
    assert o.longest_path_to_sink == 1


def test_member_order_antisymmetric():
    for q in random_corpus(15, 200):
        member = heart_member(q).member
        for a in member:
            for b in member:
                if a != b and reaches_within(q, member, a, b):
                    assert not reaches_within(q, member, b, a)


# -- opposite --------------------------------------------------------------------

def test_opposite():
    assert opposite(line(3)).arrows == ((0, 0, 0), (1, 0, 0), (0, 1, 0))
    sym = Quiver(((0, 1), (1, 1)))
    assert opposite(sym) == sym
    assert opposite(phimax(3, 2)).matrix() == [[1, 1, 0], [0, 1, 1], [2, 3, 1]]
