import io
import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cigmine.temporal import (DEFAULT_ATTR, DataSet, ParseError, TemporalEdge, TemporalNetwork,
                              ValidationError, merge_contacts, parse_edge_list, parse_sociopatterns,
                              serialize_edge_list, split_by_window)

from helpers import random_network


def test_empty_stream():
    net = parse_edge_list(io.StringIO(""))
    assert len(net.edges) == 0
    assert net.vertices == frozenset()


def test_single_line_maps_fields():
    net = parse_edge_list(io.StringIO("A B ward nurse ward 0.0 2.0\n"))
    (e,) = net.edges
    assert (e.u, e.v, e.attr_u, e.attr_e, e.attr_v, e.start, e.duration) == \
        ("A", "B", "ward", "nurse", "ward", 0.0, 2.0)
    assert net.vertices == {"A", "B"}


def test_comments_and_blank_lines_anywhere():
    text = "# header\n\nA B x c y 1 2\n   \n# mid\nB C x c y 0 1\n"
    net = parse_edge_list(io.StringIO(text))
    assert [e.start for e in net.edges] == [0, 1]


def test_shuffled_lines_are_sorted_stably():
    rng = random.Random(7)
    lines = []
    for k in range(100):
        u, v = rng.sample("ABCDEFG", 2)
        lines.append((f"{u} {v} a{k} e a{k} {rng.randint(0, 20)} {rng.randint(0, 5)}", k))
    rng.shuffle(lines)
    net = parse_edge_list(io.StringIO("\n".join(t for t, _ in lines)))
    # reference: sort the raw records by start with Python's stable sort
    ref = sorted(((float(t.split()[5]), t.split()[2]) for t, _ in lines), key=lambda r: r[0])
    assert [(e.start, e.attr_u) for e in net.edges] == ref


@pytest.mark.parametrize("line, lineno", [
    ("A B x c y 0", 1),
    ("A B x c y 0 1 9", 1),
    ("A B x c y zero 1", 1),
    ("A B x c y 0 nan", 1),
])
def test_malformed_lines_carry_line_number(line, lineno):
    with pytest.raises(ParseError) as info:
        parse_edge_list(io.StringIO(line))
    assert info.value.lineno == lineno


def test_error_line_number_counts_comments():
    with pytest.raises(ParseError, match="line 3"):
        parse_edge_list(io.StringIO("# c\nA B x c y 0 1\nA B x c y 0\n"))


def test_negative_duration_rejected():
    with pytest.raises(ValidationError, match="negative duration"):
        parse_edge_list(io.StringIO("A B x c y 0 -1\n"))


def test_self_loop_rejected():
    with pytest.raises(ValidationError, match="self-interaction"):
        parse_edge_list(io.StringIO("A A x c y 0 1\n"))


def test_endpoint_normalization_keeps_attributes_paired():
    e = TemporalEdge("B", "A", "patient", "c", "nurse", 0, 1)
    assert (e.u, e.attr_u, e.v, e.attr_v) == ("A", "nurse", "B", "patient")


_tok = st.text(alphabet="abcXYZ019_-.", min_size=1, max_size=4).filter(lambda t: not t.startswith("#"))
_time = st.one_of(st.integers(-1000, 1000).map(float),
                  st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False))


@st.composite
def _edges(draw):
    n = draw(st.integers(0, 12))
    out = []
    for _ in range(n):
        u, v = draw(st.lists(_tok, min_size=2, max_size=2, unique=True))
        out.append(TemporalEdge(u, v, draw(_tok), draw(_tok), draw(_tok), draw(_time),
                                abs(draw(_time))))
    return out


@settings(max_examples=150, deadline=None)
@given(_edges())
def test_parse_serialize_roundtrip(edges):
    net = TemporalNetwork.from_edges(edges)
    buf = io.StringIO()
    serialize_edge_list(net, buf)
    back = parse_edge_list(io.StringIO(buf.getvalue()))
    assert back.edges == net.edges
    buf2 = io.StringIO()
    serialize_edge_list(back, buf2)
    assert buf2.getvalue() == buf.getvalue()


def test_merge_consecutive_contacts():
    net = merge_contacts([(20, "A", "B", "x", "x"), (40, "A", "B", "x", "x"), (60, "A", "B", "x", "x")], 20)
    assert [(e.start, e.duration) for e in net.edges] == [(0, 60)]


def test_merge_gap_breaks_run():
    net = merge_contacts([(20, "A", "B", "x", "x"), (80, "A", "B", "x", "x")], 20)
    assert [(e.start, e.duration) for e in net.edges] == [(0, 20), (60, 20)]


def test_merge_pair_order_and_duplicates():
    contacts = [(20, "B", "A", "y", "x"), (40, "A", "B", "x", "y"), (40, "A", "B", "x", "y")]
    net = merge_contacts(contacts, 20)
    assert [(e.u, e.v, e.attr_u, e.attr_v, e.start, e.duration) for e in net.edges] == \
        [("A", "B", "x", "y", 0, 40)]


def test_merge_rejects_bad_resolution():
    with pytest.raises(ValidationError):
        merge_contacts([], 0)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 40), st.sampled_from(["A", "B", "C"]),
                          st.sampled_from(["A", "B", "C"]), st.sampled_from("xy")), max_size=60))
def test_merge_never_overlaps_same_pair(recs):
    contacts = [(t * 20.0, i, j, a, a) for t, i, j, a in recs if i != j]
    net = merge_contacts(contacts, 20)
    by_pair = {}
    for e in net.edges:
        by_pair.setdefault((e.u, e.v, e.attr_u, e.attr_v), []).append(e)
    for es in by_pair.values():
        es.sort(key=lambda e: e.start)
        for a, b in zip(es, es[1:]):
            assert a.end < b.start
    # every contact step is covered exactly once
    steps = {(t, min(i, j), max(i, j), a) for t, i, j, a, _ in contacts}
    covered = sum(round(e.duration / 20) for e in net.edges)
    assert covered == len(steps)


def test_parse_sociopatterns_default_attribute():
    recs = parse_sociopatterns(io.StringIO("20 1 2\n40 1 3 NUR PAT\n"))
    assert recs == [(20.0, "1", "2", DEFAULT_ATTR, DEFAULT_ATTR), (40.0, "1", "3", "NUR", "PAT")]
    with pytest.raises(ParseError):
        parse_sociopatterns(io.StringIO("20 1\n"))


def _net(*starts):
    return TemporalNetwork.from_edges(
        [TemporalEdge("A", "B", "x", "c", "y", s, 1) for s in starts], "n")


def test_split_single_window():
    ds, dropped = split_by_window(_net(3), [0, 10])
    assert len(ds) == 1 and len(ds[0]) == 1 and dropped == 0


def test_split_two_windows_rebased():
    ds, dropped = split_by_window(_net(1, 25), [0, 24, 48])
    assert [len(n) for n in ds] == [1, 1]
    assert ds[1].edges[0].start == 1
    assert dropped == 0


def test_split_drops_outside_with_warning(caplog):
    ds, dropped = split_by_window(_net(-5, 1, 50), [0, 24, 48])
    assert dropped == 2
    assert "dropped" in caplog.text


def test_split_rejects_non_increasing():
    with pytest.raises(ValidationError):
        split_by_window(_net(1), [0, 0, 3])


def test_split_preserves_multiset():
    rng = random.Random(3)
    for _ in range(50):
        net = random_network(rng, max_edges=20, t_max=30)
        bounds = sorted(rng.sample(range(-5, 40), 4))
        ds, dropped = split_by_window(net, bounds)
        got = Counter()
        for k, sub in enumerate(ds):
            for e in sub.edges:
                got[e.shifted(bounds[k])] += 1
        kept = Counter(e for e in net.edges if bounds[0] <= e.start < bounds[-1])
        assert got == kept
        assert sum(got.values()) + dropped == len(net)


def test_dataset_names_unique():
    with pytest.raises(ValidationError):
        DataSet((_net(1), _net(2)))
