import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from selfverify.automata import TupleAlphabet, is_empty
from selfverify.numeration import (
    InvalidRepresentation,
    TrackSystemSpec,
    UnsupportedSystem,
    adder,
    base,
    base_k_adder,
    by_name,
    const_automaton,
    eq_relation,
    from_config,
    incr_relation,
    lt_relation,
    tribonacci,
    tuple_encode,
    zeckendorf,
)

SYSTEMS = [base(2), base(3), zeckendorf(), tribonacci()]


def test_zeckendorf_examples():
    z = zeckendorf()
    assert z.encode(0) == []
    assert z.encode(4) == [1, 0, 1]
    assert z.encode(5) == [1, 0, 0, 0]
    assert z.decode([1, 0, 1, 0]) == 7
    with pytest.raises(InvalidRepresentation):
        z.decode([1, 1])


def test_tribonacci_examples():
    t = tribonacci()
    assert [t.place(i) for i in range(6)] == [1, 2, 4, 7, 13, 24]
    assert t.encode(6) == [1, 1, 0]
    assert not t.is_valid([1, 1, 1])


@pytest.mark.parametrize("ns", SYSTEMS, ids=lambda s: s.name)
def test_encode_decode_roundtrip(ns):
    name = ns.name
    for n in range(300):
        digits = ns.encode(n)
        assert ns.is_valid(digits)
        assert ns.decode(digits) == n
        assert ns.decode([0, 0] + digits) == n
        if digits:
            assert digits[0] != 0
            assert digits == oracles.encode(name, n, len(digits))


@pytest.mark.parametrize("ns", SYSTEMS, ids=lambda s: s.name)
def test_greedy_is_the_unique_valid_word(ns):
    # among all valid words of a fixed length, each value appears exactly once
    L = 6
    seen = {}
    for w in itertools.product(range(ns.radix), repeat=L):
        if ns.is_valid(w):
            v = ns.decode(w)
            assert v not in seen
            seen[v] = w
    assert sorted(seen) == list(range(len(seen)))


def test_by_name_aliases():
    assert by_name("msd_fib") is zeckendorf()
    assert by_name("fib") is zeckendorf()
    assert by_name("msd_trib") is tribonacci()
    assert by_name("msd_2") is base(2)
    assert by_name("base10") is base(10)
    with pytest.raises(UnsupportedSystem):
        by_name("negafib")


def test_backward_places_and_accumulator():
    assert zeckendorf().backward_places() == [1, 1]
    assert tribonacci().backward_places() == [1, 1, 0]
    P, q = zeckendorf().accumulator()
    a = [0, 0]
    for d in [1, 0, 1, 0, 1]:
        a = (a @ P + d * q).tolist()
    assert a[0] == zeckendorf().decode([1, 0, 1, 0, 1])


def test_from_config_roundtrip():
    text = (
        "dfa 1 2 3 0\naccepting 0 1\n0 0 0\n0 1 1\n1 0 0\n1 1 2\n2 0 2\n2 1 2\n"
        "places 1 2\nrecurrence 1 1\nname myfib\n"
    )
    ns = from_config(text)
    assert ns.name == "myfib"
    assert [ns.encode(n) for n in range(6)] == [zeckendorf().encode(n) for n in range(6)]


@pytest.mark.parametrize("ns", SYSTEMS, ids=lambda s: s.name)
def test_relations_match_arithmetic(ns):
    spec = TrackSystemSpec.uniform(ns, 2)
    lt, eq, incr = lt_relation(ns), eq_relation(ns), incr_relation(ns)
    for a in range(40):
        for b in range(40):
            w = spec.encode((a, b))
            assert lt.accepts(w) == (a < b)
            assert eq.accepts(w) == (a == b)
            assert incr.accepts(w) == (b == a + 1)
            # one extra leading zero changes nothing
            w0 = spec.encode((a, b), len(w) + 1)
            assert incr.accepts(w0) == (b == a + 1)


def test_relations_reject_invalid_words():
    z = zeckendorf()
    al = TupleAlphabet((2, 2))
    # x-track "11" is invalid in Zeckendorf
    w = (al.letter((1, 0)), al.letter((1, 1)))
    assert not eq_relation(z).accepts(w)
    assert not lt_relation(z).accepts(w)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_base_k_adder(k):
    ns = base(k)
    spec = TrackSystemSpec.uniform(ns, 3)
    A = base_k_adder(k)
    for x, y in itertools.product(range(30), repeat=2):
        assert A.accepts(spec.encode((x, y, x + y)))
        assert not A.accepts(spec.encode((x, y, x + y + 1)))


def test_spec_examples_base2_adder():
    spec = TrackSystemSpec.uniform(base(2), 3)
    A = adder(base(2))
    assert A.accepts(spec.encode((3, 5, 8)))
    assert not A.accepts(spec.encode((3, 5, 9)))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(0, 3))
def test_const_automaton(n, pad):
    for ns in SYSTEMS:
        spec = TrackSystemSpec([ns])
        c = const_automaton(spec, 0, n)
        enc = ns.encode(n)
        assert c.accepts(tuple([0] * pad + enc))
        if n:
            assert not c.accepts(tuple(ns.encode(n - 1)))


def test_tuple_encode_pads_to_common_length():
    spec = TrackSystemSpec([base(4), base(3)])
    w = tuple_encode(spec, (1, 9))
    assert spec.alphabet.tracks(w) == [[0, 0, 1], [1, 0, 0]]
    assert spec.decode(w) == (1, 9)
    with pytest.raises(ValueError):
        tuple_encode(spec, (1,))


def test_validity_automaton_mixed():
    spec = TrackSystemSpec([zeckendorf(), base(3)])
    val = spec.validity()
    assert not is_empty(val)
    al = spec.alphabet
    assert not val.accepts((al.letter((1, 0)), al.letter((1, 2))))
    assert val.accepts((al.letter((1, 2)), al.letter((0, 2))))
