import itertools

import pytest

from selfverify.automata import equivalent, minimize
from selfverify.numeration import TrackSystemSpec, adder, base, lt_relation, zeckendorf
from selfverify.query import (
    CompileStats,
    ConjunctiveQuery,
    compile_query,
    conjoin,
    exists_compile,
    witness,
)


def sum_query(ns):
    """x + y = z with x < y, over tracks (x, y, z)."""
    spec = TrackSystemSpec.uniform(ns, 3)
    return ConjunctiveQuery(spec).where(adder(ns), 0, 1, 2).where(lt_relation(ns), 0, 1)


@pytest.mark.parametrize("ns", [base(2), zeckendorf()], ids=lambda s: s.name)
def test_compiled_query_semantics(ns):
    q = sum_query(ns)
    A = compile_query(q)
    for x, y in itertools.product(range(20), repeat=2):
        assert A.accepts(q.spec.encode((x, y, x + y))) == (x < y)
        assert not A.accepts(q.spec.encode((x, y, x + y + 1)))


def test_negated_literal():
    ns = base(2)
    spec = TrackSystemSpec.uniform(ns, 2)
    q = ConjunctiveQuery(spec).where(lt_relation(ns), 0, 1, negated=True)
    A = compile_query(q)
    for a, b in itertools.product(range(16), repeat=2):
        assert A.accepts(spec.encode((a, b))) == (a >= b)


def test_where_checks_wiring():
    ns = base(2)
    q = ConjunctiveQuery(TrackSystemSpec.uniform(ns, 2))
    with pytest.raises(ValueError):
        q.where(lt_relation(ns), 0, 0)


def test_witness_is_least():
    q = sum_query(base(2))
    w = witness(q)
    # the length-lex least word: x=0, y=1, z=1 reads as the single letter (0,1,1)
    assert w.values == (0, 1, 1)
    assert len(w.word) == 1


def test_unsatisfiable_query_has_no_witness():
    ns = base(2)
    spec = TrackSystemSpec.uniform(ns, 2)
    q = (ConjunctiveQuery(spec).where(lt_relation(ns), 0, 1).where(lt_relation(ns), 1, 0))
    assert witness(q) is None


def test_exists_compile_projects():
    # exists y: x + y = z and x < y  <=>  z > 2x
    ns = base(2)
    q = sum_query(ns)
    res = exists_compile(q, [1])
    spec2 = TrackSystemSpec.uniform(ns, 2)
    for x, z in itertools.product(range(30), repeat=2):
        assert res.dfa.accepts(spec2.encode((x, z))) == (z > 2 * x)
    assert res.stats.peak_states >= res.dfa.n_states
    with pytest.raises(ValueError):
        exists_compile(q, [])
    with pytest.raises(ValueError):
        exists_compile(q, [0, 1, 2])


def test_exists_compile_handles_long_witnesses():
    # exists y: x + y = z with y = 2^k larger than both x and z is impossible,
    # but for z >= x a y always exists, even when y needs the leading positions
    ns = base(2)
    spec = TrackSystemSpec.uniform(ns, 3)
    q = ConjunctiveQuery(spec).where(adder(ns), 0, 1, 2)
    res = exists_compile(q, [1])
    spec2 = TrackSystemSpec.uniform(ns, 2)
    for x, z in itertools.product(range(20), repeat=2):
        assert res.dfa.accepts(spec2.encode((x, z))) == (z >= x)


def test_conjoin_records_stats():
    q = sum_query(zeckendorf())
    stats = CompileStats()
    A = conjoin(q.automata(), threshold=2, stats=stats)
    assert stats.peak_states >= A.n_states
    assert equivalent(A, minimize(compile_query(q))) is None
