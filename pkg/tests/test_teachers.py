import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from selfverify.automata import CompleteDfa, TupleAlphabet, complement, embed, intersect_all, product, trim
from selfverify.lstar import BudgetExceeded, learn_from
from selfverify.numeration import TrackSystemSpec, base, const_automaton, lt_relation, zeckendorf
from selfverify.query import ConjunctiveQuery, compile_query, exists_compile
from selfverify.sequences import builtin
from selfverify.teachers import AdderTeacher, EqFacTeacher, EqRevFacTeacher, PeriodTeacher
from selfverify.teachers.partial_sum import PartialSumTeacher, SynchronizedSequence, synchronized

TM = oracles.prefix("thue-morse")


def universal(teacher, accept=True):
    return CompleteDfa.universal(teacher.alphabet, accept)


# -- membership -----------------------------------------------------------------------

def test_eqfac_membership_examples():
    t = EqFacTeacher(builtin("thue-morse"))
    assert t.member_values(0, 3, 2)
    assert not t.member_values(0, 1, 1)
    assert all(t.member_values(i, j, 0) for i in range(10) for j in range(10))
    # the empty word encodes (0, 0, 0)
    assert t.member(())


def test_eqfac_symmetry():
    t = EqFacTeacher(builtin("fibonacci-word"))
    for i, j, n in itertools.product(range(12), repeat=3):
        assert t.member_values(i, j, n) == t.member_values(j, i, n)


def test_eqfac_two_sequences():
    X, Y = builtin("thue-morse"), builtin("baum-sweet")
    t = EqFacTeacher(X, Y)
    bs = oracles.prefix("baum-sweet")
    for i, j, n in itertools.product(range(10), repeat=3):
        assert t.member_values(i, j, n) == (TM[i:i + n] == bs[j:j + n])
    with pytest.raises(ValueError):
        EqFacTeacher(X, builtin("fibonacci-word"))


def test_eqrevfac_membership_and_palindromes():
    t = EqRevFacTeacher(builtin("thue-morse"))
    assert t.member_values(1, 0, 3)
    for i, n in itertools.product(range(33), repeat=2):
        w = TM[i:i + n]
        assert t.member_values(i, i, n) == (w == w[::-1])


def test_period_membership():
    t = PeriodTeacher(builtin("thue-morse"))
    assert t.member_values(0, 4, 0)
    assert not t.member_values(0, 4, 2)
    for i, n in itertools.product(range(10), repeat=2):
        assert t.member_values(i, n, n)
        assert t.member_values(i, n, n + 3)


def test_period_monotone():
    t = PeriodTeacher(builtin("thue-morse"))
    for i, n, p in itertools.product(range(33), range(2, 33), range(1, 33)):
        if p <= n - 1 and t.member_values(i, n, p):
            assert t.member_values(i, n - 1, p)


def test_adder_membership():
    t = AdderTeacher(zeckendorf())
    assert t.member_values(3, 5, 8)
    assert not t.member_values(3, 5, 9)
    assert t.member(())


def test_invalid_words_are_rejected():
    t = EqFacTeacher(builtin("fibonacci-word"))
    al = t.alphabet
    # the i-track reads 11, invalid in Zeckendorf
    w = (al.letter((1, 0, 0)), al.letter((1, 0, 0)))
    assert not t.member(w)


@pytest.mark.parametrize("cls,name", [(EqFacTeacher, "thue-morse"), (EqFacTeacher, "fibonacci-word"),
                                      (EqRevFacTeacher, "thue-morse"), (PeriodTeacher, "thue-morse")])
def test_intersection_method_matches_direct(cls, name):
    direct = cls(builtin(name))
    forced = cls(builtin(name), threshold=0)
    rng = random.Random(7)
    for _ in range(60):
        vals = tuple(rng.randrange(25) for _ in range(3))
        assert forced.member_values(*vals) == direct.member_values(*vals), vals


# -- verification ---------------------------------------------------------------------

def test_accept_all_rejected_with_confirmed_counterexample():
    t = EqFacTeacher(builtin("thue-morse"))
    A = universal(t)
    v = t.diagnose(A)
    assert not v.correct
    # accept-all violates the mismatch check; (0,1,1) is the expected witness
    assert v.values == (0, 1, 1)
    assert A.accepts(v.counterexample) != t.member(v.counterexample)


def test_reject_all_fails_base_case():
    t = EqFacTeacher(builtin("thue-morse"))
    v = t.diagnose(universal(t, accept=False))
    assert v.check.startswith("base")
    assert v.values[2] == 0


def test_validity_check_comes_first():
    t = EqFacTeacher(builtin("fibonacci-word"))
    v = t.diagnose(universal(t))
    assert v.check == "validity"
    assert t.spec.decode(v.counterexample) is None


def test_leading_zero_check():
    t = AdderTeacher(base(2))
    al = t.alphabet
    # accepts exactly the empty word: correct at (0,0,0) but not closed under leading zeros
    A = CompleteDfa(al, np.array([[1] * al.size, [1] * al.size]), np.array([True, False]))
    v = t.diagnose(A)
    assert v.check == "leading-zeros"
    assert A.accepts(v.counterexample) != t.member(v.counterexample)


def test_wrong_alphabet_raises():
    t = EqFacTeacher(builtin("thue-morse"))
    with pytest.raises(ValueError):
        t.verify(CompleteDfa.universal(TupleAlphabet((2, 2))))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 5), st.data())
def test_random_hypotheses_get_genuine_counterexamples(n, data):
    t = PeriodTeacher(builtin("thue-morse"))
    al = t.alphabet
    delta = np.array(data.draw(st.lists(st.lists(st.integers(0, n - 1), min_size=al.size,
                                                  max_size=al.size), min_size=n, max_size=n)))
    acc = np.array(data.draw(st.lists(st.booleans(), min_size=n, max_size=n)))
    A = CompleteDfa(al, delta, acc)
    w = t.verify(A)
    assert w is not None
    assert A.accepts(w) != t.member(w)


def test_adder_extra_check_catches_z_zero_gap(learned):
    # accepting also every (x, 0, z) with z < x is consistent with the base case
    # and both induction steps; only the dedicated z = 0 check sees it
    dfa, _, t = learned("adder", "base2")
    ns = base(2)
    spec = t.spec
    y0 = const_automaton(spec, 1, 0)
    extra = compile_query(ConjunctiveQuery(spec).where(lt_relation(ns), 2, 0))
    bad = product(dfa, product(extra, y0, "and"), "or")
    v = t.diagnose(bad)
    assert v.check == "not A[x,y,0] for x>0"
    assert bad.accepts(v.counterexample) != t.member(v.counterexample)
    t._checks = [c for c in t.checks if c.name != v.check]
    assert t.diagnose(bad).correct


def test_learned_automata_verify(learned):
    for pred, name in [("eqfac", "thue-morse"), ("period", "thue-morse"), ("adder", "base2")]:
        dfa, _, t = learned(pred, name)
        assert t.verify(dfa) is None
        assert t.last_check is None


def test_learned_eqfac_thue_morse(learned):
    dfa, stats, _ = learned("eqfac", "thue-morse")
    assert dfa.n_states == 15
    assert trim(dfa).n_states == 14


# -- partial sums -----------------------------------------------------------------------

def test_partial_sum_membership_examples():
    t = PartialSumTeacher(synchronized("thue-morse"))
    assert t.member_values(0, 0)
    assert not t.member_values(0, 3)
    assert t.member_values(4, 2)
    r = PartialSumTeacher(synchronized("rarefied-thue-morse"))
    assert r.member_values(1, 1)
    assert r.spec.alphabet.radices == (4, 3)


@pytest.mark.parametrize("name", ["thue-morse", "fibonacci-word", "tribonacci-word",
                                  "rarefied-thue-morse"])
def test_prefix_sum_path_matches_cumsum(name):
    b = synchronized(name)
    ref = {"rarefied-thue-morse": oracles.rarefied}.get(name) or oracles.SEQUENCES[name]
    sums = oracles.partial_sums(ref(600))
    direct = PartialSumTeacher(b)
    forced = PartialSumTeacher(b, threshold=0)
    for n in range(0, 600, 7):
        assert direct.c(n) == sums[n]
        assert forced.c(n) == sums[n]


def test_partial_sum_gap_check(learned):
    # C' = {(n, x): x <= c(n)} satisfies the base case and both induction steps;
    # only the check on z < b(n) rejects it
    C, _, t = learned("partial-sum", "thue-morse")
    ns = base(2)
    spec3 = TrackSystemSpec.uniform(ns, 3)
    q = ConjunctiveQuery(spec3).where(C, 0, 2).where(lt_relation(ns), 2, 1, negated=True)
    bad = exists_compile(q, [2]).dfa
    v = t.diagnose(bad)
    assert v.check == "step: C[n+1,z] for z<b(n)"
    assert bad.accepts(v.counterexample) != t.member(v.counterexample)
    t._checks = [c for c in t.checks if c.name != v.check]
    assert t.diagnose(bad).correct


def test_non_synchronized_target_exhausts_budget():
    # b(n) = 1 iff n+1 is a power of two; its partial sums grow like log n
    ns = base(2)
    spec = TrackSystemSpec.uniform(ns, 2)
    # binary 0*1*, i.e. n = 2^k - 1
    ones = CompleteDfa.from_function(TupleAlphabet((2,)), 3,
                                     lambda q, d: {0: 0 if d[0] == 0 else 1, 1: 1 if d[0] else 2,
                                                   2: 2}[q], lambda q: q < 2)
    hit = intersect_all([embed(ones, [0], spec.alphabet), const_automaton(spec, 1, 1)])
    miss = intersect_all([embed(complement(ones), [0], spec.alphabet), const_automaton(spec, 1, 0)])
    B = product(hit, miss, "or")
    b = SynchronizedSequence("p2", spec, B)
    assert [b[n] for n in range(8)] == [1, 1, 0, 1, 0, 0, 0, 1]
    with pytest.raises(BudgetExceeded):
        learn_from(PartialSumTeacher(b), max_states=25)
