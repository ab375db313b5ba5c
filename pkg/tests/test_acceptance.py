"""The ten acceptance criteria, each reported as one PASS/FAIL line."""

import random

import numpy as np

import oracles
from selfverify.automata import equivalent, intersect_all, trim
from selfverify.lstar import learn_from
from selfverify.numeration import TrackSystemSpec, adder, by_name, zeckendorf
from selfverify.sequences import builtin
from selfverify.teachers import EqFacTeacher, direct_eqfac
from selfverify.teachers.partial_sum import synchronized

RESULTS: dict[int, tuple[bool, str]] = {}


def report(num: int, ok: bool, detail: str) -> None:
    RESULTS[num] = (ok, detail)
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


def test_c1_thue_morse_eqfac(learned):
    dfa, _, _ = learned("eqfac", "thue-morse")
    n, t = dfa.n_states, trim(dfa).n_states
    report(1, (n, t) == (15, 14), f"eqfac thue-morse: {n} states, {t} trimmed (want 15/14)")


def test_c2_eqfac_other_sequences(learned):
    got = {}
    for name in ["fibonacci-word", "tribonacci-word", "baum-sweet"]:
        dfa, _, _ = learned("eqfac", name)
        got[name] = (dfa.n_states, trim(dfa).n_states)
    ok = (got["fibonacci-word"][0] == 12 and got["tribonacci-word"] == (27, 26)
          and got["baum-sweet"][0] == 130)
    report(2, ok, "; ".join(f"{k} {v[0]}/{v[1]}" for k, v in got.items())
           + " (want 12, 27/26, 130)")


def test_c3_partial_sums(learned):
    want = {"thue-morse": 7, "fibonacci-word": 7, "tribonacci-word": 89, "rarefied-thue-morse": 17}
    got = {name: learned("partial-sum", name)[0].n_states for name in want}
    report(3, got == want, ", ".join(f"{k} {v}" for k, v in got.items()) + f" (want {want})")


# -- criterion 4 ----------------------------------------------------------------------------

SYSTEM_OF = {"thue-morse": "base2", "baum-sweet": "base2", "fibonacci-word": "zeckendorf",
             "tribonacci-word": "tribonacci"}


def _bound(system):
    return oracles.TRIB_BOUND if system == "tribonacci" else oracles.BOUND


def _truncated_case(pred, name):
    if pred in ("eqfac", "eqrevfac", "period"):
        system = SYSTEM_OF[name]
        return [system] * 3, oracles.PREDICATE_ORACLES[pred](oracles.prefix(name))
    if pred == "adder":
        return [name] * 3, oracles.adder
    if name == "rarefied-thue-morse":
        sums = oracles.partial_sums(oracles.rarefied(200))
        systems = ["base4", "base3"]
    else:
        sums = oracles.partial_sums(oracles.SEQUENCES[name](200))
        systems = [SYSTEM_OF[name]] * 2
    return systems, lambda n, x: sums[n] == x


CASES_4 = ([("eqfac", n) for n in SYSTEM_OF]
           + [("eqrevfac", "thue-morse"), ("eqrevfac", "fibonacci-word"),
              ("period", "thue-morse"), ("period", "fibonacci-word"),
              ("adder", "base2"), ("adder", "zeckendorf"), ("adder", "tribonacci")]
           + [("partial-sum", n) for n in ["thue-morse", "fibonacci-word", "tribonacci-word",
                                           "rarefied-thue-morse"]])


def test_c4_oracle_equivalence(learned):
    failures = []
    for pred, name in CASES_4:
        if pred == "adder":
            # non-binary adders come from the registry the other teachers build on
            dfa = learned(pred, name)[0] if name == "base2" else adder(by_name(name))
        else:
            dfa = learned(pred, name)[0]
        systems, predicate = _truncated_case(pred, name)
        bound = min(_bound(s) for s in systems)
        domain, target = oracles.truncated(systems, bound, predicate)
        w = equivalent(intersect_all([dfa, domain]), target)
        if w is not None:
            failures.append(f"{pred}/{name} differs on {w}")
    report(4, not failures, f"{len(CASES_4)} automata checked up to 64 (40 for Tribonacci)"
           + ("" if not failures else ": " + "; ".join(failures)))


# -- criterion 5 ----------------------------------------------------------------------------

def test_c5_zeckendorf_adder(learned):
    z = zeckendorf()
    A = adder(z)
    spec = TrackSystemSpec.uniform(z, 3)
    bad = 0
    for x in range(501):
        for y in range(501):
            s = x + y
            if not A.accepts(spec.encode((x, y, s))):
                bad += 1
            if A.accepts(spec.encode((x, y, s + 1))) or (s and A.accepts(spec.encode((x, y, s - 1)))):
                bad += 1
    teacher = learned.teacher("adder", "zeckendorf")
    verdict = teacher.diagnose(A)
    report(5, bad == 0 and verdict.correct,
           f"{A.n_states}-state adder: {bad} arithmetic mismatches for x,y <= 500, "
           f"verifier says {'correct' if verdict.correct else verdict.check}")


# -- criterion 6 ----------------------------------------------------------------------------

MUTATION_CASES = [("eqfac", "thue-morse"), ("eqrevfac", "thue-morse"), ("period", "thue-morse"),
                  ("adder", "zeckendorf"), ("partial-sum", "thue-morse")]


def test_c6_mutations_detected(learned):
    rng = random.Random(2024)
    lines = []
    ok = True
    for pred, name in MUTATION_CASES:
        if pred == "adder":
            dfa, teacher = adder(by_name(name)), learned.teacher(pred, name)
        else:
            dfa, _, teacher = learned(pred, name)
        verdicts = {}
        detected = 0
        for _ in range(100):
            q = rng.randrange(dfa.n_states)
            if q not in verdicts:
                acc = dfa.accepting.copy()
                acc[q] = not acc[q]
                bad = dfa.with_accepting(acc)
                w = teacher.verify(bad)
                verdicts[q] = w is not None and bad.accepts(w) != teacher.member(w)
            detected += verdicts[q]
        ok &= detected == 100
        lines.append(f"{pred}/{name} {detected}/100")
    report(6, ok, ", ".join(lines))


# -- criterion 7 ----------------------------------------------------------------------------

def test_c7_query_cache(learned):
    _, cached, _ = learned("eqfac", "thue-morse")
    _, raw = learn_from(EqFacTeacher(builtin("thue-morse")), cache=False, max_queries=None)
    ok = (cached.oracle_invocations < cached.table_lookups
          and raw.oracle_invocations >= 2 * cached.oracle_invocations)
    report(7, ok, f"cached: {cached.oracle_invocations} invocations for {cached.table_lookups} "
                  f"lookups; uncached: {raw.oracle_invocations} invocations "
                  f"({raw.oracle_invocations / cached.oracle_invocations:.1f}x)")


# -- criterion 8 ----------------------------------------------------------------------------

def test_c8_direct_method(learned):
    dfa, _, _ = learned("eqfac", "thue-morse")
    direct, stats = direct_eqfac(builtin("thue-morse"))
    same = equivalent(direct, dfa) is None
    ok = same and stats.peak_states >= direct.n_states
    report(8, ok, f"direct route {direct.n_states} states ({trim(direct).n_states} trimmed), "
                  f"peak intermediate {stats.peak_states}, "
                  f"{'equivalent' if same else 'NOT equivalent'} to the learned automaton")


# -- criterion 9 ----------------------------------------------------------------------------

PUBLISHED = {
    ("eqfac", "thue-morse"): (1672, 7, 4, 26, 9),
    ("eqfac", "baum-sweet"): (75243, 43, 8, 210, 51),
    ("eqfac", "fibonacci-word"): (1032, 6, 3, 16, 9),
    ("eqfac", "tribonacci-word"): (4816, 11, 7, 40, 17),
    ("partial-sum", "thue-morse"): (132, 3, 3, 8, 5),
    ("partial-sum", "fibonacci-word"): (146, 3, 4, 11, 4),
    ("partial-sum", "tribonacci-word"): (12932, 23, 11, 133, 32),
    ("partial-sum", "rarefied-thue-morse"): (3548, 9, 4, 29, 11),
}
SOFT_KEYS = ("num_unique_queries", "num_incorrect_hypotheses", "longest_counterexample",
             "final_s", "final_e")


def test_c9_soft_metrics(learned):
    worst = 1.0
    off = []
    for (pred, name), published in PUBLISHED.items():
        _, stats, _ = learned(pred, name)
        print(f"\n{pred} / {name}\n" + stats.to_table("ours"))
        for key, want in zip(SOFT_KEYS, published):
            got = getattr(stats, key)
            ratio = max(got, 1) / max(want, 1)
            worst = max(worst, ratio, 1 / ratio)
            if not 0.1 <= ratio <= 10:
                off.append(f"{pred}/{name} {key}={got} (published {want})")
    report(9, not off, f"worst ratio to published values {worst:.2f}"
           + ("" if not off else ": " + "; ".join(off)))


# -- criterion 10 ---------------------------------------------------------------------------

def test_c10_linear_representations():
    refs = {"thue-morse": oracles.thue_morse, "fibonacci-word": oracles.fibonacci_word,
            "tribonacci-word": oracles.tribonacci_word, "baum-sweet": oracles.baum_sweet,
            "rarefied-thue-morse": oracles.rarefied}
    N = 10 ** 4
    bad = []
    for name, ref in refs.items():
        b = synchronized(name)
        pos, neg = b.reps
        want = np.array(ref(N + 1))
        for k in range(4):
            got = pos.evaluate_many(range(N + 1), leading_zeros=k)
            if neg is not None:
                got = got - neg.evaluate_many(range(N + 1), leading_zeros=k)
            if not np.array_equal(got, want):
                bad.append(f"{name} with {k} leading zeros")
    report(10, not bad, f"{len(refs)} sequences, n <= 10^4, 0-3 leading zeros"
           + ("" if not bad else ": wrong for " + ", ".join(bad)))
