"""Angluin's L* with an observation table read through a query cache."""

from __future__ import annotations

import heapq
import logging
import time
from dataclasses import dataclass, fields
from typing import Callable, Protocol

import numpy as np

from .automata import BudgetExceeded, CompleteDfa, TupleAlphabet, Word, canonical

log = logging.getLogger(__name__)

__all__ = [
    "BudgetExceeded", "QueryCache", "ObservationTable", "RunStats", "learn",
    "MembershipOracle", "HypothesisVerifier", "Teacher",
]


class MembershipOracle(Protocol):
    def __call__(self, word: Word) -> bool: ...


class HypothesisVerifier(Protocol):
    def __call__(self, hypothesis: CompleteDfa) -> Word | None: ...


class Teacher(Protocol):
    alphabet: TupleAlphabet

    def member(self, word: Word) -> bool: ...

    def verify(self, hypothesis: CompleteDfa) -> Word | None: ...


def _key(word: Word):
    return (len(word), word)


class QueryCache:
    """Memoizes the membership oracle; with ``enabled=False`` every lookup reaches it."""

    def __init__(self, oracle: MembershipOracle, enabled: bool = True, max_queries: int | None = None):
        self.oracle = oracle
        self.enabled = enabled
        self.max_queries = max_queries
        self.answers: dict[Word, bool] = {}
        self.lookups = 0
        self.invocations = 0
        self.longest = 0

    def __call__(self, word: Word) -> bool:
        self.lookups += 1
        if self.enabled:
            hit = self.answers.get(word)
            if hit is not None:
                return hit
        self.invocations += 1
        if self.max_queries is not None and self.invocations > self.max_queries:
            raise BudgetExceeded(f"more than {self.max_queries} membership queries")
        ans = bool(self.oracle(word))
        self.answers[word] = ans
        self.longest = max(self.longest, len(word))
        return ans

    @property
    def unique(self) -> int:
        return len(self.answers)

    @property
    def hits(self) -> int:
        return self.lookups - self.invocations


class ObservationTable:
    """Rows ``S ∪ S·Σ``, columns ``E``; cells are read through ``member``."""

    def __init__(self, alphabet_size: int, member: Callable[[Word], bool]):
        self.sigma = tuple(range(alphabet_size))
        self.member = member
        self.S: list[Word] = [()]
        self.E: list[Word] = [()]
        self._S_set = {()}
        self._E_set = {()}
        self.rows: dict[Word, tuple[bool, ...]] = {}

    def row(self, s: Word) -> tuple[bool, ...]:
        return tuple(self.member(s + e) for e in self.E)

    def extensions(self):
        return [s + (a,) for s in self.S for a in self.sigma if s + (a,) not in self._S_set]

    def fill(self) -> None:
        self.rows = {s: self.row(s) for s in self.S}
        for t in self.extensions():
            self.rows[t] = self.row(t)

    def _ensure(self, label: Word) -> tuple[bool, ...]:
        r = self.rows.get(label)
        if r is None:
            r = self.rows[label] = self.row(label)
        return r

    def check_closed(self) -> Word | None:
        """First S·Σ label (canonical order) whose row matches no S row."""
        s_rows = {self._ensure(s) for s in self.S}
        for t in sorted(self.extensions(), key=_key):
            if self._ensure(t) not in s_rows:
                return t
        return None

    def close(self) -> int:
        """Move offending rows into S until closed; returns how many were moved."""
        s_rows = {self._ensure(s) for s in self.S}
        heap = [_key(t) for t in self.extensions()]
        heapq.heapify(heap)
        moved = 0
        while heap:
            _, t = heapq.heappop(heap)
            r = self._ensure(t)
            if r in s_rows:
                continue
            self._add_s(t)
            s_rows.add(r)
            moved += 1
            for a in self.sigma:
                heapq.heappush(heap, _key(t + (a,)))
        return moved

    def check_consistent(self) -> tuple[Word, Word, int, Word] | None:
        """A witness (s1, s2, a, e) of two equal S-rows that diverge after ``a``."""
        groups: dict[tuple[bool, ...], list[Word]] = {}
        for s in sorted(self.S, key=_key):
            groups.setdefault(self._ensure(s), []).append(s)
        for members in groups.values():
            if len(members) < 2:
                continue
            first = members[0]
            for a in self.sigma:
                for e in self.E:
                    v = self.member(first + (a,) + e)
                    for other in members[1:]:
                        if self.member(other + (a,) + e) != v:
                            return first, other, a, e
        return None

    def _add_s(self, s: Word) -> None:
        if s not in self._S_set:
            self._S_set.add(s)
            self.S.append(s)

    def add_prefixes(self, word: Word) -> int:
        before = len(self.S)
        for k in range(len(word) + 1):
            self._add_s(word[:k])
        self.S.sort(key=_key)
        return len(self.S) - before

    def add_suffix(self, e: Word) -> None:
        added = False
        for k in range(len(e)):
            suf = e[k:]
            if suf not in self._E_set:
                self._E_set.add(suf)
                self.E.append(suf)
                added = True
        if added:
            self.E.sort(key=_key)
            self.rows = {}

    def add_counterexample(self, word: Word) -> int:
        return self.add_prefixes(tuple(word))

    def distinct_rows(self) -> int:
        return len({self._ensure(s) for s in self.S})

    def build_hypothesis(self, alphabet: TupleAlphabet) -> CompleteDfa:
        if self.check_closed() is not None or self.check_consistent() is not None:
            raise ValueError("table must be closed and consistent")
        index: dict[tuple[bool, ...], int] = {}
        reps: list[Word] = []
        for s in sorted(self.S, key=_key):
            r = self._ensure(s)
            if r not in index:
                index[r] = len(reps)
                reps.append(s)
        eps_col = self.E.index(())
        delta = np.empty((len(reps), len(self.sigma)), dtype=np.int32)
        accepting = np.zeros(len(reps), dtype=bool)
        for i, s in enumerate(reps):
            accepting[i] = self._ensure(s)[eps_col]
            for a in self.sigma:
                delta[i, a] = index[self._ensure(s + (a,))]
        return canonical(CompleteDfa(alphabet, delta, accepting, index[self._ensure(())]))


@dataclass
class RunStats:
    num_unique_queries: int = 0
    num_incorrect_hypotheses: int = 0
    longest_counterexample: int = 0
    longest_queried_string: int = 0
    final_num_states: int = 0
    final_s: int = 0
    final_e: int = 0
    table_lookups: int = 0
    oracle_invocations: int = 0
    total_time: float = 0.0

    _LABELS = {
        "total_time": "Total time (in seconds)",
        "num_unique_queries": "# of unique queries",
        "num_incorrect_hypotheses": "# of incorrect hypotheses",
        "longest_counterexample": "Longest counterexample",
        "longest_queried_string": "Longest queried string",
        "final_num_states": "Final # of states",
        "final_s": "Final |S|",
        "final_e": "Final |E|",
    }

    def as_dict(self, timing: bool = True) -> dict:
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        if not timing:
            out.pop("total_time")
        return out

    def to_record(self, timing: bool = False) -> str:
        """Single-line ``key=value`` record (deterministic unless ``timing``)."""
        return " ".join(f"{k}={v:.3f}" if isinstance(v, float) else f"{k}={v}"
                        for k, v in self.as_dict(timing).items())

    def to_lines(self, timing: bool = False) -> str:
        return "".join(f"{k}={v:.3f}\n" if isinstance(v, float) else f"{k}={v}\n"
                       for k, v in self.as_dict(timing).items())

    def to_table(self, column: str = "") -> str:
        width = max(len(v) for v in self._LABELS.values())
        rows = [f"{'Metric':<{width}}  {column}"]
        for key, label in self._LABELS.items():
            v = getattr(self, key)
            rows.append(f"{label:<{width}}  {v:.1f}" if isinstance(v, float) else f"{label:<{width}}  {v}")
        return "\n".join(rows)


def learn(member: MembershipOracle, verify: HypothesisVerifier, alphabet: TupleAlphabet, *,
          cache: bool = True, max_queries: int = 10 ** 6, max_states: int = 10 ** 4,
          max_hypotheses: int | None = None) -> tuple[CompleteDfa, RunStats]:
    """Run L* until ``verify`` accepts a hypothesis.

    Raises :class:`BudgetExceeded` when the query, state or hypothesis budget
    runs out, which is how a non-regular target shows up.
    """
    start = time.perf_counter()
    stats = RunStats()
    queries = QueryCache(member, enabled=cache, max_queries=max_queries)
    table = ObservationTable(alphabet.size, queries)
    it = 0
    while True:
        it += 1
        table.fill()
        while True:
            table.close()
            if len(set(table.rows[s] for s in table.S)) > max_states:
                raise BudgetExceeded(f"hypothesis would exceed {max_states} states")
            bad = table.check_consistent()
            if bad is None:
                break
            s1, s2, a, e = bad
            table.add_suffix((a,) + e)
            table.fill()
        hyp = table.build_hypothesis(alphabet)
        cex = verify(hyp)
        log.info("iteration %d: hypothesis %d states, |S|=%d |E|=%d, queries=%d, cex=%s",
                 it, hyp.n_states, len(table.S), len(table.E), queries.invocations,
                 None if cex is None else len(cex))
        if cex is None:
            break
        cex = tuple(int(c) for c in cex)
        if hyp.accepts(cex) == queries(cex):
            raise RuntimeError(f"teacher returned a non-counterexample {cex}")
        stats.num_incorrect_hypotheses += 1
        stats.longest_counterexample = max(stats.longest_counterexample, len(cex))
        if max_hypotheses is not None and stats.num_incorrect_hypotheses >= max_hypotheses:
            raise BudgetExceeded(f"more than {max_hypotheses} incorrect hypotheses")
        table.add_counterexample(cex)

    stats.num_unique_queries = queries.unique
    stats.longest_queried_string = queries.longest
    stats.final_num_states = hyp.n_states
    stats.final_s = len(table.S)
    stats.final_e = len(table.E)
    stats.table_lookups = queries.lookups
    stats.oracle_invocations = queries.invocations
    stats.total_time = time.perf_counter() - start
    return hyp, stats


def learn_from(teacher: Teacher, **kwargs) -> tuple[CompleteDfa, RunStats]:
    return learn(teacher.member, teacher.verify, teacher.alphabet, **kwargs)
