"""Periods of factors: p is a period of X[i..i+n-1] (0 and p >= n always are)."""

from __future__ import annotations

from functools import cached_property

import numpy as np

from ..automata import CompleteDfa
from ..numeration import TrackSystemSpec, adder, const_automaton, incr_relation, lt_relation
from ..query import ConjunctiveQuery, compile_query, find_witness
from ..sequences import SequenceDfao, value_relation
from .base import Check, PredicateTeacher, lit
from .eqfac import DIRECT_THRESHOLD

# i n p m=n+1 s=i+n t with t+p=s
I, N, P, M, S, T = range(6)


def is_period(X: SequenceDfao, i: int, n: int, p: int) -> bool:
    if p == 0 or p >= n:
        return True
    a = X.prefix(i + n)
    return bool(np.array_equal(a[i:i + n - p], a[i + p:i + n]))


class PeriodTeacher(PredicateTeacher):
    """Tracks (i, n, p)."""

    name = "period"

    def __init__(self, X: SequenceDfao, threshold: int = DIRECT_THRESHOLD):
        self.X = X
        self.ns = X.system
        self.threshold = threshold
        super().__init__(TrackSystemSpec.uniform(self.ns, 3))

    def holds(self, i: int, n: int, p: int) -> bool:
        if n < self.threshold:
            return is_period(self.X, i, n, p)
        return self.holds_by_intersection(i, n, p)

    @cached_property
    def mismatch_automaton(self) -> CompleteDfa:
        # exists t: t+p < n and X[i+t] != X[i+t+p]
        # tracks: i n p t w=t+p u=i+t v=u+p
        ns = self.ns
        add = adder(ns)
        spec7 = TrackSystemSpec.uniform(ns, 7)
        q = (ConjunctiveQuery(spec7)
             .where(add, 3, 2, 4)
             .where(lt_relation(ns), 4, 1)
             .where(add, 0, 3, 5)
             .where(add, 5, 2, 6)
             .where(value_relation(self.X, self.X, "neq"), 5, 6))
        return compile_query(q)

    def holds_by_intersection(self, i: int, n: int, p: int) -> bool:
        spec7 = TrackSystemSpec.uniform(self.ns, 7)
        parts = [self.mismatch_automaton, const_automaton(spec7, 0, i),
                 const_automaton(spec7, 1, n), const_automaton(spec7, 2, p)]
        return find_witness(spec7, parts) is None

    def build_checks(self) -> list[Check]:
        ns = self.ns
        add = adder(ns)
        incr = incr_relation(ns)
        lt = lt_relation(ns)
        spec4 = TrackSystemSpec.uniform(ns, 4)
        spec6 = TrackSystemSpec.uniform(ns, 6)
        zero = const_automaton(TrackSystemSpec.uniform(ns, 1), 0, 0)
        neq = value_relation(self.X, self.X, "neq")
        eq = value_relation(self.X, self.X, "eq")
        # p <= n is the negation of n < p
        small = [lit(incr, N, M), lit(lt, N, P, negated=True)]
        step = small + [lit(add, I, N, S), lit(add, T, P, S)]
        return [
            Check("base: A[i,0,p]", self.spec, [lit(zero, N)], [((I, N, P), True)],
                  lambda v: [(v[I], 0, v[P])]),
            Check("step: p>=n+1 and not A[i,n+1,p]", spec4,
                  [lit(incr, N, M), lit(lt, P, M, negated=True)], [((I, M, P), True)],
                  lambda v: [(v[I], v[M], v[P])]),
            Check("step: p<=n and X[i+n]!=X[i+n-p] and A[i,n+1,p]", spec6,
                  step + [lit(neq, S, T)], [((I, M, P), False)],
                  lambda v: [(v[I], v[M], v[P])]),
            Check("step: p<=n and X[i+n]=X[i+n-p] and A[i,n,p] and not A[i,n+1,p]", spec6,
                  step + [lit(eq, S, T)], [((I, N, P), False), ((I, M, P), True)],
                  lambda v: [(v[I], v[N], v[P]), (v[I], v[M], v[P])]),
            Check("step: p<=n and not A[i,n,p] and A[i,n+1,p]", spec4, small,
                  [((I, N, P), True), ((I, M, P), False)],
                  lambda v: [(v[I], v[N], v[P]), (v[I], v[M], v[P])]),
        ]
