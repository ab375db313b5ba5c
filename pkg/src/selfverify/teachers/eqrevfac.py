"""Equality of a factor with a reversed factor: X[i..i+n-1] = X[j..j+n-1]^R."""

from __future__ import annotations

from functools import cached_property

import numpy as np

from ..automata import CompleteDfa
from ..numeration import TrackSystemSpec, adder, const_automaton, incr_relation, lt_relation
from ..query import ConjunctiveQuery, compile_query, find_witness
from ..sequences import SequenceDfao, value_relation
from .base import Check, PredicateTeacher, lit
from .eqfac import DIRECT_THRESHOLD

I, J, N, T, A1, V = range(6)


def reversed_equal(X: SequenceDfao, i: int, j: int, n: int) -> bool:
    if n == 0:
        return True
    a = X.prefix(max(i, j) + n)
    return bool(np.array_equal(a[i:i + n], a[j:j + n][::-1]))


class EqRevFacTeacher(PredicateTeacher):
    """Tracks (i, j, n); the step uses i+1 as an extra track."""

    name = "eqrevfac"

    def __init__(self, X: SequenceDfao, threshold: int = DIRECT_THRESHOLD):
        self.X = X
        self.ns = X.system
        self.threshold = threshold
        super().__init__(TrackSystemSpec.uniform(self.ns, 3))

    def holds(self, i: int, j: int, n: int) -> bool:
        if n < self.threshold:
            return reversed_equal(self.X, i, j, n)
        return self.holds_by_intersection(i, j, n)

    @cached_property
    def mismatch_automaton(self) -> CompleteDfa:
        # exists t<n: X[i+t] != X[v] with v + t + 1 = j + n
        # tracks: i j n t u=i+t v w=v+t s=w+1=j+n
        ns = self.ns
        add = adder(ns)
        spec8 = TrackSystemSpec.uniform(ns, 8)
        q = (ConjunctiveQuery(spec8)
             .where(lt_relation(ns), 3, 2)
             .where(add, 0, 3, 4)
             .where(add, 5, 3, 6)
             .where(incr_relation(ns), 6, 7)
             .where(add, 1, 2, 7)
             .where(value_relation(self.X, self.X, "neq"), 4, 5))
        return compile_query(q)

    def holds_by_intersection(self, i: int, j: int, n: int) -> bool:
        spec8 = TrackSystemSpec.uniform(self.ns, 8)
        parts = [self.mismatch_automaton, const_automaton(spec8, 0, i),
                 const_automaton(spec8, 1, j), const_automaton(spec8, 2, n)]
        return find_witness(spec8, parts) is None

    def build_checks(self) -> list[Check]:
        ns = self.ns
        add = adder(ns)
        incr = incr_relation(ns)
        spec5 = TrackSystemSpec.uniform(ns, 5)
        spec6 = TrackSystemSpec.uniform(ns, 6)
        zero = const_automaton(TrackSystemSpec.uniform(ns, 1), 0, 0)
        neq = value_relation(self.X, self.X, "neq")
        eq = value_relation(self.X, self.X, "eq")
        step = [lit(incr, N, T), lit(incr, I, A1), lit(add, J, N, V)]
        return [
            Check("base: A[i,j,0]", self.spec, [lit(zero, N)], [((I, J, N), True)],
                  lambda v: [(v[I], v[J], 0)]),
            Check("step: X[i]!=X[j+n] and A[i,j,n+1]", spec6, step + [lit(neq, I, V)],
                  [((I, J, T), False)], lambda v: [(v[I], v[J], v[T])]),
            Check("step: X[i]=X[j+n] and A[i+1,j,n] and not A[i,j,n+1]", spec6,
                  step + [lit(eq, I, V)], [((A1, J, N), False), ((I, J, T), True)],
                  lambda v: [(v[A1], v[J], v[N]), (v[I], v[J], v[T])]),
            Check("step: not A[i+1,j,n] and A[i,j,n+1]", spec5,
                  [lit(incr, N, T), lit(incr, I, A1)], [((A1, J, N), True), ((I, J, T), False)],
                  lambda v: [(v[A1], v[J], v[N]), (v[I], v[J], v[T])]),
        ]
