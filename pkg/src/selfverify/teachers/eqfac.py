"""Equality of factors: X[i..i+n-1] = Y[j..j+n-1]."""

from __future__ import annotations

from functools import cached_property

import numpy as np

from ..automata import CompleteDfa, complement, intersect_all, minimize
from ..numeration import TrackSystemSpec, adder, const_automaton, incr_relation, lt_relation
from ..query import CompileStats, ConjunctiveQuery, compile_query, exists_compile, find_witness
from ..sequences import SequenceDfao, value_relation
from .base import Check, PredicateTeacher, lit

DIRECT_THRESHOLD = 10 ** 7

# track layout of the six-variable queries
I, J, N, T, U, V = range(6)


def factors_equal(X: SequenceDfao, Y: SequenceDfao, i: int, j: int, n: int) -> bool:
    if n == 0:
        return True
    hi = max(i, j) + n
    a = X.prefix(hi)
    b = a if Y is X else Y.prefix(hi)
    return bool(np.array_equal(a[i:i + n], b[j:j + n]))


class EqFacTeacher(PredicateTeacher):
    """Tracks (i, j, n).  With ``Y`` given, compares factors of two sequences."""

    name = "eqfac"

    def __init__(self, X: SequenceDfao, Y: SequenceDfao | None = None,
                 threshold: int = DIRECT_THRESHOLD):
        Y = X if Y is None else Y
        if X.system != Y.system:
            raise ValueError("both sequences must share a numeration system")
        self.X, self.Y = X, Y
        self.ns = X.system
        self.threshold = threshold
        super().__init__(TrackSystemSpec.uniform(self.ns, 3))

    def holds(self, i: int, j: int, n: int) -> bool:
        if n < self.threshold:
            return factors_equal(self.X, self.Y, i, j, n)
        return self.holds_by_intersection(i, j, n)

    # -- intersection method ----------------------------------------------------
    @cached_property
    def mismatch_query(self) -> ConjunctiveQuery:
        """(t<n) ∧ (u=i+t) ∧ (v=j+t) ∧ X[u] != Y[v] over (i, j, n, t, u, v)."""
        spec6 = TrackSystemSpec.uniform(self.ns, 6)
        add = adder(self.ns)
        return (ConjunctiveQuery(spec6)
                .where(lt_relation(self.ns), T, N)
                .where(add, I, T, U)
                .where(add, J, T, V)
                .where(value_relation(self.X, self.Y, "neq"), U, V))

    @cached_property
    def mismatch_automaton(self) -> CompleteDfa:
        return compile_query(self.mismatch_query)

    def holds_by_intersection(self, i: int, j: int, n: int) -> bool:
        spec6 = self.mismatch_query.spec
        parts = [self.mismatch_automaton,
                 const_automaton(spec6, I, i),
                 const_automaton(spec6, J, j),
                 const_automaton(spec6, N, n)]
        return find_witness(spec6, parts) is None

    # -- verification -------------------------------------------------------------
    def build_checks(self) -> list[Check]:
        ns = self.ns
        add = adder(ns)
        incr = incr_relation(ns)
        spec3 = self.spec
        spec4 = TrackSystemSpec.uniform(ns, 4)
        spec6 = TrackSystemSpec.uniform(ns, 6)
        zero = const_automaton(TrackSystemSpec.uniform(ns, 1), 0, 0)
        neq = value_relation(self.X, self.Y, "neq")
        eq = value_relation(self.X, self.Y, "eq")
        step = [lit(incr, N, T), lit(add, I, N, U), lit(add, J, N, V)]
        return [
            Check("base: A[i,j,0]", spec3, [lit(zero, N)], [((I, J, N), True)],
                  lambda v: [(v[I], v[J], 0)]),
            Check("step: X[i+n]!=X[j+n] and A[i,j,n+1]", spec6, step + [lit(neq, U, V)],
                  [((I, J, T), False)],
                  lambda v: [(v[I], v[J], v[T])]),
            Check("step: X[i+n]=X[j+n] and A[i,j,n] and not A[i,j,n+1]", spec6,
                  step + [lit(eq, U, V)], [((I, J, N), False), ((I, J, T), True)],
                  lambda v: [(v[I], v[J], v[N]), (v[I], v[J], v[T])]),
            Check("step: not A[i,j,n] and A[i,j,n+1]", spec4, [lit(incr, N, T)],
                  [((I, J, N), True), ((I, J, T), False)],
                  lambda v: [(v[I], v[J], v[N]), (v[I], v[J], v[T])]),
        ]


def direct_eqfac(X: SequenceDfao, Y: SequenceDfao | None = None, threshold: int = 10_000):
    """Quantifier route: valid(i,j,n) ∧ ¬∃t,u,v E(i,j,n,t,u,v).

    Returns the minimal automaton and the compile statistics (peak size).
    """
    teacher = EqFacTeacher(X, Y)
    res = exists_compile(teacher.mismatch_query, [T, U, V], threshold)
    stats: CompileStats = res.stats
    valid = teacher.spec.validity()
    final = minimize(intersect_all([valid, complement(res.dfa)]))
    stats.record(final.n_states)
    return final, stats
