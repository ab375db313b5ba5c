"""The addition relation x + y = z, learned for systems without a built-in adder."""

from __future__ import annotations

from ..automata import CompleteDfa
from ..lstar import RunStats, learn_from
from ..numeration import NumerationSystem, TrackSystemSpec, const_automaton, eq_relation, incr_relation
from .base import Check, PredicateTeacher, lit

X, Y, Z, T, U = range(5)


class AdderTeacher(PredicateTeacher):
    name = "adder"

    def __init__(self, ns: NumerationSystem):
        self.ns = ns
        super().__init__(TrackSystemSpec.uniform(ns, 3))

    def holds(self, x: int, y: int, z: int) -> bool:
        return x + y == z

    def build_checks(self) -> list[Check]:
        ns = self.ns
        incr = incr_relation(ns)
        eq = eq_relation(ns)
        zero = const_automaton(TrackSystemSpec.uniform(ns, 1), 0, 0)
        spec5 = TrackSystemSpec.uniform(ns, 5)
        both = [lit(incr, X, T), lit(incr, Z, U)]
        return [
            Check("base: A[0,y,y]", self.spec, [lit(zero, X), lit(eq, Y, Z)], [((X, Y, Z), True)],
                  lambda v: [v]),
            Check("base: not A[0,y,z] for y!=z", self.spec,
                  [lit(zero, X), lit(eq, Y, Z, negated=True)], [((X, Y, Z), False)],
                  lambda v: [v]),
            # x+1+y = 0 is impossible; the step below never constrains z = 0
            Check("not A[x,y,0] for x>0", self.spec,
                  [lit(zero, Z), lit(zero, X, negated=True)], [((X, Y, Z), False)],
                  lambda v: [v]),
            Check("step: A[x,y,z] and not A[x+1,y,z+1]", spec5, both,
                  [((X, Y, Z), False), ((T, Y, U), True)],
                  lambda v: [(v[X], v[Y], v[Z]), (v[T], v[Y], v[U])]),
            Check("step: not A[x,y,z] and A[x+1,y,z+1]", spec5, both,
                  [((X, Y, Z), True), ((T, Y, U), False)],
                  lambda v: [(v[X], v[Y], v[Z]), (v[T], v[Y], v[U])]),
        ]


def learn_adder(ns: NumerationSystem, **kwargs) -> tuple[CompleteDfa, RunStats]:
    kwargs.setdefault("max_queries", 10 ** 6)
    kwargs.setdefault("max_states", 2000)
    return learn_from(AdderTeacher(ns), **kwargs)
