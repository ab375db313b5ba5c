"""Partial sums c(n) = sum_{i<n} b(i) of a synchronized sequence b.

b may take negative values when it is split into a nonnegative part B+ and a
negative part B- (both accept (n, |b(n)|) on their side of the sign).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable

import numpy as np

from ..automata import CompleteDfa, TupleAlphabet, embed, intersect_all, minimize, product
from ..numeration import (
    NumerationSystem,
    TrackSystemSpec,
    adder,
    base,
    const_automaton,
    eq_relation,
    incr_relation,
    lt_relation,
)
from ..query import ConjunctiveQuery, exists_compile
from ..sequences import SequenceDfao, builtin, value_is
from .base import Check, PredicateTeacher, lit
from .linrep import LinearRepresentation, build_linear_rep, prefix_sum_rep

DIRECT_LIMIT = 1 << 16


@dataclass
class SynchronizedSequence:
    """b given by automata over (n, x); ``values`` optionally computes b(0..N-1)."""

    name: str
    spec: TrackSystemSpec
    positive: CompleteDfa
    negative: CompleteDfa | None = None
    values: Callable[[int], np.ndarray] | None = None

    @cached_property
    def reps(self) -> tuple[LinearRepresentation, LinearRepresentation | None]:
        if self.negative is None:
            return build_linear_rep(self.positive, self.spec), None
        # each half is partial; their union must be total and single-valued
        both = minimize(product(self.positive, self.negative, "or"))
        build_linear_rep(both, self.spec)
        pos = build_linear_rep(self.positive, self.spec, check_upto=0)
        neg = build_linear_rep(self.negative, self.spec, check_upto=0)
        return pos, neg

    def __getitem__(self, n: int) -> int:
        pos, neg = self.reps
        return pos(n) - (neg(n) if neg is not None else 0)

    def prefix(self, length: int) -> np.ndarray:
        if self.values is not None:
            return self.values(length)
        pos, neg = self.reps
        out = pos.evaluate_many(range(length))
        if neg is not None:
            out = out - neg.evaluate_many(range(length))
        return out

    @cached_property
    def sum_reps(self) -> tuple[LinearRepresentation, LinearRepresentation | None]:
        pos, neg = self.reps
        return prefix_sum_rep(pos), None if neg is None else prefix_sum_rep(neg)

    def partial_sum(self, n: int) -> int:
        pos, neg = self.sum_reps
        return pos(n) - (neg(n) if neg is not None else 0)


def synchronized_from_dfao(X: SequenceDfao, x_system: NumerationSystem | None = None,
                           name: str | None = None) -> SynchronizedSequence:
    """B accepting (n, X[n]) with the value written in ``x_system``."""
    xs = X.system if x_system is None else x_system
    spec = TrackSystemSpec([X.system, xs])
    B = None
    for val in X.values_set:
        if val < 0:
            raise ValueError("negative outputs need an explicit B- automaton")
        part = intersect_all([embed(value_is(X, val), [0], spec.alphabet),
                              const_automaton(spec, 1, val), spec.validity()])
        B = part if B is None else product(B, part, "or")
    return SynchronizedSequence(name or X.name, spec, minimize(B), None, X.prefix)


def _popcount_parity(a: np.ndarray) -> np.ndarray:
    a = a.astype(np.uint64)
    p = np.zeros_like(a)
    while a.any():
        p ^= a & np.uint64(1)
        a >>= np.uint64(1)
    return p.astype(np.int64)


@lru_cache(maxsize=None)
def thue_morse_times3_base4() -> SequenceDfao:
    """t(3n) as a DFAO reading n in base 4."""
    b4 = base(4)
    spec4 = TrackSystemSpec.uniform(b4, 4)
    # Thue-Morse in base 4: parity of the number of digits 1 and 2
    tm4 = CompleteDfa.from_function(TupleAlphabet((4,)), 2, lambda q, d: q ^ (d[0] in (1, 2)),
                                    lambda q: q == 1)
    add = adder(b4)
    # tracks: n, a copy of n, w = 2n, m = 3n
    q = (ConjunctiveQuery(spec4).where(eq_relation(b4), 0, 1).where(add, 0, 1, 2)
         .where(add, 2, 0, 3).where(tm4, 3))
    odd = exists_compile(q, [1, 2, 3]).dfa
    # outputs come from the acceptance bit; 0* must loop at the start
    return SequenceDfao("thue-morse(3n)", b4, odd, odd.accepting.astype(int).tolist())


def rarefied_thue_morse() -> SynchronizedSequence:
    """b(n) = (-1)^t(3n), n in base 4 and |b(n)| in base 3."""
    X = thue_morse_times3_base4()
    spec = TrackSystemSpec([base(4), base(3)])
    one = const_automaton(spec, 1, 1)
    halves = []
    for val in (0, 1):
        halves.append(minimize(intersect_all([embed(value_is(X, val), [0], spec.alphabet), one,
                                              spec.validity()])))

    def values(length: int) -> np.ndarray:
        return 1 - 2 * _popcount_parity(3 * np.arange(length, dtype=np.int64))

    return SynchronizedSequence("rarefied-thue-morse", spec, halves[0], halves[1], values)


SYNCHRONIZED = {
    "thue-morse": lambda: synchronized_from_dfao(builtin("thue-morse")),
    "fibonacci-word": lambda: synchronized_from_dfao(builtin("fibonacci-word")),
    "tribonacci-word": lambda: synchronized_from_dfao(builtin("tribonacci-word")),
    "baum-sweet": lambda: synchronized_from_dfao(builtin("baum-sweet")),
    "rarefied-thue-morse": rarefied_thue_morse,
}


def synchronized(name: str) -> SynchronizedSequence:
    try:
        return SYNCHRONIZED[name]()
    except KeyError:
        raise KeyError(f"no synchronized sequence named {name!r}; "
                       f"known: {', '.join(sorted(SYNCHRONIZED))}") from None


# tracks for the verification queries: n, t, u, y, z
N, T, U, Y, Z = range(5)


class PartialSumTeacher(PredicateTeacher):
    """Tracks (n, x): x = sum_{i<n} b(i)."""

    name = "partial-sum"

    def __init__(self, b: SynchronizedSequence, threshold: int = DIRECT_LIMIT):
        self.b = b
        self.threshold = threshold
        self._sums = np.zeros(1, dtype=np.int64)
        super().__init__(b.spec)

    def c(self, n: int) -> int:
        if n < self.threshold:
            if n >= self._sums.size:
                size = min(self.threshold, max(n + 1, 2 * self._sums.size))
                vals = self.b.prefix(size - 1)
                self._sums = np.concatenate([[0], np.cumsum(vals)])
            return int(self._sums[n])
        return self.b.partial_sum(n)

    def holds(self, n: int, x: int) -> bool:
        return self.c(n) == x

    def build_checks(self) -> list[Check]:
        sn, sx = self.spec.systems
        spec1 = TrackSystemSpec([sx])
        spec5 = TrackSystemSpec([sn, sx, sn, sx, sx])
        zero_n = const_automaton(TrackSystemSpec([sn]), 0, 0)
        zero_x = const_automaton(spec1, 0, 0)
        add = adder(sx)
        incr = incr_relation(sn)
        lt = lt_relation(sx)
        checks = [
            Check("base: C[0,0]", self.spec, [lit(zero_n, 0), lit(zero_x, 1)], [((0, 1), True)],
                  lambda v: [(0, 0)]),
            Check("base: not C[0,x] for x>0", self.spec,
                  [lit(zero_n, 0), lit(zero_x, 1, negated=True)], [((0, 1), False)],
                  lambda v: [v]),
        ]
        pos = [lit(incr, N, U), lit(self.b.positive, N, T)]
        checks.append(
            # z = y + b(n) never reaches z < b(n); pin those pairs down separately
            Check("step: C[n+1,z] for z<b(n)", spec5, pos + [lit(lt, Z, T)], [((U, Z), False)],
                  lambda v: [(v[U], v[Z])]))
        signs = [("b(n)>=0", pos + [lit(add, Y, T, Z)])]
        if self.b.negative is not None:
            signs.append(("b(n)<0", [lit(incr, N, U), lit(self.b.negative, N, T),
                                     lit(add, Z, T, Y)]))
        for label, body in signs:
            checks.append(Check(f"step {label}: C[n,y] and not C[n+1,z]", spec5, body,
                                [((N, Y), False), ((U, Z), True)],
                                lambda v: [(v[N], v[Y]), (v[U], v[Z])]))
            checks.append(Check(f"step {label}: not C[n,y] and C[n+1,z]", spec5, body,
                                [((N, Y), True), ((U, Z), False)],
                                lambda v: [(v[N], v[Y]), (v[U], v[Z])]))
        return checks
