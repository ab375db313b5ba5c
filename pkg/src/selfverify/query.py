"""Quantifier-free conjunctive queries over tuple words.

A query is a conjunction of (possibly negated) automaton literals, each wired
onto some of the query's tracks, plus per-track validity which is always
present.  Emptiness and shortest witnesses come from breadth-first search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .automata import (
    CompleteDfa,
    Word,
    complement,
    determinize,
    embed,
    minimize,
    product,
    project,
    shortest_accepted_all,
)
from .numeration import TrackSystemSpec


@dataclass(frozen=True)
class Literal:
    payload: CompleteDfa
    wiring: tuple[int, ...]
    negated: bool = False

    def embedded(self, spec: TrackSystemSpec) -> CompleteDfa:
        a = complement(self.payload) if self.negated else self.payload
        return embed(a, self.wiring, spec.alphabet)


@dataclass
class ConjunctiveQuery:
    spec: TrackSystemSpec
    literals: list[Literal] = field(default_factory=list)

    @property
    def arity(self) -> int:
        return self.spec.arity

    def where(self, payload: CompleteDfa, *wiring: int, negated: bool = False) -> "ConjunctiveQuery":
        """Return a copy with one more literal."""
        lit = Literal(payload, tuple(wiring), negated)
        lit.embedded(self.spec)  # fail early on bad wiring
        return ConjunctiveQuery(self.spec, [*self.literals, lit])

    def automata(self) -> list[CompleteDfa]:
        return [self.spec.validity()] + [lit.embedded(self.spec) for lit in self.literals]


@dataclass
class CompileStats:
    peak_states: int = 0
    intermediate: list[int] = field(default_factory=list)

    def record(self, n: int) -> None:
        self.intermediate.append(n)
        self.peak_states = max(self.peak_states, n)


def conjoin(parts: Sequence[CompleteDfa], threshold: int = 10_000,
            stats: CompileStats | None = None) -> CompleteDfa:
    """Intersect smallest-first, minimizing whenever an intermediate exceeds ``threshold``."""
    if stats is None:
        stats = CompileStats()
    parts = sorted(parts, key=lambda a: a.n_states)
    acc = parts[0]
    stats.record(acc.n_states)
    for nxt in parts[1:]:
        acc = product(acc, nxt, "and")
        stats.record(acc.n_states)
        if acc.n_states > threshold:
            acc = minimize(acc)
    return minimize(acc)


def compile_query(q: ConjunctiveQuery, threshold: int = 10_000,
                  stats: CompileStats | None = None) -> CompleteDfa:
    return conjoin(q.automata(), threshold, stats)


@dataclass(frozen=True)
class Witness:
    values: tuple[int, ...]
    word: Word


def decode_witness(spec: TrackSystemSpec, word: Word) -> Witness:
    values = spec.decode(word)
    if values is None:
        raise ValueError("witness is not a valid representation")
    return Witness(values, word)


def witness(q: ConjunctiveQuery, extra: Sequence[CompleteDfa] = ()) -> Witness | None:
    """Length-lex least satisfying word, decoded per track; None if unsatisfiable."""
    word = shortest_accepted_all(q.automata() + list(extra))
    return None if word is None else decode_witness(q.spec, word)


def find_witness(spec: TrackSystemSpec, parts: Sequence[CompleteDfa]) -> Witness | None:
    """Witness search over already-embedded automata (validity must be among them)."""
    word = shortest_accepted_all(parts)
    return None if word is None else decode_witness(spec, word)


@dataclass
class ExistsResult:
    dfa: CompleteDfa
    stats: CompileStats


def exists_compile(q: ConjunctiveQuery, drop: Sequence[int], threshold: int = 10_000) -> ExistsResult:
    """Minimal DFA over the kept tracks for ``exists <drop>: q``."""
    drop = set(int(d) for d in drop)
    if not drop or len(drop) >= q.arity:
        raise ValueError("drop must be a nonempty proper subset of the tracks")
    keep = [t for t in range(q.arity) if t not in drop]
    stats = CompileStats()
    body = compile_query(q, threshold, stats)
    det = determinize(project(body, keep, leading_zeros=True))
    stats.record(det.n_states)
    return ExistsResult(minimize(det), stats)
