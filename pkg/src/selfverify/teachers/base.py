"""Shared machinery for self-verifying teachers.

A teacher answers membership queries directly and verifies a hypothesis by
running a fixed list of existential checks.  Each check is a conjunctive query
whose hypothesis-free part is compiled once; per hypothesis only the product
with the (possibly complemented) hypothesis is searched.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from ..automata import CompleteDfa, Word, complement, embed, equivalent, shortest_accepted_all
from ..numeration import TrackSystemSpec
from ..query import CompileStats, Literal, Witness, conjoin, find_witness

Candidates = Callable[[tuple[int, ...]], Sequence[tuple[int, ...]]]


@dataclass
class Check:
    """``exists tracks: static ∧ (¬)A[wiring] ∧ ...``; a witness means A is wrong."""

    name: str
    spec: TrackSystemSpec
    literals: list[Literal]
    uses: list[tuple[tuple[int, ...], bool]]
    candidates: Candidates
    _static: CompleteDfa | None = field(default=None, repr=False)

    def static(self) -> CompleteDfa:
        if self._static is None:
            parts = [self.spec.validity()] + [lit.embedded(self.spec) for lit in self.literals]
            self._static = conjoin(parts, stats=CompileStats())
        return self._static

    def find(self, hypothesis: CompleteDfa) -> Witness | None:
        comp = None
        parts = [self.static()]
        for wiring, negated in self.uses:
            if negated:
                if comp is None:
                    comp = complement(hypothesis)
                parts.append(embed(comp, wiring, self.spec.alphabet))
            else:
                parts.append(embed(hypothesis, wiring, self.spec.alphabet))
        return find_witness(self.spec, parts)


def lit(payload: CompleteDfa, *wiring: int, negated: bool = False) -> Literal:
    return Literal(payload, tuple(wiring), negated)


@dataclass
class Verdict:
    correct: bool
    check: str | None = None
    counterexample: Word | None = None
    values: tuple[int, ...] | None = None


class PredicateTeacher:
    """Base class: subclasses provide ``holds`` and ``build_checks``."""

    name = "predicate"

    def __init__(self, spec: TrackSystemSpec):
        self.spec = spec
        self.alphabet = spec.alphabet
        self._checks: list[Check] | None = None
        self.last_check: str | None = None

    # -- membership -------------------------------------------------------------
    def holds(self, *values: int) -> bool:
        raise NotImplementedError

    def member(self, word: Word) -> bool:
        values = self.spec.decode(word)
        return False if values is None else bool(self.holds(*values))

    def member_values(self, *values: int) -> bool:
        return bool(self.holds(*values))

    # -- verification -----------------------------------------------------------
    def build_checks(self) -> list[Check]:
        raise NotImplementedError

    @property
    def checks(self) -> list[Check]:
        if self._checks is None:
            self._checks = self.build_checks()
        return self._checks

    def _check_alphabet(self, hypothesis: CompleteDfa) -> None:
        if hypothesis.alphabet != self.alphabet:
            raise ValueError(f"hypothesis alphabet {hypothesis.alphabet.radices} does not match "
                             f"{self.alphabet.radices}")

    def _validity(self, hypothesis: CompleteDfa) -> Word | None:
        # over the raw digit alphabet, so invalid words are reachable witnesses
        return shortest_accepted_all([hypothesis, complement(self.spec.validity())])

    def _zero_loop(self, hypothesis: CompleteDfa) -> Word | None:
        q0 = hypothesis.initial
        q1 = int(hypothesis.delta[q0, 0])
        if q1 == q0:
            return None
        shifted = CompleteDfa(hypothesis.alphabet, hypothesis.delta, hypothesis.accepting, q1)
        w = equivalent(hypothesis, shifted)
        if w is None:
            # not minimal, but the language ignores leading zeros
            return None
        # the target cannot tell w from 0w, the hypothesis does: one of them is wrong
        for cand in (w, (0,) + w):
            if hypothesis.accepts(cand) != self.member(cand):
                return cand
        raise RuntimeError("leading-zero check found no wrong candidate")

    def disambiguate(self, hypothesis: CompleteDfa, candidates: Sequence[tuple[int, ...]],
                     check: str) -> Word:
        words = sorted((self.spec.encode(c) for c in candidates), key=len)
        for w in words:
            if hypothesis.accepts(w) != self.member(w):
                return w
        raise RuntimeError(f"check {check!r} produced a witness but no candidate is wrong")

    def diagnose(self, hypothesis: CompleteDfa) -> Verdict:
        """Run every check in order and report the first failure."""
        self._check_alphabet(hypothesis)
        w = self._validity(hypothesis)
        if w is not None:
            return Verdict(False, "validity", w, None)
        w = self._zero_loop(hypothesis)
        if w is not None:
            return Verdict(False, "leading-zeros", w, self.spec.decode(w))
        for check in self.checks:
            found = check.find(hypothesis)
            if found is not None:
                cex = self.disambiguate(hypothesis, check.candidates(found.values), check.name)
                return Verdict(False, check.name, cex, self.spec.decode(cex))
        return Verdict(True)

    def verify(self, hypothesis: CompleteDfa) -> Word | None:
        v = self.diagnose(hypothesis)
        self.last_check = v.check
        return v.counterexample
