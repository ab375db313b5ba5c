"""Numeration systems and the relation automata built on top of them.

All representations are msd-first.  Every system here is greedy, so numeric
order agrees with lexicographic order of equal-length padded representations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .automata import (
    CompleteDfa,
    TupleAlphabet,
    canonical,
    complement,
    determinize,
    embed,
    from_text,
    intersect_all,
    minimize,
    project,
    Word,
)


class InvalidRepresentation(ValueError):
    pass


class UnsupportedSystem(ValueError):
    pass


@dataclass(eq=False)
class NumerationSystem:
    """A positional system with place values and a validity recognizer.

    ``recurrence`` (when known) holds ``c_1..c_m`` with
    ``place[k] = sum(c_j * place[k-j])``; it is what linear representations need.
    """

    name: str
    radix: int
    validity: CompleteDfa
    places: list[int]
    recurrence: tuple[int, ...] | None = None
    kind: str = "custom"

    def __hash__(self):
        return hash(self.name)

    def __eq__(self, other):
        return isinstance(other, NumerationSystem) and other.name == self.name

    def place(self, i: int) -> int:
        while len(self.places) <= i:
            rec = self.recurrence
            if rec is None or len(self.places) < len(rec):
                raise UnsupportedSystem(f"{self.name}: only {len(self.places)} place values known")
            self.places.append(sum(c * self.places[-j] for j, c in enumerate(rec, 1)))
        return self.places[i]

    def is_valid(self, digits: Sequence[int]) -> bool:
        if any(not 0 <= d < self.radix for d in digits):
            return False
        return self.validity.accepts(digits)

    def encode(self, n: int) -> list[int]:
        if n < 0:
            raise ValueError("only natural numbers are representable")
        if n == 0:
            return []
        top = 0
        while self.place(top + 1) <= n:
            top += 1
        out = []
        for i in range(top, -1, -1):
            p = self.place(i)
            d = min(self.radix - 1, n // p)
            out.append(d)
            n -= d * p
        if n != 0 or not self.validity.accepts(out):
            raise UnsupportedSystem(f"{self.name}: greedy expansion failed")
        return out

    def decode(self, digits: Sequence[int]) -> int:
        if not self.is_valid(digits):
            raise InvalidRepresentation(f"{''.join(map(str, digits))!r} is not valid in {self.name}")
        L = len(digits)
        return sum(d * self.place(L - 1 - i) for i, d in enumerate(digits) if d)

    def backward_places(self) -> list[int]:
        """``place[0], place[-1], .., place[-(m-1)]`` extending the recurrence backwards."""
        if self.recurrence is None:
            raise UnsupportedSystem(f"{self.name}: no recurrence for the place values")
        rec = self.recurrence
        m = len(rec)
        if m > 1 and rec[-1] != 1:
            raise UnsupportedSystem(f"{self.name}: backward extension needs c_m = 1")
        seq = {k: self.place(k) for k in range(m + 1)}
        for k in range(-1, -m, -1):
            # place[k+m] = sum_j c_j place[k+m-j]; solve for place[k]
            seq[k] = seq[k + m] - sum(rec[j - 1] * seq[k + m - j] for j in range(1, m))
        return [seq[-s] for s in range(m)]

    def accumulator(self) -> tuple[np.ndarray, np.ndarray]:
        """Linear map for msd-first value accumulation.

        The state is a row vector ``a`` whose first entry is the value read so
        far; appending digit ``e`` maps ``a`` to ``a @ P + e * q``.
        """
        rec = self.recurrence
        if rec is None:
            raise UnsupportedSystem(f"{self.name}: no recurrence for the place values")
        m = len(rec)
        P = np.zeros((m, m), dtype=np.int64)
        for j, c in enumerate(rec, 1):
            P[j - 1, 0] = c
        for s in range(1, m):
            P[s - 1, s] = 1
        q = np.array(self.backward_places(), dtype=np.int64)
        return P, q


def _forbid_run(run: int) -> CompleteDfa:
    """Binary words with no ``run`` consecutive 1s."""
    al = TupleAlphabet((2,))
    dead = run

    def step(q, d):
        if q == dead:
            return dead
        return q + 1 if d[0] == 1 else 0

    return CompleteDfa.from_function(al, run + 1, step, lambda q: q != dead)


@lru_cache(maxsize=None)
def base(k: int) -> NumerationSystem:
    if k < 2:
        raise ValueError("base must be >= 2")
    return NumerationSystem(f"base{k}", k, CompleteDfa.universal(TupleAlphabet((k,))),
                            [1, k], (k,), kind="base")


@lru_cache(maxsize=None)
def zeckendorf() -> NumerationSystem:
    return NumerationSystem("zeckendorf", 2, _forbid_run(2), [1, 2], (1, 1), kind="zeckendorf")


@lru_cache(maxsize=None)
def tribonacci() -> NumerationSystem:
    return NumerationSystem("tribonacci", 2, _forbid_run(3), [1, 2, 4], (1, 1, 1), kind="tribonacci")


_ALIASES = {
    "fib": "zeckendorf", "fibonacci": "zeckendorf", "msd_fib": "zeckendorf",
    "trib": "tribonacci", "msd_trib": "tribonacci",
}


def by_name(name: str) -> NumerationSystem:
    key = _ALIASES.get(name.lower(), name.lower())
    if key == "zeckendorf":
        return zeckendorf()
    if key == "tribonacci":
        return tribonacci()
    for prefix in ("base", "msd_"):
        if key.startswith(prefix) and key[len(prefix):].isdigit():
            return base(int(key[len(prefix):]))
    raise UnsupportedSystem(f"unknown numeration system {name!r}")


def from_config(text: str, name: str = "custom") -> NumerationSystem:
    """Validity DFA in canonical text format plus ``places`` (and optional ``recurrence``)."""
    dfa, extras = from_text(text)
    if dfa.alphabet.arity != 1:
        raise ValueError("validity recognizer must have one track")
    if "places" not in extras:
        raise ValueError("config needs a 'places' line")
    places = [int(x) for x in extras["places"][0]]
    if places[0] != 1 or any(b <= a for a, b in zip(places, places[1:])):
        raise ValueError("places must start at 1 and increase")
    rec = tuple(int(x) for x in extras["recurrence"][0]) if "recurrence" in extras else None
    if "name" in extras:
        name = extras["name"][0][0]
    return NumerationSystem(name, dfa.alphabet.radices[0], dfa, places, rec, kind="custom")


# -- track specs ----------------------------------------------------------------

class TrackSystemSpec:
    """One numeration system per track."""

    def __init__(self, systems: Sequence[NumerationSystem]):
        self.systems = tuple(systems)
        if not self.systems:
            raise ValueError("need at least one track")
        self.alphabet = TupleAlphabet(tuple(s.radix for s in self.systems))
        self._validity = None

    @classmethod
    def uniform(cls, ns: NumerationSystem, arity: int) -> "TrackSystemSpec":
        return cls([ns] * arity)

    @property
    def arity(self) -> int:
        return len(self.systems)

    def __eq__(self, other):
        return isinstance(other, TrackSystemSpec) and self.systems == other.systems

    def __hash__(self):
        return hash(self.systems)

    def __repr__(self):
        return f"TrackSystemSpec({[s.name for s in self.systems]})"

    def validity(self) -> CompleteDfa:
        if self._validity is None:
            parts = [embed(s.validity, [k], self.alphabet) for k, s in enumerate(self.systems)]
            self._validity = minimize(intersect_all(parts))
        return self._validity

    def encode(self, ints: Sequence[int], length: int | None = None) -> Word:
        return tuple_encode(self, ints, length)

    def decode(self, word: Sequence[int]) -> tuple[int, ...] | None:
        """Decoded tuple, or None when some track is not a valid representation."""
        out = []
        for ns, digits in zip(self.systems, self.alphabet.tracks(word)):
            if not ns.is_valid(digits):
                return None
            out.append(ns.decode(digits))
        return tuple(out)


def tuple_encode(spec: TrackSystemSpec, ints: Sequence[int], length: int | None = None) -> Word:
    if len(ints) != spec.arity:
        raise ValueError(f"expected {spec.arity} integers, got {len(ints)}")
    encs = [ns.encode(int(n)) for ns, n in zip(spec.systems, ints)]
    L = max((len(e) for e in encs), default=0)
    if length is not None:
        if length < L:
            raise ValueError("requested length too short")
        L = length
    padded = [[0] * (L - len(e)) + e for e in encs]
    return tuple(spec.alphabet.letter(col) for col in zip(*padded)) if L else ()


def const_automaton(spec: TrackSystemSpec, track: int, n0: int) -> CompleteDfa:
    """Words whose ``track`` reads ``0* encode(n0)``; other tracks unconstrained."""
    if not 0 <= track < spec.arity:
        raise ValueError("track out of range")
    ns = spec.systems[track]
    enc = ns.encode(n0)
    m = len(enc)
    sink = m + 1
    al = TupleAlphabet((ns.radix,))

    def step(q, d):
        d = d[0]
        if q == 0 and d == 0:
            return 0
        if q < m and d == enc[q]:
            return q + 1
        return sink

    one = CompleteDfa.from_function(al, m + 2, step, lambda q: q == m)
    return embed(one, [track], spec.alphabet)


# -- two-track relations --------------------------------------------------------

def _with_validity(rel: CompleteDfa, ns: NumerationSystem) -> CompleteDfa:
    spec = TrackSystemSpec.uniform(ns, rel.alphabet.arity)
    return minimize(intersect_all([rel, spec.validity()]))


@lru_cache(maxsize=None)
def eq_relation(ns: NumerationSystem) -> CompleteDfa:
    al = TupleAlphabet((ns.radix, ns.radix))
    raw = CompleteDfa.from_function(al, 2, lambda q, d: q if d[0] == d[1] else 1, lambda q: q == 0)
    return _with_validity(raw, ns)


@lru_cache(maxsize=None)
def lt_relation(ns: NumerationSystem) -> CompleteDfa:
    """(m, n) with m < n, via lexicographic comparison of padded words."""
    al = TupleAlphabet((ns.radix, ns.radix))

    def step(q, d):
        if q != 0:
            return q
        if d[0] == d[1]:
            return 0
        return 1 if d[0] < d[1] else 2

    raw = CompleteDfa.from_function(al, 3, step, lambda q: q == 1)
    return _with_validity(raw, ns)


@lru_cache(maxsize=None)
def incr_relation(ns: NumerationSystem) -> CompleteDfa:
    """(n, x) with x = n + 1: n < x and nothing valid lies strictly between."""
    spec3 = TrackSystemSpec.uniform(ns, 3)
    lt = lt_relation(ns)
    between = intersect_all([spec3.validity(),
                             embed(lt, [0, 1], spec3.alphabet),
                             embed(lt, [1, 2], spec3.alphabet)])
    gap = minimize(determinize(project(minimize(between), [0, 2], leading_zeros=True)))
    return minimize(intersect_all([lt, complement(gap)]))


def relation_automata(ns: NumerationSystem) -> dict[str, CompleteDfa]:
    return {"eq": eq_relation(ns), "lt": lt_relation(ns), "incr": incr_relation(ns)}


# -- addition -------------------------------------------------------------------

_ADDERS: dict[str, CompleteDfa] = {}


def base_k_adder(k: int) -> CompleteDfa:
    """msd-first x + y = z; the state is the carry owed by the digits still to come."""
    al = TupleAlphabet((k, k, k))
    dead = 2

    def step(q, d):
        if q == dead:
            return dead
        c_in = d[2] + k * q - d[0] - d[1]
        return c_in if c_in in (0, 1) else dead

    return CompleteDfa.from_function(al, 3, step, lambda q: q == 0)


def register_adder(ns: NumerationSystem, dfa: CompleteDfa) -> None:
    if dfa.alphabet != TupleAlphabet((ns.radix,) * 3):
        raise ValueError("adder must be a 3-track automaton over the system's digits")
    _ADDERS[ns.name] = canonical(dfa)


def adder(ns: NumerationSystem, learn: bool = True) -> CompleteDfa:
    """Automaton for x + y = z; learned (and cached) for non-base-k systems."""
    if ns.kind == "base":
        return base_k_adder(ns.radix)
    if ns.name in _ADDERS:
        return _ADDERS[ns.name]
    if not learn:
        raise UnsupportedSystem(f"no adder available for {ns.name}")
    from .lstar import BudgetExceeded
    from .teachers.adder import learn_adder

    try:
        dfa, _ = learn_adder(ns)
    except BudgetExceeded as exc:
        raise UnsupportedSystem(f"{ns.name}: could not learn an adder ({exc})") from exc
    _ADDERS[ns.name] = dfa
    return dfa
