"""Automatic sequences as DFAOs over a numeration system."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .automata import CompleteDfa, TupleAlphabet, from_text, intersect_all, minimize, to_text
from .numeration import NumerationSystem, TrackSystemSpec, base, by_name, tribonacci, zeckendorf


class SequenceDfao:
    """A one-track DFA whose states carry integer outputs."""

    def __init__(self, name: str, system: NumerationSystem, dfa: CompleteDfa, outputs: Sequence[int]):
        if dfa.alphabet != TupleAlphabet((system.radix,)):
            raise ValueError("DFAO must read one track of the system's digits")
        if len(outputs) != dfa.n_states:
            raise ValueError("one output per state required")
        if dfa.delta[dfa.initial, 0] != dfa.initial:
            raise ValueError("initial state must loop on digit 0 (leading zeros)")
        self.name = name
        self.system = system
        self.dfa = dfa
        self.outputs = np.asarray(outputs, dtype=np.int64)
        self._prefix = np.zeros(0, dtype=np.int64)

    def __repr__(self):
        return f"SequenceDfao({self.name!r}, {self.system.name}, states={self.dfa.n_states})"

    @property
    def n_states(self) -> int:
        return self.dfa.n_states

    @property
    def values_set(self) -> list[int]:
        return sorted(set(self.outputs.tolist()))

    def eval_digits(self, digits: Sequence[int]) -> int:
        return int(self.outputs[self.dfa.run(digits)])

    def __getitem__(self, n: int) -> int:
        if n < self._prefix.size:
            return int(self._prefix[n])
        return self.eval_digits(self.system.encode(n))

    def prefix(self, length: int) -> np.ndarray:
        """``X[0:length]`` as an int array, computed by enumerating valid words."""
        if self._prefix.size < length:
            self._prefix = self._enumerate(max(length, 2 * self._prefix.size))
        return self._prefix[:length]

    def _enumerate(self, length: int) -> np.ndarray:
        # valid words of a fixed length in lex order represent 0, 1, 2, ... in order
        val = self.system.validity
        vs = np.array([val.initial])
        ds = np.array([self.dfa.initial])
        r = self.system.radix
        while vs.size < length:
            nv = val.delta[vs][:, :r].ravel()
            nd = self.dfa.delta[ds][:, :r].ravel()
            ok = val.accepting[nv]
            vs, ds = nv[ok], nd[ok]
        return self.outputs[ds[:length]]

    def to_text(self) -> str:
        extras = ["outputs" + "".join(f" {q}:{o}" for q, o in enumerate(self.outputs.tolist())),
                  f"system {self.system.name}"]
        return to_text(self.dfa, extras)

    @classmethod
    def from_text(cls, text: str, system: NumerationSystem | None = None, name: str = "custom"):
        dfa, extras = from_text(text)
        if "outputs" not in extras:
            raise ValueError("DFAO file needs an 'outputs' line")
        outputs = [0] * dfa.n_states
        for tok in extras["outputs"][0]:
            q, o = tok.split(":")
            outputs[int(q)] = int(o)
        if system is None:
            if "system" not in extras:
                raise ValueError("no numeration system given")
            system = by_name(extras["system"][0][-1])
        return cls(name, system, dfa, outputs)


def eval_sequence(X: SequenceDfao, n: int) -> int:
    return X[n]


def value_relation(X: SequenceDfao, Y: SequenceDfao, mode: str = "eq") -> CompleteDfa:
    """Two-track automaton for X[u] = Y[v] (``eq``) or X[u] != Y[v] (``neq``)."""
    if X.system != Y.system:
        raise ValueError("sequences use different numeration systems")
    if mode not in ("eq", "neq"):
        raise ValueError(f"unknown mode {mode!r}")
    r = X.system.radix
    al = TupleAlphabet((r, r))
    nx, ny = X.n_states, Y.n_states
    d = al.digits
    delta = (X.dfa.delta[:, d[:, 0]][:, None, :] * ny + Y.dfa.delta[:, d[:, 1]][None, :, :])
    delta = delta.reshape(nx * ny, al.size)
    same = (X.outputs[:, None] == Y.outputs[None, :]).ravel()
    acc = same if mode == "eq" else ~same
    init = X.dfa.initial * ny + Y.dfa.initial
    rel = CompleteDfa(al, delta, acc, init)
    spec = TrackSystemSpec.uniform(X.system, 2)
    return minimize(intersect_all([rel, spec.validity()]))


def value_is(X: SequenceDfao, value: int) -> CompleteDfa:
    """One-track automaton for X[n] = value on valid representations."""
    rel = X.dfa.with_accepting(X.outputs == value)
    return minimize(intersect_all([rel, X.system.validity]))


# -- built-ins --------------------------------------------------------------------

def thue_morse() -> SequenceDfao:
    al = TupleAlphabet((2,))
    dfa = CompleteDfa(al, [[0, 1], [1, 0]], [False, True])
    return SequenceDfao("thue-morse", base(2), dfa, [0, 1])


def baum_sweet() -> SequenceDfao:
    # start, even zero-run, odd zero-run, dead; b(0) = 1
    al = TupleAlphabet((2,))
    dfa = CompleteDfa(al, [[0, 1], [2, 1], [1, 3], [3, 3]], [True, True, False, False])
    return SequenceDfao("baum-sweet", base(2), dfa, [1, 1, 0, 0])


def fibonacci_word() -> SequenceDfao:
    # output = last digit of the Zeckendorf representation
    al = TupleAlphabet((2,))
    dfa = CompleteDfa(al, [[0, 1], [0, 2], [2, 2]], [False, True, False])
    return SequenceDfao("fibonacci-word", zeckendorf(), dfa, [0, 1, 0])


def tribonacci_word() -> SequenceDfao:
    # output = number of trailing 1s of the Tribonacci representation
    al = TupleAlphabet((2,))
    dfa = CompleteDfa(al, [[0, 1], [0, 2], [0, 3], [3, 3]], [False, True, True, False])
    return SequenceDfao("tribonacci-word", tribonacci(), dfa, [0, 1, 2, 0])


BUILTINS = {
    "thue-morse": thue_morse,
    "baum-sweet": baum_sweet,
    "fibonacci-word": fibonacci_word,
    "tribonacci-word": tribonacci_word,
}

_SEQ_ALIASES = {"tm": "thue-morse", "fib": "fibonacci-word", "fibonacci": "fibonacci-word",
                "trib": "tribonacci-word", "tribonacci": "tribonacci-word", "bs": "baum-sweet"}

_CACHE: dict[str, SequenceDfao] = {}


def builtin(name: str) -> SequenceDfao:
    key = _SEQ_ALIASES.get(name.lower(), name.lower())
    if key not in BUILTINS:
        raise KeyError(f"unknown sequence {name!r}; choose from {sorted(BUILTINS)}")
    if key not in _CACHE:
        _CACHE[key] = BUILTINS[key]()
    return _CACHE[key]
