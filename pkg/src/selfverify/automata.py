"""Complete deterministic automata over tuple-digit alphabets.

Letters of a :class:`TupleAlphabet` are integers ``0 .. size-1`` in mixed radix
order with track 0 most significant, so iterating letters in increasing order
is the canonical (lexicographic) order used for tie-breaking everywhere.
A word is any sequence of letter indices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, reduce
import operator
from typing import Iterable, Sequence

import numpy as np

Word = tuple[int, ...]


class AlphabetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class TupleAlphabet:
    radices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "radices", tuple(int(r) for r in self.radices))
        if len(self.radices) < 1:
            raise ValueError("alphabet needs at least one track")
        if any(r < 2 for r in self.radices):
            raise ValueError(f"every radix must be >= 2, got {self.radices}")

    @property
    def arity(self) -> int:
        return len(self.radices)

    @cached_property
    def size(self) -> int:
        return reduce(operator.mul, self.radices, 1)

    @cached_property
    def strides(self) -> tuple[int, ...]:
        out = []
        acc = 1
        for r in reversed(self.radices):
            out.append(acc)
            acc *= r
        return tuple(reversed(out))

    @cached_property
    def digits(self) -> np.ndarray:
        """``digits[letter, track]`` for every letter."""
        idx = np.arange(self.size)
        cols = [(idx // s) % r for s, r in zip(self.strides, self.radices)]
        out = np.stack(cols, axis=1).astype(np.int64)
        out.flags.writeable = False
        return out

    def letter(self, digits: Sequence[int]) -> int:
        if len(digits) != self.arity:
            raise ValueError("digit tuple has wrong arity")
        return sum(int(d) * s for d, s in zip(digits, self.strides))

    def letter_digits(self, letter: int) -> tuple[int, ...]:
        return tuple(int(d) for d in self.digits[letter])

    def word(self, digit_tuples: Iterable[Sequence[int]]) -> Word:
        return tuple(self.letter(t) for t in digit_tuples)

    def word_digits(self, word: Sequence[int]) -> list[tuple[int, ...]]:
        return [self.letter_digits(c) for c in word]

    def tracks(self, word: Sequence[int]) -> list[list[int]]:
        """Split a word into per-track digit lists."""
        if not word:
            return [[] for _ in self.radices]
        d = self.digits[np.asarray(word, dtype=np.int64)]
        return [d[:, k].tolist() for k in range(self.arity)]

    def sub(self, tracks: Sequence[int]) -> "TupleAlphabet":
        return TupleAlphabet(tuple(self.radices[t] for t in tracks))

    def projection_map(self, tracks: Sequence[int]) -> np.ndarray:
        """Map each letter to the letter of ``self.sub(tracks)`` reading those tracks."""
        sub = self.sub(tracks)
        out = np.zeros(self.size, dtype=np.int64)
        for t, s in zip(tracks, sub.strides):
            out += self.digits[:, t] * s
        return out

    @cached_property
    def zero(self) -> int:
        return 0


class CompleteDfa:
    """Immutable complete DFA; ``delta[state, letter]`` is total."""

    __slots__ = ("alphabet", "delta", "accepting", "initial")

    def __init__(self, alphabet: TupleAlphabet, delta, accepting, initial: int = 0):
        delta = np.array(delta, dtype=np.int32, copy=True)
        accepting = np.array(accepting, dtype=bool, copy=True)
        if delta.ndim != 2 or delta.shape[1] != alphabet.size:
            raise ValueError(f"delta must have shape (n, {alphabet.size}), got {delta.shape}")
        n = delta.shape[0]
        if n == 0:
            raise ValueError("a complete DFA needs at least one state")
        if accepting.shape != (n,):
            raise ValueError("accepting mask has wrong length")
        if delta.size and (delta.min() < 0 or delta.max() >= n):
            raise ValueError("transition target out of range")
        if not 0 <= initial < n:
            raise ValueError("initial state out of range")
        delta.flags.writeable = False
        accepting.flags.writeable = False
        self.alphabet = alphabet
        self.delta = delta
        self.accepting = accepting
        self.initial = int(initial)

    @property
    def n_states(self) -> int:
        return self.delta.shape[0]

    def __len__(self) -> int:
        return self.n_states

    def __repr__(self) -> str:
        return (f"CompleteDfa(radices={self.alphabet.radices}, states={self.n_states}, "
                f"accepting={int(self.accepting.sum())})")

    def run(self, word: Sequence[int], start: int | None = None) -> int:
        q = self.initial if start is None else start
        d = self.delta
        for c in word:
            q = d[q, c]
        return int(q)

    def accepts(self, word: Sequence[int]) -> bool:
        return bool(self.accepting[self.run(word)])

    def accepts_digits(self, digit_tuples: Iterable[Sequence[int]]) -> bool:
        return self.accepts(self.alphabet.word(digit_tuples))

    def with_accepting(self, accepting) -> "CompleteDfa":
        return CompleteDfa(self.alphabet, self.delta, accepting, self.initial)

    @classmethod
    def universal(cls, alphabet: TupleAlphabet, accept: bool = True) -> "CompleteDfa":
        return cls(alphabet, np.zeros((1, alphabet.size), dtype=np.int32), [accept])

    @classmethod
    def from_function(cls, alphabet: TupleAlphabet, n_states: int, step, accepting,
                      initial: int = 0) -> "CompleteDfa":
        """Build from ``step(state, digits) -> state`` over states ``0..n_states-1``."""
        delta = np.empty((n_states, alphabet.size), dtype=np.int32)
        for q in range(n_states):
            for c in range(alphabet.size):
                delta[q, c] = step(q, alphabet.letter_digits(c))
        acc = [bool(accepting(q)) for q in range(n_states)]
        return canonical(cls(alphabet, delta, acc, initial))


def _require_same(a: CompleteDfa, b: CompleteDfa) -> None:
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch(f"alphabets differ: {a.alphabet.radices} vs {b.alphabet.radices}")


def canonical(a: CompleteDfa) -> CompleteDfa:
    """Renumber states in BFS discovery order and drop unreachable ones."""
    order = _bfs_order(a.delta, a.initial)
    if len(order) == a.n_states and np.array_equal(order, np.arange(a.n_states)) and a.initial == 0:
        return a
    remap = np.full(a.n_states, -1, dtype=np.int64)
    remap[order] = np.arange(len(order))
    return CompleteDfa(a.alphabet, remap[a.delta[order]], a.accepting[order], 0)


def _bfs_order(delta: np.ndarray, initial: int) -> np.ndarray:
    seen = np.zeros(delta.shape[0], dtype=bool)
    seen[initial] = True
    order = [np.array([initial])]
    frontier = order[0]
    while frontier.size:
        nxt = delta[frontier].ravel()
        uniq, first = np.unique(nxt, return_index=True)
        uniq = uniq[np.argsort(first, kind="stable")]
        uniq = uniq[~seen[uniq]]
        seen[uniq] = True
        if uniq.size:
            order.append(uniq)
        frontier = uniq
    return np.concatenate(order)


# -- products -----------------------------------------------------------------

_MODES = {
    "and": np.logical_and,
    "or": np.logical_or,
    "xor": np.logical_xor,
    "and-not": lambda x, y: np.logical_and(x, ~y),
}


class _Explorer:
    """Level-synchronous BFS over the synchronous product of several DFAs.

    States are tuples of component states packed into one int64 key; new states
    are numbered in order of their length-lexicographically least access word.
    """

    def __init__(self, dfas: Sequence[CompleteDfa]):
        if not dfas:
            raise ValueError("need at least one automaton")
        for d in dfas[1:]:
            _require_same(dfas[0], d)
        self.dfas = list(dfas)
        self.sizes = [d.n_states for d in dfas]
        mult = []
        acc = 1
        for s in self.sizes:
            mult.append(acc)
            acc *= s
        if acc >= 2 ** 62:
            raise OverflowError("product state space too large to index")
        self.mult = mult
        self.L = dfas[0].alphabet.size

    def encode(self, comps: Sequence[np.ndarray]) -> np.ndarray:
        key = np.zeros(comps[0].shape, dtype=np.int64)
        for c, m in zip(comps, self.mult):
            key += c.astype(np.int64) * m
        return key

    def decode(self, keys: np.ndarray) -> list[np.ndarray]:
        return [(keys // m) % s for m, s in zip(self.mult, self.sizes)]

    def accepting(self, comps: Sequence[np.ndarray]) -> np.ndarray:
        out = np.ones(comps[0].shape, dtype=bool)
        for d, c in zip(self.dfas, comps):
            out &= d.accepting[c]
        return out

    def successors(self, comps: Sequence[np.ndarray]) -> np.ndarray:
        nxt = [d.delta[c] for d, c in zip(self.dfas, comps)]
        return self.encode(nxt)

    def explore(self, stop_on_accept: bool = False, limit: int | None = None):
        """Yield levels as ``(keys, parent_index, letter)`` arrays."""
        init = self.encode([np.array([d.initial]) for d in self.dfas])
        seen = init.copy()
        levels = [(init, np.array([-1]), np.array([-1]))]
        total = 1
        frontier = init
        base = 0
        while frontier.size:
            if stop_on_accept and self.accepting(self.decode(levels[-1][0])).any():
                break
            nxt = self.successors(self.decode(frontier)).ravel()
            uniq, first = np.unique(nxt, return_index=True)
            order = np.argsort(first, kind="stable")
            uniq, first = uniq[order], first[order]
            pos = np.searchsorted(seen, uniq)
            pos_c = np.minimum(pos, seen.size - 1)
            new = seen[pos_c] != uniq
            uniq, first = uniq[new], first[new]
            if not uniq.size:
                break
            parents = base + first // self.L
            letters = first % self.L
            base += frontier.size
            levels.append((uniq, parents, letters))
            total += uniq.size
            if limit is not None and total > limit:
                raise BudgetExceeded(f"product exceeded {limit} states")
            seen = np.union1d(seen, uniq)
            frontier = uniq
        return levels


class BudgetExceeded(RuntimeError):
    pass


def product_all(dfas: Sequence[CompleteDfa], combine=None, limit: int | None = None) -> CompleteDfa:
    """Reachable synchronous product; accepting iff ``combine(masks)`` (default: all)."""
    if len(dfas) == 1 and combine is None:
        return dfas[0]
    ex = _Explorer(dfas)
    levels = ex.explore(limit=limit)
    keys = np.concatenate([lv[0] for lv in levels])
    n = keys.size
    sort = np.argsort(keys)
    sorted_keys = keys[sort]
    delta = np.empty((n, ex.L), dtype=np.int32)
    chunk = max(1, 2_000_000 // max(ex.L, 1))
    for lo in range(0, n, chunk):
        comps = ex.decode(keys[lo:lo + chunk])
        nxt = ex.successors(comps)
        delta[lo:lo + chunk] = sort[np.searchsorted(sorted_keys, nxt)]
    comps = ex.decode(keys)
    if combine is None:
        acc = ex.accepting(comps)
    else:
        acc = combine([d.accepting[c] for d, c in zip(ex.dfas, comps)])
    return CompleteDfa(dfas[0].alphabet, delta, acc, 0)


def product(a: CompleteDfa, b: CompleteDfa, mode: str = "and") -> CompleteDfa:
    """Boolean combination of two languages; ``mode`` in and, or, xor, and-not."""
    _require_same(a, b)
    try:
        op = _MODES[mode]
    except KeyError:
        raise ValueError(f"unknown product mode {mode!r}") from None
    return product_all([a, b], combine=lambda m: op(m[0], m[1]))


def complement(a: CompleteDfa) -> CompleteDfa:
    return CompleteDfa(a.alphabet, a.delta, ~a.accepting, a.initial)


def intersect_all(dfas: Sequence[CompleteDfa]) -> CompleteDfa:
    return product_all(dfas)


# -- search -------------------------------------------------------------------

def _rebuild(levels, last_level: int, idx_in_level: int) -> Word:
    starts = np.cumsum([0] + [lv[0].size for lv in levels])
    word = []
    lvl, i = last_level, idx_in_level
    while lvl > 0:
        _, parents, letters = levels[lvl]
        word.append(int(letters[i]))
        g = int(parents[i])
        lvl = int(np.searchsorted(starts, g, side="right") - 1)
        i = g - int(starts[lvl])
    return tuple(reversed(word))


def shortest_accepted_all(dfas: Sequence[CompleteDfa]) -> Word | None:
    """Length-lex least word accepted by every automaton, explored on the fly."""
    ex = _Explorer(dfas)
    levels = ex.explore(stop_on_accept=True)
    for lvl in range(len(levels)):
        acc = ex.accepting(ex.decode(levels[lvl][0]))
        if acc.any():
            return _rebuild(levels, lvl, int(np.argmax(acc)))
    return None


def shortest_accepted(a: CompleteDfa) -> Word | None:
    """A shortest accepted word, ties broken by canonical letter order; None if empty."""
    return shortest_accepted_all([a])


def is_empty(a: CompleteDfa) -> bool:
    return not a.accepting[_bfs_order(a.delta, a.initial)].any()


def equivalent(a: CompleteDfa, b: CompleteDfa) -> Word | None:
    """None when the languages agree, else a shortest word in the symmetric difference."""
    _require_same(a, b)
    return shortest_accepted(product(a, b, "xor"))


# -- minimization -------------------------------------------------------------

def minimize(a: CompleteDfa) -> CompleteDfa:
    """Hopcroft partition refinement; result is canonically numbered."""
    a = canonical(a)
    n, L = a.delta.shape
    acc = a.accepting
    if acc.all() or not acc.any():
        return CompleteDfa(a.alphabet, np.zeros((1, L), dtype=np.int32), [bool(acc[0])])

    # predecessor lists in CSR form, one per letter
    pred_order = []
    pred_off = []
    for c in range(L):
        col = a.delta[:, c]
        pred_order.append(np.argsort(col, kind="stable"))
        pred_off.append(np.concatenate([[0], np.cumsum(np.bincount(col, minlength=n))]))

    block_of = np.where(acc, 0, 1).astype(np.int64)
    blocks = [np.flatnonzero(acc), np.flatnonzero(~acc)]
    small = 0 if blocks[0].size <= blocks[1].size else 1
    pending = deque((small, c) for c in range(L))
    in_pending = {(small, c) for c in range(L)}
    mark = np.zeros(n, dtype=bool)

    while pending:
        key = pending.popleft()
        in_pending.discard(key)
        B, c = key
        targets = blocks[B]
        off = pred_off[c]
        starts = off[targets]
        lens = off[targets + 1] - starts
        total = int(lens.sum())
        if total == 0:
            continue
        # gather all predecessors of the block under letter c
        rep = np.repeat(starts - np.concatenate([[0], np.cumsum(lens)[:-1]]), lens)
        X = pred_order[c][np.arange(total) + rep]
        bl = block_of[X]
        touched, counts = np.unique(bl, return_counts=True)
        for Y, cnt in zip(touched.tolist(), counts.tolist()):
            if cnt == blocks[Y].size:
                continue
            members = X[bl == Y]
            mark[members] = True
            rest = blocks[Y][~mark[blocks[Y]]]
            mark[members] = False
            Z = len(blocks)
            blocks[Y] = rest
            blocks.append(members)
            block_of[members] = Z
            for d in range(L):
                if (Y, d) in in_pending:
                    pending.append((Z, d))
                    in_pending.add((Z, d))
                else:
                    pick = Z if members.size <= rest.size else Y
                    pending.append((pick, d))
                    in_pending.add((pick, d))

    reps = np.array([b[0] for b in blocks])
    delta = block_of[a.delta[reps]]
    accepting = acc[reps]
    return canonical(CompleteDfa(a.alphabet, delta, accepting, int(block_of[a.initial])))


# -- trimming -----------------------------------------------------------------

@dataclass(frozen=True)
class TrimmedDfa:
    """A DFA with dead states removed; missing transitions are ``-1``."""

    alphabet: TupleAlphabet
    delta: np.ndarray
    accepting: np.ndarray
    initial: int
    removed: int

    @property
    def n_states(self) -> int:
        return self.delta.shape[0]


def live_states(a: CompleteDfa) -> np.ndarray:
    """Mask of states from which an accepting state is reachable."""
    n = a.n_states
    live = a.accepting.copy()
    # backward fixpoint over the reverse graph
    src = np.repeat(np.arange(n), a.alphabet.size)
    dst = a.delta.ravel()
    while True:
        new = live.copy()
        new[src[live[dst]]] = True
        if (new == live).all():
            return live
        live = new


def trim(a: CompleteDfa) -> TrimmedDfa:
    """Remove states that cannot reach acceptance (the initial state is always kept)."""
    live = live_states(a)
    live[a.initial] = True
    keep = np.flatnonzero(live)
    remap = np.full(a.n_states, -1, dtype=np.int64)
    remap[keep] = np.arange(keep.size)
    delta = remap[a.delta[keep]]
    return TrimmedDfa(a.alphabet, delta, a.accepting[keep].copy(), int(remap[a.initial]),
                      a.n_states - keep.size)


# -- embedding, projection, determinization -----------------------------------

def embed(a: CompleteDfa, wiring: Sequence[int], alphabet: TupleAlphabet) -> CompleteDfa:
    """Cylindrify ``a``: its track k reads track ``wiring[k]`` of ``alphabet``."""
    wiring = tuple(int(w) for w in wiring)
    if len(wiring) != a.alphabet.arity:
        raise ValueError("wiring length must equal the automaton's arity")
    if len(set(wiring)) != len(wiring):
        raise ValueError("wiring must be injective")
    if any(w < 0 or w >= alphabet.arity for w in wiring):
        raise ValueError("wiring target out of range")
    for k, w in enumerate(wiring):
        if a.alphabet.radices[k] != alphabet.radices[w]:
            raise AlphabetMismatch(
                f"track {k} has radix {a.alphabet.radices[k]} but target track {w} "
                f"has radix {alphabet.radices[w]}")
    if wiring == tuple(range(alphabet.arity)):
        return a
    proj = alphabet.projection_map(wiring)
    return CompleteDfa(alphabet, a.delta[:, proj], a.accepting, a.initial)


@dataclass(frozen=True)
class Nfa:
    """NFA with successor sets stored as int bitmasks: ``succ[state][letter]``."""

    alphabet: TupleAlphabet
    n_states: int
    initial: int  # bitmask
    accepting: int  # bitmask
    succ: tuple[tuple[int, ...], ...] = field(repr=False)

    def step(self, states: int, letter: int) -> int:
        out = 0
        s = states
        while s:
            low = s & -s
            out |= self.succ[low.bit_length() - 1][letter]
            s ^= low
        return out

    def accepts(self, word: Sequence[int]) -> bool:
        cur = self.initial
        for c in word:
            cur = self.step(cur, c)
        return bool(cur & self.accepting)


def _mask(states: Iterable[int]) -> int:
    m = 0
    for s in states:
        m |= 1 << int(s)
    return m


def project(a: CompleteDfa, keep: Sequence[int], leading_zeros: bool = False) -> Nfa:
    """Existentially quantify away every track not in ``keep``.

    With ``leading_zeros`` the initial set is closed under letters that are zero
    on the kept tracks, so witnesses longer than the kept representation count.
    """
    keep = tuple(int(k) for k in keep)
    if not keep:
        raise ValueError("keep set must be nonempty")
    if len(set(keep)) != len(keep) or any(k < 0 or k >= a.alphabet.arity for k in keep):
        raise ValueError("invalid keep tracks")
    if len(keep) >= a.alphabet.arity:
        raise ValueError("keep must be a proper subset of the tracks")
    sub = a.alphabet.sub(keep)
    proj = a.alphabet.projection_map(keep)
    succ = []
    for q in range(a.n_states):
        row = [0] * sub.size
        for c in range(a.alphabet.size):
            row[proj[c]] |= 1 << int(a.delta[q, c])
        succ.append(tuple(row))
    init = 1 << a.initial
    if leading_zeros:
        zero_letters = np.flatnonzero(proj == 0)
        reached = {a.initial}
        todo = [a.initial]
        while todo:
            q = todo.pop()
            for t in a.delta[q, zero_letters].tolist():
                if t not in reached:
                    reached.add(t)
                    todo.append(t)
        init = _mask(reached)
    return Nfa(sub, a.n_states, init, _mask(np.flatnonzero(a.accepting)), tuple(succ))


def determinize(n: Nfa, limit: int | None = None) -> CompleteDfa:
    """Subset construction over reachable subsets (the empty set becomes a sink)."""
    index = {n.initial: 0}
    order = [n.initial]
    rows = []
    i = 0
    while i < len(order):
        cur = order[i]
        row = []
        for c in range(n.alphabet.size):
            nxt = n.step(cur, c)
            j = index.get(nxt)
            if j is None:
                j = len(order)
                index[nxt] = j
                order.append(nxt)
                if limit is not None and len(order) > limit:
                    raise BudgetExceeded(f"determinization exceeded {limit} states")
            row.append(j)
        rows.append(row)
        i += 1
    acc = [bool(s & n.accepting) for s in order]
    return CompleteDfa(n.alphabet, np.array(rows, dtype=np.int32).reshape(len(order), n.alphabet.size), acc, 0)


# -- text formats -------------------------------------------------------------

def to_text(a: CompleteDfa, extras: Sequence[str] = ()) -> str:
    """Canonical text format; ``extras`` are appended verbatim as extra lines."""
    al = a.alphabet
    lines = [" ".join(["dfa", str(al.arity), *map(str, al.radices), str(a.n_states), str(a.initial)])]
    lines.append("accepting" + "".join(f" {q}" for q in np.flatnonzero(a.accepting)))
    digit_strs = [" ".join(map(str, al.letter_digits(c))) for c in range(al.size)]
    for q in range(a.n_states):
        row = a.delta[q]
        for c in range(al.size):
            lines.append(f"{q} {digit_strs[c]} {row[c]}")
    lines.extend(extras)
    return "\n".join(lines) + "\n"


class FormatError(ValueError):
    pass


def from_text(text: str) -> tuple[CompleteDfa, dict[str, list[list[str]]]]:
    """Parse the canonical format; keyword lines after the header are returned as extras."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2:
        raise FormatError("expected header and accepting lines")
    head = lines[0].split()
    try:
        if head[0] != "dfa":
            raise FormatError("header must start with 'dfa'")
        arity = int(head[1])
        radices = tuple(int(x) for x in head[2:2 + arity])
        n_states, initial = int(head[2 + arity]), int(head[3 + arity])
        if len(head) != 4 + arity:
            raise FormatError("malformed header")
        al = TupleAlphabet(radices)
        acc_tok = lines[1].split()
        if acc_tok[0] != "accepting":
            raise FormatError("second line must start with 'accepting'")
        accepting = np.zeros(n_states, dtype=bool)
        for tok in acc_tok[1:]:
            accepting[int(tok)] = True
        delta = np.full((n_states, al.size), -1, dtype=np.int64)
        extras: dict[str, list[list[str]]] = {}
        for ln in lines[2:]:
            tok = ln.split()
            if not tok[0].lstrip("-").isdigit():
                extras.setdefault(tok[0], []).append(tok[1:])
                continue
            if len(tok) != arity + 2:
                raise FormatError(f"bad transition line: {ln!r}")
            q = int(tok[0])
            letter = al.letter([int(x) for x in tok[1:1 + arity]])
            if any(not 0 <= int(x) < r for x, r in zip(tok[1:1 + arity], radices)):
                raise FormatError(f"digit out of range: {ln!r}")
            delta[q, letter] = int(tok[-1])
    except (IndexError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(str(exc)) from exc
    if (delta < 0).any():
        raise FormatError("transition function is not total")
    return CompleteDfa(al, delta, accepting, initial), extras


def to_dot(a: CompleteDfa, name: str = "A", outputs=None) -> str:
    al = a.alphabet
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  init [shape=point];']
    for q in range(a.n_states):
        shape = "doublecircle" if a.accepting[q] else "circle"
        label = str(q) if outputs is None else f"{q}/{outputs[q]}"
        lines.append(f'  {q} [shape={shape}, label="{label}"];')
    lines.append(f"  init -> {a.initial};")
    for q in range(a.n_states):
        edges: dict[int, list[str]] = {}
        for c in range(al.size):
            edges.setdefault(int(a.delta[q, c]), []).append(
                "[" + ",".join(map(str, al.letter_digits(c))) + "]")
        for t, labels in edges.items():
            lines.append(f'  {q} -> {t} [label="{" ".join(labels)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_walnut(a: CompleteDfa, systems: Sequence[str]) -> str:
    """Best-effort Walnut-style text of the trimmed automaton."""
    t = trim(a)
    al = a.alphabet
    # Walnut expects the initial state to be numbered 0
    order = [t.initial] + [q for q in range(t.n_states) if q != t.initial]
    new = {q: i for i, q in enumerate(order)}
    lines = [" ".join(systems), ""]
    for q in order:
        lines.append(f"{new[q]} {int(t.accepting[q])}")
        for c in range(al.size):
            dst = int(t.delta[q, c])
            if dst >= 0:
                lines.append(" ".join(map(str, al.letter_digits(c))) + f" -> {new[dst]}")
        lines.append("")
    return "\n".join(lines)
