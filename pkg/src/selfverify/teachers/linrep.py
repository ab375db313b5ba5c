"""Linear representations of synchronized sequences and their prefix sums.

For a synchronized automaton B over tracks (n, x) the representation keeps,
per state of B, the number of paths reaching it plus the x-value read along
them.  The x-value is accumulated with the place-value recurrence of the
x-system, so one accumulator entry suffices for base k and m entries for an
order-m recurrence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..automata import CompleteDfa, intersect_all, trim
from ..numeration import NumerationSystem, TrackSystemSpec


class NotSynchronized(ValueError):
    """B accepts zero or several x for some n."""


@dataclass
class LinearRepresentation:
    v: np.ndarray  # shape (r,)
    gamma: np.ndarray  # shape (radix, r, r)
    w: np.ndarray  # shape (r,)
    system: NumerationSystem

    @property
    def rank(self) -> int:
        return int(self.v.shape[0])

    def evaluate_digits(self, digits: Sequence[int]) -> int:
        x = self.v
        for d in digits:
            x = x @ self.gamma[d]
        return int(x @ self.w)

    def __call__(self, n: int, leading_zeros: int = 0) -> int:
        return self.evaluate_digits([0] * leading_zeros + self.system.encode(n))

    def evaluate_many(self, n_values: Sequence[int], leading_zeros: int = 0) -> np.ndarray:
        """Vectorized evaluation: words are padded to a common length with zeros."""
        encs = [self.system.encode(int(n)) for n in n_values]
        L = max((len(e) for e in encs), default=0) + leading_zeros
        digits = np.zeros((len(encs), L), dtype=np.int64)
        for k, e in enumerate(encs):
            if e:
                digits[k, L - len(e):] = e
        X = np.tile(self.v, (len(encs), 1))
        for pos in range(L):
            col = digits[:, pos]
            for d in np.unique(col):
                mask = col == d
                X[mask] = X[mask] @ self.gamma[d]
        return X @ self.w


def _accumulating_rep(B: CompleteDfa, spec: TrackSystemSpec):
    """(v, gamma, w_value, w_count) before padding; blocks of size 1+m per live state."""
    sn, sx = spec.systems
    if B.alphabet != spec.alphabet:
        raise ValueError("B must read (n, x) over the given systems")
    P, q = sx.accumulator()
    m = P.shape[0]
    blk = 1 + m
    # invalid n-words must contribute nothing to prefix sums
    t = trim(intersect_all([B, spec.validity()]))
    delta = t.delta
    ns = delta.shape[0]
    r = ns * blk
    digits = B.alphabet.digits
    gamma = np.zeros((sn.radix, r, r), dtype=np.int64)
    for s in range(ns):
        for letter in range(B.alphabet.size):
            dst = int(delta[s, letter])
            if dst < 0:
                continue
            d, e = int(digits[letter, 0]), int(digits[letter, 1])
            g = gamma[d]
            a, b = s * blk, dst * blk
            g[a, b] += 1
            g[a, b + 1:b + blk] += e * q
            g[a + 1:a + blk, b + 1:b + blk] += P
    v = np.zeros(r, dtype=np.int64)
    v[t.initial * blk] = 1
    w_val = np.zeros(r, dtype=np.int64)
    w_cnt = np.zeros(r, dtype=np.int64)
    for s in np.flatnonzero(t.accepting):
        w_val[s * blk + 1] = 1
        w_cnt[s * blk] = 1
    return v, gamma, w_val, w_cnt, ns


def build_linear_rep(B: CompleteDfa, spec: TrackSystemSpec, check_upto: int = 256) -> LinearRepresentation:
    """Linear representation of b where B accepts exactly the pairs (n, b(n)).

    The x-track may need more digits than the n-track; prefixing |B| zero
    digits on n covers every such case, so that padding is folded into v.
    Single-valuedness is tested for n < ``check_upto``.
    """
    v, gamma, w_val, w_cnt, ns = _accumulating_rep(B, spec)
    for _ in range(ns):
        v = v @ gamma[0]
    sn = spec.systems[0]
    count = LinearRepresentation(v, gamma, w_cnt, sn)
    if check_upto:
        bad = np.flatnonzero(count.evaluate_many(range(check_upto)) != 1)
        if bad.size:
            n = int(bad[0])
            raise NotSynchronized(f"B accepts {count(n)} values for n={n}")
    return LinearRepresentation(v, gamma, w_val, sn)


def prefix_sum_rep(rep: LinearRepresentation) -> LinearRepresentation:
    """Representation of c(n) = sum_{i<n} b(i).

    Same-length words below rep(n) in lexicographic order are exactly the
    representations of 0..n-1 plus invalid words, and invalid words evaluate
    to zero because B never accepts them.
    """
    r = rep.rank
    G = rep.gamma
    radix = G.shape[0]
    M = G.sum(axis=0)
    out = np.zeros((radix, 2 * r, 2 * r), dtype=np.int64)
    below = np.zeros((r, r), dtype=np.int64)
    for d in range(radix):
        out[d, :r, :r] = G[d]
        out[d, :r, r:] = below
        out[d, r:, r:] = M
        below = below + G[d]
    v = np.concatenate([rep.v, np.zeros(r, dtype=np.int64)])
    w = np.concatenate([np.zeros(r, dtype=np.int64), rep.w])
    return LinearRepresentation(v, out, w, rep.system)
