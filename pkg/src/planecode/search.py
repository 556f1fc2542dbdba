"""Weight spectra of C_p: exhaustive Gray-order enumeration, certified
low-weight enumeration over information-set windows (Brouwer-Zimmermann),
the MacWilliams transform, and gap bookkeeping.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

from . import fplinalg as fl

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**7
# Default effort: the largest radius whose total candidate count stays below this.
DEFAULT_CANDIDATE_BUDGET = 3 * 10**8
# Cap on floats materialized per enumeration block.
BLOCK_ELEMS = 1 << 22


# --------------------------------------------------------------------------
# weight enumerators


@dataclass
class WeightEnumerator:
    counts: dict[int, int]
    n: int
    q: int
    dim: int

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def complete(self) -> bool:
        return self.total == self.q**self.dim

    def weights(self) -> list[int]:
        return sorted(w for w, c in self.counts.items() if c)

    def min_weight(self) -> int | None:
        nz = [w for w in self.weights() if w > 0]
        return nz[0] if nz else None

    def to_dict(self) -> dict:
        return {"n": self.n, "q": self.q, "dim": self.dim,
                "counts": {str(w): self.counts[w] for w in sorted(self.counts)}}


def gray_steps(q: int, k: int):
    """Row index changed at each step of the cyclic modular q-ary Gray code.

    Digit j of the Gray word is advanced by +1 mod q at each step; after
    q**k steps every message has been visited once and the walk is back at 0.
    """
    digits = [0] * k
    for _ in range(q**k):
        j = 0
        while j < k - 1 and digits[j] == q - 1:
            digits[j] = 0
            j += 1
        digits[j] = (digits[j] + 1) % q
        yield j


def gray_walk(G, p: int):
    """Yield (row, word, weight) after each Gray step; weight is updated incrementally."""
    G = np.asarray(G, dtype=np.int64) % p
    k, n = G.shape
    supports = [np.flatnonzero(row) for row in G]
    word = np.zeros(n, dtype=np.int64)
    wt = 0
    for j in gray_steps(p, k):
        s = supports[j]
        before = np.count_nonzero(word[s])
        word[s] = (word[s] + G[j, s]) % p
        wt += np.count_nonzero(word[s]) - before
        yield j, word, wt


def _blocked_counts(args) -> np.ndarray:
    """Weight histogram of top_value * G[top] + span(G[:top]) for one fixed top digit.

    The low ``inner`` rows are tabulated; the remaining rows below ``top`` are
    walked in Gray order, moving a shared offset one scaled row at a time.
    """
    G, p, inner, top, top_value = args
    k, n = G.shape
    table = np.zeros((1, n), dtype=np.int16)
    for j in range(inner):
        steps = (np.arange(p, dtype=np.int16)[:, None] * G[j]) % p
        table = ((table[None, :, :] + steps[:, None, :]) % p).reshape(-1, n).astype(np.int16)
    offset = (top_value * G[top]) % p if top is not None else np.zeros(n, dtype=np.int64)
    outer = (top if top is not None else k) - inner
    hist = np.zeros(n + 1, dtype=np.int64)

    def add(off):
        target = (-off) % p
        zeros = (table == target[None, :]).sum(axis=1)
        hist[:] += np.bincount(n - zeros, minlength=n + 1)

    add(offset)
    if outer > 0:
        steps = gray_steps(p, outer)
        for _ in range(p**outer - 1):
            j = next(steps)
            offset = (offset + G[inner + j]) % p
            add(offset)
    return hist


def exhaustive_spectrum(G, p: int, budget: int = DEFAULT_BUDGET, workers: int = 1,
                        inner: int | None = None) -> WeightEnumerator:
    """Exact weight enumerator of the row space of G (rows must be independent)."""
    G = fl.row_basis(G, p)
    k, n = G.shape
    if p**k > budget:
        raise ValueError(
            f"{p}^{k} codewords exceed the budget {budget}; enumerate the dual code and "
            "apply macwilliams, or use bz_low_weight for low weights")
    if inner is None and p**k <= 50_000:
        counts: dict[int, int] = {}
        for _, _, wt in gray_walk(G, p):
            counts[wt] = counts.get(wt, 0) + 1
        return WeightEnumerator(dict(sorted(counts.items())), n, p, k)
    if inner is None:
        inner = min(k, max(1, int(math.log(2_000_000, p))))
    inner = min(inner, k)
    if inner == k:
        tasks = [(G, p, inner, None, 0)]
    else:
        top = k - 1
        tasks = [(G, p, inner, top, v) for v in range(p)]
    hist = np.zeros(n + 1, dtype=np.int64)
    for h in _map(_blocked_counts, tasks, workers):
        hist += h
    counts = {int(w): int(c) for w, c in enumerate(hist) if c}
    return WeightEnumerator(counts, n, p, k)


def krawtchouk(j: int, i: int, n: int, q: int) -> int:
    return sum((-1)**s * (q - 1)**(j - s) * math.comb(i, s) * math.comb(n - i, j - s)
               for s in range(0, j + 1))


def macwilliams(W: WeightEnumerator, dual_dim: int) -> WeightEnumerator:
    """Weight enumerator of the dual code, in exact integer arithmetic."""
    if not W.complete:
        raise ValueError("macwilliams needs a complete enumerator")
    if dual_dim != W.n - W.dim:
        raise ValueError(f"dual dimension {dual_dim} != n - dim = {W.n - W.dim}")
    size = W.q**W.dim
    out = {}
    for j in range(W.n + 1):
        s = sum(c * krawtchouk(j, i, W.n, W.q) for i, c in W.counts.items())
        b, rem = divmod(s, size)
        if rem:
            raise ArithmeticError(f"non-integer dual count at weight {j}: inconsistent enumerator")
        if b:
            out[j] = b
    res = WeightEnumerator(out, W.n, W.q, dual_dim)
    if not res.complete:
        raise ArithmeticError("dual enumerator does not sum to q^dual_dim")
    return res


# --------------------------------------------------------------------------
# certified low-weight enumeration


@dataclass
class Window:
    columns: tuple[int, ...]
    rank: int
    generator: np.ndarray = field(repr=False)


def information_windows(G, p: int) -> list[Window]:
    """Greedy disjoint windows, left to right: each window is the pivot set of
    the remaining columns; its generator is systematic there."""
    G = fl.row_basis(G, p)
    k, n = G.shape
    remaining = list(range(n))
    windows = []
    while remaining:
        order = remaining + [c for c in range(n) if c not in set(remaining)]
        R, r, piv = fl.rref(G[:, order], p)
        if r == 0 or piv[0] >= len(remaining):
            break
        cols = tuple(sorted(order[c] for c in piv if c < len(remaining)))
        gen = np.empty_like(R)
        gen[:, order] = R
        windows.append(Window(cols, len(cols), gen))
        remaining = [c for c in remaining if c not in set(cols)]
    return windows


def weight_lower_bound(ranks, k: int, r: int) -> int:
    return sum(max(0, r + 1 - (k - ri)) for ri in ranks)


def candidates_at(k: int, p: int, t: int) -> int:
    """Scalar-normalized messages of weight exactly t."""
    if t == 0:
        return 1
    return math.comb(k, t) * (p - 1)**(t - 1)


def _coefficients(p: int, t: int) -> np.ndarray:
    tail = list(product(range(1, p), repeat=t - 1))
    tail = np.array(tail, dtype=np.float64).reshape(len(tail), t - 1)
    return np.concatenate([np.ones((tail.shape[0], 1)), tail], axis=1)


def canonical_rows(W: np.ndarray, p: int) -> np.ndarray:
    """Scale each nonzero row so its first nonzero entry is 1."""
    W = np.asarray(W, dtype=np.int64) % p
    if W.size == 0:
        return W
    first = np.argmax(W != 0, axis=1)
    lead = W[np.arange(W.shape[0]), first]
    return (W * fl.inverse_table(p)[lead][:, None]) % p


def _enumerate_task(args):
    """Low-weight words among messages of weight t whose first nonzero row is ``lead``."""
    G, p, wmax, t, lead = args
    k, n = G.shape
    rest = list(combinations(range(lead + 1, k), t - 1))
    rest = np.array(rest, dtype=np.int64).reshape(len(rest), t - 1)
    combos = np.concatenate([np.full((rest.shape[0], 1), lead), rest], axis=1)
    coef = _coefficients(p, t)
    c = coef.shape[0]
    Gf = G.astype(np.float64)
    step = max(1, BLOCK_ELEMS // (c * n))
    found = []
    for s0 in range(0, combos.shape[0], step):
        block = combos[s0:s0 + step]
        s = block.shape[0]
        rows = Gf[block]                                  # (s, t, n)
        words = coef @ rows.transpose(1, 0, 2).reshape(t, s * n)
        words = np.fmod(words, p).reshape(c, s, n)
        wts = np.count_nonzero(words, axis=2)
        hit = np.nonzero((wts <= wmax) & (wts > 0))
        if hit[0].size:
            found.append(words[hit].astype(np.int64))
    if not found:
        return np.zeros((0, n), dtype=np.int64), combos.shape[0] * c
    return canonical_rows(np.concatenate(found), p), combos.shape[0] * c


def _map(fn, tasks, workers: int):
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, tasks))


@dataclass
class LowWeightCensus:
    p: int
    n: int
    k: int
    wmax: int
    classes: np.ndarray
    certified: bool
    bound: int
    radius: int
    window_ranks: tuple[int, ...]
    candidates: int

    @property
    def weights(self) -> np.ndarray:
        return np.count_nonzero(self.classes, axis=1)

    def class_counts(self) -> dict[int, int]:
        w, c = np.unique(self.weights, return_counts=True)
        return {int(a): int(b) for a, b in zip(w, c)}

    def words_of_weight(self, w: int) -> np.ndarray:
        return self.classes[self.weights == w]

    def to_dict(self) -> dict:
        return {
            "p": self.p, "n": self.n, "k": self.k, "wmax": self.wmax,
            "certified": self.certified, "bound": self.bound, "radius": self.radius,
            "window_ranks": list(self.window_ranks), "candidates": self.candidates,
            "class_counts": {str(w): c for w, c in self.class_counts().items()},
            "classes": [" ".join(map(str, row)) for row in self.classes.tolist()],
        }


def sort_classes(W: np.ndarray) -> np.ndarray:
    if W.shape[0] == 0:
        return W
    W = np.unique(W, axis=0)
    wts = np.count_nonzero(W, axis=1)
    keys = [W[:, j] for j in range(W.shape[1] - 1, -1, -1)] + [wts]
    return W[np.lexsort(keys)]


def default_effort(ranks, k: int, p: int, wmax: int,
                   budget: int = DEFAULT_CANDIDATE_BUDGET) -> int:
    """Radius needed to certify wmax, or the largest radius within budget."""
    need = required_radius(ranks, k, wmax)
    r, total = 0, len(ranks)
    while r < need and total + len(ranks) * candidates_at(k, p, r + 1) <= budget:
        r += 1
        total += len(ranks) * candidates_at(k, p, r)
    return r


def bz_low_weight(G, p: int, wmax: int, effort: int | None = None, workers: int = 1) -> LowWeightCensus:
    """All scalar classes of nonzero codewords of weight <= wmax in the row space of G.

    Messages of weight 1, 2, ... are enumerated in every window until the
    window lower bound exceeds wmax (certified) or the radius reaches
    ``effort`` (uncertified). ``effort=None`` picks :func:`default_effort`.
    """
    windows = information_windows(G, p)
    k = windows[0].rank
    if effort is None:
        effort = default_effort([w.rank for w in windows], k, p, wmax)
    n = windows[0].generator.shape[1]
    ranks = tuple(w.rank for w in windows)
    found = [np.zeros((0, n), dtype=np.int64)]
    candidates = 1
    r = 0
    bound = weight_lower_bound(ranks, k, 0)
    while bound <= wmax and r < min(effort, k):
        r += 1
        tasks = [(w.generator, p, wmax, r, lead) for w in windows for lead in range(k - r + 1)]
        for words, count in _map(_enumerate_task, tasks, workers):
            found.append(words)
            candidates += count
        bound = weight_lower_bound(ranks, k, r)
        log.info("radius %d: lower bound %d, %d candidates so far", r, bound, candidates)
    exhausted = r >= k
    certified = bound > wmax or exhausted
    if exhausted:
        bound = max(bound, n + 1)
    classes = sort_classes(np.concatenate(found))
    return LowWeightCensus(p, n, k, wmax, classes, certified, bound, r, ranks, candidates)


def required_radius(ranks, k: int, wmax: int) -> int:
    r = 0
    while weight_lower_bound(ranks, k, r) <= wmax and r < k:
        r += 1
    return r


def cost_estimate(ranks, k: int, p: int, wmax: int) -> dict:
    """Radius and candidate count needed to certify all weights <= wmax."""
    r = required_radius(ranks, k, wmax)
    per_window = sum(candidates_at(k, p, t) for t in range(r + 1))
    return {"wmax": wmax, "radius": r, "windows": len(ranks),
            "candidates": per_window * len(ranks)}


# --------------------------------------------------------------------------
# gaps


@dataclass
class GapReport:
    interval: tuple[int, int]
    status: str  # "certified-gap" | "refuted" | "undecided"
    witness_weights: tuple[int, int] | None = None
    refuting_word: np.ndarray | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        d = {"interval": list(self.interval), "status": self.status}
        if self.witness_weights is not None:
            d["witness_weights"] = list(self.witness_weights)
        if self.refuting_word is not None:
            d["refuting_word"] = " ".join(map(str, self.refuting_word.tolist()))
        return d


def conjectured_gaps(p: int) -> list[tuple[int, int]]:
    """Intervals [kp+2, (k+1)(p+1-k)-1] for 1 <= k <= sqrt(p-2)."""
    if p < 5:
        raise ValueError("the gap conjecture is stated for p >= 5")
    out = []
    k = 1
    while k * k <= p - 2:
        a, b = k * p + 2, (k + 1) * (p + 1 - k) - 1
        if b >= a:
            out.append((a, b))
        else:
            log.info("k=%d gives the empty interval [%d, %d]", k, a, b)
        k += 1
    return out


def certify_gap(interval, census: LowWeightCensus, witnesses=None) -> GapReport:
    a, b = interval
    wts = census.weights
    inside = np.flatnonzero((wts >= a) & (wts <= b))
    if inside.size:
        return GapReport((a, b), "refuted", refuting_word=census.classes[inside[0]])
    if witnesses is not None:
        lo, hi = (fl.weight(w) for w in witnesses)
        if (lo, hi) != (a - 1, b + 1):
            raise ValueError(f"witness weights {(lo, hi)} do not bracket [{a}, {b}]")
    else:
        present = set(wts.tolist()) | {0}
        if a - 1 not in present or b + 1 not in present:
            return GapReport((a, b), "undecided")
    if not (census.certified and census.wmax >= b):
        return GapReport((a, b), "undecided")
    return GapReport((a, b), "certified-gap", (a - 1, b + 1))


def spectrum_gaps(source) -> list[tuple[int, int]]:
    """Maximal runs of absent weights bracketed by present ones.

    A census is trusted only up to its wmax, and only if certified.
    """
    if isinstance(source, LowWeightCensus):
        if not source.certified:
            return []
        present = sorted(set(source.weights.tolist()) | {0})
    else:
        present = source.weights()
    return [(u + 1, v - 1) for u, v in zip(present, present[1:]) if v - u > 1]
