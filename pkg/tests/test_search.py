import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from planecode import fplinalg as fl
from planecode.constructions import decompose_two_lines
from planecode.search import (LowWeightCensus, WeightEnumerator, bz_low_weight, canonical_rows,
                              certify_gap, conjectured_gaps, cost_estimate, exhaustive_spectrum,
                              gray_steps, gray_walk, information_windows, krawtchouk, macwilliams,
                              spectrum_gaps, weight_lower_bound)

from conftest import brute_dual, span_closure


def enumerator_of(words, n, q, dim):
    counts = {}
    for w in words:
        wt = sum(1 for a in w if a)
        counts[wt] = counts.get(wt, 0) + 1
    return counts


@pytest.fixture(scope="module")
def oracle_p2(codes):
    code = codes[2]
    return enumerator_of(span_closure(code.generators, 2), 7, 2, 4)


@pytest.fixture(scope="module")
def oracle_p3(codes):
    code = codes[3]
    words = span_closure(code.generators, 3)
    assert len(words) == 3**7
    dual = brute_dual(code.generators, 3)
    return enumerator_of(words, 13, 3, 7), enumerator_of(dual.tolist(), 13, 3, 6)


def test_p2_spectrum(codes, oracle_p2):
    W = exhaustive_spectrum(codes[2].basis, 2)
    assert oracle_p2 == {0: 1, 3: 7, 4: 7, 7: 1}
    assert W.counts == oracle_p2
    assert W.total == 16 and W.complete


def test_p3_spectrum(codes, oracle_p3):
    W = exhaustive_spectrum(codes[3].basis, 3)
    assert W.counts == oracle_p3[0]
    assert W.total == 2187 and W.min_weight() == 4
    for w, c in W.counts.items():
        if w:
            assert c % 2 == 0


def test_blocked_path_matches(codes, oracle_p3):
    for inner in (1, 3, 7):
        W = exhaustive_spectrum(codes[3].basis, 3, inner=inner)
        assert W.counts == oracle_p3[0]
    W = exhaustive_spectrum(codes[3].basis, 3, inner=2, workers=2)
    assert W.counts == oracle_p3[0]


def test_budget(codes):
    with pytest.raises(ValueError, match="macwilliams"):
        exhaustive_spectrum(codes[5].basis, 5, budget=10**6)


def test_gray_steps_visit_everything():
    for q, k in [(2, 3), (3, 3), (5, 2)]:
        digits = [0] * k
        seen = set()
        for j in gray_steps(q, k):
            digits[j] = (digits[j] + 1) % q
            seen.add(tuple(digits))
        assert len(seen) == q**k and digits == [0] * k


def test_gray_walk_incremental_weight_p3(codes):
    steps = 0
    seen = set()
    for _, word, wt in gray_walk(codes[3].basis, 3):
        assert wt == np.count_nonzero(word)
        seen.add(word.tobytes())
        steps += 1
    assert steps == 3**7 and len(seen) == 3**7
    assert not word.any()


def test_gray_walk_checkpoints_p5(codes):
    g = np.random.default_rng(0)
    checks = set(g.choice(200_000, size=10_000, replace=False).tolist())
    for i, (_, word, wt) in enumerate(itertools.islice(gray_walk(codes[5].basis, 5), 200_000)):
        if i in checks:
            assert wt == np.count_nonzero(word)
            assert codes[5].is_member(word) is not None


def test_macwilliams_zero_code():
    n, q = 4, 3
    W = macwilliams(WeightEnumerator({0: 1}, n, q, 0), n)
    from math import comb
    assert W.counts == {w: comb(n, w) * (q - 1)**w for w in range(n + 1)}


def test_macwilliams_p2(codes):
    code = codes[2]
    D = macwilliams(exhaustive_spectrum(code.basis, 2), 3)
    dual = brute_dual(code.generators, 2)
    assert len(dual) == 8
    assert D.counts == enumerator_of(dual.tolist(), 7, 2, 3)


def test_macwilliams_p3_round_trip(codes, oracle_p3):
    W = exhaustive_spectrum(codes[3].basis, 3)
    D = macwilliams(W, 6)
    assert D.counts == oracle_p3[1]
    assert macwilliams(D, 7).counts == W.counts


def test_macwilliams_rejects_inconsistent():
    with pytest.raises(ArithmeticError):
        macwilliams(WeightEnumerator({0: 1, 1: 3}, 3, 2, 2), 1)
    with pytest.raises(ValueError):
        macwilliams(WeightEnumerator({0: 1}, 3, 2, 0), 2)
    with pytest.raises(ValueError):
        macwilliams(WeightEnumerator({0: 1}, 3, 2, 1), 2)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.integers(2, 7), st.integers(0, 2**32 - 1))
def test_macwilliams_random_codes(p, k, n, seed):
    g = np.random.default_rng(seed)
    G = fl.row_basis(g.integers(0, p, size=(k, n)), p)
    if G.shape[0] == 0:
        return
    W = exhaustive_spectrum(G, p)
    D = exhaustive_spectrum(fl.kernel_basis(G, p), p) if G.shape[0] < n else WeightEnumerator({0: 1}, n, p, 0)
    assert macwilliams(W, n - G.shape[0]).counts == D.counts


def test_krawtchouk_orthogonality():
    n, q = 5, 3
    from math import comb
    for r in range(n + 1):
        for s in range(n + 1):
            tot = sum(comb(n, i) * (q - 1)**i * krawtchouk(r, i, n, q) * krawtchouk(s, i, n, q)
                      for i in range(n + 1))
            expect = q**n * comb(n, r) * (q - 1)**r if r == s else 0
            assert tot == expect


def test_windows(codes):
    for p in (3, 5, 7):
        ws = information_windows(codes[p].basis, p)
        k = codes[p].dimension
        assert [w.rank for w in ws] == [k, k - 1]
        assert not set(ws[0].columns) & set(ws[1].columns)
        for w in ws:
            cols = list(w.columns)
            assert np.array_equal(w.generator[: w.rank][:, cols], np.eye(w.rank, dtype=np.int64))
            assert not np.any(w.generator[w.rank:][:, cols])
            assert fl.rank(np.vstack([w.generator, codes[p].basis]), p) == k


def test_lower_bound_formula():
    assert weight_lower_bound([16, 15], 16, 6) == 13
    assert weight_lower_bound([29, 28], 29, 4) == 9
    assert weight_lower_bound([10, 2], 10, 3) == 4


def test_canonical_rows():
    W = np.array([[0, 3, 1], [2, 0, 4], [0, 0, 0]])
    assert canonical_rows(W, 5).tolist() == [[0, 1, 2], [1, 0, 2], [0, 0, 0]]


def test_bz_matches_exhaustive_p3(codes, oracle_p3):
    census = bz_low_weight(codes[3].basis, 3, 13)
    assert census.certified
    classes = {w: c // 2 for w, c in oracle_p3[0].items() if w}
    assert census.class_counts() == classes
    W = census.classes
    assert len({tuple(r) for r in canonical_rows(W, 3).tolist()}) == len(W)


def test_bz_uncertified_when_effort_low(codes):
    census = bz_low_weight(codes[5].basis, 5, 12, effort=2)
    assert not census.certified and census.radius == 2
    assert census.bound == 5


def test_bz_parallel_identical_p3(codes):
    a = bz_low_weight(codes[3].basis, 3, 10, workers=1)
    b = bz_low_weight(codes[3].basis, 3, 10, workers=2)
    assert np.array_equal(a.classes, b.classes) and a.to_dict() == b.to_dict()


def test_census_order(codes):
    census = bz_low_weight(codes[3].basis, 3, 9)
    w = census.weights
    assert np.all(np.diff(w) >= 0)
    for a in np.unique(w):
        block = census.classes[w == a].tolist()
        assert block == sorted(block)


def test_conjectured_gaps():
    assert conjectured_gaps(5) == [(7, 9)]
    assert conjectured_gaps(7) == [(9, 13), (16, 17)]
    assert conjectured_gaps(11) == [(13, 21), (24, 29), (35, 35)]
    for p in (13, 17, 19, 23, 101):
        for k, (a, b) in enumerate(conjectured_gaps(p), start=1):
            assert (a, b) == (k * p + 2, (k + 1) * (p + 1 - k) - 1) and a <= b
            assert k * k <= p - 2
    with pytest.raises(ValueError):
        conjectured_gaps(3)


def _fake_census(weights, wmax, certified=True, n=31):
    rows = []
    for w in weights:
        r = np.zeros(n, dtype=np.int64)
        r[:w] = 1
        rows.append(r)
    classes = np.array(rows, dtype=np.int64).reshape(len(rows), n)
    return LowWeightCensus(5, n, 16, wmax, classes, certified, wmax + 1, 6, (16, 15), 0)


def test_certify_gap_logic():
    c = _fake_census([6, 10, 11, 12], 12)
    assert certify_gap((7, 9), c).status == "certified-gap"
    assert certify_gap((1, 5), c).witness_weights == (0, 6)
    r = certify_gap((9, 10), c)
    assert r.status == "refuted" and fl.weight(r.refuting_word) == 10
    assert certify_gap((13, 14), c).status == "undecided"
    assert certify_gap((7, 9), _fake_census([6, 10], 12, certified=False)).status == "undecided"
    c8 = _fake_census([8], 8, n=57)
    assert certify_gap((16, 17), c8).status == "undecided"
    w6, w10 = np.zeros(31, dtype=int), np.zeros(31, dtype=int)
    w6[:6] = 1
    w10[:10] = 1
    assert certify_gap((7, 9), c, witnesses=(w6, w10)).status == "certified-gap"
    with pytest.raises(ValueError):
        certify_gap((7, 9), c, witnesses=(w6, w6))


def test_spectrum_gaps():
    assert spectrum_gaps(WeightEnumerator({0: 1, 3: 7, 4: 7, 7: 1}, 7, 2, 4)) == [(1, 2), (5, 6)]
    assert spectrum_gaps(WeightEnumerator({0: 1}, 3, 2, 0)) == []
    assert spectrum_gaps(_fake_census([6, 10, 11, 12], 12)) == [(1, 5), (7, 9)]
    assert spectrum_gaps(_fake_census([6], 12, certified=False)) == []


def test_cost_estimate_p7():
    est = cost_estimate([29, 28], 29, 7, 13)
    assert est["radius"] == 7
    from math import comb
    assert est["candidates"] == 2 * (1 + sum(comb(29, t) * 6**(t - 1) for t in range(1, 8)))
