import numpy as np
import pytest

from planecode import fplinalg as fl
from planecode.code import MoorhouseError, MoorhouseSpec, build_code, random_moorhouse_spec
from planecode.constructions import bagchi_word, random_frame
from planecode.harness import random_codeword


@pytest.mark.parametrize("p,dim", [(2, 4), (3, 7), (5, 16), (13, 92)])
def test_dimension(p, dim):
    code = build_code(p)
    assert code.dimension == dim
    assert code.generators.shape == (p * p + p + 1,) * 2


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_dual_dimension_and_containment(p, codes):
    code = codes[p]
    K = code.dual_basis
    assert K.shape[0] == p * (p + 1) // 2
    assert code.dimension + K.shape[0] == code.n
    for v in K:
        assert code.is_member(v) == 0
        assert code.is_dual_member(v)


def test_is_member_examples(codes):
    for p, code in codes.items():
        pl = code.plane
        assert code.is_member(pl.line_vector(0)) == 1
        e = np.zeros(pl.n, dtype=int)
        e[3] = 1
        assert code.is_member(e) is None


def test_is_member_length_check(codes):
    with pytest.raises(ValueError):
        codes[3].is_member([1, 0, 0])
    with pytest.raises(ValueError):
        codes[3].is_dual_member(np.zeros(7))


@pytest.mark.parametrize("p", [3, 5])
def test_is_member_agrees_with_row_space_solve(p, codes):
    code = codes[p]
    g = np.random.default_rng(p)
    for _ in range(1000):
        if g.random() < 0.5:
            v = random_codeword(code, g, max_terms=code.n)
        else:
            v = g.integers(0, p, size=code.n)
        sigma = code.is_member(v)
        assert (sigma is not None) == code.in_span(v)
        if sigma is not None:
            assert sigma == v.sum() % p
            assert (sigma == 0) == code.is_dual_member(v)


def test_line_sums_constant_on_codewords(codes, rng):
    code = codes[7]
    for _ in range(50):
        w = random_codeword(code, rng)
        sums = code.line_sums(w)
        assert np.all(sums == sums[0])


def test_dual_member_examples(codes):
    code = codes[5]
    pl = code.plane
    assert code.is_dual_member(pl.line_vector(0) - pl.line_vector(9))
    assert not code.is_dual_member(pl.line_vector(0))


@pytest.mark.parametrize("p", [2, 3])
def test_moorhouse_small(p, codes, rng):
    code = codes[p]
    B = code.moorhouse_basis(random_moorhouse_spec(code.plane, rng))
    assert B.shape[0] == code.dimension == fl.rank(B, p)


def test_moorhouse_random_p7(codes):
    code = codes[7]
    g = np.random.default_rng(7)
    for _ in range(50):
        B = code.moorhouse_basis(random_moorhouse_spec(code.plane, g))
        assert fl.rank(B, 7) == 29
        assert fl.rank(np.vstack([B, code.generators]), 7) == 29


def test_moorhouse_extra_line_may_be_base_line(codes, rng):
    code = codes[5]
    spec = random_moorhouse_spec(code.plane, rng)
    spec = MoorhouseSpec(spec.base_line, spec.points, spec.line_sets, spec.base_line)
    assert code.moorhouse_basis(spec).shape[0] == 16


def test_moorhouse_validation(codes, rng):
    code = codes[5]
    pl = code.plane
    good = random_moorhouse_spec(pl, rng)
    sets = list(good.line_sets)
    short = MoorhouseSpec(good.base_line, good.points, tuple(sets[:-1] + [sets[-1][:-1]]), good.extra_line)
    with pytest.raises(MoorhouseError, match=r"\|L_5\|"):
        code.moorhouse_basis(short)
    x0 = good.points[0]
    off = next(l for l in range(pl.n) if not pl.on(x0, l))
    with pytest.raises(MoorhouseError, match="extra line"):
        code.moorhouse_basis(MoorhouseSpec(good.base_line, good.points, good.line_sets, off))
    # put the base line into L_1
    bad = ((good.base_line,),) + tuple(sets[1:])
    with pytest.raises(MoorhouseError, match="base line"):
        code.moorhouse_basis(MoorhouseSpec(good.base_line, good.points, bad, good.extra_line))
    wrong_pencil = next(l for l in range(pl.n) if not pl.on(good.points[1], l))
    bad = ((wrong_pencil,),) + tuple(sets[1:])
    with pytest.raises(MoorhouseError, match="does not pass through x_1"):
        code.moorhouse_basis(MoorhouseSpec(good.base_line, good.points, bad, good.extra_line))
    with pytest.raises(MoorhouseError, match="points"):
        code.moorhouse_basis(MoorhouseSpec(good.base_line, good.points[:-1] + (999,), good.line_sets, good.extra_line))


def test_words_supported_in_examples(codes, rng):
    code = codes[5]
    pl = code.plane
    W = code.words_supported_in(pl.line_points[4])
    assert W.shape[0] == 1
    assert fl.rank(np.vstack([W, pl.line_vector(4)]), 5) == 1
    assert code.words_supported_in(range(pl.n)).shape[0] == code.dimension
    for _ in range(10):
        w = bagchi_word(pl, random_frame(pl, rng))
        W = code.words_supported_in(np.flatnonzero(w))
        assert W.shape[0] == 1
        assert fl.rank(np.vstack([W, w]), 5) == 1


def test_words_supported_in_vanish_off_set(codes, rng):
    code = codes[5]
    for _ in range(30):
        S = rng.choice(code.n, size=int(rng.integers(0, code.n)), replace=False)
        W = code.words_supported_in(S)
        outside = np.setdiff1d(np.arange(code.n), S)
        assert not np.any(W[:, outside])
        for w in W:
            assert code.is_member(w) is not None
        if W.shape[0]:
            assert fl.rank(W, 5) == W.shape[0]


def test_subsystem_full_rank_examples(codes):
    code = codes[3]
    assert code.subsystem_full_rank([])
    assert not code.subsystem_full_rank(list(code.plane.line_points[2]) + [0, 1])


@pytest.mark.parametrize("p", [3, 5])
def test_rank_equivalence_random(p, codes):
    code = codes[p]
    g = np.random.default_rng(11 * p)
    for _ in range(500):
        size = int(g.integers(0, code.n + 1))
        S = g.choice(code.n, size=size, replace=False)
        assert (code.words_supported_in(S).shape[0] == 0) == code.subsystem_full_rank(S)
