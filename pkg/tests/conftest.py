import numpy as np
import pytest

from planecode.code import build_code
from planecode.plane import build_plane


@pytest.fixture(scope="session")
def planes():
    return {p: build_plane(p) for p in (2, 3, 5, 7, 11, 13)}


@pytest.fixture(scope="session")
def codes():
    return {p: build_code(p) for p in (2, 3, 5, 7)}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def span_closure(vectors, p):
    """All vectors in the F_p-span, by closing {0} under adding generators.

    Deliberately free of any elimination, so it can serve as an oracle.
    """
    gens = [tuple(int(a) % p for a in v) for v in vectors]
    zero = tuple([0] * len(gens[0]))
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for u in frontier:
            for g in gens:
                v = tuple((a + b) % p for a, b in zip(u, g))
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return seen


def brute_dual(lines, p):
    """All vectors orthogonal to every line, by scanning F_p^n."""
    L = np.asarray(lines, dtype=np.int64)
    n = L.shape[1]
    out = []
    for start in range(0, p**n, 1 << 18):
        idx = np.arange(start, min(p**n, start + (1 << 18)), dtype=np.int64)
        V = (idx[:, None] // p ** np.arange(n, dtype=np.int64)) % p
        ok = ~np.any((V @ L.T) % p, axis=1)
        out.append(V[ok])
    return np.concatenate(out)
