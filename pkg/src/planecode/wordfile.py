"""Plain-text codeword files.

Format::

    <p> <n>
    <n space-separated residues>     # one codeword per line
    ...

Residues are decimal, in canonical point order, each in [0, p).
"""

from __future__ import annotations

import numpy as np


class WordFileError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def format_words(p: int, words) -> str:
    W = np.atleast_2d(np.asarray(words, dtype=np.int64))
    n = p * p + p + 1
    if W.size and W.shape[1] != n:
        raise ValueError(f"words have length {W.shape[1]}, expected {n}")
    lines = [f"{p} {n}"]
    lines += [" ".join(str(int(a) % p) for a in row) for row in W if W.size]
    return "\n".join(lines) + "\n"


def parse_words(text: str) -> tuple[int, np.ndarray]:
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise WordFileError(1, "missing header '<p> <n>'")
    head = lines[0].split()
    if len(head) != 2 or not all(h.isdigit() for h in head):
        raise WordFileError(1, f"bad header {lines[0]!r}, expected '<p> <n>'")
    p, n = int(head[0]), int(head[1])
    if n != p * p + p + 1:
        raise WordFileError(1, f"n={n} is not p^2+p+1 for p={p}")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        toks = line.split()
        if len(toks) != n:
            raise WordFileError(lineno, f"expected {n} residues, got {len(toks)}")
        try:
            row = [int(t) for t in toks]
        except ValueError:
            raise WordFileError(lineno, "non-integer residue") from None
        if any(not 0 <= a < p for a in row):
            raise WordFileError(lineno, f"residue outside [0, {p})")
        rows.append(row)
    return p, np.array(rows, dtype=np.int64).reshape(len(rows), n)
