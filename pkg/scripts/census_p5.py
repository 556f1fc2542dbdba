"""Certified census of C_5 up to weight 12, with gap certificates and a breakdown of weight 12."""

import argparse
import json
import time
from dataclasses import asdict, dataclass

import numpy as np

from planecode import geometry as geo
from planecode.code import build_code
from planecode.constructions import decompose_two_lines
from planecode.search import bz_low_weight, certify_gap


@dataclass
class CensusConfig:
    p: int = 5
    wmax: int = 12
    workers: int = 1
    out: str | None = None


def run(cfg: CensusConfig) -> dict:
    code = build_code(cfg.p)
    t = time.perf_counter()
    census = bz_low_weight(code.basis, cfg.p, cfg.wmax, workers=cfg.workers)
    elapsed = time.perf_counter() - t
    top = census.words_of_weight(3 * cfg.p - 3)
    passants = [geo.intersection_profile(code.plane, np.flatnonzero(w))[0] for w in top]
    low = census.classes[census.weights < 3 * cfg.p - 3]
    return {
        "config": asdict(cfg),
        "certified": census.certified,
        "radius": census.radius,
        "candidates": census.candidates,
        "class_counts": census.class_counts(),
        "two_line_decomposable": int(sum(decompose_two_lines(code.plane, w) is not None for w in low)),
        "below_3p_minus_3": int(len(low)),
        "top_weight_dual_words": int(sum(code.is_dual_member(w) for w in top)),
        "top_weight_min_passants": min(passants) if passants else None,
        "gaps": [certify_gap(g, census).to_dict() for g in ((1, cfg.p), (cfg.p + 2, 2 * cfg.p - 1))],
        "seconds": round(elapsed, 2),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--wmax", type=int, default=12)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out")
    cfg = CensusConfig(**vars(ap.parse_args()))
    res = json.dumps(run(cfg), indent=2, default=str)
    print(res)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(res + "\n")


if __name__ == "__main__":
    main()
