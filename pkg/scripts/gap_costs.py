"""Certify the minimum weight of C_p and price out certification of each conjectured gap."""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from planecode.code import build_code
from planecode.search import bz_low_weight, certify_gap, conjectured_gaps, cost_estimate


@dataclass
class GapConfig:
    p: int = 7
    workers: int = 1


def run(cfg: GapConfig) -> dict:
    code = build_code(cfg.p)
    t = time.perf_counter()
    census = bz_low_weight(code.basis, cfg.p, cfg.p + 1, workers=cfg.workers)
    rows = []
    for gap in conjectured_gaps(cfg.p):
        rep = certify_gap(gap, census).to_dict()
        rep["cost_to_certify"] = cost_estimate(census.window_ranks, census.k, cfg.p, gap[1])
        rows.append(rep)
    return {"config": asdict(cfg), "minimum_weight": min(census.class_counts()),
            "classes": census.class_counts(), "certified": census.certified,
            "gaps": rows, "seconds": round(time.perf_counter() - t, 1)}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=7)
    ap.add_argument("--workers", type=int, default=1)
    print(json.dumps(run(GapConfig(**vars(ap.parse_args()))), indent=2, default=str))


if __name__ == "__main__":
    main()
