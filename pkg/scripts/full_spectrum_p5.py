"""Full weight enumerator of C_5: enumerate the 5^15 dual words, then apply MacWilliams.

Takes about an hour on one core.
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from planecode.code import build_code
from planecode.search import exhaustive_spectrum, macwilliams


@dataclass
class SpectrumConfig:
    p: int = 5
    workers: int = 1
    inner: int = 9
    out: str | None = None


def run(cfg: SpectrumConfig) -> dict:
    code = build_code(cfg.p)
    t = time.perf_counter()
    D = exhaustive_spectrum(code.dual_basis, cfg.p, budget=cfg.p**code.dual_basis.shape[0],
                            workers=cfg.workers, inner=cfg.inner)
    W = macwilliams(D, code.dimension)
    return {"config": asdict(cfg), "dual": D.to_dict(), "code": W.to_dict(),
            "seconds": round(time.perf_counter() - t, 1)}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--inner", type=int, default=9)
    ap.add_argument("--out")
    cfg = SpectrumConfig(**vars(ap.parse_args()))
    res = json.dumps(run(cfg), indent=2)
    print(res)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(res + "\n")


if __name__ == "__main__":
    main()
