"""Command-line interface: ``planecode <command> ...``.

Every command except ``construct`` prints one JSON report (or a table with
``--format table``). ``construct`` prints a codeword file. Exit codes:
0 success or certified, 1 error, 2 undecided search, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from importlib.metadata import PackageNotFoundError, version

import numpy as np

from . import geometry as geo
from . import harness
from .code import MoorhouseSpec, build_code, code_dimension, dual_dimension, random_moorhouse_spec
from .constructions import (BagchiFrame, TwoLineSpec, bagchi_word, decompose_two_lines, line_word,
                            random_frame, two_line_word)
from .plane import build_plane
from .search import (bz_low_weight, certify_gap, conjectured_gaps, cost_estimate, information_windows,
                     spectrum_gaps)
from .wordfile import WordFileError, format_words, parse_words

EXIT_OK, EXIT_ERROR, EXIT_UNDECIDED, EXIT_VERIFY_FAILED = 0, 1, 2, 3

try:
    TOOL_VERSION = version("artifact")
except PackageNotFoundError:  # pragma: no cover
    TOOL_VERSION = "0.1.0"


class CommandError(Exception):
    pass


def run_report(command: str, params: dict, results: dict, seconds: float, seed=None) -> dict:
    return {"tool": "planecode", "version": TOOL_VERSION, "command": command,
            "parameters": params, "seed": seed, "results": results,
            "timings": {"seconds": round(seconds, 3)}}


def results_payload(report: dict) -> str:
    """Canonical serialization of the part of a report that must be reproducible."""
    return json.dumps(report["results"], sort_keys=True, separators=(",", ":"))


def _read_words(path: str):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return parse_words(text)


# ----------------------------------------------------------------------------- commands


def cmd_build(args) -> tuple[dict, int]:
    pl = build_plane(args.p)
    pairs_ok = True
    if pl.n <= 400:
        inc = pl.incidence
        common = inc @ inc.T
        pairs_ok = bool(np.all(common[~np.eye(pl.n, dtype=bool)] == 1))
    return {"p": pl.p, "points": pl.n, "lines": pl.n, "points_per_line": pl.p + 1,
            "lines_per_point": int(pl.point_lines.shape[1]), "two_lines_meet_once": pairs_ok}, EXIT_OK


def cmd_dim(args) -> tuple[dict, int]:
    code = build_code(args.p)
    return {"p": args.p, "n": code.n, "dimension": code.dimension,
            "formula": code_dimension(args.p), "dual_dimension": int(code.dual_basis.shape[0]),
            "dual_formula": dual_dimension(args.p)}, EXIT_OK


def _construct_word(args) -> np.ndarray:
    pl = build_plane(args.p)
    rng = np.random.default_rng(args.seed)
    if args.kind == "line":
        l = args.line if args.line is not None else int(rng.integers(pl.n))
        return line_word(pl, l, args.coeff)
    if args.kind == "two-line":
        if args.lines:
            l1, l2 = args.lines
        else:
            l1, l2 = (int(v) for v in rng.choice(pl.n, size=2, replace=False))
        c1, c2 = args.coeffs or (1, args.p - 1)
        return two_line_word(pl, TwoLineSpec(l1, l2, c1, c2))
    if args.kind == "bagchi":
        if args.apex is not None:
            frame = BagchiFrame(args.apex, tuple(args.lines), args.far_line)
        else:
            frame = random_frame(pl, rng)
        return bagchi_word(pl, frame)
    if args.kind == "random":
        return harness.random_codeword(build_code(args.p), rng, max_terms=args.terms)
    raise CommandError(f"unknown construction {args.kind!r}")


def cmd_member(args) -> tuple[dict, int]:
    p, words = _read_words(args.file)
    code = build_code(p)
    out = []
    for w in words:
        sigma = code.is_member(w)
        out.append({"weight": int(np.count_nonzero(w)), "member": sigma is not None,
                    "sigma": sigma, "dual_member": code.is_dual_member(w)})
    return {"p": p, "words": out}, EXIT_OK


def analyze_word(code, w) -> dict:
    pl, p = code.plane, code.p
    S = np.flatnonzero(w)
    profile = geo.intersection_profile(pl, S)
    pencils, loci, witnesses = [], [], []
    for x in range(pl.n):
        pc = geo.pencil_counts(pl, x, S)
        pencils.append([pc.secants, pc.tangents, pc.passants, pc.higher])
        locus = geo.tangent_locus(pl, x, S)
        loci.append(geo.collinear(pl, locus))
        kw = geo.k_witness(pl, x, S)
        if isinstance(kw, geo.PencilLineInside):
            witnesses.append({"point": x, "excluded_by_line": kw.line})
        elif kw is None:
            witnesses.append({"point": x, "k": None})
        else:
            witnesses.append({"point": x, "case": kw.case, "k": kw.k, "bound": kw.bound(p)})
    decomp = decompose_two_lines(pl, w)
    sigma = code.is_member(w)
    return {
        "weight": int(S.size), "member": sigma is not None, "sigma": sigma,
        "dual_member": code.is_dual_member(w),
        "profile": {str(i): c for i, c in profile.items() if c},
        "double_blocking": geo.is_double_blocking(pl, S),
        "pencil_counts": pencils,
        "tangent_locus_collinear": {"all": all(loci), "failing_points": [x for x, ok in enumerate(loci) if not ok]},
        "k_witness": {
            "max_k": max((kw["k"] for kw in witnesses if kw.get("k")), default=None),
            "missing": [kw["point"] for kw in witnesses if "k" in kw and kw["k"] is None],
            "excluded": sum("excluded_by_line" in kw for kw in witnesses),
            "per_point": witnesses,
        },
        "two_line_decomposition": None if decomp is None else [list(t) for t in decomp],
    }


def cmd_analyze(args) -> tuple[dict, int]:
    p, words = _read_words(args.file)
    code = build_code(p)
    return {"p": p, "words": [analyze_word(code, w) for w in words]}, EXIT_OK


def cmd_basis(args) -> tuple[dict, int]:
    code = build_code(args.p)
    if args.base_line is not None:
        spec = MoorhouseSpec(args.base_line, tuple(args.points),
                             tuple(tuple(int(v) for v in s.split(",")) for s in args.line_sets),
                             args.extra_line)
    else:
        spec = random_moorhouse_spec(code.plane, np.random.default_rng(args.seed))
    B = code.moorhouse_basis(spec)
    return {"p": args.p, "base_line": spec.base_line, "points": list(spec.points),
            "line_sets": [list(s) for s in spec.line_sets], "extra_line": spec.extra_line,
            "size": int(B.shape[0]), "rank": code.dimension}, EXIT_OK


def cmd_search(args) -> tuple[dict, int]:
    code = build_code(args.p)
    p = args.p
    gaps = conjectured_gaps(p) if p >= 5 else []
    first = [(1, p), (p + 2, 2 * p - 1), (2 * p + 2, 3 * p - 4)] if p >= 5 else [(1, p)]
    targets = sorted({g for g in first + gaps if g[0] <= g[1]})
    wmax, effort = args.wmax, args.effort
    windows = information_windows(code.basis, p)
    ranks, k = [w.rank for w in windows], windows[0].rank
    plans = {f"{a}-{b}": cost_estimate(ranks, k, p, b) for a, b in targets}
    if args.extended:
        wmax = max(wmax, max(b for _, b in targets))
        est = cost_estimate(ranks, k, p, wmax)
        effort = max(effort or 0, est["radius"])
        logging.getLogger("planecode").warning(
            "extended effort: certifying weights <= %d needs radius %d and ~%.3e candidates",
            wmax, est["radius"], est["candidates"])
    census = bz_low_weight(code.basis, p, wmax, effort=effort, workers=args.workers)
    reports = [certify_gap(g, census).to_dict() for g in targets]
    for r in reports:
        if r["status"] == "undecided":
            r["cost_to_certify"] = plans[f"{r['interval'][0]}-{r['interval'][1]}"]
    results = {"census": census.to_dict(), "gaps_found": [list(g) for g in spectrum_gaps(census)],
               "gap_reports": reports,
               "weights": sorted(census.class_counts())}
    if args.census_out:
        with open(args.census_out, "w", encoding="utf-8") as fh:
            fh.write(format_words(p, census.classes))
    undecided = not census.certified or any(r["status"] == "undecided" for r in reports)
    return results, EXIT_UNDECIDED if undecided else EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    if args.lemma not in harness.LEMMAS:
        raise CommandError(f"unknown lemma id {args.lemma!r}; valid ids: {', '.join(harness.LEMMAS)}")
    res = harness.run_check(args.lemma, args.p, args.trials, args.seed, workers=args.workers)
    return res, EXIT_VERIFY_FAILED if res["failed"] else EXIT_OK


# ----------------------------------------------------------------------------- wiring


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["report", "table"], default="report")
    common.add_argument("--out", help="write the report (or codeword file) here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="planecode", description="Codes of the projective planes PG(2, p).")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("build", cmd_build, "build PG(2,p) and check its axioms")
    sp.add_argument("--p", type=int, required=True)

    sp = add("dim", cmd_dim, "dimension of C_p and its dual")
    sp.add_argument("--p", type=int, required=True)

    sp = add("construct", None, "write a codeword file")
    sp.add_argument("kind", choices=["line", "two-line", "bagchi", "random"])
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--line", type=int)
    sp.add_argument("--coeff", type=int, default=1)
    sp.add_argument("--lines", type=int, nargs="+")
    sp.add_argument("--coeffs", type=int, nargs=2)
    sp.add_argument("--apex", type=int)
    sp.add_argument("--far-line", type=int)
    sp.add_argument("--terms", type=int, default=harness.MAX_TERMS)

    sp = add("member", cmd_member, "membership of words in C_p and its dual")
    sp.add_argument("file", nargs="?", default="-")

    sp = add("analyze", cmd_analyze, "geometry of word supports")
    sp.add_argument("file", nargs="?", default="-")

    sp = add("basis", cmd_basis, "build and rank-check a Moorhouse basis")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--base-line", type=int)
    sp.add_argument("--points", type=int, nargs="+")
    sp.add_argument("--line-sets", nargs="+", help="comma-separated line indices for L_1 .. L_p")
    sp.add_argument("--extra-line", type=int)

    sp = add("search", cmd_search, "certified low-weight census and gap reports")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--wmax", type=int, required=True)
    sp.add_argument("--effort", type=int, default=None,
                    help="maximum message radius (default: what certification needs, within a candidate budget)")
    sp.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    sp.add_argument("--extended", action="store_true",
                    help="raise wmax and effort to cover every conjectured gap (prints cost first)")
    sp.add_argument("--census-out", help="also write the census classes as a codeword file")

    sp = add("verify", cmd_verify, "seeded lemma verification harness")
    sp.add_argument("--lemma", required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--workers", type=int, default=1)
    return ap


def render_table(results: dict, prefix: str = "") -> list[str]:
    lines = []
    for key, val in results.items():
        if isinstance(val, dict):
            lines += render_table(val, f"{prefix}{key}.")
        elif isinstance(val, list) and len(val) > 8:
            lines.append(f"{prefix}{key:<24} [{len(val)} items]")
        else:
            lines.append(f"{prefix}{key:<24} {val}")
    return lines


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    t0 = time.perf_counter()
    try:
        if args.command == "construct":
            explicit = args.apex is not None or args.line is not None or args.lines
            if args.seed is None and not explicit:
                raise CommandError("--seed is required when the construction is chosen at random")
            w = _construct_word(args)
            _emit(format_words(args.p, w), args.out)
            return EXIT_OK
        if args.command == "basis" and args.base_line is None and args.seed is None:
            raise CommandError("--seed is required for a random Moorhouse spec")
        results, code = args.fn(args)
    except (ValueError, KeyError, CommandError, OSError, RuntimeError, ZeroDivisionError) as exc:
        where = f"{args.command}: " if not isinstance(exc, WordFileError) else f"{args.command}: parse error, "
        print(f"error: {where}{exc}", file=sys.stderr)
        return EXIT_ERROR
    params = {k: v for k, v in vars(args).items() if k not in ("fn", "format", "out", "verbose", "command")}
    report = run_report(args.command, params, results, time.perf_counter() - t0, seed=getattr(args, "seed", None))
    if args.format == "table":
        text = "\n".join(render_table(results)) + "\n"
    else:
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    _emit(text, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
