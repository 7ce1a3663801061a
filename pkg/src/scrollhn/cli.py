"""Command-line front end.

Every subcommand takes ``--g N`` or ``--g A..B``, ``--seed``, ``--output`` and
``--jobs``. A single genus in text mode prints a table; anything else prints
one JSON object per line, sorted by genus. Exit status: 0 when every check
holds, 1 when an invariant is falsified, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

from . import genus6, nodal, pbundle, surfaces, trigonal
from .exact import rational_to_json

DEFAULT_SEED = 0xC0FFEE
SEED_ENV = "SCROLLHN_SEED"
COMMANDS = ("trigonal", "destab-search", "kernel-splitting", "genus6", "surface", "sweep")
MIN_GENUS = {"trigonal": 3, "destab-search": 5, "kernel-splitting": 5, "surface": 3, "sweep": 5}

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE = 0, 1, 2

# exceptions that mean "a checked statement came out false"
FALSIFIED = (AssertionError, nodal.CaseAnalysisGap, pbundle.SplittingError)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    g_values: tuple[int, ...]
    seed: int
    output: str = "json"
    jobs: int = 1
    backend: str | None = None


def parse_genus(text: str) -> tuple[int, ...]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad genus {text!r}; expected N or A..B") from None
    if lo > hi:
        raise UsageError(f"empty genus range {text!r}")
    return tuple(range(lo, hi + 1))


def parse_seed(text: str | None) -> int:
    if text is None:
        text = os.environ.get(SEED_ENV)
    if text is None or text == "":
        return DEFAULT_SEED
    try:
        seed = int(text, 0)
    except ValueError:
        raise UsageError(f"bad seed {text!r}") from None
    if not 0 <= seed < 1 << 64:
        raise UsageError("seed must be an unsigned 64-bit integer")
    return seed


# ---------------------------------------------------------------------------
# per-genus work; each returns (record, ok)


def _trigonal(g: int, cfg: RunConfig):
    rep = trigonal.report(g, cfg.seed, cfg.backend)
    ok = rep.is_decreasing and rep.degeneration_verdict is not False
    return rep.to_json(), ok


def _destab(g: int, cfg: RunConfig):
    rep = nodal.destabilizer_search(g, cfg.seed, cfg.backend)
    return rep.to_json(), rep.ok


def _kernel_splitting(g: int, cfg: RunConfig):
    model = "odd" if g % 2 else "even"
    if g < (5 if model == "odd" else 6):
        raise UsageError(f"kernel-splitting needs odd g >= 5 or even g >= 6, got {g}")
    cases = []
    for _, d in pbundle.valid_lemma6_pairs([g], model):
        m = pbundle.monomial_map(g, d, model)
        kernel = pbundle.kernel_splitting(m.dual())
        cokernel = pbundle.cokernel_splitting(m)
        restriction = pbundle.lemma6_restriction(g, d, model)
        oracle = pbundle.bidiagonal_oracle(g, d, model)
        k = pbundle.lemma6_k(g, d, model)
        cases.append(
            {
                "d": d,
                "k": k,
                "map": m.to_json(),
                "kernel": kernel.to_json(),
                "cokernel": cokernel.to_json(),
                "restriction": restriction.to_json(),
                "bidiagonal_agrees": oracle == kernel,
            }
        )
    ok = all(c["bidiagonal_agrees"] for c in cases)
    return {"g": g, "parity_model": model, "seed": cfg.seed, "cases": cases}, ok


def _surface(g: int, cfg: RunConfig):
    n = g % 2
    c = trigonal.trigonal_class(g, n)
    lat = c.lattice
    hyper = lat.cls(1, (g - 2 + n) // 2)
    rec = {
        "g": g,
        "lattice": lat.name,
        "curve": c.to_json(),
        "hyperplane": hyper.to_json(),
        "self_intersection": rational_to_json(surfaces.intersect(c, c)),
        "genus": rational_to_json(surfaces.adjunction_genus(c)),
        "degree": rational_to_json(surfaces.embedding_degree(c, hyper)),
    }
    ok = rec["genus"] == str(g) and rec["degree"] == str(2 * g - 2)
    if g >= 5:
        d = nodal.degeneration(g)
        rec["degeneration"] = d.to_json()
    return rec, ok


def _sweep(g: int, cfg: RunConfig):
    hn = trigonal.hn_report(g, cfg.seed, cfg.backend, with_degeneration=False)
    stab = nodal.destabilizer_search(g, cfg.seed, cfg.backend)
    rec = {"g": g, "seed": cfg.seed, "hn": hn.to_json(), "stability": stab.to_json()}
    return rec, hn.is_decreasing and stab.ok


WORKERS = {
    "trigonal": _trigonal,
    "destab-search": _destab,
    "kernel-splitting": _kernel_splitting,
    "surface": _surface,
    "sweep": _sweep,
}


def _run_one(g: int, cfg: RunConfig):
    try:
        rec, ok = WORKERS[cfg.command](g, cfg)
        return g, rec, ok, None
    except FALSIFIED as exc:
        return g, {"g": g, "seed": cfg.seed, "error": str(exc)}, False, str(exc)


def _run_genus6(cfg: RunConfig):
    try:
        table = genus6.genus6_slopes()
        quadrics = genus6.quadrics_through_segre()
        ranks = genus6.random_span_ranks(100, cfg.seed)
    except FALSIFIED as exc:
        return {"error": str(exc), "seed": cfg.seed}, False, str(exc)
    rec = table.to_json()
    rec["segre_quadrics"] = {
        "dimension": len(quadrics),
        "generators": [[rational_to_json(c) for c in q.coefficients()] for q in quadrics],
        "rank_singular_locus": [list(genus6.singular_locus_dim(q)) for q in quadrics],
        "random_span_ranks_all_4": all(r == 4 for r in ranks),
    }
    rec["seed"] = cfg.seed
    ok = (not table.three_step_decreasing) and rec["segre_quadrics"]["random_span_ranks_all_4"]
    return rec, ok, None


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    if cfg.command == "genus6":
        rec, ok, msg = _run_genus6(cfg)
        _emit([(6, rec)], cfg, out, single=True)
        if msg:
            print(f"falsified: {msg}", file=err)
        return EXIT_OK if ok else EXIT_FALSIFIED

    lo = MIN_GENUS[cfg.command]
    if min(cfg.g_values) < lo:
        raise UsageError(f"{cfg.command} needs g >= {lo}")
    job = partial(_run_one, cfg=cfg)
    if cfg.jobs > 1 and len(cfg.g_values) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(job, cfg.g_values))
    else:
        results = [job(g) for g in cfg.g_values]
    results.sort(key=lambda r: r[0])
    _emit([(g, rec) for g, rec, _, _ in results], cfg, out, single=len(results) == 1)
    status = EXIT_OK
    for g, rec, ok, msg in results:
        if not ok:
            status = EXIT_FALSIFIED
            detail = msg or json.dumps(rec.get("gap") or rec, separators=(",", ":"))
            print(f"falsified at g={g}: {detail}", file=err)
    return status


def _emit(records, cfg: RunConfig, out, single: bool) -> None:
    if cfg.output == "text" and single and cfg.command != "sweep":
        out.write(render_text(cfg.command, records[0][1]))
        return
    for _, rec in records:
        out.write(json.dumps(rec, separators=(",", ":")) + "\n")


def render_text(command: str, rec: dict) -> str:
    lines = []
    if "error" in rec:
        return f"error: {rec['error']}\n"
    if command == "trigonal":
        lines.append(f"genus {rec['g']}   mu(N_C/P) = {rec['mu_N']}")
        lines.append(f"{'factor':<16}{'rank':>6}{'slope':>10}")
        for s in rec["filtration"]:
            lines.append(f"{s['label']:<16}{s['rank']:>6}{s['slope']:>10}")
        if rec.get("coprimality_witness") is not None:
            lines.append(f"coprimality witness {rec['coprimality_witness']}")
        if rec.get("degeneration_verdict") is not None:
            lines.append(f"degeneration verdict {rec['degeneration_verdict']}")
        for note in rec.get("notes", []):
            lines.append(f"note: {note}")
    elif command == "destab-search":
        lines.append(f"genus {rec['g']} (maroni {rec['maroni']}), seed {rec['seed']}")
        lines.append(f"candidates  {rec['candidates']}")
        lines.append(f"max bound   {rec['max_bound']}")
        lines.append(f"mu total    {rec['mu_total']}")
        lines.append(f"verdict     {rec['verdict']}")
        for name, count in rec["rule_histogram"].items():
            lines.append(f"  {name:<10}{count:>12}")
        for name, ok in rec["side_checks"].items():
            lines.append(f"  check {name:<12}{'pass' if ok else 'FAIL'}")
    elif command == "kernel-splitting":
        lines.append(f"genus {rec['g']} ({rec['parity_model']} model)")
        lines.append(f"{'d':>3}{'k':>4}  {'kernel':<20}{'cokernel':<20}restriction")
        for c in rec["cases"]:
            lines.append(
                f"{c['d']:>3}{c['k']:>4}  {_bundle_str(c['kernel']):<20}{_bundle_str(c['cokernel']):<20}"
                f"{_bundle_str(c['restriction'])}"
            )
    elif command == "genus6":
        lines.append(f"{'bundle':<18}{'rank':>6}{'degree':>8}{'slope':>8}")
        for r in rec["rows"]:
            lines.append(f"{r['name']:<18}{r['rank']:>6}{r['degree']:>8}{r['slope']:>8}")
        lines.append(f"HN slopes {', '.join(rec['hn_slopes'])}")
        lines.append(
            f"three-step slopes {', '.join(rec['three_step_slopes'])} "
            f"(decreasing: {rec['three_step_decreasing']})"
        )
        sq = rec["segre_quadrics"]
        lines.append(f"quadrics through Q: {sq['dimension']}, (rank, sing dim) {sq['rank_singular_locus']}")
        for a in rec["assumptions"]:
            lines.append(f"assumed: {a}")
    elif command == "surface":
        lines.append(f"genus {rec['g']} on {rec['lattice']}")
        lines.append(f"class {rec['curve']['coords']}  C^2 = {rec['self_intersection']}")
        lines.append(f"adjunction genus {rec['genus']}, degree {rec['degree']}")
        if "degeneration" in rec:
            d = rec["degeneration"]
            lines.append(f"lambdas {d['lambdas']}  kappas {d['kappas']}")
            for i, c in enumerate(d["classes"], 1):
                lines.append(f"  C{i} {c['coords']}")
    return "\n".join(lines) + "\n"


def _bundle_str(obj: dict) -> str:
    return str(pbundle.SplitBundle.from_json(obj))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--g", dest="genus", help="genus N or range A..B")
    common.add_argument("--seed", help="64-bit seed (default: $SCROLLHN_SEED or 0xC0FFEE)")
    common.add_argument("--output", choices=("json", "text"), default="json")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--backend", choices=("numba", "numpy"), default=None, help=argparse.SUPPRESS)
    parser = argparse.ArgumentParser(prog="scrollhn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "trigonal": "HN filtration report for trigonal canonical curves",
        "destab-search": "enumerate candidate subbundles on the nodal degeneration",
        "kernel-splitting": "splitting types of the monomial map on P^1",
        "genus6": "slope table and Segre quadrics for genus 6",
        "surface": "lattice data of the trigonal curve and its degeneration",
        "sweep": "full pipeline over a genus range, one JSON line per genus",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def config_from_args(argv=None) -> RunConfig:
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    if args.command == "genus6":
        g_values = (6,)
        if args.genus is not None and parse_genus(args.genus) != (6,):
            raise UsageError("genus6 only takes --g 6")
    else:
        if args.genus is None:
            raise UsageError(f"{args.command} needs --g")
        g_values = parse_genus(args.genus)
    return RunConfig(args.command, g_values, parse_seed(args.seed), args.output, args.jobs, args.backend)


def main(argv=None) -> int:
    try:
        cfg = config_from_args(argv)
        return run(cfg)
    except UsageError as exc:
        print(f"scrollhn: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # argparse
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
