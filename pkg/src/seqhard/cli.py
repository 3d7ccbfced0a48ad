"""Command-line interface: ``seqhard {gen,solve,verify,maxsat}``.

Exit codes: 0 success, 1 a verified property failed, 2 usage or format error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from pathlib import Path

from . import serialize, solvers
from .core import BitVector, ReductionError, VectorFamily
from .dtwd_frechet import build_frechet_instance
from .klcs_reduction import build_klcs_instance, build_local_klcs_instance, k_unary_expand, trim_padding
from .lcs_reduction import DEFAULT_EXPAND_CAP, build_instance, far_pair_via_lcs, unary_expand
from .satlink import CountingOracle, DimacsError, max_oracle_calls, max_sat_bruteforce, max_sat_via_mov, parse_dimacs
from .suites import SUITES, run_trial

LCS_VIA_MAX_VARS = 8
LCS_VIA_MAX_CLAUSES = 10


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    trials: int | None = None
    jobs: int = 1
    max_n: int = 64
    max_d: int = 64
    max_k: int = 6
    expand_cap: int = DEFAULT_EXPAND_CAP
    output: Path | None = None
    repro_dir: Path = Path(".")
    as_json: bool = False


# --------------------------------------------------------------------------
# gen


def _random_family(spec: list[int], k_default: int, seed: int) -> VectorFamily:
    if len(spec) not in (2, 3):
        raise UsageError("--random takes n d [k]")
    n, d = spec[:2]
    k = spec[2] if len(spec) == 3 else k_default
    if n < 1 or d < 1 or k < 2:
        raise UsageError("--random needs n >= 1, d >= 1, k >= 2")
    rng = random.Random(seed)
    return VectorFamily(
        tuple(
            tuple(BitVector(tuple(rng.randrange(2) for _ in range(d))) for _ in range(n))
            for _ in range(k)
        )
    )


def _family(args, cfg: RunConfig, k_default: int) -> VectorFamily:
    if args.vectors:
        try:
            text = Path(args.vectors).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {args.vectors}: {exc.strerror}") from None
        family = serialize.parse_vectors(text)
    elif args.random:
        family = _random_family(args.random, k_default, cfg.seed)
    else:
        raise UsageError("give --vectors FILE or --random n d [k]")
    if family.n > cfg.max_n or family.d > cfg.max_d or family.k > cfg.max_k:
        raise UsageError(f"instance exceeds caps n <= {cfg.max_n}, d <= {cfg.max_d}, k <= {cfg.max_k}")
    return family


def cmd_gen(args, cfg: RunConfig) -> int:
    kind = args.kind
    family = _family(args, cfg, k_default=2)
    r = args.r
    if kind in ("lcs", "frechet", "dtwd-gap") and family.k != 2:
        raise UsageError(f"{kind} takes exactly two lists of vectors")
    if kind == "lcs":
        inst = build_instance(family.lists[0], family.lists[1], r, args.schedule)
        expanded = None
        if args.expand:
            expanded = (unary_expand(inst.P1, inst.weights, cfg.expand_cap), unary_expand(inst.P2, inst.weights, cfg.expand_cap))
        obj = serialize.lcs_to_json(inst, expanded=expanded)
        report = [f"E_U = {inst.E_U}", f"E_G = {inst.E_G}"]
    elif kind == "klcs":
        inst = build_klcs_instance(family, r, args.schedule)
        expanded = k_unary_expand(inst.sequences, inst.weights, cfg.expand_cap) if args.expand else None
        obj = serialize.klcs_to_json(inst, expanded=expanded)
        report = [f"Q = {inst.Q}", f"E_o = {inst.schedule.E_o}", f"E_n = {inst.schedule.E_n}",
                  f"E_U = {inst.E_U}", f"E_G = {inst.E_G}"]
    elif kind == "local-klcs":
        inst = build_local_klcs_instance(family, r, args.schedule, cfg.expand_cap)
        obj = serialize.local_to_json(inst)
        report = [f"L = {inst.L}", f"E_o = {inst.E_o}", f"E_n = {inst.E_n}"]
    else:
        inst = build_frechet_instance(family.lists[0], family.lists[1], metric=args.metric)
        obj = serialize.gadget_to_json(inst, kind)
        report = [f"expected_gap = {serialize.render_distance(inst.expected_gap)}"]
    if cfg.output is None:
        sys.stdout.write(serialize.dumps(obj))
        print("\n".join(report), file=sys.stderr)
    else:
        serialize.write_json(obj, cfg.output)
        print("\n".join(report))
    return 0


# --------------------------------------------------------------------------
# solve

SOLVE_KINDS = {
    "lcs": {"lcs", "pair"},
    "wlcs": {"lcs", "pair"},
    "klcs": {"klcs", "pair", "sequences"},
    "edit": {"lcs", "pair"},
    "dtwd": {"frechet", "dtwd-gap", "pair"},
    "frechet": {"frechet", "dtwd-gap", "pair"},
    "local-klcs": {"local-klcs", "sequences"},
}


def _solve(measure: str, obj: dict, unit: bool) -> str:
    kind = obj["kind"]
    if kind not in SOLVE_KINDS[measure]:
        raise serialize.FormatError(
            f"measure {measure!r} cannot be solved on a {kind!r} instance "
            f"(expected one of {sorted(SOLVE_KINDS[measure])})"
        )
    if measure in ("dtwd", "frechet"):
        x, y, table = serialize.read_point_instance(obj)
        value = solvers.dtwd(x, y, table) if measure == "dtwd" else solvers.frechet(x, y, table)
        return serialize.render_distance(value)
    seqs = serialize.read_sequences(obj)
    alpha = seqs[0].alphabet
    if measure == "local-klcs":
        if "L" not in obj:
            raise serialize.FormatError("local-klcs needs a window length field 'L'")
        return str(solvers.local_k_lcs(seqs, obj["L"]))
    if measure == "klcs":
        w = None if unit else serialize.read_weights(obj, alpha)
        if obj.get("pad_blocks"):
            seqs = trim_padding(seqs, [(i, a, b, tuple(p)) for i, a, b, p in obj["pad_blocks"]], obj["Q"])
        return str(solvers.k_wlcs(seqs, w))
    if len(seqs) != 2:
        raise serialize.FormatError(f"{measure} needs exactly two sequences, got {len(seqs)}")
    s, t = seqs
    if measure == "lcs":
        return str(solvers.lcs(s, t))
    if measure == "wlcs":
        return str(solvers.wlcs(s, t, serialize.read_weights(obj, alpha)))
    return str(solvers.edit(s, t))


def cmd_solve(args, cfg: RunConfig) -> int:
    obj = serialize.load(args.instance)
    print(_solve(args.measure, obj, args.unit))
    return 0


# --------------------------------------------------------------------------
# verify


def _repro_path(cfg: RunConfig, suite: str, trial: int) -> Path:
    return cfg.repro_dir / f"repro-{suite}-seed{cfg.seed}-trial{trial}.json"


def cmd_verify(args, cfg: RunConfig) -> int:
    if args.repro:
        rec = json.loads(Path(args.repro).read_text())
        suite = SUITES[rec["suite"]]
        out = suite.check(rec["case"])
        print(f"{rec['suite']} replay (seed {rec['seed']}, trial {rec['trial']}): {'pass' if out.ok else 'FAIL'}")
        print(json.dumps(out.detail, sort_keys=True))
        return 0 if out.ok else 1
    if args.suite is None:
        raise UsageError("verify needs a suite name or --repro FILE")
    suite = SUITES[args.suite]
    trials = cfg.trials if cfg.trials is not None else suite.default_trials
    start = time.perf_counter()
    job = partial(run_trial, suite.name, cfg.seed)
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            results = list(pool.map(job, range(trials), chunksize=max(1, trials // (4 * cfg.jobs))))
    else:
        results = [job(i) for i in range(trials)]
    elapsed = time.perf_counter() - start
    failures = [(i, case, out) for i, case, out in results if not out.ok]
    repro_files = []
    for i, case, out in failures:
        path = _repro_path(cfg, suite.name, i)
        rec = {"suite": suite.name, "seed": cfg.seed, "trial": i, "case": case, "detail": out.detail}
        path.write_text(json.dumps(rec, indent=2, sort_keys=True) + "\n")
        repro_files.append(str(path))
    agree = trials - len(failures)
    if cfg.as_json:
        print(json.dumps({
            "suite": suite.name, "seed": cfg.seed, "trials": trials, "agree": agree,
            "failures": [i for i, _, _ in failures], "repro": repro_files,
        }, indent=2))
    else:
        print(f"{suite.name}: {agree}/{trials} agree, {len(failures)} failures (seed {cfg.seed})")
        for path in repro_files:
            print(f"  repro written to {path}")
    print(f"elapsed {elapsed:.2f} s", file=sys.stderr)
    return 1 if failures else 0


# --------------------------------------------------------------------------
# maxsat


def cmd_maxsat(args, cfg: RunConfig) -> int:
    try:
        cnf = parse_dimacs(Path(args.cnf).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.cnf}: {exc.strerror}") from None
    if args.via == "brute":
        print(max_sat_bruteforce(cnf))
        return 0
    if args.via == "lcs":
        if cnf.num_vars > LCS_VIA_MAX_VARS or cnf.num_clauses > LCS_VIA_MAX_CLAUSES:
            raise UsageError(
                f"--via lcs is limited to {LCS_VIA_MAX_VARS} variables and {LCS_VIA_MAX_CLAUSES} clauses; "
                "use --via brute or --via mov"
            )
        print(max_sat_via_mov(cnf, 2, far_pair_via_lcs))
        return 0
    counter = CountingOracle(lambda lists, r: solvers.kmov_bruteforce(lists, r) is not None)
    print(max_sat_via_mov(cnf, args.k, counter))
    print(f"oracle calls {counter.calls} (bound {max_oracle_calls(cnf.num_clauses)})", file=sys.stderr)
    return 0


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="seqhard", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="build a hard instance from vectors")
    g.add_argument("kind", choices=["lcs", "klcs", "local-klcs", "frechet", "dtwd-gap"])
    src = g.add_mutually_exclusive_group()
    src.add_argument("--vectors", metavar="FILE", help="0/1 lines, lists separated by blank lines")
    src.add_argument("--random", nargs="+", type=int, metavar="N", help="n d [k]")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--r", type=int, default=0, help="farness threshold")
    g.add_argument("--schedule", choices=["paper", "compact"], default="compact")
    g.add_argument("--expand", action="store_true", help="unary-expand weights (lcs, klcs)")
    g.add_argument("--expand-cap", type=int, default=DEFAULT_EXPAND_CAP)
    g.add_argument("--metric", action="store_true", help="metric distance table (frechet, dtwd-gap)")
    g.add_argument("--max-n", type=int, default=RunConfig.max_n)
    g.add_argument("--max-d", type=int, default=RunConfig.max_d)
    g.add_argument("-o", "--output", type=Path)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="score an instance file")
    s.add_argument("measure", choices=sorted(SOLVE_KINDS))
    s.add_argument("instance")
    s.add_argument("--unit", action="store_true", help="klcs: ignore instance weights")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="run a randomized property suite")
    v.add_argument("suite", nargs="?", choices=sorted(SUITES))
    v.add_argument("--trials", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--json", action="store_true", dest="as_json")
    v.add_argument("--repro", metavar="FILE", help="replay a dumped failing case")
    v.add_argument("--repro-dir", type=Path, default=Path("."))
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("maxsat", help="MAX-CNF-SAT of a DIMACS file")
    m.add_argument("cnf")
    m.add_argument("--via", choices=["brute", "mov", "lcs"], default="mov")
    m.add_argument("--k", type=int, default=2, help="number of blocks for --via mov")
    m.set_defaults(func=cmd_maxsat)
    return parser


def config_from(args) -> RunConfig:
    return RunConfig(
        seed=getattr(args, "seed", 0),
        trials=getattr(args, "trials", None),
        jobs=max(1, getattr(args, "jobs", 1)),
        max_n=getattr(args, "max_n", RunConfig.max_n),
        max_d=getattr(args, "max_d", RunConfig.max_d),
        expand_cap=getattr(args, "expand_cap", DEFAULT_EXPAND_CAP),
        output=getattr(args, "output", None),
        repro_dir=getattr(args, "repro_dir", Path(".")),
        as_json=getattr(args, "as_json", False),
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, config_from(args))
    except KeyError as exc:
        print(f"error: missing field {exc}", file=sys.stderr)
        return 2
    except (UsageError, DimacsError, ReductionError, OverflowError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
