"""Randomized verification suites behind ``seqhard verify``.

A suite draws a JSON-serializable case from ``random.Random(seed + trial)``
and checks it, so any failing case can be written out and replayed alone.
"""

from __future__ import annotations

import random
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Callable

from .core import Alphabet, BitVector, CnfFormula, DistanceTable, VectorFamily, WeightedAlphabet
from .dtwd_frechet import build_frechet_instance, verify_edit_dtwd_inequality
from .klcs_reduction import build_klcs_instance
from .lcs_reduction import build_instance, far_pair_via_lcs, unary_expand
from .satlink import CountingOracle, max_oracle_calls, max_sat_bruteforce, max_sat_via_mov, random_cnf
from .serialize import fraction_str
from . import solvers

GLYPHS = "abcde"


@dataclass(frozen=True)
class Outcome:
    ok: bool
    detail: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Suite:
    name: str
    generate: Callable[[random.Random], dict]
    check: Callable[[dict], Outcome]
    default_trials: int


def _vec(rng: random.Random, d: int) -> str:
    return "".join(rng.choice("01") for _ in range(d))


def _bits(lst) -> list[BitVector]:
    return [BitVector.parse(v) for v in lst]


def _word(rng: random.Random, sigma: int, lo: int, hi: int) -> str:
    return "".join(rng.choice(GLYPHS[:sigma]) for _ in range(rng.randint(lo, hi)))


# --------------------------------------------------------------------------
# lcs-gap


def gen_lcs_gap(rng):
    n, d = rng.randint(1, 4), rng.randint(1, 3)
    return {
        "A": [_vec(rng, d) for _ in range(n)],
        "B": [_vec(rng, d) for _ in range(n)],
        "r": rng.randint(0, d - 1),
        "schedule": "compact",
    }


def check_lcs_gap(case):
    A, B = _bits(case["A"]), _bits(case["B"])
    inst = build_instance(A, B, case["r"], case["schedule"])
    score = inst.score()
    far = solvers.mov_bruteforce(A, B, case["r"]) is not None
    ok = score >= inst.E_G + 1 if far else score <= inst.E_G
    return Outcome(ok, {"score": score, "E_G": inst.E_G, "far": far})


# --------------------------------------------------------------------------
# klcs-gap


def gen_klcs_gap(rng):
    k, n, d = rng.randint(2, 3), rng.randint(1, 2), rng.randint(1, 2)
    return {
        "lists": [[_vec(rng, d) for _ in range(n)] for _ in range(k)],
        "r": rng.randint(0, d - 1),
        "schedule": "compact",
    }


def check_klcs_gap(case):
    family = VectorFamily(tuple(tuple(_bits(lst)) for lst in case["lists"]))
    inst = build_klcs_instance(family, case["r"], case["schedule"])
    score = inst.score()
    far = solvers.kmov_bruteforce(family, case["r"]) is not None
    ok = score >= inst.E_G + 1 if far else score <= inst.E_G
    return Outcome(ok, {"score": score, "E_G": inst.E_G, "far": far})


# --------------------------------------------------------------------------
# wlcs-expansion


def gen_wlcs_expansion(rng):
    sigma = rng.randint(1, 5)
    return {
        "alphabet": GLYPHS[:sigma],
        "s": _word(rng, sigma, 0, 8),
        "t": _word(rng, sigma, 0, 8),
        "weights": {g: rng.randint(1, 5) for g in GLYPHS[:sigma]},
    }


def check_wlcs_expansion(case):
    alpha = Alphabet(case["alphabet"])
    w = WeightedAlphabet.from_mapping(alpha, case["weights"])
    s, t = alpha.seq(case["s"]), alpha.seq(case["t"])
    weighted = solvers.wlcs(s, t, w)
    unit = solvers.lcs(unary_expand(s, w), unary_expand(t, w))
    return Outcome(weighted == unit, {"wlcs": weighted, "lcs_expanded": unit})


# --------------------------------------------------------------------------
# dtwd-ineq


def gen_dtwd_ineq(rng):
    sigma = rng.randint(1, 4)
    q1, q2 = _word(rng, sigma, 0, 12), _word(rng, sigma, 0, 12)
    return {
        "alphabet": GLYPHS[:sigma],
        "Q1": q1,
        "Q2": q2,
        "r1": [rng.randint(1, 3) for _ in range(len(q1) + 1)],
        "r2": [rng.randint(1, 3) for _ in range(len(q2) + 1)],
    }


def check_dtwd_ineq(case):
    alpha = Alphabet(case["alphabet"])
    q1, q2 = alpha.seq(case["Q1"]), alpha.seq(case["Q2"])
    ok = verify_edit_dtwd_inequality(q1, q2, case["r1"], case["r2"])
    return Outcome(ok, {"edit": solvers.edit(q1, q2)})


# --------------------------------------------------------------------------
# frechet-gap / metric-gap


def gen_frechet(rng):
    n, d = rng.randint(1, 6), rng.randint(1, 5)
    return {"A": [_vec(rng, d) for _ in range(n)], "B": [_vec(rng, d) for _ in range(n)]}


def check_frechet_gap(case):
    inst = build_frechet_instance(_bits(case["A"]), _bits(case["B"]))
    fr, dt = inst.frechet(), inst.dtwd()
    ok = fr in (0, 1) and fr == dt == inst.expected_gap
    return Outcome(ok, {"frechet": fraction_str(fr), "dtwd": fraction_str(dt), "orthogonal": inst.has_orthogonal})


def check_metric_gap(case):
    plain = build_frechet_instance(_bits(case["A"]), _bits(case["B"]))
    inst = build_frechet_instance(_bits(case["A"]), _bits(case["B"]), metric=True)
    fr = inst.frechet()
    ok = (
        fr == inst.expected_gap
        and fr == plain.frechet() + Fraction(1, 2)
        and not inst.points.triangle_violations()
    )
    return Outcome(ok, {"frechet": fraction_str(fr), "orthogonal": inst.has_orthogonal})


# --------------------------------------------------------------------------
# solver-oracle


def gen_solver_oracle(rng):
    """One small input for every DP solver."""
    sigma = rng.randint(1, 4)
    alphabet = GLYPHS[:sigma]
    case = {
        "alphabet": alphabet,
        "lcs": [_word(rng, sigma, 0, 10), _word(rng, sigma, 0, 10)],
        "wlcs": [_word(rng, sigma, 0, 10), _word(rng, sigma, 0, 10)],
        "weights": {g: rng.randint(1, 6) for g in alphabet},
        "k_wlcs": [_word(rng, sigma, 0, 7) for _ in range(rng.randint(2, 4))],
        "edit": [_word(rng, sigma, 0, 5), _word(rng, sigma, 0, 5)],
        "dtwd": [_word(rng, sigma, 1, 6), _word(rng, sigma, 1, 6)],
        "distance_half_units": [[rng.randint(0, 4) for _ in alphabet] for _ in alphabet],
    }
    L = rng.randint(0, 4)
    case["local"] = {"L": L, "seqs": [_word(rng, sigma, L, L + 4) for _ in range(rng.randint(2, 3))]}
    return case


def solver_pairs(case) -> dict[str, tuple]:
    """``{solver: (dp value, brute-force value)}`` for one case."""
    alpha = Alphabet(case["alphabet"])
    seq = alpha.seq
    w = WeightedAlphabet.from_mapping(alpha, case["weights"])
    g = alpha.glyphs
    table = DistanceTable(g, g, case["distance_half_units"])
    s, t = map(seq, case["lcs"])
    ws, wt = map(seq, case["wlcs"])
    ks = [seq(x) for x in case["k_wlcs"]]
    es, et = map(seq, case["edit"])
    dx, dy = map(seq, case["dtwd"])
    loc = [seq(x) for x in case["local"]["seqs"]]
    L = case["local"]["L"]
    matching = solvers.lcs_matching(ws, wt, w)
    return {
        "lcs": (solvers.lcs(s, t), solvers.lcs_bruteforce(s, t)),
        "wlcs": (solvers.wlcs(ws, wt, w), solvers.wlcs_bruteforce(ws, wt, w)),
        "lcs_matching": (
            matching.score if matching.witness.is_valid([ws, wt]) and matching.witness.weight([ws, wt], w) == matching.score else -1,
            solvers.wlcs_bruteforce(ws, wt, w),
        ),
        "k_wlcs": (solvers.k_wlcs(ks, w), solvers.k_wlcs_bruteforce(ks, w)),
        "edit": (solvers.edit(es, et), solvers.edit_bruteforce(es, et)),
        "dtwd": (solvers.dtwd(dx, dy, table), solvers.dtwd_bruteforce(dx, dy, table)),
        "frechet": (solvers.frechet(dx, dy, table), solvers.frechet_bruteforce(dx, dy, table)),
        "local_k_lcs": (solvers.local_k_lcs(loc, L), solvers.local_k_lcs_bruteforce(loc, L)),
    }


def check_solver_oracle(case):
    pairs = solver_pairs(case)
    bad = {k: [str(a), str(b)] for k, (a, b) in pairs.items() if a != b}
    return Outcome(not bad, {"mismatches": bad})


# --------------------------------------------------------------------------
# satlink


def gen_satlink(rng):
    num_vars, num_clauses = rng.randint(1, 8), rng.randint(1, 10)
    cnf = random_cnf(rng, num_vars, num_clauses)
    return {"num_vars": cnf.num_vars, "clauses": [list(c) for c in cnf.clauses]}


def check_satlink(case):
    cnf = CnfFormula(case["num_vars"], tuple(tuple(c) for c in case["clauses"]))
    brute = max_sat_bruteforce(cnf)
    counter = CountingOracle(lambda lists, r: solvers.kmov_bruteforce(lists, r) is not None)
    mov = max_sat_via_mov(cnf, oracle=counter)
    via_lcs = max_sat_via_mov(cnf, oracle=far_pair_via_lcs)
    ok = brute == mov == via_lcs and counter.calls <= max_oracle_calls(cnf.num_clauses)
    return Outcome(ok, {"brute": brute, "mov": mov, "lcs": via_lcs, "oracle_calls": counter.calls})


SUITES: dict[str, Suite] = {
    s.name: s
    for s in [
        Suite("lcs-gap", gen_lcs_gap, check_lcs_gap, 200),
        Suite("klcs-gap", gen_klcs_gap, check_klcs_gap, 50),
        Suite("wlcs-expansion", gen_wlcs_expansion, check_wlcs_expansion, 300),
        Suite("dtwd-ineq", gen_dtwd_ineq, check_dtwd_ineq, 1000),
        Suite("frechet-gap", gen_frechet, check_frechet_gap, 100),
        Suite("metric-gap", gen_frechet, check_metric_gap, 100),
        Suite("solver-oracle", gen_solver_oracle, check_solver_oracle, 500),
        Suite("satlink", gen_satlink, check_satlink, 50),
    ]
}


def run_trial(name: str, seed: int, trial: int) -> tuple[int, dict, Outcome]:
    suite = SUITES[name]
    case = suite.generate(random.Random(seed + trial))
    return trial, case, suite.check(case)
