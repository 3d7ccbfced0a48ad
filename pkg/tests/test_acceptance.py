"""The ten acceptance criteria, each at its stated size and time limit.

Every criterion records one ``criterion N: PASS|FAIL`` line, shown in the
terminal summary (and inline with ``pytest -s``).
"""

import itertools
import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from seqhard import suites
from seqhard.cli import main
from seqhard.core import Alphabet, BitVector, VectorFamily, WeightedAlphabet, k_inner_product
from seqhard.dtwd_frechet import build_frechet_instance, verify_edit_dtwd_inequality
from seqhard.klcs_reduction import (
    build_klcs_instance,
    build_local_klcs_instance,
    k_coord_gadget,
    k_vector_gadget,
    make_k_schedule,
)
from seqhard.lcs_reduction import build_instance, unary_expand
from seqhard.satlink import random_cnf, to_dimacs
from seqhard import solvers


@contextmanager
def criterion(num, label, limit):
    start = time.perf_counter()
    failures = []
    try:
        yield failures
    except Exception as exc:
        failures.append(f"exception {exc!r}")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < limit
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'} {label} ({elapsed:.2f} s, limit {limit} s)"
    if failures:
        line += f" {len(failures)} failures, first: {failures[0]}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert not failures, line
    assert elapsed < limit, line


def vec(rng, d, p=0.5):
    return tuple(int(rng.random() < p) for _ in range(d))


def family(lists):
    return VectorFamily(tuple(tuple(BitVector(v) for v in lst) for lst in lists))


def test_criterion_01_lcs_gap_dichotomy():
    rng = random.Random(101)
    with criterion(1, "LCS gap dichotomy, 200 instances", 60) as bad:
        for trial in range(200):
            n, d = rng.randint(1, 4), rng.randint(1, 3)
            A = [vec(rng, d) for _ in range(n)]
            B = [vec(rng, d) for _ in range(n)]
            r = rng.randint(0, d - 1)
            inst = build_instance(A, B, r, "compact")
            far = solvers.mov_bruteforce(A, B, r) is not None
            score = inst.score()
            if (score >= inst.E_G + 1) is not far or (not far and score > inst.E_G):
                bad.append((trial, A, B, r, score, inst.E_G))


def test_criterion_02_reference_weights_spot_check():
    with criterion(2, "reference-weight spot check", 1) as bad:
        far = build_instance([(0,)], [(1,)], 0, "paper")
        close = build_instance([(1,)], [(1,)], 0, "paper")
        s = far.schedule
        if (s.X, s.A, s.B, s.C) != (100, 200, 40_000, 1_600_000_000):
            bad.append(("schedule", s.X, s.A, s.B, s.C))
        if far.E_G != 3_200_080_200 or close.E_G != 3_200_080_200:
            bad.append(("E_G", far.E_G, close.E_G))
        if not far.score() >= 3_200_080_201:
            bad.append(("far", far.score()))
        if not close.score() <= 3_200_080_200:
            bad.append(("close", close.score()))


def test_criterion_03_wlcs_expansion():
    rng = random.Random(103)
    glyphs = "abcde"
    with criterion(3, "WLCS to LCS expansion, 300 pairs", 10) as bad:
        for trial in range(300):
            sigma = rng.randint(1, 5)
            alpha = Alphabet(glyphs[:sigma])
            w = WeightedAlphabet.from_mapping(alpha, {g: rng.randint(1, 5) for g in glyphs[:sigma]})
            s, t = (alpha.seq("".join(rng.choice(glyphs[:sigma]) for _ in range(rng.randint(0, 8)))) for _ in range(2))
            expanded = solvers.lcs(unary_expand(s, w), unary_expand(t, w))
            if not expanded == solvers.wlcs(s, t, w) == solvers.wlcs_bruteforce(s, t, w):
                bad.append((trial, s.text(), t.text()))


def test_criterion_04_gadget_claims():
    with criterion(4, "coordinate and vector gadget claims, k in {2,3}, d <= 3", 60) as bad:
        for k, kind in itertools.product((2, 3), ("paper", "compact")):
            coord = make_k_schedule(kind, k, 1, 0)
            w = coord.weights()
            for bits in itertools.product((0, 1), repeat=k):
                score = solvers.k_wlcs([k_coord_gadget(t, b, k) for t, b in enumerate(bits, 1)], w)
                if score != (coord.E_nc if all(bits) else coord.E_oc):
                    bad.append(("coord", kind, k, bits, score))
            for d in (1, 2, 3):
                for r in range(d + 1):
                    s = make_k_schedule(kind, k, d, r)
                    w = s.weights()
                    for vecs in itertools.product(itertools.product((0, 1), repeat=d), repeat=k):
                        score = solvers.k_wlcs([k_vector_gadget(t, v, k) for t, v in enumerate(vecs, 1)], w)
                        far = k_inner_product(vecs) <= r
                        if (far and score < s.E_o) or (not far and score != s.E_n):
                            bad.append(("vector", kind, k, d, r, vecs, score))


def test_criterion_05_klcs_gap_dichotomy():
    seen = {True: 0, False: 0}
    with criterion(5, "k-LCS gap dichotomy, exhaustive k=2 and 50 sampled k=3", 300) as bad:
        def check(lists, r):
            f = family(lists)
            inst = build_klcs_instance(f, r, "compact")
            far = solvers.kmov_bruteforce(f, r) is not None
            seen[far] += len(lists) == 3
            if (inst.score() > inst.E_G) is not far:
                bad.append((lists, r))

        for n, d in [(1, 1), (1, 2), (2, 1), (2, 2)]:
            vecs = list(itertools.product((0, 1), repeat=d))
            for A in itertools.product(vecs, repeat=n):
                for B in itertools.product(vecs, repeat=n):
                    for r in range(d):
                        check([A, B], r)
        rng = random.Random(105)
        # dense draws on every other sample so close tuples are well represented
        for i in range(50):
            n, d = rng.randint(1, 2), rng.randint(1, 2)
            p = 0.5 if i % 2 else 0.9
            check([[vec(rng, d, p) for _ in range(n)] for _ in range(3)], rng.randint(0, d - 1))
        if min(seen.values()) < 10:
            bad.append(("class balance", seen))


def test_criterion_06_local_klcs():
    rng = random.Random(106)
    with criterion(6, "local k-LCS, 50 instances", 120) as bad:
        for trial in range(50):
            n, d = rng.randint(1, 3), rng.randint(1, 2)
            lists = [[vec(rng, d) for _ in range(n)] for _ in range(2)]
            r = rng.randint(0, d - 1)
            inst = build_local_klcs_instance(family(lists), r)
            score = inst.score()
            far = solvers.kmov_bruteforce(lists, r) is not None
            if (far and score < inst.E_o) or (not far and score != inst.E_n):
                bad.append((trial, lists, r, score))


def test_criterion_07_dtwd_inequality():
    rng = random.Random(107)
    with criterion(7, "EDIT <= DTWD after padding, 1000 cases", 30) as bad:
        for trial in range(1000):
            sigma = rng.randint(1, 4)
            alpha = Alphabet("abcd"[:sigma])
            q1, q2 = ("".join(rng.choice("abcd"[:sigma]) for _ in range(rng.randint(0, 12))) for _ in range(2))
            r1 = [rng.randint(1, 3) for _ in range(len(q1) + 1)]
            r2 = [rng.randint(1, 3) for _ in range(len(q2) + 1)]
            if not verify_edit_dtwd_inequality(alpha.seq(q1), alpha.seq(q2), r1, r2):
                bad.append((trial, q1, q2, r1, r2))


def test_criterion_08_frechet_gadgets():
    rng = random.Random(108)
    half = Fraction(1, 2)
    with criterion(8, "Frechet, DTWD and metric gadget gaps, 100 instances", 60) as bad:
        for trial in range(100):
            n, d = rng.randint(1, 6), rng.randint(1, 5)
            A = [vec(rng, d) for _ in range(n)]
            B = [vec(rng, d) for _ in range(n)]
            orth = solvers.min_inner(A, B) == 0
            plain = build_frechet_instance(A, B)
            metric = build_frechet_instance(A, B, metric=True)
            fr, dt, mf = plain.frechet(), plain.dtwd(), metric.frechet()
            want = 0 if orth else 1
            if not (fr == dt == want and mf == want + half):
                bad.append((trial, A, B, fr, dt, mf))
            if metric.points.triangle_violations():
                bad.append((trial, "triangle"))


def test_criterion_09_maxsat_end_to_end(tmp_path, capsys):
    rng = random.Random(109)
    with criterion(9, "MAX-SAT via brute, mov and lcs, 50 formulas", 300) as bad:
        for trial in range(50):
            cnf = random_cnf(rng, rng.randint(3, 8), rng.randint(1, 10))
            path = tmp_path / f"f{trial}.cnf"
            path.write_text(to_dimacs(cnf))
            results = {}
            for via in ("brute", "mov", "lcs"):
                code = main(["maxsat", str(path), "--via", via])
                out = capsys.readouterr()
                results[via] = (code, out.out.strip())
                if via == "mov":
                    calls = int(out.err.split("oracle calls ")[1].split()[0])
                    if calls > math.ceil(math.log2(cnf.num_clauses + 1)) + 1:
                        bad.append((trial, "calls", calls))
            if len({v for v in results.values()}) != 1 or results["brute"][0] != 0:
                bad.append((trial, results))


def test_criterion_10_solver_oracles():
    alpha = Alphabet("abcd")
    with criterion(10, "DP solvers against brute force, 500 inputs each", 120) as bad:
        for trial in range(500):
            case = suites.gen_solver_oracle(random.Random(110_000 + trial))
            for name, (dp, brute) in suites.solver_pairs(case).items():
                if dp != brute:
                    bad.append((trial, name, dp, brute))
            rng = random.Random(trial)
            s, t = (alpha.seq("".join(rng.choice("abcd") for _ in range(rng.randint(0, 9)))) for _ in range(2))
            brute = solvers.lcs_bruteforce(s, t)
            if solvers.lcs_banded(s, t, max(len(s), len(t))) != brute:
                bad.append((trial, "lcs_banded"))
            if solvers.indel_distance(s, t) != len(s) + len(t) - 2 * brute:
                bad.append((trial, "indel_distance"))
            ks = [alpha.seq("".join(rng.choice("ab") for _ in range(rng.randint(0, 6)))) for _ in range(3)]
            if solvers.k_lcs(ks) != solvers.k_wlcs_bruteforce(ks, WeightedAlphabet.unit(alpha)):
                bad.append((trial, "k_lcs"))
