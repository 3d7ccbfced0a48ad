import random

import pytest

from seqhard.core import CnfFormula
from seqhard.lcs_reduction import far_pair_via_lcs
from seqhard.satlink import (
    CountingOracle,
    DimacsError,
    block_partition,
    max_oracle_calls,
    max_sat_bruteforce,
    max_sat_via_mov,
    parse_dimacs,
    random_cnf,
    to_dimacs,
    vectorize,
)
from seqhard.solvers import kmov_bruteforce

XOR_LIKE = "p cnf 2 4\n1 2 0\n-1 2 0\n1 -2 0\n-1 -2 0\n"


def brute_oracle(lists, r):
    return kmov_bruteforce(lists, r) is not None


def test_parse_dimacs_roundtrip():
    text = "c comment\np cnf 3 2\n1 -3 0\n2 3\n -1 0\n%\n"
    cnf = parse_dimacs(text)
    assert cnf.num_vars == 3
    assert cnf.clauses == ((1, -3), (2, 3, -1))
    assert parse_dimacs(to_dimacs(cnf)) == cnf


@pytest.mark.parametrize(
    "text, line",
    [
        ("1 2 0\n", 1),
        ("p cnf 2 1\n1 3 0\n", 2),
        ("p cnf 2 1\n1 x 0\n", 2),
        ("p cnf 2 1\n1 2\n", 2),
        ("p dnf 2 1\n1 0\n", 1),
        ("p cnf 2 1\n0\n", 2),
    ],
)
def test_parse_dimacs_errors_carry_line(text, line):
    with pytest.raises(DimacsError) as err:
        parse_dimacs(text)
    assert err.value.line == line


def test_parse_dimacs_clause_count():
    with pytest.raises(DimacsError):
        parse_dimacs("p cnf 2 2\n1 0\n")
    with pytest.raises(DimacsError):
        parse_dimacs("c nothing\n")


@pytest.mark.parametrize("n, k, sizes", [(5, 2, [3, 2]), (4, 2, [2, 2]), (7, 3, [3, 2, 2]), (1, 2, [1, 0])])
def test_block_partition(n, k, sizes):
    blocks = block_partition(n, k)
    assert [len(b) for b in blocks] == sizes
    assert [v for b in blocks for v in b] == list(range(1, n + 1))


def test_vectorize_counts_unsatisfied_clauses():
    cnf = parse_dimacs(XOR_LIKE)
    table = vectorize(cnf)
    # block 0 = {x1}: x1 = False satisfies clauses 2 and 4
    assert str(table.vectors[0][0]) == "1010"
    assert str(table.vectors[0][1]) == "0101"
    for c1 in range(2):
        for c2 in range(2):
            a, b = table.vectors[0][c1], table.vectors[1][c2]
            unsat = sum(x & y for x, y in zip(a, b))
            assignment = table.assignment(0, c1) | table.assignment(1, c2)
            assert unsat == cnf.num_clauses - cnf.satisfied(assignment)


def test_padded_lists_equal_size():
    cnf = CnfFormula(3, ((1, 2), (-3,)))
    table = vectorize(cnf)
    lists = table.padded_lists()
    assert [len(v) for v in table.vectors] == [4, 2]
    assert len(lists[0]) == len(lists[1]) == 4
    assert table.family().n == 4


@pytest.mark.parametrize("via", ["mov", "lcs"])
def test_xor_like_formula(via):
    cnf = parse_dimacs(XOR_LIKE)
    oracle = brute_oracle if via == "mov" else far_pair_via_lcs
    assert max_sat_bruteforce(cnf) == 3
    assert max_sat_via_mov(cnf, oracle=oracle) == 3


def test_single_clause():
    cnf = parse_dimacs("p cnf 1 1\n1 0\n")
    assert max_sat_bruteforce(cnf) == max_sat_via_mov(cnf) == max_sat_via_mov(cnf, oracle=far_pair_via_lcs) == 1


@pytest.mark.parametrize("k", [2, 3])
def test_random_formulas_agree(k):
    rng = random.Random(11 + k)
    for _ in range(25):
        cnf = random_cnf(rng, rng.randint(1, 8), rng.randint(1, 10))
        counter = CountingOracle(brute_oracle)
        assert max_sat_via_mov(cnf, k, counter) == max_sat_bruteforce(cnf)
        assert counter.calls <= max_oracle_calls(cnf.num_clauses)


def test_random_cnf_shape():
    cnf = random_cnf(random.Random(0), 5, 7)
    assert cnf.num_clauses == 7
    assert all(len({abs(l) for l in c}) == 3 for c in cnf.clauses)


def test_max_oracle_calls():
    assert [max_oracle_calls(m) for m in (1, 3, 4, 10)] == [2, 3, 4, 5]
