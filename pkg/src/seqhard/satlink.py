"""DIMACS CNF input and split-and-list reductions from MAX-CNF-SAT to (k-)MOV."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Callable, Sequence as SequenceLike

from .core import BitVector, CnfFormula, ReductionError, VectorFamily
from .solvers import kmov_bruteforce

MAX_BLOCK = 20
MAX_BRUTE_VARS = 22

# (lists of vectors, r) -> does some tuple, one vector per list, have k-wise inner product <= r?
FarOracle = Callable[[list[list[BitVector]], int], bool]


class DimacsError(ReductionError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF text. Clause order is preserved."""
    num_vars = num_clauses = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        last_line = lineno
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if num_vars is not None:
                raise DimacsError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"malformed header {line!r}", lineno)
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"malformed header {line!r}", lineno) from None
            if num_vars < 0 or num_clauses < 0:
                raise DimacsError("negative counts in header", lineno)
            continue
        if num_vars is None:
            raise DimacsError("clause before the 'p cnf' header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                if not current:
                    raise DimacsError("empty clause", lineno)
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > num_vars:
                raise DimacsError(f"literal {lit} exceeds num_vars {num_vars}", lineno)
            else:
                current.append(lit)
    if num_vars is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        raise DimacsError("last clause is missing its terminating 0", last_line)
    if len(clauses) != num_clauses:
        raise DimacsError(f"header declares {num_clauses} clauses but {len(clauses)} were read")
    return CnfFormula(num_vars, tuple(clauses))


def to_dimacs(cnf: CnfFormula) -> str:
    lines = [f"p cnf {cnf.num_vars} {cnf.num_clauses}"]
    lines += [" ".join(map(str, c)) + " 0" for c in cnf.clauses]
    return "\n".join(lines) + "\n"


def block_partition(num_vars: int, k: int) -> list[tuple[int, ...]]:
    """Contiguous blocks of variables; earlier blocks take the larger share."""
    base, extra = divmod(num_vars, k)
    blocks, start = [], 1
    for b in range(k):
        size = base + (b < extra)
        blocks.append(tuple(range(start, start + size)))
        start += size
    return blocks


@dataclass(frozen=True)
class SplitAssignmentTable:
    """For every block, the clause-miss vector of each partial assignment.

    ``vectors[b][c]`` belongs to the assignment whose bit ``i`` of the counter
    ``c`` is the value of ``blocks[b][i]``. Coordinate ``j`` is 0 when that
    partial assignment already satisfies clause ``j``.
    """

    blocks: tuple[tuple[int, ...], ...]
    vectors: tuple[tuple[BitVector, ...], ...]
    num_clauses: int

    @property
    def k(self) -> int:
        return len(self.blocks)

    def assignment(self, block: int, counter: int) -> dict[int, bool]:
        return {v: bool(counter >> i & 1) for i, v in enumerate(self.blocks[block])}

    def padded_lists(self) -> list[list[BitVector]]:
        """Lists of equal size, topped up by repeating each list's last vector.

        Repeats leave the set of achievable inner products unchanged.
        """
        n = max(len(v) for v in self.vectors)
        return [list(v) + [v[-1]] * (n - len(v)) for v in self.vectors]

    def family(self) -> VectorFamily:
        return VectorFamily(tuple(tuple(lst) for lst in self.padded_lists()))

    def to_json(self) -> str:
        return json.dumps(
            {
                "k": self.k,
                "num_clauses": self.num_clauses,
                "blocks": [list(b) for b in self.blocks],
                "vectors": [[str(v) for v in vs] for vs in self.vectors],
            },
            indent=2,
        )


def vectorize(cnf: CnfFormula, k: int = 2) -> SplitAssignmentTable:
    if k < 2:
        raise ReductionError("split-and-list needs k >= 2 blocks")
    if cnf.num_clauses == 0:
        raise ReductionError("cannot vectorize a formula without clauses (dimension 0)")
    blocks = block_partition(cnf.num_vars, k)
    if max(len(b) for b in blocks) > MAX_BLOCK:
        raise ReductionError(f"block of {max(len(b) for b in blocks)} variables exceeds {MAX_BLOCK}")
    table = []
    for block in blocks:
        local = set(block)
        vecs = []
        for counter in range(1 << len(block)):
            value = {v: bool(counter >> i & 1) for i, v in enumerate(block)}
            bits = tuple(
                0 if any(abs(l) in local and value[abs(l)] == (l > 0) for l in clause) else 1
                for clause in cnf.clauses
            )
            vecs.append(BitVector(bits))
        table.append(tuple(vecs))
    return SplitAssignmentTable(tuple(blocks), tuple(table), cnf.num_clauses)


def _brute_oracle(lists: list[list[BitVector]], r: int) -> bool:
    return kmov_bruteforce(lists, r) is not None


class CountingOracle:
    """Wraps a far-tuple oracle and counts its calls."""

    def __init__(self, oracle: FarOracle):
        self.oracle = oracle
        self.calls = 0

    def __call__(self, lists, r):
        self.calls += 1
        return self.oracle(lists, r)


def max_sat_via_mov(cnf: CnfFormula, k: int = 2, oracle: FarOracle | None = None) -> int:
    """MAX-CNF-SAT as ``M - min_r {some tuple is r-far}``, found by binary search.

    ``oracle`` defaults to brute-force k-MOV; any decision procedure with the
    same signature (for example one routed through a string reduction) can be
    injected. At most ``ceil(log2(M + 1)) + 1`` oracle calls are made.
    """
    if cnf.num_clauses == 0:
        return 0
    ask = oracle or _brute_oracle
    lists = vectorize(cnf, k).padded_lists()
    m = cnf.num_clauses
    lo, hi = 0, m  # r = M is always far
    while lo < hi:
        mid = (lo + hi) // 2
        if ask(lists, mid):
            hi = mid
        else:
            lo = mid + 1
    return m - lo


def max_oracle_calls(num_clauses: int) -> int:
    return math.ceil(math.log2(num_clauses + 1)) + 1


def max_sat_bruteforce(cnf: CnfFormula) -> int:
    if cnf.num_vars > MAX_BRUTE_VARS:
        raise ReductionError(f"brute-force MAX-SAT is limited to {MAX_BRUTE_VARS} variables")
    if cnf.num_clauses == 0:
        return 0
    return max(
        cnf.satisfied(values)
        for values in itertools.product((False, True), repeat=cnf.num_vars)
    )


def random_cnf(rng, num_vars: int, num_clauses: int, width: int = 3) -> CnfFormula:
    """Uniform random clauses of ``min(width, num_vars)`` distinct variables."""
    width = min(width, num_vars)
    clauses = []
    for _ in range(num_clauses):
        vars_ = rng.sample(range(1, num_vars + 1), width)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vars_))
    return CnfFormula(num_vars, tuple(clauses))
