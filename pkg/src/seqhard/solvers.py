"""Reference dynamic-programming solvers and exponential brute-force oracles.

The (k-)WLCS tables are computed one slice at a time with numpy. A slice of
the next row/plane is ``max(prev, diag + w * match)`` followed by a running
maximum along every remaining axis, which is exactly the textbook recurrence
``L[i, j, ...] = max(L[i-1, j, ...], L[i, j-1, ...], ..., L[i-1, j-1, ...] + w)``
unrolled over the axes that do not depend on ``i``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence as SequenceLike

import numpy as np

from .core import (
    BitVector,
    DistanceTable,
    Matching,
    ReductionError,
    Sequence,
    VectorFamily,
    WeightedAlphabet,
    _same_alphabet,
    as_bitvector,
    checked,
    inner_product,
    k_inner_product,
)

MAX_K = 4
MAX_CELLS = 10**8
MAX_WITNESS_CELLS = 4 * 10**6
BRUTE_LIMIT = 14


@dataclass(frozen=True)
class SolveResult:
    """A score plus an optional witness.

    Distance scores (DTWD, Fréchet) are integer half-units; ``value`` gives
    the exact rational.
    """

    score: int
    witness: Matching | tuple[tuple[int, int], ...] | None = None
    half_units: bool = False

    @property
    def value(self) -> int | Fraction:
        return Fraction(self.score, 2) if self.half_units else self.score


# --------------------------------------------------------------------------
# (k-)WLCS family


def _weights_for(seqs: SequenceLike[Sequence], w: WeightedAlphabet | None) -> np.ndarray:
    alpha = _same_alphabet(*seqs)
    if w is None:
        return np.ones(len(alpha), dtype=np.int64)
    if w.alphabet != alpha:
        raise ReductionError("weights do not cover the sequences' alphabet")
    return np.asarray(w.weights, dtype=np.int64)


def _kwlcs_engine(arrays: list[np.ndarray], weights: np.ndarray) -> int:
    """k-dimensional WLCS DP on integer arrays, sliced along the longest input."""
    if any(len(a) == 0 for a in arrays):
        return 0
    cells = 1
    for a in arrays:
        cells *= len(a) + 1
    if cells > MAX_CELLS:
        raise ReductionError(
            f"DP table of {cells} cells exceeds the desk-scale cap of {MAX_CELLS}"
        )
    shortest = min(arrays, key=len)
    checked(int(weights[shortest].sum()), "score bound")

    order = sorted(range(len(arrays)), key=lambda i: -len(arrays[i]))
    lead = arrays[order[0]]
    rest = [arrays[i] for i in order[1:]]
    shape = tuple(len(a) + 1 for a in rest)
    inner = tuple(slice(1, None) for _ in rest)
    diag = tuple(slice(None, -1) for _ in rest)

    masks: dict[int, np.ndarray] = {}

    def mask_for(sym: int) -> np.ndarray:
        m = masks.get(sym)
        if m is None:
            m = rest[0] == sym
            for a in rest[1:]:
                m = np.logical_and.outer(m, a == sym)
            masks[sym] = m
        return m

    prev = np.zeros(shape, dtype=np.int64)
    for sym in lead.tolist():
        cur = np.zeros(shape, dtype=np.int64)
        hit = np.where(mask_for(sym), prev[diag] + weights[sym], 0)
        cur[inner] = np.maximum(prev[inner], hit)
        for axis in range(cur.ndim):
            np.maximum.accumulate(cur, axis=axis, out=cur)
        prev = cur
    return int(prev[(-1,) * len(rest)])


def _arrays(seqs: SequenceLike[Sequence]) -> list[np.ndarray]:
    return [np.fromiter(s.symbols, dtype=np.int64, count=len(s)) for s in seqs]


def lcs(s: Sequence, t: Sequence) -> int:
    """Length of a longest common subsequence."""
    w = _weights_for([s, t], None)
    return _kwlcs_engine(_arrays([s, t]), w)


def wlcs(s: Sequence, t: Sequence, w: WeightedAlphabet) -> int:
    """Maximum total weight of a common subsequence."""
    return _kwlcs_engine(_arrays([s, t]), _weights_for([s, t], w))


def k_wlcs(seqs: SequenceLike[Sequence], w: WeightedAlphabet | None = None) -> int:
    """k-dimensional WLCS for 2 <= k <= 4 sequences (unit weights if ``w`` is None)."""
    if not 2 <= len(seqs) <= MAX_K:
        raise ReductionError(f"k = {len(seqs)} is outside the supported range [2, {MAX_K}]")
    return _kwlcs_engine(_arrays(seqs), _weights_for(seqs, w))


def k_lcs(seqs: SequenceLike[Sequence]) -> int:
    return k_wlcs(seqs, None)


def lcs_banded(s: Sequence, t: Sequence, band: int) -> int:
    """LCS restricted to cells with ``|i - j| <= band``.

    A lower bound on :func:`lcs`, exact whenever some optimal matching stays
    inside the band. Not used by any verification suite.
    """
    _same_alphabet(s, t)
    m, n = len(s), len(t)
    prev = [0] * (n + 1)
    for i in range(1, m + 1):
        cur = [0] * (n + 1)
        lo, hi = max(1, i - band), min(n, i + band)
        for j in range(lo, hi + 1):
            best = max(prev[j], cur[j - 1])
            if s[i - 1] == t[j - 1]:
                best = max(best, prev[j - 1] + 1)
            cur[j] = best
        prev = cur
    return max(prev)


def lcs_matching(s: Sequence, t: Sequence, w: WeightedAlphabet | None = None) -> SolveResult:
    """WLCS (LCS when ``w`` is None) with a witness matching.

    Backtracking prefers the diagonal, then left, then up, so the witness is
    deterministic.
    """
    weights = _weights_for([s, t], w).tolist()
    m, n = len(s), len(t)
    if (m + 1) * (n + 1) > MAX_WITNESS_CELLS:
        raise ReductionError("instance too large for witness reconstruction")
    a, b = s.symbols, t.symbols
    table = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(1, m + 1):
        row, up = table[i], table[i - 1]
        ai = a[i - 1]
        wi = weights[ai]
        for j in range(1, n + 1):
            best = up[j] if up[j] > row[j - 1] else row[j - 1]
            if ai == b[j - 1] and up[j - 1] + wi > best:
                best = up[j - 1] + wi
            row[j] = best
    pairs = []
    i, j = m, n
    while i > 0 and j > 0:
        v = table[i][j]
        if a[i - 1] == b[j - 1] and v == table[i - 1][j - 1] + weights[a[i - 1]]:
            pairs.append((i - 1, j - 1))
            i, j = i - 1, j - 1
        elif v == table[i][j - 1]:
            j -= 1
        else:
            i -= 1
    pairs.reverse()
    return SolveResult(table[m][n], Matching(tuple(pairs)))


# --------------------------------------------------------------------------
# edit-type distances


def edit(s: Sequence, t: Sequence) -> int:
    """Unit-cost Levenshtein distance (Wagner–Fischer)."""
    _same_alphabet(s, t)
    a, b = s.symbols, t.symbols
    prev = list(range(len(b) + 1))
    for i, x in enumerate(a, 1):
        cur = [i] + [0] * len(b)
        for j, y in enumerate(b, 1):
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (x != y))
        prev = cur
    return prev[-1]


def indel_distance(s: Sequence, t: Sequence) -> int:
    """Edit distance when only insertions and deletions are allowed."""
    _same_alphabet(s, t)
    a, b = s.symbols, t.symbols
    prev = list(range(len(b) + 1))
    for i, x in enumerate(a, 1):
        cur = [i] + [0] * len(b)
        for j, y in enumerate(b, 1):
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1)
            if x == y:
                cur[j] = min(cur[j], prev[j - 1])
        prev = cur
    return prev[-1]


# --------------------------------------------------------------------------
# traversal distances


def _traversal_table(cost: list[list[int]], combine: Callable[[int, int], int]):
    m, n = len(cost), len(cost[0])
    table = [[0] * n for _ in range(m)]
    for i in range(m):
        for j in range(n):
            c = cost[i][j]
            if i == 0 and j == 0:
                table[i][j] = c
                continue
            best = None
            if i and j:
                best = table[i - 1][j - 1]
            if j and (best is None or table[i][j - 1] < best):
                best = table[i][j - 1]
            if i and (best is None or table[i - 1][j] < best):
                best = table[i - 1][j]
            table[i][j] = combine(best, c)
    return table


def _traverse(x: Sequence, y: Sequence, dist: DistanceTable, combine, witness: bool) -> SolveResult:
    if not len(x) or not len(y):
        raise ReductionError("traversals need two nonempty sequences")
    cost = dist.matrix_for(x, y)
    table = _traversal_table(cost, combine)
    m, n = len(x), len(y)
    path = None
    if witness:
        steps = [(m - 1, n - 1)]
        i, j = m - 1, n - 1
        while (i, j) != (0, 0):
            cands = []
            if i and j:
                cands.append((i - 1, j - 1))
            if j:
                cands.append((i, j - 1))
            if i:
                cands.append((i - 1, j))
            target = table[i][j]
            for pi, pj in cands:
                if combine(table[pi][pj], cost[i][j]) == target:
                    i, j = pi, pj
                    break
            steps.append((i, j))
        path = tuple(reversed(steps))
    return SolveResult(table[-1][-1], path, half_units=True)


def _add(a: int, b: int) -> int:
    return a + b


def dtwd(x: Sequence, y: Sequence, dist: DistanceTable) -> Fraction:
    """Dynamic time warping distance.

    The starting configuration ``(x[0], y[0])`` contributes its distance once;
    every move contributes the distance of the configuration it lands on.
    """
    return _traverse(x, y, dist, _add, False).value


def frechet(x: Sequence, y: Sequence, dist: DistanceTable) -> Fraction:
    """Discrete Fréchet distance (same traversals as DTWD, max instead of sum)."""
    return _traverse(x, y, dist, max, False).value


def dtwd_traversal(x: Sequence, y: Sequence, dist: DistanceTable) -> SolveResult:
    return _traverse(x, y, dist, _add, True)


def frechet_traversal(x: Sequence, y: Sequence, dist: DistanceTable) -> SolveResult:
    return _traverse(x, y, dist, max, True)


def traversal_cost(path, x: Sequence, y: Sequence, dist: DistanceTable, *, use_max: bool = False) -> int:
    """Half-unit cost of an explicit traversal; validates its moves."""
    if path[0] != (0, 0) or path[-1] != (len(x) - 1, len(y) - 1):
        raise ReductionError("traversal must start at (0, 0) and end at the last points")
    for (i, j), (k, l) in zip(path, path[1:]):
        if (k - i, l - j) not in {(1, 0), (0, 1), (1, 1)}:
            raise ReductionError(f"illegal move {(i, j)} -> {(k, l)}")
    cost = dist.matrix_for(x, y)
    vals = [cost[i][j] for i, j in path]
    return max(vals) if use_max else sum(vals)


# --------------------------------------------------------------------------
# Local-k-LCS


def _common_symbols(seqs: SequenceLike[Sequence]) -> set[int]:
    common = set(seqs[0].symbols)
    for s in seqs[1:]:
        common &= set(s.symbols)
    return common


def _maximal_windows(seq: Sequence, L: int, keep: set[int]) -> list[tuple[int, ...]]:
    """Distinct contents of the windows not contained in another window.

    A window's content is its length-``L`` substring with every symbol outside
    ``keep`` removed. With ``a``/``b`` the (nondecreasing) reduced start/end of
    each window, window ``i`` is inside another one exactly when it shares an
    end with its predecessor or a start with a strictly longer successor.
    """
    reduced = [s for s in seq.symbols if s in keep]
    count = [0]
    for s in seq.symbols:
        count.append(count[-1] + (s in keep))
    starts = range(len(seq) - L + 1)
    a = [count[i] for i in starts]
    b = [count[i + L] for i in starts]
    out: dict[tuple[int, ...], None] = {}
    last = len(a) - 1
    for i in starts:
        if i > 0 and b[i - 1] == b[i]:
            continue
        if i < last and a[i + 1] == a[i] and b[i + 1] > b[i]:
            continue
        out.setdefault(tuple(reduced[a[i]:b[i]]), None)
    contents = sorted(out, key=len, reverse=True)
    # drop contents that occur verbatim inside a longer kept content
    keys = [("".join(chr(0x100 + s) for s in c), c) for c in contents]
    kept: list[tuple[str, tuple[int, ...]]] = []
    for text, c in keys:
        if not any(text in bigger for bigger, _ in kept):
            kept.append((text, c))
    return [c for _, c in kept]


def local_k_lcs(seqs: SequenceLike[Sequence], L: int, *, naive: bool = False) -> int:
    """Best k-LCS over one length-``L`` substring per sequence.

    With ``naive=True`` every window tuple is scored. Otherwise windows are
    first reduced to their matchable symbols and windows whose content sits
    inside another window's content are skipped; k-LCS is monotone under that
    containment, so the maximum is unchanged.
    """
    alpha = _same_alphabet(*seqs)
    if not 2 <= len(seqs) <= MAX_K:
        raise ReductionError(f"k = {len(seqs)} is outside the supported range [2, {MAX_K}]")
    for s in seqs:
        if L > len(s):
            raise ReductionError(f"window length {L} exceeds a sequence of length {len(s)}")
    if L < 0:
        raise ReductionError("window length must be nonnegative")
    ones = np.ones(len(alpha), dtype=np.int64)

    if naive:
        windows = [
            [np.asarray(s.symbols[i:i + L], dtype=np.int64) for i in range(len(s) - L + 1)]
            for s in seqs
        ]
        return max(_kwlcs_engine(list(tup), ones) for tup in itertools.product(*windows))

    keep = _common_symbols(seqs)
    candidates = [_maximal_windows(s, L, keep) for s in seqs]
    best = 0
    combos = sorted(
        itertools.product(*candidates), key=lambda tup: -min(len(c) for c in tup)
    )
    for tup in combos:
        if min(len(c) for c in tup) <= best:
            break
        best = max(best, _kwlcs_engine([np.asarray(c, dtype=np.int64) for c in tup], ones))
    return best


# --------------------------------------------------------------------------
# vector oracles


def _vecs(lst) -> list[BitVector]:
    return [as_bitvector(v) for v in lst]


def mov_bruteforce(A, B, r: int) -> tuple[int, int] | None:
    """Lexicographically smallest ``(i, j)`` with ``<A[i], B[j]> <= r``, or None."""
    A, B = _vecs(A), _vecs(B)
    for i, a in enumerate(A):
        for j, b in enumerate(B):
            if inner_product(a, b) <= r:
                return (i, j)
    return None


def _family_lists(family) -> list[list[BitVector]]:
    if isinstance(family, VectorFamily):
        return [list(lst) for lst in family.lists]
    return [_vecs(lst) for lst in family]


def kmov_bruteforce(family, r: int) -> tuple[int, ...] | None:
    """Lexicographically smallest index tuple whose k-wise inner product is <= r."""
    lists = _family_lists(family)
    for idx in itertools.product(*(range(len(lst)) for lst in lists)):
        if k_inner_product([lst[i] for lst, i in zip(lists, idx)]) <= r:
            return idx
    return None


def min_inner(A, B) -> int:
    return min(inner_product(a, b) for a in _vecs(A) for b in _vecs(B))


def min_k_inner(family) -> int:
    lists = _family_lists(family)
    return min(k_inner_product(tup) for tup in itertools.product(*lists))


# --------------------------------------------------------------------------
# brute-force oracles


def _is_subsequence(needle: Iterable[int], hay: tuple[int, ...]) -> bool:
    it = iter(hay)
    return all(any(x == y for y in it) for x in needle)


def k_wlcs_bruteforce(
    seqs: SequenceLike[Sequence], w: WeightedAlphabet | None = None, *, limit: int = BRUTE_LIMIT
) -> int:
    """Enumerate every subsequence of the shortest input and keep the heaviest common one."""
    weights = _weights_for(seqs, w).tolist()
    shortest = min(seqs, key=len)
    if len(shortest) > limit:
        raise ReductionError(f"brute force needs a sequence of length <= {limit}")
    others = [s.symbols for s in seqs if s is not shortest]
    base = shortest.symbols
    best = 0
    for mask in range(1 << len(base)):
        sub = [base[i] for i in range(len(base)) if mask >> i & 1]
        score = sum(weights[x] for x in sub)
        if score > best and all(_is_subsequence(sub, o) for o in others):
            best = score
    return best


def lcs_bruteforce(s: Sequence, t: Sequence, *, limit: int = BRUTE_LIMIT) -> int:
    return k_wlcs_bruteforce([s, t], None, limit=limit)


def wlcs_bruteforce(s: Sequence, t: Sequence, w: WeightedAlphabet, *, limit: int = BRUTE_LIMIT) -> int:
    return k_wlcs_bruteforce([s, t], w, limit=limit)


def edit_bruteforce(s: Sequence, t: Sequence, *, limit: int = 6) -> int:
    """Breadth-first search over single insert/delete/substitute operations.

    Intermediate strings never need to be longer than the longer input or use
    symbols outside the inputs, so the search space is finite.
    """
    _same_alphabet(s, t)
    if max(len(s), len(t)) > limit:
        raise ReductionError(f"edit brute force needs lengths <= {limit}")
    sigma = sorted(set(s.symbols) | set(t.symbols))
    cap = max(len(s), len(t))
    start, goal = s.symbols, t.symbols
    seen = {start: 0}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        dist = seen[cur]
        if cur == goal:
            return dist
        nbrs = []
        for i in range(len(cur)):
            nbrs.append(cur[:i] + cur[i + 1:])
            nbrs.extend(cur[:i] + (c,) + cur[i + 1:] for c in sigma if c != cur[i])
        if len(cur) < cap:
            for i in range(len(cur) + 1):
                nbrs.extend(cur[:i] + (c,) + cur[i:] for c in sigma)
        for nb in nbrs:
            if nb not in seen:
                seen[nb] = dist + 1
                queue.append(nb)
    raise AssertionError("unreachable: the goal is always reachable")


def _all_traversals(m: int, n: int):
    def rec(i, j, path):
        if (i, j) == (m - 1, n - 1):
            yield path
            return
        for di, dj in ((1, 1), (0, 1), (1, 0)):
            k, l = i + di, j + dj
            if k < m and l < n:
                path.append((k, l))
                yield from rec(k, l, path)
                path.pop()

    yield from rec(0, 0, [(0, 0)])


def _traversal_bruteforce(x, y, dist, use_max, limit):
    if max(len(x), len(y)) > limit:
        raise ReductionError(f"traversal brute force needs lengths <= {limit}")
    cost = dist.matrix_for(x, y)
    best = None
    for path in _all_traversals(len(x), len(y)):
        vals = [cost[i][j] for i, j in path]
        c = max(vals) if use_max else sum(vals)
        if best is None or c < best:
            best = c
    return Fraction(best, 2)


def dtwd_bruteforce(x: Sequence, y: Sequence, dist: DistanceTable, *, limit: int = 7) -> Fraction:
    """Minimum over every explicit monotone traversal."""
    return _traversal_bruteforce(x, y, dist, False, limit)


def frechet_bruteforce(x: Sequence, y: Sequence, dist: DistanceTable, *, limit: int = 7) -> Fraction:
    return _traversal_bruteforce(x, y, dist, True, limit)


def local_k_lcs_bruteforce(seqs: SequenceLike[Sequence], L: int, *, limit: int = BRUTE_LIMIT) -> int:
    """Every window tuple scored by subsequence enumeration."""
    best = 0
    alpha = _same_alphabet(*seqs)
    for starts in itertools.product(*(range(len(s) - L + 1) for s in seqs)):
        windows = [Sequence(s.symbols[i:i + L], alpha) for s, i in zip(seqs, starts)]
        best = max(best, k_wlcs_bruteforce(windows, None, limit=limit))
    return best
