"""k-Most-Orthogonal-Vectors to k-WLCS, plus the Local-k-LCS construction.

Glyphs ``d`` and ``f`` are the symbols called d and f in the construction;
in code the dimension is ``d`` and the all-ones dummy vector is ``dummy``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence as SequenceLike

from .core import (
    Alphabet,
    ReductionError,
    Sequence,
    VectorFamily,
    WeightedAlphabet,
    as_bitvector,
    checked,
)
from .lcs_reduction import DEFAULT_EXPAND_CAP, unary_expand
from .solvers import k_wlcs, local_k_lcs

MAX_BUILD_K = 6
GADGET_GLYPHS = ("a", "b", "c", "d", "e", "f")


def k_alphabet(k: int) -> Alphabet:
    """``a b c d e f 0 2 3_2 ... 3_k``."""
    return Alphabet(GADGET_GLYPHS + ("0", "2") + tuple(f"3_{i}" for i in range(2, k + 1)))


LOCAL_ALPHABET = Alphabet(GADGET_GLYPHS + ("x", "y"))


@dataclass(frozen=True)
class KWeightSchedule:
    k: int
    d: int
    r: int
    w_d: int
    w_e: int

    @property
    def E_oc(self) -> int:
        """Score of a coordinate-gadget tuple that is not all ones."""
        return 2 + (2**self.k + 1) * self.w_d

    @property
    def E_nc(self) -> int:
        return self.E_oc - 1

    @property
    def E_o(self) -> int:
        """Least score of a far vector-gadget tuple (the d+1 e symbols included)."""
        return (self.d + 1) * self.w_e + (self.d - self.r) * self.E_oc + self.r * self.E_nc

    @property
    def E_n(self) -> int:
        return self.E_o - 1

    @property
    def w_f(self) -> int:
        return self.E_n

    @property
    def D(self) -> int:
        """Heaviest possible vector gadget: the all-zero vector, f included."""
        coord = (2**self.k + 1) * self.w_d + 1 + (2**self.k - 1)
        return self.w_f + (self.d + 1) * self.w_e + self.d * coord

    @property
    def B(self) -> list[int]:
        """``[B_2, ..., B_k]`` with ``B_k = (10kD)^2`` and ``B_i = 2k B_{i+1}``."""
        out = [(10 * self.k * self.D) ** 2]
        for _ in range(self.k - 2):
            out.append(2 * self.k * out[-1])
        return out[::-1]

    @property
    def C(self) -> int:
        return 10 * self.k**2 * self.B[0]

    @property
    def E_U(self) -> int:
        return 2 * self.C + self.E_n

    def E_G(self, n: int) -> int:
        return checked(n * self.E_U + self.B[0] + (2 * n + 1) * sum(self.B), "E_G")

    def violations(self) -> list[str]:
        out = []
        if self.k < 2 or self.d < 1 or not 0 <= self.r <= self.d:
            return [f"need k >= 2, d >= 1, 0 <= r <= d (got k={self.k}, d={self.d}, r={self.r})"]
        chain = [self.C] + self.B + [self.D, self.E_o]
        if any(a <= b for a, b in zip(chain, chain[1:])):
            out.append("C > B_2 > ... > B_k > D > E_o")
        if not (self.k - 1) * self.D < self.B[-1]:
            out.append("(k-1) D < B")
        if self.w_e <= (2**self.k + 1) * self.w_d + 2**self.k:
            out.append("w(e) exceeds a coordinate gadget's total weight")
        for name, value in [("C", self.C), ("E_U", 2 * self.C + self.D)]:
            try:
                checked(value, name)
            except OverflowError:
                out.append(f"{name} overflows 64 bits")
        return out

    def validate(self) -> "KWeightSchedule":
        bad = self.violations()
        if bad:
            raise ReductionError(f"invalid k-weight schedule {self}: violates {bad}")
        return self

    def weights(self, alphabet: Alphabet | None = None) -> WeightedAlphabet:
        alphabet = alphabet or k_alphabet(self.k)
        table = {"a": 1, "b": 1, "c": 1, "d": self.w_d, "e": self.w_e, "f": self.w_f}
        if "0" in alphabet:
            table["0"] = table["2"] = self.C
            for i, b in zip(range(2, self.k + 1), self.B):
                table[f"3_{i}"] = b
        for g in alphabet.glyphs:
            table.setdefault(g, 1)
        return WeightedAlphabet.from_mapping(alphabet, table)

    def as_dict(self) -> dict:
        return {
            "k": self.k, "d": self.d, "r": self.r, "w_d": self.w_d, "w_e": self.w_e,
            "w_f": self.w_f, "E_oc": self.E_oc, "E_nc": self.E_nc, "E_o": self.E_o,
            "E_n": self.E_n, "D": self.D, "B": self.B, "C": self.C,
        }


def paper_k_schedule(k: int, d: int, r: int) -> KWeightSchedule:
    """``w(d) = 4^k`` and ``w(e) = 100 E_o^c``."""
    w_d = 4**k
    return KWeightSchedule(k, d, r, w_d, 100 * (2 + (2**k + 1) * w_d)).validate()


def compact_k_schedule(k: int, d: int, r: int) -> KWeightSchedule:
    """As :func:`paper_k_schedule` but ``w(e)`` is one more than a coordinate gadget's weight."""
    w_d = 4**k
    return KWeightSchedule(k, d, r, w_d, (2**k + 1) * w_d + 2**k + 1).validate()


def make_k_schedule(kind: str, k: int, d: int, r: int) -> KWeightSchedule:
    if kind == "paper":
        return paper_k_schedule(k, d, r)
    if kind == "compact":
        return compact_k_schedule(k, d, r)
    raise ReductionError(f"unknown schedule {kind!r} (expected 'paper' or 'compact')")


# --------------------------------------------------------------------------
# gadgets (glyph lists first, then sequences over a chosen alphabet)


def _coord_glyphs(t: int, bit: int, k: int) -> list[str]:
    if not 1 <= t <= k:
        raise ReductionError(f"sequence index t={t} outside [1, {k}]")
    if bit not in (0, 1):
        raise ReductionError("coordinate bit must be 0 or 1")
    out = ["d", "c", "d"] if bit == 0 else ["d", "d"]
    for p in range(2**k - 1):
        b = (p >> (t - 1)) & 1
        out += ["a" if b == bit else "b", "d"]
    return out


def _vector_glyphs(t: int, alpha, k: int, prime: bool = False) -> list[str]:
    alpha = as_bitvector(alpha)
    body = ["e"]
    for bit in alpha:
        body += _coord_glyphs(t, bit, k) + ["e"]
    if prime:
        return body
    return ["f"] + body if t == 1 else body + ["f"]


def k_coord_gadget(t: int, bit: int, k: int, alphabet: Alphabet | None = None) -> Sequence:
    """Coordinate gadget for sequence ``t``; bit ``t`` of ``p`` picks a/b (t=1 least significant)."""
    return (alphabet or k_alphabet(k)).seq(_coord_glyphs(t, bit, k))


def k_vector_gadget(t: int, alpha, k: int, alphabet: Alphabet | None = None, *, prime: bool = False) -> Sequence:
    """e-separated coordinate gadgets, with f prepended (t = 1) or appended (t >= 2).

    ``prime=True`` omits the f symbol.
    """
    return (alphabet or k_alphabet(k)).seq(_vector_glyphs(t, alpha, k, prime))


# --------------------------------------------------------------------------
# k-WLCS assembly


@dataclass(frozen=True)
class KLcsInstance:
    sequences: tuple[Sequence, ...]
    weights: WeightedAlphabet
    schedule: KWeightSchedule
    n: int
    Q: int
    # (sequence index, start, stop, period glyphs) of every (3_{i+1}...3_k)^Q block
    pad_blocks: tuple[tuple[int, int, int, tuple[str, ...]], ...]

    @property
    def k(self) -> int:
        return len(self.sequences)

    @property
    def E_U(self) -> int:
        return self.schedule.E_U

    @property
    def E_G(self) -> int:
        return self.schedule.E_G(self.n)

    def trimmed(self) -> list[Sequence]:
        return trim_padding(self.sequences, self.pad_blocks, self.Q)

    def score(self, *, trim: bool = True) -> int:
        seqs = self.trimmed() if trim else list(self.sequences)
        return k_wlcs(seqs, self.weights)

    def has_far_tuple(self) -> bool:
        return self.score() > self.E_G


def trim_padding(seqs: SequenceLike[Sequence], pad_blocks, Q: int) -> list[Sequence]:
    """Cut every padding block to as many periods as can ever match.

    A block ``(3_{i+1}...3_k)^Q`` in one sequence can only host a matched
    word over its own symbols of length at most ``m``, the fewest such symbols
    in any other sequence, and every such word is a subsequence of the
    block's period repeated ``m`` times. Cutting each block to ``m`` periods
    therefore keeps every common subsequence and the k-WLCS.
    """
    alpha = seqs[0].alphabet
    out = [list(s.symbols) for s in seqs]
    # right to left within a sequence so earlier offsets stay valid
    for idx, start, stop, period in sorted(pad_blocks, key=lambda b: (b[0], -b[1])):
        ids = [alpha.id(g) for g in period]
        m = min(
            sum(1 for x in other.symbols if x in set(ids))
            for j, other in enumerate(seqs)
            if j != idx
        )
        out[idx][start:stop] = ids * min(Q, m)
    return [Sequence(tuple(s), alpha) for s in out]


def build_klcs_instance(family: VectorFamily, r: int, schedule: KWeightSchedule | str = "paper") -> KLcsInstance:
    """Assemble ``P_1..P_k``; ``P_k`` is built first since its padding is empty and ``Q = |P_k|``."""
    if not isinstance(family, VectorFamily):
        family = VectorFamily(tuple(tuple(lst) for lst in family))
    k, n, d = family.k, family.n, family.d
    if k > MAX_BUILD_K:
        raise ReductionError(f"k = {k} exceeds the builder limit of {MAX_BUILD_K}")
    if isinstance(schedule, str):
        schedule = make_k_schedule(schedule, k, d, r)
    schedule.validate()
    if (schedule.k, schedule.d, schedule.r) != (k, d, r):
        raise ReductionError("schedule parameters do not match the vector family")
    alpha = k_alphabet(k)
    weights = schedule.weights(alpha)
    dummy = [1] * d

    def threes(lo: int, hi: int) -> list[str]:
        return [f"3_{j}" for j in range(lo, hi + 1)]

    def wrapped(i: int, vec) -> list[str]:
        body = ["0"] + _vector_glyphs(i, vec, k) + ["2"]
        return body if i == 1 else body + threes(2, i)

    def core(i: int) -> list[str]:
        out = threes(2, i)
        for _ in range((i - 1) * n):
            out += wrapped(i, dummy)
        for vec in family.lists[i - 1]:
            out += wrapped(i, vec)
        for _ in range((i - 1) * n):
            out += wrapped(i, dummy)
        return out

    # P_k has no (3_{k+1} ... 3_k) padding, which fixes Q
    Q = len(core(k))
    seqs, blocks = [], []
    for i in range(1, k + 1):
        period = tuple(threes(i + 1, k))
        pad = list(period) * Q
        mid = core(i)
        if period:
            blocks.append((i - 1, 0, len(pad), period))
            blocks.append((i - 1, len(pad) + len(mid), 2 * len(pad) + len(mid), period))
        seq = alpha.seq(pad + mid + pad)
        weights.total(seq)
        seqs.append(seq)
    assert len(alpha) == k + 7
    schedule.E_G(n)
    return KLcsInstance(tuple(seqs), weights, schedule, n, Q, tuple(blocks))


def k_unary_expand(seqs: SequenceLike[Sequence], w: WeightedAlphabet, cap: int = DEFAULT_EXPAND_CAP) -> list[Sequence]:
    return [unary_expand(s, w, cap) for s in seqs]


# --------------------------------------------------------------------------
# Local-k-LCS


@dataclass(frozen=True)
class LocalKLcsInstance:
    sequences: tuple[Sequence, ...]
    L: int
    E_o: int
    E_n: int
    schedule: KWeightSchedule

    def score(self) -> int:
        return local_k_lcs(self.sequences, self.L)


def build_local_klcs_instance(
    family: VectorFamily, r: int, schedule: KWeightSchedule | str = "compact", cap: int = DEFAULT_EXPAND_CAP
) -> LocalKLcsInstance:
    """Unary-expanded vector gadgets separated by ``x^L`` (first sequence) or ``y^L`` runs."""
    if not isinstance(family, VectorFamily):
        family = VectorFamily(tuple(tuple(lst) for lst in family))
    k, d = family.k, family.d
    if isinstance(schedule, str):
        schedule = make_k_schedule(schedule, k, d, r)
    schedule.validate()
    w = schedule.weights(LOCAL_ALPHABET)
    gadgets = [
        [unary_expand(k_vector_gadget(t, vec, k, LOCAL_ALPHABET), w, cap) for vec in family.lists[t - 1]]
        for t in range(1, k + 1)
    ]
    L = max(len(g) for row in gadgets for g in row)
    seqs = []
    for t, row in enumerate(gadgets, 1):
        sep = LOCAL_ALPHABET.seq(["x" if t == 1 else "y"] * L)
        out: list[int] = []
        for g in row:
            out.extend(g.symbols)
            out.extend(sep.symbols)
        if len(out) > cap:
            raise ReductionError(f"local instance length {len(out)} exceeds the cap of {cap}")
        seqs.append(Sequence(tuple(out), LOCAL_ALPHABET))
    return LocalKLcsInstance(tuple(seqs), L, schedule.E_o, schedule.E_n, schedule)
