"""Most-Orthogonal-Vectors to two-sequence WLCS/LCS over the alphabet {0,...,6}."""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Alphabet,
    ReductionError,
    Sequence,
    WeightedAlphabet,
    as_bitvector,
    checked,
    concat,
)
from .solvers import wlcs

ALPHABET = Alphabet("0123456")
DEFAULT_EXPAND_CAP = 10**7

_S = {g: ALPHABET.id(g) for g in ALPHABET.glyphs}


def _seq(text: str) -> Sequence:
    return ALPHABET.seq(text)


@dataclass(frozen=True)
class WeightSchedule:
    """Symbol weights ``w(5)=X, w(1)=A, w(3)=B, w(0)=w(2)=C`` for given ``d, r``."""

    d: int
    r: int
    X: int
    A: int
    B: int
    C: int

    @property
    def interior(self) -> int:
        """``d(2X+2)``: every non-1 symbol weight a vector gadget holds beyond ``A``."""
        return self.d * (2 * self.X + 2)

    @property
    def E_U(self) -> int:
        return 2 * self.C + self.A

    @property
    def E_B(self) -> int:
        return self.E_U + self.interior

    def E_G(self, n: int) -> int:
        return checked(n * self.E_U + 2 * n * self.B, "E_G")

    def violations(self) -> list[str]:
        """Every gap-proof inequality that this schedule fails (empty when valid)."""
        d, r, X, A, B, C = self.d, self.r, self.X, self.A, self.B, self.C
        out = []
        if not (d >= 1 and 0 <= r <= d - 1):
            out.append(f"need d >= 1 and 0 <= r <= d-1, got d={d}, r={r}")
            return out
        if X < 100 * d:
            out.append("X >= 100 d")
        if A != (r + 1) * 2 * X + (d - (r + 1)) * (2 * X + 1):
            out.append("A = (r+1) 2X + (d-(r+1)) (2X+1)")
        if not self.interior <= B - 1:
            out.append("d(2X+2) <= B - 1")
        if not self.E_U > 2 * B - 1:
            out.append("E_U > 2B - 1")
        if not 10 * B < self.E_U:
            out.append("10 B < E_U")
        if not 10 * self.E_B < 11 * self.E_U:
            out.append("E_B < 1.1 E_U")
        if not C > A + self.interior:
            out.append("C > A + d(2X+2)")
        for name in ("X", "A", "B", "C"):
            try:
                checked(getattr(self, name), name)
            except OverflowError:
                out.append(f"{name} overflows 64 bits")
        try:
            checked(self.E_B, "E_B")
        except OverflowError:
            out.append("E_B overflows 64 bits")
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def validate(self) -> "WeightSchedule":
        bad = self.violations()
        if bad:
            raise ReductionError(f"invalid weight schedule {self}: violates {bad}")
        return self

    def weights(self) -> WeightedAlphabet:
        return WeightedAlphabet.from_mapping(
            ALPHABET,
            {"0": self.C, "1": self.A, "2": self.C, "3": self.B, "4": 1, "5": self.X, "6": 1},
        )

    def as_dict(self) -> dict[str, int]:
        return {"d": self.d, "r": self.r, "X": self.X, "A": self.A, "B": self.B, "C": self.C}


def _check_dr(d: int, r: int) -> None:
    if d < 1:
        raise ReductionError("dimension d must be >= 1")
    if not 0 <= r <= d - 1:
        raise ReductionError(f"r must satisfy 0 <= r <= d-1 (got r={r}, d={d})")


def _base_weight(d: int, r: int) -> tuple[int, int]:
    X = 100 * d
    return X, (r + 1) * 2 * X + (d - (r + 1)) * (2 * X + 1)


def paper_schedule(d: int, r: int) -> WeightSchedule:
    """``X = 100d``, ``B = A**2``, ``C = B**2``."""
    _check_dr(d, r)
    X, A = _base_weight(d, r)
    return WeightSchedule(d, r, X, A, A * A, A**4).validate()


def compact_schedule(d: int, r: int) -> WeightSchedule:
    """Smallest ``B`` then smallest ``C`` meeting every schedule inequality."""
    _check_dr(d, r)
    X, A = _base_weight(d, r)
    delta = d * (2 * X + 2)
    B = delta + 1
    C = max(
        A + delta + 1,  # C > A + d(2X+2)
        (10 * B - A) // 2 + 1,  # 2C + A > 10B
        (10 * delta - A) // 2 + 1,  # 10 E_B < 11 E_U  <=>  10 d(2X+2) < E_U
        (2 * B - 1 - A) // 2 + 1,  # E_U > 2B - 1
    )
    return WeightSchedule(d, r, X, A, B, C).validate()


def make_schedule(kind: str, d: int, r: int) -> WeightSchedule:
    if kind == "paper":
        return paper_schedule(d, r)
    if kind == "compact":
        return compact_schedule(d, r)
    raise ReductionError(f"unknown schedule {kind!r} (expected 'paper' or 'compact')")


# --------------------------------------------------------------------------
# gadgets


def coord_gadget_1(bit: int) -> Sequence:
    if bit not in (0, 1):
        raise ReductionError("coordinate bit must be 0 or 1")
    return _seq("5465" if bit == 0 else "545")


def coord_gadget_2(bit: int) -> Sequence:
    if bit not in (0, 1):
        raise ReductionError("coordinate bit must be 0 or 1")
    return _seq("5645" if bit == 0 else "565")


def _check_dim(vec, d: int | None):
    vec = as_bitvector(vec)
    if d is not None and len(vec) != d:
        raise ReductionError(f"vector of dimension {len(vec)} where d = {d} is expected")
    return vec


def vector_gadget_1(alpha, d: int | None = None) -> Sequence:
    alpha = _check_dim(alpha, d)
    return concat([_seq("1")] + [coord_gadget_1(b) for b in alpha], ALPHABET)


def vector_gadget_2(beta, d: int | None = None) -> Sequence:
    beta = _check_dim(beta, d)
    return concat([coord_gadget_2(b) for b in beta] + [_seq("1")], ALPHABET)


def _wrap_1(alpha, d) -> Sequence:
    return _seq("0") + vector_gadget_1(alpha, d) + _seq("2")


def _wrap_2(beta, d) -> Sequence:
    return _seq("0") + vector_gadget_2(beta, d) + _seq("23")


# --------------------------------------------------------------------------
# assembly


@dataclass(frozen=True)
class LcsInstance:
    P1: Sequence
    P2: Sequence
    weights: WeightedAlphabet
    schedule: WeightSchedule
    n: int

    @property
    def d(self) -> int:
        return self.schedule.d

    @property
    def r(self) -> int:
        return self.schedule.r

    @property
    def E_U(self) -> int:
        return self.schedule.E_U

    @property
    def E_G(self) -> int:
        # recomputed from the schedule, never cached
        return self.schedule.E_G(self.n)

    def score(self) -> int:
        return wlcs(self.P1, self.P2, self.weights)

    def has_far_pair(self) -> bool:
        """Decide the source instance from the string score alone."""
        return self.score() > self.E_G


def build_instance(A_list, B_list, r: int, schedule: WeightSchedule | str = "paper") -> LcsInstance:
    """Assemble ``P1``/``P2`` so that WLCS exceeds ``E_G`` iff some pair is r-far."""
    A_list = [as_bitvector(v) for v in A_list]
    B_list = [as_bitvector(v) for v in B_list]
    n = len(A_list)
    if n < 1 or len(B_list) != n:
        raise ReductionError(f"need two nonempty lists of equal size, got {n} and {len(B_list)}")
    d = len(A_list[0])
    if isinstance(schedule, str):
        schedule = make_schedule(schedule, d, r)
    schedule.validate()
    if schedule.d != d or schedule.r != r:
        raise ReductionError(f"schedule is for (d={schedule.d}, r={schedule.r}), not (d={d}, r={r})")
    dummy = [1] * d
    P2 = concat(
        [_seq("3")]
        + [_wrap_2(dummy, d) for _ in range(n - 1)]
        + [_wrap_2(b, d) for b in B_list]
        + [_wrap_2(dummy, d) for _ in range(n - 1)],
        ALPHABET,
    )
    pad = _seq("3") * len(P2)
    P1 = concat([pad] + [_wrap_1(a, d) for a in A_list] + [pad], ALPHABET)
    weights = schedule.weights()
    weights.total(P1)
    weights.total(P2)
    schedule.E_G(n)
    return LcsInstance(P1, P2, weights, schedule, n)


def unary_expand(s: Sequence, w: WeightedAlphabet, cap: int = DEFAULT_EXPAND_CAP) -> Sequence:
    """Replace every symbol by ``w(symbol)`` copies of itself."""
    length = w.total(s)
    if length > cap:
        raise ReductionError(f"expanded length {length} exceeds the cap of {cap}")
    out: list[int] = []
    for sym in s.symbols:
        out.extend([sym] * w.of(sym))
    return Sequence(tuple(out), s.alphabet)


def far_pair_via_lcs(lists, r: int, schedule: str = "compact") -> bool:
    """Far-pair oracle that decides MOV by building and scoring a WLCS instance.

    ``r >= d`` makes every pair far and needs no instance.
    """
    if len(lists) != 2:
        raise ReductionError("the two-sequence reduction decides k = 2 only")
    A, B = lists
    d = len(as_bitvector(A[0]))
    if r >= d:
        return True
    return build_instance(A, B, r, schedule).has_far_pair()
