"""DTWD and discrete Fréchet constructions over labeled point sets.

Point labels: ``s1 r1 t1 c1_x_p`` on the first side and
``s2 s2* r2 t2 t2* c2_y_p`` on the second, where ``x``/``y`` is a bit value
and ``p`` the parity of the coordinate index.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence as SequenceLike

from .core import Alphabet, DistanceTable, ReductionError, Sequence, as_bitvector, inner_product
from .solvers import dtwd, edit, frechet


class ExperimentalWarning(UserWarning):
    """Raised by builders whose surrounding construction is not provided here."""


# --------------------------------------------------------------------------
# padding transform


def pad_transform(Q: Sequence, a: str, r: SequenceLike[int]) -> Sequence:
    """``a^{r_1} q_1 a^{r_2} q_2 ... q_p a^{r_{p+1}}``.

    ``a`` may already be declared in ``Q``'s alphabet but must not occur in
    ``Q``; otherwise it is appended to the alphabet.
    """
    r = [int(x) for x in r]
    if len(r) != len(Q) + 1:
        raise ReductionError(f"padding vector has {len(r)} entries, need |Q| + 1 = {len(Q) + 1}")
    if any(x < 1 for x in r):
        raise ReductionError("padding entries must be positive")
    alpha = Q.alphabet
    if a in alpha:
        if alpha.id(a) in Q.used():
            raise ReductionError(f"padding symbol {a!r} already occurs in the sequence")
    else:
        alpha = Alphabet(alpha.glyphs + (a,))
    sym = alpha.id(a)
    out = [sym] * r[0]
    for q, run in zip(Q.symbols, r[1:]):
        out.append(q)
        out.extend([sym] * run)
    return Sequence(tuple(out), alpha)


def _fresh_glyph(alpha: Alphabet) -> str:
    for cand in itertools.chain(["#"], (f"#{i}" for i in itertools.count())):
        if cand not in alpha:
            return cand
    raise AssertionError("unreachable")


def padded_dtwd(Q1: Sequence, Q2: Sequence, r1, r2) -> Fraction:
    """DTWD of the two padded sequences under the 0/1 symbol distance."""
    if Q1.alphabet != Q2.alphabet:
        raise ReductionError("sequences must share an alphabet")
    a = _fresh_glyph(Q1.alphabet)
    x = pad_transform(Q1, a, r1)
    y = pad_transform(Q2, a, r2)
    return dtwd(x, y, DistanceTable.discrete(x.alphabet))


def verify_edit_dtwd_inequality(Q1: Sequence, Q2: Sequence, r1, r2) -> bool:
    """``edit(Q1, Q2) <= dtwd(A(Q1), A(Q2))`` for this choice of padding vectors."""
    return edit(Q1, Q2) <= padded_dtwd(Q1, Q2, r1, r2)


# --------------------------------------------------------------------------
# point sets


def c1(x: int, p: int) -> str:
    return f"c1_{x}_{p}"


def c2(y: int, p: int) -> str:
    return f"c2_{y}_{p}"


Q1_LABELS = ("s1", "r1", "t1") + tuple(c1(x, p) for p in (0, 1) for x in (0, 1))
Q2_LABELS = ("s2", "s2*", "r2", "t2", "t2*") + tuple(c2(y, p) for p in (0, 1) for y in (0, 1))


def _zero(u: str, v: str) -> bool:
    if v in ("s2", "t2"):
        return True
    if u == "s1":
        return v != "t2*"
    if u == "t1":
        return v != "s2*"
    if (u, v) == ("r1", "r2"):
        return True
    if u.startswith("c1_") and v.startswith("c2_"):
        _, x, p = u.split("_")
        _, y, q = v.split("_")
        return p == q and int(x) * int(y) == 0
    return False


@dataclass(frozen=True)
class GadgetPointSets:
    """Two point sets with cross distances and, when metric, within-set distances.

    ``within`` maps an unordered label pair to half-units; present only for
    the metric variant.
    """

    Q1: tuple[str, ...]
    Q2: tuple[str, ...]
    dist: DistanceTable
    within: dict | None = None

    @property
    def metric(self) -> bool:
        return self.within is not None

    def distance(self, u: str, v: str) -> Fraction:
        """Symmetric lookup over the union of both sets (half-units / 2)."""
        return Fraction(self._half(u, v), 2)

    def _half(self, u: str, v: str) -> int:
        if u == v:
            return 0
        if u in self.Q1 and v in self.Q2:
            return self.dist.half_units(u, v)
        if v in self.Q1 and u in self.Q2:
            return self.dist.half_units(v, u)
        if self.within is None:
            raise ReductionError(f"no within-set distance for ({u!r}, {v!r}) in the non-metric table")
        return self.within[frozenset((u, v))]

    def triangle_violations(self) -> list[tuple[str, str, str]]:
        """All ordered triples with ``d(u, w) > d(u, v) + d(v, w)``."""
        pts = self.Q1 + self.Q2
        h = {(u, v): self._half(u, v) for u in pts for v in pts}
        return [
            (u, v, w)
            for u in pts
            for v in pts
            for w in pts
            if h[u, w] > h[u, v] + h[v, w]
        ]


def build_frechet_pointsets() -> GadgetPointSets:
    """Cross distances in {0, 1}; zero exactly on the gadget's listed pairs."""
    half = tuple(tuple(0 if _zero(u, v) else 2 for v in Q2_LABELS) for u in Q1_LABELS)
    return GadgetPointSets(Q1_LABELS, Q2_LABELS, DistanceTable(Q1_LABELS, Q2_LABELS, half))


def metricize(ps: GadgetPointSets) -> GadgetPointSets:
    """Shift cross distances by 1/2 and put every within-set pair at distance 1."""
    half = tuple(tuple(x + 1 for x in row) for row in ps.dist.half)
    within = {
        frozenset(pair): 2
        for side in (ps.Q1, ps.Q2)
        for pair in itertools.combinations(side, 2)
    }
    out = GadgetPointSets(ps.Q1, ps.Q2, DistanceTable(ps.Q1, ps.Q2, half), within)
    bad = out.triangle_violations()
    if bad:
        raise AssertionError(f"metric table violates the triangle inequality at {bad[0]}")
    return out


# --------------------------------------------------------------------------
# instances

Q1_ALPHABET = Alphabet(Q1_LABELS)
Q2_ALPHABET = Alphabet(Q2_LABELS)


def frechet_vector_gadget(side: int, vec) -> list[str]:
    """``r ∘ CG(vec, 1) ∘ ... ∘ CG(vec, d)`` with ``CG(vec, j) = c_{vec_j}^{j mod 2}``."""
    vec = as_bitvector(vec)
    point = c1 if side == 1 else c2
    return [f"r{side}"] + [point(bit, j % 2) for j, bit in enumerate(vec, 1)]


@dataclass(frozen=True)
class GadgetInstance:
    P1: Sequence
    P2: Sequence
    points: GadgetPointSets
    has_orthogonal: bool

    @property
    def dist(self) -> DistanceTable:
        return self.points.dist

    @property
    def expected_gap(self) -> Fraction:
        """Predicted Fréchet (and non-metric DTWD) value."""
        base = Fraction(0) if self.has_orthogonal else Fraction(1)
        return base + (Fraction(1, 2) if self.points.metric else 0)

    def frechet(self) -> Fraction:
        return frechet(self.P1, self.P2, self.dist)

    def dtwd(self) -> Fraction:
        return dtwd(self.P1, self.P2, self.dist)


def build_frechet_instance(A_list, B_list, *, metric: bool = False) -> GadgetInstance:
    A_list = [as_bitvector(v) for v in A_list]
    B_list = [as_bitvector(v) for v in B_list]
    if not A_list or len(A_list) != len(B_list):
        raise ReductionError(f"need two nonempty lists of equal size, got {len(A_list)} and {len(B_list)}")
    d = len(A_list[0])
    if any(len(v) != d for v in A_list + B_list):
        raise ReductionError("all vectors must share one dimension")
    p1: list[str] = []
    for a in A_list:
        p1 += ["s1"] + frechet_vector_gadget(1, a) + ["t1"]
    p2 = ["s2", "s2*"]
    for b in B_list:
        p2 += frechet_vector_gadget(2, b)
    p2 += ["t2*", "t2"]
    points = build_frechet_pointsets()
    if metric:
        points = metricize(points)
    orth = any(inner_product(a, b) == 0 for a in A_list for b in B_list)
    return GadgetInstance(Q1_ALPHABET.seq(p1), Q2_ALPHABET.seq(p2), points, orth)


def dtwd_gap_check(instance: GadgetInstance) -> Fraction:
    """DTWD of the gadget instance; 0 with an orthogonal pair, 1 without."""
    return instance.dtwd()


# --------------------------------------------------------------------------
# experimental binary gadgets for the edit-distance route

EDIT_ALPHABET = Alphabet("01")


def _experimental(name: str) -> None:
    warnings.warn(
        f"{name} is experimental: the surrounding edit-distance construction is not provided",
        ExperimentalWarning,
        stacklevel=3,
    )


def _check_l(l0: int, l1: int) -> None:
    if l0 < 1 or l1 < 1:
        raise ReductionError("l0 and l1 must be positive")
    if l1 % 2:
        raise ReductionError("l1 must be even")


def _runs(*runs: tuple[str, int]) -> Sequence:
    return EDIT_ALPHABET.seq("".join(g * n for g, n in runs))


def edit_coord_gadget_1(bit: int, l0: int, l1: int) -> Sequence:
    _experimental("edit_coord_gadget_1")
    _check_l(l0, l1)
    mid = "0111" if bit == 0 else "0001"
    return _runs(("0", l1), *((g, l0) for g in mid), ("0", l1))


def edit_coord_gadget_2(bit: int, l0: int, l1: int) -> Sequence:
    _experimental("edit_coord_gadget_2")
    _check_l(l0, l1)
    mid = "0011" if bit == 0 else "1111"
    return _runs(("0", l1), *((g, l0) for g in mid), ("0", l1))


def separator_g(l0: int, l1: int, r: int, d: int) -> Sequence:
    """``0^{l1/2 - m} 1^m 0^{l1/2} 0^{l0} 1^{3 l0} 0^{l1}`` with ``m = 1 + 2 r l0 / d``."""
    _experimental("separator_g")
    _check_l(l0, l1)
    if d < 1 or not 0 <= r <= d:
        raise ReductionError("need d >= 1 and 0 <= r <= d")
    if l0 % d:
        raise ReductionError("l0 must be a multiple of d")
    m = 1 + 2 * r * l0 // d
    if l1 // 2 < m:
        raise ReductionError(f"l1/2 = {l1 // 2} is smaller than 1 + 2 r l0 / d = {m}")
    return _runs(("0", l1 // 2 - m), ("1", m), ("0", l1 // 2), ("0", l0), ("1", 3 * l0), ("0", l1))
