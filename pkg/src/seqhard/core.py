"""Shared domain types: alphabets, sequences, bit vectors, distance tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence as SequenceLike

INT64_MAX = 2**63 - 1


class ReductionError(ValueError):
    """Raised when an input violates a builder or solver precondition."""


def checked(value: int, what: str = "value") -> int:
    """Return ``value`` if it fits signed 64-bit arithmetic, else raise."""
    if not -INT64_MAX - 1 <= value <= INT64_MAX:
        raise OverflowError(f"{what} = {value} does not fit in 64-bit signed arithmetic")
    return value


@dataclass(frozen=True)
class Symbol:
    id: int
    glyph: str


class Alphabet:
    """An explicit finite alphabet with dense integer ids and display glyphs."""

    __slots__ = ("_glyphs", "_index")

    def __init__(self, glyphs: Iterable[str]):
        glyphs = tuple(glyphs)
        if any(not g for g in glyphs):
            raise ReductionError("glyphs must be nonempty")
        if any(any(ch.isspace() for ch in g) for g in glyphs):
            raise ReductionError("glyphs must not contain whitespace")
        if len(set(glyphs)) != len(glyphs):
            raise ReductionError(f"duplicate glyphs in alphabet {glyphs}")
        self._glyphs = glyphs
        self._index = {g: i for i, g in enumerate(glyphs)}

    @property
    def glyphs(self) -> tuple[str, ...]:
        return self._glyphs

    def __len__(self) -> int:
        return len(self._glyphs)

    def __iter__(self):
        return (Symbol(i, g) for i, g in enumerate(self._glyphs))

    def __contains__(self, glyph: str) -> bool:
        return glyph in self._index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and other._glyphs == self._glyphs

    def __hash__(self) -> int:
        return hash(self._glyphs)

    def __repr__(self) -> str:
        return f"Alphabet({list(self._glyphs)!r})"

    def id(self, glyph: str) -> int:
        try:
            return self._index[glyph]
        except KeyError:
            raise ReductionError(f"glyph {glyph!r} is not in {self!r}") from None

    def glyph(self, sid: int) -> str:
        return self._glyphs[sid]

    @property
    def single_char(self) -> bool:
        return all(len(g) == 1 for g in self._glyphs)

    def seq(self, text: str | SequenceLike[str]) -> "Sequence":
        """Parse glyph text into a :class:`Sequence`.

        Single-character alphabets read ``text`` character by character;
        otherwise (or when ``text`` is already a list) glyphs are
        whitespace-separated tokens.
        """
        if isinstance(text, str):
            tokens = list(text) if self.single_char else text.split()
        else:
            tokens = list(text)
        return Sequence(tuple(self.id(g) for g in tokens), self)


@dataclass(frozen=True)
class Sequence:
    symbols: tuple[int, ...]
    alphabet: Alphabet

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(int(s) for s in self.symbols))
        n = len(self.alphabet)
        for s in self.symbols:
            if not 0 <= s < n:
                raise ReductionError(f"symbol id {s} is outside the alphabet of size {n}")

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, item):
        return self.symbols[item]

    def __iter__(self):
        return iter(self.symbols)

    def __add__(self, other: "Sequence") -> "Sequence":
        _same_alphabet(self, other)
        return Sequence(self.symbols + other.symbols, self.alphabet)

    def __mul__(self, times: int) -> "Sequence":
        return Sequence(self.symbols * times, self.alphabet)

    def glyphs(self) -> list[str]:
        return [self.alphabet.glyph(s) for s in self.symbols]

    def text(self) -> str:
        """Glyph rendering: concatenated for one-char alphabets, else space separated."""
        sep = "" if self.alphabet.single_char else " "
        return sep.join(self.glyphs())

    def used(self) -> set[int]:
        return set(self.symbols)

    def __str__(self) -> str:
        return self.text()


def concat(parts: Iterable[Sequence], alphabet: Alphabet) -> Sequence:
    out: list[int] = []
    for p in parts:
        if p.alphabet != alphabet:
            raise ReductionError("cannot concatenate sequences over different alphabets")
        out.extend(p.symbols)
    return Sequence(tuple(out), alphabet)


def _same_alphabet(*seqs: Sequence) -> Alphabet:
    alpha = seqs[0].alphabet
    for s in seqs[1:]:
        if s.alphabet != alpha:
            raise ReductionError("sequences are over different alphabets")
    return alpha


@dataclass(frozen=True)
class WeightedAlphabet:
    """Positive integer weights for every symbol of an alphabet."""

    alphabet: Alphabet
    weights: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights)
        if len(w) != len(self.alphabet):
            raise ReductionError(
                f"{len(w)} weights given for an alphabet of {len(self.alphabet)} symbols"
            )
        if any(x < 1 for x in w):
            raise ReductionError(f"weights must be >= 1, got {w}")
        for x in w:
            checked(x, "weight")
        object.__setattr__(self, "weights", w)

    @classmethod
    def from_mapping(cls, alphabet: Alphabet, mapping: Mapping[str, int]) -> "WeightedAlphabet":
        missing = [g for g in alphabet.glyphs if g not in mapping]
        if missing:
            raise ReductionError(f"missing weights for {missing}")
        return cls(alphabet, tuple(mapping[g] for g in alphabet.glyphs))

    @classmethod
    def unit(cls, alphabet: Alphabet) -> "WeightedAlphabet":
        return cls(alphabet, (1,) * len(alphabet))

    def __getitem__(self, glyph: str) -> int:
        return self.weights[self.alphabet.id(glyph)]

    def of(self, sid: int) -> int:
        return self.weights[sid]

    def total(self, seq: Sequence) -> int:
        """Total weight of ``seq``; raises if it would overflow 64-bit arithmetic."""
        if seq.alphabet != self.alphabet:
            raise ReductionError("weights and sequence use different alphabets")
        return checked(sum(self.weights[s] for s in seq.symbols), "total sequence weight")

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.alphabet.glyphs, self.weights))


@dataclass(frozen=True)
class BitVector:
    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if not bits:
            raise ReductionError("bit vectors need dimension d >= 1")
        if any(b not in (0, 1) for b in bits):
            raise ReductionError(f"bit vector entries must be 0/1, got {bits}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def parse(cls, text: str) -> "BitVector":
        return cls(tuple(int(ch) for ch in text.strip()))

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self):
        return iter(self.bits)

    def __getitem__(self, item):
        return self.bits[item]

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    @property
    def popcount(self) -> int:
        return sum(self.bits)


def as_bitvector(v) -> BitVector:
    return v if isinstance(v, BitVector) else BitVector(tuple(v))


@dataclass(frozen=True)
class VectorFamily:
    """k lists of n vectors in {0,1}^d (the (k-)Most-Orthogonal-Vectors input)."""

    lists: tuple[tuple[BitVector, ...], ...]

    def __post_init__(self):
        lists = tuple(tuple(as_bitvector(v) for v in lst) for lst in self.lists)
        if len(lists) < 2:
            raise ReductionError("a vector family needs k >= 2 lists")
        sizes = {len(lst) for lst in lists}
        if len(sizes) != 1 or 0 in sizes:
            raise ReductionError(f"all lists must share one nonzero size, got {sorted(sizes)}")
        dims = {len(v) for lst in lists for v in lst}
        if len(dims) != 1:
            raise ReductionError(f"all vectors must share one dimension, got {sorted(dims)}")
        object.__setattr__(self, "lists", lists)

    @property
    def k(self) -> int:
        return len(self.lists)

    @property
    def n(self) -> int:
        return len(self.lists[0])

    @property
    def d(self) -> int:
        return len(self.lists[0][0])


@dataclass(frozen=True)
class DistanceTable:
    """Distances between two labeled point sets, stored as integer half-units.

    ``half[i][j]`` is twice the distance between ``rows[i]`` and ``cols[j]``.
    """

    rows: tuple[str, ...]
    cols: tuple[str, ...]
    half: tuple[tuple[int, ...], ...]
    _rindex: dict = field(init=False, repr=False, compare=False)
    _cindex: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        half = tuple(tuple(int(x) for x in row) for row in self.half)
        if len(half) != len(self.rows) or any(len(r) != len(self.cols) for r in half):
            raise ReductionError("distance table is not complete over rows x cols")
        if any(x < 0 for r in half for x in r):
            raise ReductionError("distances must be nonnegative")
        object.__setattr__(self, "half", half)
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "cols", tuple(self.cols))
        object.__setattr__(self, "_rindex", {g: i for i, g in enumerate(self.rows)})
        object.__setattr__(self, "_cindex", {g: i for i, g in enumerate(self.cols)})

    @classmethod
    def discrete(cls, alphabet: Alphabet) -> "DistanceTable":
        """The 0/1 symbol distance: 0 on equal symbols, 1 otherwise."""
        g = alphabet.glyphs
        return cls(g, g, tuple(tuple(0 if a == b else 2 for b in g) for a in g))

    def half_units(self, row: str, col: str) -> int:
        try:
            return self.half[self._rindex[row]][self._cindex[col]]
        except KeyError:
            raise ReductionError(f"no distance entry for ({row!r}, {col!r})") from None

    def __call__(self, row: str, col: str) -> Fraction:
        return Fraction(self.half_units(row, col), 2)

    def matrix_for(self, x: Sequence, y: Sequence) -> list[list[int]]:
        """Half-unit cost matrix for every configuration (x[i], y[j])."""
        try:
            ri = [self._rindex[x.alphabet.glyph(s)] for s in x.symbols]
            ci = [self._cindex[y.alphabet.glyph(s)] for s in y.symbols]
        except KeyError as exc:
            raise ReductionError(f"no distance entry for point {exc.args[0]!r}") from None
        return [[self.half[i][j] for j in ci] for i in ri]


@dataclass(frozen=True)
class Matching:
    """Index tuples (one index per sequence) of a common subsequence."""

    pairs: tuple[tuple[int, ...], ...]

    def is_valid(self, seqs: SequenceLike[Sequence]) -> bool:
        prev = None
        for tup in self.pairs:
            if len(tup) != len(seqs):
                return False
            if any(not 0 <= i < len(s) for i, s in zip(tup, seqs)):
                return False
            if len({s[i] for i, s in zip(tup, seqs)}) != 1:
                return False
            if prev is not None and any(a >= b for a, b in zip(prev, tup)):
                return False
            prev = tup
        return True

    def weight(self, seqs: SequenceLike[Sequence], w: WeightedAlphabet | None = None) -> int:
        if w is None:
            return len(self.pairs)
        return sum(w.of(seqs[0][tup[0]]) for tup in self.pairs)


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        if self.num_vars < 0:
            raise ReductionError("num_vars must be nonnegative")
        for j, c in enumerate(clauses):
            if not c:
                raise ReductionError(f"clause {j + 1} is empty")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ReductionError(
                        f"literal {lit} in clause {j + 1} is out of range for {self.num_vars} variables"
                    )
        object.__setattr__(self, "clauses", clauses)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def satisfied(self, assignment: Mapping[int, bool] | SequenceLike[bool]) -> int:
        """Number of clauses satisfied by a total assignment (1-indexed variables)."""
        if not isinstance(assignment, Mapping):
            assignment = {i + 1: bool(v) for i, v in enumerate(assignment)}
        return sum(
            any(assignment[abs(l)] == (l > 0) for l in c) for c in self.clauses
        )


def inner_product(a, b) -> int:
    a, b = as_bitvector(a), as_bitvector(b)
    if len(a) != len(b):
        raise ReductionError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return sum(x & y for x, y in zip(a.bits, b.bits))


def k_inner_product(vs) -> int:
    """Number of coordinates where every vector in ``vs`` is 1."""
    vs = [as_bitvector(v) for v in vs]
    if len(vs) < 2:
        raise ReductionError("k_inner_product needs at least two vectors")
    d = len(vs[0])
    if any(len(v) != d for v in vs):
        raise ReductionError("dimension mismatch among vectors")
    return sum(all(v.bits[h] for v in vs) for h in range(d))


def is_far(vs, r: int) -> bool:
    vs = [as_bitvector(v) for v in vs]
    if not 0 <= r <= len(vs[0]):
        raise ReductionError(f"r = {r} must lie in [0, d = {len(vs[0])}]")
    return k_inner_product(vs) <= r
