"""JSON instance files and the plain-text vectors format.

Every instance is a JSON object with a ``kind`` field. Sequences are glyph
strings: concatenated for one-character alphabets, space separated otherwise.
Distances are integer half-units.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .core import Alphabet, BitVector, DistanceTable, ReductionError, Sequence, VectorFamily, WeightedAlphabet
from .dtwd_frechet import GadgetInstance
from .klcs_reduction import KLcsInstance, LocalKLcsInstance
from .lcs_reduction import LcsInstance


class FormatError(ReductionError):
    """Malformed or mismatched input file."""


# --------------------------------------------------------------------------
# vectors text


def parse_vectors(text: str, *, min_lists: int = 2) -> VectorFamily:
    """One 0/1 vector per line, lists separated by blank lines, ``#`` comments."""
    lists: list[list[BitVector]] = [[]]
    d = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            if lists[-1]:
                lists.append([])
            continue
        if set(line) - {"0", "1"}:
            raise FormatError(f"line {lineno}: expected a string of 0/1, got {line!r}")
        if d is None:
            d = len(line)
        elif len(line) != d:
            raise FormatError(f"line {lineno}: vector has dimension {len(line)}, expected {d}")
        lists[-1].append(BitVector.parse(line))
    if not lists[-1]:
        lists.pop()
    if len(lists) < min_lists:
        raise FormatError(f"expected at least {min_lists} lists of vectors, found {len(lists)}")
    sizes = {len(lst) for lst in lists}
    if len(sizes) != 1:
        raise FormatError(f"lists have different sizes {sorted(sizes)}")
    return VectorFamily(tuple(tuple(lst) for lst in lists))


def format_vectors(family) -> str:
    lists = family.lists if isinstance(family, VectorFamily) else family
    return "\n\n".join("\n".join(str(BitVector(tuple(v))) for v in lst) for lst in lists) + "\n"


# --------------------------------------------------------------------------
# instance JSON


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def fraction_str(x: Fraction) -> str:
    return str(Fraction(x))


def lcs_to_json(inst: LcsInstance, *, expanded: tuple[Sequence, Sequence] | None = None) -> dict:
    P1, P2 = expanded or (inst.P1, inst.P2)
    alpha = inst.weights.alphabet
    weights = WeightedAlphabet.unit(alpha) if expanded else inst.weights
    return {
        "kind": "lcs",
        "alphabet": list(alpha.glyphs),
        "weights": weights.as_dict(),
        "expanded": expanded is not None,
        "n": inst.n,
        "d": inst.d,
        "r": inst.r,
        "schedule": inst.schedule.as_dict(),
        "E_U": inst.E_U,
        "E_G": inst.E_G,
        "P1": P1.text(),
        "P2": P2.text(),
    }


def klcs_to_json(inst: KLcsInstance, *, expanded: list[Sequence] | None = None) -> dict:
    s = inst.schedule
    alpha = inst.weights.alphabet
    weights = WeightedAlphabet.unit(alpha) if expanded else inst.weights
    return {
        "kind": "klcs",
        "k": inst.k,
        "alphabet": list(alpha.glyphs),
        "weights": weights.as_dict(),
        "expanded": expanded is not None,
        "n": inst.n,
        "d": s.d,
        "r": s.r,
        "Q": inst.Q,
        "schedule": s.as_dict(),
        "E_o": s.E_o,
        "E_n": s.E_n,
        "E_U": inst.E_U,
        "E_G": inst.E_G,
        "pad_blocks": [] if expanded else [[i, a, b, list(p)] for i, a, b, p in inst.pad_blocks],
        "sequences": [x.text() for x in (expanded or inst.sequences)],
    }


def local_to_json(inst: LocalKLcsInstance) -> dict:
    alpha = inst.sequences[0].alphabet
    return {
        "kind": "local-klcs",
        "k": len(inst.sequences),
        "alphabet": list(alpha.glyphs),
        "L": inst.L,
        "E_o": inst.E_o,
        "E_n": inst.E_n,
        "schedule": inst.schedule.as_dict(),
        "sequences": [x.text() for x in inst.sequences],
    }


def gadget_to_json(inst: GadgetInstance, kind: str = "frechet") -> dict:
    ps = inst.points
    out = {
        "kind": kind,
        "metric": ps.metric,
        "points": {"Q1": list(ps.Q1), "Q2": list(ps.Q2)},
        "distance_half_units": [list(row) for row in ps.dist.half],
        "has_orthogonal": inst.has_orthogonal,
        "expected_gap": fraction_str(inst.expected_gap),
        "P1": inst.P1.glyphs(),
        "P2": inst.P2.glyphs(),
    }
    if ps.metric:
        out["within_half_units"] = sorted([*sorted(pair), h] for pair, h in ps.within.items())
    return out


def write_json(obj: dict, path: str | Path | None) -> str:
    text = dumps(obj)
    if path is not None:
        Path(path).write_text(text)
    return text


# --------------------------------------------------------------------------
# reading


def load(path: str | Path) -> dict:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(obj, dict) or "kind" not in obj:
        raise FormatError(f"{path}: not an instance file (missing 'kind')")
    return obj


def _need(obj: dict, *keys: str) -> None:
    missing = [k for k in keys if k not in obj]
    if missing:
        raise FormatError(f"{obj.get('kind')!r} instance is missing fields {missing}")


def read_alphabet(obj: dict) -> Alphabet:
    _need(obj, "alphabet")
    return Alphabet(obj["alphabet"])


def read_sequences(obj: dict) -> list[Sequence]:
    """``sequences`` list, or the ``P1``/``P2`` pair."""
    alpha = read_alphabet(obj)
    if "sequences" in obj:
        return [alpha.seq(s) for s in obj["sequences"]]
    _need(obj, "P1", "P2")
    return [alpha.seq(obj["P1"]), alpha.seq(obj["P2"])]


def read_weights(obj: dict, alpha: Alphabet) -> WeightedAlphabet:
    if "weights" not in obj:
        return WeightedAlphabet.unit(alpha)
    return WeightedAlphabet.from_mapping(alpha, obj["weights"])


def read_point_instance(obj: dict) -> tuple[Sequence, Sequence, DistanceTable]:
    """A gadget instance, or a sequence pair with an optional table (0/1 symbol distance otherwise)."""
    if "points" in obj:
        _need(obj, "distance_half_units", "P1", "P2")
        rows, cols = obj["points"]["Q1"], obj["points"]["Q2"]
        table = DistanceTable(rows, cols, obj["distance_half_units"])
        return Alphabet(rows).seq(obj["P1"]), Alphabet(cols).seq(obj["P2"]), table
    x, y = read_sequences(obj)[:2]
    if "distance_half_units" in obj:
        g = x.alphabet.glyphs
        return x, y, DistanceTable(g, g, obj["distance_half_units"])
    return x, y, DistanceTable.discrete(x.alphabet)


def render_distance(value: Fraction) -> str:
    """Half-unit values as decimals ending in ``.0`` or ``.5``."""
    half = Fraction(value) * 2
    if half.denominator != 1:
        raise ValueError(f"{value} is not a multiple of 1/2")
    whole, rem = divmod(int(half), 2)
    return f"{whole}.{5 if rem else 0}"
