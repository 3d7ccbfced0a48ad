import itertools
import random

import pytest
from hypothesis import given, strategies as st

from seqhard.core import ReductionError, WeightedAlphabet
from seqhard.lcs_reduction import (
    ALPHABET,
    WeightSchedule,
    build_instance,
    compact_schedule,
    coord_gadget_1,
    coord_gadget_2,
    far_pair_via_lcs,
    make_schedule,
    paper_schedule,
    unary_expand,
    vector_gadget_1,
    vector_gadget_2,
)
from seqhard.solvers import lcs, mov_bruteforce, wlcs


def test_coordinate_gadget_texts():
    assert coord_gadget_1(0).text() == "5465"
    assert coord_gadget_1(1).text() == "545"
    assert coord_gadget_2(0).text() == "5645"
    assert coord_gadget_2(1).text() == "565"


@pytest.mark.parametrize("kind", ["paper", "compact"])
@pytest.mark.parametrize("a, b", list(itertools.product((0, 1), repeat=2)))
def test_coordinate_gadget_scores(kind, a, b):
    s = make_schedule(kind, 2, 0)
    want = 2 * s.X if a == b == 1 else 2 * s.X + 1
    assert wlcs(coord_gadget_1(a), coord_gadget_2(b), s.weights()) == want


def test_vector_gadget_layout():
    assert vector_gadget_1((0, 1)).text() == "15465545"
    assert vector_gadget_2((0, 1)).text() == "56455651"
    with pytest.raises(ReductionError):
        vector_gadget_1((0, 1), d=3)


@pytest.mark.parametrize("kind", ["paper", "compact"])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_vector_gadget_scores(kind, d):
    for r in range(d):
        s = make_schedule(kind, d, r)
        w = s.weights()
        for a in itertools.product((0, 1), repeat=d):
            for b in itertools.product((0, 1), repeat=d):
                ip = sum(x & y for x, y in zip(a, b))
                score = wlcs(vector_gadget_1(a), vector_gadget_2(b), w)
                if ip <= r:
                    # every coordinate pair is matched and the 1 symbols are not
                    assert score == ip * 2 * s.X + (d - ip) * (2 * s.X + 1) >= s.A + 1
                else:
                    assert score == s.A


def test_reference_schedule_values():
    s = paper_schedule(1, 0)
    assert (s.X, s.A, s.B, s.C) == (100, 200, 40_000, 1_600_000_000)
    assert s.E_U == 3_200_000_200
    assert s.E_G(1) == 3_200_080_200


def test_compact_schedule_values():
    s = compact_schedule(2, 0)
    assert (s.X, s.A, s.B, s.C) == (200, 801, 805, 3625)
    assert s.E_U == 8051
    assert s.is_valid()


@pytest.mark.parametrize("d", range(1, 7))
def test_schedules_valid(d):
    for r in range(d):
        assert paper_schedule(d, r).is_valid()
        assert compact_schedule(d, r).is_valid()


def test_schedule_rejects():
    with pytest.raises(ReductionError):
        paper_schedule(2, 2)
    with pytest.raises(ReductionError):
        WeightSchedule(1, 0, 100, 200, 10, 10).validate()
    with pytest.raises(ReductionError):
        make_schedule("tiny", 1, 0)
    # A^4 leaves 64 bits once d is large
    with pytest.raises(ReductionError):
        paper_schedule(200, 0)


def test_reference_weights_spot_check():
    far = build_instance([(0,)], [(1,)], 0, "paper")
    close = build_instance([(1,)], [(1,)], 0, "paper")
    assert far.E_G == close.E_G == 3_200_080_200
    assert far.score() == 3_200_080_201
    assert close.score() == 3_200_080_200


def test_assembly_shape():
    inst = build_instance([(0, 1), (1, 1)], [(1, 0), (0, 0)], 0, "compact")
    p2 = inst.P2.text()
    assert p2.startswith("3") and p2.count("1") == 3 * 2 - 2
    assert inst.P1.text().startswith("3" * len(inst.P2))
    assert inst.P1.text().count("1") == 2
    assert inst.E_G == inst.schedule.E_G(2)


def test_build_rejects_mismatch():
    with pytest.raises(ReductionError):
        build_instance([(0,)], [(1,), (0,)], 0)
    with pytest.raises(ReductionError):
        build_instance([(0,)], [(1,)], 0, compact_schedule(2, 0))


@pytest.mark.parametrize("kind", ["paper", "compact"])
def test_gap_dichotomy_exhaustive(kind):
    for n, d in [(1, 1), (1, 2), (2, 1), (2, 2)]:
        vecs = list(itertools.product((0, 1), repeat=d))
        for A in itertools.product(vecs, repeat=n):
            for B in itertools.product(vecs, repeat=n):
                for r in range(d):
                    inst = build_instance(A, B, r, kind)
                    far = mov_bruteforce(A, B, r) is not None
                    score = inst.score()
                    assert score >= inst.E_G + 1 if far else score <= inst.E_G
                    assert inst.has_far_pair() is far


def test_expanded_lengths_match_weights():
    rng = random.Random(5)
    A = [tuple(rng.randrange(2) for _ in range(2)) for _ in range(2)]
    B = [tuple(rng.randrange(2) for _ in range(2)) for _ in range(2)]
    inst = build_instance(A, B, 0, "compact")
    for p in (inst.P1, inst.P2):
        assert len(unary_expand(p, inst.weights)) == inst.weights.total(p)


@pytest.mark.parametrize("a, b", list(itertools.product((0, 1), repeat=2)))
def test_expanded_compact_instance(a, b):
    inst = build_instance([(a,)], [(b,)], 0, "compact")
    e1, e2 = unary_expand(inst.P1, inst.weights), unary_expand(inst.P2, inst.weights)
    score = lcs(e1, e2)
    assert score == inst.score()
    assert (score > inst.E_G) is (a * b == 0)


@given(
    st.text("0123456", max_size=8),
    st.text("0123456", max_size=8),
    st.lists(st.integers(1, 5), min_size=7, max_size=7),
)
def test_unary_expansion_preserves_wlcs(s, t, ws):
    w = WeightedAlphabet.from_mapping(ALPHABET, dict(zip("0123456", ws)))
    s, t = ALPHABET.seq(s), ALPHABET.seq(t)
    assert lcs(unary_expand(s, w), unary_expand(t, w)) == wlcs(s, t, w)


def test_unary_expand_cap():
    w = compact_schedule(1, 0).weights()
    with pytest.raises(ReductionError):
        unary_expand(ALPHABET.seq("0"), w, cap=10)


def test_far_pair_via_lcs():
    assert far_pair_via_lcs([[(1, 0)], [(0, 1)]], 0)
    assert not far_pair_via_lcs([[(1, 1)], [(1, 1)]], 1)
    assert far_pair_via_lcs([[(1, 1)], [(1, 1)]], 2)
    with pytest.raises(ReductionError):
        far_pair_via_lcs([[(1,)], [(1,)], [(1,)]], 0)
