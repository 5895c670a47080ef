import json
import warnings

import pytest
from hypothesis import given, settings, strategies as st

import shiftlab.shifting as shifting
from shiftlab.betti import betti_ahh
from shiftlab.complexes import (
    Complex,
    NotAntichainWarning,
    enumerate_stable_complexes,
    face,
    face_vertices,
    parse_complex,
)
from shiftlab.errors import NoSplit, NonTermination, NotANonface, NotStable, VertexOutOfRange
from shiftlab.exactlinalg import QQ, make_field
from shiftlab.ideals import stanley_reisner
from shiftlab.shifting import (
    ShiftStep,
    ShiftTrace,
    canonical_pairs,
    combinatorial_shift,
    exterior_shift,
    is_shifted,
    s_kl,
    shift_kl,
    sigma_star,
    sigma_stars,
    symmetric_shift,
    unique_split,
)

from oracles import brute_shift, nonfaces_of

FIX_A = parse_complex({"n": 4, "facets": [[2], [1, 3, 4]]})
FIX_B = parse_complex({"n": 4, "facets": [[1, 3], [1, 4], [2, 4], [3, 4]]})
SHIFTED_A = Complex.from_nonfaces(4, [face([1, 2]), face([1, 3]), face([1, 4])])
SHIFTED_B = Complex.from_nonfaces(4, [face([1, 2]), face([1, 3]), face([2, 3, 4])])


def nf(c):
    return {frozenset(face_vertices(g)) for g in c.minimal_nonfaces}


def test_steps():
    assert canonical_pairs(3) == [ShiftStep(1, 2), ShiftStep(1, 3), ShiftStep(2, 3)]
    assert sorted([ShiftStep(2, 3), ShiftStep(1, 3), ShiftStep(1, 2)]) == canonical_pairs(3)
    with pytest.raises(ValueError):
        ShiftStep(2, 2)
    with pytest.raises(VertexOutOfRange):
        shift_kl(FIX_A, ShiftStep(1, 5))


def test_s_kl_examples():
    step = ShiftStep(1, 2)
    assert s_kl(face([2, 3]), FIX_A, step) == face([1, 3])
    assert s_kl(face([1, 2]), FIX_A, step) == face([1, 2])
    assert s_kl(face([2, 3, 4]), FIX_B, step) == face([2, 3, 4])
    with pytest.raises(NotANonface):
        s_kl(face([1, 3]), FIX_A, step)


def test_shift_kl_examples():
    assert shift_kl(FIX_A, ShiftStep(1, 2)) == SHIFTED_A
    assert shift_kl(FIX_B, ShiftStep(1, 2)) == SHIFTED_B
    assert shift_kl(FIX_A, ShiftStep(2, 3)) == FIX_A


def test_shift_kl_matches_sets_on_corpus():
    for n in range(2, 5):
        for c in enumerate_stable_complexes(n):
            nabla = nonfaces_of(n, nf(c))
            for step in canonical_pairs(n):
                assert nf(shift_kl(c, step)) == brute_shift(n, nabla, step.k, step.l)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.sets(st.integers(1, n), min_size=2), max_size=5),
                        st.integers(1, n - 1), st.integers(2, n))))
def test_shift_kl_matches_sets_on_any_complex(data):
    n, raw, k, l = data
    if k >= l:
        return
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NotAntichainWarning)
        c = Complex.from_nonfaces(n, [face(s) for s in raw])
    assert nf(shift_kl(c, ShiftStep(k, l))) == brute_shift(n, nonfaces_of(n, nf(c)), k, l)


def test_unique_split_examples():
    assert unique_split(face([2, 3, 4]), FIX_B) == (1, face([4]))
    assert unique_split(face([1, 2]), FIX_A) == (0, 0)
    assert unique_split(face([1, 2, 3]), FIX_B) == (0, face([3]))
    with pytest.raises(NotANonface):
        unique_split(face([1, 3]), FIX_B)
    # {2,4} and {3,4} both lie in {2,3,4}, but neither leaves a tail above it
    bad = Complex.from_nonfaces(4, [face([2, 4]), face([3, 4])])
    with pytest.raises(NoSplit):
        unique_split(face([2, 3, 4]), bad)


def test_unique_split_exists_for_every_nonface_of_stable_complexes():
    for n in range(2, 6):
        for c in enumerate_stable_complexes(n):
            for s in c.nonfaces():
                j, tail = unique_split(s, c)
                assert c.minimal_nonfaces[j] | tail == s


def test_sigma_star_examples():
    step = ShiftStep(1, 2)
    assert sigma_star(1, FIX_A, step) == face([1, 3])
    assert sigma_star(0, FIX_A, step) == face([1, 2])
    assert sigma_star(2, FIX_B, step) == face([2, 3, 4])
    with pytest.raises(NotStable):
        sigma_star(0, Complex.from_nonfaces(3, [face([2, 3])]), step)


def test_sigma_stars_predict_generators():
    for n in range(2, 6):
        for c in enumerate_stable_complexes(n):
            for step in canonical_pairs(n):
                stars = sigma_stars(c, step)
                assert set(stars) == set(shift_kl(c, step).minimal_nonfaces)
                assert sorted(s.bit_length() for s in stars) == sorted(g.bit_length() for g in c.minimal_nonfaces)


def test_combinatorial_shift_examples():
    out, trace = combinatorial_shift(FIX_A)
    assert out == SHIFTED_A
    assert trace.to_document() == {"steps": [[1, 2]], "nonface_counts": [3, 3]}
    out, trace = combinatorial_shift(FIX_B)
    assert out == SHIFTED_B and [s.to_list() for s in trace.steps] == [[1, 2]]
    again, t2 = combinatorial_shift(SHIFTED_A)
    assert again == SHIFTED_A and t2.steps == ()
    with pytest.raises(NotStable):
        combinatorial_shift(Complex.from_nonfaces(3, [face([2, 3])]))


def test_trace_round_trip():
    _, trace = combinatorial_shift(FIX_A)
    assert ShiftTrace.from_document(json.loads(json.dumps(trace.to_document()))) == trace


@pytest.mark.parametrize("order", ["canonical", "random:1", "random:abc", [(2, 3), (1, 2)], [(3, 4)]])
def test_combinatorial_shift_properties(order):
    for n in range(1, 5):
        for c in enumerate_stable_complexes(n):
            if isinstance(order, list) and any(l > n for _, l in order):
                continue
            out, trace = combinatorial_shift(c, order)
            assert is_shifted(out)
            assert trace.replay(c) == out
            assert len(trace.nonface_counts) == len(trace.steps) + 1
            assert betti_ahh(stanley_reisner(out)) == betti_ahh(stanley_reisner(c))
            assert combinatorial_shift(out, order)[1].steps == ()


def test_random_order_is_deterministic():
    c = list(enumerate_stable_complexes(5))[200]
    assert combinatorial_shift(c, "random:7") == combinatorial_shift(c, "random:7")
    with pytest.raises(ValueError):
        combinatorial_shift(c, "shuffled")


def test_sweep_budget_guard(monkeypatch):
    monkeypatch.setattr(shifting, "is_shifted", lambda c: False)
    with pytest.raises(NonTermination):
        combinatorial_shift(FIX_A)


def test_algebraic_shift_examples():
    assert symmetric_shift(FIX_A, QQ) == SHIFTED_A
    assert exterior_shift(FIX_A, make_field("f:2^13")) == SHIFTED_A
    hollow = Complex.from_nonfaces(3, [face([1, 2, 3])])
    assert symmetric_shift(hollow) == hollow
    assert exterior_shift(hollow) == hollow
    assert symmetric_shift(Complex.simplex(3)) == Complex.simplex(3)
    assert exterior_shift(Complex.simplex(3)) == Complex.simplex(3)
    with pytest.raises(NotStable):
        symmetric_shift(Complex.from_nonfaces(3, [face([2, 3])]))


def test_exterior_shift_of_non_stable_complex_is_shifted():
    # the exterior route accepts any complex
    c = Complex.from_nonfaces(4, [face([1, 3]), face([2, 4])])
    out = exterior_shift(c, make_field("f:32003"))
    assert is_shifted(out)
    assert len(out.faces()) == len(c.faces())
