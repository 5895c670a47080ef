import json
import warnings

import pytest
from hypothesis import given, settings, strategies as st

from shiftlab.complexes import (
    Complex,
    NotAntichainWarning,
    enumerate_stable_complexes,
    face,
    face_max,
    face_vertices,
    is_stable_complex,
    minimal_transversals,
    parse_complex,
    random_stable_complex,
    stable_closure,
)
from shiftlab.errors import DocumentError, MissingVertex, NOutOfRange, VertexOutOfRange

from oracles import brute_stable_nablas, is_stable_nabla, minimal_sets, nonfaces_of, subsets

FIX_A = {"n": 4, "facets": [[2], [1, 3, 4]]}
FIX_B = {"n": 4, "facets": [[1, 3], [1, 4], [2, 4], [3, 4]]}


def sets(masks):
    return {frozenset(face_vertices(m)) for m in masks}


def test_face_helpers():
    assert face([1, 3]) == 0b101
    assert face_vertices(0b1010) == (2, 4)
    assert face_max(face([2, 5])) == 5
    with pytest.raises(ValueError):
        face_max(0)


def test_fixtures():
    a = parse_complex(FIX_A)
    assert sets(a.minimal_nonfaces) == {frozenset(s) for s in [{1, 2}, {2, 3}, {2, 4}]}
    b = parse_complex(FIX_B)
    assert sets(b.minimal_nonfaces) == {frozenset(s) for s in [{1, 2}, {2, 3}, {1, 3, 4}]}
    assert a.identifier == "4:1,2;2,3;2,4"
    assert is_stable_complex(a) and is_stable_complex(b)


def test_round_trip_documents():
    for doc in (FIX_A, FIX_B):
        c = parse_complex(doc)
        for form in ("facets", "minimal_nonfaces"):
            assert parse_complex(json.dumps(c.to_document(form))) == c


@pytest.mark.parametrize("doc, err", [
    ({"n": 3, "facets": [[1, 2]]}, MissingVertex),
    ({"n": 3, "minimal_nonfaces": [[3]]}, MissingVertex),
    ({"n": 3, "facets": [[1, 2, 4]]}, VertexOutOfRange),
    ({"n": 3, "facets": [[1, 1], [2, 3]]}, DocumentError),
    ({"n": 3}, DocumentError),
    ({"n": 3, "facets": [], "minimal_nonfaces": []}, DocumentError),
    ({"facets": []}, DocumentError),
    ("{not json", DocumentError),
])
def test_bad_documents(doc, err):
    with pytest.raises(err):
        parse_complex(doc)


def test_non_antichain_input_warns():
    with pytest.warns(NotAntichainWarning):
        c = Complex.from_nonfaces(3, [face([1, 2]), face([1, 2, 3])])
    assert c.minimal_nonfaces == (face([1, 2]),)


def test_simplex_and_its_boundary():
    s = Complex.simplex(3)
    assert s.minimal_nonfaces == () and s.facets == (0b111,)
    h = Complex.from_nonfaces(3, [0b111])
    assert sets(h.facets) == {frozenset(s) for s in [{1, 2}, {1, 3}, {2, 3}]}


def _brute_transversals(edges, n):
    hits = [s for s in subsets(n) if all(s & e for e in edges)]
    return minimal_sets(hits)


family = st.integers(2, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.sets(st.integers(1, n), min_size=2), max_size=6))
)


@settings(max_examples=150, deadline=None)
@given(family)
def test_facets_and_nonfaces_agree_with_sets(nf):
    n, raw = nf
    gens = minimal_sets(frozenset(s) for s in raw)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NotAntichainWarning)
        c = Complex.from_nonfaces(n, [face(s) for s in gens])
    nabla = nonfaces_of(n, gens)
    assert sets(c.nonfaces()) == nabla
    assert sets(c.faces()) == set(subsets(n)) - nabla
    # facets are the maximal faces
    assert sets(c.facets) == {f for f in set(subsets(n)) - nabla if not any(f < g for g in set(subsets(n)) - nabla)}
    assert Complex.from_facets(n, c.facets) == c
    assert sets(minimal_transversals(face(s) for s in gens)) == _brute_transversals(gens, n)


@settings(max_examples=150, deadline=None)
@given(family)
def test_stability_criteria_agree(nf):
    n, raw = nf
    gens = minimal_sets(frozenset(s) for s in raw)
    c = Complex.from_nonfaces(n, [face(s) for s in gens])
    want = is_stable_nabla(n, nonfaces_of(n, gens))
    assert is_stable_complex(c, "nonface") == want
    assert is_stable_complex(c, "face") == want
    assert is_stable_complex(c, "ideal") == want


def _backtrack_count(n):
    # decide subsets by size descending, colex ascending within a size; every
    # constraint on s then refers to already-decided sets
    cands = sorted((s for s in subsets(n) if len(s) >= 2), key=lambda s: (-len(s), sorted(s, reverse=True)))
    chosen = set()

    def ok(s):
        if any(s | {v} not in chosen for v in range(1, n + 1) if v not in s):
            return False
        m = max(s)
        return all((s - {m}) | {i} in chosen for i in range(1, m) if i not in s)

    def go(k):
        if k == len(cands):
            return 1
        s = cands[k]
        total = go(k + 1)
        if ok(s):
            chosen.add(s)
            total += go(k + 1)
            chosen.discard(s)
        return total

    return go(0)


def test_enumeration_matches_brute_force_small():
    for n in range(1, 5):
        got = [sets(c.nonfaces()) for c in enumerate_stable_complexes(n)]
        want = brute_stable_nablas(n)
        assert len(got) == len(want)
        assert {frozenset(x) for x in got} == {frozenset(x) for x in want}


def test_enumeration_counts():
    assert [len(list(enumerate_stable_complexes(n))) for n in range(1, 6)] == [1, 2, 6, 30, 366]
    assert [_backtrack_count(n) for n in range(1, 6)] == [1, 2, 6, 30, 366]


def test_enumeration_order_n3():
    ids = [c.identifier for c in enumerate_stable_complexes(3)]
    assert ids == ["3:", "3:1,2,3", "3:1,2", "3:1,2;1,3", "3:1,2;2,3", "3:1,2;1,3;2,3"]


def test_enumeration_bounds():
    with pytest.raises(NOutOfRange):
        list(enumerate_stable_complexes(0))
    with pytest.raises(NOutOfRange):
        list(enumerate_stable_complexes(7))


def _brute_closure(n, gens):
    nabla = nonfaces_of(n, gens)
    while True:
        extra = set()
        for s in nabla:
            m = max(s)
            for i in range(1, m):
                if i not in s:
                    extra.add((s - {m}) | {i})
        new = nonfaces_of(n, minimal_sets(nabla | extra))
        if new == nabla:
            return minimal_sets(nabla)
        nabla = new


@settings(max_examples=100, deadline=None)
@given(family)
def test_stable_closure(nf):
    n, raw = nf
    gens = [frozenset(s) for s in raw]
    assert sets(stable_closure(n, [face(s) for s in gens])) == _brute_closure(n, gens)


def test_random_stable_complexes():
    for seed in range(30):
        c = random_stable_complex(8, seed)
        assert is_stable_complex(c, "nonface")
        assert c == random_stable_complex(8, seed)
    assert len({random_stable_complex(8, s) for s in range(30)}) > 20
    with pytest.raises(NOutOfRange):
        random_stable_complex(0, 1)
