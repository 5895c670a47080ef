"""Simplicial complexes on [n] stored as bitmasks.

A face is an ``int`` whose bit ``i - 1`` is set iff vertex ``i`` belongs to
it. A :class:`Complex` keeps both its facets and its minimal nonfaces; the
two are hypergraph-transversal duals of each other, so either one
determines the other.
"""
from __future__ import annotations

import json
import random
import warnings
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator

from .errors import DocumentError, MissingVertex, NOutOfRange, VertexOutOfRange

MAX_VERTICES = 64
MAX_ENUMERATE = 6
# largest n for which the full power set is materialized
MATERIALIZE_LIMIT = 20

Face = int


class NotAntichainWarning(UserWarning):
    """Input generators were redundant and have been minimalized."""


def face(vertices: Iterable[int]) -> Face:
    mask = 0
    for v in vertices:
        mask |= 1 << (v - 1)
    return mask


def face_vertices(mask: Face) -> tuple[int, ...]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def face_max(mask: Face) -> int:
    """m(sigma): the largest vertex of a nonempty face."""
    if not mask:
        raise ValueError("m(sigma) is undefined for the empty face")
    return mask.bit_length()


def face_min(mask: Face) -> int:
    if not mask:
        raise ValueError("min of the empty face")
    return (mask & -mask).bit_length()


def face_key(mask: Face) -> tuple[int, int]:
    """Canonical order: by cardinality, then bitmask value."""
    return (mask.bit_count(), mask)


def minimal_elements(masks: Iterable[Face]) -> list[Face]:
    """Inclusion-minimal members, deduplicated, in canonical order."""
    out: list[Face] = []
    for m in sorted(set(masks), key=face_key):
        if not any(g & m == g for g in out):
            out.append(m)
    return out


def minimal_transversals(edges: Iterable[Face]) -> list[Face]:
    """All inclusion-minimal sets meeting every edge (Berge's algorithm)."""
    trans = [0]
    for e in minimal_elements(edges):
        keep = [t for t in trans if t & e]
        grow = []
        rest = [t for t in trans if not t & e]
        bit = e
        while bit:
            low = bit & -bit
            bit ^= low
            grow.extend(t | low for t in rest)
        trans = minimal_elements(keep + grow)
        if not trans:
            break
    return trans


def _full(n: int) -> Face:
    return (1 << n) - 1


@dataclass(frozen=True)
class Complex:
    """A simplicial complex on [n] containing every vertex."""

    n: int
    facets: tuple[Face, ...]
    minimal_nonfaces: tuple[Face, ...]

    @classmethod
    def from_nonfaces(cls, n: int, nonfaces: Iterable[Face]) -> "Complex":
        _check_n(n)
        nonfaces = list(nonfaces)
        for m in nonfaces:
            if m >> n:
                raise VertexOutOfRange(f"vertex {m.bit_length()} outside [1, {n}]")
            if m.bit_count() <= 1:
                raise MissingVertex(f"{list(face_vertices(m))} is listed as a nonface")
        gens = minimal_elements(nonfaces)
        if len(gens) != len(nonfaces):
            warnings.warn("nonface list was not an antichain; minimalized", NotAntichainWarning, stacklevel=2)
        full = _full(n)
        # complements of minimal transversals are exactly the facets
        facets = {full ^ t for t in minimal_transversals(gens)}
        return cls(n, tuple(sorted(facets, key=face_key)), tuple(gens))

    @classmethod
    def from_facets(cls, n: int, facets: Iterable[Face]) -> "Complex":
        _check_n(n)
        facets = list(facets)
        full = _full(n)
        for m in facets:
            if m >> n:
                raise VertexOutOfRange(f"vertex {m.bit_length()} outside [1, {n}]")
        covered = 0
        for m in facets:
            covered |= m
        if covered != full:
            missing = face_vertices(full & ~covered)
            raise MissingVertex(f"vertices {list(missing)} lie in no facet")
        maximal = [m for m in set(facets) if not any(m != o and m & o == m for o in facets)]
        if len(maximal) != len(facets):
            warnings.warn("facet list was not an antichain; maximalized", NotAntichainWarning, stacklevel=2)
        gens = minimal_transversals(full ^ m for m in maximal)
        return cls(n, tuple(sorted(maximal, key=face_key)), tuple(gens))

    @classmethod
    def simplex(cls, n: int) -> "Complex":
        return cls.from_nonfaces(n, [])

    # -- membership -----------------------------------------------------------

    def is_nonface(self, mask: Face) -> bool:
        return any(g & mask == g for g in self.minimal_nonfaces)

    def is_face(self, mask: Face) -> bool:
        return not self.is_nonface(mask)

    @cached_property
    def nonface_flags(self) -> bytearray:
        """flags[m] == 1 iff m is a nonface; needs n <= MATERIALIZE_LIMIT."""
        if self.n > MATERIALIZE_LIMIT:
            raise NOutOfRange(f"cannot materialize 2^{self.n} subsets")
        size = 1 << self.n
        flags = bytearray(size)
        for g in self.minimal_nonfaces:
            flags[g] = 1
        for v in range(self.n):
            b = 1 << v
            for m in range(size):
                if m & b and flags[m ^ b]:
                    flags[m] = 1
        return flags

    def nonfaces(self) -> list[Face]:
        """All of nabla, ascending by bitmask."""
        flags = self.nonface_flags
        return [m for m in range(len(flags)) if flags[m]]

    def faces(self) -> list[Face]:
        flags = self.nonface_flags
        return [m for m in range(len(flags)) if not flags[m]]

    # -- presentation ---------------------------------------------------------

    @property
    def key(self) -> tuple:
        return (self.n, self.minimal_nonfaces)

    @property
    def identifier(self) -> str:
        return f"{self.n}:" + ";".join(",".join(map(str, face_vertices(g))) for g in self.minimal_nonfaces)

    def to_document(self, form: str = "minimal_nonfaces") -> dict:
        if form not in ("minimal_nonfaces", "facets"):
            raise ValueError(form)
        faces = self.minimal_nonfaces if form == "minimal_nonfaces" else self.facets
        return {"n": self.n, form: [list(face_vertices(m)) for m in faces]}

    def __repr__(self):
        nf = [list(face_vertices(g)) for g in self.minimal_nonfaces]
        return f"Complex(n={self.n}, minimal_nonfaces={nf})"


def _check_n(n):
    if not isinstance(n, int) or not 1 <= n <= MAX_VERTICES:
        raise NOutOfRange(f"n={n!r} not in 1..{MAX_VERTICES}")


def _face_from_list(vs, n) -> Face:
    if not isinstance(vs, (list, tuple)):
        raise DocumentError(f"face must be a list of vertices, got {vs!r}")
    for v in vs:
        if isinstance(v, bool) or not isinstance(v, int):
            raise DocumentError(f"vertex {v!r} is not an integer")
        if not 1 <= v <= n:
            raise VertexOutOfRange(f"vertex {v} outside [1, {n}]")
    if len(set(vs)) != len(vs):
        raise DocumentError(f"repeated vertex in {vs}")
    return face(vs)


def parse_complex(document) -> Complex:
    """Build a complex from ``{"n": .., "facets" | "minimal_nonfaces": [...]}``.

    ``document`` may be a dict or its JSON text.
    """
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"invalid JSON: {exc}") from exc
    if not isinstance(document, dict) or "n" not in document:
        raise DocumentError("complex document needs an 'n' field")
    n = document["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise DocumentError("'n' must be an integer")
    _check_n(n)
    has_f, has_nf = "facets" in document, "minimal_nonfaces" in document
    if has_f == has_nf:
        raise DocumentError("give exactly one of 'facets' or 'minimal_nonfaces'")
    key = "facets" if has_f else "minimal_nonfaces"
    faces = document[key]
    if not isinstance(faces, list):
        raise DocumentError(f"'{key}' must be a list")
    masks = [_face_from_list(vs, n) for vs in faces]
    if has_f:
        return Complex.from_facets(n, masks)
    return Complex.from_nonfaces(n, masks)


def min_nonfaces(c: Complex) -> list[Face]:
    return list(c.minimal_nonfaces)


def _stable_by_nonfaces(c: Complex) -> bool:
    flags = c.nonface_flags
    for s in range(len(flags)):
        if not flags[s]:
            continue
        top = 1 << (s.bit_length() - 1)
        base = s ^ top
        for i in range(s.bit_length() - 1):
            b = 1 << i
            if not s & b and not flags[base | b]:
                return False
    return True


def _stable_by_faces(c: Complex) -> bool:
    flags = c.nonface_flags
    n = c.n
    for s in range(1, len(flags)):
        if flags[s]:
            continue
        m = s.bit_length()
        rest = s
        while rest:
            low = rest & -rest
            rest ^= low
            base = s ^ low
            for j in range(m, n):
                if flags[base | (1 << j)]:
                    return False
    return True


def is_stable_complex(c: Complex, criterion: str = "ideal") -> bool:
    """Stability of a complex via nonfaces, faces, or its Stanley-Reisner ideal."""
    if criterion == "nonface":
        return _stable_by_nonfaces(c)
    if criterion == "face":
        return _stable_by_faces(c)
    if criterion == "ideal":
        from .ideals import classify, stanley_reisner

        return classify(stanley_reisner(c)).squarefree_stable
    raise ValueError(f"unknown criterion {criterion!r}")


@lru_cache(maxsize=None)
def _stable_nonface_sets(n: int) -> tuple[tuple[Face, ...], ...]:
    # Stable nabla's are exactly the up-sets of the poset on subsets of size
    # >= 2 generated by "add a vertex" and "replace the max by a smaller
    # non-member"; enumerate them by include/exclude branching.
    elems = [m for m in range(1 << n) if m.bit_count() >= 2]
    idx = {m: i for i, m in enumerate(elems)}
    succ = []
    for m in elems:
        out = []
        for v in range(n):
            if not m >> v & 1:
                out.append(idx[m | 1 << v])
        top = m.bit_length() - 1
        for i in range(top):
            if not m >> i & 1:
                out.append(idx[(m ^ (1 << top)) | 1 << i])
        succ.append(out)
    # successors are larger sets, or same-size sets with smaller mask
    order = sorted(range(len(elems)), key=lambda i: (-elems[i].bit_count(), elems[i]))
    above = [0] * len(elems)
    for i in order:
        a = 1 << i
        for j in succ[i]:
            a |= above[j]
        above[i] = a
    below = [0] * len(elems)
    for i, a in enumerate(above):
        while a:
            low = a & -a
            below[low.bit_length() - 1] |= 1 << i
            a ^= low
    results = []
    stack = [((1 << len(elems)) - 1, 0)]
    while stack:
        undecided, included = stack.pop()
        if not undecided:
            results.append(included)
            continue
        j = (undecided & -undecided).bit_length() - 1
        stack.append((undecided & ~above[j], included | above[j]))
        stack.append((undecided & ~below[j], included))
    out = []
    for inc in results:
        nabla = set()
        x = inc
        while x:
            low = x & -x
            nabla.add(elems[low.bit_length() - 1])
            x ^= low
        gens = []
        for m in nabla:
            r = m
            minimal = True
            while r:
                low = r & -r
                r ^= low
                if m ^ low in nabla:
                    minimal = False
                    break
            if minimal:
                gens.append(m)
        out.append((len(nabla), tuple(sorted(gens, key=face_key))))
    out.sort(key=lambda t: (t[0], [face_key(g) for g in t[1]]))
    return tuple(g for _, g in out)


def enumerate_stable_complexes(n: int) -> Iterator[Complex]:
    """Every stable complex on [n], n <= 6, ordered by |nabla| then generators."""
    if not isinstance(n, int) or not 1 <= n <= MAX_ENUMERATE:
        raise NOutOfRange(f"enumeration needs 1 <= n <= {MAX_ENUMERATE}, got {n!r}")
    for gens in _stable_nonface_sets(n):
        yield Complex.from_nonfaces(n, gens)


def stable_closure(n: int, nonfaces: Iterable[Face]) -> list[Face]:
    """Smallest stable nonface ideal containing ``nonfaces``, as generators."""
    gens = minimal_elements(nonfaces)
    work = list(gens)
    while work:
        s = work.pop()
        if s not in gens:
            continue
        top = 1 << (s.bit_length() - 1)
        base = s ^ top
        for i in range(s.bit_length() - 1):
            b = 1 << i
            if s & b:
                continue
            t = base | b
            if any(g & t == g for g in gens):
                continue
            gens = [g for g in gens if g & t != t]
            gens.append(t)
            work.append(t)
    return sorted(gens, key=face_key)


def random_stable_complex(n: int, seed: int) -> Complex:
    """Deterministic pseudo-random stable complex on [n], 1 <= n <= 32."""
    if not isinstance(n, int) or not 1 <= n <= 32:
        raise NOutOfRange(f"n={n!r} not in 1..32")
    rng = random.Random(f"stable-complex:{n}:{seed}")
    cands = []
    if n >= 2:
        for _ in range(rng.randint(0, n)):
            size = rng.randint(2, n)
            cands.append(face(rng.sample(range(1, n + 1), size)))
    return Complex.from_nonfaces(n, stable_closure(n, cands))
