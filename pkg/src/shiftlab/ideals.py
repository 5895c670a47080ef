"""Monomials and monomial ideals of K[x_1, ..., x_n].

Monomials are exponent tuples wrapped in :class:`Monomial`; ideals are
their minimal generating sets. Stability predicates are decided on the
minimal generators only.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .complexes import Complex, Face, face, face_vertices
from .errors import (
    AmbientTooSmall,
    DocumentError,
    NotSquarefree,
    UnitGenerator,
    UnitMonomial,
    VertexExcluded,
)


@dataclass(frozen=True, order=False)
class Monomial:
    exponents: tuple[int, ...]

    @classmethod
    def of(cls, *exponents: int) -> "Monomial":
        return cls(tuple(exponents))

    @classmethod
    def from_face(cls, mask: Face, n: int) -> "Monomial":
        return cls(tuple((mask >> i) & 1 for i in range(n)))

    @classmethod
    def from_indices(cls, indices: Iterable[int], n: int) -> "Monomial":
        """x_{i_1} x_{i_2} ... from a list of 1-based indices (with repeats)."""
        exps = [0] * n
        for i in indices:
            exps[i - 1] += 1
        return cls(tuple(exps))

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def is_squarefree(self) -> bool:
        return all(a <= 1 for a in self.exponents)

    def max_index(self) -> int:
        return max_index(self)

    def indices(self) -> list[int]:
        """Sorted 1-based variable indices, repeated by multiplicity."""
        return [i + 1 for i, a in enumerate(self.exponents) for _ in range(a)]

    def to_face(self) -> Face:
        if not self.is_squarefree:
            raise NotSquarefree(f"{self} is not squarefree")
        return face(i + 1 for i, a in enumerate(self.exponents) if a)

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(max(a, b) for a, b in zip(self.exponents, other.exponents)))

    def __str__(self):
        parts = []
        for i, a in enumerate(self.exponents):
            if a == 1:
                parts.append(f"x{i + 1}")
            elif a > 1:
                parts.append(f"x{i + 1}^{a}")
        return "*".join(parts) or "1"


def revlex_key(exps: Sequence[int]) -> tuple[int, ...]:
    """Ascending order of this key is revlex-descending within one degree."""
    return tuple(reversed(exps))


def canonical_key(exps: Sequence[int]) -> tuple:
    return (sum(exps), revlex_key(exps))


@lru_cache(maxsize=None)
def monomials_of_degree(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    """All degree-d exponent vectors in n variables, revlex descending."""
    out = []
    for combo in combinations_with_replacement(range(n), d):
        exps = [0] * n
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    out.sort(key=revlex_key)
    return tuple(out)


@lru_cache(maxsize=None)
def squarefree_of_degree(n: int, d: int) -> tuple[Face, ...]:
    """Degree-d squarefree monomials as bitmasks, revlex descending."""
    return tuple(sorted((m for m in range(1 << n) if m.bit_count() == d)))


def max_index(u: Monomial) -> int:
    """m(u): the largest i with x_i dividing u."""
    for i in range(len(u.exponents) - 1, -1, -1):
        if u.exponents[i]:
            return i + 1
    raise UnitMonomial("m(1) is undefined")


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal generators in canonical order."""

    n: int
    generators: tuple[Monomial, ...] = field(default=())

    def __post_init__(self):
        for g in self.generators:
            if g.n != self.n:
                raise ValueError(f"generator {g} has {g.n} variables, ideal has {self.n}")

    @property
    def exponent_sets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(g.exponents for g in self.generators)

    def contains(self, exps: Sequence[int]) -> bool:
        for g in self.generators:
            if all(a <= b for a, b in zip(g.exponents, exps)):
                return True
        return False

    def __contains__(self, u) -> bool:
        exps = u.exponents if isinstance(u, Monomial) else u
        return self.contains(exps)

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_squarefree(self) -> bool:
        return all(g.is_squarefree for g in self.generators)

    def generator_degrees(self) -> list[int]:
        return sorted({g.degree for g in self.generators})

    @property
    def max_degree(self) -> int:
        return max((g.degree for g in self.generators), default=0)

    @property
    def min_degree(self) -> int:
        return min((g.degree for g in self.generators), default=0)

    def degree_part(self, d: int) -> list[tuple[int, ...]]:
        """Degree-d monomials of the ideal, revlex descending."""
        return [e for e in monomials_of_degree(self.n, d) if self.contains(e)]

    def to_document(self) -> dict:
        return {"n": self.n, "generators": [list(g.exponents) for g in self.generators]}

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


def minimalize(gens: Iterable, n: int | None = None) -> MonomialIdeal:
    """Minimal generating set of the ideal generated by ``gens``."""
    mons = [g if isinstance(g, Monomial) else Monomial(tuple(g)) for g in gens]
    if n is None:
        if not mons:
            raise ValueError("n is required for the zero ideal")
        n = mons[0].n
    for u in mons:
        if u.n != n:
            raise ValueError(f"{u} is not a monomial in {n} variables")
        if any(a < 0 for a in u.exponents):
            raise ValueError(f"negative exponent in {u.exponents}")
        if u.degree == 0:
            raise UnitGenerator("the unit monomial generates the whole ring")
    uniq = sorted(set(mons), key=lambda u: canonical_key(u.exponents))
    out: list[Monomial] = []
    for u in uniq:
        if not any(g.divides(u) for g in out):
            out.append(u)
    return MonomialIdeal(n, tuple(out))


def ideal(n: int, *gens: Sequence[int]) -> MonomialIdeal:
    """Shorthand: ``ideal(3, (1,1,0), (0,1,1))``."""
    return minimalize([Monomial(tuple(g)) for g in gens], n)


def squarefree_ideal(n: int, faces_: Iterable[Iterable[int]]) -> MonomialIdeal:
    """Squarefree ideal from 1-based vertex lists, e.g. ``[[1, 2], [2, 3]]``."""
    return minimalize([Monomial.from_face(face(vs), n) for vs in faces_], n)


def parse_ideal(document) -> MonomialIdeal:
    """``{"n": 4, "generators": [[1,1,0,0], ...]}`` or ``{"n": 4, "faces": [[1,2], ...]}``."""
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"invalid JSON: {exc}") from exc
    if not isinstance(document, dict) or "n" not in document:
        raise DocumentError("ideal document needs an 'n' field")
    n = document["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DocumentError("'n' must be a positive integer")
    if ("generators" in document) == ("faces" in document):
        raise DocumentError("give exactly one of 'generators' or 'faces'")
    if "generators" in document:
        gens = document["generators"]
        if not isinstance(gens, list) or any(
            not isinstance(g, list) or len(g) != n or any(isinstance(a, bool) or not isinstance(a, int) or a < 0 for a in g)
            for g in gens
        ):
            raise DocumentError(f"generators must be length-{n} lists of nonnegative integers")
        return minimalize([Monomial(tuple(g)) for g in gens], n)
    faces_ = document["faces"]
    if not isinstance(faces_, list):
        raise DocumentError("'faces' must be a list")
    for vs in faces_:
        if not isinstance(vs, list) or any(isinstance(v, bool) or not isinstance(v, int) or not 1 <= v <= n for v in vs):
            raise DocumentError(f"bad face {vs!r}")
    return squarefree_ideal(n, faces_)


# --- stability ------------------------------------------------------------

def digits_leq(a: int, b: int, p: int) -> bool:
    """a <=_p b: every base-p digit of a is at most that of b; p = 0 means a <= b."""
    if p == 0:
        return a <= b
    while a:
        if a % p > b % p:
            return False
        a //= p
        b //= p
    return True


def _exchange(exps, i, j, t=1):
    """(x_i / x_j)^t * u, 0-based indices."""
    e = list(exps)
    e[i] += t
    e[j] -= t
    return tuple(e)


def _is_stable(I: MonomialIdeal) -> bool:
    for u in I.exponent_sets:
        m = max(k for k, a in enumerate(u) if a)
        for i in range(m):
            if not I.contains(_exchange(u, i, m)):
                return False
    return True


def _is_strongly_stable(I: MonomialIdeal) -> bool:
    for u in I.exponent_sets:
        for j, a in enumerate(u):
            if a:
                for i in range(j):
                    if not I.contains(_exchange(u, i, j)):
                        return False
    return True


def _is_sqfree_stable(I: MonomialIdeal) -> bool:
    for u in I.exponent_sets:
        m = max(k for k, a in enumerate(u) if a)
        for i in range(m):
            if not u[i] and not I.contains(_exchange(u, i, m)):
                return False
    return True


def _is_sqfree_strongly_stable(I: MonomialIdeal) -> bool:
    for u in I.exponent_sets:
        for j, a in enumerate(u):
            if a:
                for i in range(j):
                    if not u[i] and not I.contains(_exchange(u, i, j)):
                        return False
    return True


def is_p_borel(I: MonomialIdeal, p: int) -> bool:
    """Borel-fixedness in characteristic p by the digit-dominance exchange test."""
    for u in I.exponent_sets:
        for j, a in enumerate(u):
            if not a:
                continue
            for t in range(1, a + 1):
                if not digits_leq(t, a, p):
                    continue
                for i in range(j):
                    if not I.contains(_exchange(u, i, j, t)):
                        return False
    return True


@dataclass(frozen=True)
class StabilityReport:
    stable: bool
    strongly_stable: bool
    squarefree: bool
    squarefree_stable: bool
    squarefree_strongly_stable: bool
    p_borel: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "stable": self.stable,
            "strongly_stable": self.strongly_stable,
            "squarefree": self.squarefree,
            "squarefree_stable": self.squarefree_stable,
            "squarefree_strongly_stable": self.squarefree_strongly_stable,
            "p_borel": {str(p): v for p, v in sorted(self.p_borel.items())},
        }


def classify(I: MonomialIdeal, primes: Iterable[int] = ()) -> StabilityReport:
    """Stability hierarchy of ``I``; ``primes`` selects p-Borel tests (0 for Q)."""
    sq = I.is_squarefree
    strongly = _is_strongly_stable(I)
    return StabilityReport(
        stable=strongly or _is_stable(I),
        strongly_stable=strongly,
        squarefree=sq,
        squarefree_stable=sq and _is_sqfree_stable(I),
        squarefree_strongly_stable=sq and _is_sqfree_strongly_stable(I),
        p_borel={p: (strongly if p == 0 else is_p_borel(I, p)) for p in primes},
    )


# --- the sigma operator -----------------------------------------------------

def sigma_map(u: Monomial, target_n: int | None = None) -> Monomial:
    """x_{i1} x_{i2} ... x_{id} (i1 <= ... <= id)  ->  x_{i1} x_{i2+1} ... x_{id+d-1}."""
    if target_n is None:
        target_n = u.n
    idx = u.indices()
    if not idx:
        raise UnitMonomial("sigma of the unit monomial")
    top = idx[-1] + len(idx) - 1
    if top > target_n:
        raise AmbientTooSmall(f"sigma({u}) needs {top} variables, only {target_n} available")
    return Monomial.from_indices((i + k for k, i in enumerate(idx)), target_n)


def sigma_images(I: MonomialIdeal, target_n: int | None = None) -> list[Monomial]:
    """u^sigma for each u in G(I), in the order of G(I)."""
    if target_n is None:
        target_n = I.n
    return [sigma_map(u, target_n) for u in I.generators]


def sigma_ideal(I: MonomialIdeal, target_n: int | None = None) -> MonomialIdeal:
    if target_n is None:
        target_n = I.n
    return minimalize(sigma_images(I, target_n), target_n)


# --- slices and products ----------------------------------------------------

def component_ideal(I: MonomialIdeal, j: int) -> MonomialIdeal:
    """The ideal generated by the degree-j part of I."""
    if j < 1:
        raise ValueError("components start at degree 1")
    gens = set()
    for u in I.generators:
        if u.degree <= j:
            for w in monomials_of_degree(I.n, j - u.degree):
                gens.add(Monomial(tuple(a + b for a, b in zip(u.exponents, w))))
    return minimalize(gens, I.n)


def maximal_ideal_product(I: MonomialIdeal) -> MonomialIdeal:
    """m * I with m = (x_1, ..., x_n)."""
    gens = []
    for u in I.generators:
        for t in range(I.n):
            e = list(u.exponents)
            e[t] += 1
            gens.append(Monomial(tuple(e)))
    return minimalize(gens, I.n)


# --- Stanley-Reisner correspondence -----------------------------------------

def stanley_reisner(c: Complex) -> MonomialIdeal:
    return MonomialIdeal(c.n, tuple(Monomial.from_face(g, c.n) for g in c.minimal_nonfaces))


def complex_of(I: MonomialIdeal) -> Complex:
    """The complex whose Stanley-Reisner ideal is the squarefree ideal ``I``."""
    if not I.is_squarefree:
        raise NotSquarefree(f"{I} is not squarefree")
    for g in I.generators:
        if g.degree == 1:
            raise VertexExcluded(f"generator {g} removes a vertex")
    return Complex.from_nonfaces(I.n, [g.to_face() for g in I.generators])


def face_list(I: MonomialIdeal) -> list[list[int]]:
    return [list(face_vertices(g.to_face())) for g in I.generators]
