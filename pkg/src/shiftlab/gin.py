"""Generic initial ideals for the reverse lexicographic order.

The initial ideal of g(I) in degree d is spanned by the leading monomials of
(g I)_d, so each degree is handled by echelonizing a coefficient matrix
whose columns are the degree-d monomials in revlex-descending order: the
pivot columns are the initial monomials.

Over a finite field the change of coordinates g is random. Several
independent draws must agree before a result is accepted.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import DegreeMismatch, FieldTooSmall, GenericityFailure, NotSquarefree, NotStable
from .exactlinalg import FieldSpec, Matrix, row_echelon, row_rank
from .ideals import (
    Monomial,
    MonomialIdeal,
    classify,
    minimalize,
    monomials_of_degree,
    squarefree_of_degree,
)

MIN_FIELD_SIZE = 1 << 13
DEFAULT_TRIALS = 3


def revlex_compare(u: Monomial, v: Monomial) -> int:
    """1 if u > v, -1 if u < v, 0 if equal; x_1 > x_2 > ... > x_n."""
    if u.degree != v.degree:
        raise DegreeMismatch(f"{u} and {v} have different degrees")
    for a, b in zip(reversed(u.exponents), reversed(v.exponents)):
        if a != b:
            return 1 if a < b else -1
    return 0


def check_field_size(field: FieldSpec):
    if field.size is not None and field.size < MIN_FIELD_SIZE:
        raise FieldTooSmall(f"{field.descriptor} has {field.size} elements; need at least {MIN_FIELD_SIZE}")


@dataclass(frozen=True)
class GenericChange:
    """An invertible linear change x_j -> sum_i matrix[i][j] x_i."""

    matrix: Matrix
    seed: object = None

    def __post_init__(self):
        m = self.matrix
        if m.nrows != m.ncols or row_rank(m.field, m.rows) != m.ncols:
            raise ValueError("coordinate change must be an invertible square matrix")

    @classmethod
    def random(cls, n: int, field: FieldSpec, seed) -> "GenericChange":
        """Uniform entries, rejection-sampled until invertible."""
        rng = random.Random(f"generic-change:{field.descriptor}:{n}:{seed}")
        while True:
            rows = [[field.random_element(rng) for _ in range(n)] for _ in range(n)]
            if row_rank(field, rows) == n:
                return cls(Matrix(field, tuple(map(tuple, rows)), n), seed)

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> "GenericChange":
        return cls(Matrix.identity(field, n), None)

    @property
    def field(self) -> FieldSpec:
        return self.matrix.field

    @property
    def n(self) -> int:
        return self.matrix.ncols

    def linear_form(self, j: int) -> list:
        """Coefficients of g(x_j) (0-based j) on x_1..x_n."""
        return [row[j] for row in self.matrix.rows]


@dataclass(frozen=True)
class GradedSubspace:
    """Echelon basis of a degree-d subspace with revlex-descending columns.

    ``columns`` are exponent tuples (symmetric) or bitmasks (exterior).
    """

    degree: int
    field: FieldSpec
    columns: tuple
    rows: tuple
    pivots: tuple[int, ...]
    exterior: bool = False

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def initial_monomials(self) -> list:
        return [self.columns[p] for p in self.pivots]


# --- symmetric algebra ------------------------------------------------------

@lru_cache(maxsize=None)
def _column_index(n: int, d: int) -> dict:
    return {e: i for i, e in enumerate(monomials_of_degree(n, d))}


@lru_cache(maxsize=None)
def _times_variable(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    """[t][c]: column in degree d+1 of x_t times column c of degree d."""
    idx = _column_index(n, d + 1)
    out = []
    for t in range(n):
        row = []
        for e in monomials_of_degree(n, d):
            f = list(e)
            f[t] += 1
            row.append(idx[tuple(f)])
        out.append(tuple(row))
    return tuple(out)


def _poly_mul_linear(poly: dict, form: list, field: FieldSpec) -> dict:
    add, mul = field.add, field.mul
    out: dict = {}
    for e, c in poly.items():
        for t, a in enumerate(form):
            if a:
                f = list(e)
                f[t] += 1
                f = tuple(f)
                out[f] = add(out.get(f, 0), mul(c, a))
    return {e: c for e, c in out.items() if c}


class _Images:
    """Memoized g(u) for monomials u, as dicts exponent-tuple -> coefficient."""

    def __init__(self, g: GenericChange):
        self.g = g
        self.forms = [g.linear_form(j) for j in range(g.n)]
        self.cache = {(0,) * g.n: {(0,) * g.n: 1}}

    def __call__(self, exps: tuple) -> dict:
        hit = self.cache.get(exps)
        if hit is not None:
            return hit
        m = max(k for k, a in enumerate(exps) if a)
        lower = list(exps)
        lower[m] -= 1
        out = _poly_mul_linear(self(tuple(lower)), self.forms[m], self.g.field)
        self.cache[exps] = out
        return out


def _symmetric_rows(I, g, d, previous, images):
    n = I.n
    idx = _column_index(n, d)
    rows = []
    if previous is None:
        for u in I.generators:
            k = u.degree
            if k > d:
                continue
            P = images(u.exponents)
            for w in monomials_of_degree(n, d - k):
                row = [0] * len(idx)
                for e, c in P.items():
                    row[idx[tuple(a + b for a, b in zip(e, w))]] = c
                rows.append(row)
    else:
        shift = _times_variable(n, d - 1)
        for prow in previous.rows:
            nz = [(c, v) for c, v in enumerate(prow) if v]
            for t in range(n):
                row = [0] * len(idx)
                st = shift[t]
                for c, v in nz:
                    row[st[c]] = v
                rows.append(row)
        for u in I.generators:
            if u.degree == d:
                row = [0] * len(idx)
                for e, c in images(u.exponents).items():
                    row[idx[e]] = c
                rows.append(row)
    return rows


# --- exterior algebra -------------------------------------------------------

def _wedge_sign(A: int, B: int) -> int:
    """Sign of e_A ^ e_B -> e_{A|B} (A, B disjoint): (-1)^#{a in A, b in B : a > b}."""
    inv = 0
    rest = B
    while rest:
        low = rest & -rest
        rest ^= low
        inv += (A & ~((low << 1) - 1)).bit_count()
    return -1 if inv & 1 else 1


def _wedge_linear(poly: dict, form: list, field: FieldSpec) -> dict:
    """poly ^ (sum_t form[t] e_t)."""
    add, mul, neg = field.add, field.mul, field.neg
    out: dict = {}
    for A, c in poly.items():
        for t, a in enumerate(form):
            b = 1 << t
            if not a or A & b:
                continue
            v = mul(c, a)
            # e_A ^ e_t: e_t moves left past the elements of A above t
            if (A >> (t + 1)).bit_count() & 1:
                v = neg(v)
            out[A | b] = add(out.get(A | b, 0), v)
    return {m: c for m, c in out.items() if c}


class _WedgeImages:
    def __init__(self, g: GenericChange):
        self.g = g
        self.forms = [g.linear_form(j) for j in range(g.n)]
        self.cache = {0: {0: 1}}

    def __call__(self, mask: int) -> dict:
        hit = self.cache.get(mask)
        if hit is not None:
            return hit
        top = 1 << (mask.bit_length() - 1)
        out = _wedge_linear(self(mask ^ top), self.forms[top.bit_length() - 1], self.g.field)
        self.cache[mask] = out
        return out


def _exterior_rows(J, g, d, previous, images):
    n = J.n
    cols = squarefree_of_degree(n, d)
    idx = {m: i for i, m in enumerate(cols)}
    field = g.field
    rows = []
    if previous is None:
        for u in J.generators:
            k = u.degree
            if k > d:
                continue
            P = images(u.to_face())
            for w in squarefree_of_degree(n, d - k):
                row = [0] * len(cols)
                any_nz = False
                for A, c in P.items():
                    if A & w:
                        continue
                    row[idx[A | w]] = c if _wedge_sign(w, A) == 1 else field.neg(c)
                    any_nz = True
                if any_nz:
                    rows.append(row)
    else:
        for prow in previous.rows:
            nz = [(previous.columns[c], v) for c, v in enumerate(prow) if v]
            for t in range(n):
                b = 1 << t
                row = [0] * len(cols)
                for A, v in nz:
                    if A & b:
                        continue
                    # e_t ^ e_A: e_t moves right past the elements of A below t
                    row[idx[A | b]] = field.neg(v) if (A & (b - 1)).bit_count() & 1 else v
                rows.append(row)
        for u in J.generators:
            if u.degree == d:
                row = [0] * len(cols)
                for A, c in images(u.to_face()).items():
                    row[idx[A]] = c
                rows.append(row)
    return rows


# --- graded pieces and gins ---------------------------------------------------

def graded_piece(
    I: MonomialIdeal,
    g: GenericChange,
    d: int,
    previous: GradedSubspace | None = None,
    exterior: bool = False,
    _images=None,
) -> GradedSubspace:
    """Echelon basis of (g I)_d.

    With ``previous`` (the degree d-1 piece for the same I and g) the span
    is built as x_t * previous plus the degree-d generators; otherwise from
    w * g(u) over all generators u of degree <= d.
    """
    if g.n != I.n:
        raise ValueError("coordinate change and ideal have different n")
    if exterior and not I.is_squarefree:
        raise NotSquarefree(f"{I} does not live in the exterior algebra")
    if previous is not None and previous.degree != d - 1:
        raise ValueError("previous piece must have degree d - 1")
    if exterior:
        images = _images or _WedgeImages(g)
        rows = _exterior_rows(I, g, d, previous, images)
        cols = squarefree_of_degree(I.n, d)
    else:
        images = _images or _Images(g)
        rows = _symmetric_rows(I, g, d, previous, images)
        cols = monomials_of_degree(I.n, d)
    basis, pivots = row_echelon(g.field, rows) if rows else ([], [])
    return GradedSubspace(d, g.field, tuple(cols), tuple(map(tuple, basis)), tuple(pivots), exterior)


@dataclass(frozen=True)
class GinResult:
    ideal: MonomialIdeal
    field: FieldSpec
    seeds: tuple
    exterior: bool
    dims: dict = field(default_factory=dict)

    def to_document(self) -> dict:
        doc = self.ideal.to_document()
        doc["field"] = self.field.descriptor
        doc["seeds"] = [str(s) for s in self.seeds]
        doc["exterior"] = self.exterior
        return doc


def _single_gin(I: MonomialIdeal, g: GenericChange, exterior: bool, top: int | None):
    if I.is_zero:
        return (), {}
    if top is None:
        top = I.n if exterior else I.max_degree
    images = _WedgeImages(g) if exterior else _Images(g)
    found: list[Monomial] = []
    dims = {}
    previous = None
    for d in range(I.min_degree, top + 1):
        piece = graded_piece(I, g, d, previous, exterior, images)
        dims[d] = piece.dim
        for c in piece.initial_monomials():
            u = Monomial.from_face(c, I.n) if exterior else Monomial(c)
            if not any(v.divides(u) for v in found):
                found.append(u)
        previous = piece
    return tuple(found), dims


def compute_gin(
    I: MonomialIdeal,
    field: FieldSpec,
    seed: int = 0,
    trials: int = DEFAULT_TRIALS,
    exterior: bool = False,
    top_degree: int | None = None,
) -> GinResult:
    """Gin(I) under revlex, agreed on by ``trials`` random coordinate changes.

    Degrees up to ``top_degree`` are computed; by default the top generator
    degree (symmetric, stable input only) or n (exterior). Passing
    ``top_degree`` lifts the stability requirement for symmetric input; the
    caller is then responsible for it bounding the generator degrees.
    """
    check_field_size(field)
    if trials < 1:
        raise ValueError("trials must be positive")
    if exterior:
        if not I.is_squarefree:
            raise NotSquarefree(f"{I} is not squarefree")
    elif top_degree is None:
        rep = classify(I)
        if not (rep.stable or rep.squarefree_stable):
            raise NotStable(f"{I} is neither stable nor squarefree stable")
    for batch in range(2):
        seeds = tuple(f"{seed}:{t}" for t in range(batch * trials, (batch + 1) * trials))
        outcomes = [_single_gin(I, GenericChange.random(I.n, field, s), exterior, top_degree) for s in seeds]
        if all(o[0] == outcomes[0][0] for o in outcomes):
            gens, dims = outcomes[0]
            return GinResult(minimalize(gens, I.n), field, seeds, exterior, dims)
    raise GenericityFailure(f"{trials} random coordinate changes disagreed twice over {field.descriptor}")


def gin_symmetric(I: MonomialIdeal, field: FieldSpec, seed: int = 0, trials: int = DEFAULT_TRIALS) -> MonomialIdeal:
    return compute_gin(I, field, seed, trials, exterior=False).ideal


def gin_exterior(J: MonomialIdeal, field: FieldSpec, seed: int = 0, trials: int = DEFAULT_TRIALS) -> MonomialIdeal:
    return compute_gin(J, field, seed, trials, exterior=True).ideal
