"""Graded Betti tables of monomial ideals.

Three routes:

* :func:`betti_ek` - binomial formula for stable ideals;
* :func:`betti_ahh` - binomial formula for squarefree stable ideals;
* :func:`betti_koszul` - homology of the Koszul complex of S/I, by exact
  rank computations over any supported field. This is the independent
  oracle the formulas are checked against.

The Koszul differential preserves the Z^n-grading, so each internal degree
j splits into multidegrees a with |a| = j and ranks are taken block by
block. Two kinds of blocks are skipped without computing anything, both
exactly acyclic: x^a not in I (the block is the full Koszul complex on
supp(a)), and a_t larger than every exponent of x_t among the generators
(the block is a cone on multiplication by e_t).
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from itertools import product
from math import comb

from .errors import DegreeCapTooSmall, DocumentError, NotSquarefreeStable, NotStable
from .exactlinalg import QQ, FieldSpec, row_rank
from .ideals import MonomialIdeal, classify, max_index, monomials_of_degree


class DegreeCapWarning(UserWarning):
    """The degree cap may hide nonzero Betti numbers."""


@dataclass(frozen=True)
class BettiTable:
    """Sparse graded Betti numbers: ``entries`` holds (i, j, beta) with beta > 0."""

    entries: tuple[tuple[int, int, int], ...] = ()

    @classmethod
    def from_dict(cls, d: dict) -> "BettiTable":
        items = []
        for (i, j), b in d.items():
            if b < 0:
                raise ValueError(f"negative Betti number at {(i, j)}")
            if b:
                items.append((i, j, b))
        return cls(tuple(sorted(items)))

    def as_dict(self) -> dict[tuple[int, int], int]:
        return {(i, j): b for i, j, b in self.entries}

    def __getitem__(self, ij) -> int:
        return self.as_dict().get(tuple(ij), 0)

    def __len__(self):
        return len(self.entries)

    def __bool__(self):
        return bool(self.entries)

    def totals(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for i, _, b in self.entries:
            out[i] = out.get(i, 0) + b
        return out

    def regularity(self):
        """max{j - i : beta_ij != 0}; None for the zero ideal."""
        return max((j - i for i, j, _ in self.entries), default=None)

    def to_document(self) -> dict:
        return {"entries": [{"i": i, "j": j, "beta": b} for i, j, b in self.entries]}

    @classmethod
    def from_document(cls, doc) -> "BettiTable":
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            d = {(int(e["i"]), int(e["j"])): int(e["beta"]) for e in doc["entries"]}
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"bad Betti table document: {exc}") from exc
        return cls.from_dict(d)

    def render(self) -> str:
        """Macaulay2-style layout: columns are i, rows are j - i."""
        if not self.entries:
            return "0"
        d = self.as_dict()
        cols = range(0, max(i for i, _, _ in self.entries) + 1)
        offsets = sorted({j - i for i, j, _ in self.entries})
        rows = range(offsets[0], offsets[-1] + 1)
        totals = self.totals()

        def cell(v):
            return str(v) if v else "."

        body = [[f"{r}:"] + [cell(d.get((i, i + r), 0)) for i in cols] for r in rows]
        table = [[""] + [str(i) for i in cols], ["total:"] + [str(totals.get(i, 0)) for i in cols]] + body
        widths = [max(len(row[c]) for row in table) for c in range(len(table[0]))]
        lines = []
        for row in table:
            lines.append(" ".join(s.rjust(w) for s, w in zip(row, widths)).rstrip())
        return "\n".join(lines)

    def __str__(self):
        return self.render()


def parse_betti_table(doc) -> BettiTable:
    return BettiTable.from_document(doc)


# --- closed formulas --------------------------------------------------------

def _binom(a: int, i: int) -> int:
    return comb(a, i) if 0 <= i <= a else 0


def betti_ek(I: MonomialIdeal) -> BettiTable:
    """beta_{i,i+j} = sum over degree-j generators u of C(m(u) - 1, i)."""
    if not classify(I).stable:
        raise NotStable(f"{I} is not stable")
    out: dict[tuple[int, int], int] = {}
    for u in I.generators:
        m, d = max_index(u), u.degree
        for i in range(m):
            out[(i, i + d)] = out.get((i, i + d), 0) + _binom(m - 1, i)
    return BettiTable.from_dict(out)


def betti_ahh(I: MonomialIdeal) -> BettiTable:
    """beta_{i,i+j} = sum over degree-j generators u of C(m(u) - j, i)."""
    if not classify(I).squarefree_stable:
        raise NotSquarefreeStable(f"{I} is not squarefree stable")
    out: dict[tuple[int, int], int] = {}
    for u in I.generators:
        m, d = max_index(u), u.degree
        for i in range(m - d + 1):
            out[(i, i + d)] = out.get((i, i + d), 0) + _binom(m - d, i)
    return BettiTable.from_dict(out)


def regularity_from_gens(I: MonomialIdeal):
    """Maximal generator degree, valid for (squarefree) stable ideals."""
    rep = classify(I)
    if not (rep.stable or rep.squarefree_stable):
        raise NotStable(f"{I} is neither stable nor squarefree stable")
    if I.is_zero:
        return None
    return I.max_degree


# --- Koszul oracle ----------------------------------------------------------

def _sign(t_pos: int, T: int) -> int:
    """(-1)^(number of elements of T below t)."""
    return -1 if (T & ((1 << t_pos) - 1)).bit_count() & 1 else 1


def _block_homology(basis_by_size, field):
    """Homology dimensions of one multigraded strand.

    ``basis_by_size[i]`` lists the subsets T (bitmasks over the support) in
    homological position i; boundary terms outside the basis vanish.
    """
    top = len(basis_by_size) - 1
    ranks = [0] * (top + 2)
    for i in range(1, top + 1):
        src, dst = basis_by_size[i], basis_by_size[i - 1]
        if not src or not dst:
            continue
        col = {T: c for c, T in enumerate(dst)}
        rows = []
        for T in src:
            row = [0] * len(dst)
            rest = T
            while rest:
                low = rest & -rest
                rest ^= low
                S = T ^ low
                c = col.get(S)
                if c is not None:
                    row[c] = field.from_int(_sign(low.bit_length() - 1, T))
            rows.append(row)
        ranks[i] = row_rank(field, rows)
    return [len(basis_by_size[i]) - ranks[i] - ranks[i + 1] for i in range(top + 1)]


def _squarefree_flags(I: MonomialIdeal):
    n = I.n
    size = 1 << n
    flags = bytearray(size)
    for g in I.generators:
        flags[g.to_face()] = 1
    for v in range(n):
        b = 1 << v
        for m in range(size):
            if m & b and flags[m ^ b]:
                flags[m] = 1
    return flags


def _koszul_squarefree(I, field, cap, out):
    flags = _squarefree_flags(I)
    for U in range(1, 1 << I.n):
        if not flags[U] or U.bit_count() > cap:
            continue
        # relabel U's vertices as 0..s-1 so subsets are small bitmasks
        verts = [v for v in range(I.n) if U >> v & 1]
        s = len(verts)
        subsets = [0] * (1 << s)
        for T in range(1, 1 << s):
            low = T & -T
            subsets[T] = subsets[T ^ low] | (1 << verts[low.bit_length() - 1])
        basis = [[] for _ in range(s + 1)]
        for T in range(1 << s):
            if not flags[U ^ subsets[T]]:
                basis[T.bit_count()].append(T)
        h = _block_homology(basis, field)
        for i in range(1, s + 1):
            if h[i]:
                key = (i - 1, s)
                out[key] = out.get(key, 0) + h[i]


def _koszul_general(I, field, cap, out):
    n = I.n
    lcm = [max(g.exponents[t] for g in I.generators) for t in range(n)]
    contains = I.contains
    for a in product(*(range(e + 1) for e in lcm)):
        deg = sum(a)
        if deg == 0 or deg > cap or not contains(a):
            continue
        supp = [t for t in range(n) if a[t]]
        s = len(supp)
        basis = [[] for _ in range(s + 1)]
        for T in range(1 << s):
            b = list(a)
            for k in range(s):
                if T >> k & 1:
                    b[supp[k]] -= 1
            if not contains(b):
                basis[T.bit_count()].append(T)
        h = _block_homology(basis, field)
        for i in range(1, s + 1):
            if h[i]:
                key = (i - 1, deg)
                out[key] = out.get(key, 0) + h[i]


def _koszul_by_degree(I, field, cap, out):
    """Literal per-(i, j) Koszul complex, no multigraded splitting."""
    n = I.n
    subsets = {i: [T for T in range(1 << n) if T.bit_count() == i] for i in range(n + 1)}
    for j in range(1, cap + 1):
        basis = {}
        for i in range(n + 1):
            if j - i < 0:
                basis[i] = []
                continue
            ws = [w for w in monomials_of_degree(n, j - i) if not I.contains(w)]
            basis[i] = [(T, w) for T in subsets[i] for w in ws]
        ranks = [0] * (n + 2)
        for i in range(1, n + 1):
            src, dst = basis[i], basis[i - 1]
            if not src or not dst:
                continue
            col = {b: c for c, b in enumerate(dst)}
            rows = []
            for T, w in src:
                row = [0] * len(dst)
                for t in range(n):
                    if T >> t & 1:
                        xw = list(w)
                        xw[t] += 1
                        c = col.get((T ^ (1 << t), tuple(xw)))
                        if c is not None:
                            row[c] = field.from_int(_sign(t, T))
                rows.append(row)
            ranks[i] = row_rank(field, rows)
        for i in range(1, n + 1):
            h = len(basis[i]) - ranks[i] - ranks[i + 1]
            if h:
                out[(i - 1, j)] = h


def betti_koszul(
    I: MonomialIdeal,
    field: FieldSpec = QQ,
    degree_cap: int | None = None,
    split: str = "multidegree",
) -> BettiTable:
    """beta_{i,j}(I) = dim H_{i+1}(K(x) tensor S/I)_j, scanning j <= degree_cap.

    The default cap, max generator degree + n, bounds every nonzero entry
    of a stable or squarefree stable ideal. ``split="degree"`` builds the
    unsplit graded pieces instead (slow; for cross-checking).
    """
    if I.is_zero:
        return BettiTable()
    if degree_cap is None:
        degree_cap = I.max_degree + I.n
    elif degree_cap < I.max_degree:
        raise DegreeCapTooSmall(f"cap {degree_cap} is below the generator degree {I.max_degree}")
    lcm_degree = sum(max(g.exponents[t] for g in I.generators) for t in range(I.n))
    if degree_cap < lcm_degree:
        rep = classify(I)
        safe = lcm_degree
        if rep.stable or rep.squarefree_stable:
            safe = min(safe, I.max_degree + I.n - 1)
        if degree_cap < safe:
            warnings.warn(f"degree cap {degree_cap} may truncate the table", DegreeCapWarning, stacklevel=2)
    out: dict[tuple[int, int], int] = {}
    if split == "degree":
        _koszul_by_degree(I, field, degree_cap, out)
    elif split != "multidegree":
        raise ValueError(f"unknown split {split!r}")
    elif I.is_squarefree:
        _koszul_squarefree(I, field, degree_cap, out)
    else:
        _koszul_general(I, field, degree_cap, out)
    return BettiTable.from_dict(out)


# --- Hilbert functions ------------------------------------------------------

def _count_ie(I: MonomialIdeal, d: int) -> int:
    gens = [g.exponents for g in I.generators]
    n = I.n
    total = 0

    def walk(start, lcm, size):
        nonlocal total
        for k in range(start, len(gens)):
            new = tuple(max(a, b) for a, b in zip(lcm, gens[k]))
            deg = sum(new)
            if deg <= d:
                total += (-1) ** size * comb(n - 1 + d - deg, n - 1)
            # lcm degree only grows, but deeper lcms may coincide; keep walking
            walk(k + 1, new, size + 1)

    walk(0, (0,) * n, 0)
    return total


def hilbert_function(I: MonomialIdeal, d: int, method: str = "auto") -> int:
    """Number of degree-d monomials in I."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if method == "auto":
        method = "enumerate" if comb(I.n - 1 + d, d) <= 200_000 or len(I.generators) > 16 else "inclusion_exclusion"
    if method == "enumerate":
        return sum(1 for w in monomials_of_degree(I.n, d) if I.contains(w))
    if method == "inclusion_exclusion":
        return _count_ie(I, d)
    raise ValueError(f"unknown method {method!r}")
