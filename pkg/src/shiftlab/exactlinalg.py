"""Exact scalar fields (Q, GF(p), GF(p^k)) and dense elimination kernels.

Field elements are plain Python values:

* rationals: ``int`` when integral, otherwise a reduced ``Fraction``;
* GF(p): ``int`` in ``range(p)``;
* GF(p^k): ``int`` in ``range(p**k)`` whose base-p digits are the
  coefficients (low degree first) of the residue modulo ``modulus``.

Everything here is immutable or copied on entry, so callers may share
fields and matrices freely between threads.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd

from .errors import DegreeOutOfRange, DescriptorError, FieldMismatch, NonPrime

RATIONALS = "rationals"
PRIME = "prime"
EXTENSION = "extension"

MAX_PRIME = 1 << 31
MAX_EXTENSION_DEGREE = 16
# multiplication through log/antilog tables below this field size
TABLE_LIMIT = 1 << 22
# random rationals are integers drawn from [-RATIONAL_RANGE, RATIONAL_RANGE]
RATIONAL_RANGE = 1 << 15


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n below 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# --- polynomials over GF(p): coefficient lists, lowest degree first ---------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, f, p):
    a = _trim(list(a))
    k = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) > k:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - k
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _poly_mulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_mod(out, f, p)


def _poly_powmod(a, e, f, p):
    result = [1]
    base = _poly_mod(a, f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(modulus, p: int) -> bool:
    """Rabin-style test: no factor of degree <= k/2, via gcd with x^(p^i) - x."""
    f = _trim([c % p for c in modulus])
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    h = [0, 1]
    for _ in range(k // 2):
        h = _poly_powmod(h, p, f, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _poly_gcd(f, _trim(diff), p)
        if len(g) > 1:
            return False
    return True


def find_irreducible(p: int, k: int, seed: int = 0) -> tuple[int, ...]:
    """Seeded random search for a monic irreducible polynomial of degree k."""
    rng = random.Random(seed * 1_000_003 + p * 131 + k)
    while True:
        coeffs = [rng.randrange(p) for _ in range(k)] + [1]
        if coeffs[0] == 0:
            continue
        if is_irreducible(coeffs, p):
            return tuple(coeffs)


def _canon_q(x):
    return x.numerator if isinstance(x, Fraction) and x.denominator == 1 else x


def _prime_factors(n):
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FieldSpec:
    """An exact scalar domain.

    Two specs with equal parameters compare equal and compute identically.
    """

    kind: str
    p: int = 0
    k: int = 1
    modulus: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind == RATIONALS:
            return
        if self.kind not in (PRIME, EXTENSION):
            raise DescriptorError(f"unknown field kind {self.kind!r}")
        if not (2 <= self.p <= MAX_PRIME) or not is_prime(self.p):
            raise NonPrime(f"{self.p} is not a prime <= 2^31")
        if self.kind == PRIME:
            if self.k != 1 or self.modulus:
                raise DescriptorError("prime fields take no extension data")
            return
        if not 1 <= self.k <= MAX_EXTENSION_DEGREE:
            raise DegreeOutOfRange(f"extension degree {self.k} not in 1..16")
        m = self.modulus
        if len(m) != self.k + 1 or m[-1] != 1 or any(not 0 <= c < self.p for c in m):
            raise DescriptorError("modulus must be monic of degree k with reduced coefficients")
        if not is_irreducible(m, self.p):
            raise DescriptorError(f"modulus {m} is reducible over GF({self.p})")

    # -- descriptors ----------------------------------------------------------

    @property
    def descriptor(self) -> str:
        if self.kind == RATIONALS:
            return "q"
        if self.kind == PRIME:
            return f"f:{self.p}"
        return f"f:{self.p}^{self.k}"

    def __str__(self):
        return self.descriptor

    @property
    def size(self):
        """Number of elements, or None for the rationals."""
        return None if self.kind == RATIONALS else self.p ** self.k

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == RATIONALS else self.p

    # -- elements -------------------------------------------------------------

    zero = 0
    one = 1

    def from_int(self, a: int):
        if self.kind == RATIONALS:
            return a
        return a % self.p

    def coerce(self, x):
        """Map a Python int (or, over Q, a Fraction) into canonical form."""
        if isinstance(x, bool):
            raise FieldMismatch(f"boolean entry {x!r}")
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction) and self.kind == RATIONALS:
            return x.numerator if x.denominator == 1 else x
        raise FieldMismatch(f"{x!r} is not an element of {self.descriptor}")

    def is_element(self, x) -> bool:
        if isinstance(x, bool):
            return False
        if self.kind == RATIONALS:
            return isinstance(x, int) or (isinstance(x, Fraction) and x.denominator != 1)
        return isinstance(x, int) and 0 <= x < self.size

    def random_element(self, rng: random.Random):
        if self.kind == RATIONALS:
            return rng.randint(-RATIONAL_RANGE, RATIONAL_RANGE)
        return rng.randrange(self.size)

    def to_coeffs(self, x) -> list[int]:
        """Residue coefficients (low degree first) of an extension element."""
        out = []
        for _ in range(self.k):
            x, r = divmod(x, self.p)
            out.append(r)
        return out

    def from_coeffs(self, coeffs) -> int:
        x = 0
        for c in reversed(list(coeffs)):
            x = x * self.p + c % self.p
        return x

    @cached_property
    def _tables(self):
        """(exp, log) tables of a primitive element, extensions only."""
        q = self.size
        factors = _prime_factors(q - 1)
        f = list(self.modulus)
        for cand in range(self.p, q):
            g = self.to_coeffs(cand)
            if all(_poly_powmod(g, (q - 1) // r, f, self.p) != [1] for r in factors):
                break
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        cur = [1]
        for e in range(q - 1):
            v = self.from_coeffs(cur)
            exp[e] = v
            log[v] = e
            cur = _poly_mulmod(cur, g, f, self.p)
        exp[q - 1:] = exp[:q - 1]
        return exp, log

    def add(self, a, b):
        if self.kind == RATIONALS:
            return _canon_q(a + b)
        if self.kind == PRIME:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p, out, scale = self.p, 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * scale
            scale *= p
        return out

    def neg(self, a):
        if self.kind == RATIONALS:
            return -a
        if self.kind == PRIME:
            return -a % self.p
        if self.p == 2:
            return a
        return self.from_coeffs([-c for c in self.to_coeffs(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.kind == RATIONALS:
            return _canon_q(a * b)
        if self.kind == PRIME:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self.size <= TABLE_LIMIT:
            exp, log = self._tables
            return exp[log[a] + log[b]]
        prod = _poly_mulmod(self.to_coeffs(a), self.to_coeffs(b), list(self.modulus), self.p)
        return self.from_coeffs(prod)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == RATIONALS:
            return self.coerce(1 / Fraction(a))
        if self.kind == PRIME:
            return pow(a, -1, self.p)
        if self.size <= TABLE_LIMIT:
            exp, log = self._tables
            return exp[(self.size - 1 - log[a]) % (self.size - 1)]
        return self.pow(a, self.size - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result


QQ = FieldSpec(RATIONALS)

_DESCRIPTOR = re.compile(r"^f:(\d+)(?:\^(\d+))?$")


def make_field(descriptor: str, seed: int = 0) -> FieldSpec:
    """Parse ``q``, ``f:p`` or ``f:p^k`` into a validated field."""
    text = descriptor.strip().lower()
    if text == "q":
        return QQ
    m = _DESCRIPTOR.match(text)
    if not m:
        raise DescriptorError(f"bad field descriptor {descriptor!r}; expected q | f:<p> | f:<p>^<k>")
    p = int(m.group(1))
    k = int(m.group(2)) if m.group(2) is not None else 1
    if not (2 <= p <= MAX_PRIME) or not is_prime(p):
        raise NonPrime(f"{p} is not a prime <= 2^31")
    if not 1 <= k <= MAX_EXTENSION_DEGREE:
        raise DegreeOutOfRange(f"extension degree {k} not in 1..16")
    if k == 1:
        return FieldSpec(PRIME, p)
    return FieldSpec(EXTENSION, p, k, find_irreducible(p, k, seed))


# --- matrices ---------------------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    """Dense row-major matrix with canonical entries over ``field``."""

    field: FieldSpec
    rows: tuple[tuple, ...]
    ncols: int

    def __post_init__(self):
        for row in self.rows:
            if len(row) != self.ncols:
                raise ValueError("ragged matrix")
            for x in row:
                if not self.field.is_element(x):
                    raise FieldMismatch(f"entry {x!r} is not canonical in {self.field.descriptor}")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows, ncols: int | None = None) -> "Matrix":
        rows = [tuple(field.coerce(x) for x in row) for row in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(field, tuple(rows), ncols)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls(field, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def transpose(self) -> "Matrix":
        cols = tuple(zip(*self.rows)) if self.rows else tuple(() for _ in range(self.ncols))
        return Matrix(self.field, cols, self.nrows)

    def to_lists(self) -> list[list]:
        return [list(r) for r in self.rows]


# --- elimination kernels ----------------------------------------------------

def _echelon_mod_p(rows, p, reduced):
    rows = [r for r in rows if any(r)]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    rank = 0
    for c in range(ncols):
        for r in range(rank, len(rows)):
            if rows[r][c]:
                break
        else:
            continue
        rows[rank], rows[r] = rows[r], rows[rank]
        prow = rows[rank]
        lead = prow[c]
        if lead != 1:
            inv = pow(lead, -1, p)
            prow[c:] = [x * inv % p for x in prow[c:]]
        tail = prow[c:]
        start = 0 if reduced else rank + 1
        for r in range(start, len(rows)):
            if r == rank:
                continue
            row = rows[r]
            f = row[c]
            if f:
                row[c:] = [(a - f * b) % p for a, b in zip(row[c:], tail)]
        pivots.append(c)
        rank += 1
        if rank == len(rows):
            break
    return rows[:rank], pivots


def _echelon_generic(rows, field, reduced):
    rows = [r for r in rows if any(r)]
    if not rows:
        return [], []
    ncols = len(rows[0])
    add, mul, neg = field.add, field.mul, field.neg
    pivots = []
    rank = 0
    for c in range(ncols):
        for r in range(rank, len(rows)):
            if rows[r][c]:
                break
        else:
            continue
        rows[rank], rows[r] = rows[r], rows[rank]
        prow = rows[rank]
        if prow[c] != 1:
            inv = field.inv(prow[c])
            prow[c:] = [mul(x, inv) for x in prow[c:]]
        tail = prow[c:]
        start = 0 if reduced else rank + 1
        for r in range(start, len(rows)):
            if r == rank:
                continue
            row = rows[r]
            f = row[c]
            if f:
                nf = neg(f)
                row[c:] = [add(a, mul(nf, b)) for a, b in zip(row[c:], tail)]
        pivots.append(c)
        rank += 1
        if rank == len(rows):
            break
    return rows[:rank], pivots


def _primitive(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    return [x // g for x in row] if g > 1 else row


def _integer_rows(rows):
    out = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // gcd(den, x.denominator)
        out.append([int(x * den) for x in row] if den != 1 else [int(x) for x in row])
    return out


def _echelon_integer(rows):
    """Fraction-free echelon over Z; each row kept primitive."""
    rows = [_primitive(r) for r in rows if any(r)]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    rank = 0
    for c in range(ncols):
        for r in range(rank, len(rows)):
            if rows[r][c]:
                break
        else:
            continue
        rows[rank], rows[r] = rows[r], rows[rank]
        prow = rows[rank]
        a = prow[c]
        tail = prow[c:]
        for r in range(rank + 1, len(rows)):
            row = rows[r]
            b = row[c]
            if b:
                g = gcd(a, b)
                ag, bg = a // g, b // g
                row[c:] = [ag * x - bg * y for x, y in zip(row[c:], tail)]
                rows[r] = _primitive(row)
        pivots.append(c)
        rank += 1
        if rank == len(rows):
            break
    return rows[:rank], pivots


def _rref_fraction(rows):
    rows = [[Fraction(x) for x in r] for r in rows if any(r)]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    rank = 0
    for c in range(ncols):
        for r in range(rank, len(rows)):
            if rows[r][c]:
                break
        else:
            continue
        rows[rank], rows[r] = rows[r], rows[rank]
        prow = rows[rank]
        lead = prow[c]
        prow[c:] = [x / lead for x in prow[c:]]
        tail = prow[c:]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c]
                rows[r][c:] = [x - f * y for x, y in zip(rows[r][c:], tail)]
        pivots.append(c)
        rank += 1
        if rank == len(rows):
            break
    canon = [[x.numerator if x.denominator == 1 else x for x in r] for r in rows[:rank]]
    return canon, pivots


def bareiss_rank(rows) -> int:
    """Rank of an integer matrix by one-step fraction-free (Bareiss) elimination."""
    M = [list(r) for r in rows]
    if not M:
        return 0
    m, n = len(M), len(M[0])
    prev, rank = 1, 0
    for c in range(n):
        piv = next((r for r in range(rank, m) if M[r][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        prow = M[rank]
        a = prow[c]
        for r in range(rank + 1, m):
            row = M[r]
            b = row[c]
            for j in range(c + 1, n):
                row[j] = (a * row[j] - b * prow[j]) // prev
            row[c] = 0
        prev = a
        rank += 1
        if rank == m:
            break
    return rank


def fraction_rank(rows) -> int:
    """Rank over Q by naive elimination with Fractions (cross-check kernel)."""
    return len(_rref_fraction(rows)[1])


def row_echelon(field: FieldSpec, rows, column_order=None, reduced=False):
    """Echelonize ``rows`` (lists of canonical entries).

    Pivots are chosen by scanning columns in ``column_order`` and taking the
    first row with a nonzero entry. Returns ``(basis_rows, pivot_columns)``
    where pivot columns are indices into the original column numbering.
    Over Q a non-reduced echelon is returned as primitive integer rows (a
    rescaling of the true echelon rows, so the row space is the same).
    """
    rows = [list(r) for r in rows]
    perm = None
    if column_order is not None:
        perm = list(column_order)
        if perm != list(range(len(perm))):
            rows = [[r[c] for c in perm] for r in rows]
        else:
            perm = None
    if field.kind == PRIME:
        out, piv = _echelon_mod_p(rows, field.p, reduced)
    elif field.kind == EXTENSION:
        out, piv = _echelon_generic(rows, field, reduced)
    elif reduced:
        out, piv = _rref_fraction(rows)
    else:
        out, piv = _echelon_integer(_integer_rows(rows))
    if perm is not None:
        inverse = [0] * len(perm)
        for pos, c in enumerate(perm):
            inverse[c] = pos
        out = [[r[inverse[c]] for c in range(len(perm))] for r in out]
        piv = [perm[c] for c in piv]
    return out, piv


def row_rank(field: FieldSpec, rows) -> int:
    if field.kind == RATIONALS:
        return bareiss_rank(_integer_rows(rows))
    return len(row_echelon(field, rows)[1])


def rref(m: Matrix, column_order=None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form relative to ``column_order``."""
    order = list(range(m.ncols)) if column_order is None else list(column_order)
    if sorted(order) != list(range(m.ncols)):
        raise ValueError("column_order must be a permutation of the columns")
    for row in m.rows:
        for x in row:
            if not m.field.is_element(x):
                raise FieldMismatch(f"entry {x!r} is not canonical in {m.field.descriptor}")
    basis, pivots = row_echelon(m.field, m.rows, order, reduced=True)
    return Matrix(m.field, tuple(tuple(r) for r in basis), m.ncols), pivots


def rank(m: Matrix) -> int:
    return row_rank(m.field, m.rows)
