"""Slow, independent reference computations used by the tests.

Nothing here calls the elimination kernels of the package: ranks are
computed by plain Gaussian elimination or by minors, complexes are handled
as Python sets of frozensets.
"""
from fractions import Fraction
from itertools import combinations, permutations, product


def _frac_rank(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
        col += 1
    return rank


def gauss_rank(rows, field=None):
    """Rank over Q (field None), or over any field object with add/mul/inv/neg."""
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    if field is None or field.size is None:
        return _frac_rank(rows)
    rank, ncols = 0, len(rows[0])
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = field.inv(rows[rank][col])
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = field.neg(field.mul(rows[r][col], inv))
                rows[r] = [field.add(a, field.mul(f, b)) for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def perm_sign(p):
    s = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def det(m, field=None):
    """Leibniz determinant."""
    n = len(m)
    total = 0
    for p in permutations(range(n)):
        term = 1
        for i in range(n):
            term = term * m[i][p[i]] if field is None else field.mul(term, m[i][p[i]])
        if perm_sign(p) < 0:
            term = -term if field is None else field.neg(term)
        total = total + term if field is None else field.add(total, term)
    return total


def minor_rank(rows, field=None):
    """Largest k with a nonzero k x k minor."""
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    for k in range(min(nr, nc), 0, -1):
        for rs in combinations(range(nr), k):
            for cs in combinations(range(nc), k):
                if det([[rows[r][c] for c in cs] for r in rs], field) != 0:
                    return k
    return 0


# --- complexes as sets --------------------------------------------------------

def subsets(n, sizes=None):
    out = []
    for k in range(n + 1) if sizes is None else sizes:
        out.extend(frozenset(s) for s in combinations(range(1, n + 1), k))
    return out


def nonfaces_of(n, minimal):
    """All supersets of the given minimal nonfaces."""
    minimal = [frozenset(m) for m in minimal]
    return {s for s in subsets(n) if any(m <= s for m in minimal)}


def minimal_sets(family):
    family = set(family)
    return {s for s in family if not any(t < s for t in family)}


def is_stable_nabla(n, nabla):
    # replace the max of a nonface by any smaller non-member: still a nonface
    for s in nabla:
        m = max(s)
        for i in range(1, m):
            if i not in s and (s - {m}) | {i} not in nabla:
                return False
    return True


def brute_stable_nablas(n):
    """Every up-closed, stable family of subsets of size >= 2 (tiny n only)."""
    cands = subsets(n, range(2, n + 1))
    out = []
    for bits in product((0, 1), repeat=len(cands)):
        fam = {c for c, b in zip(cands, bits) if b}
        if any(s | {v} not in fam for s in fam for v in range(1, n + 1) if v not in s):
            continue
        if is_stable_nabla(n, fam):
            out.append(fam)
    return out


def brute_shift(n, nabla, k, l):
    """Minimal nonfaces of Shift_kl, by the definition on sets."""
    image = set()
    for s in nabla:
        t = (s - {l}) | {k}
        if l in s and k not in s and t not in nabla:
            image.add(t)
        else:
            image.add(s)
    return minimal_sets(image)


# --- Hochster's formula -------------------------------------------------------

def _reduced_homology_dims(faces, field):
    """dim H~_d for d >= -1 of a complex given as a set of frozensets (with the empty face)."""
    by_dim = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(tuple(sorted(f)))
    for v in by_dim.values():
        v.sort()
    top = max(by_dim)

    def boundary_rank(d):
        # C_d -> C_{d-1}
        if d not in by_dim or d - 1 not in by_dim:
            return 0
        idx = {f: i for i, f in enumerate(by_dim[d - 1])}
        rows = []
        for f in by_dim[d]:
            row = [0] * len(idx)
            for pos in range(len(f)):
                g = f[:pos] + f[pos + 1:]
                one = 1 if pos % 2 == 0 else -1
                row[idx[g]] = one if field is None else (1 if one == 1 else field.neg(1))
            rows.append(row)
        return gauss_rank(rows, field)

    ranks = {d: boundary_rank(d) for d in range(0, top + 2)}
    return {d: len(by_dim.get(d, [])) - ranks.get(d, 0) - ranks.get(d + 1, 0) for d in range(-1, top + 1)}


def hochster_betti(n, minimal_nonfaces, field=None):
    """beta_{i,j}(I) = sum over |W| = j of dim H~_{j-i-2}(Delta_W)."""
    nabla = nonfaces_of(n, minimal_nonfaces)
    faces = {s for s in subsets(n) if s not in nabla}
    out = {}
    for j in range(1, n + 1):
        for W in combinations(range(1, n + 1), j):
            W = frozenset(W)
            sub = {f for f in faces if f <= W}
            for d, h in _reduced_homology_dims(sub, field).items():
                i = j - d - 2
                if h and i >= 0:
                    out[(i, j)] = out.get((i, j), 0) + h
    return out


# --- monomials ----------------------------------------------------------------

def monomials_upto(n, d):
    return [e for e in product(range(d + 1), repeat=n) if 0 < sum(e) <= d]


def in_ideal(e, gens):
    return any(all(a <= b for a, b in zip(g, e)) for g in gens)
