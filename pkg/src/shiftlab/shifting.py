"""Combinatorial and algebraic shifting of simplicial complexes.

S_kl replaces l by k in a nonface when k is absent and the result is a
face; Shift_kl is the complex whose nonfaces are generated by all images.
Iterating over pairs k < l ends at a shifted complex, i.e. one whose
Stanley-Reisner ideal is squarefree strongly stable.

Termination: an effective S_kl move turns a nonface into a smaller
bitmask, so the sorted list of nonfaces strictly decreases in a
well-order. The sweep budget is only a guard against bugs.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import total_ordering

from .complexes import Complex, face_max, face_vertices, is_stable_complex, minimal_elements
from .errors import NoSplit, NonTermination, NotANonface, NotStable, VertexExcluded, VertexOutOfRange
from .exactlinalg import QQ, FieldSpec
from .gin import DEFAULT_TRIALS, gin_exterior, gin_symmetric
from .ideals import classify, complex_of, sigma_ideal, stanley_reisner


@total_ordering
@dataclass(frozen=True)
class ShiftStep:
    k: int
    l: int

    def __post_init__(self):
        if not (isinstance(self.k, int) and isinstance(self.l, int)) or not 1 <= self.k < self.l:
            raise ValueError(f"need 1 <= k < l, got ({self.k}, {self.l})")

    def __lt__(self, other):
        # canonical order: l ascending, then k
        return (self.l, self.k) < (other.l, other.k)

    def check(self, n: int):
        if self.l > n:
            raise VertexOutOfRange(f"step ({self.k}, {self.l}) outside [1, {n}]")

    def to_list(self) -> list[int]:
        return [self.k, self.l]


def canonical_pairs(n: int) -> list[ShiftStep]:
    return [ShiftStep(k, l) for l in range(2, n + 1) for k in range(1, l)]


@dataclass(frozen=True)
class ShiftTrace:
    """Effective steps, with minimal-nonface counts before and after each."""

    steps: tuple[ShiftStep, ...] = ()
    nonface_counts: tuple[int, ...] = ()

    def to_document(self) -> dict:
        return {"steps": [s.to_list() for s in self.steps], "nonface_counts": list(self.nonface_counts)}

    @classmethod
    def from_document(cls, doc: dict) -> "ShiftTrace":
        return cls(tuple(ShiftStep(*s) for s in doc["steps"]), tuple(doc["nonface_counts"]))

    def replay(self, c: Complex) -> Complex:
        for step in self.steps:
            c = shift_kl(c, step)
        return c


def _move(s: int, flags, kb: int, lb: int) -> int:
    if s & lb and not s & kb:
        t = s ^ lb | kb
        if not flags[t]:
            return t
    return s


def s_kl(sigma: int, c: Complex, step: ShiftStep) -> int:
    step.check(c.n)
    flags = c.nonface_flags
    if sigma >> c.n or not flags[sigma]:
        raise NotANonface(f"{list(face_vertices(sigma))} is a face of {c.identifier}")
    return _move(sigma, flags, 1 << (step.k - 1), 1 << (step.l - 1))


def shift_images(c: Complex, step: ShiftStep) -> list[tuple[int, int]]:
    """(sigma, S_kl(sigma)) for every nonface sigma, ascending by sigma."""
    step.check(c.n)
    flags = c.nonface_flags
    kb, lb = 1 << (step.k - 1), 1 << (step.l - 1)
    return [(s, _move(s, flags, kb, lb)) for s in range(len(flags)) if flags[s]]


def shift_kl(c: Complex, step: ShiftStep) -> Complex:
    """Shift_kl(c): nonfaces generated by S_kl of every nonface."""
    gens = minimal_elements(t for _, t in shift_images(c, step))
    for g in gens:
        if g.bit_count() < 2:
            raise VertexExcluded(f"vertex {face_max(g)} became a nonface")
    return Complex.from_nonfaces(c.n, gens)


def unique_split(sigma: int, c: Complex) -> tuple[int, int]:
    """(j, tail) with sigma = gens[j] + tail, disjoint, max(gens[j]) < min(tail)."""
    flags = c.nonface_flags
    if sigma >> c.n or not flags[sigma]:
        raise NotANonface(f"{list(face_vertices(sigma))} is a face of {c.identifier}")
    found = []
    for j, g in enumerate(c.minimal_nonfaces):
        if g & sigma != g:
            continue
        tail = sigma ^ g
        if not tail or (tail & -tail) > (1 << (g.bit_length() - 1)):
            found.append((j, tail))
    if len(found) != 1:
        what = "no" if not found else "more than one"
        raise NoSplit(f"{what} split of {list(face_vertices(sigma))} in {c.identifier}")
    return found[0]


def _require_stable(c: Complex):
    if not is_stable_complex(c, "nonface"):
        raise NotStable(f"{c.identifier} is not stable")


def _sigma_star(c: Complex, kb: int, lb: int, i: int) -> int:
    gens = c.minimal_nonfaces
    flags = c.nonface_flags
    si = gens[i]
    results = set()
    for s, gs in enumerate(gens):
        if s == i:
            continue
        moved = _move(gs, flags, kb, lb)
        if moved == gs or moved & si != moved:
            continue
        tau = si ^ moved
        # gs < tau: every element of gs below every element of tau
        if tau and (tau & -tau) > (1 << (gs.bit_length() - 1)):
            results.add(gs | tau)
    if len(results) > 1:
        raise NoSplit(f"ambiguous decomposition of {list(face_vertices(si))}")
    if results:
        return results.pop()
    return _move(si, flags, kb, lb)


def sigma_star(i: int, c: Complex, step: ShiftStep) -> int:
    """Predicted generator of Shift_kl(c) coming from the i-th generator of c."""
    _require_stable(c)
    step.check(c.n)
    if not 0 <= i < len(c.minimal_nonfaces):
        raise IndexError(f"generator index {i} out of range")
    return _sigma_star(c, 1 << (step.k - 1), 1 << (step.l - 1), i)


def sigma_stars(c: Complex, step: ShiftStep) -> list[int]:
    """sigma_star for every generator, in generator order."""
    _require_stable(c)
    step.check(c.n)
    kb, lb = 1 << (step.k - 1), 1 << (step.l - 1)
    return [_sigma_star(c, kb, lb, i) for i in range(len(c.minimal_nonfaces))]


def is_shifted(c: Complex) -> bool:
    return classify(stanley_reisner(c)).squarefree_strongly_stable


def _parse_order(order, n: int):
    """(sweep factory, whether a stalled sweep should fall back to canonical)."""
    if order is None or order == "canonical":
        pairs = canonical_pairs(n)
        return lambda: pairs, False
    if isinstance(order, str) and order.startswith("random:"):
        rng = random.Random(f"shift-order:{n}:{order[7:]}")
        base = canonical_pairs(n)

        def shuffled():
            out = list(base)
            rng.shuffle(out)
            return out

        return shuffled, False
    if isinstance(order, str):
        raise ValueError(f"unknown shift order {order!r}")
    pairs = [p if isinstance(p, ShiftStep) else ShiftStep(*p) for p in order]
    for p in pairs:
        p.check(n)
    return lambda: pairs, True


def combinatorial_shift(c: Complex, order="canonical", require_stable: bool = True) -> tuple[Complex, ShiftTrace]:
    """Iterate Shift_kl until a sweep changes nothing and the result is shifted.

    ``order`` is "canonical", "random:<seed>", or an explicit list of (k, l)
    pairs; an explicit list that stalls before reaching a shifted complex is
    continued with canonical sweeps.
    """
    if require_stable:
        _require_stable(c)
    n = c.n
    next_sweep, explicit = _parse_order(order, n)
    steps: list[ShiftStep] = []
    counts = [len(c.minimal_nonfaces)]
    cur = c
    for _ in range(max(1, n ** 3)):
        changed = False
        for step in next_sweep():
            new = shift_kl(cur, step)
            if new.minimal_nonfaces != cur.minimal_nonfaces:
                steps.append(step)
                counts.append(len(new.minimal_nonfaces))
                cur = new
                changed = True
        if changed:
            continue
        if is_shifted(cur):
            return cur, ShiftTrace(tuple(steps), tuple(counts))
        if explicit:
            next_sweep, explicit = _parse_order("canonical", n)
            continue
        raise NonTermination(f"fixpoint of {c.identifier} under all pairs is not shifted")
    raise NonTermination(f"sweep budget {n ** 3} exhausted on {c.identifier}")


def symmetric_shift(c: Complex, field: FieldSpec = QQ, seed: int = 0, trials: int = DEFAULT_TRIALS) -> Complex:
    """Complex of sigma(Gin(I_c))."""
    _require_stable(c)
    g = gin_symmetric(stanley_reisner(c), field, seed, trials)
    return complex_of(sigma_ideal(g, c.n))


def exterior_shift(c: Complex, field: FieldSpec = QQ, seed: int = 0, trials: int = DEFAULT_TRIALS) -> Complex:
    """Complex of the exterior Gin(J_c)."""
    return complex_of(gin_exterior(stanley_reisner(c), field, seed, trials))
