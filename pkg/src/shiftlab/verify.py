"""Cross-checks of shifting against Betti numbers.

:func:`verify_complex` runs every shifting route on one complex, computes
Betti tables both by formula and by Koszul homology, and records each
check as data. Computation errors become failed checks, never exceptions.
"""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .betti import BettiTable, betti_ahh, betti_koszul
from .complexes import Complex, enumerate_stable_complexes, face, face_max, is_stable_complex, parse_complex
from .complexes import random_stable_complex
from .errors import NOutOfRange
from .exactlinalg import QQ, FieldSpec, make_field
from .gin import DEFAULT_TRIALS, compute_gin
from .ideals import classify, complex_of, sigma_ideal, stanley_reisner
from .shifting import ShiftStep, canonical_pairs, combinatorial_shift, shift_images, shift_kl, sigma_stars

# the conjunction reported as all_shifts_agree
SHIFT_BETTI_CHECKS = ("symmetric_shift_betti", "exterior_shift_betti", "combinatorial_shift_betti")
CHECKS = (
    "input_routes_agree",
    *SHIFT_BETTI_CHECKS,
    "shift_preserves_stability",
    "shift_generators",
    "output_shapes",
    "all_shifts_agree",
)


# --- one shift step -----------------------------------------------------------

def shift_step_checks(c: Complex, step: ShiftStep, table: BettiTable | None = None) -> dict[str, bool]:
    """Exchange-map properties and generator prediction for one pair on a stable c.

    ``table`` is betti_ahh of c, recomputed when omitted.
    """
    flags = c.nonface_flags
    pairs = shift_images(c, step)
    images = [t for _, t in pairs]
    out = {
        # a moved nonface lands outside nabla
        "moves_leave_nabla": all(s == t or not flags[t] for s, t in pairs),
        "injective_on_nabla": len(set(images)) == len(images),
        "preserves_max": all(face_max(s) == face_max(t) for s, t in pairs),
    }
    gens = c.minimal_nonfaces
    kb, lb = 1 << (step.k - 1), 1 << (step.l - 1)
    moved = [(g ^ lb | kb) if g & lb and not g & kb and not flags[g ^ lb | kb] else g for g in gens]
    ok = True
    for i in range(len(gens)):
        for j in range(len(gens)):
            if i == j:
                continue
            if gens[i] == moved[j]:
                ok = False
            if moved[i] & moved[j] == moved[i] and not (moved[i] != gens[i] and moved[j] == gens[j]):
                ok = False
    out["generator_exchange"] = ok
    shifted = shift_kl(c, step)
    out["output_stable"] = is_stable_complex(shifted, "nonface")
    stars = sigma_stars(c, step)
    out["generators_predicted"] = set(stars) == set(shifted.minimal_nonfaces)
    out["max_multiset"] = sorted(map(face_max, stars)) == sorted(map(face_max, gens))
    if table is None:
        table = betti_ahh(stanley_reisner(c))
    out["betti_unchanged"] = out["output_stable"] and betti_ahh(stanley_reisner(shifted)) == table
    return out


# --- reports -------------------------------------------------------------------

@dataclass
class VerificationReport:
    identifier: str
    n: int
    stable: bool
    fields: tuple[str, ...]
    seed: int
    tables: dict[str, BettiTable] = field(default_factory=dict)
    shifted: dict[str, str] = field(default_factory=dict)
    gin_seeds: dict[str, list[str]] = field(default_factory=dict)
    checks: dict[str, bool | None] = field(default_factory=dict)
    errors: dict[str, str] = field(default_factory=dict)
    failure: dict | None = None

    @property
    def passed(self) -> bool:
        return self.failure is None and not self.errors and all(v is not False for v in self.checks.values())

    def to_document(self) -> dict:
        return {
            "complex": self.identifier,
            "n": self.n,
            "stable": self.stable,
            "fields": list(self.fields),
            "seed": self.seed,
            "passed": self.passed,
            "checks": dict(self.checks),
            "tables": {k: t.to_document() for k, t in sorted(self.tables.items())},
            "shifted": dict(sorted(self.shifted.items())),
            "gin_seeds": dict(sorted(self.gin_seeds.items())),
            "errors": dict(self.errors),
            "failure": self.failure,
        }

    @classmethod
    def from_document(cls, doc: dict) -> "VerificationReport":
        return cls(
            identifier=doc["complex"],
            n=doc["n"],
            stable=doc["stable"],
            fields=tuple(doc["fields"]),
            seed=doc["seed"],
            tables={k: BettiTable.from_document(v) for k, v in doc["tables"].items()},
            shifted=dict(doc["shifted"]),
            gin_seeds={k: list(v) for k, v in doc["gin_seeds"].items()},
            checks=dict(doc["checks"]),
            errors=dict(doc["errors"]),
            failure=doc["failure"],
        )


def _describe(e: Exception) -> str:
    return f"{type(e).__name__}: {e}"


def verify_complex(
    c: Complex,
    fields=(QQ,),
    seed: int = 0,
    random_orders: int = 5,
    trials: int = DEFAULT_TRIALS,
) -> VerificationReport:
    fields = [make_field(f) if isinstance(f, str) else f for f in fields]
    names = [f.descriptor for f in fields]
    stable = is_stable_complex(c, "nonface")
    rep = VerificationReport(c.identifier, c.n, stable, tuple(names), seed)
    I = stanley_reisner(c)
    mismatches: dict[str, str] = {}

    def attempt(label, fn):
        try:
            return fn()
        except Exception as e:  # recorded, never raised
            rep.errors[label] = _describe(e)
            return None

    for f in fields:
        t = attempt(f"input:koszul:{f.descriptor}", lambda: betti_koszul(I, f))
        if t is not None:
            rep.tables[f"input:koszul:{f.descriptor}"] = t
    if not stable:
        rep.checks = {name: None for name in CHECKS}
        return rep

    base = attempt("input:ahh", lambda: betti_ahh(I))
    if base is not None:
        rep.tables["input:ahh"] = base

    def record(route, c2, koszul_fields):
        """Tables of a shifted complex; False when anything disagrees with base."""
        rep.shifted[route] = c2.identifier
        J = stanley_reisner(c2)
        ok = True
        t = attempt(f"{route}:ahh", lambda: betti_ahh(J))
        if t is not None:
            rep.tables[f"{route}:ahh"] = t
        ok = ok and t is not None and t == base
        for f in koszul_fields:
            label = f"{route}:koszul" if len(koszul_fields) == 1 else f"{route}:koszul:{f.descriptor}"
            k = attempt(label, lambda: betti_koszul(J, f))
            if k is not None:
                rep.tables[label] = k
            ok = ok and k is not None and k == base
        if not ok:
            mismatches.setdefault(route, "Betti table differs from the input's")
        return ok

    def shape_ok(c2, strong):
        r = classify(stanley_reisner(c2))
        return r.squarefree_strongly_stable if strong else r.squarefree_stable

    shapes = True
    sym_ok = ext_ok = True
    for f in fields:
        d = f.descriptor
        route = f"symmetric:{d}"
        res = attempt(route, lambda: compute_gin(I, f, seed, trials))
        if res is None:
            sym_ok = False
        else:
            rep.gin_seeds[route] = list(res.seeds)
            c2 = attempt(route + ":sigma", lambda: complex_of(sigma_ideal(res.ideal, c.n)))
            if c2 is None:
                sym_ok = False
            else:
                sym_ok &= record(route, c2, [f])
                shapes &= shape_ok(c2, False)
        route = f"exterior:{d}"
        res = attempt(route, lambda: compute_gin(I, f, seed, trials, exterior=True))
        if res is None:
            ext_ok = False
        else:
            rep.gin_seeds[route] = list(res.seeds)
            c2 = complex_of(res.ideal)
            ext_ok &= record(route, c2, [f])
            shapes &= shape_ok(c2, True)

    comb_ok = True
    orders = ["canonical"] + [f"random:{seed}.{r}" for r in range(random_orders)]
    for order in orders:
        route = f"combinatorial:{order}"
        out = attempt(route, lambda: combinatorial_shift(c, order))
        if out is None:
            comb_ok = False
            continue
        c2, trace = out
        if trace.replay(c) != c2:
            comb_ok = False
            mismatches.setdefault(route, "trace replay differs")
        comb_ok &= record(route, c2, fields)
        shapes &= shape_ok(c2, True)

    stab_ok = gen_ok = True
    for step in canonical_pairs(c.n):
        res = attempt(f"step:{step.k},{step.l}", lambda: shift_step_checks(c, step, base))
        if res is None:
            stab_ok = gen_ok = False
            continue
        if not res["output_stable"]:
            stab_ok = False
            mismatches.setdefault(f"step:{step.k},{step.l}", "shifted complex is not stable")
        rest = [k for k, v in res.items() if k != "output_stable" and not v]
        if rest:
            gen_ok = False
            mismatches.setdefault(f"step:{step.k},{step.l}", "failed " + ", ".join(rest))

    routes_ok = base is not None and all(
        rep.tables.get(f"input:koszul:{d}") == base for d in names
    )
    rep.checks = {
        "input_routes_agree": routes_ok,
        "symmetric_shift_betti": sym_ok,
        "exterior_shift_betti": ext_ok,
        "combinatorial_shift_betti": comb_ok,
        "shift_preserves_stability": stab_ok,
        "shift_generators": gen_ok,
        "output_shapes": shapes,
    }
    rep.checks["all_shifts_agree"] = all(rep.checks[k] for k in SHIFT_BETTI_CHECKS)
    for name in CHECKS:
        if rep.checks[name] is False:
            detail = next(iter(rep.errors.items()), None) or next(iter(mismatches.items()), None)
            rep.failure = {"check": name, "where": detail[0] if detail else None, "detail": detail[1] if detail else None}
            break
    if rep.failure is None and rep.errors:
        where, detail = next(iter(rep.errors.items()))
        rep.failure = {"check": None, "where": where, "detail": detail}
    return rep


# --- sweeps ----------------------------------------------------------------------

@dataclass
class SweepSummary:
    n: int
    mode: str
    reports: dict[str, VerificationReport]

    @property
    def total(self) -> int:
        return len(self.reports)

    @property
    def passed(self) -> int:
        return sum(r.passed for r in self.reports.values())

    @property
    def failures(self) -> list[VerificationReport]:
        return [r for _, r in sorted(self.reports.items()) if not r.passed]

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def to_document(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "total": self.total,
            "passed": self.passed,
            "failures": [r.to_document() for r in self.failures],
        }

    def render(self) -> str:
        lines = [f"{self.passed}/{self.total} pass"]
        for r in self.failures:
            f = r.failure or {}
            lines.append(f"FAIL {r.identifier}: {f.get('check')} at {f.get('where')}: {f.get('detail')}")
        return "\n".join(lines)


def _verify_document(args):
    doc, fields, seed, random_orders, trials = args
    return verify_complex(parse_complex(doc), fields, seed, random_orders, trials).to_document()


def sweep_complexes(n: int, mode: str = "exhaustive", count: int = 0, seed: int = 0) -> list[Complex]:
    if not isinstance(n, int) or not 1 <= n <= 6:
        raise NOutOfRange(f"sweeps need 1 <= n <= 6, got {n!r}")
    if mode == "exhaustive":
        return list(enumerate_stable_complexes(n))
    if mode != "random":
        raise ValueError(f"unknown sweep mode {mode!r}")
    seen = {}
    for t in range(count):
        c = random_stable_complex(n, f"{seed}:{t}")
        seen.setdefault(c.identifier, c)
    return list(seen.values())


def sweep_verify(
    n: int,
    mode: str = "exhaustive",
    count: int = 0,
    fields=(QQ,),
    seed: int = 0,
    jobs: int = 1,
    random_orders: int = 5,
    trials: int = DEFAULT_TRIALS,
) -> SweepSummary:
    """verify_complex over all stable complexes on [n], or over a random sample."""
    complexes = sweep_complexes(n, mode, count, seed)
    descs = tuple(f if isinstance(f, str) else f.descriptor for f in fields)
    reports = {}
    if jobs > 1 and len(complexes) > 1:
        work = [(c.to_document(), descs, seed, random_orders, trials) for c in complexes]
        with ProcessPoolExecutor(jobs) as pool:
            for doc in pool.map(_verify_document, work):
                reports[doc["complex"]] = VerificationReport.from_document(doc)
    else:
        for c in complexes:
            reports[c.identifier] = verify_complex(c, descs, seed, random_orders, trials)
    return SweepSummary(n, mode, reports)


# --- exploration (no acceptance weight) --------------------------------------------

def random_complex(n: int, seed) -> Complex:
    """Deterministic pseudo-random complex on [n], not necessarily stable."""
    rng = random.Random(f"complex:{n}:{seed}")
    facets = [1 << v for v in range(n)]
    for _ in range(rng.randint(1, 2 * n)):
        facets.append(face(rng.sample(range(1, n + 1), rng.randint(1, max(1, n - 1)))))
    maximal = [m for m in set(facets) if not any(m != o and m & o == m for o in facets)]
    return Complex.from_facets(n, maximal)


def _leq(a: BettiTable, b: BettiTable) -> bool:
    bd = b.as_dict()
    return all(v <= bd.get(k, 0) for k, v in a.as_dict().items())


def explore_inequality(n: int, count: int, seed: int = 0, field: FieldSpec = QQ, trials: int = DEFAULT_TRIALS) -> list[dict]:
    """Test beta(symmetric) <= beta(exterior) <= beta(combinatorial) on random complexes."""
    out = []
    for t in range(count):
        c = random_complex(n, f"{seed}:{t}")
        rec = {"complex": c.identifier}
        try:
            I = stanley_reisner(c)
            g = compute_gin(I, field, seed, trials, top_degree=n).ideal
            cs = complex_of(sigma_ideal(g, n))
            ce = complex_of(compute_gin(I, field, seed, trials, exterior=True).ideal)
            cc, _ = combinatorial_shift(c, require_stable=False)
            ts, te, tc = (betti_koszul(stanley_reisner(x), field) for x in (cs, ce, cc))
            rec.update(
                symmetric=ts.to_document(),
                exterior=te.to_document(),
                combinatorial=tc.to_document(),
                holds=_leq(ts, te) and _leq(te, tc),
            )
        except Exception as e:
            rec.update(holds=None, error=_describe(e))
        out.append(rec)
    return out
