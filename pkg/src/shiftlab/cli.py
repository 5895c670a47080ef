"""Command-line front end: ``shiftlab <command> ...``.

Exit status is 0 on success, 1 when a verification fails, 2 on usage or
input errors. Library errors are reported by class name.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .betti import betti_ahh, betti_ek, betti_koszul
from .complexes import Complex, enumerate_stable_complexes, face_vertices, parse_complex
from .errors import DocumentError, ShiftlabError
from .exactlinalg import make_field
from .gin import DEFAULT_TRIALS, compute_gin
from .ideals import MonomialIdeal, classify, complex_of, parse_ideal, sigma_ideal, stanley_reisner
from .shifting import combinatorial_shift, exterior_shift
from .verify import explore_inequality, sweep_verify

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


@dataclass
class CliConfig:
    command: str
    source: str | None = None
    fields: tuple[str, ...] = ("q",)
    seed: int = 0
    trials: int = DEFAULT_TRIALS
    format: str = "text"
    degree_cap: int | None = None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _default_seed() -> int:
    raw = os.environ.get("SHIFTLAB_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise DocumentError(f"SHIFTLAB_SEED={raw!r} is not an integer")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")

    gin_opts = argparse.ArgumentParser(add_help=False)
    gin_opts.add_argument("--field", default="q")
    gin_opts.add_argument("--seed", type=int, default=None)
    gin_opts.add_argument("--trials", type=int, default=DEFAULT_TRIALS)

    p = _Parser(prog="shiftlab", description="Betti numbers and shifting of simplicial complexes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("betti", parents=[common], help="graded Betti table of a complex or ideal")
    b.add_argument("source")
    b.add_argument("--method", choices=["ek", "ahh", "koszul"], default="koszul")
    b.add_argument("--field", default="q")
    b.add_argument("--degree-cap", type=int, default=None)

    s = sub.add_parser("shift", parents=[common, gin_opts], help="shift a complex")
    s.add_argument("source")
    s.add_argument("--mode", choices=["c", "s", "e"], default="c")
    s.add_argument("--order", default="canonical", help="canonical, random:<seed>, or a JSON list of [k, l] pairs")

    c = sub.add_parser("classify", parents=[common], help="stability of a complex or ideal")
    c.add_argument("source")
    c.add_argument("--primes", default="", help="comma-separated primes for p-Borel tests")

    g = sub.add_parser("gin", parents=[common, gin_opts], help="revlex generic initial ideal")
    g.add_argument("source")
    g.add_argument("--exterior", action="store_true")

    e = sub.add_parser("enumerate", parents=[common], help="list the stable complexes on [n]")
    e.add_argument("--n", type=int, required=True)

    v = sub.add_parser("verify", parents=[common], help="check all shifting routes on a corpus")
    v.add_argument("--n", type=int, required=True)
    mode = v.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--random", type=int, metavar="COUNT")
    mode.add_argument("--explore-inequality", type=int, metavar="COUNT",
                      help="test the conjectured Betti inequalities on random complexes")
    v.add_argument("--fields", default="q")
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    v.add_argument("--random-orders", type=int, default=5)
    v.add_argument("--jobs", type=int, default=1)
    return p


def _load(source: str):
    """A JSON document from a path, '-' for stdin, or inline text."""
    if source.lstrip().startswith("{"):
        text = source
    elif source == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(source) as fh:
                text = fh.read()
        except OSError as exc:
            raise DocumentError(f"cannot read {source}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON in {source}: {exc}") from exc


def _load_ideal(source: str) -> MonomialIdeal:
    doc = _load(source)
    if isinstance(doc, dict) and ("facets" in doc or "minimal_nonfaces" in doc):
        return stanley_reisner(parse_complex(doc))
    return parse_ideal(doc)


def _load_complex(source: str) -> Complex:
    return parse_complex(_load(source))


def _faces_text(masks) -> str:
    return " ".join("{" + ",".join(map(str, face_vertices(m))) + "}" for m in masks) or "(none)"


def _complex_text(c: Complex) -> str:
    return (
        f"n: {c.n}\n"
        f"minimal nonfaces: {_faces_text(c.minimal_nonfaces)}\n"
        f"facets: {_faces_text(c.facets)}"
    )


def _emit(cfg: CliConfig, doc, text: str):
    if cfg.format == "json":
        print(json.dumps(doc, sort_keys=True))
    else:
        print(text)


def _cmd_betti(args, cfg):
    I = _load_ideal(args.source)
    if args.method == "ek":
        t = betti_ek(I)
    elif args.method == "ahh":
        t = betti_ahh(I)
    else:
        t = betti_koszul(I, make_field(args.field), degree_cap=args.degree_cap)
    _emit(cfg, t.to_document(), t.render())
    return EXIT_OK


def _cmd_shift(args, cfg):
    c = _load_complex(args.source)
    field = make_field(args.field)
    doc = {"mode": args.mode}
    if args.mode == "c":
        order = args.order
        if order.lstrip().startswith("["):
            try:
                order = [tuple(p) for p in json.loads(order)]
            except (ValueError, TypeError) as exc:
                raise ValueError(f"bad shift order {args.order!r}") from exc
        out, trace = combinatorial_shift(c, order)
        doc["trace"] = trace.to_document()
        extra = "trace: " + (" ".join(f"({s.k},{s.l})" for s in trace.steps) or "(none)")
    elif args.mode == "s":
        res = compute_gin(stanley_reisner(c), field, cfg.seed, cfg.trials)
        out = complex_of(sigma_ideal(res.ideal, c.n))
        doc.update(field=field.descriptor, seeds=list(res.seeds))
        extra = f"field: {field.descriptor}"
    else:
        out = exterior_shift(c, field, cfg.seed, cfg.trials)
        doc["field"] = field.descriptor
        extra = f"field: {field.descriptor}"
    doc["complex"] = out.to_document()
    _emit(cfg, doc, _complex_text(out) + "\n" + extra)
    return EXIT_OK


def _cmd_classify(args, cfg):
    primes = [int(p) for p in args.primes.split(",") if p.strip()]
    rep = classify(_load_ideal(args.source), primes)
    d = rep.to_dict()
    lines = [f"{k}: {str(v).lower()}" for k, v in d.items() if k != "p_borel"]
    lines += [f"{p}-borel: {str(v).lower()}" for p, v in d["p_borel"].items()]
    _emit(cfg, d, "\n".join(lines))
    return EXIT_OK


def _cmd_gin(args, cfg):
    I = _load_ideal(args.source)
    res = compute_gin(I, make_field(args.field), cfg.seed, cfg.trials, exterior=args.exterior)
    _emit(cfg, res.to_document(), str(res.ideal))
    return EXIT_OK


def _cmd_enumerate(args, cfg):
    cs = list(enumerate_stable_complexes(args.n))
    _emit(cfg, [c.to_document() for c in cs], "\n".join(c.identifier for c in cs))
    return EXIT_OK


def _cmd_verify(args, cfg):
    if args.explore_inequality is not None:
        recs = explore_inequality(args.n, args.explore_inequality, cfg.seed, make_field(cfg.fields[0]), cfg.trials)
        lines = [f"{r['complex']}: {r['holds'] if r['holds'] is not None else r['error']}" for r in recs]
        _emit(cfg, recs, "\n".join(lines))
        return EXIT_OK
    for f in cfg.fields:
        make_field(f)
    if args.random is not None:
        summary = sweep_verify(args.n, "random", args.random, cfg.fields, cfg.seed, args.jobs, args.random_orders, cfg.trials)
    else:
        summary = sweep_verify(args.n, "exhaustive", 0, cfg.fields, cfg.seed, args.jobs, args.random_orders, cfg.trials)
    _emit(cfg, summary.to_document(), summary.render())
    return EXIT_OK if summary.ok else EXIT_FAILED


COMMANDS = {
    "betti": _cmd_betti,
    "shift": _cmd_shift,
    "classify": _cmd_classify,
    "gin": _cmd_gin,
    "enumerate": _cmd_enumerate,
    "verify": _cmd_verify,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        seed = args.seed if getattr(args, "seed", None) is not None else _default_seed()
        fields = tuple(f.strip() for f in getattr(args, "fields", getattr(args, "field", "q")).split(","))
        cfg = CliConfig(
            command=args.command,
            source=getattr(args, "source", None),
            fields=fields,
            seed=seed,
            trials=getattr(args, "trials", DEFAULT_TRIALS),
            format=args.format,
            degree_cap=getattr(args, "degree_cap", None),
        )
        return COMMANDS[args.command](args, cfg)
    except (ShiftlabError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
