"""Command line entry point.

Exit status reports tool health only: 0 when every requested analysis ran
(whatever the verdicts), 1 on input or semantic errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from . import _kernels
from . import catalogue as catmod
from . import formats, lie, psetop, reports
from .algebra import FiniteGroup, FiniteMonoid
from .errors import AlgebraError, FormatError
from .schreier import SplitExtension
from .templates import DEFAULT_EXPONENT, DEFAULT_LENGTH, parse_template

SUBCOMMANDS = ("validate", "schreier", "special", "engel", "templates", "lie", "psetop", "sweep")
DEFAULT_SEED = 0


@dataclass
class RunConfig:
    subcommand: str
    inputs: list[str] = field(default_factory=list)
    bounds: tuple[int, int] = (DEFAULT_LENGTH, DEFAULT_EXPONENT)
    catalogue: str = "builtin"
    format: str = "text"
    seed: int = DEFAULT_SEED
    workers: int = 1

    def as_dict(self) -> dict:
        return {
            "subcommand": self.subcommand,
            "inputs": list(self.inputs),
            "bounds": list(self.bounds),
            "catalogue": self.catalogue,
            "format": self.format,
            "seed": self.seed,
        }


class UsageError(Exception):
    pass


def _bounds(text: str) -> tuple[int, int]:
    try:
        a, b = (int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected L,E with two integers") from None
    if a < 1 or b < 1:
        raise argparse.ArgumentTypeError("bounds must be positive")
    return a, b


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for sampled checks (recorded in reports)")
    common.add_argument("--bounds", type=_bounds, default=(DEFAULT_LENGTH, DEFAULT_EXPONENT), metavar="L,E",
                        help="template enumeration bounds: blocks <= L, |exponent| <= E")
    common.add_argument("--catalogue", default="builtin", help="'builtin' or a directory of algebra files")
    common.add_argument("--timing", action="store_true", help="add wall-clock timings (breaks byte-identical output)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="schreierlab", description="Schreier extensions, special objects and template sweeps.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="subcommand", required=True)

    s = sub.add_parser("validate", parents=[common], help="parse and validate algebra files")
    s.add_argument("inputs", nargs="*", help="files or catalogue names; none = whole catalogue")

    s = sub.add_parser("schreier", parents=[common], help="Schreier analysis of a split extension")
    s.add_argument("inputs", nargs="+")

    s = sub.add_parser("special", parents=[common], help="special-object checks for monoids or pointed sets")
    s.add_argument("inputs", nargs="+")

    s = sub.add_parser("engel", parents=[common], help="2-Engel conditions of a group")
    s.add_argument("inputs", nargs="+")
    s.add_argument("--pair", help="also show [x,y]y and y[x,y] for this pair, e.g. a,ab")

    s = sub.add_parser("templates", parents=[common], help="specialness of a group w.r.t. templates")
    s.add_argument("inputs", nargs="+")
    s.add_argument("--template", help="a single template such as 'x^-1 y x^2'; default is the bounded sweep")

    s = sub.add_parser("lie", parents=[common], help="2-Engel and loop checks for a Lie algebra")
    s.add_argument("inputs", nargs="+")
    s.add_argument("--k", action="append", help="coefficient k (repeatable; default -2,-1,0,1,2,1/2)")

    s = sub.add_parser("psetop", parents=[common], help="pointed-set analyses")
    s.add_argument("inputs", nargs="*")
    s.add_argument("--census", type=int, metavar="N", help="classify every split mono with |X| <= N")

    s = sub.add_parser("sweep", parents=[common], help="run every applicable analysis over a catalogue")
    s.add_argument("--workers", type=int, default=1)
    return p


# ---------------------------------------------------------------- inputs


def _catalogue(cfg: RunConfig) -> dict:
    if cfg.catalogue == "builtin":
        return dict(catmod.builtin_catalogue())
    path = Path(cfg.catalogue)
    if not path.is_dir():
        raise UsageError(f"catalogue directory not found: {path}")
    return formats.load_directory(path)


def resolve(name: str, cfg: RunConfig) -> tuple[str, object, str]:
    """(key, object, digest) for a file path or a catalogue name."""
    p = Path(name)
    if p.is_file():
        text = p.read_text()
        return p.stem, formats.parse_text(text, str(p)), formats.digest(text)
    cat = _catalogue(cfg)
    stem = p.stem if p.suffix in formats.SUFFIXES else name
    if stem in cat:
        obj = cat[stem]
        return stem, obj, formats.digest(formats.serialize(obj))
    raise UsageError(f"{name}: no such file or catalogue entry")


def _expect(key, obj, types, what):
    if not isinstance(obj, types):
        raise UsageError(f"{key}: expected {what}, got {type(obj).__name__}")
    return obj


def _element(g: FiniteMonoid, token: str) -> int:
    token = token.strip()
    try:
        return g.index(token)
    except (KeyError, ValueError):
        if token.isdigit():
            return g.index(int(token))
        raise UsageError(f"unknown element {token!r}") from None


# ---------------------------------------------------------------- dispatch


def _records_for(cfg: RunConfig, args) -> tuple[list[dict], list[dict]]:
    records, inputs = [], []

    def load(name):
        key, obj, dg = resolve(name, cfg)
        inputs.append({"key": key, "digest": dg})
        return key, obj

    sc = cfg.subcommand
    if sc == "validate":
        if cfg.inputs:
            for n in cfg.inputs:
                key, obj = load(n)
                records.append(reports.validate_record(key, obj))
        else:
            cat = _catalogue(cfg)
            catmod.self_test({k: v for k, v in cat.items() if isinstance(v, (FiniteMonoid, lie.LieAlgebra))})
            for key in sorted(cat):
                inputs.append({"key": key, "digest": formats.digest(formats.serialize(cat[key]))})
                records.append(reports.validate_record(key, cat[key]))
    elif sc == "schreier":
        for n in cfg.inputs:
            key, obj = load(n)
            records.append(reports.extension_record(key, _expect(key, obj, SplitExtension, "an extension")))
    elif sc == "special":
        for n in cfg.inputs:
            key, obj = load(n)
            if isinstance(obj, psetop.PointedSet):
                records.append(reports.pointed_record(key, obj))
            else:
                records.append(reports.special_record(key, _expect(key, obj, FiniteMonoid, "a monoid or pointed set")))
    elif sc == "engel":
        for n in cfg.inputs:
            key, obj = load(n)
            g = _expect(key, obj, FiniteGroup, "a group")
            pair = None
            if args.pair:
                parts = args.pair.split(",")
                if len(parts) != 2:
                    raise UsageError("--pair expects x,y")
                pair = (_element(g, parts[0]), _element(g, parts[1]))
            records.append(reports.engel_record(key, g, pair))
    elif sc == "templates":
        t = parse_template(args.template) if args.template else None
        for n in cfg.inputs:
            key, obj = load(n)
            g = _expect(key, obj, FiniteGroup, "a group")
            if t is not None:
                records.append(reports.template_record(key, g, t))
            else:
                records.append(reports.sweep_record(key, g, *cfg.bounds))
    elif sc == "lie":
        ks = [lie.rational(k) for k in args.k] if args.k else list(lie.K_VALUES)
        for n in cfg.inputs:
            key, obj = load(n)
            A = _expect(key, obj, lie.LieAlgebra, "a Lie algebra")
            records.append(reports.lie_record(key, A, ks, _lie_seed(cfg)))
    elif sc == "psetop":
        for n in cfg.inputs:
            key, obj = load(n)
            records.append(reports.pointed_record(key, _expect(key, obj, psetop.PointedSet, "a pointed set")))
        if args.census is not None or not cfg.inputs:
            records.append(reports.census_record(args.census or psetop.DEFAULT_MAX_SIZE))
    elif sc == "sweep":
        cat = _catalogue(cfg)
        for key in sorted(cat):
            inputs.append({"key": key, "digest": formats.digest(formats.serialize(cat[key]))})
        records.extend(sweep(cat, cfg))
    return records, inputs


def _lie_seed(cfg: RunConfig) -> int:
    return lie.DEFAULT_SEED if cfg.seed == DEFAULT_SEED else cfg.seed


def _sweep_job(job):
    key, obj, bounds, seed = job
    out = []
    if isinstance(obj, FiniteGroup):
        out.append(reports.engel_record(key, obj))
        out.append(reports.sweep_record(key, obj, *bounds))
    if isinstance(obj, FiniteMonoid):
        out.append(reports.special_record(key, obj))
    elif isinstance(obj, lie.LieAlgebra):
        out.append(reports.lie_record(key, obj, lie.K_VALUES, seed))
    elif isinstance(obj, psetop.PointedSet):
        out.append(reports.pointed_record(key, obj))
    elif isinstance(obj, SplitExtension):
        out.append(reports.extension_record(key, obj))
    return out


def sweep(cat: dict, cfg: RunConfig) -> list[dict]:
    """Every applicable analysis; records sorted by (key, analysis) before emission."""
    jobs = [(key, cat[key], cfg.bounds, _lie_seed(cfg)) for key in sorted(cat)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as ex:
            batches = list(ex.map(_sweep_job, jobs))
    else:
        batches = [_sweep_job(j) for j in jobs]
    records = [r for b in batches for r in b]
    return sorted(records, key=lambda r: (r["key"], r["analysis"]))


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(
        subcommand=args.subcommand,
        inputs=list(getattr(args, "inputs", []) or []),
        bounds=args.bounds,
        catalogue=args.catalogue,
        format=args.format,
        seed=args.seed,
        workers=getattr(args, "workers", 1),
    )
    started = time.perf_counter()
    try:
        records, inputs = _records_for(cfg, args)
    except FormatError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except (AlgebraError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    elapsed = time.perf_counter() - started
    records.sort(key=lambda r: (r["key"], r["analysis"]))

    if cfg.format == "structured":
        header = {
            "record": "header",
            "tool": "schreierlab",
            "version": __version__,
            "config": cfg.as_dict(),
            "inputs": inputs,
        }
        footer = {
            "record": "summary",
            "results": len(records),
            "negative_verdicts": sum(not ok for r in records for ok in r["verdicts"].values()),
            "incomplete": sum(not r["complete"] for r in records),
        }
        if args.timing:
            footer["timing_s"] = round(elapsed, 3)
            footer["backend"] = _kernels.BACKEND
        for rec in [header, *records, footer]:
            stdout.write(reports.dumps(rec) + "\n")
    else:
        for rec in records:
            for line in reports.render_text(rec, args.verbose):
                stdout.write(line + "\n")
        if args.timing:
            stdout.write(f"({elapsed:.3f} s, {_kernels.BACKEND} kernels)\n")
    return 0


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
