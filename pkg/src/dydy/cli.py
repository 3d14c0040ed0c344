"""Command line front end.

    dydy classify-parameter 1/4
    dydy classify-point 1 19/2
    dydy mandel-tree --depth 8 --format dot
    dydy verify thm-unbdd --n 3
    dydy pcf-find --n 4
    dydy newton-polygon g3
    dydy cycle-find --period 2 --seed 7%16

Exit status: 0 for a certified verdict, 2 for an honest Unknown, 1 for
usage and domain errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from dataclasses import dataclass

from . import __version__
from .atlas import VERIFIERS, build_tree, verify
from .dyadic import DEFAULT_PRECISION, Rational2
from .dynamics import (
    DEFAULT_MAX_ITERS,
    classify_parameter,
    classify_point_orbit,
    find_cycle_hensel,
    pcf_parameter,
)
from .errors import (
    CertificationError,
    DomainError,
    NoConvergence,
    StructuralError,
    VerificationFailure,
    WrongPeriod,
)
from .geometry import Disk, newton_polygon
from .poly import Poly, build_gn, family

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int = DEFAULT_PRECISION
    max_iters: int = DEFAULT_MAX_ITERS
    depth: int = 8
    output_format: str = "json"
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        if self.precision_bits < 16:
            raise UsageError("precision must be at least 16 bits")
        if self.depth < 1:
            raise UsageError("depth must be at least 1")
        if self.max_iters < 1:
            raise UsageError("max-iters must be positive")
        if self.output_format not in ("json", "dot", "text"):
            raise UsageError(f"unknown format {self.output_format!r}")


class _Parser(argparse.ArgumentParser):
    def __init__(self, *a, **kw):
        super().__init__(*a, **kw)
        # let "-1/2" and "-1,-3,6" through as values rather than options
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?(,\s*[-+]?\d+(/\d+)?)*$")

    def error(self, message):
        raise UsageError(message)


def parse_rational(text: str) -> Rational2:
    try:
        return Rational2(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed rational {text!r}; expected p/q") from exc


def parse_seed(text: str):
    """``"7%16"`` is the residue class 7 mod 16; anything else is a rational."""
    if "%" in text:
        a, m = text.split("%", 1)
        try:
            mod = int(m)
        except ValueError:
            raise UsageError(f"malformed modulus in seed {text!r}") from None
        if mod < 1 or mod & (mod - 1):
            raise UsageError(f"seed modulus must be a power of 2, got {mod}")
        return Disk(parse_rational(a), mod.bit_length() - 1)
    if ":" in text:
        try:
            return Disk.parse(text)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return parse_rational(text)


def parse_poly(text: str) -> Poly:
    """``g5`` is the critical-orbit polynomial g_5; otherwise a comma
    separated coefficient list, constant term first (``-1,-3,6``)."""
    t = text.strip()
    if t[:1] == "g" and t[1:].isdigit():
        return build_gn(int(t[1:]))
    return Poly(parse_rational(c.strip()) for c in t.split(","))


def _plain(obj):
    """JSON-safe copy: infinite valuations become ``null``."""
    if isinstance(obj, float) and math.isinf(obj):
        return None
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def _text(doc, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(doc, list):
        for v in doc:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{doc}")
    return "\n".join(lines)


def emit(doc, cfg: RunConfig, out) -> None:
    if cfg.output_format == "dot":
        raise UsageError("dot output is only available for trees")
    doc = _plain(doc)
    if cfg.output_format == "json":
        out.write(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        out.write(_text(doc) + "\n")


# --- commands ----------------------------------------------------------------


def cmd_classify_parameter(args, cfg, out):
    res = classify_parameter(parse_rational(args.t), max_iters=cfg.max_iters,
                             precision=cfg.precision_bits)
    emit(res, cfg, out)
    return EXIT_UNKNOWN if res["label"] == "Unknown" else EXIT_OK


def cmd_classify_point(args, cfg, out):
    t, z = parse_rational(args.t), parse_rational(args.z)
    res = classify_point_orbit(family(t), z, max_iters=cfg.max_iters, precision=cfg.precision_bits)
    emit({"t": str(t), "z": str(z), **res.to_json()}, cfg, out)
    return EXIT_UNKNOWN if res.tag == "Unknown" else EXIT_OK


def _cmd_tree(kind):
    def run(args, cfg, out):
        tree = build_tree(kind, cfg.depth, jobs=cfg.jobs)
        if cfg.output_format == "dot":
            out.write(tree.to_dot())
        else:
            emit(tree.to_json(), cfg, out)
        return EXIT_OK

    return run


def cmd_verify(args, cfg, out):
    kw = {"precision": cfg.precision_bits}
    if args.family:
        kw["family"] = args.family
    trace = verify(args.theorem, args.n, **kw)
    emit(trace.to_json(), cfg, out)
    return EXIT_OK if trace.verdict else EXIT_UNKNOWN


def cmd_pcf_find(args, cfg, out):
    p = pcf_parameter(args.n, cfg.precision_bits)
    doc = p.to_json()
    doc["cycle_multiplier"] = str(p.cycle_multiplier)
    emit(doc, cfg, out)
    return EXIT_OK


def cmd_newton_polygon(args, cfg, out):
    p = parse_poly(args.poly)
    np_ = newton_polygon(p)
    doc = {"poly": str(p), "degree": p.degree, **np_.to_json(),
           "root_valuations": [{"valuation": str(v), "count": c} for v, c in np_.root_valuations()]}
    emit(doc, cfg, out)
    return EXIT_OK


def cmd_cycle_find(args, cfg, out):
    t = parse_rational(args.t)
    rec = find_cycle_hensel(family(t), args.period, parse_seed(args.seed), cfg.precision_bits)
    doc = {"t": str(t), "seed": args.seed, **rec.to_json()}
    first = rec.points[0]
    rep = first.to_rational() if hasattr(first, "to_rational") else first
    doc["residue_mod_32"] = str(Disk(rep, 5).canonical().center)
    emit(doc, cfg, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "dot", "text"), default="json")
    common.add_argument("--precision", type=int, default=None,
                        help="working precision in bits (env DYDY_PRECISION)")
    common.add_argument("--max-iters", type=int, default=DEFAULT_MAX_ITERS)
    common.add_argument("--jobs", type=int, default=1)
    seeded = _Parser(add_help=False, parents=[common])
    seeded.add_argument("--seed", dest="rng_seed", type=int, default=0,
                        help="seed for randomized runs (recorded in the config)")

    p = _Parser(prog="dydy", description="Exact 2-adic dynamics of the cubic family f_t.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("classify-parameter", parents=[seeded], help="is the critical orbit bounded?")
    s.add_argument("t")
    s.set_defaults(run=cmd_classify_parameter)

    s = sub.add_parser("classify-point", parents=[seeded], help="fate of the orbit of z under f_t")
    s.add_argument("t")
    s.add_argument("z")
    s.set_defaults(run=cmd_classify_point)

    for name, kind in (("mandel-tree", "mandel"), ("julia-tree", "julia")):
        s = sub.add_parser(name, parents=[seeded], help=f"classified residue-disk tree ({kind})")
        s.add_argument("--depth", type=int, required=True)
        s.set_defaults(run=_cmd_tree(kind))

    s = sub.add_parser("verify", parents=[seeded], help="check one instance of a disk pattern")
    s.add_argument("theorem", choices=sorted(VERIFIERS))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--family", choices=("a", "b"))
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("pcf-find", parents=[seeded], help="parameter with periodic critical point")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(run=cmd_pcf_find)

    s = sub.add_parser("newton-polygon", parents=[seeded], help="Newton polygon of a polynomial")
    s.add_argument("poly", help="g<n> or comma separated coefficients, constant first")
    s.set_defaults(run=cmd_newton_polygon)

    s = sub.add_parser("cycle-find", parents=[common], help="Hensel-lift a periodic cycle")
    s.add_argument("--period", type=int, required=True)
    s.add_argument("--seed", dest="cycle_seed", required=True, help="start value, e.g. 7%%16 or -1/2")
    s.add_argument("--t", default="1")
    s.set_defaults(run=cmd_cycle_find)
    return p


def _config(args) -> RunConfig:
    precision = args.precision
    if precision is None:
        env = os.environ.get("DYDY_PRECISION")
        try:
            precision = int(env) if env else DEFAULT_PRECISION
        except ValueError:
            raise UsageError(f"DYDY_PRECISION must be an integer, got {env!r}") from None
    return RunConfig(
        precision_bits=precision,
        max_iters=args.max_iters,
        depth=getattr(args, "depth", 8),
        output_format=args.format,
        seed=getattr(args, "rng_seed", 0),
        jobs=args.jobs,
    )


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if hasattr(args, "cycle_seed"):
            args.seed = args.cycle_seed
            args.rng_seed = 0
        cfg = _config(args)
        return args.run(args, cfg, out)
    except UsageError as exc:
        print(f"dydy: usage error: {exc}", file=sys.stderr)
    except (DomainError, StructuralError) as exc:
        print(f"dydy: domain error: {exc}", file=sys.stderr)
    except (NoConvergence, WrongPeriod, CertificationError, VerificationFailure) as exc:
        print(f"dydy: {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
