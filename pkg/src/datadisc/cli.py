"""Command-line interface: ML degrees, degree profiles, discriminants, probes."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
import time

from . import __version__
from .discriminant import (DegenerateSampleError, ShapeFailure, degree_profile,
                           degree_profile_s3, dxj_elimination, interpolate_strategy1,
                           interpolate_strategy2, interpolate_strategy3,
                           verify_on_random_line)
from .groebner import ComputationTimeout, Deadline
from .likelihood import DataVector, ModelError, ml_degree
from .modelfile import ModelFileError, load_system
from .polyring import ParseError, format_poly, parse_poly
from .rootprobe import count_solutions

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY = 3
EXIT_TIMEOUT = 4
EXIT_DEGENERATE = 5
EXIT_MISMATCH = 6

DEFAULT_TIMEOUT = 600.0

STRATEGIES = {
    "s1": interpolate_strategy1,
    "s2": interpolate_strategy2,
    "s3": interpolate_strategy3,
}

# (ML degree, degree of D_{X,J}) for the bench fixture sets
TABLES = {
    "model1": (3, 6),
    "model2": (2, 4),
    "model3": (4, 14),
    "model4": (6, 12),
    "dense1": (6, 10),
}
EXAMPLES = {"linear": (3, 4), "toy": (3, 4)}
FIXTURE_SETS = {"tables": TABLES, "examples": EXAMPLES,
                "quick": {k: v for k, v in {**EXAMPLES, **TABLES}.items()
                          if k in ("linear", "toy", "model1", "model2", "dense1")}}

log = logging.getLogger("datadisc")


# envelopes ---------------------------------------------------------------------------------

def envelope(command, model, strategy, seed, result=None, profile=None, verified=None,
             extra=None):
    """Ordered fields of a result envelope (timings kept separately)."""
    env = {"command": command, "model": model, "strategy": strategy, "seed": seed,
           "version": __version__}
    prof = profile or (result.profile if result is not None else None)
    if prof is not None:
        env["profile"] = str(prof)
    if result is not None:
        dxj = result.dxj
        env["degree"] = dxj.total_degree()
        env["terms"] = len(dxj)
        env["samples"] = result.samples
    env["verified"] = {True: "pass", False: "fail", None: "skipped"}.get(verified, verified)
    if extra:
        env.update(extra)
    timings = dict(result.timings) if result is not None else {}
    if result is not None:
        env["polynomial"] = format_poly(_params_only(result.dxj))
    return env, timings


def _params_only(p):
    """Move a polynomial to a registry holding only the variables it uses."""
    from .polyring import VarRegistry
    names = [n for n in p.reg.names if n in set(p.variables())] or [p.reg.names[0]]
    return p.to_registry(VarRegistry(names))


def render_text(env, timings):
    lines = []
    for k, v in env.items():
        if k == "polynomial":
            continue
        lines.append(f"{k}: {v}")
    for k, v in timings.items():
        lines.append(f"time.{k}: {v:.3f}")
    if "polynomial" in env:
        lines.append(f"polynomial: {env['polynomial']}")
    return "\n".join(lines) + "\n"


def render_json(env, timings):
    doc = dict(env)
    doc["timings"] = {k: round(v, 3) for k, v in timings.items()}
    return json.dumps(doc, indent=2) + "\n"


def read_envelope(text):
    """Fields of an envelope in either format; a bare polynomial is accepted."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return json.loads(stripped)
    fields = {}
    for line in stripped.splitlines():
        key, sep, value = line.partition(":")
        if sep and key and " " not in key.strip():
            fields[key.strip()] = value.strip()
    if "polynomial" not in fields:
        fields = {"polynomial": " ".join(stripped.split())}
    return fields


def _emit(args, env, timings):
    text = render_json(env, timings) if args.json else render_text(env, timings)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)


# subcommands -------------------------------------------------------------------------------

def _token(args):
    return Deadline(args.timeout) if args.timeout and args.timeout > 0 else None


def cmd_mldeg(args):
    system = load_system(args.model)
    print(ml_degree(system, args.seed, token=_token(args)))
    return EXIT_OK


def cmd_degree(args):
    system = load_system(args.model)
    token = _token(args)
    t = time.monotonic()
    if args.strategy == "s3":
        prof = degree_profile_s3(system, args.seed, token=token)
    else:
        prof = degree_profile(system, args.seed, token)
    env, _ = envelope("degree", system.name, args.strategy, args.seed, profile=prof)
    env.pop("verified")
    _emit(args, env, {"degree": time.monotonic() - t})
    return EXIT_OK


def cmd_disc(args):
    system = load_system(args.model)
    token = _token(args)
    if args.strategy == "elim":
        result = dxj_elimination(system, token, seed=args.seed)
    else:
        threads = args.threads if args.threads is not None else (os.cpu_count() or 1)
        result = STRATEGIES[args.strategy](system, seed=args.seed, threads=threads, token=token)
    verified = None
    if args.verify > 0 and not result.dxj.is_constant():
        t = time.monotonic()
        verified = all(verify_on_random_line(result, system, f"{args.seed}:{i}", token)
                       for i in range(args.verify))
        result.timings["verify"] = time.monotonic() - t
    result.verified = verified
    env, timings = envelope("disc", system.name, args.strategy, args.seed, result,
                            verified=verified)
    _emit(args, env, timings)
    return EXIT_VERIFY if verified is False else EXIT_OK


def cmd_probe(args):
    system = load_system(args.model)
    dxj = None
    if args.disc:
        with open(args.disc) as fh:
            fields = read_envelope(fh.read())
        dxj = parse_poly(fields["polynomial"], system.reg)
    token = _token(args)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(list(system.params) + ["sign", "complex", "real", "positive", "shape_flag"])
    for text in args.data:
        u = DataVector.parse(text)
        writer.writerow(count_solutions(system, u, dxj, args.seed, token).row())
    return EXIT_OK


def cmd_bench(args):
    if args.fixture_set in FIXTURE_SETS:
        table = FIXTURE_SETS[args.fixture_set]
    else:
        names = args.fixture_set.split(",")
        table = {n: TABLES.get(n, EXAMPLES.get(n, (None, None))) for n in names}
    token = _token(args)
    failures = 0
    print(f"{'model':<8} {'ml':>4} {'want':>4} {'deg':>4} {'want':>4} {'profile':<24} {'secs':>8}  status")
    for name, (want_ml, want_d) in table.items():
        system = load_system(name)
        t = time.monotonic()
        ml = ml_degree(system, args.seed, token=token)
        prof = degree_profile(system, args.seed, token)
        secs = time.monotonic() - t
        ok = (want_ml is None or ml == want_ml) and (want_d is None or prof.d == want_d)
        failures += not ok
        print(f"{name:<8} {ml:>4} {want_ml if want_ml is not None else '-':>4} {prof.d:>4} "
              f"{want_d if want_d is not None else '-':>4} {str(prof):<24} {secs:>8.1f}  "
              f"{'pass' if ok else 'FAIL'}", flush=True)
    return EXIT_OK if failures == 0 else EXIT_MISMATCH


# driver ------------------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice")
    common.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT,
                        help="wall-clock budget in seconds (0 disables)")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="datadisc", description=__doc__)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("mldeg", parents=[common], help="ML degree of a model")
    s.add_argument("model")
    s.set_defaults(func=cmd_mldeg)

    s = sub.add_parser("degree", parents=[common], help="degree profile of D_{X,J}")
    s.add_argument("model")
    s.add_argument("--strategy", choices=("s1", "s3"), default="s1")
    s.add_argument("--json", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_degree)

    s = sub.add_parser("disc", parents=[common], help="compute D_{X,J}")
    s.add_argument("model")
    s.add_argument("--strategy", choices=("elim", "s1", "s2", "s3"), required=True)
    s.add_argument("--verify", type=int, default=1, metavar="N",
                   help="number of random-line checks (0 skips)")
    s.add_argument("--threads", type=int, default=None, metavar="K")
    s.add_argument("--json", action="store_true")
    s.add_argument("--out", metavar="FILE")
    s.set_defaults(func=cmd_disc)

    s = sub.add_parser("probe", parents=[common], help="count solutions at data points")
    s.add_argument("model")
    s.add_argument("--disc", metavar="FILE", help="envelope or polynomial file for the sign")
    s.add_argument("--data", action="append", required=True, metavar="U0,U1,...")
    s.set_defaults(func=cmd_probe)

    s = sub.add_parser("bench", parents=[common], help="ML and discriminant degrees of fixtures")
    s.add_argument("fixture_set", help=f"one of {sorted(FIXTURE_SETS)} or comma-separated names")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ComputationTimeout as e:
        print(f"datadisc: timeout: {e}", file=sys.stderr)
        return EXIT_TIMEOUT
    except (DegenerateSampleError, ShapeFailure) as e:
        print(f"datadisc: {e}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ModelFileError, ModelError, ParseError, FileNotFoundError, ValueError) as e:
        print(f"datadisc: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
