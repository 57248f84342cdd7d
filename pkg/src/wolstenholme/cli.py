"""Command line: verify congruences, hunt Wolstenholme primes, scan the converse,
and compute single values.

Exit codes: 0 success, 1 an asserted congruence failed, 2 usage error,
3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field, fields

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Everything a run needs; loads from JSON, flags override, dumps back losslessly."""

    checks: list[str] = field(default_factory=lambda: ["*"])
    primes: str = "2..499"
    method: str = "harmonic"
    jobs: int = 1
    format: str = "table"
    checkpoint: str | None = None
    resume: str | None = None
    seed: int = 0
    allow_experimental_fast: bool = False
    w5: bool = False
    conditional: bool = False
    timing: bool = True
    segment: int = 1 << 16
    k: int = 1
    classes: list[str] = field(default_factory=lambda: ["prime", "prime-power", "odd-composite", "even"])

    @classmethod
    def from_dict(cls, data: dict) -> RunConfig:
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        return cls(**data)

    @classmethod
    def load(cls, path: str) -> RunConfig:
        try:
            with open(path, encoding="utf-8") as fh:
                return cls.from_dict(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from None

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"

    def dump(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())

    def merged(self, overrides: dict) -> RunConfig:
        data = asdict(self)
        data.update({k: v for k, v in overrides.items() if k in data})
        return RunConfig.from_dict(data)


def parse_range(text: str) -> tuple[int, int]:
    """'A..B' -> (A, B); a single integer means [A, A]."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected A..B") from None
    if hi < lo:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


# Argument parsing.  Config-backed flags default to SUPPRESS so that only the
# flags actually given override values loaded with --config.

def _config_flags(p: argparse.ArgumentParser, names: set[str]) -> None:
    S = argparse.SUPPRESS
    if "checks" in names:
        p.add_argument("--checks", nargs="+", default=S, help="check ids or wildcards such as 'W.*'")
    if "primes" in names:
        p.add_argument("--primes", default=S, help="prime range A..B (default 2..499)")
    if "method" in names:
        p.add_argument("--method", choices=("harmonic", "direct", "fast"), default=S)
    if "jobs" in names:
        p.add_argument("--jobs", type=int, default=S, help="worker processes")
    p.add_argument("--format", choices=("table", "json", "csv"), default=S)
    if "checkpoint" in names:
        p.add_argument("--checkpoint", default=S, help="write a checkpoint here after every segment")
        p.add_argument("--resume", default=S, help="continue from this checkpoint")
        p.add_argument("--segment", type=int, default=S, help="candidates per segment")
    p.add_argument("--seed", type=int, default=S, help="seed for sampled parameter grids")
    if "allow_experimental_fast" in names:
        p.add_argument("--allow-experimental-fast", dest="allow_experimental_fast", action="store_true", default=S)
    if "w5" in names:
        p.add_argument("--w5", action="store_true", default=S, help="audit C(2p-1,p-1) = 1 mod p^5")
    if "conditional" in names:
        p.add_argument("--conditional", action="store_true", default=S,
                       help="also run checks that hold only at Wolstenholme primes (p = 16843)")
    p.add_argument("--no-timing", dest="timing", action="store_false", default=S,
                   help="report zero timings so repeated runs are byte-identical")
    if "k" in names:
        p.add_argument("--k", type=int, default=S, help="exponent: C(2n-1,n-1) = 1 mod n^k")
        p.add_argument("--classes", nargs="+", default=S,
                       choices=("prime", "prime-power", "odd-composite", "even"))
    p.add_argument("--config", help="JSON run configuration; flags override it")
    p.add_argument("--dump-config", dest="dump_config", help="write the effective configuration and continue")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wolstenholme", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="sweep catalog checks over parameter ranges")
    _config_flags(v, {"checks", "primes", "jobs", "conditional"})

    h = sub.add_parser("hunt", help="search for Wolstenholme primes")
    h.add_argument("range", nargs="?", help="prime range A..B")
    h.add_argument("--quiet", action="store_true", help="do not stream per-segment status")
    _config_flags(h, {"primes", "method", "jobs", "checkpoint", "allow_experimental_fast", "w5"})

    c = sub.add_parser("converse", help="find n with C(2n-1, n-1) = 1 mod n^k")
    c.add_argument("range", nargs="?", help="range A..B")
    _config_flags(c, {"primes", "k"})

    ls = sub.add_parser("list", help="list registered checks")
    ls.add_argument("--checks", nargs="+", default=None)

    comp = sub.add_parser("compute", help="print one value")
    comp.add_argument("what", choices=("binom", "harmonic", "bernoulli", "qbinom", "quotient"))
    comp.add_argument("--n", type=int)
    comp.add_argument("--m", type=int)
    comp.add_argument("--mod", type=int, help="modulus")
    comp.add_argument("--p", type=int, help="prime")
    comp.add_argument("--e", type=int, help="exponent of the prime-power modulus")
    comp.add_argument("--power", type=int, default=1, help="harmonic power")
    comp.add_argument("--exact", type=int, metavar="N", help="exact rational B_N")
    return parser


def effective_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig.load(args.config) if getattr(args, "config", None) else RunConfig()
    overrides = {k: v for k, v in vars(args).items() if k in {f.name for f in fields(RunConfig)}}
    if getattr(args, "range", None):
        overrides["primes"] = args.range
    cfg = cfg.merged(overrides)
    if getattr(args, "dump_config", None):
        cfg.dump(args.dump_config)
    return cfg


# Commands.

def _stderr(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def cmd_verify(cfg: RunConfig, out) -> int:
    from .catalog import GridOptions, sweep
    from .report import render
    lo, hi = parse_range(cfg.primes)
    if cfg.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    options = GridOptions(lo=lo, hi=hi, conditional=cfg.conditional, seed=cfg.seed)
    rep = sweep(cfg.checks, options, jobs=cfg.jobs)
    out.write(render(rep.results, cfg.format, cfg.timing))
    s = rep.summary
    informative = [r for r in rep.results if not r.asserted]
    if cfg.format == "table" and informative:
        out.write("\ninformative comparisons (never fail the run):\n")
        for r in informative:
            state = "agree" if r.passed else "differ"
            out.write(f"  {r.check_id} {json.dumps(r.params, sort_keys=True)} {state}: {r.note}\n")
    _stderr(f"passed {s.passed}, failed {s.failed}, informative failures {s.informative_failed}, "
            f"primes below floor skipped {s.skipped_below_floor}")
    return EXIT_OK if s.failed == 0 else EXIT_FAIL


def cmd_hunt(cfg: RunConfig, out, quiet: bool = False) -> int:
    from .hunter import w5_scan, wolstenholme_scan
    lo, hi = parse_range(cfg.primes)
    if cfg.jobs < 1 or cfg.segment < 1:
        raise UsageError("--jobs and --segment must be positive")

    def progress(rec: dict) -> None:
        if not quiet:
            _stderr(json.dumps(rec, separators=(",", ":")))

    scan = w5_scan if cfg.w5 else wolstenholme_scan
    kwargs = dict(segment_size=cfg.segment, jobs=cfg.jobs, checkpoint_path=cfg.checkpoint, resume=cfg.resume,
                  allow_fast=cfg.allow_experimental_fast, progress=progress)
    res = scan(lo, hi, method=cfg.method, **kwargs)
    hits = res.checkpoint.hits
    if cfg.format == "json":
        for w in hits:
            out.write(json.dumps({"p": w.p, "harmonic_mod_p3": w.harmonic,
                                  f"binomial_mod_p{w.binomial_exponent}": w.binomial}) + "\n")
    elif cfg.format == "csv":
        out.write("p,harmonic_mod_p3,binomial_mod_pe,e\n")
        for w in hits:
            out.write(f"{w.p},{w.harmonic},{w.binomial},{w.binomial_exponent}\n")
    else:
        for w in hits:
            out.write(f"{w.p}  H_(p-1) mod p^3 = {w.harmonic}  "
                      f"C(2p-1,p-1) mod p^{w.binomial_exponent} = {w.binomial}\n")
    return EXIT_OK


def cmd_converse(cfg: RunConfig, out) -> int:
    from .hunter import converse_scan
    lo, hi = parse_range(cfg.primes)
    res = converse_scan(lo, hi, cfg.k, cfg.classes)
    rows = [h for h in res.hits if h.level >= cfg.k]
    if cfg.format == "json":
        for h in rows:
            out.write(json.dumps({"n": h.n, "class": h.tag, "level": h.level}) + "\n")
    elif cfg.format == "csv":
        out.write("n,class,level\n")
        for h in rows:
            out.write(f"{h.n},{h.tag},{h.level}\n")
    else:
        for h in rows:
            out.write(f"{h.n}  {h.tag}  level {h.level}\n")
    return EXIT_OK


def cmd_list(patterns, out) -> int:
    from .catalog import REGISTRY, select
    for cid in select(patterns):
        c = REGISTRY[cid]
        kind = "asserted" if c.asserted else "comparison"
        out.write(f"{cid}  floor {c.floor}  params {','.join(c.params)}  {kind}  {c.statement}\n")
    return EXIT_OK


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + n for n in missing))


def cmd_compute(args, out) -> int:
    from . import bernoulli, combinatorics, qring
    what = args.what
    if what == "binom":
        _need(args, "n", "m")
        if args.mod is None:
            out.write(f"{combinatorics.binomial_exact(args.n, args.m)}\n")
        else:
            out.write(f"{combinatorics.binomial_mod(args.n, args.m, args.mod).value}\n")
    elif what == "harmonic":
        _need(args, "n")
        spec = combinatorics.HarmonicSpec(args.power, args.n + 1, args.mod or 1)
        if args.mod is None:
            out.write(f"{combinatorics.harmonic_exact(spec)}\n")
        else:
            out.write(f"{combinatorics.harmonic_sum_mod(spec).value}\n")
    elif what == "bernoulli":
        if args.exact is not None:
            out.write(f"{bernoulli.bernoulli_exact(args.exact)}\n")
        else:
            _need(args, "n", "p", "e")
            v = bernoulli.bernoulli_mod(args.n, args.p, args.e)
            if v.valuation is None or v.valuation >= 0:
                out.write(f"{v.residue(args.e).value}\n")
            else:
                out.write(f"{v}\n")
    elif what == "qbinom":
        _need(args, "n", "m")
        out.write(f"{qring.q_binomial(args.n, args.m)}\n")
    elif what == "quotient":
        _need(args, "p")
        w, r = bernoulli.wolstenholme_quotient(args.p)
        out.write(f"{w if w is not None else '?'}  (mod p: {r.value})\n")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    from .errors import (
        CapExceeded, CheckpointCorrupt, FastMethodNotValidated, InvalidRange, NotPrime, ParamsOutOfDomain,
        ResumeMismatch, UnknownCheckId, WolstenholmeError,
    )
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    out = sys.stdout
    usage_errors = (UsageError, UnknownCheckId, ParamsOutOfDomain, InvalidRange, ResumeMismatch,
                    CheckpointCorrupt, FastMethodNotValidated, NotPrime, CapExceeded)
    try:
        if args.command == "compute":
            return cmd_compute(args, out)
        if args.command == "list":
            return cmd_list(args.checks, out)
        cfg = effective_config(args)
        if args.command == "verify":
            return cmd_verify(cfg, out)
        if args.command == "hunt":
            return cmd_hunt(cfg, out, args.quiet)
        return cmd_converse(cfg, out)
    except usage_errors as exc:
        _stderr(f"error: {type(exc).__name__}: {exc}")
        return EXIT_USAGE
    except (WolstenholmeError, ValueError, OSError) as exc:
        _stderr(f"error: {type(exc).__name__}: {exc}")
        return EXIT_USAGE if isinstance(exc, ValueError) else EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001
        _stderr(f"internal error: {type(exc).__name__}: {exc}")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
