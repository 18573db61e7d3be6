"""Command-line front end.

Exit codes: 0 success, 1 property failure, 2 internal verification
failure, 64 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Optional, Sequence

from . import families
from .dtuples import PreconditionError, RationalTuple, dn_certificate, exotic_ordering
from .exact import fmt_rational, parse_rational
from .param import SurfacePoint

EXIT_OK, EXIT_PROPERTY, EXIT_INTERNAL, EXIT_USAGE = 0, 1, 2, 64

log = logging.getLogger("dquint")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    family: str = "all"
    multiples: tuple[int, ...] = ()
    height: int = 15
    out: Optional[str] = None
    format: str = "jsonl"
    seed: int = 0
    torsion_translates: bool = False

    def __post_init__(self):
        if self.height < 1:
            raise UsageError("height bound must be >= 1")
        if self.command == "generate" and not self.multiples:
            raise UsageError("multiple range is empty")


def parse_multiples(text: str) -> tuple[int, ...]:
    """``"3"``, ``"1..5"`` or ``"1,2,7"``; zero is dropped from ranges."""
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
            ks = tuple(k for k in range(lo, hi + 1) if k != 0)
        else:
            ks = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"cannot parse multiples {text!r}") from None
    if 0 in ks:
        raise UsageError("multiple 0 gives the point at infinity")
    return ks


@contextmanager
def _output(path: Optional[str]):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def cmd_generate(cfg: RunConfig) -> int:
    fids = ["D1", "D2", "D3"] if cfg.family.lower() == "all" else [cfg.family.upper()]
    failed = 0
    with _output(cfg.out) as fh:
        for rec in families.iter_generate(fids, cfg.multiples, torsion_translates=cfg.torsion_translates):
            fh.write(_dump(rec.to_json()) + "\n")
            if rec.status == "failed":
                failed += 1
                log.error("%s k=%d failed verification: %s", rec.family, rec.k, rec.checks)
            elif rec.status == "degenerate":
                log.warning("%s k=%d degenerate: %s", rec.family, rec.k, rec.reason)
    return EXIT_INTERNAL if failed else EXIT_OK


def cmd_verify(cfg: RunConfig, elements: Sequence[str], n: str) -> int:
    try:
        tup = RationalTuple(parse_rational(e) for e in elements)
        nval = parse_rational(n)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    cert = dn_certificate(tup, nval)
    ok = all(root is not None for _, _, root in cert)
    with _output(cfg.out) as fh:
        for i, j, root in cert:
            fh.write(_dump({"i": i, "j": j, "root": None if root is None else fmt_rational(root)}) + "\n")
        summary = {**tup.to_json(nval), "dn": ok}
        if len(tup) == 5:
            summary["exotic"] = exotic_ordering(tup) is not None
        fh.write(_dump(summary) + "\n")
    return EXIT_OK if ok else EXIT_PROPERTY


def cmd_scan(cfg: RunConfig) -> int:
    bad = counts = 0
    tally = {"exotic": 0, "degenerate": 0}
    with _output(cfg.out) as fh:
        for hit in families.scan_surface(cfg.height):
            counts += 1
            tally[hit.status] += 1
            # re-verify what the scan reports, independently of how it was found
            try:
                SurfacePoint(hit.point.r, hit.point.t, hit.point.y)
            except ValueError:
                bad += 1
            if hit.status == "exotic" and exotic_ordering(hit.quintuple) is None:
                bad += 1
            fh.write(_dump(hit.to_json()) + "\n")
    log.info("scan H=%d: %d points, %s", cfg.height, counts, tally)
    return EXIT_INTERNAL if bad else EXIT_OK


def cmd_selftest(cfg: RunConfig) -> int:
    from .selftest import run_selftest

    t0 = time.perf_counter()
    results = run_selftest(cfg.seed)
    failed = [r for r in results if not r.passed]
    known = sum(1 for r in results if r.name.startswith("known-tuple:") and r.passed)
    with _output(cfg.out) as fh:
        for r in results:
            fh.write(f"{'PASS' if r.passed else 'FAIL'} {r.name}{' ' + r.detail if r.detail else ''}\n")
        fh.write(f"seed={cfg.seed} known tuples verified: {known} ({time.perf_counter() - t0:.1f}s)\n")
        if failed:
            fh.write("failure manifest: " + ", ".join(r.name for r in failed) + "\n")
    return EXIT_INTERNAL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dquint", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=["jsonl"], default="jsonl")
        p.add_argument("--seed", type=int, default=0)

    g = sub.add_parser("generate", help="quintuples from multiples of the family generators")
    g.add_argument("--family", choices=["d1", "d2", "d3", "all"], default="all", type=str.lower)
    g.add_argument("--multiples", default="1", help="A..B, a comma list, or a single k")
    g.add_argument("--torsion-translates", choices=["on", "off"], default="off")
    common(g)

    v = sub.add_parser("verify", help="check the D(n) property of a tuple")
    v.add_argument("elements", nargs="+", help='elements as "num/den"')
    v.add_argument("--n", default="1")
    common(v)

    s = sub.add_parser("scan", help="rational points of S up to a height bound")
    s.add_argument("--height", type=int, default=15)
    common(s)

    t = sub.add_parser("selftest", help="regressions on known tuples and identity checks")
    common(t)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format="%(levelname)s %(message)s")
    try:
        cfg = RunConfig(
            command=args.command,
            family=getattr(args, "family", "all"),
            multiples=parse_multiples(args.multiples) if args.command == "generate" else (),
            height=getattr(args, "height", 15),
            out=args.out,
            format=args.format,
            seed=args.seed,
            torsion_translates=getattr(args, "torsion_translates", "off") == "on",
        )
        if args.command == "generate":
            return cmd_generate(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, args.elements, args.n)
        if args.command == "scan":
            return cmd_scan(cfg)
        return cmd_selftest(cfg)
    except UsageError as exc:
        print(f"dquint: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"dquint: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
