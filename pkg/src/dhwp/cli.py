"""Command-line front end.

Subcommands: feasible, solve, verify, atlas (verify-all | list | generate),
oracle.  Output defaults to the catalogue text format so solve and verify
compose through files.  Exit codes are a stable contract:

  0  success / condition met / valid / witness found
  2  condition failed / invalid / infeasible (including proven nonexistence)
  3  unsupported by the construction stack, or recorded open
  4  search or generation budget exhausted
 64  usage error
 74  input/output error
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .atlas import Atlas, AtlasKey, parse_atlas_text, serialize_entry
from .constructions import check_necessary, solve
from .digraph import complete_symmetric
from .errors import (
    AtlasParseError,
    CacheCorruptionError,
    DhwpError,
    GenerationTimeoutError,
)
from .model import ProblemSpec, verify_factorization
from .oracle import SearchInstance, exact_search

__all__ = ["main", "run_cli"]

EX_OK = 0
EX_FAIL = 2
EX_UNSUPPORTED = 3
EX_BUDGET = 4
EX_USAGE = 64
EX_IOERR = 74


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EX_USAGE)


@dataclass
class CliConfig:
    cache_dir: str | None
    node_limit: int
    time_limit: float
    fmt: str
    seed: int | None

    def atlas(self) -> Atlas:
        return Atlas(cache_dir=self.cache_dir)


def _build_parser() -> _Parser:
    p = _Parser(prog="dhwp", description="directed two-cycle-size factorizations")
    p.add_argument("--cache-dir", help="directory for generated catalogue entries")
    p.add_argument("--nodes", type=int, default=10**8, help="search node budget")
    p.add_argument("--seconds", type=float, default=60.0, help="search time budget")
    p.add_argument(
        "--format", choices=("atlas-text", "summary"), default="atlas-text",
        help="solve output format",
    )
    p.add_argument("--seed", type=int, default=None, help="candidate-order seed")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("feasible", parents=[], help="check necessary conditions")
    for name in ("v", "m", "n", "r", "s"):
        q.add_argument(name, type=int)

    sv = sub.add_parser("solve", help="construct a verified factorization")
    for name in ("v", "m", "n", "r", "s"):
        sv.add_argument(name, type=int)
    sv.add_argument("--out", help="write the certificate to this file")

    vf = sub.add_parser("verify", help="verify a certificate file")
    vf.add_argument("file")
    vf.add_argument("--spec", nargs=5, type=int, metavar=("V", "M", "N", "R", "S"))

    at = sub.add_parser("atlas", help="catalogue maintenance")
    at.add_argument("action", choices=("verify-all", "list", "generate"))
    at.add_argument("key", nargs="?", help="v,m,n,r,s (for generate)")

    orc = sub.add_parser("oracle", help="exact search on the complete symmetric digraph")
    orc.add_argument("v", type=int)
    orc.add_argument(
        "--profile", required=True, help="cycle-length:count pairs, e.g. 4:3,6:8"
    )
    orc.add_argument("--prove-none", action="store_true")
    orc.add_argument("--parallel", type=int, default=1)
    return p


def _spec_from(args, names=("v", "m", "n", "r", "s")) -> ProblemSpec:
    return ProblemSpec(*(getattr(args, name) for name in names))


def _cmd_feasible(args, cfg: CliConfig) -> int:
    try:
        spec = _spec_from(args)
    except DhwpError as exc:
        print(f"invalid parameters: {exc}")
        return EX_FAIL
    report = check_necessary(spec)
    for name, ok in report.conditions:
        print(f"{'ok  ' if ok else 'FAIL'}  {name}")
    print("necessary conditions met" if report.met else "necessary conditions not met")
    return EX_OK if report.met else EX_FAIL


def _cmd_solve(args, cfg: CliConfig) -> int:
    try:
        spec = _spec_from(args)
    except DhwpError as exc:
        print(f"invalid parameters: {exc}")
        return EX_FAIL
    result = solve(
        spec,
        atlas=cfg.atlas(),
        time_limit=cfg.time_limit,
        oracle_node_limit=cfg.node_limit,
    )
    if result.status != "found":
        print(f"{result.status}: {result.detail}")
        return {
            "infeasible": EX_FAIL,
            "unsupported": EX_UNSUPPORTED,
            "unknown-open": EX_UNSUPPORTED,
            "budget-exhausted": EX_BUDGET,
        }[result.status]
    key = AtlasKey.of(spec.v, spec.m, spec.n, spec.r, spec.s)
    text = serialize_entry(key, result.factorization)
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            print(f"cannot write {args.out}: {exc}", file=sys.stderr)
            return EX_IOERR
        if cfg.fmt == "summary":
            print(f"found ({result.detail}): {len(result.factorization.factors)} factors "
                  f"-> {args.out}")
    else:
        if cfg.fmt == "summary":
            print(f"found ({result.detail}): {len(result.factorization.factors)} factors")
        else:
            sys.stdout.write(text)
    return EX_OK


def _cmd_verify(args, cfg: CliConfig) -> int:
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        print(f"cannot read {args.file}: {exc}", file=sys.stderr)
        return EX_IOERR
    try:
        entries = parse_atlas_text(text, verify=False)
    except AtlasParseError as exc:
        print(f"parse error: {exc}")
        return EX_FAIL
    if not entries:
        print("no entries in file")
        return EX_FAIL
    if args.spec and len(entries) > 1:
        print("--spec is only meaningful for single-entry files", file=sys.stderr)
        return EX_USAGE
    all_ok = True
    for entry in entries:
        key = entry.key
        if args.spec:
            v, m, n, r, s = args.spec
            key = AtlasKey.of(v, m, n, r, s)
        spec = key.spec()
        host = complete_symmetric(key.v)
        verdict = verify_factorization(host, entry.factorization, spec)
        label = f"HWP*({key.v};{key.m}^{key.r},{key.n}^{key.s})"
        if verdict.valid:
            counts = ", ".join(f"{k}:{c}" for k, c in sorted(verdict.counts.items()))
            print(f"{label}: valid {{{counts}}}")
        else:
            all_ok = False
            fail = verdict.first_failure
            print(f"{label}: INVALID ({fail.reason}) {fail.detail}")
    return EX_OK if all_ok else EX_FAIL


def _cmd_atlas(args, cfg: CliConfig) -> int:
    try:
        atlas = cfg.atlas()
    except (AtlasParseError, CacheCorruptionError) as exc:
        print(f"catalogue failed to load: {exc}")
        return EX_FAIL
    if args.action == "list":
        for entry in atlas.entries():
            k = entry.key
            nfac = len(entry.factorization.factors) if entry.factorization else 0
            print(
                f"HWP*({k.v};{k.m}^{k.r},{k.n}^{k.s})  {entry.status}"
                f"  [{entry.provenance}]  factors={nfac}"
            )
        return EX_OK
    if args.action == "verify-all":
        bad = 0
        checked = 0
        for entry in atlas.entries():
            if entry.factorization is None:
                print(f"{entry.key}: open (no certificate)")
                continue
            verdict = verify_factorization(
                entry.factorization.host, entry.factorization, entry.key.spec()
            )
            checked += 1
            if not verdict.valid:
                bad += 1
                print(f"{entry.key}: INVALID {verdict.first_failure}")
        print(f"{checked} entries verified, {bad} invalid")
        return EX_OK if bad == 0 else EX_FAIL
    # generate
    if not args.key:
        print("atlas generate needs a key v,m,n,r,s", file=sys.stderr)
        return EX_USAGE
    try:
        v, m, n, r, s = (int(x) for x in args.key.replace(" ", ",").split(",") if x != "")
    except ValueError:
        print(f"malformed key {args.key!r}", file=sys.stderr)
        return EX_USAGE
    try:
        entry = atlas.ensure_generated(AtlasKey.of(v, m, n, r, s), time_limit=cfg.time_limit)
    except GenerationTimeoutError as exc:
        print(f"budget exhausted: {exc}")
        return EX_BUDGET
    except DhwpError as exc:
        print(f"cannot generate: {exc}")
        return EX_UNSUPPORTED
    if entry.status == "unknown-open":
        print(f"{entry.key}: recorded as unsettled; nothing to generate")
        return EX_UNSUPPORTED
    print(f"{entry.key}: {entry.status} ({entry.provenance})")
    return EX_OK


def _cmd_oracle(args, cfg: CliConfig) -> int:
    try:
        profile = {}
        for part in args.profile.split(","):
            length, count = part.split(":")
            profile[int(length)] = int(count)
    except ValueError:
        print(f"malformed profile {args.profile!r}", file=sys.stderr)
        return EX_USAGE
    host = complete_symmetric(args.v)
    try:
        inst = SearchInstance(
            host,
            profile,
            mode="prove-none" if args.prove_none else "find-one",
            node_limit=cfg.node_limit,
            time_limit=cfg.time_limit,
            order_seed=cfg.seed,
        )
        outcome = exact_search(inst, parallel=args.parallel)
    except DhwpError as exc:
        print(f"bad instance: {exc}")
        return EX_FAIL
    print(f"{outcome.status} nodes={outcome.nodes} elapsed={outcome.elapsed:.2f}s")
    if outcome.status == "found":
        lines = []
        for factor in outcome.witness.factors:
            lines.append(
                "".join("(" + ",".join(map(str, c.vertices)) + ")" for c in factor.cycles)
            )
        print("\n".join(lines))
        return EX_OK
    if outcome.status == "none":
        return EX_FAIL
    return EX_BUDGET


def run_cli(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EX_USAGE
    cfg = CliConfig(
        cache_dir=args.cache_dir,
        node_limit=args.nodes,
        time_limit=args.seconds,
        fmt=args.format,
        seed=args.seed,
    )
    handler = {
        "feasible": _cmd_feasible,
        "solve": _cmd_solve,
        "verify": _cmd_verify,
        "atlas": _cmd_atlas,
        "oracle": _cmd_oracle,
    }[args.command]
    return handler(args, cfg)


def main() -> None:  # console entry point
    raise SystemExit(run_cli())


if __name__ == "__main__":
    main()
