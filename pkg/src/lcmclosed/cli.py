"""Command-line front end.

Exit codes: 0 success (conjecture holds or does not apply), 1 a violation was
found and printed, 2 invalid input or a failed precondition.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass, field

from . import arith
from .arith import format_factored
from .bridge import (
    family_to_numset,
    numset_to_family,
    transport_table_from_family,
    transport_table_from_numset,
)
from .cases import known_cases_family, known_cases_numset
from .family import (
    SetFamily,
    abundant_elements,
    complement_dual,
    intersection_closure,
    is_intersection_closed,
    is_union_closed,
    union_closure,
)
from .numset import (
    EndoFunction,
    NumberSet,
    abundant_divisors,
    abundant_general_divisors,
    dual,
    dual_map,
    gcd_closure,
    is_gcd_closed,
    is_lcm_closed,
    lcm_closure,
    nonabundant_prime_powers,
    set_gcd,
    set_lcm,
)
from .search import periods_from_endofunction, random_closed_numset, random_permutation, verify_exhaustive

WORKERS_ENV = "LCMCLOSED_WORKERS"

EXIT_OK, EXIT_VIOLATION, EXIT_INVALID = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    kind: str | None = None
    source: str | None = None
    fmt: str = "json"
    workers: int = 1
    sieve_cap: int = arith.DEFAULT_PRIME_CAP
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("worker count must be >= 1")


class Outcome:
    def __init__(self, payload: dict, violation: bool = False):
        self.payload = payload
        self.violation = violation


def read_input(source: str) -> str:
    s = source.lstrip()
    if s.startswith("[") or s.startswith("{"):
        return source
    if source == "-":
        return sys.stdin.read()
    with open(source) as fh:
        return fh.read()


def load_numset(source: str) -> NumberSet:
    N = NumberSet.from_json(read_input(source))
    if not N.members:
        raise ValueError("number set is empty")
    return N


def load_family(source: str) -> SetFamily:
    S = SetFamily.from_json(read_input(source))
    if not S.members:
        raise ValueError("family is empty")
    return S


def numbers(vs) -> dict:
    vs = sorted(vs, key=int)
    return {"decimal": [str(int(v)) for v in vs], "factored": [format_factored(v) for v in vs]}


def numset_obj(N: NumberSet) -> dict:
    return numbers(N.members)


def cmd_check(cfg: RunConfig) -> Outcome:
    if cfg.kind == "numset":
        N = load_numset(cfg.source)
        lcm_closed, gcd_closed = is_lcm_closed(N), is_gcd_closed(N)
        ab = abundant_divisors(N)
        out = {
            "numset": numset_obj(N),
            "lcm_closed": lcm_closed,
            "gcd_closed": gcd_closed,
            "lcm": format_factored(set_lcm(N)),
            "gcd": format_factored(set_gcd(N)),
            "abundance": ab.to_json_obj(),
        }
        violation = lcm_closed and ab.conjecture1_holds is False
        if not lcm_closed:
            out["abundance"]["conjecture1"] = "not-applicable"
        if gcd_closed and len(N) >= 2:
            na = nonabundant_prime_powers(N)
            out["nonabundance"] = na.to_json_obj()
            violation = violation or not na.conjecture3_holds
        if violation:
            out["counterexample"] = numset_obj(N)
        return Outcome(out, violation)
    S = load_family(cfg.source)
    uc, ic = is_union_closed(S), is_intersection_closed(S)
    ab = abundant_elements(S)
    out = {"family": S.to_json_obj(), "union_closed": uc, "intersection_closed": ic,
           "abundance": ab.to_json_obj()}
    if not uc:
        out["abundance"]["conjecture"] = "not-applicable"
    violation = uc and ab.conjecture_holds is False
    if violation:
        out["counterexample"] = S.to_json_obj()
    return Outcome(out, violation)


def cmd_closure(cfg: RunConfig) -> Outcome:
    if cfg.kind in ("lcm", "gcd"):
        N = load_numset(cfg.source)
        C = (lcm_closure if cfg.kind == "lcm" else gcd_closure)(N)
        return Outcome({"closure": cfg.kind, "input": numset_obj(N), "result": numset_obj(C)})
    S = load_family(cfg.source)
    C = (union_closure if cfg.kind == "union" else intersection_closure)(S)
    return Outcome({"closure": cfg.kind, "input": S.to_json_obj(), "result": C.to_json_obj()})


def cmd_abundance(cfg: RunConfig) -> Outcome:
    if cfg.kind == "numset":
        N = load_numset(cfg.source)
        out = {"numset": numset_obj(N), "abundance": abundant_divisors(N).to_json_obj()}
        if cfg.options.get("all_divisors"):
            out["general_divisors"] = abundant_general_divisors(N, cfg.options.get("limit", 10_000)).to_json_obj()
        return Outcome(out)
    S = load_family(cfg.source)
    return Outcome({"family": S.to_json_obj(), "abundance": abundant_elements(S).to_json_obj()})


def cmd_dual(cfg: RunConfig) -> Outcome:
    if cfg.kind == "numset":
        N = load_numset(cfg.source)
        h = dual_map(N)
        return Outcome({
            "input": numset_obj(N),
            "lcm": format_factored(set_lcm(N)),
            "dual": numset_obj(dual(N)),
            "map": [[str(int(k)), str(int(v))] for k, v in sorted(h.items(), key=lambda kv: int(kv[0]))],
        })
    S = load_family(cfg.source)
    return Outcome({"input": S.to_json_obj(), "dual": complement_dual(S).to_json_obj()})


def cmd_convert(cfg: RunConfig) -> Outcome:
    if cfg.kind == "family":
        S = load_family(cfg.source)
        N = family_to_numset(S)
        rows = transport_table_from_family(S)
        return Outcome({"family": S.to_json_obj(), "numset": numset_obj(N),
                        "transport": [r.__dict__ for r in rows]})
    N = load_numset(cfg.source)
    S = numset_to_family(N)
    rows = transport_table_from_numset(N)
    return Outcome({"numset": numset_obj(N), "family": S.to_json_obj(),
                    "transport": [r.__dict__ for r in rows]})


def cmd_known_cases(cfg: RunConfig) -> Outcome:
    if cfg.kind == "numset":
        return Outcome(known_cases_numset(load_numset(cfg.source)).to_json_obj())
    return Outcome(known_cases_family(load_family(cfg.source)).to_json_obj())


def cmd_enumerate(cfg: RunConfig) -> Outcome:
    o = cfg.options

    def progress(done, total):
        if o.get("progress"):
            print(f"chunk {done}/{total}", file=sys.stderr, flush=True)

    report = verify_exhaustive(o["n"], workers=cfg.workers, allow_five=o.get("allow_five", False),
                               checkpoint=o.get("checkpoint"), progress=progress)
    return Outcome(report.to_json_obj(), bool(report.violations))


def cmd_gen(cfg: RunConfig) -> Outcome:
    o = cfg.options
    if cfg.kind == "closed-numset":
        N = random_closed_numset(o["seed"], o["size"], o["max_prime_index"], o["max_exponent"],
                                 o["closure"], o.get("max_members"))
        return Outcome({"seed": o["seed"], "closure": o["closure"], "numset": numset_obj(N)})
    if o.get("image"):
        sigma = EndoFunction(tuple(int(x) for x in o["image"].split(",")))
    else:
        sigma = random_permutation(random.Random(o["seed"]), o["points"])
    A = [int(x) for x in o["subset"].split(",")] if o.get("subset") else list(range(1, sigma.size + 1))
    P = periods_from_endofunction(sigma, A)
    return Outcome({"map": list(sigma.image), "subset": A, "periods": numset_obj(P),
                    "fundamental_period": str(max(int(v) for v in P.members))})


COMMANDS = {
    "check": cmd_check,
    "closure": cmd_closure,
    "abundance": cmd_abundance,
    "dual": cmd_dual,
    "convert": cmd_convert,
    "known-cases": cmd_known_cases,
    "enumerate": cmd_enumerate,
    "gen": cmd_gen,
}


def build_parser() -> argparse.ArgumentParser:
    def shared(defaults: bool) -> argparse.ArgumentParser:
        # subcommands repeat the global options without defaults, so a value
        # given before the subcommand is not overwritten
        parent = argparse.ArgumentParser(add_help=False)
        parent.add_argument("--format", choices=("json", "table"),
                            default="json" if defaults else argparse.SUPPRESS)
        parent.add_argument("--sieve-cap", type=int,
                            default=arith.DEFAULT_PRIME_CAP if defaults else argparse.SUPPRESS,
                            help=f"number of primes the sieve may grow to (default: {arith.DEFAULT_PRIME_CAP})")
        return parent

    common = shared(defaults=False)
    p = argparse.ArgumentParser(prog="lcmclosed", description=__doc__.splitlines()[0], parents=[shared(True)])
    sub = p.add_subparsers(dest="command", required=True)

    def with_input(name, kinds, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.add_argument("kind", choices=kinds)
        sp.add_argument("input", help="inline JSON, a file path, or - for stdin")
        return sp

    with_input("check", ("numset", "family"), help="closedness and conjecture verdicts")
    with_input("closure", ("lcm", "gcd", "union", "intersection"), help="closure of a set or family")
    sp = with_input("abundance", ("numset", "family"), help="abundance report")
    sp.add_argument("--all-divisors", action="store_true", help="also list abundant non-prime divisors")
    sp.add_argument("--limit", type=int, default=10_000)
    with_input("dual", ("numset", "family"), help="lcm-complement dual or complement dual")
    with_input("convert", ("numset", "family"), help="translate between the two representations")
    with_input("known-cases", ("numset", "family"), help="evaluate the known sufficient conditions")

    sp = sub.add_parser("enumerate", parents=[common], help="exhaustive scan of all families on {1..n}")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--workers", type=int, default=None)
    sp.add_argument("--checkpoint", default=None)
    sp.add_argument("--allow-five", action="store_true", help="permit n = 5 (2^32 candidates)")
    sp.add_argument("--progress", action="store_true")

    sp = sub.add_parser("gen", parents=[common], help="generate instances")
    sp.add_argument("kind", choices=("closed-numset", "periods"))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--size", type=int, default=4, help="number of random seeds to close")
    sp.add_argument("--max-prime-index", type=int, default=3)
    sp.add_argument("--max-exponent", type=int, default=2)
    sp.add_argument("--closure", choices=("lcm", "gcd"), default="lcm")
    sp.add_argument("--max-members", type=int, default=None)
    sp.add_argument("--image", default=None, help="map as comma-separated images of 1..k")
    sp.add_argument("--points", type=int, default=8, help="size of a random permutation")
    sp.add_argument("--subset", default=None, help="comma-separated points; default all")
    return p


def to_config(ns: argparse.Namespace) -> RunConfig:
    workers = getattr(ns, "workers", None)
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1"))
    skip = {"command", "kind", "input", "format", "sieve_cap", "workers"}
    return RunConfig(
        command=ns.command,
        kind=getattr(ns, "kind", None),
        source=getattr(ns, "input", None),
        fmt=ns.format,
        workers=workers,
        sieve_cap=ns.sieve_cap,
        options={k: v for k, v in vars(ns).items() if k not in skip},
    )


def render_table(payload, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for key in sorted(payload):
        val = payload[key]
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render_table(val, indent + 1))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}:")
            cols = sorted(val[0])
            lines.append(pad + "  " + "  ".join(f"{c:>14}" for c in cols))
            for row in val:
                lines.append(pad + "  " + "  ".join(f"{_cell(row[c]):>14}" for c in cols))
        else:
            lines.append(f"{pad}{key}: {_cell(val)}")
    return "\n".join(lines)


def _cell(v) -> str:
    if isinstance(v, dict):
        return " ".join(f"{k}={_cell(x)}" for k, x in v.items())
    if isinstance(v, list):
        return "[" + ", ".join(_cell(x) for x in v) + "]"
    if v is None:
        return "-"
    return str(v)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = to_config(ns)
        with arith.sieve_cap(cfg.sieve_cap):
            outcome = COMMANDS[cfg.command](cfg)
    except (ValueError, ArithmeticError, RuntimeError, OSError, KeyError) as exc:
        print(f"lcmclosed: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if cfg.fmt == "json":
        print(json.dumps(outcome.payload, sort_keys=True, indent=2))
    else:
        print(render_table(outcome.payload))
    return EXIT_VIOLATION if outcome.violation else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
