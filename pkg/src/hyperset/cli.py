"""``hyperset`` command line.

Exit codes: 0 success / true, 1 usage or parse error, 2 semantic error
(unknown root, not a graph), 3 negative verdict.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from typing import Optional

from . import settheory as st
from . import textio
from .axioms import Ops, faulty_ops, run_suites
from .core import Mode, default_store

EXIT_OK, EXIT_USAGE, EXIT_SEMANTIC, EXIT_FALSE = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass
class Config:
    mode: Mode = Mode.SET
    strict: bool = False
    max_exp: int = st.DEFAULT_MAX_EXP
    fmt: str = "text"

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "Config":
        max_exp = getattr(args, "max_exp", st.DEFAULT_MAX_EXP)
        env = os.environ.get("HYPERSET_MAX_EXP")
        if env is not None:
            try:
                max_exp = int(env)
            except ValueError:
                raise CliError(f"HYPERSET_MAX_EXP must be an integer, got {env!r}", EXIT_USAGE) from None
        if max_exp < 0:
            raise CliError("--max-exp must be non-negative", EXIT_USAGE)
        return cls(
            mode=Mode.MULTISET if getattr(args, "multiset", False) else Mode.SET,
            strict=getattr(args, "strict", False),
            max_exp=max_exp,
            fmt=getattr(args, "format", "text"),
        )


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(path: str, cfg: Config) -> textio.Lowered:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise CliError(f"{path}: {e.strerror}", EXIT_USAGE) from None
    try:
        return textio.load(text, cfg.strict)
    except textio.ParseError as e:
        raise CliError(f"{path}:{e}", EXIT_USAGE) from None


def _root(low: textio.Lowered, name: str, path: str, cfg: Config):
    if name not in low.names:
        raise CliError(f"{path}: unknown root {name!r}", EXIT_SEMANTIC)
    return default_store().intern(low.system, low[name], cfg.mode)


def cmd_solve(args, cfg: Config) -> int:
    low = _load(args.file, cfg)
    h = _root(low, args.root, args.file, cfg)
    out = textio.to_dot(h) if cfg.fmt == "dot" else textio.print_canonical(h)
    sys.stdout.write(out)
    return EXIT_OK


def cmd_eq(args, cfg: Config) -> int:
    a = _root(_load(args.file_a, cfg), args.root_a, args.file_a, cfg)
    b = _root(_load(args.file_b, cfg), args.root_b, args.file_b, cfg)
    same = a is b
    print("equal" if same else "not equal")
    return EXIT_OK if same else EXIT_FALSE


def cmd_member(args, cfg: Config) -> int:
    low = _load(args.file, cfg)
    z = _root(low, args.z, args.file, cfg)
    x = _root(low, args.x, args.file, cfg)
    yes = st.member(z, x)
    print(f"{'yes' if yes else 'no'}: {args.z} is {'' if yes else 'not '}a member of {args.x}")
    return EXIT_OK if yes else EXIT_FALSE


def cmd_wf(args, cfg: Config) -> int:
    h = _root(_load(args.file, cfg), args.root, args.file, cfg)
    ok = st.is_accessible(h)
    print("accessible" if ok else "non-wellfounded")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_dot(args, cfg: Config) -> int:
    low = _load(args.file, cfg)
    if args.root is None:
        sys.stdout.write(textio.to_dot(low.system))
    else:
        sys.stdout.write(textio.to_dot(_root(low, args.root, args.file, cfg)))
    return EXIT_OK


def cmd_axioms(args, cfg: Config) -> int:
    if args.cases < 1:
        raise CliError("--cases must be positive", EXIT_USAGE)
    ops = faulty_ops() if args.inject_fault else Ops()
    ops.max_exp = cfg.max_exp
    results, digest = run_suites(args.seed, args.cases, ops)
    print(f"seed {args.seed}, {args.cases} cases per suite, case digest {digest[:16]}")
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"{status}  {r.name} ({r.cases - r.failures}/{r.cases})"
        if r.first_failure:
            line += f"  first failure: {r.first_failure}"
        print(line)
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} suites passed")
    return EXIT_OK if failed == 0 else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--multiset", action="store_true", help="count multiplicities instead of collapsing them")
    common.add_argument("--strict", action="store_true", help="reject undefined identifiers")
    common.add_argument("--max-exp", type=int, default=st.DEFAULT_MAX_EXP, help="largest exponentiation to build")

    p = _Parser(prog="hyperset", description="Solve and query non-wellfounded set equations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", parents=[common], help="print the canonical form of a root")
    s.add_argument("file")
    s.add_argument("--root", required=True)
    s.add_argument("--format", choices=["text", "dot"], default="text")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("eq", parents=[common], help="exit 0 if two roots denote the same set")
    s.add_argument("file_a")
    s.add_argument("root_a")
    s.add_argument("file_b")
    s.add_argument("root_b")
    s.set_defaults(func=cmd_eq)

    s = sub.add_parser("member", parents=[common], help="decide Z in X")
    s.add_argument("file")
    s.add_argument("z")
    s.add_argument("x")
    s.set_defaults(func=cmd_member, set_only=True)

    s = sub.add_parser("wf", parents=[common], help="decide whether a root is well-founded")
    s.add_argument("file")
    s.add_argument("root")
    s.set_defaults(func=cmd_wf, set_only=True)

    s = sub.add_parser("dot", parents=[common], help="Graphviz export of a file or a root")
    s.add_argument("file")
    s.add_argument("--root")
    s.set_defaults(func=cmd_dot)

    s = sub.add_parser("axioms", parents=[common], help="run the randomized property suites")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--cases", type=int, default=200)
    s.add_argument("--inject-fault", action="store_true", help="break tupling to check that failures are reported")
    s.set_defaults(func=cmd_axioms)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = Config.from_args(args)
        if getattr(args, "set_only", False) and cfg.mode is Mode.MULTISET:
            raise CliError(f"{args.command} works on sets only", EXIT_USAGE)
        return args.func(args, cfg)
    except CliError as e:
        print(f"hyperset: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
