"""``idem`` command line.

Exit codes: 0 success, 1 a law fails or the input is outside an operation's
domain (the message or witness is printed), 2 the input cannot be parsed or
the invocation is malformed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import exttensor as ext
from .formats import (
    ParseError,
    format_kernel,
    format_label,
    format_point,
    format_tensor,
    format_vector,
    parse_kernel,
    parse_module,
    parse_points,
    parse_polymap,
    parse_semiring,
    parse_vector,
    resolve_semiring,
)
from .freetensor import outer
from .kernelop import apply, canonical_p, compose, kron, nuclear_decompose
from .semiring import DomainError, Semiring, validate_semiring
from .suites import DEFAULT_SEED, SUITES, run_suite


class UsageError(Exception):
    pass


def _read(path: str) -> tuple[str, Path]:
    p = Path(path)
    try:
        return p.read_text(), p.parent
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None


def _load(parser, path: str):
    text, base = _read(path)
    return parser(text, base)


def _check_semiring(args, k: Semiring) -> None:
    """``--semiring`` pins the semiring the input files must declare."""
    if args.semiring is None:
        return
    want = resolve_semiring(args.semiring, ".")
    if want != k:
        raise DomainError(f"input is over {k.name}, not {want.name}")


def _emit_kernel(args, M) -> list[str]:
    if args.format == "lines":
        k = M.semiring
        out = [f"semiring {k.name}", f"shape {len(M.domain)} {len(M.codomain)}"]
        out += [f"entry {format_label(x)} {format_label(y)} {k.format(M[x, y])}"
                for x in M.domain for y in M.codomain]
        return out
    return format_kernel(M).splitlines()


def _emit_vector(args, v) -> list[str]:
    if args.format == "lines":
        k = v.semiring
        return [f"semiring {k.name}"] + [f"value {format_label(x)} {k.format(c)}"
                                         for x, c in v.items()]
    return format_vector(v).splitlines()


# -- subcommands --------------------------------------------------------------


def cmd_validate(args) -> tuple[int, list[str]]:
    if args.path is None:
        if args.semiring is None:
            raise UsageError("validate needs a file or --semiring")
        k = resolve_semiring(args.semiring, ".")
        report, subject = validate_semiring(k), f"semiring {k.name}"
    else:
        text, base = _read(args.path)
        head = next((ln.split("#", 1)[0].split() for ln in text.splitlines()
                     if ln.split("#", 1)[0].strip()), [""])
        if head[0] == "semiring":
            k = parse_semiring(text)
            _check_semiring(args, k)
            report, subject = validate_semiring(k), f"semiring {k.name}"
        elif head[0] == "module":
            m = parse_module(text, base)
            _check_semiring(args, m.semiring)
            report, subject = ext.validate_semimodule(m), f"module dim {m.dim} size {len(m)}"
        elif head[0] == "polymap":
            f = parse_polymap(text, base)
            _check_semiring(args, f.codomain.semiring)
            report, subject = ext.validate_polylinear(f), f"polymap factors {len(f.factors)}"
        else:
            raise ParseError(f"{args.path}: unknown file kind {head[0]!r}")
    if args.format == "lines":
        out = [f"subject {subject}"]
        for c in report.checks:
            line = f"check {c.name} {c.status}"
            if c.passed is False:
                line += f" witness {c.detail}"
            out.append(line)
        out.append(f"result {'ok' if report.ok else 'fail'}")
    else:
        out = [subject] + [f"  {ln}" for ln in report.lines()]
        out.append("ok" if report.ok else f"FAIL {report.failures()[0].name}")
    return (0 if report.ok else 1), out


def cmd_apply(args):
    M = _load(parse_kernel, args.kernel)
    v = _load(parse_vector, args.vector)
    _check_semiring(args, M.semiring)
    return 0, _emit_vector(args, apply(M, v))


def cmd_compose(args):
    M = _load(parse_kernel, args.first)
    N = _load(parse_kernel, args.second)
    _check_semiring(args, M.semiring)
    return 0, _emit_kernel(args, compose(M, N))


def cmd_kron(args):
    Ms = [_load(parse_kernel, p) for p in args.kernels]
    _check_semiring(args, Ms[0].semiring)
    return 0, _emit_kernel(args, kron(*Ms))


def cmd_outer(args):
    vs = [_load(parse_vector, p) for p in args.vectors]
    _check_semiring(args, vs[0].semiring)
    t = outer(*vs)
    if args.format == "lines":
        k = t.semiring
        out = [f"semiring {k.name}", "shape " + " ".join(str(len(f)) for f in t.factors)]
        out += [f"coeff {format_label(x)} {k.format(c)}" for x, c in t.coeffs.items()]
        return 0, out
    return 0, format_tensor(t).splitlines()


def cmd_nuclear(args):
    M = _load(parse_kernel, args.kernel)
    _check_semiring(args, M.semiring)
    k = M.semiring
    terms = nuclear_decompose(M)
    ok = canonical_p(terms, M.domain, M.codomain, k) == M
    sep = " " if args.format == "lines" else ": "
    out = [f"semiring{sep}{k.name}", f"shape{sep}{len(M.domain)} {len(M.codomain)}",
           f"terms{sep}{len(terms)}"]
    for t in terms:
        a = " ".join(k.format(c) for c in t.functional.values)
        v = " ".join(k.format(c) for c in t.vector.values)
        out.append(f"term {a} ; {v}")
    out.append(f"recompose{sep}{'ok' if ok else 'fail'}")
    return (0 if ok else 1), out


def cmd_closure(args):
    if len(args.files) < 2:
        raise UsageError("closure needs at least one module file and a points file")
    factors = tuple(_load(parse_module, p) for p in args.files[:-1])
    _check_semiring(args, factors[0].semiring)
    text, _ = _read(args.files[-1])
    pts = parse_points(text, factors)
    t = ext.tau_hull(factors, pts)
    prefix = "point " if args.format == "lines" else ""
    return 0, [f"count {len(t)}"] + [prefix + format_point(p, factors) for p in t.sorted_points()]


def cmd_check(args):
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}")
    results = run_suite(args.suite, args.seed, args.size)
    out = []
    for r in results:
        status = "pass" if r.passed else "fail"
        if args.format == "lines":
            line = f"property {r.name.replace(' ', '_')} {status}"
        else:
            line = f"{status} {r.name}"
        if not r.passed and r.detail:
            line += f" {r.detail}"
        out.append(line)
    npass = sum(r.passed for r in results)
    out.append(f"passed {npass}/{len(results)}")
    return (0 if npass == len(results) else 1), out


# -- entry point --------------------------------------------------------------


def _seed(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("seed must be a nonnegative integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--semiring", help="builtin name or table file the inputs must use")
    common.add_argument("--format", choices=("text", "lines"), default="text")
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED,
                        help=f"seed for randomized suites (default {DEFAULT_SEED})")
    common.add_argument("--size", type=int, default=2, help="size cap for suites")

    parser = argparse.ArgumentParser(prog="idem", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("validate", parents=[common], help="check axioms of a file")
    p.add_argument("path", nargs="?")
    p.set_defaults(fn=cmd_validate)
    p = sub.add_parser("apply", parents=[common], help="apply a kernel to a vector")
    p.add_argument("kernel")
    p.add_argument("vector")
    p.set_defaults(fn=cmd_apply)
    p = sub.add_parser("compose", parents=[common], help="first then second")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(fn=cmd_compose)
    p = sub.add_parser("kron", parents=[common], help="Kronecker product of kernels")
    p.add_argument("kernels", nargs="+")
    p.set_defaults(fn=cmd_kron)
    p = sub.add_parser("outer", parents=[common], help="pure tensor of vectors")
    p.add_argument("vectors", nargs="+")
    p.set_defaults(fn=cmd_outer)
    p = sub.add_parser("nuclear", parents=[common], help="rank-one decomposition")
    p.add_argument("kernel")
    p.set_defaults(fn=cmd_nuclear)
    p = sub.add_parser("closure", parents=[common], help="tau-hull of points")
    p.add_argument("files", nargs="+", metavar="FILE", help="module files, then a points file")
    p.set_defaults(fn=cmd_closure)
    p = sub.add_parser("check", parents=[common], help="run a property suite")
    p.add_argument("suite")
    p.set_defaults(fn=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        code, lines = args.fn(args)
    except (ParseError, UsageError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    for line in lines:
        print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
