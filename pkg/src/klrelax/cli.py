"""Command-line front end.

Exit status: 0 on success, 1 on bad input, 2 when a verification or scan
finds a failing case.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import closed_forms as cf
from .analysis import verify_relaxation
from .errors import InputFormatError, KLRelaxError
from .io import load_matroid, matroid_to_dict, parse_constructor
from .kl import kl_triple
from .lattice import flat_counts
from .matroid import (
    Matroid,
    circuit_hyperplanes,
    free_bases,
    is_sparse_paving,
    members,
    relax,
    structure,
    to_mask,
    unrelax,
)
from .poly import Poly, render
from .scan import CHECKS, DEFAULT_MAX_N, SUPPORTED_MAX_N, scan_sparse_paving

EXIT_OK, EXIT_INPUT, EXIT_FAILED = 0, 1, 2


class _Fail(Exception):
    """Raised by a command that completed but found a failing case."""


def _which(text: str) -> list[str]:
    names = [w.strip().upper() for w in text.split(",") if w.strip()]
    bad = [w for w in names if w not in ("P", "Q", "Z")]
    if bad or not names:
        raise InputFormatError(f"--which takes a subset of P,Q,Z, got {text!r}")
    return names


def _subset(text: str) -> int:
    try:
        return to_mask(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise InputFormatError(f"expected comma-separated elements, got {text!r}") from None


def _matroid(args) -> Matroid:
    if args.input and args.matroid:
        raise InputFormatError("give either a constructor string or --input, not both")
    if args.input:
        return load_matroid(args.input)
    if args.matroid:
        return parse_constructor(args.matroid)
    raise InputFormatError("no matroid given: pass a constructor string or --input FILE")


def _polys(triple, which) -> dict:
    polys = {"P": triple.P, "Q": triple.Q, "Z": triple.Z}
    return {w: polys[w] for w in which}


def _emit(args, payload, text: str | None = None) -> None:
    if args.format == "json":
        print(json.dumps(_jsonable(payload)))
    else:
        print(text if text is not None else _text(payload))


def _jsonable(x):
    if isinstance(x, Poly):
        return x.to_list()
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _text(payload, indent: str = "") -> str:
    lines = []
    for key, value in payload.items():
        if isinstance(value, Poly):
            lines.append(f"{indent}{key} = {render(value)}")
        elif isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_text(value, indent + "  "))
        else:
            lines.append(f"{indent}{key}: {value}")
    return "\n".join(lines)


def _table(rows: list[tuple[int, Poly]], title: str) -> str:
    width = max((p.degree + 1 for _, p in rows), default=1)
    cells = [[str(k)] + [str(p[i]) if i <= p.degree else "" for i in range(width)] for k, p in rows]
    head = ["k"] + [str(i) for i in range(width)]
    widths = [max(len(r[c]) for r in cells + [head]) for c in range(width + 1)]
    fmt = lambda r: "  ".join(s.rjust(w) for s, w in zip(r, widths))  # noqa: E731
    return "\n".join([title, fmt(head)] + [fmt(r) for r in cells])


# -- commands ----------------------------------------------------------------


def cmd_compute(args) -> None:
    M = _matroid(args)
    triple = kl_triple(M)
    _emit(args, _polys(triple, _which(args.which)))


def cmd_relax(args) -> None:
    M = _matroid(args)
    if args.all:
        targets = circuit_hyperplanes(M)
    elif args.hyperplane:
        targets = [_subset(args.hyperplane)]
    else:
        raise InputFormatError("relax needs --hyperplane i,j,... or --all")
    which = _which(args.which)
    results = []
    for H in targets:
        R = relax(M, H)
        results.append({"hyperplane": members(H), "matroid": matroid_to_dict(R), **_polys(kl_triple(R), which)})
    if args.format == "json":
        print(json.dumps(_jsonable(results if args.all else results[0])))
    else:
        for r in results:
            print(f"relaxed {r['hyperplane']}: {len(r['matroid']['bases'])} bases")
            print(_text({w: r[w] for w in which}, "  "))


def cmd_unrelax(args) -> None:
    M = _matroid(args)
    if args.all:
        targets = free_bases(M)
    elif args.basis:
        targets = [_subset(args.basis)]
    else:
        raise InputFormatError("unrelax needs --basis i,j,... or --all")
    which = _which(args.which)
    results = []
    for B in targets:
        N = unrelax(M, B)
        results.append({"basis": members(B), "matroid": matroid_to_dict(N), **_polys(kl_triple(N), which)})
    if args.format == "json":
        print(json.dumps(_jsonable(results if args.all else results[0])))
    else:
        for r in results:
            print(f"removed free basis {r['basis']}: {len(r['matroid']['bases'])} bases")
            print(_text({w: r[w] for w in which}, "  "))


def cmd_delta(args) -> None:
    if args.up_to is not None:
        ks = range(1, args.up_to + 1)
        sets = [cf.delta_set(k) for k in ks]
        if args.format == "json":
            print(json.dumps([d.as_dict() for d in sets]))
        else:
            for name in "pqz":
                print(_table([(d.k, getattr(d, name)) for d in sets], f"[t^i]{name}_k"))
                print()
        return
    if args.k is None:
        raise InputFormatError("delta needs -k K or --up-to K")
    d = cf.delta_set(args.k)
    _emit(args, {"p": d.p, "q": d.q, "z": d.z})


def cmd_uniform(args) -> None:
    t = cf.uniform_triple(args.k, args.n)
    _emit(args, _polys(t, _which(args.which)))


def cmd_sparse(args) -> None:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", cf.LambdaExceedsBound)
        t = cf.sparse_paving_triple(args.n, args.k, args.lam)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    _emit(args, _polys(t, _which(args.which)))


def cmd_scan(args) -> None:
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    if args.max_n > SUPPORTED_MAX_N:
        raise InputFormatError(f"--max-n above {SUPPORTED_MAX_N} is not supported")
    if args.max_n > DEFAULT_MAX_N and not args.allow_large:
        raise InputFormatError(f"--max-n above {DEFAULT_MAX_N} needs --allow-large")
    try:
        report = scan_sparse_paving(args.max_n, checks, jobs=args.jobs, method=args.method,
                                    allow_large=args.allow_large)
    except ValueError as exc:
        raise InputFormatError(str(exc)) from None
    if args.jsonl:
        with open(args.jsonl, "w") as fh:
            report.write_jsonl(fh)
    if args.format == "json":
        print(json.dumps({**report.summary(), "failing_entries": list(report.failures())}))
    else:
        print(report.summary_text())
        for row in report.failures():
            print("  failed:", json.dumps(row))
    if not report.ok:
        raise _Fail


def cmd_verify(args) -> None:
    M = _matroid(args)
    targets = [_subset(args.hyperplane)] if args.hyperplane else circuit_hyperplanes(M)
    if not targets:
        raise InputFormatError("the matroid has no circuit-hyperplane to relax")
    reports = [verify_relaxation(M, H) for H in targets]
    if args.format == "json":
        print(json.dumps([r.as_dict() for r in reports]))
    else:
        for r in reports:
            status = "pass" if r.passed else "FAIL"
            print(f"{status} hyperplane {r.hyperplane}")
            for c in r.checks:
                print(f"  {'ok  ' if c.passed else 'FAIL'} {c.name}{': ' + c.detail if c.detail else ''}")
    if not all(r.passed for r in reports):
        raise _Fail


def cmd_info(args) -> None:
    M = _matroid(args)
    s = structure(M)
    payload = {
        "label": M.label,
        "n": M.n,
        "k": M.k,
        "bases": len(M.bases),
        "flat_counts": list(flat_counts(M)),
        "loops": members(s.loops),
        "coloops": members(s.coloops),
        "connected": s.connected,
        "sparse_paving": is_sparse_paving(M),
        "circuit_hyperplanes": [members(H) for H in circuit_hyperplanes(M)],
        "free_bases": [members(B) for B in free_bases(M)],
    }
    _emit(args, payload)


# -- parser ------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are input errors; status 2 is reserved for failed checks
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=None,
                        help="output format (default: json unless stdout is a terminal)")

    source = _Parser(add_help=False)
    source.add_argument("matroid", nargs="?", help="constructor string such as wheel:5 or uniform:3,6")
    source.add_argument("--input", metavar="FILE", help="matroid JSON file")

    which = _Parser(add_help=False)
    which.add_argument("--which", default="P,Q,Z", help="polynomials to print (default P,Q,Z)")

    p = _Parser(prog="klrelax", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common, source, which], help="P, Q and Z of a matroid")
    c.set_defaults(func=cmd_compute)

    c = sub.add_parser("relax", parents=[common, source, which], help="relax a circuit-hyperplane")
    c.add_argument("--hyperplane", metavar="i,j,...")
    c.add_argument("--all", action="store_true", help="relax each circuit-hyperplane in turn")
    c.set_defaults(func=cmd_relax)

    c = sub.add_parser("unrelax", parents=[common, source, which], help="remove a free basis")
    c.add_argument("--basis", metavar="i,j,...")
    c.add_argument("--all", action="store_true", help="remove each free basis in turn")
    c.set_defaults(func=cmd_unrelax)

    c = sub.add_parser("delta", parents=[common], help="relaxation deltas p_k, q_k, z_k")
    c.add_argument("-k", type=int)
    c.add_argument("--up-to", type=int, metavar="K", help="all k from 1 to K, as tables")
    c.set_defaults(func=cmd_delta)

    c = sub.add_parser("uniform", parents=[common, which], help="P, Q, Z of U(k,n)")
    c.add_argument("-k", type=int, required=True)
    c.add_argument("-n", type=int, required=True)
    c.set_defaults(func=cmd_uniform)

    c = sub.add_parser("sparse", parents=[common, which], help="P, Q, Z of a sparse paving matroid")
    c.add_argument("-n", type=int, required=True)
    c.add_argument("-k", type=int, required=True)
    c.add_argument("--lambda", dest="lam", type=int, required=True, help="number of circuit-hyperplanes")
    c.set_defaults(func=cmd_sparse)

    c = sub.add_parser("scan", parents=[common], help="check every sparse paving (n, k, lambda)")
    c.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    c.add_argument("--allow-large", action="store_true", help=f"permit --max-n up to {SUPPORTED_MAX_N}")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--checks", default=",".join(CHECKS))
    c.add_argument("--method", choices=("interval", "direct"), default="interval")
    c.add_argument("--jsonl", metavar="FILE", help="write one JSON line per (n, k, lambda)")
    c.set_defaults(func=cmd_scan)

    c = sub.add_parser("verify", parents=[common, source], help="check the relaxation identities")
    c.add_argument("--hyperplane", metavar="i,j,...", help="default: every circuit-hyperplane")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("info", parents=[common, source], help="structural summary of a matroid")
    c.set_defaults(func=cmd_info)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "text" if sys.stdout.isatty() else "json"
    try:
        args.func(args)
    except _Fail:
        return EXIT_FAILED
    except KLRelaxError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
