"""Command-line interface: ``cnotperm <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .analysis import paper_verification_suite, phi_trace
from .errors import (
    BudgetExceededError,
    CnotPermError,
    InvalidInputError,
    TableFileError,
    UnsupportedSizeError,
)
from .gf2 import (
    Circuit,
    cycle_decompose,
    format_circuit,
    is_reducible,
    parse_bits,
    parse_circuit,
    parse_perm,
)
from .render import render_circuit, sparkline
from .search import (
    MAX_TABLE_N,
    DistanceTable,
    build_distance_table,
    enumerate_minimal_circuits,
    load_verified_table,
    lower_bound_rows,
    min_cnot_count,
    save_table,
    table_path,
    upper_bound_cycles,
)
from .symmetry import first_gate_families, group_into_classes, verify_table1

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(CnotPermError):
    pass


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # Same flags on the main parser and every subparser; subparser copies
    # suppress defaults so a flag given before the subcommand is not clobbered.
    def default(value):
        return argparse.SUPPRESS if suppress else value

    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("-n", "--n", dest="n", type=int, default=default(None), help="wire count")
    p.add_argument("--format", choices=("text", "json"), default=default("text"))
    p.add_argument("--cache-dir", type=Path, default=default(Path(".")),
                   help="directory holding cpdt-n{n}.bin tables (default: current directory)")
    p.add_argument("--budget", type=int, default=default(10**9),
                   help="maximum sequences a brute-force check may enumerate")
    p.add_argument("--skip-n5", action="store_true", default=default(False))
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cnotperm",
        description="Minimal CNOT circuits for wire permutations.",
        parents=[_global_flags(False)],
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    flags = [_global_flags(True)]

    p = sub.add_parser("bfs", parents=flags, help="build and save a distance table")
    p.add_argument("--out", type=Path, help="output file (default: <cache-dir>/cpdt-n{n}.bin)")

    p = sub.add_parser("count", parents=flags, help="minimal CNOT count and bounds for a permutation")
    p.add_argument("perm")
    p.add_argument("--table", type=Path)

    p = sub.add_parser("enumerate", parents=flags, help="list every minimal circuit")
    p.add_argument("perm")
    p.add_argument("--table", type=Path)
    p.add_argument("--limit", type=int)

    p = sub.add_parser("classes", parents=flags, help="group minimal circuits into rotation classes")
    p.add_argument("perm")
    p.add_argument("--table", type=Path)
    p.add_argument("--check-table1", action="store_true",
                   help="match the 30 reference strings for 231 against the classes")
    p.add_argument("--full-symmetric", action="store_true",
                   help="group under every wire relabeling instead of rotations")

    p = sub.add_parser("render", parents=flags, help="draw a circuit as text")
    p.add_argument("circuit")

    p = sub.add_parser("trace", parents=flags, help="Hamming weight after each gate")
    p.add_argument("circuit")
    p.add_argument("bits")
    p.add_argument("--spark", action="store_true", help="append a sparkline")

    sub.add_parser("verify-paper", parents=flags, help="check every reproduced claim")
    return parser


def _emit(args, text: str, payload) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _circuit_json(c: Circuit) -> dict:
    return {"text": format_circuit(c), "gates": c.pairs()}


def _perm_for(args):
    p = parse_perm(args.perm)
    if args.n is not None and args.n != p.n:
        raise UsageError(f"--n {args.n} disagrees with permutation length {p.n}")
    return p


def _table_for(args, n: int) -> DistanceTable:
    if n > MAX_TABLE_N or n < 2:
        raise UnsupportedSizeError(f"exact tables cover 2 <= n <= {MAX_TABLE_N}; got n={n}")
    explicit = getattr(args, "table", None)
    if explicit is not None:
        return load_verified_table(explicit, n)
    cached = table_path(args.cache_dir, n)
    if cached.exists():
        return load_verified_table(cached, n)
    if n > 3:
        print(f"note: no table at {cached}; building n={n} in memory", file=sys.stderr)
    return build_distance_table(n)


def cmd_bfs(args) -> int:
    if args.n is None:
        raise UsageError("bfs needs -n")
    table = build_distance_table(args.n)
    out = args.out if args.out is not None else table_path(args.cache_dir, args.n)
    save_table(table, out)
    hist = table.histogram()
    text = [f"n={args.n}: {table.element_count} elements, max distance {table.max_distance}",
            f"written to {out}"]
    text += [f"  {d:>3}: {count}" for d, count in hist.items()]
    _emit(args, "\n".join(text), {
        "n": args.n, "elements": table.element_count, "max_distance": table.max_distance,
        "histogram": {str(d): c for d, c in hist.items()}, "path": str(out),
    })
    return EXIT_OK


def cmd_count(args) -> int:
    p = _perm_for(args)
    lower, upper = lower_bound_rows(p), upper_bound_cycles(p)
    reducible = is_reducible(p)
    exact = None
    if 2 <= p.n <= MAX_TABLE_N:
        exact = min_cnot_count(p, _table_for(args, p.n))
    elif p.n == 1:
        exact = 0
    kind = "reducible" if reducible else "irreducible"
    cycles = " ".join("(" + " ".join(map(str, c)) + ")" for c in cycle_decompose(p))
    shown = exact if exact is not None else f"unknown (n={p.n} > {MAX_TABLE_N})"
    text = f"{p}: min CNOT count {shown}, bounds [{lower}, {upper}], {kind}, cycles {cycles}"
    _emit(args, text, {
        "perm": str(p), "n": p.n, "min_cnot_count": exact, "lower_bound": lower,
        "upper_bound": upper, "reducible": reducible,
        "cycles": [list(c) for c in cycle_decompose(p)],
    })
    return EXIT_OK


def cmd_enumerate(args) -> int:
    p = _perm_for(args)
    table = _table_for(args, p.n)
    circuits = enumerate_minimal_circuits(p, table, limit=args.limit)
    _emit(args, "\n".join(format_circuit(c) for c in circuits), {
        "perm": str(p), "length": min_cnot_count(p, table), "count": len(circuits),
        "circuits": [_circuit_json(c) for c in circuits],
    })
    return EXIT_OK


def cmd_classes(args) -> int:
    p = _perm_for(args)
    circuits = enumerate_minimal_circuits(p, _table_for(args, p.n))
    classes = group_into_classes(circuits, full_symmetric=args.full_symmetric)
    lines = [f"{format_circuit(k.representative)}  size {k.size}: "
             + " ".join(format_circuit(m) for m in k.members) for k in classes]
    sizes = sorted({k.size for k in classes})
    lines.append(f"{len(classes)} classes over {len(circuits)} circuits, sizes {sizes}")
    payload = {"perm": str(p), "circuits": len(circuits), "classes": [k.to_dict() for k in classes]}
    status = EXIT_OK
    if p.n == 3:
        fam = first_gate_families(classes)
        lines.append(f"first-gate families: ADE {fam['ADE']}, BCF {fam['BCF']}")
        payload["first_gate_families"] = fam
    if args.check_table1:
        if str(p) != "231":
            raise UsageError("--check-table1 applies to the permutation 231 only")
        report = verify_table1(classes)
        lines.append(f"reference table: {report.classes_hit}/{report.class_count} classes hit, "
                     f"{'full match' if report.full_match else 'MISMATCH'}")
        for s in report.non_realizing:
            lines.append(f"  does not realize 231: {s}")
        for s, other in report.duplicate_classes:
            lines.append(f"  {s} shares a class with {other}")
        payload["table1"] = report.to_dict()
        status = EXIT_OK if report.full_match else EXIT_FAIL
    _emit(args, "\n".join(lines), payload)
    return status


def _infer_n(args, circuit_text: str) -> int:
    if args.n is not None:
        return args.n
    stripped = circuit_text.strip()
    if stripped and all(ch in "ABCDEFabcdef \t" for ch in stripped):
        return 3
    wires = [int(w) for tok in stripped.split() if ">" in tok for w in tok.split(">") if w.isdigit()]
    if not wires:
        raise UsageError("cannot infer wire count; pass --n")
    return max(wires)


def cmd_render(args) -> int:
    c = parse_circuit(args.circuit, _infer_n(args, args.circuit))
    _emit(args, render_circuit(c), {"n": c.n, **_circuit_json(c), "diagram": render_circuit(c).split("\n")})
    return EXIT_OK


def cmd_trace(args) -> int:
    n = args.n if args.n is not None else len(parse_bits(args.bits))
    c = parse_circuit(args.circuit, n)
    tr = phi_trace(c, parse_bits(args.bits, n))
    text = " ".join(map(str, tr.weights))
    if args.spark:
        text += "  " + sparkline(tr.weights, n)
    _emit(args, text, {"circuit": _circuit_json(c), "input": list(tr.input), "weights": list(tr.weights)})
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    try:
        report = paper_verification_suite(skip_n5=args.skip_n5, cache_dir=args.cache_dir,
                                          budget=args.budget)
    except TableFileError as exc:
        _emit(args, f"integrity failure: {exc}", {"ok": False, "integrity_error": str(exc)})
        return EXIT_RESOURCE
    print(report.to_json() if args.format == "json" else report.to_text())
    return EXIT_OK if report.ok else EXIT_FAIL


COMMANDS = {
    "bfs": cmd_bfs,
    "count": cmd_count,
    "enumerate": cmd_enumerate,
    "classes": cmd_classes,
    "render": cmd_render,
    "trace": cmd_trace,
    "verify-paper": cmd_verify_paper,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, UnsupportedSizeError, InvalidInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TableFileError, BudgetExceededError, OSError, MemoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except CnotPermError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
