"""Command-line front end.

Exit status: 0 success, 1 usage or pattern error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bench as _bench
from .circuit import CircuitLimitError, compile_pattern, show_letter
from .codegen import BACKENDS, DEFAULT_BACKEND, UnknownBackendError, emit
from .engine import KERNELS, MatchMode, run_file
from .families import Family, PatternSpec
from .positions import analyze, format_set
from .syntax import ParseError, mark, node_label, parse, render_marked

EXIT_OK, EXIT_USAGE, EXIT_IO = 0, 1, 2

MODES = {m.value: m for m in MatchMode}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def inspect_record(pattern: str, mode: MatchMode = MatchMode.FULL) -> dict:
    """Everything ``inspect`` shows, as plain data."""
    expr = parse(pattern)
    marked = mark(expr)
    a = analyze(marked)
    circuit = compile_pattern(pattern, MatchMode(mode).start_mode)
    return {
        "pattern": pattern,
        "marked": render_marked(marked.root),
        "size": marked.size,
        "eps": a.eps,
        "outs": sorted(a.outs),
        "nodes": [
            {"node": node_label(n.node), "depth": n.depth, "eps": n.eps, "outs": sorted(n.outs)}
            for n in a.nodes()
        ],
        "triggers": [
            {"position": p, "letter": show_letter(sym), "trigger_set": list(ts)}
            for p, sym, ts in (t.as_tuple() for t in a.triggers)
        ],
        "circuit": circuit.dump().splitlines(),
    }


def inspect_text(pattern: str, mode: MatchMode = MatchMode.FULL) -> str:
    rec = inspect_record(pattern, mode)
    out = [
        f"pattern: {rec['pattern']}",
        f"marked:  {rec['marked']}",
        f"size:    {rec['size']}",
        "",
        "annotations",
    ]
    labels = ["  " * n["depth"] + n["node"] for n in rec["nodes"]]
    w = max(len("node"), *(len(s) for s in labels))
    out.append(f"  {'node'.ljust(w)}  eps  outs")
    for label, n in zip(labels, rec["nodes"]):
        out.append(f"  {label.ljust(w)}  {int(n['eps'])}    {format_set(n['outs'])}")
    out += ["", "triggers", "  position  letter  trigger set"]
    for t in rec["triggers"]:
        out.append(f"  {t['position']:<8}  {t['letter']:<6}  {format_set(t['trigger_set'])}")
    out += ["", f"outputs: {format_set(rec['outs'])}", "", "circuit"]
    out += ["  " + line for line in rec["circuit"]]
    return "\n".join(out) + "\n"


def cmd_inspect(args):
    mode = MODES[args.mode]
    if args.json:
        print(json.dumps(inspect_record(args.pattern, mode), ensure_ascii=False, indent=2))
    else:
        sys.stdout.write(inspect_text(args.pattern, mode))
    return EXIT_OK


def cmd_match(args):
    mode = MODES[args.mode]
    if args.oracle:
        from .oracle import oracle_match

        with open(args.input, "rb") as fh:
            data = fh.read()
        print(int(oracle_match(parse(args.pattern), data, mode)))
        return EXIT_OK
    circuit = compile_pattern(args.pattern, mode.start_mode)
    result = run_file(circuit, args.input, mode, kernel=args.kernel)
    print(int(result.accepted))
    return EXIT_OK


def cmd_gen_input(args):
    alphabet = args.alphabet.encode("utf-8")
    if not alphabet:
        raise ValueError("alphabet is empty")
    data = _bench.random_corpus(alphabet, args.size, args.seed)
    if args.out == "-":
        sys.stdout.buffer.write(data)
    else:
        with open(args.out, "wb") as fh:
            fh.write(data)
    return EXIT_OK


def cmd_gen_pattern(args):
    spec = PatternSpec(Family(args.family), args.n)
    print(spec.pattern)
    return EXIT_OK


def cmd_bench(args):
    report = _bench.bench(
        args.pattern, args.input, MODES[args.mode], args.runs, kernel=args.kernel
    )
    if args.format == "json":
        print(json.dumps(report.as_dict(), indent=2))
    elif args.format == "keys":
        sys.stdout.write(report.to_text())
    else:
        sys.stdout.write(report.to_table())
    return EXIT_OK


def cmd_codegen(args):
    mode = MODES[args.mode]
    circuit = compile_pattern(args.pattern, mode.start_mode)
    program = emit(circuit, mode, args.backend)
    if args.out == "-":
        sys.stdout.write(program.source_text)
    else:
        with open(args.out, "w") as fh:
            fh.write(program.source_text)
    return EXIT_OK


def _size(text: str) -> int:
    """Byte count with optional K/M/G (decimal) or KiB/MiB/GiB suffix."""
    t = text.strip()
    units = {
        "kib": 1 << 10, "mib": 1 << 20, "gib": 1 << 30,
        "k": 10**3, "m": 10**6, "g": 10**9,
    }
    for suffix, mult in units.items():
        if t.lower().endswith(suffix):
            value = int(float(t[: -len(suffix)]) * mult)
            break
    else:
        value = int(t)
    if value < 0:
        raise argparse.ArgumentTypeError("size must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="seqcircuit", description="Regular expressions as sequential circuits.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    kernels = ["auto", *sorted(KERNELS)]

    def add_mode(sp, default):
        sp.add_argument("--mode", choices=list(MODES), default=default,
                        help=f"full, suffix or anywhere (default {default})")

    sp = sub.add_parser("inspect", help="show marking, eps/outs, trigger sets and the circuit")
    sp.add_argument("pattern")
    add_mode(sp, "full")
    sp.add_argument("--json", action="store_true", help="machine-readable dump")
    sp.set_defaults(func=cmd_inspect)

    sp = sub.add_parser("match", help="print 1 if the file matches, else 0")
    sp.add_argument("pattern")
    sp.add_argument("input")
    add_mode(sp, "suffix")
    sp.add_argument("--kernel", choices=kernels, default="auto")
    sp.add_argument("--oracle", action="store_true", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_match)

    sp = sub.add_parser("gen-input", help="write a uniform random corpus")
    sp.add_argument("--alphabet", default="abcdefghijklmnopqrstuvwxyz")
    sp.add_argument("--size", type=_size, default=_bench.DESK_CORPUS,
                    help="bytes; accepts K/M/G and KiB/MiB/GiB (default 8MiB)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", required=True, help="output path, or - for stdout")
    sp.set_defaults(func=cmd_gen_input)

    sp = sub.add_parser("gen-pattern", help="print a benchmark family pattern")
    sp.add_argument("family", choices=[f.value for f in Family])
    sp.add_argument("n", type=int, nargs="?")
    sp.set_defaults(func=cmd_gen_pattern)

    sp = sub.add_parser("bench", help="time matching, minimum over runs")
    sp.add_argument("pattern")
    sp.add_argument("input")
    add_mode(sp, "suffix")
    sp.add_argument("--runs", type=int, default=10)
    sp.add_argument("--kernel", choices=kernels, default="auto")
    sp.add_argument("--format", choices=["table", "keys", "json"], default="table")
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("codegen", help="emit a standalone matcher program")
    sp.add_argument("pattern")
    add_mode(sp, "suffix")
    sp.add_argument("--backend", choices=sorted(BACKENDS), default=DEFAULT_BACKEND)
    sp.add_argument("--out", default="-")
    sp.set_defaults(func=cmd_codegen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"seqcircuit: syntax error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CircuitLimitError, UnknownBackendError, ValueError) as exc:
        print(f"seqcircuit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"seqcircuit: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
