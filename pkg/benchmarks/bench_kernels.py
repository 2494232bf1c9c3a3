"""Throughput of the compiled kernel against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--size 1MiB] [--runs 5]

Each benchmark family runs in suffix mode over a random corpus drawn from
the family's alphabet. Timings are the minimum over ``--runs`` repetitions.
"""

from __future__ import annotations

import argparse

from seqcircuit import MatchMode, StartMode, compile_pattern
from seqcircuit.bench import MB, random_corpus, time_match
from seqcircuit.cli import _size
from seqcircuit.engine import KERNELS
from seqcircuit.families import Family, PatternSpec

SPECS = [
    PatternSpec(Family.RUNNING_EXAMPLE),
    PatternSpec(Family.ALPHABET_CHAIN),
    PatternSpec(Family.PREFIXED_ALPHABET_CHAIN),
    PatternSpec(Family.OPT_POW, 20),
    PatternSpec(Family.NONDET_SUFFIX, 10),
    PatternSpec(Family.NONDET_SUFFIX, 20),
    PatternSpec(Family.NONDET_SUFFIX, 30),
    PatternSpec(Family.NONDET_SUFFIX, 40),
]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=_size, default=1 << 20)
    ap.add_argument("--runs", type=int, default=5)
    args = ap.parse_args(argv)

    kernels = sorted(KERNELS, reverse=True)  # python first, then compiled
    head = f"{'pattern':<16}{'bits':>6}" + "".join(f"{k + ' MB/s':>17}" for k in kernels)
    if len(kernels) > 1:
        head += f"{'speedup':>10}"
    print(head)
    for spec in SPECS:
        circuit = compile_pattern(spec.pattern, StartMode.ANYWHERE)
        data = random_corpus(spec.alphabet, args.size, seed=1)
        rates = {}
        for name in kernels:
            times, _ = time_match(circuit, data, MatchMode.SUFFIX, args.runs, kernel=name)
            rates[name] = len(data) / min(times) / MB
        row = f"{str(spec):<16}{circuit.width:>6}" + "".join(f"{rates[k]:>17.2f}" for k in kernels)
        if len(kernels) > 1:
            row += f"{rates['compiled'] / rates['python']:>9.1f}x"
        print(row)
    if "compiled" not in KERNELS:
        print("compiled kernel not built; only the fallback was measured")


if __name__ == "__main__":
    main()
