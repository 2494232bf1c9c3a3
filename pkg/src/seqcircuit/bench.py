"""Random corpora and throughput measurement.

Throughput is input size divided by the minimum elapsed time over repeated
runs. Two timings are kept per run: the match loop alone, and the match
loop plus reading the input file.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from pathlib import Path

from .circuit import Circuit, compile_pattern
from .engine import MatchMode, get_kernel, run

MB = 1_000_000
MIB = 1 << 20
DESK_CORPUS = 8 * MIB


def random_corpus(alphabet: bytes, size: int, seed: int = 0) -> bytes:
    """``size`` bytes drawn uniformly from ``alphabet``; same seed, same bytes."""
    symbols = bytes(alphabet)
    k = len(symbols)
    if k == 0:
        raise ValueError("alphabet is empty")
    if size < 0:
        raise ValueError("size must be non-negative")
    rng = random.Random(seed)
    # rejection keeps the choice uniform when k does not divide 256
    usable = 256 - 256 % k
    table = bytes(symbols[b % k] for b in range(256))
    reject = bytes(range(usable, 256))
    out = bytearray()
    while len(out) < size:
        chunk = rng.randbytes(min(max(size - len(out), 1024) * 2, 1 << 24))
        out += chunk.translate(table, reject)
    del out[size:]
    return bytes(out)


def write_corpus(path, alphabet: bytes, size: int, seed: int = 0) -> Path:
    path = Path(path)
    path.write_bytes(random_corpus(alphabet, size, seed))
    return path


@dataclass
class BenchReport:
    pattern: str
    mode: MatchMode
    input_bytes: int
    runs: int
    per_run_elapsed: list[float]
    per_run_total: list[float] = field(default_factory=list)
    kernel: str = ""
    build_seconds: float = 0.0
    accepted: bool | None = None

    def __post_init__(self):
        if self.runs < 1 or len(self.per_run_elapsed) != self.runs:
            raise ValueError("need one elapsed time per run, and runs >= 1")

    @property
    def min_elapsed(self) -> float:
        return min(self.per_run_elapsed)

    @property
    def min_total(self) -> float | None:
        return min(self.per_run_total) if self.per_run_total else None

    @property
    def throughput(self) -> float:
        """Bytes per second, against the fastest match-loop time."""
        return self.input_bytes / self.min_elapsed

    def as_dict(self) -> dict:
        d = {
            "pattern": self.pattern,
            "mode": self.mode.value,
            "kernel": self.kernel,
            "input_bytes": self.input_bytes,
            "runs": self.runs,
            "build_seconds": self.build_seconds,
            "min_elapsed": self.min_elapsed,
            "throughput": self.throughput,
            "throughput_mb_s": self.throughput / MB,
            "throughput_mib_s": self.throughput / MIB,
            "per_run_elapsed": self.per_run_elapsed,
        }
        if self.per_run_total:
            d["min_total_elapsed"] = self.min_total
            d["total_throughput_mb_s"] = self.input_bytes / self.min_total / MB
            d["per_run_total"] = self.per_run_total
        if self.accepted is not None:
            d["accepted"] = int(self.accepted)
        return d

    def to_text(self) -> str:
        """One ``key: value`` per line."""
        lines = []
        for k, v in self.as_dict().items():
            if isinstance(v, list):
                v = " ".join(f"{x:.6f}" for x in v)
            elif isinstance(v, float):
                v = f"{v:.6f}" if "elapsed" in k or "seconds" in k else f"{v:.3f}"
            lines.append(f"{k}: {v}")
        return "\n".join(lines) + "\n"

    def to_table(self) -> str:
        rows = [
            ("pattern", self.pattern),
            ("mode / kernel", f"{self.mode.value} / {self.kernel}"),
            ("input", f"{self.input_bytes:,} bytes"),
            ("runs", str(self.runs)),
            ("circuit build", f"{self.build_seconds * 1e3:.2f} ms"),
            ("min match time", f"{self.min_elapsed:.4f} s"),
            (
                "throughput",
                f"{self.throughput / MB:.1f} MB/s  ({self.throughput / MIB:.1f} MiB/s)",
            ),
        ]
        if self.per_run_total:
            rows.append(
                ("incl. file read", f"{self.min_total:.4f} s  "
                 f"({self.input_bytes / self.min_total / MB:.1f} MB/s)")
            )
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows) + "\n"


def time_match(circuit: Circuit, data: bytes, mode: MatchMode, runs: int = 10, *, kernel=None):
    """Elapsed seconds of ``runs`` full matches over ``data`` and the last result."""
    k = get_kernel(kernel) if not hasattr(kernel, "scan") else kernel
    circuit.handle(k)  # prepare outside the timed region
    times = []
    result = None
    for _ in range(runs):
        t0 = time.perf_counter()
        result = run(circuit, data, mode, kernel=k)
        times.append(time.perf_counter() - t0)
    return times, result


def bench(pattern: str, input_path, mode: MatchMode = MatchMode.SUFFIX, runs: int = 10, *, kernel=None) -> BenchReport:
    """Match the file ``runs`` times and report per-run and minimum timings."""
    if runs < 1:
        raise ValueError("runs must be >= 1")
    mode = MatchMode(mode)
    k = get_kernel(kernel) if not hasattr(kernel, "scan") else kernel
    t0 = time.perf_counter()
    circuit = compile_pattern(pattern, mode.start_mode)
    circuit.handle(k)
    build = time.perf_counter() - t0

    match_times, total_times = [], []
    size = 0
    result = None
    for _ in range(runs):
        t0 = time.perf_counter()
        data = Path(input_path).read_bytes()
        t1 = time.perf_counter()
        result = run(circuit, data, mode, kernel=k)
        t2 = time.perf_counter()
        size = len(data)
        del data
        match_times.append(t2 - t1)
        total_times.append(t2 - t0)
    return BenchReport(
        pattern, mode, size, runs, match_times, total_times,
        kernel=k.NAME, build_seconds=build, accepted=result.accepted,
    )
