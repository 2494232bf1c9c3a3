"""Emit standalone matcher programs specialised to one circuit.

Every backend produces a program with the same observable behaviour::

    prog <input-file>    prints "1" or "0" and a newline, exits 0
                         exits 2 with a message if the file can't be read

The program keeps one int per state bit and evaluates every next-state
function literally for each input byte.
"""

from __future__ import annotations

import hashlib
import os
import shutil
import subprocess
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .circuit import Circuit
from .engine import MatchMode, check_mode, default_mode


class UnknownBackendError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratedProgram:
    source_text: str
    backend_id: str
    circuit_fingerprint: str

    @property
    def suffix(self) -> str:
        return BACKENDS[self.backend_id].suffix


@dataclass(frozen=True)
class Backend:
    name: str
    suffix: str
    compiler_env: str
    compiler_default: str
    flags: tuple[str, ...]
    render: Callable[[Circuit, MatchMode], str]

    def compiler(self) -> str | None:
        return shutil.which(os.environ.get(self.compiler_env, self.compiler_default))

    def command(self, source: Path, output: Path) -> list[str]:
        cc = self.compiler()
        if cc is None:
            raise FileNotFoundError(f"no {self.compiler_default} on PATH")
        return [cc, *self.flags, "-o", str(output), str(source)]


BACKENDS: dict[str, Backend] = {}


def register(backend: Backend) -> Backend:
    BACKENDS[backend.name] = backend
    return backend


def fingerprint(circuit: Circuit) -> str:
    return hashlib.sha256(circuit.dump().encode("utf-8")).hexdigest()


def _char_literal(symbol: int) -> str:
    c = chr(symbol)
    if 0x20 <= symbol < 0x7F and c not in "'\\":
        return f"'{c}'"
    return str(symbol)


def _comment_text(circuit: Circuit) -> str:
    if circuit.source is None:
        return "<expression>"
    # keep the comment on one line and free of "*/"
    text = circuit.source.decode("utf-8", "backslashreplace")
    return text.replace("*/", "*\\/").replace("\n", "\\n").replace("\r", "\\r")


def _update_lines(circuit: Circuit, indent: str) -> list[str]:
    start = "1; // Start anywhere" if circuit.start_bit else "0; // Start at the first letter"
    lines = [f"{indent}next_state[0] = {start}"]
    for t in circuit.triggers:
        prev = " or ".join(f"state[{j}]" for j in sorted(t.trigger_set))
        lines.append(
            f"{indent}next_state[{t.position}] = "
            f"(letter == {_char_literal(t.letter)}) and ({prev});"
        )
    return lines


def _output_expr(circuit: Circuit) -> str:
    terms = [f"state[{i}]" for i in sorted(circuit.output_set)]
    if circuit.skippable:
        terms.append("state[0]")
    return " or ".join(terms)


def _header(circuit: Circuit, mode: MatchMode, prefix: str) -> list[str]:
    notes = {
        MatchMode.FULL: "match the whole input",
        MatchMode.SUFFIX: "match a suffix of the input",
        MatchMode.ANYWHERE: "match anywhere in the input",
    }
    lines = [
        f"{prefix} Sequential circuit matcher for {_comment_text(circuit)}",
        f"{prefix} {circuit.width} state bits; mode: {notes[mode]}.",
    ]
    if circuit.skippable:
        lines.append(
            f"{prefix} The expression matches the empty word, so state[0] is an"
            " output bit and an empty file prints 1."
        )
    return lines


def _render_cpp(circuit: Circuit, mode: MatchMode) -> str:
    n = circuit.width
    init = ",".join(["1"] + ["0"] * circuit.size)
    zero = ",".join(["0"] * n)
    out = _output_expr(circuit)
    src = _header(circuit, mode, "//")
    src += [
        "#include <cstring>",
        "#include <fstream>",
        "#include <iostream>",
        "#include <iterator>",
        "#include <string>",
        "",
        "int main(int argc, char **argv) {",
        "\tif (argc != 2) {",
        '\t\tstd::cerr << "usage: " << argv[0] << " <input-file>" << std::endl;',
        "\t\treturn 2;",
        "\t}",
        f"\tint state[{n}] = {{{init}}};",
        f"\tint next_state[{n}] = {{{zero}}};",
        "\tstd::ifstream ifs(argv[1], std::ios::binary);",
        "\tif (!ifs) {",
        '\t\tstd::cerr << "cannot read " << argv[1] << std::endl;',
        "\t\treturn 2;",
        "\t}",
        "\tstd::string word((std::istreambuf_iterator<char>(ifs)),(std::istreambuf_iterator<char>()));",
    ]
    if mode is MatchMode.ANYWHERE:
        src.append(f"\tint accepted = {out};")
        src.append("\tfor (size_t n = 0; n < word.size() && !accepted; ++n) {")
    else:
        src.append("\tfor (char c : word) {")
    src.append(
        "\t\tunsigned char letter = static_cast<unsigned char>("
        + ("word[n]" if mode is MatchMode.ANYWHERE else "c")
        + ");"
    )
    src += _update_lines(circuit, "\t\t")
    src.append("\t\tstd::memcpy(state, next_state, sizeof(state));")
    if mode is MatchMode.ANYWHERE:
        src.append(f"\t\taccepted = {out};")
        src.append("\t}")
        src.append("\tstd::cout << (accepted ? 1 : 0) << std::endl;")
    else:
        src.append("\t}")
        src.append(f"\tstd::cout << (({out}) ? 1 : 0) << std::endl;")
    src += ["\treturn 0;", "}", ""]
    return "\n".join(src)


def _render_c(circuit: Circuit, mode: MatchMode) -> str:
    n = circuit.width
    init = ",".join(["1"] + ["0"] * circuit.size)
    zero = ",".join(["0"] * n)
    out = _output_expr(circuit).replace(" or ", " || ")
    src = _header(circuit, mode, "//")
    src += [
        "#include <stdio.h>",
        "#include <string.h>",
        "",
        "int main(int argc, char **argv) {",
        "\tif (argc != 2) {",
        '\t\tfprintf(stderr, "usage: %s <input-file>\\n", argv[0]);',
        "\t\treturn 2;",
        "\t}",
        '\tFILE *fp = fopen(argv[1], "rb");',
        "\tif (!fp) {",
        '\t\tfprintf(stderr, "cannot read %s\\n", argv[1]);',
        "\t\treturn 2;",
        "\t}",
        f"\tint state[{n}] = {{{init}}};",
        f"\tint next_state[{n}] = {{{zero}}};",
        "\tunsigned char buf[1 << 16];",
        "\tsize_t got;",
    ]
    lines = _update_lines(circuit, "\t\t\t")
    lines = [ln.replace(" and ", " && ").replace(" or ", " || ") for ln in lines]
    if mode is MatchMode.ANYWHERE:
        src.append(f"\tint accepted = {out};")
        src.append("\twhile (!accepted && (got = fread(buf, 1, sizeof(buf), fp)) > 0) {")
        src.append("\t\tfor (size_t n = 0; n < got && !accepted; ++n) {")
    else:
        src.append("\twhile ((got = fread(buf, 1, sizeof(buf), fp)) > 0) {")
        src.append("\t\tfor (size_t n = 0; n < got; ++n) {")
    src.append("\t\t\tunsigned char letter = buf[n];")
    src += lines
    src.append("\t\t\tmemcpy(state, next_state, sizeof(state));")
    if mode is MatchMode.ANYWHERE:
        src.append(f"\t\t\taccepted = {out};")
    src += ["\t\t}", "\t}"]
    src += [
        "\tif (ferror(fp)) {",
        '\t\tfprintf(stderr, "cannot read %s\\n", argv[1]);',
        "\t\tfclose(fp);",
        "\t\treturn 2;",
        "\t}",
        "\tfclose(fp);",
    ]
    if mode is MatchMode.ANYWHERE:
        src.append('\tprintf("%d\\n", accepted ? 1 : 0);')
    else:
        src.append(f'\tprintf("%d\\n", ({out}) ? 1 : 0);')
    src += ["\treturn 0;", "}", ""]
    return "\n".join(src)


register(
    Backend(
        "cpp", ".cpp", "CXX", "g++",
        ("-std=c++17", "-O2", "-Wall", "-Wextra", "-Werror"),
        _render_cpp,
    )
)
register(
    Backend(
        "c", ".c", "CC", "gcc",
        ("-std=c99", "-O2", "-Wall", "-Wextra", "-Werror"),
        _render_c,
    )
)

DEFAULT_BACKEND = "cpp"


def emit(circuit: Circuit, mode: MatchMode | None = None, backend: str = DEFAULT_BACKEND) -> GeneratedProgram:
    """Render the matcher program for ``circuit``; output is deterministic."""
    if backend not in BACKENDS:
        raise UnknownBackendError(
            f"unknown backend {backend!r}; known: {', '.join(sorted(BACKENDS))}"
        )
    mode = check_mode(circuit, mode) if mode is not None else default_mode(circuit)
    text = BACKENDS[backend].render(circuit, mode)
    return GeneratedProgram(text, backend, fingerprint(circuit))


def build_program(program: GeneratedProgram, workdir: str | os.PathLike, name: str = "matcher") -> Path:
    """Write and compile ``program`` inside ``workdir``; returns the executable.

    Raises ``subprocess.CalledProcessError`` (with compiler output) on failure.
    """
    workdir = Path(workdir)
    backend = BACKENDS[program.backend_id]
    src = workdir / f"{name}{backend.suffix}"
    exe = workdir / name
    src.write_text(program.source_text)
    subprocess.run(backend.command(src, exe), check=True, capture_output=True, text=True)
    return exe
