"""Text formats for matrices, vectors, set systems, and proof systems.

All numbers are written with 17 significant digits so that write/read
round trips are bit-exact for float64. Readers name the offending line
in every parse error.

.mtxt   "m p" then m lines of p space-separated numbers.
vector  "n" then n numbers, one per line.
.ssys   "M |S| ell delta" then M lines of |S| characters in {0,1}.
.mip    "|R| |Q1| |Q2| |A1| |A2|"; |R| lines "q1 q2"; "UA <count>";
        count lines "r a1 a2". All indices zero-based.
"""

from __future__ import annotations

import io
from pathlib import Path
from typing import Iterator, TextIO

import numpy as np

from .errors import FormatError
from .linalg import as_matrix, as_vector
from .mip import MipDescription
from .setsystem import SetSystem


def fmt(x: float) -> str:
    """17-significant-digit decimal form (round-trip exact for float64)."""
    return format(float(x), ".17g")


def _open_read(source) -> tuple[TextIO, bool]:
    if isinstance(source, (str, Path)):
        return open(source, "r", encoding="utf-8"), True
    return source, False


def _open_write(sink) -> tuple[TextIO, bool]:
    if isinstance(sink, (str, Path)):
        return open(sink, "w", encoding="utf-8"), True
    return sink, False


class _Lines:
    """Line reader that tracks numbers for error reporting."""

    def __init__(self, stream: TextIO):
        self._it: Iterator[str] = iter(stream)
        self.number = 0

    def next(self, what: str) -> str:
        for line in self._it:
            self.number += 1
            stripped = line.strip()
            if stripped:
                return stripped
        raise FormatError(f"unexpected end of file, expected {what}", self.number + 1)


def _ints(text: str, count: int, lines: _Lines, what: str) -> list[int]:
    parts = text.split()
    if len(parts) != count:
        raise FormatError(
            f"expected {count} integers for {what}, got {len(parts)}", lines.number
        )
    try:
        return [int(p) for p in parts]
    except ValueError as exc:
        raise FormatError(f"bad integer in {what}: {exc}", lines.number) from exc


def write_matrix(B, sink) -> None:
    B = as_matrix(B)
    stream, close = _open_write(sink)
    try:
        stream.write(f"{B.shape[0]} {B.shape[1]}\n")
        for row in B:
            stream.write(" ".join(fmt(v) for v in row) + "\n")
    finally:
        if close:
            stream.close()


def read_matrix(source) -> np.ndarray:
    stream, close = _open_read(source)
    try:
        lines = _Lines(stream)
        m, p = _ints(lines.next("matrix header"), 2, lines, "matrix header 'm p'")
        if m < 1 or p < 1:
            raise FormatError(f"matrix dimensions must be positive, got {m} x {p}", lines.number)
        rows = np.empty((m, p))
        for i in range(m):
            parts = lines.next(f"matrix row {i}").split()
            if len(parts) != p:
                raise FormatError(
                    f"matrix row {i} has {len(parts)} entries, expected {p}", lines.number
                )
            try:
                rows[i] = [float(v) for v in parts]
            except ValueError as exc:
                raise FormatError(f"bad number in matrix row {i}: {exc}", lines.number) from exc
        return as_matrix(rows)
    finally:
        if close:
            stream.close()


def write_vector(y, sink) -> None:
    y = as_vector(y)
    stream, close = _open_write(sink)
    try:
        stream.write(f"{y.shape[0]}\n")
        for v in y:
            stream.write(fmt(v) + "\n")
    finally:
        if close:
            stream.close()


def read_vector(source) -> np.ndarray:
    stream, close = _open_read(source)
    try:
        lines = _Lines(stream)
        (n,) = _ints(lines.next("vector header"), 1, lines, "vector header 'n'")
        if n < 1:
            raise FormatError(f"vector length must be positive, got {n}", lines.number)
        out = np.empty(n)
        for i in range(n):
            text = lines.next(f"vector entry {i}")
            try:
                out[i] = float(text)
            except ValueError as exc:
                raise FormatError(f"bad number in vector entry {i}: {exc}", lines.number) from exc
        return as_vector(out)
    finally:
        if close:
            stream.close()


def write_setsystem(sys: SetSystem, sink) -> None:
    stream, close = _open_write(sink)
    try:
        stream.write(f"{sys.num_sets} {sys.universe_size} {sys.ell} {fmt(sys.delta)}\n")
        for row in sys.sets:
            stream.write("".join("1" if b else "0" for b in row) + "\n")
    finally:
        if close:
            stream.close()


def read_setsystem(source) -> SetSystem:
    stream, close = _open_read(source)
    try:
        lines = _Lines(stream)
        header = lines.next("set-system header").split()
        if len(header) != 4:
            raise FormatError(
                f"expected 'M |S| ell delta', got {len(header)} fields", lines.number
            )
        try:
            num_sets, universe, ell = int(header[0]), int(header[1]), int(header[2])
            delta = float(header[3])
        except ValueError as exc:
            raise FormatError(f"bad set-system header: {exc}", lines.number) from exc
        rows = np.zeros((num_sets, universe), dtype=np.uint8)
        for i in range(num_sets):
            text = lines.next(f"set row {i}")
            if len(text) != universe or any(c not in "01" for c in text):
                raise FormatError(
                    f"set row {i} must be {universe} characters of 0/1", lines.number
                )
            rows[i] = [1 if c == "1" else 0 for c in text]
        return SetSystem(num_sets, universe, rows, ell, delta)
    finally:
        if close:
            stream.close()


def write_mip(mip: MipDescription, sink) -> None:
    stream, close = _open_write(sink)
    try:
        stream.write(
            f"{mip.num_r} {mip.q1_size} {mip.q2_size} {mip.a1_size} {mip.a2_size}\n"
        )
        for q1, q2 in mip.q_of_r:
            stream.write(f"{q1} {q2}\n")
        entries = sorted(mip.ua.items())
        stream.write(f"UA {len(entries)}\n")
        for (r, a1), a2 in entries:
            stream.write(f"{r} {a1} {a2}\n")
    finally:
        if close:
            stream.close()


def read_mip(source) -> MipDescription:
    stream, close = _open_read(source)
    try:
        lines = _Lines(stream)
        num_r, q1s, q2s, a1s, a2s = _ints(
            lines.next("proof-system header"), 5, lines,
            "header '|R| |Q1| |Q2| |A1| |A2|'",
        )
        q_of_r = []
        for r in range(num_r):
            q1, q2 = _ints(lines.next(f"round {r} queries"), 2, lines, f"round {r} 'q1 q2'")
            q_of_r.append((q1, q2))
        marker = lines.next("'UA <count>' line").split()
        if len(marker) != 2 or marker[0] != "UA":
            raise FormatError("expected 'UA <count>'", lines.number)
        try:
            count = int(marker[1])
        except ValueError as exc:
            raise FormatError(f"bad UA count: {exc}", lines.number) from exc
        ua = {}
        for i in range(count):
            r, a1, a2 = _ints(lines.next(f"UA entry {i}"), 3, lines, f"UA entry {i} 'r a1 a2'")
            if (r, a1) in ua:
                raise FormatError(f"duplicate UA key ({r}, {a1})", lines.number)
            ua[(r, a1)] = a2
        try:
            return MipDescription(num_r, q1s, q2s, a1s, a2s, tuple(q_of_r), ua)
        except ValueError as exc:
            raise FormatError(f"inconsistent proof system: {exc}", lines.number) from exc
    finally:
        if close:
            stream.close()


def matrix_to_text(B) -> str:
    buf = io.StringIO()
    write_matrix(B, buf)
    return buf.getvalue()


def vector_to_text(y) -> str:
    buf = io.StringIO()
    write_vector(y, buf)
    return buf.getvalue()
