"""Plain-text array files.

One permutation per line, either as whitespace-separated symbols or, when
``v <= 10``, as a compact digit string such as ``0123465``.  Blank lines and
lines starting with ``#`` are ignored.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .core import InputError, PermArray


class ArrayFormatError(InputError):
    pass


def _parse_row(text: str, lineno: int) -> tuple[int, ...]:
    tokens = text.replace(",", " ").split()
    if len(tokens) == 1 and tokens[0].isdigit() and len(tokens[0]) > 1:
        return tuple(int(c) for c in tokens[0])
    try:
        return tuple(int(tok) for tok in tokens)
    except ValueError:
        raise ArrayFormatError(f"line {lineno}: cannot parse row {text!r}") from None


def parse_array(text: str) -> PermArray:
    rows = []
    v = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        row = _parse_row(line, lineno)
        if v is None:
            v = len(row)
        elif len(row) != v:
            raise ArrayFormatError(f"line {lineno}: row has {len(row)} symbols, expected {v}")
        if sorted(row) != list(range(v)):
            raise ArrayFormatError(f"line {lineno}: {line!r} is not a permutation of [{v}]")
        rows.append(row)
    if v is None:
        raise ArrayFormatError("no rows found")
    return PermArray(v, tuple(rows))


def read_array(path: str | Path) -> PermArray:
    return parse_array(Path(path).read_text(encoding="utf-8"))


def format_row(row: Iterable[int], compact: bool) -> str:
    if compact:
        return "".join(str(a) for a in row)
    return " ".join(str(a) for a in row)


def format_array(x: PermArray, compact: bool | None = None, header: str | None = None) -> str:
    if compact is None:
        compact = x.v <= 10
    lines = [f"# {header}"] if header else []
    lines.extend(format_row(r, compact) for r in x.rows)
    return "\n".join(lines) + "\n"


def write_array(path: str | Path, x: PermArray, **kwargs) -> None:
    Path(path).write_text(format_array(x, **kwargs), encoding="utf-8")
