"""Reading and writing formal contexts.

Two formats are supported:

``burmeister``
    The ``.cxt`` layout: ``B``, a blank (name) line, object count, attribute
    count, a blank line, object names, attribute names, then one row per
    object made of ``X`` and ``.``.
``csv``
    A header row whose first cell is ignored and whose remaining cells are the
    attribute names, then one row per object: the label followed by 0/1 cells.
"""

from __future__ import annotations

import csv
import io
import os
from typing import Union

from .context import AttributeSet, AttributeUniverse, FormalContext
from .errors import ContextParseError, InvalidArgumentError

FORMATS = ("burmeister", "csv")


def _text(data: Union[str, bytes]) -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ContextParseError(f"input is not UTF-8: {exc}") from None
    return data


def _parse_burmeister(text: str) -> FormalContext:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    lines = [ln[:-1] if ln.endswith("\r") else ln for ln in lines]

    def line(i):
        if i >= len(lines):
            raise ContextParseError("unexpected end of file", i + 1)
        return lines[i]

    if line(0) != "B":
        raise ContextParseError("first line must be 'B'", 1)
    # line 2 is the optional context name
    counts = []
    for i in (2, 3):
        try:
            value = int(line(i))
        except ValueError:
            raise ContextParseError(f"expected a count, got {line(i)!r}", i + 1) from None
        if value < 0:
            raise ContextParseError("counts must be non-negative", i + 1)
        counts.append(value)
    n_obj, n_att = counts
    if line(4).strip():
        raise ContextParseError("expected an empty line after the counts", 5)

    pos = 5
    objects = [line(pos + k) for k in range(n_obj)]
    pos += n_obj
    attributes = [line(pos + k) for k in range(n_att)]
    pos += n_att

    seen = set()
    for k, label in enumerate(objects):
        if label in seen:
            raise ContextParseError(f"duplicate object label {label!r}", 6 + k)
        seen.add(label)
    try:
        universe = AttributeUniverse(attributes)
    except InvalidArgumentError as exc:
        raise ContextParseError(str(exc), 6 + n_obj) from None

    rows = []
    for k in range(n_obj):
        lineno = pos + k + 1
        row = line(pos + k)
        if len(row) != n_att:
            raise ContextParseError(f"row has {len(row)} cells, expected {n_att}", lineno)
        mask = 0
        for ch in row:
            if ch in "Xx":
                mask = (mask << 1) | 1
            elif ch == ".":
                mask <<= 1
            else:
                raise ContextParseError(f"unexpected cell {ch!r}", lineno)
        rows.append((objects[k], AttributeSet(universe, mask)))
    pos += n_obj
    for extra in range(pos, len(lines)):
        if lines[extra].strip():
            raise ContextParseError("trailing content after the incidence rows", extra + 1)
    return FormalContext(universe, rows)


def _write_burmeister(ctx: FormalContext) -> str:
    n = len(ctx.universe)
    out = ["B", "", str(len(ctx.objects)), str(n), ""]
    out.extend(ctx.object_labels)
    out.extend(ctx.universe.names)
    for row in ctx.rows:
        out.append("".join("X" if row >> (n - 1 - j) & 1 else "." for j in range(n)))
    return "\n".join(out) + "\n"


def _parse_csv(text: str) -> FormalContext:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ContextParseError("missing header row", 1) from None
    try:
        universe = AttributeUniverse(header[1:])
    except InvalidArgumentError as exc:
        raise ContextParseError(str(exc), 1) from None
    n = len(universe)
    rows, seen = [], set()
    for record in reader:
        lineno = reader.line_num
        if not record:
            continue
        label, cells = record[0], record[1:]
        if len(cells) != n:
            raise ContextParseError(f"row has {len(cells)} cells, expected {n}", lineno)
        if label in seen:
            raise ContextParseError(f"duplicate object label {label!r}", lineno)
        seen.add(label)
        mask = 0
        for cell in cells:
            cell = cell.strip()
            if cell not in ("0", "1"):
                raise ContextParseError(f"expected 0 or 1, got {cell!r}", lineno)
            mask = (mask << 1) | (cell == "1")
        rows.append((label, AttributeSet(universe, mask)))
    return FormalContext(universe, rows)


def _write_csv(ctx: FormalContext) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    n = len(ctx.universe)
    writer.writerow([""] + list(ctx.universe.names))
    for label, row in zip(ctx.object_labels, ctx.rows):
        writer.writerow([label] + ["1" if row >> (n - 1 - j) & 1 else "0" for j in range(n)])
    return buf.getvalue()


def _check_format(fmt: str) -> str:
    if fmt not in FORMATS:
        raise InvalidArgumentError(f"unknown context format {fmt!r}; expected one of {FORMATS}")
    return fmt


def parse_context(data: Union[str, bytes], fmt: str = "burmeister") -> FormalContext:
    """Parse a context from text or UTF-8 bytes."""
    text = _text(data)
    if _check_format(fmt) == "burmeister":
        return _parse_burmeister(text)
    return _parse_csv(text)


def write_context(ctx: FormalContext, fmt: str = "burmeister") -> bytes:
    """Serialise ``ctx``; the result parses back to an equal context."""
    if _check_format(fmt) == "burmeister":
        return _write_burmeister(ctx).encode("utf-8")
    return _write_csv(ctx).encode("utf-8")


def guess_format(path: Union[str, os.PathLike]) -> str:
    return "csv" if str(path).lower().endswith(".csv") else "burmeister"


def read_context(path: Union[str, os.PathLike], fmt: str = None) -> FormalContext:
    with open(path, "rb") as fh:
        return parse_context(fh.read(), fmt or guess_format(path))


def save_context(ctx: FormalContext, path: Union[str, os.PathLike], fmt: str = None) -> None:
    with open(path, "wb") as fh:
        fh.write(write_context(ctx, fmt or guess_format(path)))
