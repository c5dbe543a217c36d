"""Plain-text and JSON matrix files.

Text layout: a first line holding ``n``, then ``n`` lines of ``n``
whitespace-separated nonnegative numbers (integers or decimals). Blank
lines are skipped. JSON layout: ``{"n": n, "entries": [[...], ...]}``.
"""
from __future__ import annotations

import json
import re
import sys
from typing import Union

import numpy as np

from .matrix import NonnegMatrix, SignPattern

__all__ = [
    "MatrixParseError",
    "parse_matrix",
    "load_matrix",
    "format_matrix",
    "matrix_to_json",
]

_NUMBER = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?\Z")


class MatrixParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


def _tokens(line: str):
    for m in re.finditer(r"\S+", line):
        yield m.start() + 1, m.group()


def _parse_text(text: str) -> NonnegMatrix:
    lines = [(k, line) for k, line in enumerate(text.splitlines(), start=1)
             if line.strip()]
    if not lines:
        raise MatrixParseError("empty input")
    lineno, header = lines[0]
    toks = list(_tokens(header))
    if len(toks) != 1 or not toks[0][1].isdigit():
        raise MatrixParseError("first line must hold the dimension n", lineno,
                               toks[0][0] if toks else 1)
    n = int(toks[0][1])
    if n < 1:
        raise MatrixParseError("dimension must be at least 1", lineno, toks[0][0])
    body = lines[1:]
    if len(body) != n:
        last = body[-1][0] if body else lineno
        raise MatrixParseError(f"expected {n} matrix rows, found {len(body)}", last, 1)
    out = np.empty((n, n))
    for i, (lineno, line) in enumerate(body):
        toks = list(_tokens(line))
        if len(toks) != n:
            col = toks[n][0] if len(toks) > n else len(line.rstrip()) + 1
            raise MatrixParseError(f"expected {n} entries, found {len(toks)}", lineno, col)
        for j, (col, tok) in enumerate(toks):
            if not _NUMBER.match(tok):
                raise MatrixParseError(f"not a number: {tok!r}", lineno, col)
            value = float(tok)
            if value < 0:
                raise MatrixParseError(f"negative entry {tok}", lineno, col)
            out[i, j] = value
    return NonnegMatrix(out)


def _parse_json(text: str) -> NonnegMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict) or "entries" not in doc:
        raise MatrixParseError('JSON matrix must be an object with "entries"')
    entries = doc["entries"]
    if (not isinstance(entries, list)
            or not all(isinstance(r, list) for r in entries)
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool)
                       for r in entries for x in r)):
        raise MatrixParseError('"entries" must be a list of numeric rows')
    n = doc.get("n", len(entries))
    if n != len(entries) or any(len(r) != n for r in entries):
        raise MatrixParseError(f"entries are not {n} x {n}")
    try:
        return NonnegMatrix(entries)
    except ValueError as exc:
        raise MatrixParseError(str(exc)) from None


def parse_matrix(text: str) -> NonnegMatrix:
    """Parse either layout; JSON is recognised by a leading ``{``."""
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    return _parse_text(text)


def load_matrix(path: str) -> NonnegMatrix:
    if path == "-":
        return parse_matrix(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def format_matrix(M: Union[NonnegMatrix, SignPattern]) -> str:
    a = M.to_matrix().entries if isinstance(M, SignPattern) else M.entries
    lines = [str(a.shape[0])]
    lines += [" ".join(_fmt(x) for x in row) for row in a]
    return "\n".join(lines) + "\n"


def matrix_to_json(M: Union[NonnegMatrix, SignPattern]) -> str:
    m = M.to_matrix() if isinstance(M, SignPattern) else M
    return json.dumps(m.to_dict())
