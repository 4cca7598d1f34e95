"""Plain-text tournament files.

Format::

    # optional comment lines, only before the size line
    4
    0110
    0011
    0001
    1000

Line ``i + 2`` holds row ``i``: character ``j`` is ``1`` iff player ``i``
beats player ``j``. The file must end with a newline.
"""

from __future__ import annotations

from pathlib import Path

from .core import Tournament
from .models import ModelSpec

MODEL_PREFIX = "# model: "


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def format_tournament(t: Tournament, comments=()) -> str:
    out = [f"# {c}\n" if not c.startswith("#") else f"{c}\n" for c in comments]
    out.append(f"{t.n}\n")
    for r in t.rows:
        out.append("".join("1" if r >> j & 1 else "0" for j in range(t.n)) + "\n")
    return "".join(out)


def parse_tournament(text: str) -> tuple[Tournament, list[str]]:
    """Parse the text format; returns the tournament and its comment lines."""
    if not text.endswith("\n"):
        raise ParseError(text.count("\n") + 1, "missing trailing newline")
    lines = text[:-1].split("\n")
    comments = []
    pos = 0
    while pos < len(lines) and lines[pos].startswith("#"):
        comments.append(lines[pos])
        pos += 1
    if pos == len(lines):
        raise ParseError(pos + 1, "missing player count")
    head = lines[pos].strip()
    if not head.isdigit() or int(head) < 1:
        raise ParseError(pos + 1, f"expected a positive player count, got {lines[pos]!r}")
    n = int(head)
    body = lines[pos + 1:]
    if len(body) != n:
        raise ParseError(pos + 2 + min(len(body), n), f"expected {n} rows, found {len(body)}")
    rows = []
    for i, line in enumerate(body):
        lineno = pos + 2 + i
        if line.startswith("#"):
            raise ParseError(lineno, "comments are only allowed before the player count")
        if len(line) != n or set(line) - {"0", "1"}:
            raise ParseError(lineno, f"row must be {n} characters of 0/1")
        if line[i] != "0":
            raise ParseError(lineno, f"diagonal entry for player {i} must be 0")
        rows.append(int(line[::-1], 2))
    for i in range(n):
        for j in range(i + 1, n):
            a, b = rows[i] >> j & 1, rows[j] >> i & 1
            if a == b:
                what = "both win" if a else "neither wins"
                raise ParseError(pos + 2 + j, f"players {i} and {j}: {what}")
    return Tournament(rows, _checked=True), comments


def model_comment(spec: ModelSpec) -> str:
    return MODEL_PREFIX + spec.to_text().replace("\n", " ").strip()


def model_from_comments(comments) -> ModelSpec | None:
    for c in comments:
        if c.startswith(MODEL_PREFIX):
            return ModelSpec.from_text(c[len(MODEL_PREFIX):])
    return None


def read_tournament(path) -> tuple[Tournament, list[str]]:
    return parse_tournament(Path(path).read_text())


def write_tournament(path, t: Tournament, comments=()) -> None:
    Path(path).write_text(format_tournament(t, comments))
