"""Block-structured definition files shared by shift and code definitions.

A file is a sequence of blocks ``kind name { stmt; stmt; ... }``.  Statements
are kept as raw text with their source position; the owning module
interprets them.  ``#`` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class FormatError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Statement:
    text: str
    line: int
    col: int

    def error(self, message: str) -> FormatError:
        return FormatError(message, self.line, self.col)


@dataclass(frozen=True)
class Block:
    kind: str
    name: str
    statements: tuple[Statement, ...]
    line: int
    col: int


_HEADER = re.compile(r"([A-Za-z_]+)\s+([A-Za-z0-9_.:\-]+)\s*\{")


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _strip_comments(text: str) -> str:
    out = []
    in_quote = False
    skipping = False
    for c in text:
        if skipping:
            if c == "\n":
                skipping = False
                out.append(c)
            else:
                out.append(" ")
            continue
        if c == '"':
            in_quote = not in_quote
        if c == "#" and not in_quote:
            skipping = True
            out.append(" ")
            continue
        out.append(c)
    return "".join(out)


def parse_blocks(text: str) -> list[Block]:
    text = _strip_comments(text)
    blocks = []
    i = 0
    n = len(text)
    while True:
        while i < n and text[i].isspace():
            i += 1
        if i >= n:
            return blocks
        m = _HEADER.match(text, i)
        if not m:
            raise FormatError("expected 'kind name {'", *_position(text, i))
        kind, name = m.group(1), m.group(2)
        start = i
        i = m.end()
        statements = []
        current_start = i
        in_quote = False
        while True:
            if i >= n:
                raise FormatError(f"unterminated block {name!r}", *_position(text, start))
            c = text[i]
            if c == '"':
                in_quote = not in_quote
            elif not in_quote and c in ";}":
                raw = text[current_start:i]
                if raw.strip():
                    lead = len(raw) - len(raw.lstrip())
                    statements.append(
                        Statement(raw.strip(), *_position(text, current_start + lead))
                    )
                current_start = i + 1
                if c == "}":
                    i += 1
                    break
            i += 1
        if in_quote:
            raise FormatError("unterminated string", *_position(text, start))
        blocks.append(Block(kind, name, tuple(statements), *_position(text, start)))


def split_assignment(st: Statement) -> tuple[str, str]:
    if "=" not in st.text:
        raise st.error(f"expected 'key = value', got {st.text!r}")
    key, value = st.text.split("=", 1)
    return key.strip(), value.strip()


_QUOTED = re.compile(r'"([^"]*)"')


def quoted_strings(st: Statement, value: str) -> list[str]:
    rest = _QUOTED.sub("", value).strip()
    if rest:
        raise st.error(f"unexpected text {rest!r} outside quotes")
    return _QUOTED.findall(value)
