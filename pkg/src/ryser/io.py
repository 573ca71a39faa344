"""Versioned JSON design documents.

A document looks like::

    {
      "format_version": 1,
      "v": 7,
      "blocks": [
        [0, 1, 3],
        ...
      ],
      "metadata": {"name": "fano"}
    }

Blocks are 0-based, strictly ascending point lists, one per line, in system
order. ``metadata`` is optional.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .core import SetSystem
from .errors import ParseError

FORMAT_VERSION = 1
_KEYS = ("format_version", "v", "blocks", "metadata")


@dataclass(frozen=True)
class DesignDocument:
    v: int
    blocks: tuple[tuple[int, ...], ...]
    metadata: dict = field(default_factory=dict)
    format_version: int = FORMAT_VERSION

    def system(self) -> SetSystem:
        return SetSystem.from_lists(self.v, self.blocks)


def serialize(system: SetSystem, metadata: dict | None = None) -> str:
    lines = [
        "{",
        f'  "format_version": {FORMAT_VERSION},',
        f'  "v": {system.v},',
        '  "blocks": [',
    ]
    blocks = [json.dumps(list(b.points)) for b in system.blocks]
    lines.extend(f"    {b}," for b in blocks[:-1])
    lines.append(f"    {blocks[-1]}")
    if metadata:
        lines.append("  ],")
        lines.append(f'  "metadata": {json.dumps(metadata, sort_keys=True, ensure_ascii=False)}')
    else:
        lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _line_col(text: str, offset: int) -> str:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return f"line {line}, column {col}"


def _block_offsets(text: str) -> list[int]:
    """Character offsets of each inner array of ``"blocks"``; best effort."""
    start = text.find('"blocks"')
    if start < 0:
        return []
    i = text.find("[", start)
    if i < 0:
        return []
    offsets = []
    depth = 0
    in_str = False
    while i < len(text):
        ch = text[i]
        if in_str:
            if ch == "\\":
                i += 1
            elif ch == '"':
                in_str = False
        elif ch == '"':
            in_str = True
        elif ch == "[":
            depth += 1
            if depth == 2:
                offsets.append(i)
        elif ch == "]":
            depth -= 1
            if depth == 0:
                break
        i += 1
    return offsets


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def parse_document(text: str) -> DesignDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", f"line {exc.lineno}, column {exc.colno}")
    if not isinstance(raw, dict):
        raise ParseError("top level must be an object")
    unknown = sorted(set(raw) - set(_KEYS))
    if unknown:
        raise ParseError(f"unknown keys {unknown}")
    for key in ("format_version", "v", "blocks"):
        if key not in raw:
            raise ParseError(f"missing key {key!r}")
    if raw["format_version"] != FORMAT_VERSION or not _is_int(raw["format_version"]):
        raise ParseError(f"unsupported format_version {raw['format_version']!r}", "format_version")
    v = raw["v"]
    if not _is_int(v) or v < 1:
        raise ParseError(f"v must be a positive integer, got {v!r}", "v")
    blocks = raw["blocks"]
    if not isinstance(blocks, list):
        raise ParseError("blocks must be an array", "blocks")
    metadata = raw.get("metadata", {})
    if not isinstance(metadata, dict):
        raise ParseError("metadata must be an object", "metadata")

    offsets = _block_offsets(text)

    def where(i: int) -> str:
        loc = f"blocks[{i}]"
        if i < len(offsets):
            loc += f" ({_line_col(text, offsets[i])})"
        return loc

    if len(blocks) != v:
        raise ParseError(f"v mismatch: v = {v} but {len(blocks)} blocks given", "blocks")
    seen: dict[tuple[int, ...], int] = {}
    out = []
    for i, b in enumerate(blocks):
        if not isinstance(b, list):
            raise ParseError("block must be an array of integers", where(i))
        if not b:
            raise ParseError("empty block", where(i))
        for j, x in enumerate(b):
            if not _is_int(x):
                raise ParseError(f"point {x!r} at position {j} is not an integer", where(i))
            if not 0 <= x < v:
                raise ParseError(f"point {x} at position {j} outside [0, {v})", where(i))
            if j and b[j - 1] >= x:
                raise ParseError(f"points not strictly ascending at position {j}", where(i))
        key = tuple(b)
        if key in seen:
            raise ParseError(f"duplicate block, same as blocks[{seen[key]}]", where(i))
        seen[key] = i
        out.append(key)
    return DesignDocument(v, tuple(out), metadata, raw["format_version"])


def parse(text: str) -> SetSystem:
    return parse_document(text).system()
