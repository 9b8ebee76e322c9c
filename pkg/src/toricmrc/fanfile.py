"""Plain-text fan file format.

::

    # name: P2          (optional, first comment line)
    dim: 2
    rays:
    1 0
    0 1
    -1 -1
    maxcones:
    0 1
    1 2
    0 2

``#`` starts a comment; blank lines are ignored.  Ray rows hold ``dim``
integers, cone rows hold ``dim`` zero-based ray indices.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .errors import ParseError
from .fan import Fan, build_fan

_NAME_RE = re.compile(r"^#\s*name:\s*(\S.*?)\s*$")


@dataclass(frozen=True)
class FanDocument:
    dim: int
    ray_rows: tuple
    cone_rows: tuple
    name: Optional[str] = None
    source: Optional[str] = field(default=None, compare=False)


def _ints(tokens, lineno, what):
    try:
        return tuple(int(t) for t in tokens)
    except ValueError:
        bad = next(t for t in tokens if not re.fullmatch(r"[+-]?\d+", t))
        raise ParseError(lineno, f"bad integer {bad!r} in {what}") from None


def parse_fan(text: str, source: Optional[str] = None) -> FanDocument:
    name = None
    dim = None
    rays, cones = [], []
    section = None  # None -> "rays" -> "maxcones"
    seen_content = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not seen_content and name is None:
            m = _NAME_RE.match(raw.strip())
            if m:
                name = m.group(1)
                continue
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        seen_content = True
        if dim is None:
            m = re.fullmatch(r"dim:\s*(\S+)", line)
            if not m:
                raise ParseError(lineno, "expected 'dim: <n>' before anything else")
            (dim,) = _ints([m.group(1)], lineno, "dim")
            if dim < 1:
                raise ParseError(lineno, f"dimension must be positive, got {dim}")
            continue
        if line == "rays:":
            if section is not None:
                raise ParseError(lineno, "duplicate or misplaced 'rays:' section")
            section = "rays"
            continue
        if line == "maxcones:":
            if section != "rays":
                raise ParseError(lineno, "'maxcones:' must follow the 'rays:' section")
            section = "maxcones"
            continue
        if line.startswith("dim:"):
            raise ParseError(lineno, "duplicate 'dim:' line")
        if section is None:
            raise ParseError(lineno, "expected 'rays:' section")
        tokens = line.split()
        if section == "rays":
            row = _ints(tokens, lineno, "ray")
            if len(row) != dim:
                raise ParseError(lineno, f"ray has {len(row)} entries, expected {dim}")
            rays.append(row)
        else:
            row = _ints(tokens, lineno, "cone")
            if len(row) != dim:
                raise ParseError(lineno, f"cone has {len(row)} entries, expected {dim}")
            for i in row:
                if not 0 <= i < len(rays):
                    raise ParseError(lineno, f"ray index {i} out of range (0..{len(rays) - 1})")
            cones.append(row)
    if dim is None:
        raise ParseError(None, "missing 'dim:' line")
    if section is None:
        raise ParseError(None, "missing 'rays:' section")
    if section != "maxcones":
        raise ParseError(None, "missing 'maxcones:' section")
    if not cones:
        raise ParseError(None, "no maximal cones given")
    return FanDocument(dim, tuple(rays), tuple(cones), name, source)


def serialize_fan(doc: FanDocument) -> str:
    lines = []
    if doc.name:
        lines.append(f"# name: {doc.name}")
    lines.append(f"dim: {doc.dim}")
    lines.append("rays:")
    lines.extend(" ".join(map(str, r)) for r in doc.ray_rows)
    lines.append("maxcones:")
    lines.extend(" ".join(map(str, c)) for c in doc.cone_rows)
    return "\n".join(lines) + "\n"


def to_document(fan: Fan, source: Optional[str] = None) -> FanDocument:
    return FanDocument(fan.dim, tuple(fan.rays), tuple(fan.max_cones), fan.name, source)


def fan_from_document(doc: FanDocument) -> Fan:
    return build_fan(doc.dim, doc.ray_rows, doc.cone_rows, name=doc.name)


def read_fan(path) -> Fan:
    with open(path, encoding="utf-8") as fh:
        doc = parse_fan(fh.read(), source=str(path))
    return fan_from_document(doc)


def write_fan(fan: Fan, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_fan(to_document(fan)))
