"""Text interchange format for arrays and large sets.

OA block:   `OA N=<int> t=<int> levels=<s1>^<k1>[,<s2>^<k2>...]`
            followed by N lines of k space-separated decimal symbols.
LOA file:   `LOA M=<int>` followed by M OA blocks separated by exactly one
            blank line.

UTF-8, LF line endings, column order significant.  Lines starting with `#`
are skipped on input (fixture files use them for marked-column metadata) and
never emitted by the writers, so read(write(x)) is the identity.
"""

from __future__ import annotations

import io

import numpy as np

from .arrays import LargeSet, LevelProfile, SymbolMatrix
from .errors import ParseError


class _Lines:
    """Line iterator that skips comments and tracks 1-based numbers."""

    def __init__(self, text: str):
        self.raw = text.split("\n")
        self.pos = 0

    def next_content(self) -> tuple[str, int] | None:
        """Next non-blank, non-comment line."""
        while self.pos < len(self.raw):
            line = self.raw[self.pos]
            self.pos += 1
            if line.strip() and not line.lstrip().startswith("#"):
                return line, self.pos
        return None

    def peek_is_blank_separator(self) -> bool:
        """Consume one blank line (the LOA block separator); False at EOF."""
        while self.pos < len(self.raw) and self.raw[self.pos].lstrip().startswith("#"):
            self.pos += 1
        if self.pos < len(self.raw) and not self.raw[self.pos].strip():
            self.pos += 1
            return True
        return False


def _parse_kv(line: str, lineno: int, tag: str, keys: list[str]) -> dict[str, str]:
    parts = line.split()
    if not parts or parts[0] != tag:
        raise ParseError(f"expected '{tag}' header, got {line!r}", lineno)
    out = {}
    for part in parts[1:]:
        if "=" not in part:
            raise ParseError(f"malformed header field {part!r}", lineno)
        key, _, value = part.partition("=")
        out[key] = value
    missing = [k for k in keys if k not in out]
    if missing:
        raise ParseError(f"header missing {missing}", lineno)
    return out


def _parse_oa_block(lines: _Lines) -> SymbolMatrix:
    first = lines.next_content()
    if first is None:
        raise ParseError("unexpected end of file, expected OA header")
    header, lineno = first
    kv = _parse_kv(header, lineno, "OA", ["N", "t", "levels"])
    try:
        n = int(kv["N"])
        t = int(kv["t"])
        profile = LevelProfile.parse(kv["levels"])
    except ValueError as exc:
        raise ParseError(f"malformed header: {exc}", lineno) from None
    rows = np.empty((n, profile.k), dtype=np.int32)
    for i in range(n):
        item = lines.next_content()
        if item is None:
            raise ParseError(f"expected {n} rows, found {i}", len(lines.raw))
        line, lineno = item
        fields = line.split()
        if len(fields) != profile.k:
            raise ParseError(
                f"row has {len(fields)} symbols, expected {profile.k}", lineno
            )
        for j, f in enumerate(fields):
            try:
                v = int(f)
            except ValueError:
                raise ParseError(f"bad symbol {f!r}", lineno) from None
            if not 0 <= v < profile.levels[j]:
                raise ParseError(
                    f"symbol {v} out of range [0, {profile.levels[j]}) in column {j}",
                    lineno,
                )
            rows[i, j] = v
    return SymbolMatrix(profile, rows, t)


def loads(text: str) -> SymbolMatrix | LargeSet:
    lines = _Lines(text)
    probe = _Lines(text)
    first = probe.next_content()
    if first is None:
        raise ParseError("empty file", 1)
    tag = first[0].split()[0]
    if tag == "OA":
        return _parse_oa_block(lines)
    if tag == "LOA":
        header, lineno = lines.next_content()
        kv = _parse_kv(header, lineno, "LOA", ["M"])
        try:
            m = int(kv["M"])
        except ValueError as exc:
            raise ParseError(f"malformed header: {exc}", lineno) from None
        if m < 1:
            raise ParseError("M must be >= 1", lineno)
        members = []
        for i in range(m):
            if i > 0 and not lines.peek_is_blank_separator():
                raise ParseError(
                    f"expected a blank line before member {i + 1}", lines.pos + 1
                )
            members.append(_parse_oa_block(lines))
        try:
            ls = LargeSet(members[0].profile, members,
                          min(mm.t for mm in members))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        return ls
    raise ParseError(f"unknown header tag {tag!r}", first[1])


def dumps(obj: SymbolMatrix | LargeSet) -> str:
    buf = io.StringIO()
    if isinstance(obj, SymbolMatrix):
        _write_oa_block(buf, obj)
    elif isinstance(obj, LargeSet):
        buf.write(f"LOA M={obj.m}\n")
        for i, member in enumerate(obj.members):
            if i > 0:
                buf.write("\n")
            _write_oa_block(buf, member)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return buf.getvalue()


def _write_oa_block(buf, a: SymbolMatrix):
    if a.t is None:
        raise ValueError("array has no claimed strength; set t before writing")
    buf.write(f"OA N={a.n} t={a.t} levels={a.profile.format()}\n")
    for row in a.cells:
        buf.write(" ".join(str(int(x)) for x in row))
        buf.write("\n")


def read_array(path) -> SymbolMatrix | LargeSet:
    with open(path, "r", encoding="utf-8") as f:
        return loads(f.read())


def write_array(obj: SymbolMatrix | LargeSet, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(dumps(obj))
