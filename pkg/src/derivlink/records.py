"""Attribute-value records: the text format shared by lexicon, morpheme,
paradigm and config files.

A record is ``{ name value name value ... }`` where a value is a quoted
string, a bare atom, a parenthesised list of atoms, or a nested record.
Several records may follow a single name (``SubjOf {..} {..}``); they are
collected into a :class:`RecList`.
"""
from __future__ import annotations

from typing import Iterable, Iterator, Union

__all__ = [
    "Symbol",
    "AtomList",
    "RecList",
    "Record",
    "Value",
    "RecordSyntaxError",
    "UnbalancedDelimiter",
    "UnterminatedString",
    "EmptyAttributeName",
    "parse_record",
    "parse_records",
    "serialize_record",
    "serialize_records",
    "get_all",
    "read_source",
]

_DELIMS = set('{}()"')


class Symbol(str):
    """An atom that was written bare (unquoted). Compares equal to ``str``."""

    __slots__ = ()

    def __repr__(self) -> str:
        return f"Symbol({str.__repr__(self)})"


class AtomList(tuple):
    """A parenthesised list of atoms."""

    __slots__ = ()

    def __repr__(self) -> str:
        return f"AtomList({list(self)!r})"


class RecList(tuple):
    """Two or more records bound to one attribute name."""

    __slots__ = ()

    def __repr__(self) -> str:
        return f"RecList({list(self)!r})"


Value = Union[str, AtomList, "Record", RecList]


def _kind(v) -> int:
    if isinstance(v, Record):
        return 2
    if isinstance(v, RecList):
        return 3
    if isinstance(v, AtomList):
        return 1
    return 0


class Record:
    """Immutable ordered sequence of ``(name, value)`` pairs.

    Repeated names bound to records are merged into one :class:`RecList`
    at the position of the first occurrence; a one-element ``RecList`` is
    stored as the bare record. Repeated atom-valued names are kept as
    separate pairs.
    """

    __slots__ = ("_attrs", "_hash")

    def __init__(self, attrs: Iterable[tuple[str, Value]] = ()):
        merged: list[list] = []
        rec_pos: dict[str, int] = {}
        for name, value in attrs:
            if not isinstance(name, str) or not _is_bare(name):
                raise ValueError(f"invalid attribute name {name!r}")
            if isinstance(value, (Record, RecList)):
                recs = [value] if isinstance(value, Record) else list(value)
                if not recs:
                    raise ValueError(f"empty record list for {name!r}")
                if name in rec_pos:
                    merged[rec_pos[name]][1].extend(recs)
                else:
                    rec_pos[name] = len(merged)
                    merged.append([name, recs])
            elif isinstance(value, (AtomList, list)) and not isinstance(value, RecList):
                merged.append([name, AtomList(value)])
            elif isinstance(value, str):
                merged.append([name, value])
            else:
                raise TypeError(f"unsupported value for {name!r}: {value!r}")
        out = []
        for name, value in merged:
            if isinstance(value, list) and not isinstance(value, AtomList):
                value = value[0] if len(value) == 1 else RecList(value)
            out.append((name, value))
        self._attrs = tuple(out)
        self._hash = None

    @property
    def attrs(self) -> tuple[tuple[str, Value], ...]:
        return self._attrs

    def __iter__(self) -> Iterator[tuple[str, Value]]:
        return iter(self._attrs)

    def __len__(self) -> int:
        return len(self._attrs)

    def __contains__(self, name: str) -> bool:
        return any(n == name for n, _ in self._attrs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Record):
            return NotImplemented
        if len(self._attrs) != len(other._attrs):
            return False
        for (n1, v1), (n2, v2) in zip(self._attrs, other._attrs):
            if n1 != n2 or _kind(v1) != _kind(v2) or v1 != v2:
                return False
        return True

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple((n, _kind(v), v) for n, v in self._attrs))
        return self._hash

    def __repr__(self) -> str:
        inner = ", ".join(f"{n}={v!r}" for n, v in self._attrs)
        return f"Record({inner})"

    def names(self) -> list[str]:
        return [n for n, _ in self._attrs]

    def get(self, name: str, default=None):
        """First value bound to ``name``."""
        for n, v in self._attrs:
            if n == name:
                return v
        return default

    def records(self, name: str) -> list["Record"]:
        """Records bound to ``name``, flattening a RecList."""
        return [v for v in get_all(self, name) if isinstance(v, Record)]

    def replace(self, name: str, value: Value | None) -> "Record":
        """Copy with the first ``name`` rebound (appended when absent).

        ``None`` removes every binding of ``name``.
        """
        if value is None:
            return Record((n, v) for n, v in self._attrs if n != name)
        out, done = [], False
        for n, v in self._attrs:
            if n == name:
                if not done:
                    out.append((n, value))
                    done = True
                continue
            out.append((n, v))
        if not done:
            out.append((name, value))
        return Record(out)


def get_all(r: Record, name: str) -> list[Value]:
    """All values bound to ``name`` in order; a RecList contributes each record."""
    out: list[Value] = []
    for n, v in r.attrs:
        if n != name:
            continue
        if isinstance(v, RecList):
            out.extend(v)
        else:
            out.append(v)
    return out


# -- parsing ---------------------------------------------------------------


class RecordSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnbalancedDelimiter(RecordSyntaxError):
    pass


class UnterminatedString(RecordSyntaxError):
    pass


class EmptyAttributeName(RecordSyntaxError):
    pass


# token kinds
_LBRACE, _RBRACE, _LPAREN, _RPAREN, _STRING, _ATOM, _EOF = range(7)


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def _advance(self, n: int = 1) -> None:
        for _ in range(n):
            if self.text[self.pos] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.pos += 1

    def _at_line_start(self) -> bool:
        i = self.pos - 1
        while i >= 0 and self.text[i] in " \t\r":
            i -= 1
        return i < 0 or self.text[i] == "\n"

    def tokens(self) -> Iterator[tuple[int, str, int, int]]:
        text = self.text
        while True:
            while self.pos < len(text) and text[self.pos].isspace():
                self._advance()
            if self.pos >= len(text):
                yield (_EOF, "", self.line, self.col)
                return
            ch = text[self.pos]
            line, col = self.line, self.col
            if ch == "/" and text.startswith("//", self.pos) and self._at_line_start():
                while self.pos < len(text) and text[self.pos] != "\n":
                    self._advance()
                continue
            if ch in "{}()":
                self._advance()
                kind = {"{": _LBRACE, "}": _RBRACE, "(": _LPAREN, ")": _RPAREN}[ch]
                yield (kind, ch, line, col)
            elif ch == '"':
                self._advance()
                buf = []
                while True:
                    if self.pos >= len(text):
                        raise UnterminatedString("unterminated string", line, col)
                    c = text[self.pos]
                    if c == "\\":
                        if self.pos + 1 >= len(text):
                            raise UnterminatedString("unterminated string", line, col)
                        buf.append(text[self.pos + 1])
                        self._advance(2)
                    elif c == '"':
                        self._advance()
                        break
                    else:
                        buf.append(c)
                        self._advance()
                yield (_STRING, "".join(buf), line, col)
            else:
                start = self.pos
                while (self.pos < len(text) and not text[self.pos].isspace()
                       and text[self.pos] not in _DELIMS):
                    self._advance()
                yield (_ATOM, text[start:self.pos], line, col)


class _Parser:
    def __init__(self, text: str):
        self._toks = _Tokenizer(text).tokens()
        self._peek = next(self._toks)

    def _next(self):
        tok = self._peek
        if tok[0] != _EOF:
            self._peek = next(self._toks)
        return tok

    def at_eof(self) -> bool:
        return self._peek[0] == _EOF

    def record(self) -> Record:
        kind, text, line, col = self._next()
        if kind == _EOF:
            raise UnbalancedDelimiter("expected '{'", line, col)
        if kind in (_RBRACE, _RPAREN):
            raise UnbalancedDelimiter(f"unexpected {text!r}", line, col)
        if kind != _LBRACE:
            raise RecordSyntaxError(f"expected '{{', found {text!r}", line, col)
        return self._body(line, col)

    def _body(self, open_line: int, open_col: int) -> Record:
        attrs: list[tuple[str, Value]] = []
        while True:
            kind, text, line, col = self._next()
            if kind == _RBRACE:
                return Record(attrs)
            if kind == _EOF:
                raise UnbalancedDelimiter("unclosed '{'", open_line, open_col)
            if kind == _RPAREN:
                raise UnbalancedDelimiter("unexpected ')'", line, col)
            if kind != _ATOM:
                raise EmptyAttributeName("expected attribute name", line, col)
            name = text
            vkind, vtext, vline, vcol = self._next()
            if vkind == _STRING:
                attrs.append((name, vtext))
            elif vkind == _ATOM:
                attrs.append((name, Symbol(vtext)))
            elif vkind == _LPAREN:
                attrs.append((name, self._list(vline, vcol)))
            elif vkind == _LBRACE:
                attrs.append((name, self._body(vline, vcol)))
                while self._peek[0] == _LBRACE:
                    _, _, l2, c2 = self._next()
                    attrs.append((name, self._body(l2, c2)))
            elif vkind == _EOF:
                raise UnbalancedDelimiter("unclosed '{'", open_line, open_col)
            elif vkind == _RPAREN:
                raise UnbalancedDelimiter("unexpected ')'", vline, vcol)
            else:
                raise RecordSyntaxError(f"attribute {name!r} has no value", vline, vcol)

    def _list(self, open_line: int, open_col: int) -> AtomList:
        items: list[str] = []
        while True:
            kind, text, line, col = self._next()
            if kind == _RPAREN:
                return AtomList(items)
            if kind == _STRING:
                items.append(text)
            elif kind == _ATOM:
                items.append(Symbol(text))
            elif kind == _EOF:
                raise UnbalancedDelimiter("unclosed '('", open_line, open_col)
            elif kind == _RBRACE:
                raise UnbalancedDelimiter("unexpected '}' inside list", line, col)
            else:
                raise RecordSyntaxError("records are not allowed inside atom lists", line, col)


def parse_record(text: str) -> Record:
    """Parse exactly one record; trailing non-comment text is an error."""
    p = _Parser(text)
    rec = p.record()
    if not p.at_eof():
        kind, tok, line, col = p._next()
        if kind in (_RBRACE, _RPAREN):
            raise UnbalancedDelimiter(f"unexpected {tok!r}", line, col)
        raise RecordSyntaxError(f"trailing input {tok!r}", line, col)
    return rec


def parse_records(text: str) -> list[Record]:
    """Parse a file holding zero or more top-level records."""
    p = _Parser(text)
    out = []
    while not p.at_eof():
        out.append(p.record())
    return out


# -- serialization ---------------------------------------------------------


def _is_bare(s: str) -> bool:
    return (bool(s) and not s.startswith("//")
            and not any(c.isspace() or c in _DELIMS for c in s))


def _atom_text(a: str) -> str:
    if isinstance(a, Symbol) and _is_bare(a):
        return str(a)
    return '"' + a.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _write(r: Record, indent: int, out: list[str]) -> None:
    pad = "  " * indent
    for name, value in r.attrs:
        if isinstance(value, (Record, RecList)):
            recs = [value] if isinstance(value, Record) else value
            for rec in recs:
                out.append(f"{pad}{name} {{")
                _write(rec, indent + 1, out)
                out.append(f"{pad}}}")
        elif isinstance(value, AtomList):
            out.append(f"{pad}{name} ({' '.join(_atom_text(a) for a in value)})")
        else:
            out.append(f"{pad}{name} {_atom_text(value)}")


def serialize_record(r: Record) -> str:
    """Canonical text: two-space indentation, one attribute per line."""
    out = ["{"]
    _write(r, 1, out)
    out.append("}")
    return "\n".join(out)


def read_source(source) -> str:
    """Text of a string, an open file, or an iterable of lines."""
    if isinstance(source, str):
        return source
    if hasattr(source, "read"):
        return source.read()
    return "".join(source)


def serialize_records(records: Iterable[Record]) -> str:
    return "".join(serialize_record(r) + "\n\n" for r in records)
