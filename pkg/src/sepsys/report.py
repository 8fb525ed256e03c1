"""Analysis reports with a text and a JSON rendering, both parseable.

Values are ints, Fractions, bools, None, short strings or (nested) lists of
those. Rationals are always printed as ``a/b`` in lowest terms.

Text form::

    report <input>
    [section]
    key = value

where a value is ``true``/``false``/``none``, an integer, ``a/b``, a bare
word, a JSON-quoted string, or ``[v, v, ...]``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParseError

_RATIONAL = re.compile(r"-?\d+/\d+")
_INTEGER = re.compile(r"-?\d+")
_BARE = re.compile(r"[A-Za-z_][\w.\-]*")
_KEYWORDS = {"true", "false", "none"}


@dataclass
class AnalysisReport:
    input: str
    sections: dict[str, dict[str, object]] = field(default_factory=dict)

    def section(self, name: str) -> dict[str, object]:
        return self.sections.setdefault(name, {})

    def to_text(self) -> str:
        out = [f"report {_encode(self.input)}"]
        for name, entries in self.sections.items():
            out.append(f"[{name}]")
            out.extend(f"{key} = {_encode(value)}" for key, value in entries.items())
        return "\n".join(out) + "\n"

    def to_json(self) -> str:
        doc = {"input": self.input, "sections": {k: {kk: _jsonable(v) for kk, v in s.items()} for k, s in self.sections.items()}}
        return json.dumps(doc, indent=2) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "AnalysisReport":
        lines = [(no, raw.strip()) for no, raw in enumerate(text.splitlines(), 1) if raw.strip()]
        if not lines or not lines[0][1].startswith("report "):
            raise ParseError("expected a 'report <input>' header", 1)
        no, head = lines[0]
        rep = cls(_decode(head[len("report "):], no))
        current = None
        for no, line in lines[1:]:
            if line.startswith("[") and line.endswith("]"):
                current = rep.section(line[1:-1])
                continue
            if current is None or " = " not in line:
                raise ParseError(f"expected 'key = value' inside a section, got {line!r}", no)
            key, value = line.split(" = ", 1)
            current[key] = _decode(value, no)
        return rep

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        try:
            doc = json.loads(text)
            rep = cls(doc["input"])
            for name, entries in doc["sections"].items():
                rep.sections[name] = {k: _unjson(v) for k, v in entries.items()}
        except (ValueError, KeyError, TypeError, AttributeError) as exc:
            raise ParseError(f"malformed JSON report: {exc}") from None
        return rep


def _rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _encode(value) -> str:
    if value is None:
        return "none"
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return _rational(value)
    if isinstance(value, str):
        if _BARE.fullmatch(value) and value not in _KEYWORDS:
            return value
        return json.dumps(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in value) + "]"
    raise TypeError(f"cannot encode {type(value).__name__} in a report")


_TOKEN = re.compile(r'\s*(?:(\[)|(\])|(,)|("(?:[^"\\]|\\.)*")|([^\s,\[\]"]+))')


def _decode(text: str, line: int | None = None):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"cannot read value {text!r}", line)
        tokens.append(m)
        pos = m.end()
    value, k = _decode_tokens(tokens, 0, line)
    if k != len(tokens):
        raise ParseError(f"trailing characters in value {text!r}", line)
    return value


def _decode_tokens(tokens, k, line):
    if k >= len(tokens):
        raise ParseError("value ends early", line)
    m = tokens[k]
    if m.group(1):
        items = []
        k += 1
        if k < len(tokens) and tokens[k].group(2):
            return items, k + 1
        while True:
            item, k = _decode_tokens(tokens, k, line)
            items.append(item)
            if k < len(tokens) and tokens[k].group(3):
                k += 1
                continue
            if k < len(tokens) and tokens[k].group(2):
                return items, k + 1
            raise ParseError("unterminated list", line)
    if m.group(4):
        return json.loads(m.group(4)), k + 1
    atom = m.group(5)
    if atom is None:
        raise ParseError(f"unexpected {m.group(0).strip()!r}", line)
    return _atom(atom, line), k + 1


def _atom(atom: str, line):
    if atom == "none":
        return None
    if atom in ("true", "false"):
        return atom == "true"
    if _INTEGER.fullmatch(atom):
        return int(atom)
    if _RATIONAL.fullmatch(atom):
        return Fraction(atom)
    if _BARE.fullmatch(atom):
        return atom
    raise ParseError(f"cannot read {atom!r}", line)


def _jsonable(value):
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else _rational(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _unjson(value):
    # rationals travel as "a/b" strings; plain strings never take that shape
    if isinstance(value, str) and _RATIONAL.fullmatch(value):
        return Fraction(value)
    if isinstance(value, list):
        return [_unjson(v) for v in value]
    return value
