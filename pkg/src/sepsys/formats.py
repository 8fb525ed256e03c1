"""Line-oriented text formats: graph files, system files, certificate files
and PARTITION integer lists.

Blank lines and ``#`` comments are ignored everywhere. Numbers are exact:
integers or ``a/b`` rationals, never decimals.
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path
from typing import Iterator

from .dsep import CUTSET, PATHSET, HyperplaneCertificate
from .errors import ParseError, SepsysError, ValidationError
from .graph import UndirectedGraph, all_terminal_system
from .system import BinarySystem, MincutList, TruthTable, mask_to_word, word_str, word_to_mask
from .threshold import PartitionInstance, ThresholdDescription

_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?")
_INTEGER = re.compile(r"[+-]?\d+")


def rational_text(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(token: str, line: int | None = None) -> Fraction:
    if not _RATIONAL.fullmatch(token):
        raise ParseError(f"expected an integer or a/b rational, got {token!r}", line)
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {token!r}", line) from None


def parse_int(token: str, line: int | None = None) -> int:
    if not _INTEGER.fullmatch(token):
        raise ParseError(f"expected an integer, got {token!r}", line)
    return int(token)


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            yield no, tokens


class _Cursor:
    def __init__(self, text: str):
        self.items = list(_lines(text))
        self.pos = 0

    def next(self, what: str) -> tuple[int, list[str]]:
        if self.pos >= len(self.items):
            raise ParseError(f"unexpected end of input, expected {what}")
        item = self.items[self.pos]
        self.pos += 1
        return item

    def peek(self) -> list[str] | None:
        return self.items[self.pos][1] if self.pos < len(self.items) else None

    def done(self):
        if self.pos < len(self.items):
            no, tokens = self.items[self.pos]
            raise ParseError(f"unexpected trailing content {' '.join(tokens)!r}", no)


def _expect(tokens: list[str], keyword: str, no: int, arity: int | None = None):
    if tokens[0] != keyword:
        raise ParseError(f"expected {keyword!r}, got {tokens[0]!r}", no)
    if arity is not None and len(tokens) != arity + 1:
        raise ParseError(f"{keyword!r} takes {arity} argument(s)", no)


def _wrap(no: int | None, fn, *args):
    # attach a line number to validation errors raised by constructors
    try:
        return fn(*args)
    except ParseError:
        raise
    except SepsysError as exc:
        if no is None:
            raise
        raise type(exc)(f"line {no}: {exc}") from None


# --------------------------------------------------------------------------
# graph files


def parse_graph(text: str) -> UndirectedGraph:
    cur = _Cursor(text)
    no, head = cur.next("'graph <n> <m>'")
    _expect(head, "graph", no, 2)
    n, m = parse_int(head[1], no), parse_int(head[2], no)
    if n < 1 or m < 0:
        raise ParseError("need n >= 1 and m >= 0", no)
    edges, weights, probs = [], [], []
    for _ in range(m):
        no, tokens = cur.next("an edge line")
        _expect(tokens, "e", no)
        if len(tokens) < 3:
            raise ParseError("edge line needs two endpoints", no)
        u, v = parse_int(tokens[1], no), parse_int(tokens[2], no)
        w = p = None
        rest = tokens[3:]
        while rest:
            if len(rest) < 2 or rest[0] not in ("weight", "prob"):
                raise ParseError(f"unexpected edge attribute {' '.join(rest)!r}", no)
            value = parse_rational(rest[1], no)
            if rest[0] == "weight":
                w = value
            else:
                p = value
            rest = rest[2:]
        if not (1 <= u <= n and 1 <= v <= n):
            raise ValidationError(f"line {no}: edge ({u}, {v}) references a node outside 1..{n}")
        edges.append((u - 1, v - 1))
        weights.append(w)
        probs.append(p)
    cur.done()
    for name, vals in (("weight", weights), ("prob", probs)):
        if any(x is None for x in vals) and any(x is not None for x in vals):
            raise ParseError(f"either every edge or no edge must carry a {name}")
    return _wrap(
        no,
        UndirectedGraph,
        n,
        tuple(edges),
        tuple(weights) if m and weights[0] is not None else None,
        tuple(probs) if m and probs[0] is not None else None,
    )


def render_graph(graph: UndirectedGraph) -> str:
    out = [f"graph {graph.n} {graph.m}"]
    for i, (u, v) in enumerate(graph.edges):
        line = f"e {u + 1} {v + 1}"
        if graph.weights is not None:
            line += f" weight {rational_text(graph.weights[i])}"
        if graph.probs is not None:
            line += f" prob {rational_text(graph.probs[i])}"
        out.append(line)
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# system files


def _bits(token: str, n: int, no: int) -> tuple[int, ...]:
    if len(token) != n or set(token) - {"0", "1"}:
        raise ParseError(f"expected a {n}-bit word, got {token!r}", no)
    return tuple(int(c) for c in token)


def parse_system(text: str, base_dir: str | Path | None = None) -> BinarySystem:
    """``repr graph <path>`` is resolved relative to ``base_dir``."""
    cur = _Cursor(text)
    no, head = cur.next("'sbs <N>'")
    _expect(head, "sbs", no, 1)
    n = parse_int(head[1], no)
    if n < 1:
        raise ParseError("N must be at least 1", no)
    probs = None
    if cur.peek() and cur.peek()[0] == "probs":
        no, tokens = cur.next("probs")
        probs = tuple(parse_rational(t, no) for t in tokens[1:])
        if len(probs) != n:
            raise ParseError(f"{len(probs)} probabilities for {n} components", no)
    no, rep = cur.next("'repr ...'")
    _expect(rep, "repr", no)
    if len(rep) < 2:
        raise ParseError("missing representation kind", no)
    kind = rep[1]
    if kind == "truthtable":
        bits = "".join(rep[2:])
        if len(bits) != 1 << n or set(bits) - {"0", "1"}:
            raise ParseError(f"truth table needs exactly {1 << n} bits, got {len(bits)}", no)
        structure = TruthTable(n, tuple(int(c) for c in bits))
    elif kind == "mincuts":
        _expect(rep[1:], "mincuts", no, 1)
        k = parse_int(rep[2], no)
        if k < 0:
            raise ParseError("negative mincut count", no)
        cuts = []
        for _ in range(k):
            no, tokens = cur.next("a mincut word")
            if len(tokens) != 1:
                raise ParseError("one word per mincut line", no)
            cuts.append(word_to_mask(_bits(tokens[0], n, no)))
        structure = _wrap(no, MincutList, n, tuple(cuts))
    elif kind == "threshold":
        structure = _parse_threshold_block(cur, n)
    elif kind == "graph":
        if len(rep) != 3:
            raise ParseError("'repr graph' takes one path", no)
        path = Path(rep[2])
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        try:
            gtext = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read graph file {str(path)!r}: {exc.strerror}", no) from None
        graph = parse_graph(gtext)
        if graph.m != n:
            raise ParseError(f"graph has {graph.m} edges but the system declares {n} components", no)
        cur.done()
        return _wrap(no, all_terminal_system, graph, probs if probs is not None else graph.probs)
    else:
        raise ParseError(f"unknown representation {kind!r}", no)
    cur.done()
    return _wrap(no, BinarySystem, structure, probs)


def _parse_threshold_block(cur: _Cursor, n: int) -> ThresholdDescription:
    fields: dict[str, tuple[int, list[str]]] = {}
    for key in ("weights", "alpha0", "cmp"):
        no, tokens = cur.next(f"'{key} ...'")
        _expect(tokens, key, no)
        fields[key] = (no, tokens[1:])
    no, ws = fields["weights"]
    weights = tuple(parse_rational(t, no) for t in ws)
    if len(weights) != n:
        raise ParseError(f"{len(weights)} weights for {n} components", no)
    no, a = fields["alpha0"]
    if len(a) != 1:
        raise ParseError("alpha0 takes one rational", no)
    alpha0 = parse_rational(a[0], no)
    no, c = fields["cmp"]
    if c not in (["strict"], ["nonstrict"]):
        raise ParseError("cmp must be 'strict' or 'nonstrict'", no)
    return _wrap(no, ThresholdDescription, weights, alpha0, c[0])


def render_system(system: BinarySystem, graph_path: str | None = None) -> str:
    """Mincut lists and thresholds keep their form, anything else becomes a
    truth table (or a graph reference when ``graph_path`` is given)."""
    s = system.structure
    out = [f"sbs {system.n}"]
    if system.probs is not None:
        out.append("probs " + " ".join(rational_text(p) for p in system.probs))
    if graph_path is not None:
        out.append(f"repr graph {graph_path}")
    elif isinstance(s, MincutList):
        out.append(f"repr mincuts {len(s.cuts)}")
        out.extend(word_str(mask_to_word(c, s.n)) for c in s.cuts)
    elif isinstance(s, ThresholdDescription):
        out.append("repr threshold")
        out.append("weights " + " ".join(rational_text(w) for w in s.weights))
        out.append(f"alpha0 {rational_text(s.alpha0)}")
        out.append(f"cmp {s.path_comparison}")
    else:
        out.append("repr truthtable " + "".join(str(int(b)) for b in system.table))
    return "\n".join(out) + "\n"


def parse_input(text: str, base_dir: str | Path | None = None) -> BinarySystem | UndirectedGraph:
    """Dispatch on the first keyword: a graph file or a system file."""
    first = next(_lines(text), (0, [""]))[1][0]
    if first == "graph":
        return parse_graph(text)
    if first == "sbs":
        return parse_system(text, base_dir)
    raise ParseError(f"expected 'graph' or 'sbs' header, got {first!r}", 1)


# --------------------------------------------------------------------------
# certificate files

_SIDE_NAMES = {"pathset": PATHSET, "pathset-side": PATHSET, "cutset": CUTSET, "cutset-side": CUTSET}


def parse_certificate(text: str) -> HyperplaneCertificate:
    cur = _Cursor(text)
    no, head = cur.next("'dsep <side> <d>'")
    _expect(head, "dsep", no, 2)
    side = _SIDE_NAMES.get(head[1])
    if side is None:
        raise ParseError(f"side must be pathset or cutset, got {head[1]!r}", no)
    d = parse_int(head[2], no)
    if d < 1:
        raise ParseError("d must be at least 1", no)
    want = ">=" if side == PATHSET else "<="
    hs = []
    for _ in range(d):
        no, tokens = cur.next("an 'h ...' line")
        _expect(tokens, "h", no)
        if len(tokens) < 4 or tokens[-2] != want:
            raise ParseError(f"expected 'h <w_1> ... <w_N> {want} <alpha>'", no)
        weights = tuple(parse_rational(t, no) for t in tokens[1:-2])
        alpha = parse_rational(tokens[-1], no)
        hs.append(_wrap(no, ThresholdDescription, weights, alpha, "nonstrict"))
    cur.done()
    return _wrap(no, HyperplaneCertificate, side, tuple(hs))


def render_certificate(cert: HyperplaneCertificate) -> str:
    op = ">=" if cert.side == PATHSET else "<="
    out = [f"dsep {cert.side} {cert.d}"]
    for h in cert.hyperplanes:
        out.append("h " + " ".join(rational_text(w) for w in h.weights) + f" {op} {rational_text(h.alpha0)}")
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# PARTITION instances


def parse_partition(text: str) -> PartitionInstance:
    values = []
    for no, tokens in _lines(text):
        values.extend(parse_int(t, no) for t in tokens)
    if not values:
        raise ParseError("no integers found")
    return _wrap(None, PartitionInstance, tuple(values))
