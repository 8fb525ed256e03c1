"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 parse or validation error,
3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import allterminal as at
from .dsep import (
    SEARCH_CAP,
    level_of_separability,
    mincut_certificate,
    verify_certificate,
)
from .errors import SepsysError, SizeError, ValidationError
from .formats import (
    parse_certificate,
    parse_input,
    parse_partition,
    rational_text,
    render_certificate,
)
from .graph import UndirectedGraph, all_terminal_system, edge_connectivity, is_connected, spanning_tree_count
from .report import AnalysisReport
from .separability import is_separable
from .system import (
    EVAL_CAP,
    RELIABILITY_CAP,
    BinarySystem,
    enumerate_mincuts,
    enumerate_minpaths,
    is_monotone,
    reliability,
    word_str,
)
from .threshold import normalize_hyperplane, partition_decide

DEFAULT_MAX_D = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _load(path: str):
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    return parse_input(text, p.parent)


def _as_system(obj) -> BinarySystem:
    return all_terminal_system(obj) if isinstance(obj, UndirectedGraph) else obj


def _require_graph(obj, command: str) -> UndirectedGraph:
    if not isinstance(obj, UndirectedGraph):
        raise ValidationError(f"'{command}' needs a graph file")
    return obj


def _words(ws) -> list[str]:
    return [word_str(w) for w in ws]


def _fr(values) -> list[Fraction]:
    return [Fraction(v) for v in values]


# --------------------------------------------------------------------------
# analyses; each fills report sections and returns the plain-text lines


def _classification(graph: UndirectedGraph, rep: AnalysisReport) -> list[str]:
    cls = at.classify(graph)
    sec = rep.section("classification")
    sec.update(
        nodes=graph.n,
        edges=graph.m,
        category=cls.category.value,
        corank=cls.corank,
        separable=cls.separable,
    )
    if cls.category is not at.GraphCategory.DISCONNECTED:
        u, d = at.utility_and_difficulty(graph)
        sec.update(
            edge_connectivity=edge_connectivity(graph),
            utility=u,
            difficulty=d,
            tree_number=spanning_tree_count(graph),
        )
    if cls.separable:
        return [f"SEPARABLE corank={cls.corank} category={cls.category.value}"]
    return [f"NONSEPARABLE corank={cls.corank}"]


def _separability(system: BinarySystem, rep: AnalysisReport, cap: int) -> list[str]:
    v = is_separable(system, cap)
    sec = rep.section("separability")
    sec.update(outcome=v.outcome, margin=v.margin)
    if v.separable:
        hp = normalize_hyperplane(v.hyperplane)
        sec.update(weights=_fr(hp.weights), alpha0=hp.alpha0, comparison=hp.path_comparison)
        op = ">" if hp.strict else ">="
        return [
            f"SEPARABLE margin={rational_text(v.margin)}",
            "hyperplane: " + " ".join(rational_text(w) for w in hp.weights) + f" {op} {rational_text(hp.alpha0)}",
        ]
    cert = v.certificate
    sec.update(
        path_weights=[lam for lam, _ in cert.path_side],
        path_states=_words(w for _, w in cert.path_side),
        cut_weights=[lam for lam, _ in cert.cut_side],
        cut_states=_words(w for _, w in cert.cut_side),
        point=list(cert.point),
    )
    out = ["NONSEPARABLE"]
    out += [f"path {rational_text(lam)} {word_str(w)}" for lam, w in cert.path_side]
    out += [f"cut {rational_text(lam)} {word_str(w)}" for lam, w in cert.cut_side]
    out.append("point " + " ".join(rational_text(x) for x in cert.point))
    return out


def _reliability(obj, rep: AnalysisReport, cap: int, polynomial: bool) -> list[str]:
    sec = rep.section("reliability")
    out = []
    probs = obj.probs
    if probs is not None:
        if isinstance(obj, UndirectedGraph) and at.classify(obj).separable:
            r, method = at.reliability_closed_form(obj), "closed-form"
        else:
            r, method = reliability(_as_system(obj), cap), "enumeration"
        sec.update(value=r, method=method)
        out.append(f"R = {rational_text(r)}")
    if polynomial:
        graph = _require_graph(obj, "reliability --polynomial")
        poly = at.reliability_polynomial(graph, cap)
        sec.update(
            coefficients=list(poly.coefficients),
            tree_number=poly.tree_number,
            edge_connectivity=poly.edge_connectivity,
            corank=poly.corank,
        )
        out.append(f"R(r) = sum_i n_i r^({poly.m}-i) (1-r)^i")
        out += [f"n_{i} = {c}" for i, c in enumerate(poly.coefficients)]
        out.append(f"tau = {poly.tree_number}")
    if not out:
        raise ValidationError("no probabilities given; add them or use --polynomial")
    return out


def _assignment(graph: UndirectedGraph, rep: AnalysisReport) -> list[str]:
    cls = at.classify(graph)
    sec = rep.section("assignment")
    if not cls.separable or cls.category is at.GraphCategory.DISCONNECTED or graph.n < 2:
        sec.update(feasible=False, category=cls.category.value)
        return [f"NONE category={cls.category.value}"]
    a = at.find_feasible_assignment(graph)
    sec.update(feasible=True, costs=list(a.costs), total=a.total, mst=a.min_path_cost, mincut=a.min_cut_cost)
    return [
        "ASSIGNMENT " + " ".join(rational_text(c) for c in a.costs),
        f"S = {rational_text(a.total)} MST = {rational_text(a.min_path_cost)} mincut = {rational_text(a.min_cut_cost)}",
    ]


def _certificate_section(rep: AnalysisReport, name: str, cert) -> dict:
    sec = rep.section(name)
    sec.update(
        side=cert.side,
        d=cert.d,
        hyperplanes=[_fr(h.weights) for h in cert.hyperplanes],
        thresholds=[h.alpha0 for h in cert.hyperplanes],
    )
    return sec


def _dsep_min(system: BinarySystem, rep: AnalysisReport, max_d: int, cap: int) -> list[str]:
    res = level_of_separability(system, max_d, cap)
    if res.exceeded:
        rep.section("dsep").update(d=None, max_d=max_d)
        return [f"EXCEEDS max-d={max_d}"]
    sec = _certificate_section(rep, "dsep", res.certificate)
    sec["max_d"] = max_d
    return [f"d = {res.d} side={res.certificate.side}", render_certificate(res.certificate).rstrip("\n")]


def _system_section(system: BinarySystem, rep: AnalysisReport, cap: int) -> bool:
    mono = is_monotone(system, cap)
    sec = rep.section("system")
    sec.update(components=system.n, monotone=bool(mono))
    if mono:
        sec.update(minpaths=_words(enumerate_minpaths(system, cap)), mincuts=_words(enumerate_mincuts(system, cap)))
    else:
        sec.update(reason=mono.reason)
    return bool(mono)


def build_report(obj, name: str, max_n: int | None, max_d: int) -> AnalysisReport:
    """Every analysis that applies to the input, in a fixed order."""
    rep = AnalysisReport(name)
    system = _as_system(obj)
    if isinstance(obj, UndirectedGraph):
        _classification(obj, rep)
    cap = max_n or EVAL_CAP
    if _system_section(system, rep, cap):
        _separability(system, rep, cap)
        if system.n <= (max_n or SEARCH_CAP):
            _dsep_min(system, rep, max_d, max_n or SEARCH_CAP)
    rel_cap = max_n or RELIABILITY_CAP
    want_poly = isinstance(obj, UndirectedGraph) and obj.m <= rel_cap and is_connected(obj)
    if obj.probs is not None and system.n <= rel_cap or want_poly:
        _reliability(obj, rep, rel_cap, want_poly)
    if isinstance(obj, UndirectedGraph):
        _assignment(obj, rep)
    return rep


# --------------------------------------------------------------------------
# command dispatch


def _make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON report instead of text")
    common.add_argument("--max-n", type=int, default=None, help="enumeration cap on the number of components")

    parser = _Parser(prog="sepsys", description="Separability and reliability of stochastic binary systems.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("classify", parents=[common], help="classify a graph")
    p.add_argument("file")
    p = sub.add_parser("reliability", parents=[common], help="exact reliability")
    p.add_argument("file")
    p.add_argument("--polynomial", action="store_true", help="also print the reliability polynomial")
    p = sub.add_parser("separable", parents=[common], help="decide separability by exact LP")
    p.add_argument("file")
    p = sub.add_parser("assign", parents=[common], help="feasible cost assignment of a graph")
    p.add_argument("file")
    p = sub.add_parser("partition", parents=[common], help="decide PARTITION through reliability")
    p.add_argument("file")
    p = sub.add_parser("report", parents=[common], help="run every applicable analysis")
    p.add_argument("file")
    p.add_argument("--max-d", type=int, default=DEFAULT_MAX_D)

    p = sub.add_parser("dsep", help="level-of-separability certificates")
    dsub = p.add_subparsers(dest="action", parser_class=_Parser)
    dsub.required = True
    q = dsub.add_parser("verify", parents=[common])
    q.add_argument("file")
    q.add_argument("certificate")
    q = dsub.add_parser("bound", parents=[common])
    q.add_argument("file")
    q = dsub.add_parser("min", parents=[common])
    q.add_argument("file")
    q.add_argument("--max-d", type=int, default=DEFAULT_MAX_D)
    return parser


def _run(args) -> tuple[list[str], AnalysisReport]:
    rep = AnalysisReport(args.file)
    cmd = args.command
    if cmd == "partition":
        try:
            text = Path(args.file).read_text(encoding="utf-8")
        except OSError as exc:
            raise ValidationError(f"cannot read {args.file}: {exc.strerror}") from None
        inst = parse_partition(text)
        res = partition_decide(inst, args.max_n or RELIABILITY_CAP)
        rep.section("partition").update(
            values=list(inst.values),
            answer=res.answer,
            witness=list(res.witness) if res.witness else None,
            difference=res.difference,
            half_sum_count=res.half_sum_count,
        )
        head = "YES " + " ".join(map(str, res.witness)) if res.answer else "NO"
        return [head, f"difference = {rational_text(res.difference)}"], rep

    obj = _load(args.file)
    if cmd == "classify":
        return _classification(_require_graph(obj, cmd), rep), rep
    if cmd == "reliability":
        return _reliability(obj, rep, args.max_n or RELIABILITY_CAP, args.polynomial), rep
    if cmd == "separable":
        return _separability(_as_system(obj), rep, args.max_n or EVAL_CAP), rep
    if cmd == "assign":
        return _assignment(_require_graph(obj, cmd), rep), rep
    if cmd == "report":
        rep = build_report(obj, args.file, args.max_n, args.max_d)
        return rep.to_text().rstrip("\n").split("\n"), rep

    system = _as_system(obj)
    cap = args.max_n or EVAL_CAP
    if args.action == "verify":
        try:
            ctext = Path(args.certificate).read_text(encoding="utf-8")
        except OSError as exc:
            raise ValidationError(f"cannot read {args.certificate}: {exc.strerror}") from None
        cert = parse_certificate(ctext)
        check = verify_certificate(system, cert, cap)
        sec = _certificate_section(rep, "dsep", cert)
        sec.update(valid=check.valid)
        if check:
            return ["VALID"], rep
        sec.update(counterexample=word_str(check.counterexample), reason=check.reason)
        return [f"INVALID {word_str(check.counterexample)} ({check.reason})"], rep
    if args.action == "bound":
        cert = mincut_certificate(system, cap)
        _certificate_section(rep, "dsep", cert)
        return [render_certificate(cert).rstrip("\n")], rep
    return _dsep_min(system, rep, args.max_d, args.max_n or SEARCH_CAP), rep


def main(argv: list[str] | None = None) -> int:
    parser = _make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        lines, rep = _run(args)
    except SizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SepsysError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        sys.stdout.write(rep.to_json())
    else:
        sys.stdout.write("\n".join(lines) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
