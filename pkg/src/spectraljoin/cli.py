"""Command-line front end: spectra, joins, spread reports, and batch verification.

Exit codes: 0 success, 1 usage or parse error, 2 verification failure,
3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .errors import CapacityError, InputError
from .eig import GROUPING_TOL, MATCH_TOL, multiset_equal, spectrum
from .graphs import Graph, VertexSet
from .join import JoinPart, JoinSpec, generalized_join, verify_inherited_eigenvalues
from .quotient import RegularFamily, inclusion_check, regular_join_spectrum
from .spread import full_spread_family, gnk_family, gnk_spread_closed_form, spread
from .suites import run_bounds_suite, run_conjecture_suite, run_lemma_suite


class _UsageError(Exception):
    pass


class _ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D401 - argparse hook
        raise _UsageError(message)


def _round9(x: float) -> float:
    return round(float(x), 9) + 0.0  # normalises -0.0


# ---------------------------------------------------------------------------
# document parsing


def _load_json(path: str):
    try:
        with open(path) as f:
            return json.load(f)
    except OSError as exc:
        raise _ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _ParseError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from exc


def parse_graph_document(data, where: str = "graph") -> tuple[Graph, list[str] | None]:
    if not isinstance(data, dict):
        raise _ParseError(f"{where}: expected an object with fields 'n' and 'edges'")
    if "n" not in data or not isinstance(data["n"], int) or data["n"] < 0:
        raise _ParseError(f"{where}: field 'n' must be a non-negative integer")
    n = data["n"]
    edges = data.get("edges", [])
    if not isinstance(edges, list):
        raise _ParseError(f"{where}: field 'edges' must be a list of pairs")
    pairs = []
    for idx, e in enumerate(edges):
        if not (isinstance(e, (list, tuple)) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise _ParseError(f"{where}: edge #{idx} must be a pair of integers")
        pairs.append((e[0], e[1]))
    labels = data.get("labels")
    if labels is not None:
        if (
            not isinstance(labels, list)
            or len(labels) != n
            or len(set(labels)) != n
            or not all(isinstance(x, str) for x in labels)
        ):
            raise _ParseError(f"{where}: field 'labels' must be {n} unique strings")
    try:
        g = Graph.from_edges(n, pairs)
    except InputError as exc:
        raise _ParseError(f"{where}: {exc}") from exc
    return g, labels


def parse_edge_text(text: str, where: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise _ParseError(f"{where}: empty edge-list file")
    try:
        n = int(lines[0])
    except ValueError:
        raise _ParseError(f"{where}: first line must be the vertex count") from None
    edges = []
    for i, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise _ParseError(f"{where}: line {i} must be 'u v'")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise _ParseError(f"{where}: line {i} has non-integer endpoints") from None
    try:
        return Graph.from_edges(n, edges)
    except InputError as exc:
        raise _ParseError(f"{where}: {exc}") from exc


def load_graph(path: str, fmt: str) -> tuple[Graph, list[str] | None]:
    if fmt == "edges":
        with open(path) as f:
            return parse_edge_text(f.read(), path), None
    return parse_graph_document(_load_json(path), path)


def parse_join_document(data, where: str) -> JoinSpec:
    if not isinstance(data, dict) or "H" not in data or "parts" not in data:
        raise _ParseError(f"{where}: expected an object with fields 'H' and 'parts'")
    h, _ = parse_graph_document(data["H"], f"{where}: H")
    if not isinstance(data["parts"], list):
        raise _ParseError(f"{where}: 'parts' must be a list")
    parts = []
    for idx, entry in enumerate(data["parts"]):
        if not isinstance(entry, dict) or "graph" not in entry:
            raise _ParseError(f"{where}: part #{idx} must be an object with a 'graph'")
        g, labels = parse_graph_document(entry["graph"], f"{where}: part #{idx}")
        subset = entry.get("S")
        if subset is None:
            vs = VertexSet.full(g.n)
        else:
            if not isinstance(subset, list):
                raise _ParseError(f"{where}: part #{idx}: 'S' must be a list")
            members = []
            for item in subset:
                if isinstance(item, int):
                    members.append(item)
                elif isinstance(item, str):
                    if labels is None or item not in labels:
                        raise _ParseError(f"{where}: part #{idx}: unknown label {item!r}")
                    members.append(labels.index(item))
                else:
                    raise _ParseError(f"{where}: part #{idx}: 'S' entries must be ints or labels")
            try:
                vs = VertexSet.from_members(g.n, members)
            except InputError as exc:
                raise _ParseError(f"{where}: part #{idx}: {exc}") from exc
        parts.append(JoinPart(g, vs))
    try:
        return JoinSpec(h, tuple(parts))
    except InputError as exc:
        raise _ParseError(f"{where}: {exc}") from exc


# ---------------------------------------------------------------------------
# emission


def graph_to_document(g: Graph, labels=None) -> dict:
    doc = {"n": g.n, "edges": [[u, v] for u, v in g.edges()]}
    if labels is not None:
        doc["labels"] = list(labels)
    return doc


def emit_edges(g: Graph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def emit_dot(g: Graph, part_ranges=None) -> str:
    lines = ["graph G {"]
    if part_ranges:
        for i, (start, stop) in enumerate(part_ranges):
            lines.append(f"  subgraph cluster_{i} {{")
            lines.append(f'    label="part {i}";')
            for v in range(start, stop):
                lines.append(f"    v{v};")
            lines.append("  }")
    else:
        for v in range(g.n):
            lines.append(f"  v{v};")
    for u, v in g.edges():
        lines.append(f"  v{u} -- v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def cmd_spectrum(args) -> int:
    g, _ = load_graph(args.input, args.format)
    spec = spectrum(g, tol=args.tol)
    trace = sum(grp.value * grp.multiplicity for grp in spec.groups)
    energy = sum(grp.value ** 2 * grp.multiplicity for grp in spec.groups)
    out = {
        "eigenvalues": [
            {"value": _round9(grp.value), "multiplicity": grp.multiplicity, "main": grp.is_main}
            for grp in spec.groups
        ],
        "trace_check": abs(trace) <= 1e-8 * max(1, g.n),
        "energy_check": abs(energy - 2.0 * g.num_edges) <= 1e-8 * max(1, g.n),
    }
    print(json.dumps(out, indent=2))
    return 0 if out["trace_check"] and out["energy_check"] else 2


def _theorem1_json(report) -> dict:
    return {
        "passed": report.passed,
        "parts": [
            {
                "index": part.index,
                "status": part.status,
                "certificates": [
                    {
                        "members": list(c.set.members),
                        "k": c.k,
                        "tau": c.tau,
                        "complement_mode": c.complement_mode,
                    }
                    for c in part.certificates
                ],
                "guaranteed": [
                    {"value": _round9(v.value), "multiplicity": v.multiplicity, "found": v.found}
                    for v in part.guaranteed
                ],
                "excluded": [_round9(v) for v in part.excluded],
            }
            for part in report.parts
        ],
    }


def cmd_join(args) -> int:
    spec = parse_join_document(_load_json(args.input), args.input)
    g = generalized_join(spec)
    offsets = spec.offsets
    ranges = [(off, off + part.graph.n) for off, part in zip(offsets, spec.parts)]
    exit_code = 0
    reports = {}
    warnings = []
    if args.verify_theorem1:
        rep = verify_inherited_eigenvalues(spec, match_tol=args.match_tol)
        reports["theorem1"] = _theorem1_json(rep)
        if any(p.status == "hypothesis-unmet" for p in rep.parts):
            warnings.append("theorem1: some parts have no usable certificate (no claim checked)")
        if not rep.passed:
            exit_code = 2
    if args.verify_theorem2:
        regular = all(p.graph.is_regular() and p.graph.n > 0 for p in spec.parts)
        if not regular:
            warnings.append("theorem2: components are not all regular; nothing to check")
            reports["theorem2"] = {"mode": "inapplicable", "passed": None}
        elif all(p.subset.is_full for p in spec.parts):
            fam = RegularFamily.from_graphs(spec.h, [p.graph for p in spec.parts])
            assembled = regular_join_spectrum(fam, match_tol=args.match_tol)
            actual = np.linalg.eigvalsh(g.adjacency())[::-1]
            ok = multiset_equal(assembled, actual, args.match_tol)
            reports["theorem2"] = {
                "mode": "equality",
                "passed": bool(ok),
                "assembled": [_round9(v) for v in assembled],
                "eigensolved": [_round9(v) for v in actual],
            }
            if not ok:
                exit_code = 2
        else:
            rep = inclusion_check(spec, match_tol=args.match_tol)
            reports["theorem2"] = {"mode": "inclusion", **_theorem1_json(rep)}
            if any(p.status == "hypothesis-unmet" for p in rep.parts):
                warnings.append("theorem2: some parts have no usable certificate")
            if not rep.passed:
                exit_code = 2

    if args.emit == "json":
        out = {
            "graph": graph_to_document(g),
            "parts": [{"offset": start, "n": stop - start} for start, stop in ranges],
        }
        out.update(reports)
        print(json.dumps(out, indent=2))
    elif args.emit == "dot":
        sys.stdout.write(emit_dot(g, ranges))
    else:
        sys.stdout.write(emit_edges(g))
    for message in warnings:
        print(f"warning: {message}", file=sys.stderr)
    return exit_code


def _bounds_json(report) -> list[dict]:
    return [
        {
            "name": b.name,
            "value": _round9(b.value),
            "satisfied": b.satisfied,
            "gap": _round9(b.gap),
            "applicable": b.applicable,
        }
        for b in report.bounds
    ]


def cmd_spread(args) -> int:
    sources = sum(1 for x in (args.input, args.gnk, args.theorem6) if x)
    if sources != 1:
        raise _UsageError("need exactly one of INPUT, --gnk, or --theorem6")
    extra = {}
    if args.gnk:
        n, k = args.gnk
        g, report = gnk_family(n, k)
        closed = gnk_spread_closed_form(n, k)
        extra = {
            "source": {"kind": "gnk", "n": n, "k": k},
            "closed_form": _round9(closed),
            "matches_closed_form": abs(report.s - closed) <= 1e-8,
        }
    elif args.theorem6:
        n, p = args.theorem6
        g, chain = full_spread_family(n, p)
        report = spread(g)
        extra = {
            "source": {"kind": "theorem6", "n": n, "p": p, "q": chain.q},
            "closed_form": _round9(chain.closed_form),
            "matches_order": chain.matches_order,
            "non_regular": chain.non_regular,
            "quotient_eigenvalues": [_round9(v) for v in chain.quotient_eigenvalues],
            "lambda_min_below_minus2": chain.lambda_min_below_minus2,
        }
    else:
        g, _ = load_graph(args.input, args.format)
        report = spread(g)
        extra = {"source": {"kind": "file", "path": args.input}}
    out = {
        **extra,
        "n": report.n,
        "num_edges": report.num_edges,
        "spread": _round9(report.s),
        "lambda_max": _round9(report.lambda_max),
        "lambda_min": _round9(report.lambda_min),
        "regular": report.regular,
        "bounds": _bounds_json(report),
    }
    if report.regular:
        out["complement_connected"] = report.complement_connected
        out["equality_at_order"] = report.equality_at_order
        out["regular_biconditional_ok"] = report.regular_biconditional_ok
    print(json.dumps(out, indent=2))
    return 0 if report.all_satisfied else 2


def cmd_verify(args) -> int:
    if args.suite == "bounds":
        n = args.n if args.n is not None else 6
        if n > 48:
            raise CapacityError("bounds suite capped at n=48")
        result = run_bounds_suite(
            n_exhaustive=min(n, 6),
            n_regular=min(n, 8),
            samples=args.samples,
            max_order=max(n, 1),
            families=args.families,
            seed=args.seed,
        )
    elif args.suite == "lemma1":
        n = args.n if args.n is not None else 6
        result = run_lemma_suite(n_max=n, allow_long=args.long)
    else:
        n = args.n if args.n is not None else 5
        result = run_conjecture_suite(n, allow_long=args.long)
    for line in result.summary_lines():
        print(line)
    return 0 if result.passed else 2


# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="spectraljoin", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="grouped adjacency spectrum of a graph file")
    sp.add_argument("input")
    sp.add_argument("--format", choices=["json", "edges"], default="json")
    sp.add_argument("--tol", type=float, default=GROUPING_TOL, help="eigenvalue grouping tolerance")
    sp.set_defaults(func=cmd_spectrum)

    jp = sub.add_parser("join", help="build a constrained join from a join document")
    jp.add_argument("input")
    jp.add_argument("--emit", choices=["json", "dot", "edges"], default="json")
    jp.add_argument("--verify-theorem1", action="store_true",
                    help="check inheritance of non-main component eigenvalues")
    jp.add_argument("--verify-theorem2", action="store_true",
                    help="check the regular-family spectrum decomposition")
    jp.add_argument("--tol", type=float, default=GROUPING_TOL)
    jp.add_argument("--match-tol", type=float, default=MATCH_TOL)
    jp.set_defaults(func=cmd_join)

    rp = sub.add_parser("spread", help="spread report with the bound panel")
    rp.add_argument("input", nargs="?")
    rp.add_argument("--format", choices=["json", "edges"], default="json")
    rp.add_argument("--gnk", nargs=2, type=int, metavar=("N", "K"))
    rp.add_argument("--theorem6", nargs=2, type=int, metavar=("N", "P"))
    rp.set_defaults(func=cmd_spread)

    vp = sub.add_parser("verify", help="run a batch verification suite")
    vp.add_argument("suite", choices=["bounds", "lemma1", "conjecture"])
    vp.add_argument("--n", type=int, default=None)
    vp.add_argument("--seed", type=int, default=0)
    vp.add_argument("--samples", type=int, default=1000)
    vp.add_argument("--families", type=int, default=100)
    vp.add_argument("--long", action="store_true", help="allow long-running scales")
    vp.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except _ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
