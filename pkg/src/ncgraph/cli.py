"""ncgraph command line: spectra, batch verification and group summaries.

Exit codes: 0 success or agreement, 1 usage or runtime error, 2 unexplained
disagreement between methods.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from .catalog import FAMILY_IDS, FamilySpec, default_grid
from .errors import NcGraphError
from .graphs import is_planar, max_clique, non_commuting_graph
from .groups import (
    DEFAULT_ORDER_CAP,
    center,
    commuting_probability,
    distinct_centralizer_count,
    is_ac_group,
    is_solvable,
)
from .predictions import (
    METHODS,
    FormulaError,
    applicable_statements,
    formula_terms,
    predict,
    run_catalog_verification,
    summarize,
)
from .spectra import DEFAULT_TOL, is_l_integral, spectrum_ac_structural

log = logging.getLogger("ncgraph")

EXIT_OK, EXIT_ERROR, EXIT_DISAGREE = 0, 1, 2
_PARAM_FLAGS = ("m", "n", "p", "q", "k")


class UsageError(NcGraphError):
    pass


def _methods(text: str) -> tuple:
    methods = tuple(dict.fromkeys(m.strip() for m in text.split(",") if m.strip()))
    bad = [m for m in methods if m not in METHODS]
    if bad or not methods:
        raise argparse.ArgumentTypeError(f"methods must be a comma list drawn from {','.join(METHODS)}")
    return methods


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("tolerance must be > 0")
    return value


def _spec_from_args(args) -> FamilySpec:
    if args.spec:
        return FamilySpec.parse(args.spec)
    if not args.family:
        raise UsageError("give --family (with its parameters) or --spec")
    params = {k: getattr(args, k) for k in _PARAM_FLAGS}
    params.update(type=args.type, base=args.base, abelian=args.abelian, orders=args.orders)
    return FamilySpec.of(args.family, **params)


def _dump(doc, fmt: str, rows=None, text=None) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows or [])
        return buf.getvalue()
    return text or ""


def _emit(out: str, path) -> None:
    if path:
        Path(path).write_text(out)
    else:
        sys.stdout.write(out)


def cmd_spectrum(args) -> int:
    spec = _spec_from_args(args)
    G = spec.build(args.max_order)
    g = non_commuting_graph(G)
    if args.edges:
        g.write_edge_list(args.edges)
    spectra, notes, source = {}, [], None
    if "formula" in args.methods:
        found = applicable_statements(spec, G, args.max_order)
        if not found:
            notes.append("formula: no closed form applies to this group")
        else:
            source, params = found[0]
            try:
                spectra["formula"] = predict(source, **params)
            except FormulaError as exc:
                spectra["formula"] = None
                notes.append(f"formula ({source}): {exc}; raw terms {formula_terms(source, **params)}")
    if "structural" in args.methods:
        if is_ac_group(G):
            spectra["structural"] = spectrum_ac_structural(G)
        else:
            notes.append("structural: not an AC-group")
    if "numeric" in args.methods:
        li = is_l_integral(g, args.tol)
        spectra["numeric"] = li.certificate
        if not li:
            notes.append(f"numeric: {li.reason}")
    computed = [s for s in spectra.values()]
    agree = bool(computed) and all(s is not None for s in computed) and all(s == computed[0] for s in computed)
    if agree and len(computed) == 1:
        notes.append("only one method produced a spectrum")
    doc = {
        "spec": spec.text,
        "group": G.name,
        "order": G.order,
        "center_order": len(center(G)),
        "vertices": g.vertex_count,
        "formula_source": source,
        "spectra": {m: (s.to_json() if s is not None else None) for m, s in spectra.items()},
        "agree": agree,
        "notes": notes,
    }
    rows = [("method", "eigenvalue", "multiplicity")]
    rows += [(m, e["eigenvalue"], e["multiplicity"]) for m, s in doc["spectra"].items() for e in (s or [])]
    text = "".join(f"{m}: {s if s is not None else 'unavailable'}\n" for m, s in spectra.items())
    text += f"agree: {str(agree).lower()}\n" + "".join(f"note: {n}\n" for n in notes)
    _emit(_dump(doc, args.format, rows, text), args.out)
    return EXIT_OK if agree else EXIT_DISAGREE


def _read_grid(path) -> list[FamilySpec]:
    specs = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            specs.append(FamilySpec.parse(line))
    return specs


def cmd_verify(args) -> int:
    grid = _read_grid(args.grid) if args.grid else default_grid()
    reports = run_catalog_verification(grid, args.max_order, args.methods, args.tol)
    summary = summarize(reports)
    doc = {"summary": summary, "reports": [r.to_dict() for r in reports]}
    rows = [("spec", "status", "source", "agrees", "explained", "note")]
    lines = []
    for r in reports:
        status = "skipped" if r.skipped else "error" if r.errors else "ok" if r.ok else "disagree"
        rows += [(r.spec, status, p.source, p.agrees, p.explained, p.note) for p in r.predictions]
        if not r.predictions:
            rows.append((r.spec, status, "", "", "", r.skipped or "; ".join(r.errors)))
        lines.append(f"{status:8} {r.spec}" + (f"  ({r.skipped})" if r.skipped else ""))
        lines += [f"         {e}" for e in r.errors + r.unexplained + r.explained]
    _emit(_dump(doc, args.format, rows, "\n".join(lines) + "\n"), args.out)
    print(
        f"{summary['statements_verified']} statements verified, "
        f"{summary['explained_discrepancies']} explained discrepancies, "
        f"{summary['unexplained_discrepancies']} unexplained, "
        f"{summary['skipped']} skipped, {summary['errors']} errors",
        file=sys.stderr if not args.out else sys.stdout,
    )
    if summary["errors"]:
        return EXIT_ERROR
    return EXIT_DISAGREE if summary["unexplained_discrepancies"] else EXIT_OK


def cmd_group_info(args) -> int:
    spec = _spec_from_args(args)
    G = spec.build(args.max_order)
    g = non_commuting_graph(G)
    if args.edges:
        g.write_edge_list(args.edges)
    li = is_l_integral(g, args.tol)
    pr = commuting_probability(G)

    def capped(fn):
        try:
            return fn(g)
        except NcGraphError:
            return None

    doc = {
        "spec": spec.text,
        "group": G.name,
        "order": G.order,
        "center": len(center(G)),
        "pr": f"{pr.numerator}/{pr.denominator}",
        "centralizers": distinct_centralizer_count(G),
        "ac": is_ac_group(G),
        "solvable": is_solvable(G),
        "planar": capped(is_planar),
        "r": capped(max_clique),
        "l_integral": bool(li),
        "certificate": li.certificate.to_json() if li else None,
    }
    rows = [("field", "value")] + [(k, json.dumps(v)) for k, v in doc.items()]
    text = "".join(f"{k}: {json.dumps(v) if not isinstance(v, str) else v}\n" for k, v in doc.items())
    _emit(_dump(doc, args.format, rows, text), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--methods", type=_methods, default=METHODS, help="comma list of formula,structural,numeric")
    common.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL, help="absolute rounding tolerance")
    common.add_argument("--max-order", type=int, default=DEFAULT_ORDER_CAP, help="refuse groups larger than this")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", help="write the document here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    group = argparse.ArgumentParser(add_help=False)
    group.add_argument("--spec", help="family spec text, e.g. 'family=dihedral;m=7'")
    group.add_argument("--family", choices=FAMILY_IDS)
    for k in _PARAM_FLAGS:
        group.add_argument(f"--{k}", type=int)
    group.add_argument("--type", help="extraspecial type: exponent-p or exponent-p2")
    group.add_argument("--base", help="non-abelian factor family of a direct product")
    group.add_argument("--abelian", help="abelian factor of a direct product, e.g. 2x2")
    group.add_argument("--orders", help="cyclic factor orders for family=abelian, e.g. 2x3")
    group.add_argument("--edges", metavar="PATH", help="also write the non-commuting graph as an edge list")

    parser = argparse.ArgumentParser(prog="ncgraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("spectrum", parents=[common, group], help="Laplacian spectrum of A_G by each method")
    p.set_defaults(func=cmd_spectrum)
    p = sub.add_parser("verify", parents=[common], help="check every applicable closed form over a grid")
    p.add_argument("--grid", help="file with one family spec per line ('#' comments); default grid if omitted")
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("group-info", parents=[common, group], help="order, centre, Pr(G), centralizers, L-integrality")
    p.set_defaults(func=cmd_group_info)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (NcGraphError, OSError, ValueError) as exc:
        print(f"ncgraph: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
