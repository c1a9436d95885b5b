"""Command-line interface.

Exit status: 0 on success, 1 on usage or domain errors, 2 when a
verification check fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .alcove import AlcoveError, enumerate_fields
from .doublegraph import GraphError, dual_graph, even_vertex_count, principal_graph_for
from .export import even_label, export_graph, fmt
from .fusion import FoldingError, fusion_product
from .modular import TOLERANCE_ENV, ModularDataError, degenerate_set, s_matrix, simple_currents
from .orbifold import OrbifoldError, orbifold_report
from .verification import format_table, run_suite

ALGEBRAS = {"su2": 2, "su3": 3}
DOMAIN_ERRORS = (AlcoveError, FoldingError, GraphError, ModularDataError, OrbifoldError, ValueError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for verification failures here
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _labels(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated Dynkin labels, got {text!r}") from None


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--algebra", choices=sorted(ALGEBRAS), default="su2")
    common.add_argument("--level", type=int, default=4)
    common.add_argument("--format", choices=("json", "dot", "table"), default="table")
    common.add_argument("--out", type=Path, help="write output here instead of stdout")
    common.add_argument("--tolerance", type=_positive_float, help=f"numeric tolerance (default from {TOLERANCE_ENV} or 1e-6)")

    parser = _Parser(prog="asymdouble", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("fields", parents=[common], help="list primary fields with grading and qdim")
    p = sub.add_parser("fusion", parents=[common], help="fusion product a x b")
    p.add_argument("--a", type=_labels, required=True)
    p.add_argument("--b", type=_labels, required=True)
    sub.add_parser("smatrix", parents=[common], help="modular S-matrix")
    sub.add_parser("degenerate", parents=[common], help="degenerate fields of the grade-0 system")
    sub.add_parser("principal-graph", parents=[common], help="fusion graph of the grade-0 system")
    sub.add_parser("dual-graph", parents=[common], help="dual principal graph")
    sub.add_parser("counts", parents=[common], help="number of even vertices of the dual graph")
    p = sub.add_parser("orbifold", parents=[common], help="index bookkeeping for SU(2)_{4n-4}")
    p.add_argument("--n", type=int, required=True)
    p = sub.add_parser("verify", parents=[common], help="run a reproducibility suite")
    p.add_argument("--suite", choices=("paper", "quick"), default="quick")
    return parser


def _table(rows: list[tuple]) -> str:
    cells = [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(cells[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _render(args, payload: dict, rows: list[tuple] | None) -> str:
    if args.format == "json":
        return _dump(payload)
    if args.format == "dot":
        raise UsageError(f"--format dot is only available for graph commands, not {args.command}")
    return _table(rows) + "\n" if rows else ""


def _command_output(args) -> tuple[str, int]:
    n = ALGEBRAS[args.algebra]
    k = args.level
    model = {"rank": n, "level": k}
    cmd = args.command

    if cmd == "fields":
        md = s_matrix(n, k)
        t = md.table
        items = [{"field": list(f.labels), "label": str(f), "grade": t.grades[i], "qdim": fmt(md.qdims[i])}
                 for i, f in enumerate(t)]
        rows = [("field", "grade", "qdim")] + [(d["label"], d["grade"], d["qdim"]) for d in items]
        return _render(args, {"model": model, "fields": items}, rows), 0

    if cmd == "fusion":
        t = enumerate_fields(n, k)
        a, b = t[t.index(args.a)], t[t.index(args.b)]
        prod = fusion_product(a, b)
        label = (lambda lab: str(t[t.index(lab)]))
        items = [{"field": list(lab), "label": label(lab), "multiplicity": m} for lab, m in prod.items()]
        rows = [("field", "multiplicity")] + [(d["label"], d["multiplicity"]) for d in items]
        return _render(args, {"model": model, "a": list(a.labels), "b": list(b.labels), "product": items}, rows), 0

    if cmd == "smatrix":
        md = s_matrix(n, k)
        labels = [str(f) for f in md.table]
        payload = {"model": model, "fields": labels,
                   "re": [[fmt(x) for x in row] for row in md.s.real],
                   "im": [[fmt(x) for x in row] for row in md.s.imag]}

        def cell(z):
            return f"{z.real:.12g}" if abs(z.imag) < md.tolerance else f"{z.real:.12g}{z.imag:+.12g}j"

        rows = [("", *labels)] + [(labels[i], *(cell(z) for z in md.s[i])) for i in range(len(labels))]
        return _render(args, payload, rows), 0

    if cmd == "degenerate":
        md = s_matrix(n, k)
        grade0 = md.table.grade_indices(0)
        found = degenerate_set(md, grade0)
        currents = simple_currents(md, grade0)
        payload = {"model": model, "degenerate": [str(md.table[x]) for x in found],
                   "simple_currents": [str(md.table[x]) for x in currents]}
        rows = [("degenerate", "simple current")] + [
            (str(md.table[x]), "yes" if x in currents else "no") for x in found
        ]
        return _render(args, payload, rows), 0

    if cmd in ("principal-graph", "dual-graph"):
        g = principal_graph_for(n, k) if cmd == "principal-graph" else dual_graph(n, k)
        if args.format in ("json", "dot"):
            return export_graph(g, args.format, args.tolerance).decode(), 0
        t = g.edges
        table = enumerate_fields(n, k)
        rows = [("even", "dim", *(str(table[x]) for x in g.odd))]
        rows += [(even_label(g, v), fmt(v.dimension), *map(int, t[i])) for i, v in enumerate(g.even)]
        return _table(rows) + "\n", 0

    if cmd == "counts":
        count = even_vertex_count(n, k) if k > 2 else len(dual_graph(n, k).even)
        if args.format == "table":
            return f"{count}\n", 0
        return _render(args, {"model": model, "even_vertices": count}, None), 0

    if cmd == "orbifold":
        rep = orbifold_report(args.n)
        payload = {
            "n": rep.n_param, "level": rep.level, "M": fmt(rep.m_index), "gamma": fmt(rep.gamma),
            "N0": fmt(rep.n0_index), "N1": fmt(rep.n1_index), "N0_objects": rep.n0_objects,
            "quotient_objects": rep.quotient_objects, "quotient_index": fmt(rep.quotient_index),
            "invertible": list(rep.invertible),
            "checks": [{"check": c, "ok": ok, "residual": fmt(r)} for c, ok, r in rep.checks],
        }
        rows = [("quantity", "value")] + [(key, payload[key]) for key in
                                          ("level", "M", "gamma", "N0", "N1", "N0_objects",
                                           "quotient_objects", "quotient_index")]
        rows += [(f"check: {c}", f"{'ok' if ok else 'FAIL'} ({r:.3g})") for c, ok, r in rep.checks]
        return _render(args, payload, rows), 0 if rep.passed else 2

    if cmd == "verify":
        result = run_suite(args.suite)
        if args.format == "json":
            payload = {"suite": result.suite, "passed": result.passed, "seconds": round(result.seconds, 3),
                       "claims": [{"id": c.key, "claim": c.claim, "expected": c.expected, "computed": c.computed,
                                   "residual": fmt(c.residual) if np.isfinite(c.residual) else None, "ok": c.ok}
                                  for c in result.claims]}
            text = _dump(payload)
        elif args.format == "dot":
            raise UsageError("--format dot is not available for verify")
        else:
            text = format_table(result) + "\n"
        return text, 0 if result.passed else 2

    raise UsageError(f"unknown command {cmd}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    saved = os.environ.get(TOLERANCE_ENV)
    if args.tolerance is not None:
        os.environ[TOLERANCE_ENV] = repr(args.tolerance)
    try:
        text, status = _command_output(args)
    except UsageError as exc:
        print(f"asymdouble: error: {exc}", file=sys.stderr)
        return 1
    except DOMAIN_ERRORS as exc:
        print(f"asymdouble: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    finally:
        # main() may be called in-process; do not leak the override
        if saved is None:
            os.environ.pop(TOLERANCE_ENV, None)
        else:
            os.environ[TOLERANCE_ENV] = saved
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
