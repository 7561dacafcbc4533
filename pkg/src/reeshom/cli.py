"""Command-line front end.

Exit status: 0 success, 1 verification mismatch, 2 malformed input,
3 computation would exceed the cell cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import theorem_a
from .bar_oracle import bar_complex, verify_theorem_a
from .errors import CellCapExceeded, ReesHomError, SchemaError
from .finiteness import (
    LabeledGraph,
    Presentation,
    cayley_graph,
    fp1_check,
    gamma_s_graph,
    graph_first_betti,
    presentation_euler_characteristic,
    pride_check,
)
from .groups import DEFAULT_CELL_CAP, FiniteGroupTable, group_from_json
from .rees import MonoidTable, ReesMatrixSemigroup, normalize, to_monoid_table

EXIT_OK, EXIT_MISMATCH, EXIT_SCHEMA, EXIT_CAP = 0, 1, 2, 3

COMMANDS = ("homology", "cohomology", "oracle", "verify", "normalize", "pride", "fp1", "betti")


def dumps(obj) -> str:
    """Canonical output: keys in construction order, two-space indent."""
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _load(path: Path):
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read input: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _field(obj, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"{where}: missing field {key!r}")
    return obj[key]


def _semigroup(obj, args) -> ReesMatrixSemigroup:
    """Accept a bare Rees object or a corpus case wrapping one under 'semigroup'."""
    if isinstance(obj, dict) and "semigroup" in obj:
        obj = obj["semigroup"]
    s = ReesMatrixSemigroup.from_json(obj)
    a0 = getattr(args, "a0", None)
    b0 = getattr(args, "b0", None)
    if a0 is not None or b0 is not None:
        s = replace(s, a0=a0 if a0 is not None else s.a0, b0=b0 if b0 is not None else s.b0)
    return s


def _monoid(obj) -> MonoidTable:
    if isinstance(obj, dict) and obj.get("kind") == "monoid_table":
        return MonoidTable.from_json(obj)
    if isinstance(obj, dict) and obj.get("kind") == "finite_table":
        return group_from_json(obj).to_monoid_table()
    if isinstance(obj, dict) and "semigroup" in obj:
        obj = obj["semigroup"]
    if isinstance(obj, dict) and "C" in obj:
        return to_monoid_table(ReesMatrixSemigroup.from_json(obj))
    raise SchemaError("expected a monoid table, a finite group table or a Rees semigroup")


def _degrees(args) -> list[int]:
    if args.degree is not None:
        return [args.degree]
    return list(range(args.max_degree + 1))


def _structure_text(obj) -> str:
    if obj is None:
        return "unresolved"
    parts = [f"Z^{obj['free_rank']}" if obj["free_rank"] > 1 else "Z"] if obj["free_rank"] else []
    parts += [f"Z/{d}" for d in obj["torsion"]]
    return " + ".join(parts) or "0"


# -- commands -----------------------------------------------------------------

def cmd_homology(args, obj):
    s = _semigroup(obj, args)
    reports = [theorem_a.homology(s, n, args.cell_cap).to_json() for n in _degrees(args)]
    lines = [f"H_{r['degree']} = {_structure_text(r['group'])}  [{r['clause']}]" for r in reports]
    return (reports[0] if args.degree is not None else reports), lines, EXIT_OK


def cmd_cohomology(args, obj):
    s = _semigroup(obj, args)
    reports = [theorem_a.cohomology(s, n, args.cell_cap).to_json() for n in _degrees(args)]
    lines = []
    for r in reports:
        line = f"H^{r['degree']} = {_structure_text(r['group'])}  [{r['clause']}]"
        if "h2_constituents" in r and r["group"] is None:
            c = r["h2_constituents"]
            line += (f"  extension of {_structure_text(c['H2_G'])}"
                     f" by {_structure_text(c['coker_Psi'])}")
        lines.append(line)
    return (reports[0] if args.degree is not None else reports), lines, EXIT_OK


def cmd_oracle(args, obj):
    monoid = _monoid(obj)
    degrees = _degrees(args)
    cc = bar_complex(monoid, max(degrees) + 1, args.cell_cap)
    out = {
        "monoid_order": monoid.order,
        "homology": [{"degree": n, "group": cc.homology(n).to_json()} for n in degrees],
        "cohomology": [{"degree": n, "group": cc.cohomology(n).to_json()} for n in degrees],
    }
    lines = [f"monoid of order {monoid.order}"]
    lines += [f"H_{r['degree']} = {_structure_text(r['group'])}" for r in out["homology"]]
    lines += [f"H^{r['degree']} = {_structure_text(r['group'])}" for r in out["cohomology"]]
    return out, lines, EXIT_OK


def _verify_one(args, obj, name: str):
    s = _semigroup(obj, args)
    max_n = args.max_degree_explicit
    if max_n is None:
        max_n = obj.get("max_degree", args.max_degree) if isinstance(obj, dict) else args.max_degree
        if not (isinstance(max_n, int) and max_n >= 0):
            raise SchemaError("'max_degree' must be a nonnegative integer")
    report = verify_theorem_a(s, max_n, args.cell_cap)
    out = {"name": name, "max_degree": max_n, **report.to_json()}
    lines = [f"{name}: {'ok' if report.ok else 'MISMATCH'} (|S^1| = {report.monoid_order}, degrees 0..{max_n})"]
    for e in report.entries:
        sym = "H_" if e.kind == "homology" else "H^"
        lines.append(f"  {sym}{e.degree}: {e.verdict} (oracle {e.oracle})")
    if not report.complex_ok:
        lines.append("  boundary composition is nonzero")
    return out, lines, report.ok


def cmd_verify(args, obj):
    path = Path(args.input)
    if path.is_dir():
        files = sorted(path.glob("*.json"))
        if not files:
            raise SchemaError(f"{path}: no *.json cases in directory")
        cases, lines, ok = [], [], True
        for f in files:
            try:
                out, ls, good = _verify_one(args, _load(f), f.stem)
            except SchemaError as exc:
                raise SchemaError(f"{f.name}: {exc}") from None
            cases.append(out)
            lines += ls
            ok = ok and good
        return {"cases": cases, "ok": ok}, lines, EXIT_OK if ok else EXIT_MISMATCH
    out, lines, good = _verify_one(args, obj, path.stem)
    return out, lines, EXIT_OK if good else EXIT_MISMATCH


def cmd_normalize(args, obj):
    s = _semigroup(obj, args)
    t, witness = normalize(s, args.a0, args.b0)
    g = s.group
    out = {
        "semigroup": t.to_json(),
        "witness": {
            "u": {a: g.element_to_json(witness.u[i]) for i, a in enumerate(s.A)},
            "v": {b: g.element_to_json(witness.v[j]) for j, b in enumerate(s.B)},
        },
        "already_normalized": witness.is_identity(),
    }
    lines = [f"normalized at (a0, b0) = ({t.a0}, {t.b0})"]
    for j, b in enumerate(t.B):
        lines.append("  " + " ".join(g.name(t.C[j][i]) for i in range(len(t.A))))
    return out, lines, EXIT_OK


def cmd_pride(args, obj):
    p = Presentation.from_json(_field(obj, "presentation", "pride input"))
    monoid = _monoid(_field(obj, "monoid", "pride input"))
    raw = _field(obj, "assign", "pride input")
    if not isinstance(raw, dict):
        raise SchemaError("pride input: 'assign' must map generators to element names")
    if not all(isinstance(v, str) for v in raw.values()):
        raise SchemaError("pride input: 'assign' values must be element names")
    assign = {x: monoid.element(name) for x, name in raw.items()}
    report = pride_check(p, monoid, assign, args.cell_cap)
    out = {**report.to_json(), "euler_characteristic": presentation_euler_characteristic(p)}
    lines = [
        f"|R| - |X| = {report.deficiency_excess}",
        f"d(H_2) - rk ab G = {report.d_h2} - {report.rk_gm_ab} = {report.bound}",
        f"bound {'holds' if report.holds else 'FAILS'}",
    ]
    return out, lines, EXIT_OK


def cmd_fp1(args, obj):
    s = _semigroup(_field(obj, "semigroup", "fp1 input"), args)
    raw = _field(obj, "Y", "fp1 input")
    if not isinstance(raw, list):
        raise SchemaError("fp1 input: 'Y' must be a list of group elements")
    ys = [s.group.element_from_json(y) for y in raw]
    verdict = fp1_check(s, ys)
    graph = gamma_s_graph(normalize(s, *s.base_pair)[0], ys)
    comps, b1 = graph_first_betti(graph)
    out = {
        "fp1": verdict,
        "gamma_connected": comps == 1,
        "gamma_vertices": len(graph.vertices),
        "gamma_edges": len(graph.edges),
        "gamma_components": comps,
    }
    lines = [f"FP_1: {verdict}", f"Gamma_S(Y): {comps} component(s), {len(graph.vertices)} vertices"]
    return out, lines, EXIT_OK


def cmd_betti(args, obj):
    if isinstance(obj, dict) and "vertices" in obj:
        graph = LabeledGraph.from_json(obj)
    else:
        group = group_from_json(_field(obj, "group", "betti input"))
        if not isinstance(group, FiniteGroupTable):
            raise SchemaError("betti input: Cayley graphs need a finite_table group")
        gens = _field(obj, "generators", "betti input")
        if not isinstance(gens, list):
            raise SchemaError("betti input: 'generators' must be a list")
        graph = cayley_graph(group, [group.element_from_json(x) for x in gens])
    comps, b1 = graph_first_betti(graph)
    out = {"vertices": len(graph.vertices), "edges": len(graph.edges), "components": comps, "b1": b1}
    return out, [f"components = {comps}, b1 = {b1}"], EXIT_OK


HANDLERS = {
    "homology": cmd_homology,
    "cohomology": cmd_cohomology,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
    "normalize": cmd_normalize,
    "pride": cmd_pride,
    "fp1": cmd_fp1,
    "betti": cmd_betti,
}


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reeshom",
        description="Homology of completely simple semigroups and presentation audits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "homology": "closed-form homology of a Rees matrix semigroup",
        "cohomology": "closed-form cohomology of a Rees matrix semigroup",
        "oracle": "bar-complex (co)homology of a finite monoid or Rees semigroup",
        "verify": "compare closed forms with the oracle (file or directory)",
        "normalize": "normalize a sandwich matrix at (a0, b0)",
        "pride": "audit the deficiency bound of a monoid presentation",
        "fp1": "FP_1 test and the connectivity of its graph",
        "betti": "components and first Betti number of a graph or Cayley graph",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("--input", "-i", required=True, metavar="PATH")
        p.add_argument("--max-degree", type=_nonneg, default=None, metavar="N")
        p.add_argument("--degree", type=_nonneg, default=None, metavar="N",
                       help="report a single degree (homology, cohomology, oracle)")
        p.add_argument("--cell-cap", type=_nonneg, default=DEFAULT_CELL_CAP, metavar="N")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--a0", default=None, metavar="NAME")
        p.add_argument("--b0", default=None, metavar="NAME")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_SCHEMA if exc.code else EXIT_OK
    args.max_degree_explicit = args.max_degree
    if args.max_degree is None:
        args.max_degree = 2
    path = Path(args.input)
    try:
        obj = None if (args.command == "verify" and path.is_dir()) else _load(path)
        result, lines, status = HANDLERS[args.command](args, obj)
    except CellCapExceeded as exc:
        print(f"reeshom: {path}: {exc}", file=stderr)
        return EXIT_CAP
    except ReesHomError as exc:
        print(f"reeshom: {path}: {exc}", file=stderr)
        return EXIT_SCHEMA
    except (TypeError, ValueError, KeyError, IndexError) as exc:
        # last line of defence: a shape the validators above did not anticipate
        print(f"reeshom: {path}: malformed input ({type(exc).__name__}: {exc})", file=stderr)
        return EXIT_SCHEMA
    if args.format == "json":
        print(dumps(result), file=stdout)
    else:
        print("\n".join(lines), file=stdout)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
