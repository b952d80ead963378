import argparse
import json
import logging
import sys
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple

from .bounds import OrderingChoice, compute_bounds, edge_profiles, lex_edge_ordering, vertex_profiles
from .builtin_meshes import BUILTIN_NAMES, REFERENCE_R, REFERENCE_TABLES, builtin_name, example_text, load_mesh_source
from .config import FORMATS, ORDERINGS, Config, load_config
from .errors import InvalidArgumentError, SplineError
from .forms import binom, interior_triangle_forms
from .homology import compute_homology, freeness_through, h0_upper_estimate
from .logging_setup import setup_logging
from .mesh import Face, build_face_tables, check_ball_hypothesis, face_key
from .oracle import build_system
from .report import build_table, render

log = logging.getLogger("cli")


@dataclass(frozen=True)
class RunConfig:
    command: str
    source: str = ""
    name: str = ""
    r: int = 1
    ks: Tuple[int, ...] = (0,)
    ordering: OrderingChoice = OrderingChoice()
    output_format: str = "text"
    with_oracle: bool = False
    with_reference: bool = False
    workers: int = 1


def parse_k_range(text: str) -> Tuple[int, ...]:
    """'K' or 'A..B' (inclusive)."""
    raw = text.strip()
    try:
        if ".." in raw:
            a, b = raw.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(raw)
    except ValueError:
        raise InvalidArgumentError(f"--k must be K or A..B, got {text!r}")
    if lo < 0 or hi < lo:
        raise InvalidArgumentError(f"--k range {text!r} is empty or negative")
    return tuple(range(lo, hi + 1))


def parse_edge_order(text: str) -> Tuple[Face, ...]:
    out = []
    for part in text.split(","):
        e = face_key(part)
        if e is None:
            raise InvalidArgumentError(f"--edge-order entries are a-b, got {part!r}")
        out.append(e)
    return tuple(out)


def parse_vertex_order(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise InvalidArgumentError(f"--vertex-order entries are integers, got {text!r}")


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="splinedim", description="Dimension bounds for trivariate C^r splines")
    p.add_argument("--log-level", default=None)
    sub = p.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("example", help="print a built-in TETMESH")
    ex.add_argument("name", choices=BUILTIN_NAMES)

    an = sub.add_parser("analyze", help="face counts, plane counts and ball diagnostics")
    an.add_argument("mesh")
    an.add_argument("--format", choices=FORMATS, default=None)

    for name, help_text in (
        ("bounds", "lower / ordered upper / free-case upper bounds"),
        ("homology", "dim H0, H1, H2 of the ideal complex"),
        ("dim", "exact dim C^r_k from the smoothness system"),
        ("table", "per-degree table"),
    ):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("mesh")
        sp.add_argument("--r", type=int, required=True)
        sp.add_argument("--k", required=True, help="K or A..B")
        sp.add_argument("--format", choices=FORMATS, default=None)
        if name in ("bounds", "table", "homology"):
            sp.add_argument("--ordering", choices=ORDERINGS, default=None)
            sp.add_argument("--budget", type=int, default=None)
            sp.add_argument("--seed", type=int, default=None)
            sp.add_argument("--edge-order", default=None, help="a-b,c-d,...")
            sp.add_argument("--vertex-order", default=None, help="i,j,...")
        if name == "table":
            sp.add_argument("--oracle", action="store_true")
            sp.add_argument("--reference", action="store_true")
            sp.add_argument("--workers", type=int, default=None)
    return p


def make_run_config(args: argparse.Namespace, cfg: Config) -> RunConfig:
    rc = RunConfig(command=args.command, output_format=getattr(args, "format", None) or cfg.output_format)
    if args.command == "example":
        return replace(rc, name=args.name)
    rc = replace(rc, source=args.mesh)
    if args.command == "analyze":
        return rc

    if args.r < 0:
        raise InvalidArgumentError(f"--r must be >= 0, got {args.r}")
    budget = getattr(args, "budget", None)
    budget = cfg.search_budget if budget is None else budget
    if budget < 1:
        raise InvalidArgumentError(f"--budget must be >= 1, got {budget}")
    edge_text = getattr(args, "edge_order", None)
    vert_text = getattr(args, "vertex_order", None)
    choice = OrderingChoice(
        strategy=getattr(args, "ordering", None) or cfg.ordering,
        edge_order=parse_edge_order(edge_text) if edge_text else None,
        vertex_order=parse_vertex_order(vert_text) if vert_text else None,
        budget=budget,
        seed=cfg.search_seed if getattr(args, "seed", None) is None else args.seed,
    )
    workers = getattr(args, "workers", None) or cfg.workers
    if workers < 1:
        raise InvalidArgumentError(f"--workers must be >= 1, got {workers}")
    return replace(
        rc,
        r=args.r,
        ks=parse_k_range(args.k),
        ordering=choice,
        with_oracle=getattr(args, "oracle", False),
        with_reference=getattr(args, "reference", False),
        workers=workers,
    )


def _load(rc: RunConfig):
    tables = build_face_tables(load_mesh_source(rc.source))
    diag = check_ball_hypothesis(tables)
    return tables, interior_triangle_forms(tables), diag


def cmd_example(name: str) -> str:
    return example_text(name)


def cmd_analyze(rc: RunConfig) -> str:
    tables, forms, diag = _load(rc)
    edges = edge_profiles(tables, forms, lex_edge_ordering(tables))
    verts = vertex_profiles(tables, forms, tables.interior_vertices)
    f, f0 = tables.f, tables.f_interior
    if rc.output_format == "json":
        payload = {
            "source": rc.source,
            "f": list(f),
            "f_interior": list(f0),
            "edges": [{"edge": list(p.edge), "s": p.s} for p in edges],
            "vertices": [{"vertex": p.vertex, "t": p.t} for p in verts],
            "diagnostics": {
                "euler": diag.euler,
                "euler_ok": diag.euler_ok,
                "boundary_closed": diag.boundary_closed,
                "ok": diag.ok,
                "messages": list(diag.messages),
            },
        }
        return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"
    if rc.output_format == "csv":
        lines = ["kind,face,count"]
        lines.extend(f"edge,{p.edge[0]}-{p.edge[1]},{p.s}" for p in edges)
        lines.extend(f"vertex,{p.vertex},{p.t}" for p in verts)
        return "\n".join(lines) + "\n"
    lines = [
        f"source      {rc.source}",
        f"faces       f0={f[0]} f1={f[1]} f2={f[2]} f3={f[3]}",
        f"interior    f0={f0[0]} f1={f0[1]} f2={f0[2]} f3={f0[3]}",
        f"euler       {diag.euler} ({'ok' if diag.euler_ok else 'not a ball'})",
        f"boundary    {'closed surface' if diag.boundary_closed else 'not a closed surface'}",
    ]
    lines.extend(f"edge {p.edge[0]}-{p.edge[1]}  s={p.s}" for p in edges)
    lines.extend(f"vertex {p.vertex}  t={p.t}" for p in verts)
    lines.extend(f"warning     {m}" for m in diag.messages)
    return "\n".join(lines) + "\n"


def _emit_rows(rc: RunConfig, rows: List[dict]) -> str:
    if rc.output_format == "json":
        return json.dumps(rows, ensure_ascii=False, indent=2) + "\n"
    names = list(rows[0]) if rows else []
    if rc.output_format == "csv":
        out = [",".join(names)]
        out.extend(",".join(_cell(row[n]) for n in names) for row in rows)
        return "\n".join(out) + "\n"
    return "\n".join("  ".join(f"{n}={_cell(row[n])}" for n in names) for row in rows) + "\n"


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return " ".join("-".join(map(str, x)) if isinstance(x, (list, tuple)) else str(x) for x in v)
    return str(v)


def cmd_bounds(rc: RunConfig) -> str:
    tables, forms, _ = _load(rc)
    rows = []
    for k in rc.ks:
        b = compute_bounds(tables, forms, rc.r, k, rc.ordering)
        rows.append({
            "k": k,
            "lower": b.lower,
            "upper": b.upper_ordered,
            "upper_free": b.upper_free,
            "free_formula_exact": b.free_formula_exact,
            "edge_ordering": [list(e) for e in b.edge_ordering],
            "vertex_ordering": list(b.vertex_ordering),
            "edge_orderings_tried": b.edge_orderings_tried,
            "vertex_orderings_tried": b.vertex_orderings_tried,
        })
    return _emit_rows(rc, rows)


def cmd_homology(rc: RunConfig) -> str:
    tables, forms, _ = _load(rc)
    dims = {j: compute_homology(tables, forms, rc.r, j) for j in range(max(rc.ks) + 1)}
    free_k = freeness_through(tables, forms, rc.r, max(rc.ks), dims=list(dims.values()))
    rows = []
    for k in rc.ks:
        d = dims[k]
        rows.append({
            "k": k,
            "h0": d.h0,
            "h1": d.h1,
            "h2": d.h2,
            "dim": binom(k + 3, 3) + d.h2,
            "h0_estimate": h0_upper_estimate(tables, forms, rc.r, k, rc.ordering.vertex_order),
            "free_through": min(free_k, k),
        })
    return _emit_rows(rc, rows)


def cmd_dim(rc: RunConfig) -> str:
    tables, forms, _ = _load(rc)
    rows = []
    for k in rc.ks:
        system = build_system(tables, forms, rc.r, k)
        rows.append({"k": k, "dim": system.nullity(), "cofactors_injective": system.cofactors_injective()})
    return _emit_rows(rc, rows)


def cmd_table(rc: RunConfig) -> str:
    tables, forms, _ = _load(rc)
    reference = {}
    name = builtin_name(rc.source)
    if rc.with_reference:
        if name in REFERENCE_TABLES and REFERENCE_R.get(name) == rc.r:
            reference = REFERENCE_TABLES[name]
        else:
            log.warning("no_reference_table", extra={"source": rc.source, "r": rc.r})
    report = build_table(
        tables,
        forms,
        rc.r,
        rc.ks,
        choice=rc.ordering,
        with_oracle=rc.with_oracle,
        workers=rc.workers,
        source=rc.source,
        reference=reference,
    )
    return render(report, rc.output_format)


def run(rc: RunConfig) -> str:
    if rc.command == "example":
        return cmd_example(rc.name)
    handlers = {
        "analyze": cmd_analyze,
        "bounds": cmd_bounds,
        "homology": cmd_homology,
        "dim": cmd_dim,
        "table": cmd_table,
    }
    return handlers[rc.command](rc)


def _fail(category: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": category, "message": message}, ensure_ascii=False) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config()
        setup_logging(args.log_level or cfg.log_level, json_output=cfg.log_json)
    except SplineError as e:
        setup_logging("INFO")
        _fail(e.category, str(e))
        return 2

    try:
        rc = make_run_config(args, cfg)
        log.info("start", extra={"command": rc.command, "source": rc.source, "r": rc.r})
        sys.stdout.write(run(rc))
    except SplineError as e:
        log.error("failed", extra={"category": e.category, "error": str(e)})
        _fail(e.category, str(e))
        return 2
    except Exception as e:
        log.exception("failed", extra={"category": "internal"})
        _fail("internal", str(e))
        return 1
    log.info("done", extra={"command": rc.command})
    return 0


if __name__ == "__main__":
    sys.exit(main())
