"""Per-degree tables: bounds, homology and the optional exact dimension."""
import csv
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .bounds import BoundResult, OrderingChoice, compute_bounds
from .errors import InvalidArgumentError
from .forms import LinearForm
from .homology import HomologyDims, compute_homology, euler_identity_check, freeness_through
from .mesh import Face, FaceTables
from .oracle import spline_dim

log = logging.getLogger("report")

Forms = Mapping[Face, LinearForm]


@dataclass(frozen=True)
class TableRow:
    k: int
    lower: int
    upper: int
    upper_free: int
    upper_free_certified: bool
    h0: int
    h1: int
    h2: int
    oracle: Optional[int] = None
    euler_residual: Optional[int] = None


@dataclass(frozen=True)
class GradedReport:
    source: str
    r: int
    rows: Tuple[TableRow, ...]
    free_through: int
    free_formula_exact: bool
    edge_ordering: Tuple[Face, ...] = ()
    vertex_ordering: Tuple[int, ...] = ()
    reference: Dict[str, Tuple[int, ...]] = field(default_factory=dict)


def _degree_task(
    tables: FaceTables,
    forms: Forms,
    r: int,
    k: int,
    choice: OrderingChoice,
    want_bounds: bool,
    with_oracle: bool,
) -> Tuple[int, Optional[BoundResult], HomologyDims, Optional[int]]:
    dims = compute_homology(tables, forms, r, k)
    if not want_bounds:
        return k, None, dims, None
    bounds = compute_bounds(tables, forms, r, k, choice)
    dim = spline_dim(tables, forms, r, k) if with_oracle else None
    return k, bounds, dims, dim


def build_table(
    tables: FaceTables,
    forms: Forms,
    r: int,
    ks: Sequence[int],
    choice: OrderingChoice = OrderingChoice(),
    with_oracle: bool = False,
    workers: int = 1,
    source: str = "",
    reference: Dict[str, Tuple[int, ...]] = None,
) -> GradedReport:
    """Rows for every k in `ks`; homology runs for all degrees 0..max(ks) to certify freeness."""
    ks = sorted(set(ks))
    if not ks:
        raise InvalidArgumentError("build_table needs at least one degree")
    kmax = ks[-1]
    wanted = set(ks)
    jobs = [(tables, forms, r, j, choice, j in wanted, with_oracle) for j in range(kmax + 1)]

    log.info("table_start", extra={"r": r, "k_min": ks[0], "k_max": kmax, "workers": workers, "oracle": with_oracle})
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_degree_task, *zip(*jobs)))
    else:
        results = [_degree_task(*j) for j in jobs]
    results.sort(key=lambda x: x[0])

    all_dims = [d for _, _, d, _ in results]
    free_k = freeness_through(tables, forms, r, kmax, dims=all_dims)

    rows: List[TableRow] = []
    last_bounds: Optional[BoundResult] = None
    for k, bounds, dims, dim in results:
        if bounds is None:
            continue
        last_bounds = bounds
        residual = None
        if dim is not None:
            residual = euler_identity_check(tables, forms, r, k, dim, dims=dims).residual
        rows.append(
            TableRow(
                k=k,
                lower=bounds.lower,
                upper=bounds.upper_ordered,
                upper_free=bounds.upper_free,
                upper_free_certified=free_k >= k,
                h0=dims.h0,
                h1=dims.h1,
                h2=dims.h2,
                oracle=dim,
                euler_residual=residual,
            )
        )

    log.info("table_done", extra={"rows": len(rows), "free_through": free_k})
    return GradedReport(
        source=source,
        r=r,
        rows=tuple(rows),
        free_through=free_k,
        free_formula_exact=last_bounds.free_formula_exact if last_bounds else False,
        edge_ordering=last_bounds.edge_ordering if last_bounds else (),
        vertex_ordering=last_bounds.vertex_ordering if last_bounds else (),
        reference=dict(reference or {}),
    )


def _quantities(report: GradedReport) -> List[Tuple[str, List[str]]]:
    out = [
        ("lower", [str(row.lower) for row in report.rows]),
        ("upper", [str(row.upper) for row in report.rows]),
        ("upper_free", [str(row.upper_free) + ("" if row.upper_free_certified else "*") for row in report.rows]),
        ("h0", [str(row.h0) for row in report.rows]),
        ("h1", [str(row.h1) for row in report.rows]),
        ("h2", [str(row.h2) for row in report.rows]),
    ]
    if any(row.oracle is not None for row in report.rows):
        out.append(("dim", ["" if row.oracle is None else str(row.oracle) for row in report.rows]))
    ref = report.reference
    if ref:
        by_k = {k: i for i, k in enumerate(ref.get("k", ()))}
        for name, values in ref.items():
            if name == "k":
                continue
            out.append((
                f"ref_{name}",
                [str(values[by_k[row.k]]) if row.k in by_k else "" for row in report.rows],
            ))
    return out


def render_text(report: GradedReport) -> str:
    """Fixed-width table: one line per quantity, one column per degree."""
    quantities = _quantities(report)
    header = ["k"] + [str(row.k) for row in report.rows]
    body = [[name] + values for name, values in quantities]
    widths = [max(len(line[i]) for line in [header] + body) for i in range(len(header))]

    def fmt(line: List[str]) -> str:
        head = line[0].ljust(widths[0])
        return "  ".join([head] + [v.rjust(w) for v, w in zip(line[1:], widths[1:])])

    lines = [f"# {report.source} r={report.r}", fmt(header)]
    lines.extend(fmt(line) for line in body)
    if report.free_through >= 0:
        lines.append(f"# free through degree {report.free_through}")
    else:
        lines.append("# not free in degree 0")
    lines.append("# * upper_free is not certified in this degree")
    return "\n".join(lines) + "\n"


def render_csv(report: GradedReport) -> str:
    buf = io.StringIO()
    names = [f for f in TableRow.__dataclass_fields__]
    w = csv.DictWriter(buf, fieldnames=names, lineterminator="\n")
    w.writeheader()
    for row in report.rows:
        w.writerow({k: ("" if v is None else v) for k, v in asdict(row).items()})
    return buf.getvalue()


def render_json(report: GradedReport) -> str:
    payload = {
        "source": report.source,
        "r": report.r,
        "free_through": report.free_through,
        "free_formula_exact": report.free_formula_exact,
        "edge_ordering": [list(e) for e in report.edge_ordering],
        "vertex_ordering": list(report.vertex_ordering),
        "rows": [asdict(row) for row in report.rows],
    }
    if report.reference:
        payload["reference"] = {k: list(v) for k, v in report.reference.items()}
    return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"


RENDERERS = {"text": render_text, "csv": render_csv, "json": render_json}


def render(report: GradedReport, fmt: str) -> str:
    return RENDERERS[fmt](report)
