"""Assembles the bound families into a certified capacity interval.

Lower bounds come from independent sets in strong powers (value is the
k-th root of the witness size); upper bounds take the best of the theta
bracket, the fractional clique bound, the clique cover number, and any
imported verified certificate.  The theta bracket is computed once on the
base graph; it already bounds every power because it multiplies.
Every reported bound carries a machine-checkable witness, and reports with
identical seed and budget serialize byte-for-byte identically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

from .fractional import rosenfeld_number
from .graphs import Graph, cycle, strong_power
from .haemers import FittingMatrix, haemers_certificate
from .kings import Placement, toroidal_chebyshev, verify_placement
from .solvers import (CliqueCapExceeded, SolverConfig, clique_cover_number,
                      heuristic_independent_set, is_independent_set,
                      max_independent_set)
from .theta import lovasz_theta
from .umbrella import (DensityUmbrella, VectorUmbrella, umbrella_value,
                       verify_umbrella)


class ReportError(ValueError):
    pass


class CertificateRejected(ReportError):
    pass


@dataclass(frozen=True)
class PowerRow:
    k: int
    alpha_best: int
    root: float
    exact: bool
    witness: tuple


@dataclass(frozen=True)
class LowerBound:
    value: float
    power: int
    witness: tuple
    proven: bool
    method: str


@dataclass(frozen=True)
class UpperBound:
    value: float
    source: str
    certificate: object


@dataclass(frozen=True)
class BoundsReport:
    graph: Graph
    graph_desc: str
    lower: LowerBound
    upper: UpperBound
    table: tuple
    provenance: tuple
    seed: int
    budget: tuple  # (time_budget, node_budget)

    def interval(self):
        return (self.lower.value, self.upper.value)


def _sig7(x):
    return float(f"{x:.7g}")


def _power_row(G, k, cfg, vertex_limit):
    Gk = strong_power(G, k, vertex_limit=vertex_limit)
    res = max_independent_set(Gk, cfg)
    best = res.vertices
    exact = res.proven_optimal
    if not exact:
        alt = heuristic_independent_set(Gk, cfg)
        if len(alt.vertices) > len(best):
            best = alt.vertices
    root = len(best) ** (1.0 / k)
    witness = tuple(Gk.label_of(v) for v in best)  # coordinate tuples
    return PowerRow(k, len(best), root, exact, witness), Gk


def _upper_candidates(G, cfg, tol):
    out = []
    bracket = lovasz_theta(G, tol=tol)
    out.append(("theta", bracket.hi, bracket))
    try:
        rho, weighting = rosenfeld_number(G)
        out.append(("rho", float(rho), weighting))
    except CliqueCapExceeded:
        pass
    sigma, cover = clique_cover_number(G, cfg)
    if cover.proven_optimal:
        out.append(("sigma", float(sigma), cover))
    return out, bracket


def compute_bounds(G, max_power=2, cfg=None, graph_desc="graph",
                   theta_tol=1e-6, vertex_limit=100_000):
    """Certified interval around the capacity of G, with per-power table."""
    cfg = cfg or SolverConfig()
    table = []
    provenance = []
    lower = None
    for k in range(1, max_power + 1):
        try:
            row, Gk = _power_row(G, k, cfg, vertex_limit)
        except Exception as exc:  # vertex limit or budget wall: flag, move on
            provenance.append(f"power {k} skipped: {exc}")
            continue
        table.append(row)
        provenance.append(
            f"alpha(G^{k}) {'=' if row.exact else '>='} {row.alpha_best} "
            f"({'exact' if row.exact else 'heuristic'})")
        if lower is None or row.root > lower.value:
            lower = LowerBound(row.root, k, row.witness, row.exact,
                               "exact" if row.exact else "heuristic")
    if lower is None:
        raise ReportError("no power produced a lower bound")
    candidates, bracket = _upper_candidates(G, cfg, theta_tol)
    source, value, certificate = min(candidates, key=lambda c: (c[1], c[0]))
    provenance.append(
        f"theta bracket [{bracket.lo!r}, {bracket.hi!r}]"
        f"{'' if bracket.converged else ' (not converged)'}")
    for name, val, _ in candidates:
        provenance.append(f"upper candidate {name} = {val!r}")
    upper = UpperBound(value, source, certificate)
    report = BoundsReport(G, graph_desc, lower, upper, tuple(table),
                          tuple(provenance), cfg.seed,
                          (cfg.time_budget, cfg.node_budget))
    _check_order(report)
    return report


def _check_order(report):
    if report.lower.value > report.upper.value + 1e-9:
        raise ReportError(
            f"lower bound {report.lower.value} exceeds upper bound "
            f"{report.upper.value}; a certificate is wrong")


@dataclass(frozen=True)
class LockinRow:
    k: int
    alpha_best: int
    root: float
    exact: bool
    meets_upper: bool


@dataclass(frozen=True)
class LockinTable:
    graph_desc: str
    upper: float
    rows: tuple
    locked_at: object  # power k, or None


def lockin_scan(G, p_max=2, cfg=None, graph_desc="graph", meet_tol=1e-5,
                theta_tol=1e-6, vertex_limit=100_000):
    """Tabulates the normalized independence numbers of the first powers
    and marks any power already meeting the best upper bound."""
    cfg = cfg or SolverConfig()
    candidates, _ = _upper_candidates(G, cfg, theta_tol)
    upper = min(c[1] for c in candidates)
    rows = []
    locked = None
    for k in range(1, p_max + 1):
        row, _ = _power_row(G, k, cfg, vertex_limit)
        meets = row.root >= upper - meet_tol
        rows.append(LockinRow(k, row.alpha_best, row.root, row.exact, meets))
        if meets and locked is None:
            locked = k
    return LockinTable(graph_desc, upper, tuple(rows), locked)


def combine_external_certificate(report, cert):
    """Fold an imported certificate into a report.

    Umbrellas and fitting matrices tighten the upper bound; packings on
    the k-th power raise the lower bound.  The certificate is re-verified
    here; anything that fails verification is rejected and the original
    report stays as it was.
    """
    G = report.graph
    if isinstance(cert, (VectorUmbrella, DensityUmbrella)):
        check = verify_umbrella(cert, G)
        if not check.valid:
            raise CertificateRejected(
                f"umbrella rejected: {check.violations[:3]}")
        value = umbrella_value(cert)
        if value == float("inf"):
            raise CertificateRejected("umbrella decorrelates from its handle")
        if value < report.upper.value:
            report = replace(report, upper=UpperBound(value, "umbrella", cert),
                             provenance=report.provenance +
                             (f"imported umbrella upper bound {value!r}",))
        _check_order(report)
        return report
    if isinstance(cert, FittingMatrix):
        try:
            rank = haemers_certificate(G, cert)
        except Exception as exc:
            raise CertificateRejected(f"fitting matrix rejected: {exc}")
        if rank < report.upper.value:
            report = replace(report, upper=UpperBound(float(rank), "haemers", cert),
                             provenance=report.provenance +
                             (f"imported fitting-matrix rank {rank}",))
        _check_order(report)
        return report
    if isinstance(cert, Placement):
        board = cert.board
        ref = cycle(board.p)
        if G.n != ref.n or G.adj != ref.adj:
            raise CertificateRejected(
                f"placement lives on powers of a {board.p}-cycle; the report "
                "graph differs")
        ok, pair = verify_placement(cert)
        if not ok:
            raise CertificateRejected(f"placement invalid at cell pair {pair}")
        value = len(cert) ** (1.0 / board.d)
        if value > report.lower.value:
            witness = tuple(cert.cells)
            report = replace(
                report,
                lower=LowerBound(value, board.d, witness, False, "placement"),
                provenance=report.provenance +
                (f"imported {len(cert)}-king packing on ({board.p},{board.d})",))
        _check_order(report)
        return report
    raise CertificateRejected(f"unsupported certificate type {type(cert)!r}")


def verify_report(report, vertex_limit=100_000):
    """Re-check the witnesses independent of how the report was assembled:
    the lower witness must be an independent set of the stated power, and
    the pair must still bracket."""
    k = report.lower.power
    if report.lower.method == "placement":
        p = report.graph.n
        cells = report.lower.witness
        for i in range(len(cells)):
            for j in range(i + 1, len(cells)):
                if toroidal_chebyshev(cells[i], cells[j], p) < 2:
                    raise ReportError(f"lower witness pair {(i, j)} adjacent")
    else:
        Gk = strong_power(report.graph, k, vertex_limit=vertex_limit)
        ids = {Gk.label_of(v): v for v in range(Gk.n)}
        verts = [ids[cell] for cell in report.lower.witness]
        if not is_independent_set(Gk, verts):
            raise ReportError("lower witness is not independent")
    expected = len(report.lower.witness) ** (1.0 / k)
    if abs(expected - report.lower.value) > 1e-12:
        raise ReportError("lower bound value does not match its witness")
    _check_order(report)
    return True


# -- rendering ----------------------------------------------------------------


def report_to_dict(report):
    return {
        "graph": {"desc": report.graph_desc, "n": report.graph.n,
                  "m": report.graph.num_edges},
        "lower": {
            "value": report.lower.value,
            "display": f"{report.lower.value:.7g}",
            "power": report.lower.power,
            "witness_size": len(report.lower.witness),
            "witness": [list(cell) for cell in report.lower.witness],
            "proven": report.lower.proven,
            "method": report.lower.method,
        },
        "upper": {
            "value": report.upper.value,
            "display": f"{report.upper.value:.7g}",
            "source": report.upper.source,
        },
        "table": [{"k": r.k, "alpha": r.alpha_best, "root": r.root,
                   "exact": r.exact} for r in report.table],
        "provenance": list(report.provenance),
        "seed": report.seed,
        "budget": {"time": report.budget[0], "nodes": report.budget[1]},
    }


def report_to_json(report):
    return json.dumps(report_to_dict(report), sort_keys=True)


def render_report(report):
    lo, hi = report.interval()
    lines = [
        f"capacity bounds for {report.graph_desc} "
        f"(n={report.graph.n}, m={report.graph.num_edges})",
        f"  interval: [{lo:.7g}, {hi:.7g}]",
        f"  lower: {lo:.7g} = {len(report.lower.witness)}^(1/{report.lower.power})"
        f" [{report.lower.method}{'' if report.lower.proven else ', not proven optimal'}]",
        f"  upper: {hi:.7g} from {report.upper.source}",
        "  powers:",
    ]
    for r in report.table:
        lines.append(f"    k={r.k}: alpha{'=' if r.exact else '>='}"
                     f"{r.alpha_best}  root={r.root:.7g}")
    return "\n".join(lines) + "\n"


def render_lockin(table):
    lines = [f"lock-in scan for {table.graph_desc}; upper bound {table.upper:.7g}"]
    for r in table.rows:
        mark = "  <-- meets upper bound" if r.meets_upper else ""
        lines.append(f"  k={r.k}: alpha{'=' if r.exact else '>='}{r.alpha_best}"
                     f"  root={r.root:.7g}{mark}")
    if table.locked_at is None:
        gap = table.upper - max(r.root for r in table.rows)
        lines.append(f"  no power meets the upper bound; gap {gap:.7g}")
    return "\n".join(lines) + "\n"


def lockin_to_dict(table):
    return {
        "graph": table.graph_desc,
        "upper": table.upper,
        "rows": [{"k": r.k, "alpha": r.alpha_best, "root": r.root,
                  "exact": r.exact, "meets_upper": r.meets_upper}
                 for r in table.rows],
        "locked_at": table.locked_at,
    }
