"""Per-vector reports and batch summaries for correlation data."""

from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .decomposition import Decomposition, decompose, select_facet
from .errors import InsideLocalPolytope, NotDecomposable
from .geometry import (
    DEFAULT_TOL,
    chsh_values,
    in_local,
    in_nosignaling,
    iterated_chsh_values,
    quadric_form,
    quantum_membership_analytic,
)

__all__ = ["VectorReport", "BatchSummary", "vector_report", "summarize", "decomposition_dict"]

VIOLATION_KINDS = ("trivial", "chsh", "quantum_body", "iterated_lower", "iterated_upper")


def decomposition_dict(d):
    if d is None:
        return None
    return {
        "facet": {"kind": d.facet.kind, "i": d.facet.i, "j": d.facet.j, "sign": d.facet.sign},
        "eta_local": list(d.eta_local),
        "eta_nl": d.eta_nl,
    }


@dataclass
class VectorReport:
    input: list
    in_L: bool
    in_P: bool
    in_Q: bool
    chsh: list
    quadric: float
    iterated: list
    iterated_within_bounds: bool
    pr_rate: Optional[float] = None
    decomposition: Optional[Decomposition] = None
    tol: float = DEFAULT_TOL

    @property
    def violations(self):
        """Names of the inequalities this vector breaks."""
        return _violations(self)

    @property
    def failed(self):
        """True when the vector cannot come from quantum mechanics."""
        return not (self.in_Q and self.iterated_within_bounds)

    def to_dict(self):
        out = asdict(self)
        out["decomposition"] = decomposition_dict(self.decomposition)
        return out


def _violations(r):
    tol = r.tol
    found = []
    if not r.in_P:
        found.append("trivial")
    if max(r.chsh) > 1.0 + tol:
        found.append("chsh")
    if not r.in_Q:
        found.append("quantum_body")
    if min(r.iterated) < -1.0 - tol:
        found.append("iterated_lower")
    if max(r.iterated) > 1.0 + tol:
        found.append("iterated_upper")
    return found


def vector_report(q, tol=DEFAULT_TOL):
    """Evaluate every membership predicate and bound on one vector."""
    q = np.asarray(q, dtype=float)
    chsh = chsh_values(q)
    iterated = iterated_chsh_values(q)
    report = VectorReport(
        input=q.tolist(),
        in_L=bool(in_local(q, tol)),
        in_P=bool(in_nosignaling(q, tol)),
        in_Q=bool(quantum_membership_analytic(q, tol)),
        chsh=chsh.tolist(),
        quadric=float(quadric_form(q)),
        iterated=iterated.tolist(),
        iterated_within_bounds=bool(np.all(np.abs(iterated) <= 1.0 + tol)),
        tol=tol,
    )
    _, top = select_facet(q)
    if top >= 1.0 - tol:
        report.pr_rate = top - 1.0
        try:
            report.decomposition = decompose(q, tol)
        except (InsideLocalPolytope, NotDecomposable):
            report.decomposition = None
    return report


@dataclass
class BatchSummary:
    rows: int = 0
    violations: dict = field(default_factory=lambda: dict.fromkeys(VIOLATION_KINDS, 0))
    failures: int = 0
    failed_rows: list = field(default_factory=list)
    max_chsh: Optional[float] = None
    max_quadric: Optional[float] = None
    min_quadric: Optional[float] = None

    def add(self, row, report):
        self.rows += 1
        for kind in report.violations:
            self.violations[kind] += 1
        if report.failed:
            self.failures += 1
            self.failed_rows.append(row)
        top = max(report.chsh)
        if self.rows == 1:
            self.max_chsh, self.max_quadric, self.min_quadric = top, report.quadric, report.quadric
        else:
            self.max_chsh = max(self.max_chsh, top)
            self.max_quadric = max(self.max_quadric, report.quadric)
            self.min_quadric = min(self.min_quadric, report.quadric)

    def to_dict(self):
        return asdict(self)


def summarize(vectors, tol=DEFAULT_TOL):
    """Reports for each row of ``vectors`` (1-based) and their summary."""
    summary = BatchSummary()
    reports = []
    for row, q in enumerate(vectors, start=1):
        r = vector_report(q, tol)
        summary.add(row, r)
        reports.append(r)
    return reports, summary
