from __future__ import annotations
import logging
from itertools import combinations

from ..schemas import CollapseReport, CollapseViolation
from ..terms.term import term_support
from .table import CollapseTable

logger = logging.getLogger(__name__)


def validate_collapse(table: CollapseTable) -> CollapseReport:
    """Check ``theta(gamma) < alpha``, the support condition (b) and the order condition (a)."""
    entries = table.defined()
    report = CollapseReport(
        dilator=table.dilator.name,
        alpha=str(table.alpha),
        provenance=table.provenance,
        entries=len(entries),
        skipped=len(table.entries) - len(entries),
    )
    if report.skipped:
        logger.info("%d terms of %s have no witness and were not checked", report.skipped, table.dilator.name)
    for t, value in entries:
        if not value < table.alpha:
            report.violations.append(CollapseViolation(
                condition="range", pair=[str(t)], lhs=str(value), rhs=str(table.alpha),
            ))
        if not all(a < value for a in term_support(t)):
            report.violations.append(CollapseViolation(
                condition="b", pair=[str(t)], lhs=str(t), rhs=str(value),
            ))
    # entries are ordered, so s < t below
    for (s, vs), (t, vt) in combinations(entries, 2):
        if all(a < vt for a in term_support(s)) and not vs < vt:
            report.violations.append(CollapseViolation(
                condition="a", pair=[str(s), str(t)], lhs=str(vs), rhs=str(vt),
            ))
    if report.violations:
        logger.info("%d violations in the collapse of %s", len(report.violations), table.dilator.name)
    return report
