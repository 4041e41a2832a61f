"""
Human-readable and JSON renderings shared by the CLI and the HTTP views.

JSON documents are built with a fixed key order so identical inputs give identical bytes.
"""
import json
from typing import Any, Dict, List, Optional, Sequence

from .cycle import MethodComparison
from .flowup import BasisReport, FlowUpBasis, FlowUpClass
from .graph import Spline, SplineCheck, dump_spline
from .oracle import OracleReport
from .ring import RingElem, print_elem
from .trails import ConstraintPath


def to_json(document: Any) -> str:
    return json.dumps(document, indent=2, ensure_ascii=False) + '\n'


def spline_column(spline: Spline) -> str:
    """Entries one per line from f_n down to f_1."""
    n = len(spline)
    width = len(str(n))
    lines = [f"f_{i:<{width}} | {print_elem(spline[i])}" for i in range(n, 0, -1)]
    return '\n'.join(lines)


def check_dict(check: SplineCheck) -> Dict[str, Any]:
    return {'spline': check.ok, 'violations': [list(edge) for edge in check.violations]}


def check_human(check: SplineCheck) -> str:
    if check.ok:
        return 'spline: yes'
    edges = ', '.join(f"({u}, {v})" for u, v in check.violations)
    return f"spline: no\nviolated edges: {edges}"


def path_dict(path: ConstraintPath) -> Dict[str, Any]:
    return {
        'source': path.source,
        'target': path.target,
        'vertices': list(path.vertices),
        'labels': [print_elem(label) for label in path.edge_labels],
        'gcd': print_elem(path.gcd),
    }


def path_line(path: ConstraintPath, flow_index: Optional[int] = None) -> str:
    """
    One path as its label sequence, e.g. "l: [9,6,5] gcd=1 target=0".

    With a flow index, targets below it are shown as the zero vertex 0.
    """
    target = 0 if flow_index is not None and path.target < flow_index else path.target
    labels = ','.join(print_elem(label) for label in path.edge_labels)
    return f"l: [{labels}] gcd={print_elem(path.gcd)} target={target}"


def trails_dict(vertex: int, paths: Sequence[ConstraintPath]) -> Dict[str, Any]:
    return {'vertex': vertex, 'paths': [path_dict(p) for p in paths]}


def trails_human(vertex: int, paths: Sequence[ConstraintPath], flow_index: Optional[int] = None) -> str:
    if not paths:
        return f"vertex {vertex}: no constraint paths"
    return '\n'.join(path_line(p, flow_index) for p in paths)


def flowup_dict(flowup: FlowUpClass) -> Dict[str, Any]:
    return {
        'index': flowup.index,
        'leading': print_elem(flowup.leading_entry),
        **dump_spline(flowup.spline),
    }


def flowup_human(flowup: FlowUpClass) -> str:
    return f"F^({flowup.index})  leading entry {print_elem(flowup.leading_entry)}\n{spline_column(flowup.spline)}"


def basis_dict(basis: FlowUpBasis) -> Dict[str, Any]:
    return {
        'ring': str(basis.ring),
        'classes': [flowup_dict(c) for c in basis.classes],
        'q': print_elem(basis.q_g),
    }


def basis_human(basis: FlowUpBasis) -> str:
    """The basis as a matrix: one column per class, rows from f_n down to f_1."""
    n = len(basis)
    cells = [[print_elem(c.spline[row]) for c in basis.classes] for row in range(n, 0, -1)]
    widths = [
        max([len(f"F^({c.index})")] + [len(cells[r][col]) for r in range(n)])
        for col, c in enumerate(basis.classes)
    ]
    header = '  '.join(f"F^({c.index})".rjust(widths[k]) for k, c in enumerate(basis.classes))
    rows = ['  '.join(cell.rjust(widths[k]) for k, cell in enumerate(row)) for row in cells]
    return '\n'.join([header] + rows + [f"Q_G = {print_elem(basis.q_g)}"])


def basis_report_dict(report: BasisReport, determinant: Optional[bool] = None) -> Dict[str, Any]:
    document: Dict[str, Any] = {
        'basis': bool(report),
        'mismatches': [{'index': i, 'reason': reason} for i, reason in report.mismatches],
    }
    if determinant is not None:
        document['determinant_criterion'] = determinant
    return document


def basis_report_human(report: BasisReport, determinant: Optional[bool] = None) -> str:
    lines = [f"flow-up basis: {'yes' if report else 'no'}"]
    lines.extend(f"  member {i}: {reason}" for i, reason in report.mismatches)
    if determinant is not None:
        lines.append(f"determinant criterion: {'yes' if determinant else 'no'}")
    return '\n'.join(lines)


def coefficients_dict(coefficients: Sequence[RingElem]) -> Dict[str, List[str]]:
    return {'coefficients': [print_elem(c) for c in coefficients]}


def coefficients_human(coefficients: Sequence[RingElem]) -> str:
    return '\n'.join(f"c_{i} = {print_elem(c)}" for i, c in enumerate(coefficients, start=1))


def comparison_dict(comparison: MethodComparison) -> Dict[str, Any]:
    return {
        'index': comparison.index,
        'methods': {method: flowup_dict(c) for method, c in comparison.results.items()},
        'splines_ok': comparison.splines_ok,
        'leading_agree': comparison.leading_agree,
        'entries_agree': comparison.entries_agree,
    }


def comparison_human(comparison: MethodComparison) -> str:
    methods = list(comparison.results)
    n = len(next(iter(comparison.results.values())).spline)
    cells = [[print_elem(comparison.results[m].spline[row]) for m in methods] for row in range(n, 0, -1)]
    widths = [max([len(m)] + [len(row[k]) for row in cells]) for k, m in enumerate(methods)]
    lines = ['       ' + '  '.join(m.rjust(widths[k]) for k, m in enumerate(methods))]
    for row_index, row in zip(range(n, 0, -1), cells):
        lines.append(f"f_{row_index:<4} " + '  '.join(cell.rjust(widths[k]) for k, cell in enumerate(row)))
    verdict = 'agree' if comparison.agree else 'DISAGREE'
    lines.append(
        f"leading entries {verdict}; splines {'ok' if comparison.splines_ok else 'broken'}; "
        f"entries {'identical' if comparison.entries_agree else 'differ'}"
    )
    return '\n'.join(lines)


def reports_dict(reports: Sequence[OracleReport]) -> Dict[str, Any]:
    return {
        'agree': all(r.agree for r in reports),
        'reports': [r.as_dict() for r in reports],
    }


def reports_human(reports: Sequence[OracleReport]) -> str:
    lines = [
        f"{'ok  ' if r.agree else 'FAIL'} {r.instance}: engine {r.computed}, oracle {r.oracle}"
        for r in reports
    ]
    failures = sum(1 for r in reports if not r.agree)
    lines.append(f"{len(reports)} comparisons, {failures} failures")
    return '\n'.join(lines)
