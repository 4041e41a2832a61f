"""
Flow-up classes and flow-up bases of generalized spline modules.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from django.conf import settings
from sympy.polys.matrices import DomainMatrix

from .exceptions import (
    DegenerateFlowUp,
    IncompatibleSystem,
    InexactDivision,
    LengthMismatch,
    NotASpline,
    VertexOutOfRange,
)
from .graph import LabeledGraph, Spline, graph_family, is_spline, trivial_spline
from .ring import (
    CongruenceSystem,
    RingElem,
    RingSpec,
    associates,
    crt_solve,
    exquo,
    lcm_of,
    normalize,
)
from .trails import TrailEnumerator

# Configure logging
logger = logging.getLogger(__name__)

CRITERION_FAMILIES = ('cycle', 'tree', 'diamond')


@dataclass(frozen=True)
class FlowUpClass:
    """
    A spline vanishing on vertices 1..index-1 with a nonzero entry at index.
    """
    index: int
    spline: Spline

    @property
    def leading_entry(self) -> RingElem:
        return self.spline[self.index]


@dataclass(frozen=True)
class FlowUpBasis:
    """
    Flow-up classes F^(1), ..., F^(n) with smallest leading entries.

    Attributes:
        ring: The base ring.
        classes: One class per vertex, ordered by index.
        q_g: Normalized product of the leading entries.
    """
    ring: RingSpec
    classes: Tuple[FlowUpClass, ...]
    q_g: RingElem

    @property
    def splines(self) -> List[Spline]:
        return [c.spline for c in self.classes]

    def __len__(self) -> int:
        return len(self.classes)

    def __getitem__(self, index: int) -> FlowUpClass:
        return self.classes[index - 1]


@dataclass(frozen=True)
class BasisReport:
    """
    Outcome of a basis check; truthy when the candidate is a flow-up basis.

    Attributes:
        mismatches: (member index, reason) for every failed condition; member 0 refers
            to the candidate list as a whole.
    """
    mismatches: Tuple[Tuple[int, str], ...] = ()

    def __bool__(self) -> bool:
        return not self.mismatches


class FlowUpBuilder:
    """
    Builds flow-up classes on one graph, computing each vertex's constraints once.
    """
    def __init__(self, graph: LabeledGraph, path_limit: Optional[int] = None):
        """
        Initialize the builder.

        Args:
            graph: The edge-labeled graph.
            path_limit: Constraint path limit per vertex. If None, uses SPLINES_PATH_LIMIT.
        """
        self.graph = graph
        self.trails = TrailEnumerator(path_limit)
        self._moduli: Dict[int, Dict[int, RingElem]] = {}

    def _check_index(self, i: int):
        if not 1 <= i <= self.graph.n:
            raise VertexOutOfRange(i, self.graph.n)

    def moduli(self, k: int) -> Dict[int, RingElem]:
        if k not in self._moduli:
            self._moduli[k] = self.trails.grouped_moduli(self.graph, k)
        return self._moduli[k]

    def smallest_leading_entry(self, i: int) -> RingElem:
        """
        The generator of the ideal of possible leading entries at vertex i.

        Args:
            i: Vertex index.

        Returns:
            The lcm of the gcds of all constraint paths from i (1 for i = 1).
        """
        self._check_index(i)
        return lcm_of(self.graph.ring, self.moduli(i).values())

    def build_flowup(self, i: int) -> FlowUpClass:
        """
        Build the flow-up class of index i with the smallest leading entry.

        Entries after the leading one are the canonical solutions of the congruences
        f_k = f_t (mod lcm of path gcds from k to t), processed in increasing k.

        Args:
            i: Vertex index.

        Returns:
            The flow-up class F^(i); F^(1) is the all-ones spline.

        Raises:
            DegenerateFlowUp: If the smallest leading entry is zero.
            PathLimitExceeded: If a vertex has too many constraint paths.
        """
        self._check_index(i)
        ring = self.graph.ring
        if i == 1:
            return FlowUpClass(1, trivial_spline(self.graph, 1))

        leading = self.smallest_leading_entry(i)
        if leading.is_zero:
            raise DegenerateFlowUp(i)

        values: Dict[int, RingElem] = {j: ring.zero() for j in range(1, i)}
        values[i] = leading
        for k in range(i + 1, self.graph.n + 1):
            system = CongruenceSystem.of(
                ring, ((values[t], modulus) for t, modulus in self.moduli(k).items())
            )
            try:
                values[k] = crt_solve(system)
            except IncompatibleSystem as e:
                raise AssertionError(f"Constraints at vertex {k} of F^({i}) are inconsistent: {e}") from e

        spline = Spline(tuple(values[j] for j in self.graph.vertices()))
        check = is_spline(self.graph, spline)
        if not check:
            raise AssertionError(f"F^({i}) violates edges {check.violations}")
        logger.debug(f"Built F^({i}) = {spline}")
        return FlowUpClass(i, spline)

    def build_basis(self, jobs: int = 1) -> FlowUpBasis:
        """
        Build F^(1), ..., F^(n).

        Args:
            jobs: Number of worker processes; classes are independent of each other.

        Returns:
            The flow-up basis together with Q_G.
        """
        indices = list(self.graph.vertices())
        if jobs > 1 and len(indices) > 1:
            logger.info(f"Building {len(indices)} flow-up classes with {jobs} workers")
            work = [(self.graph, i, self.trails.path_limit) for i in indices]
            with ProcessPoolExecutor(max_workers=jobs) as executor:
                classes = tuple(executor.map(_build_flowup_job, work))
        else:
            classes = tuple(self.build_flowup(i) for i in indices)

        q_g = normalize(_product(self.graph.ring, (c.leading_entry for c in classes)))
        logger.info(f"Flow-up basis over {self.graph.ring} with Q_G = {q_g}")
        return FlowUpBasis(self.graph.ring, classes, q_g)

    def q_element(self) -> RingElem:
        """Normalized product of the smallest leading entries."""
        return normalize(_product(
            self.graph.ring, (self.smallest_leading_entry(i) for i in self.graph.vertices())
        ))


def _build_flowup_job(args: Tuple[LabeledGraph, int, int]) -> FlowUpClass:
    graph, i, path_limit = args
    return FlowUpBuilder(graph, path_limit).build_flowup(i)


def _product(ring: RingSpec, elements) -> RingElem:
    result = ring.one()
    for element in elements:
        result = result * element
    return result


def smallest_leading_entry(graph: LabeledGraph, i: int, path_limit: Optional[int] = None) -> RingElem:
    return FlowUpBuilder(graph, path_limit).smallest_leading_entry(i)


def build_flowup(graph: LabeledGraph, i: int, path_limit: Optional[int] = None) -> FlowUpClass:
    return FlowUpBuilder(graph, path_limit).build_flowup(i)


def build_basis(graph: LabeledGraph, jobs: Optional[int] = None, path_limit: Optional[int] = None) -> FlowUpBasis:
    jobs = jobs or getattr(settings, 'SPLINES_JOBS', 1)
    return FlowUpBuilder(graph, path_limit).build_basis(jobs)


def q_element(graph: LabeledGraph, path_limit: Optional[int] = None) -> RingElem:
    return FlowUpBuilder(graph, path_limit).q_element()


def trivial_flowup(graph: LabeledGraph, i: int) -> FlowUpClass:
    """
    A flow-up class of index i that ignores the graph structure.

    Zero below i and the product of all edge labels from i on; it is a spline on every
    graph but its leading entry is usually far from the smallest.

    Raises:
        DegenerateFlowUp: If some label is zero.
    """
    if not 1 <= i <= graph.n:
        raise VertexOutOfRange(i, graph.n)
    ring = graph.ring
    product = _product(ring, (edge.label for edge in graph.edges))
    if product.is_zero:
        raise DegenerateFlowUp(i)
    return FlowUpClass(i, Spline(tuple(ring.zero() if j < i else product for j in graph.vertices())))


def is_flowup_basis(graph: LabeledGraph, candidate: Sequence[Spline], path_limit: Optional[int] = None) -> BasisReport:
    """
    Check that a candidate list is a flow-up basis with smallest leading entries.

    Member i must be a spline vanishing on 1..i-1 whose i-th entry is an associate of
    the smallest leading entry at i.

    Args:
        graph: The edge-labeled graph.
        candidate: Splines in index order.
        path_limit: Constraint path limit per vertex.

    Returns:
        BasisReport listing every mismatch.

    Raises:
        NotASpline: If a member fails the spline condition.
        LengthMismatch: If a member has the wrong length.
    """
    if len(candidate) != graph.n:
        return BasisReport(((0, f"expected {graph.n} splines, got {len(candidate)}"),))

    builder = FlowUpBuilder(graph, path_limit)
    mismatches: List[Tuple[int, str]] = []
    for i, spline in enumerate(candidate, start=1):
        check = is_spline(graph, spline)
        if not check:
            raise NotASpline(list(check.violations), member=i)
        nonzero_below = [j for j in range(1, i) if not spline[j].is_zero]
        if nonzero_below:
            mismatches.append((i, f"nonzero entries below the leading vertex at {nonzero_below}"))
        expected = builder.smallest_leading_entry(i)
        if spline[i].is_zero:
            mismatches.append((i, "leading entry is zero"))
        elif not associates(spline[i], expected):
            mismatches.append((i, f"leading entry {spline[i]} is not an associate of {expected}"))

    if mismatches:
        logger.info(f"Candidate is not a flow-up basis: {len(mismatches)} mismatches")
    return BasisReport(tuple(mismatches))


def determinant(ring: RingSpec, rows: Sequence[Sequence[RingElem]]) -> RingElem:
    """
    Determinant over the ring itself, without passing through a fraction field.

    The matrix is lifted into sympy's ZZ, QQ[x] or GF(p)[x] domain, where DomainMatrix
    eliminates fraction-free (Bareiss) with exact division.

    Args:
        ring: The base ring.
        rows: A square matrix given row by row.

    Returns:
        The determinant.
    """
    n = len(rows)
    if n == 0:
        return ring.one()
    if any(len(row) != n for row in rows):
        raise LengthMismatch(n, next(len(row) for row in rows if len(row) != n))

    domain = ring.matrix_domain
    matrix = DomainMatrix(
        [[ring.to_matrix_entry(ring.coerce(a), domain) for a in row] for row in rows], (n, n), domain
    )
    return ring.from_matrix_entry(matrix.det(), domain)


def determinant_criterion(graph: LabeledGraph, candidate: Sequence[Spline], path_limit: Optional[int] = None) -> bool:
    """
    Decide basis-ness from the determinant of the candidate splines.

    The candidate is a module basis when the determinant of the matrix of its members
    is an associate of Q_G. This is established for cycles, trees and diamond graphs;
    other graphs are checked anyway with a warning.

    Returns:
        True when every member is a spline and the determinant is a nonzero associate of Q_G.
    """
    family = graph_family(graph)
    if family not in CRITERION_FAMILIES:
        logger.warning(f"Determinant criterion applied to a graph of family '{family}'")
    if len(candidate) != graph.n:
        return False
    for spline in candidate:
        if not is_spline(graph, spline):
            logger.info("Determinant criterion: a candidate member is not a spline")
            return False

    det = determinant(graph.ring, [spline.values for spline in candidate])
    q_g = q_element(graph, path_limit)
    logger.debug(f"Determinant {det}, Q_G {q_g}")
    return not det.is_zero and associates(det, q_g)


def decompose(graph: LabeledGraph, basis: FlowUpBasis, spline: Spline) -> List[RingElem]:
    """
    Write a spline as a combination of a flow-up basis.

    Args:
        graph: The edge-labeled graph.
        basis: A flow-up basis of the graph.
        spline: The spline to decompose.

    Returns:
        Coefficients c_1..c_n with spline = sum of c_i * F^(i).

    Raises:
        NotASpline: If the vector is not a spline.
        InexactDivision: If the basis does not span the spline at some index.
    """
    check = is_spline(graph, spline)
    if not check:
        raise NotASpline(list(check.violations))

    residual = spline
    coefficients: List[RingElem] = []
    for flowup in basis.classes:
        i = flowup.index
        try:
            c = exquo(residual[i], flowup.leading_entry)
        except InexactDivision:
            raise InexactDivision(
                f"Leading entry {flowup.leading_entry} does not divide {residual[i]} at vertex {i}", index=i
            )
        coefficients.append(c)
        residual = residual - flowup.spline.scale(c)

    if not residual.is_zero:
        raise AssertionError(f"Nonzero residual {residual} after decomposition")
    return coefficients


def recombine(basis: FlowUpBasis, coefficients: Sequence[RingElem]) -> Spline:
    """Sum of c_i * F^(i); the inverse of decompose."""
    if len(coefficients) != len(basis):
        raise LengthMismatch(len(basis), len(coefficients))
    total = basis.classes[0].spline.scale(0)
    for flowup, c in zip(basis.classes, coefficients):
        total = total + flowup.spline.scale(c)
    return total
