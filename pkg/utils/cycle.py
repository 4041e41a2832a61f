"""
Flow-up classes on cycles.

Besides the general construction, cycles admit two closed forms: a formula that works on
the cycle left after contracting the vertices where a class vanishes, and a direct
recurrence for ordered cycles (vertices numbered consecutively around the cycle).
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Tuple

from .exceptions import DegenerateFlowUp, IncompatibleSystem, InexactDivision, NotACycle, NotOrdered, VertexOutOfRange
from .flowup import FlowUpClass, build_flowup
from .graph import LabeledGraph, Spline, graph_family, is_spline, trivial_spline
from .ring import (
    CongruenceSystem,
    RingElem,
    RingSpec,
    associates,
    crt_solve,
    exquo,
    gcd,
    gcd_of,
    inverse_mod,
    lcm,
    reduce,
)

# Configure logging
logger = logging.getLogger(__name__)

ZERO_VERTEX = 0

METHODS = ('general', 'formula', 'ordered')


class CycleKind(Enum):
    ORDERED = 'ordered'
    ARBITRARY = 'arbitrary-ordered'


@dataclass(frozen=True)
class CycleLayout:
    """
    A cycle listed in traversal order.

    Attributes:
        ring: Base ring of the labels.
        order: Vertices in traversal order.
        labels: labels[k] sits on the edge joining order[k] and order[k+1] (cyclically).
        classification: ORDERED when the traversal is 1, 2, ..., n.
    """
    ring: RingSpec
    order: Tuple[int, ...]
    labels: Tuple[RingElem, ...]
    classification: CycleKind

    def __len__(self) -> int:
        return len(self.order)

    def position(self, vertex: int) -> int:
        return self.order.index(vertex)

    def step(self, position: int, direction: int) -> Tuple[int, RingElem]:
        """The neighbor one step from position, with the label of the edge walked."""
        n = len(self.order)
        target = (position + direction) % n
        label = self.labels[position] if direction > 0 else self.labels[target]
        return target, label

    def label(self, u: int, v: int) -> RingElem:
        pu = self.position(u)
        n = len(self.order)
        if self.order[(pu + 1) % n] == v:
            return self.labels[pu]
        if self.order[(pu - 1) % n] == v:
            return self.labels[(pu - 1) % n]
        raise NotACycle(f"Vertices {u} and {v} are not adjacent on the cycle")


@dataclass(frozen=True)
class ContractedCycle:
    """
    The cycle left after merging the vertices below index i.

    Attributes:
        source: The original cycle.
        index: The flow-up index i.
        cycle: The contracted cycle; ZERO_VERTEX stands for the merged vertices and
            comes first.
        zero_vertices: Original vertices merged into ZERO_VERTEX (all indices below i).
        forced_zeros: Vertices above i cut off from the surviving arc; every flow-up
            class of index i vanishes on them.
        edge_provenance: For each contracted edge, the original edge it comes from.
        split: True when the vertices below i do not form one contiguous arc, so the
            contraction had to cut the cycle.
    """
    source: CycleLayout
    index: int
    cycle: CycleLayout
    zero_vertices: FrozenSet[int]
    forced_zeros: FrozenSet[int]
    edge_provenance: Tuple[Tuple[int, int], ...]
    split: bool


def classify_cycle(graph: LabeledGraph) -> CycleLayout:
    """
    Lay out a cycle graph starting at vertex 1, heading to its smaller neighbor.

    Raises:
        NotACycle: If the graph is not a simple cycle on at least three vertices.
    """
    if graph_family(graph) != 'cycle':
        raise NotACycle(f"Graph with {graph.n} vertices and {len(graph.edges)} edges is not a cycle")

    order = [1, min(graph.adjacency[1])]
    while len(order) < graph.n:
        previous, current = order[-2], order[-1]
        order.append(next(w for w in graph.adjacency[current] if w != previous))
    labels = tuple(graph.label(order[k], order[(k + 1) % graph.n]) for k in range(graph.n))

    kind = CycleKind.ORDERED if order == list(range(1, graph.n + 1)) else CycleKind.ARBITRARY
    logger.debug(f"Cycle order {order} classified as {kind.value}")
    return CycleLayout(graph.ring, tuple(order), labels, kind)


def _arc(layout: CycleLayout, start: int, direction: int, below: int) -> Tuple[List[int], int]:
    """Vertices passed walking from position start until the first index below `below`."""
    passed: List[int] = []
    position = start
    while True:
        position, _ = layout.step(position, direction)
        vertex = layout.order[position]
        if vertex < below:
            return passed, vertex
        passed.append(vertex)


def split_contract(layout: CycleLayout, i: int) -> ContractedCycle:
    """
    Contract the vertices below i into one zero vertex.

    Walking from v_i in both directions to the nearest lower vertices z_L and z_R gives
    the arc that carries the nonzero entries of a flow-up class of index i. Everything
    on the far side of z_L and z_R is cut away; far-side vertices above i are forced
    to zero.

    Args:
        layout: The original cycle.
        i: Flow-up index, at least 3.

    Returns:
        The contracted cycle with its provenance.
    """
    n = len(layout)
    if not 3 <= i <= n:
        raise VertexOutOfRange(i, n)

    start = layout.position(i)
    left, z_left = _arc(layout, start, -1, i)
    right, z_right = _arc(layout, start, +1, i)
    chain = [z_left] + left[::-1] + [i] + right + [z_right]

    edges = tuple(zip(chain, chain[1:]))
    labels = tuple(layout.label(u, v) for u, v in edges)
    order = (ZERO_VERTEX,) + tuple(chain[1:-1])
    contracted = CycleLayout(layout.ring, order, labels, CycleKind.ARBITRARY)

    kept = set(chain)
    far_side = [v for v in layout.order if v not in kept]
    forced = frozenset(v for v in far_side if v > i)
    split = bool(far_side)
    logger.debug(
        f"Contracted cycle at index {i}: order {order}, forced zeros {sorted(forced)}, split={split}"
    )
    return ContractedCycle(
        source=layout,
        index=i,
        cycle=contracted,
        zero_vertices=frozenset(v for v in layout.order if v < i),
        forced_zeros=forced,
        edge_provenance=edges,
        split=split,
    )


def _arc_gcd(cycle: CycleLayout, start: int, direction: int, below: int) -> Tuple[RingElem, int]:
    """Gcd of the labels walked from position start to the first vertex below `below`."""
    labels: List[RingElem] = []
    position = start
    while True:
        position, label = cycle.step(position, direction)
        labels.append(label)
        vertex = cycle.order[position]
        if vertex < below:
            return gcd_of(cycle.ring, labels), vertex


def cycle_entry_formula(contracted: ContractedCycle) -> FlowUpClass:
    """
    Entries of the smallest flow-up class from the contracted cycle.

    For each surviving vertex j, in increasing order, let p_r and p_l be the gcds of the
    labels walked from j to the first lower vertex j_r (one way) and j_l (the other way).
    The leading entry is lcm(p_l, p_r); later entries are

        f_j = f_{j_r} + p_r * ((f_{j_l} - f_{j_r}) / d) * (p_r / d)^-1 mod (p_l / d)

    with d = gcd(p_r, p_l), reduced modulo lcm(p_r, p_l).

    Returns:
        The flow-up class of the original cycle.

    Raises:
        DegenerateFlowUp: If the leading entry is zero.
    """
    cycle = contracted.cycle
    ring = cycle.ring
    i = contracted.index
    values: Dict[int, RingElem] = {ZERO_VERTEX: ring.zero()}

    for j in sorted(v for v in cycle.order if v != ZERO_VERTEX):
        start = cycle.position(j)
        p_r, j_r = _arc_gcd(cycle, start, +1, j)
        p_l, j_l = _arc_gcd(cycle, start, -1, j)

        if j == i:
            entry = lcm(p_r, p_l)
            if entry.is_zero:
                raise DegenerateFlowUp(i)
        else:
            entry = _combine(values[j_r], p_r, values[j_l], p_l)
        values[j] = entry

    n = len(contracted.source)
    spline = Spline(tuple(values.get(v, ring.zero()) for v in range(1, n + 1)))
    return FlowUpClass(i, spline)


def _combine(f_r: RingElem, p_r: RingElem, f_l: RingElem, p_l: RingElem) -> RingElem:
    d = gcd(p_r, p_l)
    if d.is_zero:
        if f_r != f_l:
            raise AssertionError(f"Zero arcs demand equal entries, got {f_r} and {f_l}")
        return f_r
    q_r, q_l = exquo(p_r, d), exquo(p_l, d)
    if not gcd(q_r, q_l).is_unit:
        raise AssertionError(f"{q_r} and {q_l} are not coprime")
    try:
        difference = exquo(f_l - f_r, d)
    except InexactDivision as e:
        raise AssertionError(f"Arc gcd {d} does not divide {f_l - f_r}") from e
    entry = f_r + p_r * difference * inverse_mod(q_r, q_l)
    return reduce(entry, lcm(p_r, p_l))


def formula_flowup(graph: LabeledGraph, i: int) -> FlowUpClass:
    """
    Flow-up class of index i on a cycle via the contracted-cycle formula.

    Index 1 is the all-ones class; index 2 has nothing to contract and uses the general
    construction.
    """
    layout = classify_cycle(graph)
    if not 1 <= i <= graph.n:
        raise VertexOutOfRange(i, graph.n)
    if i == 1:
        return FlowUpClass(1, trivial_spline(graph, 1))
    if i == 2:
        return build_flowup(graph, 2)
    return cycle_entry_formula(split_contract(layout, i))


def _suffix_gcds(ring: RingSpec, labels: Tuple[RingElem, ...]) -> List[RingElem]:
    # g[k] = gcd(l_k, ..., l_n), 1-based; g[n + 1] = 0
    n = len(labels)
    g = [ring.zero()] * (n + 2)
    for k in range(n, 0, -1):
        g[k] = gcd(labels[k - 1], g[k + 1])
    return g


def ordered_cycle_flowup(layout: CycleLayout, k: int) -> FlowUpClass:
    """
    Flow-up class of index k on an ordered cycle.

    With l_j the label between v_j and v_{j+1} and g_j = gcd(l_j, ..., l_n), the leading
    entry is lcm(l_{k-1}, g_k). Each later entry solves f_j = f_{j-1} mod l_{j-1} and
    f_j = 0 mod g_j directly: with a = l_{j-1} / g_{j-1} and b = g_j / g_{j-1}, f_j = g_j
    when a is a unit, else f_j = f_{j-1} * b * (b^-1 mod a).

    Raises:
        NotOrdered: If the cycle is not ordered.
        DegenerateFlowUp: If the leading entry is zero.
    """
    if layout.classification is not CycleKind.ORDERED:
        raise NotOrdered(f"Cycle order {layout.order} is not 1..n")
    n = len(layout)
    if not 1 <= k <= n:
        raise VertexOutOfRange(k, n)
    ring = layout.ring
    if k == 1:
        return FlowUpClass(1, Spline((ring.one(),) * n))

    labels = {j: layout.labels[j - 1] for j in range(1, n + 1)}
    g = _suffix_gcds(ring, layout.labels)

    values: Dict[int, RingElem] = {j: ring.zero() for j in range(1, k)}
    values[k] = lcm(labels[k - 1], g[k])
    if values[k].is_zero:
        raise DegenerateFlowUp(k)

    for j in range(k + 1, n + 1):
        previous_label, previous_gcd = labels[j - 1], g[j - 1]
        if previous_gcd.is_zero:
            system = CongruenceSystem.of(ring, [(values[j - 1], previous_label), (ring.zero(), g[j])])
            try:
                values[j] = crt_solve(system)
            except IncompatibleSystem as e:
                raise AssertionError(f"Ordered cycle recurrence failed at vertex {j}: {e}") from e
            continue
        a = exquo(previous_label, previous_gcd)
        if a.is_unit:
            entry = g[j]
        else:
            b = exquo(g[j], previous_gcd)
            entry = values[j - 1] * b * inverse_mod(b, a)
        values[j] = reduce(entry, lcm(previous_label, g[j]))

    return FlowUpClass(k, Spline(tuple(values[j] for j in range(1, n + 1))))


def cycle_flowup(graph: LabeledGraph, i: int, method: str = 'general') -> FlowUpClass:
    """
    Flow-up class of index i on a cycle by the chosen method.

    Args:
        graph: A cycle graph.
        i: Flow-up index.
        method: 'general', 'formula' or 'ordered'.
    """
    if method == 'general':
        classify_cycle(graph)
        return build_flowup(graph, i)
    if method == 'formula':
        return formula_flowup(graph, i)
    if method == 'ordered':
        return ordered_cycle_flowup(classify_cycle(graph), i)
    raise ValueError(f"Unknown method {method!r}; expected one of {', '.join(METHODS)}")


@dataclass(frozen=True)
class MethodComparison:
    """
    Results of every applicable method for one index.

    Attributes:
        index: Flow-up index.
        results: Class built by each method.
        splines_ok: Every result passes the spline check.
        leading_agree: Leading entries are pairwise associates.
        entries_agree: The results are identical.
    """
    index: int
    results: Dict[str, FlowUpClass]
    splines_ok: bool
    leading_agree: bool
    entries_agree: bool

    @property
    def agree(self) -> bool:
        return self.splines_ok and self.leading_agree


def compare_methods(graph: LabeledGraph, i: int) -> MethodComparison:
    """
    Run every method applicable to the cycle and compare their results.
    """
    layout = classify_cycle(graph)
    methods = [m for m in METHODS if m != 'ordered' or layout.classification is CycleKind.ORDERED]
    results = {method: cycle_flowup(graph, i, method) for method in methods}

    classes = list(results.values())
    reference = classes[0]
    comparison = MethodComparison(
        index=i,
        results=results,
        splines_ok=all(is_spline(graph, c.spline) for c in classes),
        leading_agree=all(associates(c.leading_entry, reference.leading_entry) for c in classes),
        entries_agree=all(c.spline == reference.spline for c in classes),
    )
    if not comparison.agree:
        logger.warning(f"Cycle methods disagree at index {i}: {results}")
    return comparison
