"""
Exhaustive-search ground truth for small integer instances.

Nothing here reuses the constraint-path or CRT machinery: splines are found by plain
search over residues, and trails are enumerated without any pruning.
"""
import logging
import math
import random
from collections import deque
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Optional, Set, Tuple

import networkx as nx
from django.conf import settings

from .exceptions import DegenerateFlowUp, NoFlowUpFound, SearchSpaceTooLarge, UnsupportedRing, VertexOutOfRange
from .flowup import FlowUpBuilder, build_basis, is_flowup_basis, q_element
from .graph import LabeledGraph, Spline
from .ring import INTEGERS, RingKind
from .trails import TrailEnumerator

# Configure logging
logger = logging.getLogger(__name__)

DEFAULT_ORACLE_LIMIT = 10 ** 7


@dataclass(frozen=True)
class OracleReport:
    """
    One comparison between the engine and the exhaustive search.

    Attributes:
        instance: Human-readable description of what was compared.
        computed: The engine's answer.
        oracle: The exhaustive search's answer.
        agree: Whether the two coincide.
        search_space: Number of candidates or search nodes the oracle visited.
    """
    instance: str
    computed: Any
    oracle: Any
    agree: bool
    search_space: int

    def as_dict(self) -> Dict[str, Any]:
        return {
            'instance': self.instance,
            'computed': self.computed,
            'oracle': self.oracle,
            'agree': self.agree,
            'search_space': self.search_space,
        }


def describe(graph: LabeledGraph) -> str:
    edges = ','.join(f"{e.u}-{e.v}:{e.label}" for e in graph.edges)
    return f"n={graph.n} [{edges}]"


def _labels(graph: LabeledGraph) -> List[Tuple[int, int, int]]:
    if graph.ring.kind is not RingKind.INTEGERS:
        raise UnsupportedRing(f"Exhaustive search needs integer labels, not {graph.ring}")
    return [(e.u, e.v, abs(e.label.value)) for e in graph.edges]


def _zero_label_owner(graph: LabeledGraph, labels: List[Tuple[int, int, int]]) -> Dict[int, int]:
    zero_edges = nx.Graph()
    zero_edges.add_nodes_from(graph.vertices())
    zero_edges.add_edges_from((u, v) for u, v, label in labels if label == 0)
    # vertices joined by zero labels carry equal values; each class is named by its least vertex
    return {v: min(component) for component in nx.connected_components(zero_edges) for v in component}


def contract_zero_labels(graph: LabeledGraph) -> LabeledGraph:
    """
    Merge every class of vertices joined by zero labels into one vertex.

    Labels between two merged classes combine by lcm and labels inside a class are
    dropped, so splines on the result are exactly the splines on the graph with one
    value per class. Classes are numbered by their least original vertex.
    """
    labels = _labels(graph)
    owner = _zero_label_owner(graph, labels)
    renumber = {c: position for position, c in enumerate(sorted(set(owner.values())), start=1)}

    merged: Dict[Tuple[int, int], int] = {}
    for u, v, label in labels:
        a, b = sorted((renumber[owner[u]], renumber[owner[v]]))
        if label and a != b:
            merged[(a, b)] = math.lcm(merged.get((a, b), 1), label)
    return LabeledGraph.build(INTEGERS, len(renumber), ((a, b, label) for (a, b), label in sorted(merged.items())))


def _compatible(r: int, other: int, label: int) -> bool:
    if label == 0:
        return r == other
    return (r - other) % label == 0


class SplineOracle:
    """
    Brute-force spline search over the integers.
    """
    def __init__(self, search_limit: Optional[int] = None):
        """
        Initialize the oracle.

        Args:
            search_limit: Largest search space or node count to explore. If None, uses
                SPLINES_ORACLE_LIMIT.
        """
        if search_limit is None:
            search_limit = getattr(settings, 'SPLINES_ORACLE_LIMIT', DEFAULT_ORACLE_LIMIT)
        self.search_limit = search_limit

    def default_bound(self, graph: LabeledGraph) -> int:
        """The lcm of the nonzero edge labels."""
        return math.lcm(*(label for _, _, label in _labels(graph) if label), 1)

    def _vectors(self, graph: LabeledGraph, bound: Optional[int]) -> Iterator[Tuple[int, ...]]:
        labels = _labels(graph)
        m = bound or self.default_bound(graph)
        if m < 1:
            raise ValueError(f"Bound must be positive, got {m}")
        size = m ** graph.n
        if size > self.search_limit:
            raise SearchSpaceTooLarge(size, self.search_limit)

        # constraints of each vertex toward lower-indexed neighbors
        lower: Dict[int, List[Tuple[int, int]]] = {v: [] for v in graph.vertices()}
        for u, v, label in labels:
            lower[max(u, v)].append((min(u, v), label))

        values: List[int] = [0] * (graph.n + 1)

        def extend(v: int) -> Iterator[Tuple[int, ...]]:
            if v > graph.n:
                yield tuple(values[1:])
                return
            for r in range(m):
                if all(_compatible(r, values[u], label) for u, label in lower[v]):
                    values[v] = r
                    yield from extend(v + 1)

        yield from extend(1)

    def enumerate_splines_mod(self, graph: LabeledGraph, bound: Optional[int] = None) -> List[Spline]:
        """
        All splines with entries in 0..M-1, in lexicographic order.

        Args:
            graph: An integer-labeled graph.
            bound: M; defaults to the lcm of the nonzero labels.

        Raises:
            SearchSpaceTooLarge: If M^n exceeds the search limit.
        """
        return [Spline.of(INTEGERS, vector) for vector in self._vectors(graph, bound)]

    def count_splines_mod(self, graph: LabeledGraph, bound: Optional[int] = None) -> int:
        return sum(1 for _ in self._vectors(graph, bound))

    def _contracted_constraints(self, graph: LabeledGraph):
        labels = _labels(graph)
        owner = _zero_label_owner(graph, labels)

        neighbors: Dict[int, List[Tuple[int, int]]] = {c: [] for c in set(owner.values())}
        for u, v, label in labels:
            a, b = owner[u], owner[v]
            if label and a != b:
                neighbors[a].append((b, label))
                neighbors[b].append((a, label))
        return owner, neighbors

    def search_min_leading_entry(self, graph: LabeledGraph, i: int) -> Tuple[int, int]:
        """
        Least positive f_i over all splines vanishing on 1..i-1.

        A value only enters a constraint modulo the edge label, so each vertex is searched
        over residues modulo the lcm of its incident labels, and the leading value c over
        1..M_i; c = M_i is always feasible because the zero residue class is.

        Returns:
            Tuple (minimum, number of search nodes visited).

        Raises:
            NoFlowUpFound: If a zero label ties v_i to a lower vertex.
            SearchSpaceTooLarge: If the node budget runs out.
        """
        if not 1 <= i <= graph.n:
            raise VertexOutOfRange(i, graph.n)
        owner, neighbors = self._contracted_constraints(graph)
        lead = owner[i]
        if lead < i:
            raise NoFlowUpFound(i)

        modulus = {c: math.lcm(*(label for _, label in adjacent), 1) for c, adjacent in neighbors.items()}
        fixed = {c: 0 for c in neighbors if c < i}

        # breadth-first from the fixed classes so every class meets an assigned neighbor
        order: List[int] = []
        seen = set(fixed) | {lead}
        queue = deque(sorted(seen))
        while queue:
            c = queue.popleft()
            for d, _ in sorted(neighbors[c]):
                if d not in seen:
                    seen.add(d)
                    order.append(d)
                    queue.append(d)

        nodes = 0

        def fits(c: int, r: int, assignment: Dict[int, int]) -> bool:
            return all((r - assignment[d]) % label == 0 for d, label in neighbors[c] if d in assignment)

        def candidates(c: int, assignment: Dict[int, int]) -> range:
            assigned = [(d, label) for d, label in neighbors[c] if d in assignment]
            if not assigned:
                return range(modulus[c])
            d, label = max(assigned, key=lambda pair: pair[1])
            return range(assignment[d] % label, modulus[c], label)

        def extend(position: int, assignment: Dict[int, int]) -> bool:
            nonlocal nodes
            if position == len(order):
                return True
            c = order[position]
            for r in candidates(c, assignment):
                nodes += 1
                if nodes > self.search_limit:
                    raise SearchSpaceTooLarge(nodes, self.search_limit)
                if fits(c, r, assignment):
                    assignment[c] = r
                    if extend(position + 1, assignment):
                        return True
                    del assignment[c]
            return False

        for value in range(1, modulus[lead] + 1):
            nodes += 1
            assignment = dict(fixed)
            if not fits(lead, value, assignment):
                continue
            assignment[lead] = value
            if extend(0, assignment):
                return value, nodes
        raise NoFlowUpFound(i)

    def min_leading_entry(self, graph: LabeledGraph, i: int) -> int:
        return self.search_min_leading_entry(graph, i)[0]

    def all_trail_constraints(self, graph: LabeledGraph, k: int) -> List[Tuple[int, int]]:
        """
        (target, gcd) for every edge-distinct walk from v_k ending at a lower vertex.

        Walks may pass through lower vertices and revisit vertices; only edges are
        never reused.

        Raises:
            SearchSpaceTooLarge: If more walks than the search limit exist.
        """
        if not 1 <= k <= graph.n:
            raise VertexOutOfRange(k, graph.n)
        labels = _labels(graph)
        incident: Dict[int, List[Tuple[int, int, int]]] = {v: [] for v in graph.vertices()}
        for index, (u, v, label) in enumerate(labels):
            incident[u].append((index, v, label))
            incident[v].append((index, u, label))

        found: Set[Tuple[int, int]] = set()
        used: Set[int] = set()
        walks = 0

        def walk(vertex: int, divisor: int):
            nonlocal walks
            for index, w, label in incident[vertex]:
                if index in used:
                    continue
                walks += 1
                if walks > self.search_limit:
                    raise SearchSpaceTooLarge(walks, self.search_limit)
                g = math.gcd(divisor, label)
                if w < k:
                    found.add((w, g))
                used.add(index)
                walk(w, g)
                used.discard(index)

        walk(k, 0)
        logger.debug(f"Vertex {k}: {walks} trails, {len(found)} distinct constraints")
        return sorted(found)


def _admitted(m: int, constraints: List[Tuple[int, int]], values: Spline) -> Set[int]:
    return {
        r for r in range(m)
        if all(_compatible(r, values[t].value, g) for t, g in constraints)
    }


def oracle_min_leading_entry(graph: LabeledGraph, i: int, search_limit: Optional[int] = None) -> int:
    return SplineOracle(search_limit).min_leading_entry(graph, i)


def enumerate_splines_mod(graph: LabeledGraph, bound: Optional[int] = None, search_limit: Optional[int] = None) -> List[Spline]:
    return SplineOracle(search_limit).enumerate_splines_mod(graph, bound)


def all_trail_constraints(graph: LabeledGraph, k: int, search_limit: Optional[int] = None) -> List[Tuple[int, int]]:
    return SplineOracle(search_limit).all_trail_constraints(graph, k)


def check_min_leading(graph: LabeledGraph, oracle: Optional[SplineOracle] = None, name: str = '') -> List[OracleReport]:
    """
    Compare smallest_leading_entry with the exhaustive minimum at every index.
    """
    oracle = oracle or SplineOracle()
    builder = FlowUpBuilder(graph)
    reports = []
    for i in graph.vertices():
        computed = abs(builder.smallest_leading_entry(i).value)
        try:
            found, nodes = oracle.search_min_leading_entry(graph, i)
        except NoFlowUpFound:
            found, nodes = 0, 0
        reports.append(OracleReport(f"{name or describe(graph)} min-leading i={i}", computed, found, computed == found, nodes))
    return reports


def check_spline_count(graph: LabeledGraph, oracle: Optional[SplineOracle] = None, name: str = '') -> OracleReport:
    """
    Compare M^n / Q_G with the number of splines in {0..M-1}^n, M the lcm of the nonzero labels.

    M * e_v is a spline for every vertex v, so the splines mod M are exactly the quotient
    of the spline module by M Z^n, of order M^n / |det| = M^n / Q_G. A zero label breaks
    that (M * e_v must then move its whole zero-label class), so such graphs are counted
    on their zero-label contraction instead.
    """
    oracle = oracle or SplineOracle()
    m = oracle.default_bound(graph)
    if any(edge.label.is_zero for edge in graph.edges):
        reduced = contract_zero_labels(graph)
        logger.debug(f"Zero labels merge {graph.n} vertices into {reduced.n} for the spline count")
    else:
        reduced = graph
    expected = m ** reduced.n // abs(q_element(reduced).value)
    counted = oracle.count_splines_mod(graph, m)
    return OracleReport(f"{name or describe(graph)} spline-count M={m}", expected, counted, expected == counted, m ** graph.n)


def trails_equivalence(graph: LabeledGraph, oracle: Optional[SplineOracle] = None, name: str = '') -> List[OracleReport]:
    """
    Check that constraint paths and all trails admit the same residues.

    For each flow-up index i and each k > i, the lower entries are taken from the built
    F^(i); the residues mod M allowed for f_k must coincide.
    """
    oracle = oracle or SplineOracle()
    builder = FlowUpBuilder(graph)
    m = oracle.default_bound(graph)
    trails = {k: oracle.all_trail_constraints(graph, k) for k in graph.vertices()}
    paths = {
        k: [(p.target, abs(p.gcd.value)) for p in TrailEnumerator().constraint_paths(graph, k)]
        for k in graph.vertices()
    }

    reports = []
    for i in range(2, graph.n + 1):
        try:
            flowup = builder.build_flowup(i)
        except DegenerateFlowUp:
            continue
        for k in range(i + 1, graph.n + 1):
            pruned = _admitted(m, paths[k], flowup.spline)
            full = _admitted(m, trails[k], flowup.spline)
            reports.append(OracleReport(
                f"{name or describe(graph)} trails i={i} k={k}",
                len(pruned), len(full), pruned == full, m,
            ))
    return reports


def random_connected_graph(
    rng: random.Random, n: int, max_label: int, extra_edges: Optional[int] = None, zero_labels: bool = False
) -> LabeledGraph:
    """
    A random connected integer-labeled graph: a random tree plus extra edges, with
    vertex indices shuffled. Labels are drawn from 1..max_label, or from 0..max_label
    when zero_labels is set.
    """
    low = 0 if zero_labels else 1
    relabel = list(range(1, n + 1))
    rng.shuffle(relabel)
    edges = {}
    for v in range(1, n):
        u = rng.randrange(v)
        edges[frozenset((relabel[u], relabel[v]))] = rng.randint(low, max_label)

    missing = [frozenset((a, b)) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    missing = [pair for pair in missing if pair not in edges]
    if extra_edges is None:
        extra_edges = rng.randint(0, len(missing))
    for pair in rng.sample(missing, min(extra_edges, len(missing))):
        edges[pair] = rng.randint(low, max_label)

    return LabeledGraph.build(INTEGERS, n, ((*sorted(pair), label) for pair, label in edges.items()))


def random_cycle(rng: random.Random, n: int, max_label: int, ordered: bool = False, zero_labels: bool = False) -> LabeledGraph:
    low = 0 if zero_labels else 1
    order = list(range(1, n + 1))
    if not ordered:
        rng.shuffle(order)
    edges = [(order[k], order[(k + 1) % n], rng.randint(low, max_label)) for k in range(n)]
    return LabeledGraph.build(INTEGERS, n, edges)


def selftest(seed: Optional[int] = None, count: Optional[int] = None, max_vertices: int = 5, max_label: int = 12) -> List[OracleReport]:
    """
    Randomized agreement run between the engine and the exhaustive search.

    Every third instance is a cycle; the rest are random connected graphs.

    Args:
        seed: Random seed. If None, uses SPLINES_SEED.
        count: Number of graphs. If None, uses SPLINES_SELFTEST_GRAPHS.
        max_vertices: Largest vertex count.
        max_label: Largest edge label.

    Returns:
        Reports for minimal leading entries and basis checks.
    """
    seed = getattr(settings, 'SPLINES_SEED', 0) if seed is None else seed
    count = getattr(settings, 'SPLINES_SELFTEST_GRAPHS', 200) if count is None else count
    rng = random.Random(seed)
    oracle = SplineOracle()

    reports: List[OracleReport] = []
    for index in range(count):
        n = rng.randint(3, max(3, max_vertices)) if index % 3 == 2 else rng.randint(1, max_vertices)
        if index % 3 == 2:
            graph = random_cycle(rng, n, max_label)
        else:
            graph = random_connected_graph(rng, n, max_label)
        name = f"#{index} {describe(graph)}"
        reports.extend(check_min_leading(graph, oracle, name))
        is_basis = bool(is_flowup_basis(graph, build_basis(graph, jobs=1).splines))
        reports.append(OracleReport(f"{name} basis", is_basis, True, is_basis, graph.n))

    failures = sum(1 for report in reports if not report.agree)
    logger.info(f"Self-test with seed {seed}: {len(reports)} comparisons, {failures} failures")
    return reports
