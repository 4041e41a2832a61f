"""
Constraint path enumeration.

For a vertex k, a constraint path starts at k, visits only vertices with a larger index
in between and stops at the first vertex with a smaller index. Every entry f_k of a
flow-up class is pinned down by these paths alone.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from django.conf import settings

from .exceptions import PathLimitExceeded, VertexOutOfRange
from .graph import LabeledGraph
from .ring import RingElem, gcd_of, lcm_of

# Configure logging
logger = logging.getLogger(__name__)

DEFAULT_PATH_LIMIT = 10 ** 6


@dataclass(frozen=True)
class ConstraintPath:
    """
    A simple path from source down to target.

    Attributes:
        source: The starting vertex k.
        target: The terminal vertex, the only one with index below k.
        vertices: Every vertex on the path, source first and target last.
        edge_labels: Labels of the traversed edges in order.
        gcd: Normalized gcd of the edge labels.
    """
    source: int
    target: int
    vertices: Tuple[int, ...]
    edge_labels: Tuple[RingElem, ...]
    gcd: RingElem


class TrailEnumerator:
    """
    Enumerates constraint paths by depth-first search over sorted neighbor lists.
    """
    def __init__(self, path_limit: Optional[int] = None):
        """
        Initialize the enumerator.

        Args:
            path_limit: Maximum number of paths per vertex. If None, uses SPLINES_PATH_LIMIT.
        """
        if path_limit is None:
            path_limit = getattr(settings, 'SPLINES_PATH_LIMIT', DEFAULT_PATH_LIMIT)
        self.path_limit = path_limit

    def _walks(self, graph: LabeledGraph, k: int) -> Iterator[Tuple[int, ...]]:
        adjacency = graph.adjacency
        path = [k]
        on_path = {k}
        stack = [iter(adjacency[k])]
        while stack:
            w = next(stack[-1], None)
            if w is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            if w in on_path:
                continue
            if w < k:
                yield tuple(path) + (w,)
            else:
                path.append(w)
                on_path.add(w)
                stack.append(iter(adjacency[w]))

    def constraint_paths(self, graph: LabeledGraph, k: int) -> List[ConstraintPath]:
        """
        Enumerate all constraint paths from vertex k.

        Args:
            graph: The edge-labeled graph.
            k: Source vertex.

        Returns:
            Paths in lexicographic order of their vertex sequences. Vertex 1 has none.

        Raises:
            VertexOutOfRange: If k is not a vertex.
            PathLimitExceeded: If more than path_limit paths exist.
        """
        if not 1 <= k <= graph.n:
            raise VertexOutOfRange(k, graph.n)

        paths: List[ConstraintPath] = []
        for walk in self._walks(graph, k):
            if len(paths) >= self.path_limit:
                raise PathLimitExceeded(k, self.path_limit)
            labels = tuple(graph.label(a, b) for a, b in zip(walk, walk[1:]))
            paths.append(ConstraintPath(k, walk[-1], walk, labels, gcd_of(graph.ring, labels)))

        logger.debug(f"Vertex {k}: {len(paths)} constraint paths")
        return paths

    def zero_trail_gcds(self, graph: LabeledGraph, i: int) -> List[RingElem]:
        """
        The gcds of all constraint paths from vertex i.

        Every path from i ends at a vertex where a flow-up class of index i vanishes,
        so the smallest leading entry is the lcm of these gcds.
        """
        return [path.gcd for path in self.constraint_paths(graph, i)]

    def grouped_moduli(self, graph: LabeledGraph, k: int) -> Dict[int, RingElem]:
        """
        Combine the constraint paths from k by target.

        Returns:
            Mapping target -> lcm of the gcds of the paths ending there, so that
            f_k = f_target (mod modulus) for every target.
        """
        by_target: Dict[int, List[RingElem]] = defaultdict(list)
        for path in self.constraint_paths(graph, k):
            by_target[path.target].append(path.gcd)
        return {target: lcm_of(graph.ring, gcds) for target, gcds in sorted(by_target.items())}


def constraint_paths(graph: LabeledGraph, k: int, path_limit: Optional[int] = None) -> List[ConstraintPath]:
    return TrailEnumerator(path_limit).constraint_paths(graph, k)


def zero_trail_gcds(graph: LabeledGraph, i: int, path_limit: Optional[int] = None) -> List[RingElem]:
    return TrailEnumerator(path_limit).zero_trail_gcds(graph, i)
