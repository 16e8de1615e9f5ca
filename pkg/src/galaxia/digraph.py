"""Digraph data model and basic machinery shared by every algorithm.

Vertices are dense 0-based integers.  Arcs live in an ordered tuple and
are referenced everywhere by their index in that tuple, which keeps
colourings unambiguous even when parallel arcs are allowed.  All types
are immutable values; derived structures (adjacency, degrees) are
cached lazily and never exposed mutably.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from heapq import heapify, heappush, heappop

from .errors import CyclicError, ValidateError

Arc = tuple[int, int]


@dataclass(frozen=True)
class Digraph:
    vertex_count: int
    arcs: tuple[Arc, ...]
    allow_parallel: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "arcs", tuple((t, h) for t, h in self.arcs))
        if self.vertex_count < 0:
            raise ValidateError("vertex_count must be non-negative")
        seen = set()
        for i, (tail, head) in enumerate(self.arcs):
            if not (0 <= tail < self.vertex_count and 0 <= head < self.vertex_count):
                raise ValidateError(f"arc {i} ({tail},{head}) out of vertex range")
            if tail == head:
                raise ValidateError(f"arc {i} is a self-loop at {tail}")
            if not self.allow_parallel:
                if (tail, head) in seen:
                    raise ValidateError(f"arc {i} duplicates ({tail},{head})")
                seen.add((tail, head))

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    @cached_property
    def out_arcs(self) -> tuple[tuple[int, ...], ...]:
        """Per vertex, indices of leaving arcs in ascending arc order."""
        buckets: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for i, (tail, _) in enumerate(self.arcs):
            buckets[tail].append(i)
        return tuple(tuple(b) for b in buckets)

    @cached_property
    def in_arcs(self) -> tuple[tuple[int, ...], ...]:
        """Per vertex, indices of entering arcs in ascending arc order."""
        buckets: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for i, (_, head) in enumerate(self.arcs):
            buckets[head].append(i)
        return tuple(tuple(b) for b in buckets)

    def has_digon(self) -> bool:
        pairs = set(self.arcs)
        return any((h, t) in pairs for t, h in self.arcs)


@dataclass(frozen=True)
class LabelledDigraph:
    """Digraph whose arcs carry a label in 1..label_count.

    (tail, head, label) triples are distinct, so parallel arcs exist
    exactly when the same ordered pair appears under several labels.
    """

    vertex_count: int
    label_count: int
    arcs: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "arcs", tuple((t, h, l) for t, h, l in self.arcs))
        if self.vertex_count < 0:
            raise ValidateError("vertex_count must be non-negative")
        if self.label_count < 1:
            raise ValidateError("label_count must be positive")
        seen = set()
        for i, (tail, head, label) in enumerate(self.arcs):
            if not (0 <= tail < self.vertex_count and 0 <= head < self.vertex_count):
                raise ValidateError(f"arc {i} ({tail},{head}) out of vertex range")
            if tail == head:
                raise ValidateError(f"arc {i} is a self-loop at {tail}")
            if not (1 <= label <= self.label_count):
                raise ValidateError(f"arc {i} label {label} outside 1..{self.label_count}")
            if (tail, head, label) in seen:
                raise ValidateError(f"arc {i} duplicates ({tail},{head},{label})")
            seen.add((tail, head, label))

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    @cached_property
    def underlying(self) -> Digraph:
        """The label-stripped multidigraph, same arc indices."""
        return Digraph(self.vertex_count, tuple((t, h) for t, h, _ in self.arcs),
                       allow_parallel=True)


@dataclass(frozen=True)
class DegreeProfile:
    indegree: tuple[int, ...]
    outdegree: tuple[int, ...]
    degree: tuple[int, ...] = field(init=False)
    max_indegree: int = field(init=False)
    max_outdegree: int = field(init=False)
    max_degree: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "degree",
                           tuple(i + o for i, o in zip(self.indegree, self.outdegree)))
        object.__setattr__(self, "max_indegree", max(self.indegree, default=0))
        object.__setattr__(self, "max_outdegree", max(self.outdegree, default=0))
        object.__setattr__(self, "max_degree", max(self.degree, default=0))


def degree_profile(d: Digraph | LabelledDigraph) -> DegreeProfile:
    indeg = [0] * d.vertex_count
    outdeg = [0] * d.vertex_count
    for arc in d.arcs:
        outdeg[arc[0]] += 1
        indeg[arc[1]] += 1
    return DegreeProfile(tuple(indeg), tuple(outdeg))


def strong_components(d: Digraph) -> tuple[tuple[int, ...], ...]:
    """SCCs in reverse-topological order of the condensation.

    Iterative Tarjan; a component is emitted only once everything it can
    reach has been emitted, which is exactly the contract.  Vertices are
    visited ascending and successors in arc order, so the output is a
    pure function of the input.  Members are sorted ascending.
    """
    n = d.vertex_count
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    components: list[tuple[int, ...]] = []
    counter = 0
    out_arcs = d.out_arcs
    arcs = d.arcs

    for root in range(n):
        if index[root] != -1:
            continue
        # explicit DFS stack of (vertex, iterator position into out_arcs)
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, ptr = work.pop()
            advanced = False
            while ptr < len(out_arcs[v]):
                w = arcs[out_arcs[v][ptr]][1]
                ptr += 1
                if index[w] == -1:
                    work.append((v, ptr))
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                components.append(tuple(sorted(comp)))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return tuple(components)


def _witness_circuit(d: Digraph, alive: set[int]) -> tuple[int, ...]:
    """A circuit inside `alive`, every member of which has an entering
    arc from within `alive`.  Walk backwards along the least such
    in-neighbour until a vertex repeats."""
    in_arcs = d.in_arcs
    arcs = d.arcs
    start = min(alive)
    seen_at: dict[int, int] = {}
    path = [start]
    seen_at[start] = 0
    while True:
        v = path[-1]
        prev = min(arcs[i][0] for i in in_arcs[v] if arcs[i][0] in alive)
        if prev in seen_at:
            cycle = path[seen_at[prev]:]
            cycle.reverse()  # walked tail-wards, report in arc direction
            k = cycle.index(min(cycle))
            return tuple(cycle[k:] + cycle[:k])
        seen_at[prev] = len(path)
        path.append(prev)


def topological_order(d: Digraph) -> tuple[int, ...]:
    """Kahn's algorithm, always removing the lowest-id ready vertex.

    Raises CyclicError with a witness circuit when no order exists.
    """
    indeg = [0] * d.vertex_count
    for _, head in d.arcs:
        indeg[head] += 1
    ready = [v for v in range(d.vertex_count) if indeg[v] == 0]
    heapify(ready)
    order: list[int] = []
    out_arcs = d.out_arcs
    arcs = d.arcs
    while ready:
        v = heappop(ready)
        order.append(v)
        for i in out_arcs[v]:
            w = arcs[i][1]
            indeg[w] -= 1
            if indeg[w] == 0:
                heappush(ready, w)
    if len(order) < d.vertex_count:
        alive = {v for v in range(d.vertex_count) if indeg[v] > 0}
        raise CyclicError(_witness_circuit(d, alive))
    return tuple(order)


def is_acyclic(d: Digraph) -> bool:
    try:
        topological_order(d)
    except CyclicError:
        return False
    return True


def find_circuit_arcs(d: Digraph, removed: set[int] | None = None) -> tuple[int, ...] | None:
    """Arc indices of some circuit in d minus `removed` arcs, or None.

    DFS from the lowest vertex, exploring lowest arc index first; the
    first back-arc found closes the reported circuit.  Deterministic.
    """
    removed = removed or set()
    arcs = d.arcs
    out_arcs = d.out_arcs
    colour = [0] * d.vertex_count  # 0 white, 1 on current path, 2 done
    for root in range(d.vertex_count):
        if colour[root] != 0:
            continue
        path_arcs: list[int] = []
        depth = {root: 0}  # number of path arcs from root to the vertex
        work: list[tuple[int, int]] = [(root, 0)]
        colour[root] = 1
        while work:
            v, ptr = work.pop()
            descended = False
            while ptr < len(out_arcs[v]):
                i = out_arcs[v][ptr]
                ptr += 1
                if i in removed:
                    continue
                w = arcs[i][1]
                if colour[w] == 1:
                    # path_arcs[depth[w]:] runs w -> ... -> v, arc i closes it
                    return tuple(path_arcs[depth[w]:]) + (i,)
                if colour[w] == 0:
                    work.append((v, ptr))
                    colour[w] = 1
                    path_arcs.append(i)
                    depth[w] = len(path_arcs)
                    work.append((w, 0))
                    descended = True
                    break
            if not descended:
                colour[v] = 2
                if path_arcs:
                    path_arcs.pop()
                del depth[v]
    return None


def split_acyclic_eulerian(d: Digraph) -> tuple[Digraph, Digraph]:
    """Partition the arcs into an acyclic part and an Eulerian part.

    Repeatedly peels the circuit found by find_circuit_arcs into the
    Eulerian side until the residue is acyclic.  A union of arc-disjoint
    circuits has equal in- and outdegree everywhere, which is the whole
    Eulerian requirement here.
    """
    removed: set[int] = set()
    eulerian: list[int] = []
    while True:
        circ = find_circuit_arcs(d, removed)
        if circ is None:
            break
        eulerian.extend(circ)
        removed.update(circ)
    e_set = set(eulerian)
    d_a = Digraph(d.vertex_count,
                  tuple(d.arcs[i] for i in range(d.arc_count) if i not in e_set),
                  allow_parallel=True)
    d_e = Digraph(d.vertex_count,
                  tuple(d.arcs[i] for i in sorted(e_set)),
                  allow_parallel=True)
    return d_a, d_e
