"""Instance generators.

Three families live here: the layered extremal digraphs G_{n,m,k}
witnessing the fibre lower bound, the reduction from 3-edge-colouring
of cubic graphs (with a gadget whose two defining properties are
re-certified by exhaustive enumeration every time it is built), and
seeded random families used by the property suites.
"""

from __future__ import annotations

import itertools
import math
import random
from collections.abc import Iterable
from typing import NamedTuple

from .digraph import Digraph, LabelledDigraph, degree_profile
from .errors import (BadParamsError, InfeasibleError, InternalDefectError,
                     NotCubicError, SizeOverflowError, ValidateError)

ARC_BUDGET = 1_000_000

# Refuse to even do the size arithmetic beyond this exponent; 2^4096 is
# already far past any budget and keeps hostile parameters cheap.
_MAX_EXPONENT = 4096


class GnmkSizes(NamedTuple):
    x: int
    y: int
    z: int
    arcs: int
    reduced: bool


def gnmk_sizes(n: int, m: int, k: int, y_cap: int | None = None) -> GnmkSizes:
    """Layer sizes and arc count of G_{n,m,k}, before building anything.

    The digraph itself does not depend on n; the parameter is kept so
    callers state which lambda_n they are probing.  With y_cap, the Y
    layer is truncated and the result is flagged as reduced.
    """
    _check_gnmk_params(n, m, k, y_cap)
    exponent = (m + 1) * k
    if exponent > _MAX_EXPONENT:
        raise SizeOverflowError(
            f"G_{{{n},{m},{k}}} has |Y| = {k}*2^{exponent}, beyond any budget")
    full_y = k * (1 << exponent)
    y = full_y if y_cap is None else min(full_y, y_cap)
    z = m * math.comb(y, k)
    arcs = k * y + k * z
    return GnmkSizes(k, y, z, arcs, y < full_y)


def _check_gnmk_params(n: int, m: int, k: int, y_cap: int | None) -> None:
    if n < 1 or m < 1 or k < 1:
        raise BadParamsError(f"need n,m,k >= 1, got ({n},{m},{k})")
    if y_cap is not None and y_cap < 1:
        raise BadParamsError(f"y_cap must be positive, got {y_cap}")


def extremal_gnmk(n: int, m: int, k: int, y_cap: int | None = None,
                  arc_budget: int = ARC_BUDGET) -> LabelledDigraph:
    """The three-layer digraph forcing ceil((m/n)ceil(k/n) + k/n) colours.

    Layers X, Y, Z with |X| = k and |Y| = k*2^((m+1)k): every x in X
    dominates every y in Y (labelled 1; the labels of these arcs carry
    no weight), and for every k-subset S of Y and every label i there
    is a vertex z dominated by all of S via arcs labelled i.  Every
    vertex outside X has indegree exactly k.

    Full sizes explode immediately, so without y_cap anything beyond
    arc_budget raises SizeOverflowError; y_cap truncates Y (and with it
    the Z layer) to a reduced probe instance.
    """
    sizes = gnmk_sizes(n, m, k, y_cap)
    if sizes.arcs > arc_budget:
        hint = "" if y_cap is not None else "; pass y_cap for a reduced variant"
        raise SizeOverflowError(
            f"G_{{{n},{m},{k}}} needs {sizes.arcs} arcs, budget is {arc_budget}{hint}")
    y_base = sizes.x
    z_base = y_base + sizes.y
    arcs: list[tuple[int, int, int]] = []
    for x in range(sizes.x):
        for j in range(sizes.y):
            arcs.append((x, y_base + j, 1))
    z_vertex = z_base
    for subset in itertools.combinations(range(sizes.y), k):
        for label in range(1, m + 1):
            for j in subset:
                arcs.append((y_base + j, z_vertex, label))
            z_vertex += 1
    assert z_vertex - z_base == sizes.z
    return LabelledDigraph(z_base + sizes.z, m, tuple(arcs))


# ---------------------------------------------------------------------------
# hardness reduction


class GadgetCertificate(NamedTuple):
    colourings: int        # directed star 3-colourings of the gadget
    p1_ok: bool            # every one gives distinct interface colours
    p2_triples: int        # distinct interface triples that extend (= 6)


class NpGadget(NamedTuple):
    digraph: Digraph
    a_in: int
    b_out: int
    c_out: int
    certificate: GadgetCertificate


# Vertex 0 is the external tail of the entering arc, 4 and 5 the
# external heads of the two leaving arcs; 1..3 are internal.
_GADGET_ARCS = (
    (0, 1),   # a_in
    (1, 4),   # b_out
    (1, 2),
    (2, 1),
    (2, 5),   # c_out
    (3, 2),
)
_GADGET_A, _GADGET_B, _GADGET_C = 0, 1, 4


def _conflict_pairs(arcs: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    seq = list(arcs)
    pairs = []
    for i, (ti, hi) in enumerate(seq):
        for j in range(i + 1, len(seq)):
            tj, hj = seq[j]
            if hi == hj or hi == tj or hj == ti:
                pairs.append((i, j))
    return pairs


_gadget_cache: NpGadget | None = None


def np_gadget() -> NpGadget:
    """The substitution gadget for the hardness reduction, certified.

    One arc enters it and two leave.  Certification enumerates all 3^6
    arc colourings: every directed star 3-colouring makes the three
    interface arcs pairwise distinct, and all 6 distinct interface
    triples extend to the whole gadget.  Failure of either property is
    a build-stopping defect, not an input error.
    """
    global _gadget_cache
    if _gadget_cache is not None:
        return _gadget_cache
    d = Digraph(6, _GADGET_ARCS)
    profile = degree_profile(d)
    if profile.max_indegree > 2 or profile.max_outdegree > 2:
        raise InternalDefectError("gadget exceeds in/outdegree two")
    pairs = _conflict_pairs(d.arcs)
    interface = (_GADGET_A, _GADGET_B, _GADGET_C)
    valid = 0
    triples: set[tuple[int, int, int]] = set()
    p1 = True
    for phi in itertools.product((1, 2, 3), repeat=len(d.arcs)):
        if any(phi[i] == phi[j] for i, j in pairs):
            continue
        valid += 1
        triple = tuple(phi[a] for a in interface)
        if len(set(triple)) != 3:
            p1 = False
        triples.add(triple)
    if not p1 or len(triples) != 6:
        raise InternalDefectError(
            f"gadget certification failed: p1={p1}, extendable triples={len(triples)}")
    cert = GadgetCertificate(valid, p1, len(triples))
    _gadget_cache = NpGadget(d, _GADGET_A, _GADGET_B, _GADGET_C, cert)
    return _gadget_cache


def _check_cubic(vertex_count: int, edges: Iterable[tuple[int, int]],
                 ) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    degree = [0] * vertex_count
    for u, v in edges:
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise ValidateError(f"edge ({u},{v}) outside 0..{vertex_count - 1}")
        if u == v:
            raise ValidateError(f"loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ValidateError(f"duplicate edge ({u},{v})")
        seen.add(key)
        degree[u] += 1
        degree[v] += 1
        out.append(key)
    if any(deg != 3 for deg in degree):
        raise NotCubicError("graph is not 3-regular")
    return out


def _flip_path(arcs: list[tuple[int, int]], path: list[int]) -> None:
    for e in path:
        t, h = arcs[e]
        arcs[e] = (h, t)


def _bfs_to(arcs: list[tuple[int, int]], start: int, vertex_count: int,
            want: list[int], threshold: int, forward: bool) -> list[int] | None:
    """Edge indices of a shortest directed path from start to any vertex
    whose want-degree is at least threshold (arcs walked backwards when
    forward is false)."""
    parent: dict[int, tuple[int, int]] = {}
    seen = {start}
    frontier = [start]
    while frontier:
        nxt: list[int] = []
        for u in frontier:
            for e, (t, h) in enumerate(arcs):
                v = h if forward and t == u else (t if not forward and h == u else None)
                if v is None or v in seen:
                    continue
                seen.add(v)
                parent[v] = (u, e)
                if want[v] >= threshold:
                    path = [e]
                    back = u
                    while back != start:
                        back, pe = parent[back]
                        path.append(pe)
                    path.reverse()
                    return path
                nxt.append(v)
        frontier = nxt
    return None


def _orient_no_sink_source(vertex_count: int, edges: Iterable[tuple[int, int]],
                           ) -> list[tuple[int, int]]:
    """Orient a graph with min degree >= 2 so every vertex keeps indegree
    and outdegree at least one.

    Local search: orient low-to-high, then repeatedly flip a shortest
    directed path from a source to a vertex of indegree >= 2 (and the
    mirror move for sinks).  Each flip repairs its endpoint and breaks
    nothing, so the defect count strictly decreases; graphs of at most
    twelve vertices fall back to exhaustive search should it ever stall.
    """
    edge_list = [(min(u, v), max(u, v)) for u, v in edges]
    arcs = list(edge_list)
    while True:
        indeg = [0] * vertex_count
        outdeg = [0] * vertex_count
        for t, h in arcs:
            outdeg[t] += 1
            indeg[h] += 1
        sources = [v for v in range(vertex_count) if indeg[v] == 0 and outdeg[v] > 0]
        sinks = [v for v in range(vertex_count) if outdeg[v] == 0 and indeg[v] > 0]
        if not sources and not sinks:
            return arcs
        if sources:
            path = _bfs_to(arcs, sources[0], vertex_count, indeg, 2, forward=True)
        else:
            path = _bfs_to(arcs, sinks[0], vertex_count, outdeg, 2, forward=False)
        if path is None:
            break
        _flip_path(arcs, path)
    if vertex_count <= 12:
        return _orient_exhaustive(vertex_count, edge_list)
    raise InternalDefectError("orientation local search stalled")


def _orient_exhaustive(vertex_count: int,
                       edges: list[tuple[int, int]]) -> list[tuple[int, int]]:
    edge_count = len(edges)
    incident: list[list[int]] = [[] for _ in range(vertex_count)]
    for e, (u, v) in enumerate(edges):
        incident[u].append(e)
        incident[v].append(e)
    undecided = [len(incident[v]) for v in range(vertex_count)]
    indeg = [0] * vertex_count
    outdeg = [0] * vertex_count
    arcs: list[tuple[int, int] | None] = [None] * edge_count

    def place(e: int) -> bool:
        if e == edge_count:
            return True
        u, v = edges[e]
        undecided[u] -= 1
        undecided[v] -= 1
        for tail, head in ((u, v), (v, u)):
            outdeg[tail] += 1
            indeg[head] += 1
            ok = True
            for w in (u, v):
                if undecided[w] == 0 and (indeg[w] == 0 or outdeg[w] == 0):
                    ok = False
            if ok and place(e + 1):
                arcs[e] = (tail, head)
                return True
            outdeg[tail] -= 1
            indeg[head] -= 1
        undecided[u] += 1
        undecided[v] += 1
        return False

    if not place(0):
        raise InfeasibleError("no orientation without sinks or sources exists")
    done = [a for a in arcs if a is not None]
    assert len(done) == edge_count
    return done


def np_reduction(vertex_count: int, edges: Iterable[tuple[int, int]]) -> Digraph:
    """Digraph whose directed star arboricity is 3 exactly when the
    cubic graph is 3-edge-colourable.

    The graph is oriented without sinks or sources, which leaves every
    vertex with degrees (1,2) or (2,1).  A (2,1)-vertex already forces
    its three arcs apart in any 3-colouring; each (1,2)-vertex is
    replaced by the certified gadget, whose internal vertices take over
    the tail of its second leaving arc.  Output degrees stay <= 2.
    """
    edge_list = _check_cubic(vertex_count, edges)
    arcs = _orient_no_sink_source(vertex_count, edge_list)
    indeg = [0] * vertex_count
    outdeg = [0] * vertex_count
    out_of: list[list[int]] = [[] for _ in range(vertex_count)]
    for e, (t, h) in enumerate(arcs):
        outdeg[t] += 1
        indeg[h] += 1
        out_of[t].append(e)
    np_gadget()  # certify before building anything on top of it
    fresh = vertex_count
    extra: list[tuple[int, int]] = []
    for v in range(vertex_count):
        if (indeg[v], outdeg[v]) == (2, 1):
            continue
        if (indeg[v], outdeg[v]) != (1, 2):
            raise InternalDefectError(
                f"orientation left vertex {v} with degrees ({indeg[v]},{outdeg[v]})")
        # v plays the gadget vertex holding a_in and b_out; t_v takes
        # over c_out, y_v feeds t_v.
        t_v, y_v = fresh, fresh + 1
        fresh += 2
        second = out_of[v][1]
        arcs[second] = (t_v, arcs[second][1])
        extra.extend(((v, t_v), (t_v, v), (y_v, t_v)))
    result = Digraph(fresh, tuple(arcs) + tuple(extra))
    profile = degree_profile(result)
    if profile.max_indegree > 2 or profile.max_outdegree > 2:
        raise InternalDefectError("reduction output exceeds in/outdegree two")
    return result


CUBIC_GRAPHS: dict[str, tuple[int, tuple[tuple[int, int], ...]]] = {
    "k4": (4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))),
    "k33": (6, ((0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5),
                (2, 3), (2, 4), (2, 5))),
    "prism": (6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5),
                  (0, 3), (1, 4), (2, 5))),
    "petersen": (10, ((0, 1), (1, 2), (2, 3), (3, 4), (0, 4),
                      (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                      (5, 7), (6, 8), (7, 9), (5, 8), (6, 9))),
    # generalized Petersen graph GP(8,3)
    "moebius-kantor": (16, tuple((i, (i + 1) % 8) for i in range(8))
                       + tuple((i, 8 + i) for i in range(8))
                       + tuple((8 + i, 8 + (i + 3) % 8) for i in range(8))),
}


def triangle_multidigraph(multiplicity: int) -> Digraph:
    """Directed triangle with every arc repeated; needs 3*multiplicity
    galaxies since parallel arcs share a head and consecutive blocks
    collide pairwise."""
    if multiplicity < 1:
        raise BadParamsError(f"multiplicity must be positive, got {multiplicity}")
    arcs = []
    for pair in ((0, 1), (1, 2), (2, 0)):
        arcs.extend([pair] * multiplicity)
    return Digraph(3, tuple(arcs), allow_parallel=True)


# ---------------------------------------------------------------------------
# seeded random families


def _greedy_arcs(n: int, rng: random.Random,
                 may_add) -> list[tuple[int, int]]:
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    rng.shuffle(pairs)
    keep = rng.uniform(0.3, 0.9)
    chosen: list[tuple[int, int]] = []
    for u, v in pairs:
        if rng.random() > keep:
            continue
        if may_add(u, v, chosen):
            chosen.append((u, v))
    return chosen


def random_digraph(n: int, in_cap: int, out_cap: int, seed: int) -> Digraph:
    """Random simple digraph with max in/outdegree capped and attained.

    Both caps are hit exactly at some vertex whenever both are positive
    (Infeasible when n is too small for that); a zero cap on either
    side forces the arcless digraph.
    """
    if n < 1 or in_cap < 0 or out_cap < 0:
        raise BadParamsError(f"bad parameters n={n}, caps=({in_cap},{out_cap})")
    if in_cap == 0 or out_cap == 0:
        return Digraph(n, ())
    if in_cap > n - 1 or out_cap > n - 1:
        raise InfeasibleError(
            f"caps ({in_cap},{out_cap}) unattainable on {n} vertices")
    rng = random.Random(seed)
    indeg = [0] * n
    outdeg = [0] * n
    # plant the attainment structure first: one vertex drinks in_cap
    # arcs, and the first of its tails also emits out_cap arcs; the
    # greedy fill below can then never strand either cap.
    target_in = rng.randrange(n)
    others = [v for v in range(n) if v != target_in]
    tails = rng.sample(others, in_cap)
    chosen = [(u, target_in) for u in tails]
    for u in tails:
        outdeg[u] += 1
    indeg[target_in] = in_cap
    target_out = tails[0]
    spare_heads = [v for v in others if v != target_out]
    for v in rng.sample(spare_heads, out_cap - 1):
        chosen.append((target_out, v))
        outdeg[target_out] += 1
        indeg[v] += 1
    present = set(chosen)

    def may_add(u: int, v: int, _chosen) -> bool:
        if (u, v) in present:
            return False
        if outdeg[u] < out_cap and indeg[v] < in_cap:
            present.add((u, v))
            outdeg[u] += 1
            indeg[v] += 1
            return True
        return False

    chosen.extend(_greedy_arcs(n, rng, may_add))
    assert max(indeg) == in_cap and max(outdeg) == out_cap
    return Digraph(n, tuple(chosen))


def random_subcubic(n: int, seed: int) -> Digraph:
    """Random digraph with total degree at most 3 everywhere."""
    if n < 1:
        raise BadParamsError(f"need n >= 1, got {n}")
    rng = random.Random(seed)
    deg = [0] * n

    def may_add(u: int, v: int, _chosen) -> bool:
        if deg[u] < 3 and deg[v] < 3:
            deg[u] += 1
            deg[v] += 1
            return True
        return False

    return Digraph(n, tuple(_greedy_arcs(n, rng, may_add)))


def random_oriented_subcubic(n: int, seed: int) -> Digraph:
    """Random subcubic digraph without digons."""
    if n < 1:
        raise BadParamsError(f"need n >= 1, got {n}")
    rng = random.Random(seed)
    deg = [0] * n
    present: set[tuple[int, int]] = set()

    def may_add(u: int, v: int, _chosen) -> bool:
        if deg[u] < 3 and deg[v] < 3 and (v, u) not in present:
            present.add((u, v))
            deg[u] += 1
            deg[v] += 1
            return True
        return False

    return Digraph(n, tuple(_greedy_arcs(n, rng, may_add)))


def random_labelled_dag(n: int, m: int, k: int, seed: int) -> LabelledDigraph:
    """Random acyclic m-labelled digraph with max indegree at most k.

    Arcs respect a hidden random topological order; the last vertex in
    that order attains indegree min(k, n-1) so the bound is tight.
    """
    if n < 1 or m < 1 or k < 0:
        raise BadParamsError(f"bad parameters n={n}, m={m}, k={k}")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    arcs: list[tuple[int, int, int]] = []
    for pos in range(1, n):
        v = order[pos]
        cap = min(k, pos)
        quota = cap if pos == n - 1 else rng.randint(0, cap)
        for p in sorted(rng.sample(range(pos), quota)):
            arcs.append((order[p], v, rng.randint(1, m)))
    return LabelledDigraph(n, m, tuple(arcs))
