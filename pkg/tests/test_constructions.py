"""Instance generators: extremal digraphs, the hardness reduction, random families."""
import pytest
from hypothesis import given, strategies as st

from galaxia import (
    BadParamsError,
    CUBIC_GRAPHS,
    Digraph,
    GnmkSizes,
    InfeasibleError,
    NotCubicError,
    SizeOverflowError,
    degree_profile,
    edge_colouring_3regular,
    exact_dst,
    extremal_gnmk,
    gnmk_sizes,
    is_acyclic,
    np_gadget,
    np_reduction,
    random_digraph,
    random_labelled_dag,
    random_oriented_subcubic,
    random_subcubic,
    triangle_multidigraph,
)


def test_gnmk_sizes_base():
    assert gnmk_sizes(1, 1, 1) == GnmkSizes(1, 4, 4, 8, False)


def test_gnmk_sizes_capped():
    assert gnmk_sizes(1, 1, 2, y_cap=6) == GnmkSizes(2, 6, 15, 42, True)


def test_gnmk_sizes_not_reduced_when_cap_is_loose():
    full = gnmk_sizes(1, 1, 1)
    assert gnmk_sizes(1, 1, 1, y_cap=full.y) == full._replace(reduced=False)


def test_gnmk_params_rejected():
    with pytest.raises(BadParamsError):
        gnmk_sizes(0, 1, 1)
    with pytest.raises(BadParamsError):
        gnmk_sizes(1, 1, 1, y_cap=0)


def test_gnmk_exponent_guard():
    with pytest.raises(SizeOverflowError):
        gnmk_sizes(1, 5000, 2)


def test_extremal_gnmk_structure():
    ld = extremal_gnmk(1, 1, 1)
    sizes = gnmk_sizes(1, 1, 1)
    assert ld.vertex_count == sizes.x + sizes.y + sizes.z
    assert ld.arc_count == sizes.arcs
    assert is_acyclic(ld.underlying)
    profile = degree_profile(ld)
    # every vertex outside X has indegree exactly k
    assert all(profile.indegree[v] == 1 for v in range(1, ld.vertex_count))
    assert profile.indegree[0] == 0


def test_extremal_gnmk_meets_lower_bound():
    # dst(G_{1,1,1}) = 2 = the lower-bound formula at n = m = k = 1
    d = extremal_gnmk(1, 1, 1).underlying
    assert exact_dst(d)[0] == 2


def test_extremal_gnmk_reduced_still_tight():
    d = extremal_gnmk(1, 1, 2, y_cap=6).underlying
    assert exact_dst(d, colour_cap=None, arc_limit=60)[0] == 4


def test_extremal_gnmk_budget():
    with pytest.raises(SizeOverflowError) as info:
        extremal_gnmk(2, 2, 2, arc_budget=10)
    assert "y_cap" in str(info.value)
    with pytest.raises(SizeOverflowError) as capped:
        extremal_gnmk(2, 2, 2, y_cap=100, arc_budget=10)
    assert "y_cap" not in str(capped.value)


def test_gadget_certificate():
    gadget = np_gadget()
    assert gadget.certificate.colourings == 6
    assert gadget.certificate.p1_ok
    assert gadget.certificate.p2_triples == 6
    assert gadget.digraph.arc_count == 6
    tails = {gadget.digraph.arcs[gadget.b_out][0],
             gadget.digraph.arcs[gadget.c_out][0]}
    assert len(tails) == 2  # the two leaving arcs start at distinct vertices


def test_reduction_shapes():
    expected = {"k4": (8, 12), "k33": (12, 18), "prism": (12, 18),
                "petersen": (20, 30), "moebius-kantor": (32, 48)}
    for name, (vertices, arcs) in expected.items():
        n, edges = CUBIC_GRAPHS[name]
        d = np_reduction(n, edges)
        assert (d.vertex_count, d.arc_count) == (vertices, arcs)
        profile = degree_profile(d)
        assert profile.max_indegree <= 2 and profile.max_outdegree <= 2


def test_reduction_tracks_edge_colourability():
    for name in ("k4", "prism"):
        n, edges = CUBIC_GRAPHS[name]
        d = np_reduction(n, edges)
        colourable = edge_colouring_3regular(n, edges) is not None
        assert colourable
        assert exact_dst(d)[0] == 3


def test_reduction_petersen_needs_four():
    n, edges = CUBIC_GRAPHS["petersen"]
    assert edge_colouring_3regular(n, edges) is None
    d = np_reduction(n, edges)
    assert exact_dst(d)[0] == 4


def test_reduction_rejects_non_cubic():
    with pytest.raises(NotCubicError):
        np_reduction(4, [(0, 1), (1, 2), (0, 2), (2, 3)])


def test_triangle_multidigraph():
    t2 = triangle_multidigraph(2)
    assert t2.arc_count == 6
    assert degree_profile(t2).max_indegree == 2
    with pytest.raises(BadParamsError):
        triangle_multidigraph(0)


def test_random_digraph_deterministic():
    assert random_digraph(12, 2, 3, 5) == random_digraph(12, 2, 3, 5)
    assert random_digraph(12, 2, 3, 5) != random_digraph(12, 2, 3, 6)


def test_random_digraph_canary():
    # pinned output guards against accidental generator drift
    assert random_digraph(30, 2, 2, 7).arc_count == 58


def test_random_digraph_caps_attained():
    d = random_digraph(10, 3, 2, 1)
    profile = degree_profile(d)
    assert profile.max_indegree == 3
    assert profile.max_outdegree == 2


def test_random_digraph_zero_cap():
    assert random_digraph(5, 0, 2, 1).arc_count == 0
    assert random_digraph(5, 2, 0, 1).arc_count == 0


def test_random_digraph_cap_too_large():
    with pytest.raises(InfeasibleError):
        random_digraph(3, 3, 1, 0)


@given(st.integers(1, 30), st.integers(0, 999))
def test_random_subcubic_degrees(n, seed):
    d = random_subcubic(n, seed)
    assert degree_profile(d).max_degree <= 3


@given(st.integers(1, 30), st.integers(0, 999))
def test_random_oriented_subcubic_no_digons(n, seed):
    d = random_oriented_subcubic(n, seed)
    assert degree_profile(d).max_degree <= 3
    assert not d.has_digon()


@given(st.integers(1, 30), st.integers(1, 3), st.integers(1, 4),
       st.integers(0, 999))
def test_random_labelled_dag_contract(n, m, k, seed):
    ld = random_labelled_dag(n, m, k, seed)
    assert is_acyclic(Digraph(ld.vertex_count,
                              tuple((t, h) for t, h, _ in ld.arcs),
                              allow_parallel=True))
    assert degree_profile(ld).max_indegree <= k
    assert all(1 <= label <= m for _, _, label in ld.arcs)
