import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dualframes.errors import (
    DimensionMismatch, NotADual, NotAFrame, NotEquivalent, ParseError, RankZero)
from dualframes.frame import (
    canonical_dual, find_unitary_intertwiner, format_frame_csv, frame_from_graph,
    frame_from_vectors, frame_operator, gramian, is_tight, load_frame, make_frame,
    parseval_normalize, read_frame_csv, verify_dual)
from dualframes.graph import (
    Graph, complete_graph, cycle_graph, laplacian, parse_edge_list, path_graph, star_graph)

from corpus import (
    P3_LAPLACIAN, P3_VECTORS, P3_VECTORS_SIGNLESS, R2, random_dual_synthesis, random_rotation,
    random_synthesis)


@pytest.fixture
def p3():
    return frame_from_vectors(P3_VECTORS)


def test_make_frame_basis():
    f = make_frame(np.eye(2))
    assert (f.lower, f.upper) == (1.0, 1.0)
    assert f.dim == 2 and f.count == 2


def test_make_frame_rejects_rank_deficient():
    with pytest.raises(NotAFrame):
        make_frame([[1.0, 1.0], [0.0, 0.0]])
    with pytest.raises(NotAFrame):
        make_frame(np.eye(3)[:, :2])


def test_synthesis_is_read_only(p3):
    with pytest.raises(ValueError):
        p3.synthesis[0, 0] = 5.0


def test_p3_frame_operator_and_gramian(p3):
    np.testing.assert_allclose(frame_operator(p3), np.diag([1.0, 3.0]), atol=1e-15)
    np.testing.assert_allclose(gramian(p3), P3_LAPLACIAN, atol=1e-15)
    assert (p3.lower, p3.upper) == pytest.approx((1.0, 3.0), abs=1e-14)


def test_p3_canonical_dual(p3):
    pair = canonical_dual(p3)
    g = pair.g.vectors
    np.testing.assert_allclose(g[0], [R2, R2 / 3], atol=1e-15)
    np.testing.assert_allclose(g[1], [0, -np.sqrt(2) / 3], atol=1e-15)
    np.testing.assert_allclose(g[2], [-R2, R2 / 3], atol=1e-15)
    assert np.trace(pair.cross_gramian) == pytest.approx(2, abs=1e-12)


def test_signless_p3_vectors():
    f = frame_from_vectors(P3_VECTORS_SIGNLESS)
    # signless Laplacian; the canonical dual of the middle vector flips sign
    np.testing.assert_allclose(gramian(f), [[1, 1, 0], [1, 2, 1], [0, 1, 1]], atol=1e-15)
    np.testing.assert_allclose(canonical_dual(f).g.vectors[1], [0, np.sqrt(2) / 3], atol=1e-15)


def test_parseval_normalize(p3):
    q = parseval_normalize(p3)
    np.testing.assert_allclose(frame_operator(q), np.eye(2), atol=1e-12)
    np.testing.assert_allclose(q.synthesis, np.diag([1, 1 / np.sqrt(3)]) @ p3.synthesis,
                               atol=1e-12)
    again = parseval_normalize(q)
    np.testing.assert_allclose(again.synthesis, q.synthesis, atol=1e-10)
    k3 = parseval_normalize(frame_from_graph(complete_graph(3)))
    np.testing.assert_allclose(np.sum(k3.synthesis**2, axis=0), 2 / 3, atol=1e-12)


def test_parseval_canonical_dual_is_itself():
    f = parseval_normalize(make_frame(random_synthesis(np.random.default_rng(1), 3, 5)))
    np.testing.assert_allclose(canonical_dual(f).g.synthesis, f.synthesis, atol=1e-10)


def test_verify_dual_rejects_non_dual(p3):
    with pytest.raises(NotADual) as info:
        verify_dual(p3, p3)
    assert "||Theta_G* Theta_F - I||_F" in str(info.value)
    assert info.value.residual > 1


def test_verify_dual_dimension_mismatch(p3):
    with pytest.raises(DimensionMismatch):
        verify_dual(p3, make_frame(np.eye(2)))


def test_cross_gramian_trace_random():
    rng = np.random.default_rng(2)
    for _ in range(50):
        n = int(rng.integers(1, 6))
        N = n + int(rng.integers(0, 5))
        f = random_synthesis(rng, n, N)
        pair = verify_dual(make_frame(f), make_frame(random_dual_synthesis(rng, f)))
        a = pair.cross_gramian
        assert np.trace(a) == pytest.approx(n, abs=1e-8)
        np.testing.assert_allclose(a @ a, a, atol=1e-8)


@pytest.mark.parametrize("g", [
    path_graph(3), path_graph(6), cycle_graph(5), complete_graph(4), star_graph(5),
    parse_edge_list("4\n1 2\n3 4"), parse_edge_list("5\n1 2\n2 3\n4 5")])
def test_frame_from_graph_gramian_is_laplacian(g):
    f = frame_from_graph(g)
    np.testing.assert_allclose(gramian(f), laplacian(g), atol=1e-8)
    assert f.dim == np.linalg.matrix_rank(laplacian(g))


def test_frame_from_graph_k3_is_tight():
    f = frame_from_graph(complete_graph(3))
    np.testing.assert_allclose(frame_operator(f), 3 * np.eye(2), atol=1e-12)
    assert is_tight(f) == pytest.approx(3, abs=1e-12)


def test_frame_from_graph_disjoint_edges():
    f = frame_from_graph(parse_edge_list("4\n1 2\n3 4"))
    assert f.dim == 2
    gm = gramian(f)
    assert np.allclose(gm[:2, 2:], 0, atol=1e-12)


def test_frame_from_graph_edgeless():
    with pytest.raises(RankZero):
        frame_from_graph(Graph.from_edges(3, []))


def test_is_tight(p3):
    assert is_tight(p3) is None
    assert is_tight(make_frame(np.eye(3))) == 1.0


def test_graph_frames_unitarily_equivalent(p3):
    u = find_unitary_intertwiner(frame_from_graph(path_graph(3)), p3)
    np.testing.assert_allclose(u.T @ u, np.eye(2), atol=1e-10)


def test_intertwiner_recovers_rotation():
    rng = np.random.default_rng(4)
    for n, N in [(2, 3), (3, 5), (4, 4)]:
        f = make_frame(random_synthesis(rng, n, N))
        r = random_rotation(rng, n)
        u = find_unitary_intertwiner(f, f.transformed(r))
        assert np.linalg.norm(u - r) < 1e-8
    f = make_frame(random_synthesis(rng, 2, 4))
    np.testing.assert_allclose(find_unitary_intertwiner(f, f), np.eye(2), atol=1e-10)


def test_intertwiner_rejects_different_gramians(p3):
    with pytest.raises(NotEquivalent):
        find_unitary_intertwiner(p3, frame_from_graph(complete_graph(3)))


def test_csv_round_trip(p3):
    text = format_frame_csv(p3, "P3 frame\nrow i = f_i")
    assert text.startswith("# P3 frame\n# row i = f_i\n")
    back = load_frame(text)
    assert np.array_equal(back.synthesis, p3.synthesis)


@pytest.mark.parametrize("text, line", [
    ("1,2\n3,x\n", 2), ("1,2\n3\n", 2), ("1,nan\n", 1)])
def test_csv_errors(text, line):
    with pytest.raises(ParseError) as info:
        read_frame_csv(text)
    assert f"line {line}" in str(info.value)


def test_csv_empty():
    with pytest.raises(ParseError):
        read_frame_csv("# only a comment\n")


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4), st.integers(0, 4), st.integers(0, 2**32 - 1))
def test_canonical_dual_reconstructs(n, extra, seed):
    rng = np.random.default_rng(seed)
    f = make_frame(random_synthesis(rng, n, n + extra))
    pair = canonical_dual(f)
    assert pair.residual <= 1e-8
    np.testing.assert_allclose(pair.g.synthesis @ f.synthesis.T, np.eye(n), atol=1e-8)
