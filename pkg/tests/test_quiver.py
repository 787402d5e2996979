import pytest

from foldkit.quiver import (
    QuiverError,
    QuiverParseError,
    orbits,
    parse_quiver,
    validate_admissible,
)

from conftest import CYCLE4_ROTATION


def test_smallest_graph():
    q = parse_quiver("vertex a b\nedge e a b\n")
    assert q.graph.n_half == 2
    assert q.automorphism is None
    g = q.graph
    for h in g.halves():
        assert g.in_[g.bar(h)] == g.out_[h]
        assert g.out_[g.bar(h)] == g.in_[h]
        assert g.bar(g.bar(h)) == h


def test_a3_flip_parses(a3_flip):
    a = a3_flip.automorphism
    assert a is not None and a.order == 2
    assert validate_admissible(a3_flip) == []
    assert not a.is_trivial


def test_loop_rejected():
    with pytest.raises(QuiverParseError):
        parse_quiver("vertex 1\nedge e1 1 1\n")


def test_dangling_endpoint_rejected():
    with pytest.raises(QuiverParseError):
        parse_quiver("vertex 1 2\nedge e1 1 9\n")


def test_unknown_keyword_rejected():
    with pytest.raises(QuiverParseError) as exc:
        parse_quiver("vertox 1\n")
    assert exc.value.line == 1


def test_duplicate_ids_rejected():
    with pytest.raises(QuiverParseError):
        parse_quiver("vertex 1 1\n")
    with pytest.raises(QuiverParseError):
        parse_quiver("vertex 1 2\nedge e 1 2\nedge e 2 1\n")


def test_aut_not_a_graph_automorphism():
    # (1 2) flips the single edge's ends onto a missing edge pattern
    with pytest.raises(QuiverParseError):
        parse_quiver("vertex 1 2 3\nedge e1 1 2\naut (2 3)\n")


def test_identity_automorphism_is_trivial():
    q = parse_quiver("vertex 1 2\nedge e1 1 2\naut (1)\n")
    assert validate_admissible(q) == []
    assert q.automorphism.is_trivial


def test_edge_inside_orbit_is_a_violation():
    q = parse_quiver("vertex 1 2\nedge e1 1 2\naut (1 2)\nautedge e1->e1\n")
    violations = validate_admissible(q)
    assert any(v.axiom == "edge-inside-orbit" for v in violations)


def test_orbits_identity():
    q = parse_quiver("vertex 1 2\nedge e1 1 2\naut (1)\n")
    vorbs, horbs = orbits(q.automorphism, q.graph)
    assert vorbs == ((0,), (1,))
    assert horbs == ((0,), (1,))


def test_orbits_a3(a3_flip):
    vorbs, _ = orbits(a3_flip.automorphism, a3_flip.graph)
    assert vorbs == ((0, 2), (1,))


def test_orbits_d4(d4_triality):
    vorbs, _ = orbits(d4_triality.automorphism, d4_triality.graph)
    assert vorbs == ((0,), (1, 2, 3))


def test_compatible_orientation_is_stable(a3_flip, d4_triality, cycle4_rotation):
    for q in (a3_flip, d4_triality, cycle4_rotation):
        a = q.automorphism
        om = q.orientation.halves
        assert {a.hperm[h] for h in om} == om
        assert q.orientation_compatible
        g = q.graph
        assert om | {g.bar(h) for h in om} == set(g.halves())
        assert not (om & {g.bar(h) for h in om})


def test_a3_least_index_orientation(a3_flip):
    # the first pick is the declared direction 1->2; closing gives 3->2
    g = a3_flip.graph
    om = a3_flip.orientation.halves
    labels = {g.half_name(h) for h in om}
    assert labels == {"e1", "e2~"}


def test_declared_orientation_respected():
    q = parse_quiver("vertex 1 2\nedge e1 1 2\norient e1 2 1\n")
    g = q.graph
    assert {g.half_name(h) for h in q.orientation.halves} == {"e1~"}


def test_incompatible_declared_orientation_detected():
    text = ("vertex 1 2 3\nedge e1 1 2\nedge e2 2 3\naut (1 3)\n"
            "orient e1 1 2\norient e2 2 3\n")
    q = parse_quiver(text)
    assert not q.orientation_compatible


def test_conflicting_orient_lines_rejected():
    with pytest.raises(QuiverError):
        parse_quiver("vertex 1 2\nedge e1 1 2\norient e1 1 2\norient e1 2 1\n")


def test_multi_edge_needs_autedge():
    text = "vertex 1 2\nedge e1 1 2\nedge e2 1 2\naut (1)\n"
    with pytest.raises(QuiverParseError):
        parse_quiver(text)
    ok = parse_quiver(text.rstrip() + "\nautedge e1->e2\nautedge e2->e1\n")
    assert validate_admissible(ok) == []
    assert ok.automorphism.order == 2


def test_parse_determinism():
    q1 = parse_quiver(CYCLE4_ROTATION)
    q2 = parse_quiver(CYCLE4_ROTATION)
    assert q1.graph.vertices == q2.graph.vertices
    assert q1.orientation == q2.orientation
    assert q1.automorphism == q2.automorphism
    assert orbits(q1.automorphism, q1.graph) == orbits(q2.automorphism, q2.graph)


def test_rotation_orientation_stable_on_cycle(cycle4_rotation):
    a = cycle4_rotation.automorphism
    om = cycle4_rotation.orientation.halves
    assert {a.hperm[h] for h in om} == om
    assert a.order == 2


def test_affine_node_parsed(cycle4_rotation):
    assert cycle4_rotation.affine_node == 0
    with pytest.raises(QuiverParseError):
        parse_quiver("vertex 1\naffine_node 9\n")
