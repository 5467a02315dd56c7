import json

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

import cases
from charvar.complex import SimplicialComplex, SimplicialMap
from charvar.errors import DensityViolated, Obstructed, ValidationError
from charvar.generators import (boundary_of_simplex, full_simplex, random_problem, seeded_rng,
                                tetra_sphere)
from charvar.pushoff import (AuxDisk, PushoffCertificate, PushoffProblem, SurfaceComplex,
                             pushoff, step1_clear_triangles, step2_clear_bad_edges,
                             step3_clear_vertices, verify_certificate)
from charvar.pushoff.steps import _State, choose_tau_tilde


def _postconditions(problem, res):
    h = res.h
    st0 = _State(problem)
    assert not any(x in st0.yv for x in h.images.values())
    for v in st0.sprime.vertices:
        assert h.images[v] == st0.f0.images[v]
    assert verify_certificate(problem.f, h, res.certificate, problem)


def collapsed_tetrahedron():
    """A tetrahedron boundary with one face crushed onto the vertex v0."""
    X = boundary_of_simplex(4)
    Y = SimplicialComplex([("v0",)])
    K, sp = tetra_sphere()
    img = {"v0": "v0", "v1": "v0", "v2": "v0", "v3": "v1"}
    return PushoffProblem(X, Y, SurfaceComplex(K, sp), SimplicialMap(K, X, img))


@pytest.mark.parametrize("build", [cases.sphere_through_vertex, cases.coned_hexagon_circle,
                                   collapsed_tetrahedron])
def test_pushoff_succeeds_and_verifies(build):
    problem = build()
    res = pushoff(problem)
    _postconditions(problem, res)


def test_stage_invariants_hold_in_sequence():
    problem = collapsed_tetrahedron()
    state = _State(problem)
    assert step1_clear_triangles(state) == 1
    for s in state.tops:
        assert not state.in_y(s)
    step2_clear_bad_edges(state)
    K = state.complex
    bad = [v for v in K.vertices if state.images[v] in state.yv]
    for a in bad:
        assert not set(K.neighbors(a)) & set(bad)
    step3_clear_vertices(state, budget=12)
    assert not any(x in state.yv for x in state.images.values())


def test_choose_tau_tilde_is_the_first_coface_outside_y():
    X = full_simplex(2)
    Y = SimplicialComplex([("v0", "v1")])
    assert choose_tau_tilde(X, Y, ("v0",)) == ("v0", "v2")
    assert choose_tau_tilde(X, Y, ("v0", "v1")) == ("v0", "v1", "v2")
    assert choose_tau_tilde(X, X, ("v0",)) is None


def test_circle_stays_fixed_on_marked_point():
    problem = cases.coned_hexagon_circle()
    res = pushoff(problem)
    assert res.h.images["p0"] == "h0"
    assert res.stats["step3"] == 1


def test_essential_link_is_obstructed_with_evidence():
    problem = cases.suspended_hexagon_over_cone()
    with pytest.raises(Obstructed) as info:
        pushoff(problem, budget=6, node_limit=3000)
    ev = info.value.evidence
    assert info.value.stage == "step3"
    assert ev["punctured_star_h1"] == "Z"
    assert ev["image"] == "c"


def test_density_violation():
    X = full_simplex(2)
    S = SurfaceComplex(*tetra_sphere())
    f = SimplicialMap(S.complex, X, {"v0": "v0", "v1": "v1", "v2": "v2", "v3": "v0"})
    with pytest.raises(DensityViolated):
        pushoff(PushoffProblem(X, X, S, f))


def test_problem_validation():
    X = boundary_of_simplex(4)
    K, _ = tetra_sphere()
    f = SimplicialMap(K, X, {v: v for v in K.vertices})
    with pytest.raises(ValidationError):
        PushoffProblem(X, SimplicialComplex([("zz",)]), SurfaceComplex(K), f)
    with pytest.raises(ValidationError):
        PushoffProblem(X, SimplicialComplex([("v0",)]),
                       SurfaceComplex(K, SimplicialComplex([("v0",)])), f)
    with pytest.raises(ValidationError):
        SurfaceComplex(SimplicialComplex([("a", "b", "c"), ("a", "b", "d"), ("a", "b", "e")]))


def test_aux_disk_shapes():
    D2 = AuxDisk(2, 3).complex
    assert D2.f_vector()[0] == 5 and D2.count(2) == 3
    D3 = AuxDisk(3, 2).complex
    assert D3.dim == 3 and D3.euler_characteristic() == 1


def test_certificate_json_round_trip_still_verifies():
    problem = cases.sphere_through_vertex()
    res = pushoff(problem)
    data = json.loads(json.dumps(res.certificate.to_json()))
    cert = PushoffCertificate.from_json(data)
    assert cert == res.certificate
    assert verify_certificate(problem.f, res.h, cert, problem)


def _tampered(cert, i, edit):
    data = json.loads(json.dumps(cert.to_json()))
    edit(data["moves"][i])
    return PushoffCertificate.from_json(data)


def test_tampered_certificates_are_rejected():
    problem = cases.sphere_through_vertex()
    res = pushoff(problem)
    cert = res.certificate
    last = len(cert.moves) - 1

    def into_y(mv):
        k = next(k for k, _ in mv["new_images"] if k.startswith("c"))
        mv["new_images"] = [[a, "v0" if a == k else b] for a, b in mv["new_images"]]

    def wrong_stage(mv):
        mv["justification"] = "cone-target"

    def drop_triangle(mv):
        mv["added"] = mv["added"][1:]

    for edit in (into_y, wrong_stage, drop_triangle):
        v = verify_certificate(problem.f, res.h, _tampered(cert, last, edit), problem)
        assert not v and v.reason
    short = PushoffCertificate(cert.moves[:-1])
    assert not verify_certificate(problem.f, res.h, short, problem)


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 10 ** 6))
def test_random_admissible_problems(seed):
    problem, meta = random_problem(seeded_rng(seed))
    try:
        res = pushoff(problem, budget=12)
    except Obstructed as exc:
        assert exc.evidence["loop"]
        return
    _postconditions(problem, res)


def test_points_only_need_the_first_stage():
    X = boundary_of_simplex(4)
    K = SimplicialComplex([("a",), ("b",)])
    f = SimplicialMap(K, X, {"a": "v0", "b": "v1"})
    problem = PushoffProblem(X, SimplicialComplex([("v0",)]), SurfaceComplex(K), f)
    res = pushoff(problem)
    assert res.stats == {"step1": 1, "step2": 0, "step3": 0}
    assert res.h("a") == "<v0,v1>"
    _postconditions(problem, res)
