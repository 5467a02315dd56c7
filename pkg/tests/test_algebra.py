import pytest
from hypothesis import given, settings, strategies as st

from charvar.algebra import (FgAbelianGroup, GroupPresentation, TRIVIAL, betti_numbers,
                             cokernel, determinant, diagonal, homology, killed_generators,
                             matmul, pi1_presentation, smith_normal_form)
from charvar.complex import SimplicialComplex, barycentric_subdivision
from charvar.errors import NotConnected, NotFound, ValidationError
from charvar.generators import (boundary_of_simplex, coned_polygon, full_simplex,
                                random_complex, random_matrix, rp2, seeded_rng, torus7)

Z = FgAbelianGroup(1)


def test_snf_textbook_example():
    m = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    u, d, v = smith_normal_form(m)
    assert diagonal(d) == [2, 6, 12]
    assert matmul(matmul(u, m), v) == d


def test_snf_zero_and_rectangular():
    u, d, v = smith_normal_form([[0, 0], [0, 0], [0, 0]])
    assert diagonal(d) == [0, 0]
    u, d, v = smith_normal_form([[4, 6]])
    assert diagonal(d) == [2]


def test_determinant():
    assert determinant([[1, 2], [3, 4]]) == -2
    assert determinant([[2, 0, 0], [0, 3, 0], [0, 0, 5]]) == 30


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_snf_laws(seed):
    m = random_matrix(seeded_rng(seed))
    u, d, v = smith_normal_form(m)
    assert matmul(matmul(u, m), v) == d
    assert abs(determinant(u)) == 1 and abs(determinant(v)) == 1
    diag = diagonal(d)
    for i, row in enumerate(d):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz)
    assert diag[:len(nz)] == nz  # zeros come last
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


def test_group_normal_form():
    assert FgAbelianGroup.from_orders(0, [2, 3]) == FgAbelianGroup(0, (6,))
    assert FgAbelianGroup.from_orders(1, [4, 6]) == FgAbelianGroup(1, (2, 12))
    assert FgAbelianGroup.from_orders(0, [0, 1]) == Z
    assert str(FgAbelianGroup(1, (2, 2, 2, 2))) == "Z + (Z/2)^4"
    assert str(TRIVIAL) == "0"
    with pytest.raises(ValidationError):
        FgAbelianGroup(0, (4, 6))
    g = FgAbelianGroup(2, (3, 3))
    assert FgAbelianGroup.from_json(g.to_json()) == g


def test_cokernel():
    assert cokernel([[2, 0], [0, 3]], 2) == FgAbelianGroup(0, (6,))
    assert cokernel([], 2) == FgAbelianGroup(2)


@pytest.mark.parametrize("K, expected", [
    (boundary_of_simplex(3), [Z, TRIVIAL, Z]),
    (full_simplex(3), [Z, TRIVIAL, TRIVIAL, TRIVIAL]),
    (torus7()[0], [Z, FgAbelianGroup(2), Z]),
    (rp2(), [Z, FgAbelianGroup(0, (2,)), TRIVIAL]),
    (SimplicialComplex([("a", "b"), ("b", "c"), ("a", "c")]), [Z, Z]),
    (SimplicialComplex([("a",), ("b",)]), [FgAbelianGroup(2)]),
])
def test_homology_oracles(K, expected):
    assert homology(K) == expected


def test_betti_numbers_of_a_wedge_of_circles():
    K = SimplicialComplex([("o", "a"), ("a", "b"), ("b", "o"), ("o", "c"), ("c", "d"), ("d", "o")])
    assert betti_numbers(K) == [1, 2]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_homology_is_subdivision_invariant(seed):
    X = random_complex(seeded_rng(seed))
    assert homology(barycentric_subdivision(X).refined) == homology(X)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_euler_characteristic_from_betti(seed):
    X = random_complex(seeded_rng(seed))
    assert sum((-1) ** k * b for k, b in enumerate(betti_numbers(X))) == X.euler_characteristic()


@pytest.mark.parametrize("K, ab", [
    (boundary_of_simplex(3), TRIVIAL),
    (torus7()[0], FgAbelianGroup(2)),
    (rp2(), FgAbelianGroup(0, (2,))),
    (coned_polygon(5), TRIVIAL),
])
def test_pi1_abelianization_matches_h1(K, ab):
    pres = pi1_presentation(K)
    assert pres.abelianization() == ab == homology(K)[1]


def test_pi1_of_a_disk_is_killed_by_one_letter_relators():
    pres = pi1_presentation(coned_polygon(6))
    assert sorted(killed_generators(pres)) == list(range(len(pres.generators)))


def test_pi1_generator_loops_are_closed_edge_paths():
    K = torus7()[0]
    grp = pi1_presentation(K, "t0", full=True)
    for g in range(len(grp.presentation.generators)):
        loop = grp.generator_loop(g)
        assert loop[0] == "t0"
        for a, b in zip(loop, loop[1:] + loop[:1]):
            assert (a, b) in K.simplices or (b, a) in K.simplices


def test_pi1_errors():
    with pytest.raises(NotConnected):
        pi1_presentation(SimplicialComplex([("a",), ("b",)]))
    with pytest.raises(NotFound):
        pi1_presentation(boundary_of_simplex(2), "zz")
    with pytest.raises(ValidationError):
        GroupPresentation((("a", "b"),), (((3, 1),),))
