"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line with its measured runtime.  Run
``pytest tests/test_acceptance.py -s`` (or plain ``pytest -v``, the lines
are printed past the capture) to see the summary.
"""

import time
from math import comb

import pytest

import cases
from charvar.algebra import (TRIVIAL, FgAbelianGroup, determinant, diagonal, homology,
                             matmul, smith_normal_form)
from charvar.complex import barycentric_subdivision
from charvar.errors import Obstructed
from charvar.generators import (boundary_of_simplex, random_complex, random_matrix,
                                random_problem, rp2, seeded_rng)
from charvar.invariants import (GROUP, baird_components, codim_bounds, duality_check,
                                pi2_full, pi_k_irr, poincare_su2)
from charvar.polynomial import IntPolynomial
from charvar.pushoff import FAIL, check_hypotheses, pushoff, verify_certificate
from charvar.pushoff.steps import _State

T = IntPolynomial([0, 1])


@pytest.fixture
def report(capsys):
    def emit(n, title, ok, elapsed, limit=None, detail=""):
        timing = f"{elapsed:.3f}s" + (f" (limit {limit}s)" if limit else "")
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {title} [{timing}]"
        if detail:
            line += f" {detail}"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
        if limit is not None:
            assert elapsed < limit, f"criterion {n} took {elapsed:.2f}s"
    return emit


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def test_criterion_01_poincare_golden_values(report):
    def run():
        want = {1: IntPolynomial([1]), 2: IntPolynomial([1]),
                3: 1 + T ** 6, 4: 1 + 4 * T ** 6 + T ** 9}
        return all(poincare_su2(r) == p for r, p in want.items())
    ok, dt = _timed(run)
    report(1, "Poincare polynomials for r = 1..4", ok, dt, 0.1)


def test_criterion_02_rational_vs_series(report):
    def run():
        one_minus_t4 = 1 - T ** 4
        for r in range(1, 201):
            p = poincare_su2(r, "rational")
            if p != poincare_su2(r, "series"):
                return False, f"methods disagree at r={r}"
            q = baird_components(r)["Q"]
            if (p - 1 - T) * one_minus_t4 != T * q:
                return False, f"division identity fails at r={r}"
        return True, "r = 1..200"
    (ok, detail), dt = _timed(run)
    report(2, "rational and series forms agree", ok, dt, 5, detail)


def test_criterion_03_degree_and_b6(report):
    def run():
        for r in range(2, 201):
            p = poincare_su2(r)
            if r >= 3 and (p.degree != 3 * r - 3 or p.leading != 1):
                return False, f"degree law fails at r={r}"
            if p[6] != comb(r, 3):
                return False, f"b_6 != C(r,3) at r={r}"
        return True, "r = 2..200"
    (ok, detail), dt = _timed(run)
    report(3, "degree 3r-3, top coefficient 1, b_6 = C(r,3)", ok, dt, 5, detail)


def test_criterion_04_duality_failure(report):
    def run():
        if not duality_check(3).satisfies_duality:
            return False, "r=3 should satisfy duality"
        for r in range(4, 201):
            rep = duality_check(r)
            if rep.satisfies_duality:
                return False, f"no mismatch at r={r}"
            if r >= 5 and not any(k == 4 and a == 0 for k, a, _ in rep.mismatches):
                return False, f"k=4 with b_4=0 missing at r={r}"
        return True, "r = 3..200"
    (ok, detail), dt = _timed(run)
    report(4, "duality holds only at r = 3", ok, dt, 5, detail)


def test_criterion_05_homotopy_spot_checks(report):
    def run():
        z2 = FgAbelianGroup(0, (2,))
        for r in range(3, 11):
            for fam in ("GL", "SL", "U", "SU"):
                a = pi_k_irr(fam, 2, r, 2)
                if a.kind != GROUP or a.group != z2:
                    return False, f"pi_2 at n=2 r={r} {fam}"
                if r >= 4 and pi_k_irr(fam, 2, r, 4).group != FgAbelianGroup(1, (2,) * r):
                    return False, f"pi_4 at n=2 r={r}"
                for n in range(3, 8):
                    if pi_k_irr(fam, n, r, 3).group != FgAbelianGroup(r):
                        return False, f"pi_3 at n={n} r={r}"
                    if pi_k_irr(fam, n, r, 4).group != FgAbelianGroup(1):
                        return False, f"pi_4 at n={n} r={r}"
        for fam in ("GL", "SL", "U", "SU"):
            for n in range(1, 11):
                for r in range(1, 11):
                    if pi2_full(fam, n, r) != TRIVIAL:
                        return False, f"pi_2 of X_r at {fam} n={n} r={r}"
        return True, ""
    (ok, detail), dt = _timed(run)
    report(5, "homotopy table spot checks and pi_2 = 0", ok, dt, 1, detail)


def test_criterion_06_codimension_specials(report):
    def run():
        return (codim_bounds("GL", 2, 2)["singular"] == 5
                and codim_bounds("SL", 2, 2)["singular"] == 3)
    ok, dt = _timed(run)
    report(6, "singular codimension 5 for GL(2), 3 for SL(2) at r=2", ok, dt)


def test_criterion_07_homology_oracles(report):
    def run():
        Z = FgAbelianGroup(1)
        if homology(boundary_of_simplex(3)) != [Z, TRIVIAL, Z]:
            return False, "boundary of tetrahedron"
        if homology(rp2())[1] != FgAbelianGroup(0, (2,)):
            return False, "projective plane"
        rng = seeded_rng(7)
        for i in range(50):
            X = random_complex(rng, max_vertices=7)
            if homology(barycentric_subdivision(X).refined) != homology(X):
                return False, f"subdivision changed homology of sample {i}"
        return True, "50 random complexes"
    (ok, detail), dt = _timed(run)
    report(7, "homology oracles and subdivision invariance", ok, dt, 10, detail)


def test_criterion_08_snf_laws(report):
    def run():
        rng = seeded_rng(8)
        for i in range(500):
            m = random_matrix(rng, max_size=8, bound=9)
            u, d, v = smith_normal_form(m)
            if matmul(matmul(u, m), v) != d:
                return False, f"U M V != D on sample {i}"
            if abs(determinant(u)) != 1 or abs(determinant(v)) != 1:
                return False, f"non-unimodular transform on sample {i}"
            nz = [x for x in diagonal(d) if x]
            if any(b % a for a, b in zip(nz, nz[1:])):
                return False, f"divisibility chain broken on sample {i}"
        return True, "500 random matrices"
    (ok, detail), dt = _timed(run)
    report(8, "Smith normal form laws", ok, dt, None, detail)


def _check_success(problem, res):
    st = _State(problem)
    h = res.h
    if any(x in st.yv for x in h.images.values()):
        return "h meets Y"
    if any(h.images[v] != st.f0.images[v] for v in st.sprime.vertices):
        return "h differs from f on S'"
    v = verify_certificate(problem.f, h, res.certificate, problem)
    return None if v else f"certificate rejected: {v.reason}"


def test_criterion_09_pushoff_postconditions(report):
    def run():
        suite = [("coned hexagon circle", cases.coned_hexagon_circle()),
                 ("sphere through a vertex of the 4-simplex boundary",
                  cases.sphere_through_vertex())]
        rng = seeded_rng(2024)
        for i in range(100):
            problem, meta = random_problem(rng)
            suite.append((f"random {i} {meta['target']}/{meta['surface']}", problem))
        ok_count, step3_runs = 0, 0
        for name, problem in suite:
            if check_hypotheses(problem.X, problem.Y,
                                surface_dim=problem.S.dim).verdict == FAIL:
                return False, f"{name}: not admissible"
            try:
                res = pushoff(problem, budget=12)
            except Obstructed as exc:
                step3_runs += 1
                if not exc.evidence.get("loop"):
                    return False, f"{name}: obstruction without evidence"
                continue
            if res.stats["step3"]:
                step3_runs += 1
            bad = _check_success(problem, res)
            if bad:
                return False, f"{name}: {bad}"
            ok_count += 1
        rate = ok_count / len(suite)
        return rate >= 0.95, f"{ok_count}/{len(suite)} succeeded ({step3_runs} needed step 3)"
    (ok, detail), dt = _timed(run)
    report(9, "push-off postconditions on the generated suite", ok, dt, 60, detail)


def test_criterion_10_negative_control(report):
    def run():
        from charvar.complex import SimplicialComplex
        from charvar.generators import coned_polygon
        rep = check_hypotheses(coned_polygon(6), SimplicialComplex([("c",)]))
        st = rep.pi2_pi1.get("c")
        return (rep.verdict == FAIL and st is not None and st.status == FAIL
                and st.evidence.get("h1") == "Z"), "punctured star H_1 = Z"
    (ok, detail), dt = _timed(run)
    report(10, "punctured disk rejected", ok, dt, None, detail)
