"""Catalog complexes and seeded random inputs for tests and the CLI."""

import random
from functools import lru_cache
from itertools import combinations, product

from .complex import SimplicialComplex, SimplicialMap, span
from .errors import ValidationError


def _names(n, prefix="v"):
    return [f"{prefix}{i}" for i in range(n)]


# -- target complexes ---------------------------------------------------

def full_simplex(n):
    return SimplicialComplex([_names(n + 1)])


def boundary_of_simplex(n):
    """The boundary of the n-simplex, a triangulated (n-1)-sphere."""
    return SimplicialComplex(combinations(_names(n + 1), n))


def cross_polytope_boundary(d):
    """Boundary of the d-dimensional cross-polytope (a (d-1)-sphere)."""
    pairs = [(f"p{i}", f"m{i}") for i in range(d)]
    return SimplicialComplex(product(*pairs))


def coned_polygon(k, apex="c"):
    """A disk: the cone on a k-cycle."""
    return SimplicialComplex((apex, f"h{i}", f"h{(i + 1) % k}") for i in range(k))


def rp2():
    """Minimal 6-vertex triangulation of the real projective plane."""
    tris = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2),
            (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4)]
    return SimplicialComplex([[f"v{i}" for i in t] for t in tris])


# -- surfaces (complex, s_prime) ----------------------------------------

def tetra_sphere():
    return boundary_of_simplex(3), SimplicialComplex()


def octahedron():
    return cross_polytope_boundary(3), SimplicialComplex()


def suspension_of_cycle(k):
    tris = [(p, f"e{i}", f"e{(i + 1) % k}") for p in ("N", "S") for i in range(k)]
    return SimplicialComplex(tris), SimplicialComplex()


def hexagon_disk():
    D = SimplicialComplex(("o", f"r{i}", f"r{(i + 1) % 6}") for i in range(6))
    return D, SimplicialComplex((f"r{i}", f"r{(i + 1) % 6}") for i in range(6))


def annulus(k=6):
    tris = []
    for i in range(k):
        j = (i + 1) % k
        tris += [(f"a{i}", f"a{j}", f"b{i}"), (f"a{j}", f"b{i}", f"b{j}")]
    A = SimplicialComplex(tris)
    bd = [(f"a{i}", f"a{(i + 1) % k}") for i in range(k)] + \
         [(f"b{i}", f"b{(i + 1) % k}") for i in range(k)]
    return A, SimplicialComplex(bd)


def torus7():
    """The 7-vertex torus."""
    tris = []
    for i in range(7):
        tris += [(i, (i + 1) % 7, (i + 3) % 7), (i, (i + 2) % 7, (i + 3) % 7)]
    return SimplicialComplex([[f"t{v}" for v in t] for t in tris]), SimplicialComplex()


def circle(k=6, marked=True):
    C = SimplicialComplex((f"q{i}", f"q{(i + 1) % k}") for i in range(k))
    return C, SimplicialComplex([("q0",)] if marked else [])


TARGETS = {
    "boundary-4-simplex": lambda: boundary_of_simplex(4),
    "4-simplex": lambda: full_simplex(4),
    "boundary-5-simplex": lambda: boundary_of_simplex(5),
    "cross-polytope-4": lambda: cross_polytope_boundary(4),
}

SURFACES = {
    "tetra-sphere": tetra_sphere,
    "octahedron": octahedron,
    "hexagon-disk": hexagon_disk,
    "annulus": annulus,
    "torus": torus7,
    "circle": circle,
}


# -- random data --------------------------------------------------------

def random_complex(rng, max_vertices=7, max_dim=3, n_max=6):
    """Face closure of a few random simplices on at most ``max_vertices``."""
    n = rng.randint(1, max_vertices)
    vs = _names(n)
    tops = []
    for _ in range(rng.randint(1, n_max)):
        k = rng.randint(1, min(n, max_dim + 1))
        tops.append(rng.sample(vs, k))
    return SimplicialComplex(tops)


def random_matrix(rng, max_size=8, bound=9):
    r, c = rng.randint(1, max_size), rng.randint(1, max_size)
    return [[rng.randint(-bound, bound) for _ in range(c)] for _ in range(r)]


def y_candidates(X):
    """Small subcomplexes to try as Y: a vertex, two vertices, an edge, a triangle."""
    vs = X.vertices
    out = [SimplicialComplex([(vs[0],)])]
    if len(vs) > 2:
        out.append(SimplicialComplex([(vs[0],), (vs[2],)]))
    for k in (1, 2):
        if X.count(k):
            out.append(SimplicialComplex([X.of_dim(k)[0]]))
    return out


@lru_cache(maxsize=None)
def admissible_pairs(depth=0):
    """(target name, X, Y) triples from the catalog whose hypotheses check OK."""
    from .pushoff import check_hypotheses
    out = []
    for name in sorted(TARGETS):
        X = TARGETS[name]()
        for Y in y_candidates(X):
            if check_hypotheses(X, Y, depth).ok:
                out.append((name, X, Y))
    return tuple(out)


def random_map(rng, S, X, avoid, sprime_vertices, bias=0.5, tries=200):
    """Random simplicial map S -> X keeping ``sprime_vertices`` off ``avoid``.

    Vertices of ``avoid`` are preferred with probability ``bias`` so the map
    actually meets Y.  Raises ValidationError if no map is found.
    """
    order = []
    seen = set()
    for comp in S.components():
        stack = [comp[0]]
        while stack:
            v = stack.pop(0)
            if v in seen:
                continue
            seen.add(v)
            order.append(v)
            stack.extend(S.neighbors(v))
    tops = S.maximal
    xs = list(X.vertices)
    hit = [v for v in xs if v in avoid]
    for _ in range(tries):
        img = {}
        if _extend(rng, order, 0, img, tops, X, xs, hit, avoid, sprime_vertices, bias, [0]):
            return SimplicialMap(S, X, img)
    raise ValidationError("no simplicial map found")


def _extend(rng, order, i, img, tops, X, xs, hit, avoid, sp, bias, budget):
    if i == len(order):
        return True
    budget[0] += 1
    if budget[0] > 2000:
        return False
    v = order[i]
    cands = xs[:]
    rng.shuffle(cands)
    if hit and rng.random() < bias:
        cands.sort(key=lambda x: x not in avoid)
    for x in cands:
        if v in sp and x in avoid:
            continue
        img[v] = x
        if all(span(img[u] for u in t if u in img) in X.simplices
               for t in tops if v in t):
            if _extend(rng, order, i + 1, img, tops, X, xs, hit, avoid, sp, bias, budget):
                return True
        del img[v]
    return False


def random_problem(rng, surfaces=None, depth=0):
    """A random push-off problem on an admissible catalog pair."""
    from .pushoff import PushoffProblem, SurfaceComplex
    name, X, Y = rng.choice(admissible_pairs(depth))
    sname = rng.choice(sorted(surfaces or SURFACES))
    K, sp = SURFACES[sname]()
    S = SurfaceComplex(K, sp)
    f = random_map(rng, K, X, set(Y.vertices), set(sp.vertices))
    return PushoffProblem(X, Y, S, f), {"target": name, "surface": sname}


def seeded_rng(seed):
    return random.Random(seed)
