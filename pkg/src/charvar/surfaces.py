"""Combinatorial checks for triangulated manifolds of dimension <= 2."""

from collections import Counter
from itertools import combinations

from .complex import SimplicialComplex, simplex, skey, vkey
from .errors import ValidationError


def _ridges(top):
    """Codimension-one faces of a list of top simplices, with multiplicity."""
    c = Counter()
    for s in top:
        for r in combinations(s, len(s) - 1):
            c[r] += 1
    return c


def _is_path_or_cycle(L):
    """Vertex links of a 2-manifold must be a path or a cycle."""
    if L.dim != 1 or len(L.components()) != 1:
        return False
    degs = [len(L.neighbors(v)) for v in L.vertices]
    if any(d > 2 for d in degs):
        return False
    return degs.count(1) in (0, 2)


def check_manifold(K):
    """Raise ValidationError unless K is a compact PL manifold of dim <= 2.

    Returns the boundary as a subcomplex.
    """
    d = K.dim
    if d < 0:
        return SimplicialComplex()
    top = K.of_dim(d)
    if any(s not in top for s in K.maximal):
        raise ValidationError("a surface must be pure")
    if d == 0:
        return SimplicialComplex()
    ridges = _ridges(top)
    bad = [r for r, n in ridges.items() if n > 2]
    if bad:
        raise ValidationError(f"face {sorted(bad, key=skey)[0]!r} lies in more than two top simplices")
    if d == 2:
        for v in K.vertices:
            if not _is_path_or_cycle(K.link((v,))):
                raise ValidationError(f"link of vertex {v!r} is not a path or a cycle")
    return SimplicialComplex(r for r, n in ridges.items() if n == 1)


def check_manifold_near(tops, vertices):
    """Local version of :func:`check_manifold` for the given vertices.

    ``tops`` are the top simplices of the whole complex; only ridges and
    vertex links touching ``vertices`` are examined.
    """
    vs = set(vertices)
    near = [t for t in tops if vs.intersection(t)]
    K = SimplicialComplex(near)
    d = K.dim
    bad = [r for r, n in _ridges(near).items() if n > 2 and vs.intersection(r)]
    if bad:
        raise ValidationError(f"face {sorted(bad, key=skey)[0]!r} lies in more than two top simplices")
    if d == 2:
        for v in sorted(vs, key=vkey):
            if not _is_path_or_cycle(K.link((v,))):
                raise ValidationError(f"link of vertex {v!r} is not a path or a cycle")


def link_cycle(K, v):
    """Cyclically ordered link of an interior vertex of a surface (or the
    two neighbours of an interior vertex of a 1-manifold)."""
    L = K.link((v,))
    if L.dim == 0:
        return list(L.vertices)
    start = L.vertices[0]
    cyc, prev = [start], None
    while True:
        nbrs = [w for w in L.neighbors(cyc[-1]) if w != prev]
        if len(L.neighbors(cyc[-1])) != 2:
            raise ValidationError(f"vertex {v!r} is not an interior vertex")
        nxt = nbrs[0]
        if nxt == start:
            break
        prev = cyc[-1]
        cyc.append(nxt)
    return cyc


def region_boundary(top):
    """Boundary (ridges of multiplicity one) of a set of top simplices."""
    return {r for r, n in _ridges(top).items() if n == 1}


def boundary_cycle_of(top):
    """Boundary cycle of a triangulated disk given by its triangles.

    Raises ValidationError when the triangles do not form a disk.
    """
    top = [simplex(t) for t in top]
    K = SimplicialComplex(top)
    if K.dim != 2 or len(top) != K.count(2):
        raise ValidationError("not a set of distinct triangles")
    bd = check_manifold(K)
    if K.euler_characteristic() != 1 or len(K.components()) != 1:
        raise ValidationError("region is not a disk")
    if len(bd.components()) != 1:
        raise ValidationError("region boundary is not connected")
    start = bd.vertices[0]
    cyc, prev = [start], None
    while True:
        nxt = [w for w in bd.neighbors(cyc[-1]) if w != prev][0]
        if nxt == start:
            return cyc
        prev = cyc[-1]
        cyc.append(nxt)


def same_cycle(a, b):
    """Equality of cyclic sequences up to rotation and reversal."""
    a, b = list(a), list(b)
    if len(a) != len(b):
        return False
    if not a:
        return True
    n = len(a)
    for seq in (b, b[::-1]):
        for r in range(n):
            if all(a[i] == seq[(i + r) % n] for i in range(n)):
                return True
    return False


def path_endpoints(edges):
    """Endpoints of a simple path given by its edges; raises otherwise."""
    K = SimplicialComplex(edges)
    if K.dim != 1 or len(K.components()) != 1:
        raise ValidationError("region is not a path")
    degs = {v: len(K.neighbors(v)) for v in K.vertices}
    ends = sorted((v for v, n in degs.items() if n == 1), key=vkey)
    if len(ends) != 2 or any(n > 2 for n in degs.values()):
        raise ValidationError("region is not a simple path")
    return ends
