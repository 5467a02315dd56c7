"""Finite abstract simplicial complexes, simplicial maps and subdivisions.

Simplices are plain tuples of vertex ids sorted by :func:`vkey`.  Vertex ids
are strings or integers; integers sort before strings so that mixed
complexes still have a total order.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import FullnessRequired, NotFound, ValidationError


def vkey(v):
    t = type(v)
    if t is str:
        return (1, v)
    if t is int:
        return (0, v)
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise ValidationError(f"vertex id must be str or int, got {v!r}")
    return (0, int(v)) if isinstance(v, int) else (1, str(v))


def skey(s):
    """Canonical order on simplices: by dimension, then lexicographic."""
    return (len(s), tuple(vkey(v) for v in s))


def simplex(vertices):
    """Return the canonical tuple for a vertex collection.

    Raises ValidationError on an empty collection or a repeated vertex.
    """
    vs = list(vertices)
    if not vs:
        raise ValidationError("a simplex needs at least one vertex")
    s = tuple(sorted(vs, key=vkey))
    for a, b in zip(s, s[1:]):
        if a == b:
            raise ValidationError(f"duplicate vertex {a!r} in simplex {vs!r}")
    return s


def span(vertices):
    """Canonical simplex on the *set* of the given vertices (repeats allowed)."""
    return tuple(sorted(set(vertices), key=vkey))


def faces(s):
    """All non-empty faces of ``s`` (including ``s`` itself)."""
    for k in range(1, len(s) + 1):
        yield from combinations(s, k)


def bary_name(s):
    """Name of the barycenter of ``s`` as a vertex of the subdivision.

    A vertex is its own barycenter, which keeps subcomplexes recognizable
    after subdividing.
    """
    if len(s) == 1:
        return s[0]
    return "<" + ",".join(str(v) for v in s) + ">"


class SimplicialComplex:
    """An immutable finite simplicial complex, stored face-closed.

    Construct from any iterable of vertex collections; the face closure is
    taken eagerly.  The empty complex is allowed (dim == -1).
    """

    __slots__ = ("_simplices", "_maximal", "_vertices", "_by_dim",
                 "_vstar", "_hash")

    def __init__(self, simplices=()):
        closed = set()
        for s in simplices:
            s = simplex(s)
            if s in closed:
                continue
            closed.update(faces(s))
        self._simplices = frozenset(closed)
        by_dim = {}
        for s in closed:
            by_dim.setdefault(len(s) - 1, []).append(s)
        for k in by_dim:
            by_dim[k].sort(key=skey)
        self._by_dim = by_dim
        self._vertices = tuple(s[0] for s in by_dim.get(0, []))
        self._maximal = None
        self._vstar = None
        self._hash = None

    # -- basic queries -------------------------------------------------
    @property
    def simplices(self):
        return self._simplices

    @property
    def vertices(self):
        return self._vertices

    @property
    def dim(self):
        return max(self._by_dim, default=-1)

    @property
    def maximal(self):
        if self._maximal is None:
            vstar = self._vertex_index()
            mx = []
            for s in self._simplices:
                n = len(s)
                if not any(len(t) > n and set(s) <= set(t)
                           for t in vstar[s[0]]):
                    mx.append(s)
            self._maximal = tuple(sorted(mx, key=skey))
        return self._maximal

    def of_dim(self, k):
        return list(self._by_dim.get(k, []))

    def count(self, k):
        return len(self._by_dim.get(k, []))

    def f_vector(self):
        return [self.count(k) for k in range(self.dim + 1)]

    def euler_characteristic(self):
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def __contains__(self, s):
        try:
            return simplex(s) in self._simplices
        except ValidationError:
            return False

    def __iter__(self):
        for k in sorted(self._by_dim):
            yield from self._by_dim[k]

    def __len__(self):
        return len(self._simplices)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._simplices == other._simplices

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._simplices)
        return self._hash

    def __repr__(self):
        return f"SimplicialComplex(dim={self.dim}, f={self.f_vector()})"

    # -- local structure -----------------------------------------------
    def _vertex_index(self):
        if self._vstar is None:
            idx = {v: [] for v in self._vertices}
            for s in self._simplices:
                for v in s:
                    idx[v].append(s)
            self._vstar = idx
        return self._vstar

    def cofaces(self, s):
        """Simplices of the complex containing ``s``, in canonical order."""
        s = simplex(s)
        if s not in self._simplices:
            raise NotFound(f"simplex {s!r} not in complex")
        ss = set(s)
        out = [t for t in self._vertex_index()[s[0]] if ss <= set(t)]
        out.sort(key=skey)
        return out

    def closed_star(self, s):
        return SimplicialComplex(self.cofaces(s))

    def link(self, s):
        s = simplex(s)
        ss = set(s)
        out = [tuple(v for v in t if v not in ss) for t in self.cofaces(s)
               if len(t) > len(s)]
        return SimplicialComplex(out)

    def neighbors(self, v):
        """Vertices joined to ``v`` by an edge, sorted."""
        out = {w for t in self._vertex_index()[v] if len(t) == 2 for w in t}
        out.discard(v)
        return sorted(out, key=vkey)

    def skeleton(self, k):
        return SimplicialComplex(s for s in self._simplices if len(s) <= k + 1)

    def full_subcomplex(self, vertices):
        vs = set(vertices)
        return SimplicialComplex(s for s in self._simplices if vs.issuperset(s))

    def subcomplex(self, simplices):
        """Face closure of ``simplices``, which must all belong to self."""
        sub = SimplicialComplex(simplices)
        if not sub.simplices <= self._simplices:
            bad = sorted(sub.simplices - self._simplices, key=skey)[0]
            raise ValidationError(f"simplex {bad!r} is not in the parent complex")
        return sub

    def is_subcomplex_of(self, other):
        return self._simplices <= other._simplices

    def components(self):
        """Vertex sets of the connected components, in canonical order."""
        seen, comps = set(), []
        for v in self._vertices:
            if v in seen:
                continue
            comp, stack = [], [v]
            seen.add(v)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.neighbors(u):
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp, key=vkey))
        return comps


def build_complex(maximal):
    """Face closure of a list of vertex lists."""
    return SimplicialComplex(maximal)


def is_full_subcomplex(X, Y):
    """True iff every simplex of X spanned by vertices of Y lies in Y."""
    if not Y.is_subcomplex_of(X):
        raise ValidationError("Y is not a subcomplex of X")
    yv = set(Y.vertices)
    return all(s in Y.simplices for s in X.simplices if yv.issuperset(s))


def star_and_link(X, s):
    """Return (open star as the list of simplices containing s, link)."""
    return X.cofaces(s), X.link(s)


def complement_dense(X, Y):
    """|X| minus |Y| is dense iff no maximal simplex of X lies in Y."""
    return not any(m in Y.simplices for m in X.maximal)


# -- maps ---------------------------------------------------------------

@dataclass(frozen=True)
class SimplicialMap:
    source: SimplicialComplex
    target: SimplicialComplex
    images: dict
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if not self.check:
            return
        missing = [v for v in self.source.vertices if v not in self.images]
        if missing:
            raise ValidationError(f"no image given for vertex {missing[0]!r}")
        for s in self.source.maximal:
            im = self.image(s)
            if im not in self.target.simplices:
                raise ValidationError(
                    f"image of {s!r} is {im!r}, not a simplex of the target")

    def __call__(self, v):
        return self.images[v]

    def image(self, s):
        return span(self.images[v] for v in s)


def preimage_subcomplex(f, Y):
    """Preimage of a full subcomplex under a simplicial map."""
    if not is_full_subcomplex(f.target, Y):
        raise FullnessRequired("preimage formula needs a full subcomplex")
    yv = set(Y.vertices)
    return SimplicialComplex(s for s in f.source.simplices
                             if all(f.images[v] in yv for v in s))


# -- subdivisions ---------------------------------------------------------

@dataclass(frozen=True)
class SubdivisionRecord:
    """A subdivision together with its carrier and vertex bookkeeping.

    ``carrier`` maps each refined simplex to the original simplex whose
    interior contains its interior.  ``roles`` maps each refined vertex to
    ``(original simplex, role, barycentric coordinates)`` where role is
    ``"vertex"``, ``"barycenter"`` or ``"chosen-point"`` and coordinates are
    exact Fractions keyed by the original simplex's vertices.
    """
    original: SimplicialComplex
    refined: SimplicialComplex
    carrier: dict
    roles: dict

    def image_of(self, sub):
        """The subdivision of a subcomplex of the original."""
        keep = sub.simplices
        return SimplicialComplex(s for s, c in self.carrier.items() if c in keep)

    def vertex_of(self, s):
        """Refined vertex sitting at the center of original simplex s."""
        return bary_name(simplex(s))


def _flags(X):
    """All strictly increasing chains of simplices of X."""
    up = {s: [] for s in X.simplices}
    for t in X.simplices:
        for k in range(1, len(t)):
            for s in combinations(t, k):
                up[s].append(t)
    chains = []
    stack = [(s,) for s in X]
    while stack:
        ch = stack.pop()
        chains.append(ch)
        for t in up[ch[-1]]:
            stack.append(ch + (t,))
    return chains


@lru_cache(maxsize=64)
def barycentric_subdivision(X):
    """Barycentric subdivision: vertices are simplices, simplices are flags."""
    names = {s: bary_name(s) for s in X.simplices}
    if len(set(names.values())) != len(names):
        seen = {}
        for s, n in names.items():
            if n in seen:
                raise ValidationError(f"barycenter name {n!r} is ambiguous "
                                      f"({seen[n]!r} and {s!r})")
            seen[n] = s
    carrier, tops = {}, []
    for ch in _flags(X):
        rs = simplex(names[s] for s in ch)
        carrier[rs] = ch[-1]
        tops.append(rs)
    refined = SimplicialComplex(tops)
    roles = {}
    for s, n in names.items():
        coords = {v: Fraction(1, len(s)) for v in s}
        roles[n] = (s, "vertex" if len(s) == 1 else "barycenter", coords)
    return SubdivisionRecord(X, refined, carrier, roles)


def centric_subdivision(S, f):
    """f-centric subdivision for complexes of dimension at most 2.

    Combinatorially this is the barycentric subdivision of S; the new vertex
    b(sigma) inside a triangle sigma is the barycenter unless f collapses
    sigma onto an edge, in which case it sits at coordinates 1/4, 1/4, 1/2
    (the two vertices sharing an image get 1/4 each) so that it still maps to
    the midpoint of that edge.

    Returns ``(record, refined_map)`` with ``refined_map`` simplicial into
    the barycentric subdivision of f's target.
    """
    if S.dim > 2:
        raise ValidationError("centric subdivision is defined for dim <= 2")
    base = barycentric_subdivision(S)
    roles = dict(base.roles)
    for s in S.of_dim(2):
        if len(f.image(s)) == 2:
            imgs = [f.images[v] for v in s]
            coords = {v: Fraction(1, 4) if imgs.count(imgs[i]) == 2
                      else Fraction(1, 2) for i, v in enumerate(s)}
            roles[bary_name(s)] = (s, "chosen-point", coords)
    rec = SubdivisionRecord(S, base.refined, base.carrier, roles)
    target = barycentric_subdivision(f.target).refined
    images = {bary_name(s): bary_name(f.image(s)) for s in S.simplices}
    return rec, SimplicialMap(rec.refined, target, images)


def f_centric_subdivision(S, f):
    if S.dim != 2:
        raise ValidationError("f-centric subdivision needs a 2-dimensional S")
    return centric_subdivision(S, f)


def point_image(f, coords):
    """Image of a point given by barycentric coordinates under linear f."""
    out = {}
    for v, c in coords.items():
        w = f.images[v]
        out[w] = out.get(w, 0) + c
    return {w: c for w, c in out.items() if c}
