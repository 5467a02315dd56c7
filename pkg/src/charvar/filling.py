"""Semi-decision search for simplicial disk fillings of edge loops.

A filling is built from the outside in.  The *frontier* is a simple cycle
of disk vertices bounding the part still to be filled; each move glues
triangles onto it:

* ear      -- close three consecutive frontier vertices with a triangle
              (adds a chord, no new vertex);
* cone     -- add one interior vertex and cone a run of frontier edges to
              it; coning the whole frontier finishes the disk.

Iterative deepening runs over the number of interior vertices, so the
cheapest fillings (fans, then single cones) are found first.  When a short
exhaustive run fails, a greedy descent (degenerate ears, then the longest
shrinking cone) is tried before the full search.  Failure within budget
means UNKNOWN, never "not nullhomotopic".
"""

from collections import deque
from dataclasses import dataclass

from .complex import SimplicialComplex, span, vkey
from .errors import ValidationError
from .surfaces import boundary_cycle_of, same_cycle


@dataclass(frozen=True)
class DiskFilling:
    """A triangulated disk with a simplicial map into the ambient complex.

    ``boundary`` lists disk vertices in loop order; ``images`` maps every
    disk vertex to a vertex of the ambient complex.
    """
    triangles: tuple
    boundary: tuple
    images: dict
    interior: tuple

    @property
    def complex(self):
        return SimplicialComplex(self.triangles)

    def verify(self, loop, X):
        """Raise ValidationError unless this is a simplicial disk filling
        of ``loop`` in X."""
        cyc = boundary_cycle_of(self.triangles)
        if not same_cycle(cyc, self.boundary):
            raise ValidationError("disk boundary does not match the recorded cycle")
        if [self.images[v] for v in self.boundary] != list(loop):
            raise ValidationError("boundary does not map onto the loop")
        for t in self.triangles:
            if span(self.images[v] for v in t) not in X.simplices:
                raise ValidationError(f"triangle {t!r} does not map to a simplex")
        return True

    def to_json(self):
        return {"triangles": [list(t) for t in self.triangles],
                "boundary": list(self.boundary),
                "images": {str(k): v for k, v in self.images.items()},
                "interior": list(self.interior)}


def is_edge_loop(loop, X):
    return all(span((a, b)) in X.simplices
               for a, b in zip(loop, loop[1:] + loop[:1]))


class _Search:
    def __init__(self, X, chords, node_limit):
        self.X = X
        self.simp = X.simplices
        self.chords = chords
        self.node_limit = node_limit
        self.nodes = 0
        self.failed = {}
        self.nbrs = {}

    def ok(self, *vs):
        return span(vs) in self.simp

    def run(self, frontier, img, bnd, budget, edges=(), tris=(), fresh=0, greedy=False):
        self.img, self.bnd = img, bnd
        self.edges = {frozenset(p) for p in zip(frontier, frontier[1:] + frontier[:1])}
        self.edges.update(frozenset(e) for e in edges)
        self.tris = list(tris)
        self.fresh = fresh
        frontier = list(frontier)
        if greedy:
            done, frontier, used = self.greedy(frontier, budget)
            if done:
                return True
            budget -= used
        for b in range(budget + 1):
            if self.dfs(list(frontier), b):
                return True
            if self.nodes > self.node_limit:
                break
        return False

    def key(self, F):
        n = len(F)
        chords = []
        for i, v in enumerate(F):
            for j in range(i + 2, n):
                if (i, j) != (0, n - 1) and frozenset((v, F[j])) in self.edges:
                    chords.append((i, j))
        return (tuple((self.img[v], v in self.bnd) for v in F), tuple(chords))

    def new_vertex(self, z):
        name = f"c{self.fresh}"
        self.fresh += 1
        self.img[name] = z
        return name

    def dfs(self, F, left):
        self.nodes += 1
        if self.nodes > self.node_limit:
            return False
        k = len(F)
        im = [self.img[v] for v in F]
        if k == 3 and self.ok(*im) and (self.chords or not all(v in self.bnd for v in F)):
            self.tris.append(tuple(F))
            return True
        key = self.key(F)
        if self.failed.get(key, -1) >= left:
            return False
        if k >= 4:
            order = sorted(range(k), key=lambda i: len({im[i - 1], im[i], im[(i + 1) % k]}))
            for i in order:
                p, q, r = F[i - 1], F[i], F[(i + 1) % k]
                if not self.ok(im[i - 1], im[i], im[(i + 1) % k]):
                    continue
                e = frozenset((p, r))
                if e in self.edges:
                    continue
                if not self.chords and p in self.bnd and r in self.bnd:
                    continue
                self.edges.add(e)
                self.tris.append((p, q, r))
                if self.dfs(F[:i] + F[i + 1:], left):
                    return True
                self.tris.pop()
                self.edges.discard(e)
        if left > 0:
            for z, start, length in self.cone_moves(F, im):
                if self.apply_cone(F, z, start, length, left):
                    return True
        self.failed[key] = max(self.failed.get(key, -1), left)
        return False

    def greedy(self, F, budget, max_steps=500):
        """Descent without backtracking: degenerate ears, then the longest
        shrinking cone, then any ear.

        Returns (finished, frontier, cones used); an unfinished frontier is
        left for the exhaustive search.
        """
        cones = 0
        for _ in range(max_steps):
            k = len(F)
            im = [self.img[v] for v in F]
            if k == 3 and self.ok(*im) and (self.chords or not all(v in self.bnd for v in F)):
                self.tris.append(tuple(F))
                return True, F, cones
            ear = None
            for i in range(k if k >= 4 else 0):
                p, r = F[i - 1], F[(i + 1) % k]
                if (not self.ok(im[i - 1], im[i], im[(i + 1) % k])
                        or frozenset((p, r)) in self.edges
                        or (not self.chords and p in self.bnd and r in self.bnd)):
                    continue
                d = len({im[i - 1], im[i], im[(i + 1) % k]})
                if ear is None or d < ear[0]:
                    ear = (d, i)
            moves = self.cone_moves(F, im) if cones < budget else []
            if ear and (ear[0] <= 2 or not moves or moves[0][2] < 3):
                i = ear[1]
                p, q, r = F[i - 1], F[i], F[(i + 1) % k]
                self.edges.add(frozenset((p, r)))
                self.tris.append((p, q, r))
                F = F[:i] + F[i + 1:]
                continue
            if not moves or (moves[0][2] < 3 and moves[0][2] < k):
                return False, F, cones
            z, start, length = moves[0]
            c = self.new_vertex(z)
            cones += 1
            arc = [F[(start + t) % k] for t in range(length + 1)] if length < k else F + F[:1]
            self.tris.extend((arc[t], arc[t + 1], c) for t in range(len(arc) - 1))
            self.edges.update(frozenset((c, v)) for v in arc)
            if length == k:
                return True, F, cones
            F = [c] + [F[(start + length + t) % k] for t in range(k - length + 1)]
        return False, F, cones

    def cone_moves(self, F, im):
        k = len(F)
        cands = set()
        for a in set(im):
            if a not in self.nbrs:
                self.nbrs[a] = set(self.X.neighbors(a)) | {a}
            cands |= self.nbrs[a]
        moves = []
        for z in sorted(cands, key=vkey):
            good = [self.ok(im[i], im[(i + 1) % k], z) for i in range(k)]
            if all(good):
                moves.append((z, 0, k))
                continue
            if not any(good):
                continue
            # maximal cyclic runs of compatible frontier edges
            n0 = good.index(False)
            i = 1
            while i < k:
                if good[(n0 + i) % k]:
                    run = 0
                    while good[(n0 + i + run) % k]:
                        run += 1
                    moves.append((z, (n0 + i) % k, run))
                    i += run
                else:
                    i += 1
        moves.sort(key=lambda m: -m[2])
        return moves

    def apply_cone(self, F, z, start, length, left):
        k = len(F)
        c = self.new_vertex(z)
        arc = [F[(start + t) % k] for t in range(length + 1)] if length < k else F + F[:1]
        added_t = [(arc[t], arc[t + 1], c) for t in range(len(arc) - 1)]
        added_e = {frozenset((c, v)) for v in arc}
        self.tris.extend(added_t)
        self.edges |= added_e
        if length == k:
            return True
        rest = [F[(start + length + t) % k] for t in range(k - length + 1)]
        # rest runs from the arc's last vertex back around to its first
        newF = [c] + rest
        if self.dfs(newF, left - 1):
            return True
        del self.tris[-len(added_t):]
        self.edges -= added_e
        del self.img[c]
        return False


def nullhomotopy_search(loop, X, budget, boundary_chords=True, node_limit=20000):
    """Look for a simplicial disk in X bounded by the closed edge path ``loop``.

    ``loop`` lists vertices cyclically (the start is not repeated);
    consecutive vertices must span a simplex of X (repeats are allowed).
    Loops shorter than three are padded by repeating the last vertex.  At
    most ``budget`` interior vertices are placed by the search.  With
    ``boundary_chords`` false the disk has no edge joining two boundary
    vertices other than the boundary edges, so it can be glued into a
    surface along the loop; if the direct search fails, a collar of one
    extra vertex per loop vertex is glued first and the budget then counts
    only the vertices inside the collar.

    Returns a verified :class:`DiskFilling`, or None when the budget or the
    node limit runs out (UNKNOWN).
    """
    loop = list(loop)
    if not loop:
        raise ValidationError("empty loop")
    if not is_edge_loop(loop, X):
        raise ValidationError("loop is not a closed edge path in X")
    while len(loop) < 3:
        loop.append(loop[-1])
    names = [f"d{i}" for i in range(len(loop))]
    s = None
    for mode, chords, limit in _strategies(boundary_chords, node_limit):
        s = _Search(X, chords, limit)
        img = dict(zip(names, loop))
        if chords and not boundary_chords:
            frontier, img, edges, tris = _collar(names, loop)
            start = (frontier, img, set(), budget, edges, tris, len(frontier))
        else:
            start = (names, img, set(names), budget)
        if s.run(*start, greedy=(mode == "greedy")):
            break
        s = None
    if s is None:
        return None
    used = {v for t in s.tris for v in t}
    interior = tuple(sorted((v for v in used if v.startswith("c")),
                            key=lambda v: int(v[1:])))
    images = {v: s.img[v] for v in used}
    fill = DiskFilling(tuple(tuple(t) for t in s.tris), tuple(names), images, interior)
    fill.verify(loop, X)
    return fill


def _strategies(boundary_chords, node_limit):
    """Cheapest first: a short exhaustive search on the bare loop, a greedy
    descent, then the exhaustive search with the full node limit.  In
    gluing mode the last two work inside a collar."""
    yield "dfs", boundary_chords, min(node_limit, 2000)
    yield "greedy", True, node_limit
    yield "dfs", True, node_limit


def _collar(names, loop):
    """Ring of stutter copies c_i of the boundary vertices d_i.

    Gluing the collar first leaves an inner frontier with no boundary
    vertex on it, so the inner search may add chords freely.
    """
    k = len(names)
    ring = [f"c{i}" for i in range(k)]
    img = dict(zip(names, loop))
    img.update(zip(ring, loop))
    tris, edges = [], []
    for i in range(k):
        j = (i + 1) % k
        tris += [(names[i], names[j], ring[j]), (names[i], ring[i], ring[j])]
        edges += [(names[i], ring[i]), (names[i], ring[j]), (ring[i], ring[j])]
    return ring, img, edges, tris


def path_search(a, b, X):
    """Shortest edge path from a to b in X (BFS, sorted neighbours), or None."""
    parent = {a: None}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        if u == b:
            path = [u]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for w in X.neighbors(u):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    return None
