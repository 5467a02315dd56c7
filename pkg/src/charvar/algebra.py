"""Exact integer homological algebra.

Matrices are lists of lists of Python ints.  :func:`smith_normal_form`
returns the transforms as well as the diagonal; :func:`homology` uses a
sparse elimination that only tracks the diagonal, which is what makes
barycentric subdivisions of desk-scale complexes cheap enough.
"""

from collections import deque
from dataclasses import dataclass

from .complex import skey, vkey
from .errors import NotConnected, NotFound, ValidationError


# -- matrices -----------------------------------------------------------

def zeros(rows, cols):
    return [[0] * cols for _ in range(rows)]


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1
    return m


def matmul(a, b):
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    if a and len(a[0]) != inner:
        raise ValidationError("matrix shapes do not match")
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)]
            for row in a]


def determinant(m):
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m):
    """Return (U, D, V) with D = U*M*V diagonal, d1 | d2 | ..., U, V unimodular.

    Pivot choice: smallest nonzero absolute value in the remaining block,
    ties broken by (row, column).
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    d = [list(r) for r in m]
    u, v = identity(rows), identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, q):  # row dst += q * row src
        if q:
            d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
            u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):
        if q:
            for r in d:
                r[dst] += q * r[src]
            for r in v:
                r[dst] += q * r[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = d[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                return u, d, v
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = d[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = d[i][t] // p
                add_row(t, i, -q)
                if d[i][t]:
                    dirty = True
            for j in range(t + 1, cols):
                q = d[t][j] // p
                add_col(t, j, -q)
                if d[t][j]:
                    dirty = True
            if dirty:
                continue
            # row and column are clear; enforce divisibility of the rest
            bad = next(((i, j) for i in range(t + 1, rows)
                        for j in range(t + 1, cols) if d[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v


def diagonal(d):
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def elementary_divisors(columns, nrows):
    """Nonzero Smith diagonal of a sparse integer matrix.

    ``columns`` is a list of dicts {row: value}.  Unit pivots are eliminated
    sparsely; whatever is left is handed to the dense algorithm.
    """
    cols = [dict(c) for c in columns if c]
    rows = {}
    for j, c in enumerate(cols):
        for i in c:
            rows.setdefault(i, set()).add(j)
    alive = set(range(len(cols)))
    units = 0
    progress = True
    while progress:
        progress = False
        for j in sorted(alive):
            c = cols[j]
            piv = next((i for i in sorted(c) if abs(c[i]) == 1), None)
            if piv is None:
                continue
            # column ops clear row `piv` in every other column
            pv = c[piv]
            for k in sorted(rows[piv] - {j}):
                q = cols[k][piv] * pv  # pv is +-1, so this is exact
                for i, x in c.items():
                    y = cols[k].get(i, 0) - q * x
                    if y:
                        if i not in cols[k]:
                            rows.setdefault(i, set()).add(k)
                        cols[k][i] = y
                    elif i in cols[k]:
                        del cols[k][i]
                        rows[i].discard(k)
                if not cols[k]:
                    alive.discard(k)
            for i in c:
                rows[i].discard(j)
            alive.discard(j)
            units += 1
            progress = True
    rest = sorted(alive)
    divs = [1] * units
    if rest:
        ridx = sorted({i for j in rest for i in cols[j]})
        pos = {i: n for n, i in enumerate(ridx)}
        dense = zeros(len(ridx), len(rest))
        for n, j in enumerate(rest):
            for i, x in cols[j].items():
                dense[pos[i]][n] = x
        _, d, _ = smith_normal_form(dense)
        divs.extend(x for x in diagonal(d) if x)
    return divs


# -- abelian groups -----------------------------------------------------

@dataclass(frozen=True)
class FgAbelianGroup:
    """Z^free_rank + Z/d1 + ... + Z/ds with d1 | d2 | ... and every d >= 2."""
    free_rank: int = 0
    invariant_factors: tuple = ()

    def __post_init__(self):
        fs = tuple(int(x) for x in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        if self.free_rank < 0:
            raise ValidationError("free rank must be non-negative")
        if any(x < 2 for x in fs):
            raise ValidationError("invariant factors must be >= 2")
        if any(b % a for a, b in zip(fs, fs[1:])):
            raise ValidationError("invariant factors must form a divisibility chain")

    @classmethod
    def from_orders(cls, free_rank=0, orders=()):
        """Normalize an arbitrary direct sum of cyclic groups."""
        orders = [abs(int(x)) for x in orders]
        free_rank += orders.count(0)
        orders = [x for x in orders if x > 1]
        if not orders:
            return cls(free_rank)
        n = len(orders)
        m = zeros(n, n)
        for i, x in enumerate(orders):
            m[i][i] = x
        _, d, _ = smith_normal_form(m)
        return cls(free_rank, tuple(x for x in diagonal(d) if x > 1))

    @classmethod
    def from_json(cls, data):
        return cls(int(data["free_rank"]), tuple(int(x) for x in data["invariant_factors"]))

    def to_json(self):
        return {"free_rank": self.free_rank,
                "invariant_factors": list(self.invariant_factors)}

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.invariant_factors

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        i = 0
        fs = self.invariant_factors
        while i < len(fs):
            j = i
            while j < len(fs) and fs[j] == fs[i]:
                j += 1
            parts.append(f"Z/{fs[i]}" if j - i == 1 else f"(Z/{fs[i]})^{j - i}")
            i = j
        return " + ".join(parts) if parts else "0"


TRIVIAL = FgAbelianGroup()


def cokernel(matrix, ngens):
    """Group presented by ``ngens`` generators and the rows of ``matrix``."""
    # the transpose has the same Smith form, so relations can act as columns
    divs = elementary_divisors(
        [{j: x for j, x in enumerate(row) if x} for row in matrix], ngens)
    rank = len(divs)
    return FgAbelianGroup.from_orders(ngens - rank, [d for d in divs if d > 1])


# -- chain complexes ----------------------------------------------------

def _boundary_columns(X, k):
    """Sparse columns of the k-th boundary map (k-simplices -> (k-1)-simplices)."""
    index = {s: i for i, s in enumerate(X.of_dim(k - 1))}
    out = []
    for s in X.of_dim(k):
        col = {}
        for i in range(len(s)):
            col[index[s[:i] + s[i + 1:]]] = (-1) ** i
        out.append(col)
    return out


def boundary_matrices(X):
    """Dense boundary matrices d_1 .. d_dim in canonical simplex order."""
    mats = []
    for k in range(1, X.dim + 1):
        nr, cols = X.count(k - 1), _boundary_columns(X, k)
        m = zeros(nr, len(cols))
        for j, c in enumerate(cols):
            for i, x in c.items():
                m[i][j] = x
        mats.append(m)
    return mats


def homology(X):
    """Integral simplicial homology H_0 .. H_dim as FgAbelianGroups."""
    if X.dim < 0:
        return []
    divs = {}
    for k in range(1, X.dim + 1):
        divs[k] = elementary_divisors(_boundary_columns(X, k), X.count(k - 1))
    out = []
    for k in range(X.dim + 1):
        rk_out = len(divs.get(k, []))
        incoming = divs.get(k + 1, [])
        free = X.count(k) - rk_out - len(incoming)
        out.append(FgAbelianGroup.from_orders(free, [d for d in incoming if d > 1]))
    return out


def betti_numbers(X):
    return [g.free_rank for g in homology(X)]


# -- fundamental group --------------------------------------------------

@dataclass(frozen=True)
class GroupPresentation:
    """Generators plus relators; a relator is a tuple of (generator index, +-1)."""
    generators: tuple
    relators: tuple

    def __post_init__(self):
        n = len(self.generators)
        for r in self.relators:
            for g, e in r:
                if not (0 <= g < n) or e not in (1, -1):
                    raise ValidationError(f"bad letter {(g, e)!r} in relator")

    def abelianization(self):
        n = len(self.generators)
        rows = []
        for r in self.relators:
            row = [0] * n
            for g, e in r:
                row[g] += e
            rows.append(row)
        return cokernel(rows, n)

    def to_json(self):
        return {"generators": [list(g) for g in self.generators],
                "relators": [[[g, e] for g, e in r] for r in self.relators]}


@dataclass(frozen=True)
class EdgePathGroup:
    """A presentation together with the spanning tree that produced it."""
    presentation: GroupPresentation
    basepoint: object
    parent: dict          # BFS tree: vertex -> parent vertex (basepoint -> None)

    def tree_path(self, v):
        """Vertex path from the basepoint to ``v`` along the tree."""
        path = [v]
        while self.parent[path[-1]] is not None:
            path.append(self.parent[path[-1]])
        return path[::-1]

    def generator_loop(self, g):
        """Closed vertex path (without repeating the start) for generator g."""
        a, b = self.presentation.generators[g]
        return self.tree_path(a) + self.tree_path(b)[::-1][:-1]


def pi1_presentation(X, basepoint=None, full=False):
    """Edge-path presentation of pi_1(X, basepoint) via a BFS spanning tree.

    Generators are the non-tree edges (oriented low -> high), one relator per
    2-simplex.  With ``full=True`` the :class:`EdgePathGroup` (tree included)
    is returned instead of the bare presentation.
    """
    if not X.vertices:
        raise NotConnected("empty complex")
    if basepoint is None:
        basepoint = X.vertices[0]
    if basepoint not in set(X.vertices):
        raise NotFound(f"basepoint {basepoint!r} is not a vertex")
    parent = {basepoint: None}
    queue = deque([basepoint])
    tree = set()
    while queue:
        u = queue.popleft()
        for w in X.neighbors(u):
            if w not in parent:
                parent[w] = u
                tree.add(tuple(sorted((u, w), key=vkey)))
                queue.append(w)
    if len(parent) != len(X.vertices):
        raise NotConnected("complex is not connected")
    gens = tuple(e for e in X.of_dim(1) if e not in tree)
    gindex = {e: i for i, e in enumerate(gens)}

    def letter(a, b):
        if (a, b) in gindex:
            return [(gindex[(a, b)], 1)]
        if (b, a) in gindex:
            return [(gindex[(b, a)], -1)]
        return []

    rels = []
    for a, b, c in X.of_dim(2):
        rels.append(tuple(letter(a, b) + letter(b, c) + letter(c, a)))
    pres = GroupPresentation(gens, tuple(rels))
    if full:
        return EdgePathGroup(pres, basepoint, parent)
    return pres


def killed_generators(pres):
    """Generators shown trivial by repeatedly using one-letter relators.

    Returns the list of generator indices in the order they were killed.
    """
    dead, order = set(), []
    pending = [list(r) for r in pres.relators]
    changed = True
    while changed:
        changed = False
        for r in pending:
            live = [(g, e) for g, e in r if g not in dead]
            if (live and all(g == live[0][0] for g, _ in live)
                    and abs(sum(e for _, e in live)) == 1):
                dead.add(live[0][0])
                order.append(live[0][0])
                changed = True
    return order


def simplex_sort(ss):
    return sorted(ss, key=skey)
