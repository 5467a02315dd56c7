"""The three-stage push-off of a surface map off a subcomplex.

Everything happens in B = beta(X), where the image of Y is a full
subcomplex.  The surface starts as the f-centric subdivision of S and is
modified by local region replacements, each logged as a certificate move.
"""

from collections import deque
from dataclasses import dataclass

from ..algebra import homology
from ..complex import (SimplicialComplex, SimplicialMap, barycentric_subdivision,
                       bary_name, centric_subdivision, simplex, skey, span, vkey)
from ..errors import (DensityViolated, InternalError, LocalConnectivityViolated,
                      Obstructed)
from ..filling import nullhomotopy_search, path_search
from ..surfaces import link_cycle
from .problem import (STAGE_JUSTIFICATION, AuxDisk, FreshNames, Move,
                      PushoffCertificate, ReachabilitySequence)


def punctured_link(B, YB, y):
    """Simplices of the link of y in B that avoid Y.

    For full Y the open star of y minus Y deformation retracts onto this
    subcomplex, so it carries the local pi_0 and pi_1 information.
    """
    yv = set(YB.vertices)
    L = B.link((y,))
    return L.full_subcomplex(v for v in L.vertices if v not in yv)


class _State:
    """Current triangulation of S (as top simplices) and vertex images."""

    def __init__(self, problem):
        self.problem = problem
        self.record = barycentric_subdivision(problem.X)
        self.B = self.record.refined
        self.YB = self.record.image_of(problem.Y)
        self.yv = set(self.YB.vertices)
        self.srec, f0 = centric_subdivision(problem.S.complex, problem.f)
        self.f0 = f0
        self.dim = problem.S.dim
        self.tops = set(self.srec.refined.of_dim(self.dim))
        self.images = dict(f0.images)
        self.sprime = self.srec.image_of(problem.S.s_prime)
        self.fresh = FreshNames(self.srec.refined.vertices)
        self.moves = []
        self._plinks = {}

    @property
    def complex(self):
        return SimplicialComplex(self.tops)

    def map(self):
        K = self.complex
        return SimplicialMap(K, self.B, {v: self.images[v] for v in K.vertices})

    def in_y(self, s):
        return all(self.images[v] in self.yv for v in s)

    def plink(self, y):
        if y not in self._plinks:
            self._plinks[y] = punctured_link(self.B, self.YB, y)
        return self._plinks[y]

    def replace(self, stage, removed, added, new_images, witness, just=None):
        removed = sorted(removed, key=skey)
        added = sorted(added, key=skey)
        old_v = {v for s in removed for v in s}
        new_v = {v for s in added for v in s}
        old = {v: self.images[v] for v in old_v}
        new = {v: new_images.get(v, self.images.get(v)) for v in new_v}
        self.tops.difference_update(removed)
        for v in old_v - new_v:
            del self.images[v]
        self.tops.update(added)
        self.images.update(new)
        self.moves.append(Move(stage, just or STAGE_JUSTIFICATION[stage],
                               tuple(removed), tuple(added), old, new, witness))


# -- Step 1 -------------------------------------------------------------

def choose_tau_tilde(X, Y, tau):
    """Smallest simplex of X containing tau and not contained in Y."""
    for s in X.cofaces(tau):
        if s not in Y.simplices:
            return s
    return None


def step1_clear_triangles(state):
    """Reroute the center of every top simplex of S whose image lies in Y.

    Returns the number of cone-target moves.
    """
    X, Y = state.problem.X, state.problem.Y
    f = state.problem.f
    n = 0
    for sigma in state.problem.S.complex.of_dim(state.dim):
        tau = f.image(sigma)
        if tau not in Y.simplices:
            continue
        tt = choose_tau_tilde(X, Y, tau)
        if tt is None:
            raise DensityViolated(
                f"no simplex containing {list(tau)!r} leaves Y", stage="step1",
                evidence={"simplex": list(tau)})
        b = bary_name(sigma)
        region = [s for s in state.tops if b in s]
        state.replace("step1", region, region, {b: bary_name(tt)},
                      {"sigma": list(sigma), "tau": list(tau), "tau_tilde": list(tt)})
        n += 1
    for s in state.tops:
        if state.in_y(s):
            raise InternalError(f"step 1 left top simplex {s!r} inside Y")
    return n


# -- Step 2 -------------------------------------------------------------

def find_reachability_sequence(B, YB, f1, e):
    """Chain of simplices around f1(e) joining f1(sigma(e)) to f1(tau(e)).

    Consecutive simplices share a face not inside Y; waypoints are
    canonical vertices outside Y in those shared faces.
    """
    K = f1.source
    tris = [s for s in K.cofaces(e) if len(s) == 3]
    if len(tris) != 2:
        raise InternalError(f"edge {e!r} is not interior")
    sigma, tau = tris
    s = next(v for v in sigma if v not in e)
    t = next(v for v in tau if v not in e)
    yv = set(YB.vertices)
    fe = f1.image(e)
    start, goal = f1.image(sigma), f1.image(tau)
    nodes = B.cofaces(fe)
    parent = {start: None}
    queue = deque([start])
    while queue:
        d = queue.popleft()
        if d == goal:
            break
        ds = set(d)
        for d2 in nodes:
            if d2 in parent:
                continue
            if any(v not in yv for v in ds.intersection(d2)):
                parent[d2] = d
                queue.append(d2)
    if goal not in parent:
        raise LocalConnectivityViolated(
            f"open star of {list(fe)!r} minus Y does not join the two sides "
            f"of edge {list(e)!r}", stage="step2",
            evidence={"edge": list(e), "image": list(fe)})
    chain = [goal]
    while parent[chain[-1]] is not None:
        chain.append(parent[chain[-1]])
    chain.reverse()
    way = [f1(s)]
    for a, b in zip(chain, chain[1:]):
        common = sorted((v for v in set(a) & set(b) if v not in yv), key=vkey)
        way.append(common[0])
    way.append(f1(t))
    return ReachabilitySequence(tuple(chain), tuple(way))


def step2_clear_bad_edges(state):
    """Replace each bad edge's quad by a suspension over a waypoint path."""
    K = state.complex
    bad = [e for e in K.of_dim(1) if state.in_y(e)]
    quads = {}
    for e in bad:
        quads[e] = [s for s in K.cofaces(e) if len(s) == 3]
    used = {}
    for e, tris in quads.items():
        for t in tris:
            if t in used:
                raise InternalError(f"quads of bad edges {used[t]!r} and {e!r} overlap")
            used[t] = e
    f1 = state.map()
    for e in bad:
        K = state.complex
        seq = find_reachability_sequence(state.B, state.YB, f1, e)
        sigma, tau = quads[e]
        e0, e1 = e
        s = next(v for v in sigma if v not in e)
        t = next(v for v in tau if v not in e)
        chain, way = list(seq.simplices), list(seq.waypoints)
        if len(chain) == 1 and span((s, t)) in K.simplices:
            # an edge [s, t] exists already; route through one extra vertex
            chain, way = chain * 2, [way[0]] + way
            seq = ReachabilitySequence(tuple(chain), tuple(way))
        m = len(chain)
        us = [s] + [state.fresh("u") for _ in range(m - 1)] + [t]
        added = [simplex((ea, us[i], us[i + 1])) for ea in e for i in range(m)]
        new_images = {us[i]: way[i] for i in range(m + 1)}
        fe = f1.image(e)
        aux = AuxDisk(len(fe) + 1, m)
        ws = aux.ws
        p = {ws[0]: f1(e0), **({ws[1]: f1(e1)} if aux.j == 3 else {})}
        p.update({aux.v(i + 1): way[i] for i in range(m + 1)})
        q_old = {e0: ws[0], e1: ws[-1], s: aux.v(1), t: aux.v(m + 1)}
        q_new = {e0: ws[0], e1: ws[-1]}
        q_new.update({us[i]: aux.v(i + 1) for i in range(m + 1)})
        witness = {"edge": list(e), "j": aux.j, "m": m,
                   "p": [[k, p[k]] for k in sorted(p)],
                   "q_old": [[k, q_old[k]] for k in sorted(q_old, key=vkey)],
                   "q_new": [[k, q_new[k]] for k in sorted(q_new, key=vkey)],
                   "sequence": seq.to_json()}
        state.replace("step2", [sigma, tau], added, new_images, witness)
    K = state.complex
    for ed in K.of_dim(1):
        if state.in_y(ed):
            raise InternalError(f"step 2 left edge {ed!r} inside Y")
    return len(bad)


# -- Step 3 -------------------------------------------------------------

def _obstructed(state, w, y, loop, P):
    h = homology(P) if P.vertices else []
    return Obstructed(
        f"could not fill the link of {w!r} around {y!r} off Y", stage="step3",
        evidence={"vertex": w, "image": y, "loop": list(loop),
                  "punctured_star_h1": str(h[1]) if len(h) > 1 else "0",
                  "punctured_star_components": len(P.components())})


def step3_clear_vertices(state, budget, node_limit=20000):
    """Refill the star of every vertex still mapping into Y."""
    K = state.complex
    W = [w for w in K.vertices if state.images[w] in state.yv]
    for w in W:
        if w in state.sprime.vertices:
            raise InternalError(f"vertex {w!r} of s_prime maps into Y")
    for w in W:
        K = state.complex
        y = state.images[w]
        P = state.plink(y)
        star = [s for s in K.cofaces((w,)) if len(s) == state.dim + 1]
        if state.dim == 1:
            a, b = link_cycle(K, w)
            path = path_search(state.images[a], state.images[b], P) if P.vertices else None
            if path is None:
                raise _obstructed(state, w, y, [state.images[a], state.images[b]], P)
            mids = path[1:-1] or [path[0]]
            names = [state.fresh("c") for _ in mids]
            chain = [a] + names + [b]
            added = [simplex(p) for p in zip(chain, chain[1:])]
            state.replace("step3", star, added, dict(zip(names, mids)),
                          {"y": y, "path": list(path)})
            continue
        cyc = link_cycle(K, w)
        loop = [state.images[c] for c in cyc]
        fill = nullhomotopy_search(loop, P, budget, boundary_chords=False,
                                   node_limit=node_limit)
        if fill is None:
            raise _obstructed(state, w, y, loop, P)
        rename = {f"d{i}": c for i, c in enumerate(cyc)}
        for c in fill.interior:
            rename[c] = state.fresh("c")
        added = [simplex(rename[v] for v in t) for t in fill.triangles]
        new_images = {rename[c]: fill.images[c] for c in fill.interior}
        state.replace("step3", star, added, new_images,
                      {"y": y, "loop": loop, "filling": fill.to_json(),
                       "rename": [[k, rename[k]] for k in sorted(rename)]})
    return len(W)


# -- pipeline -----------------------------------------------------------

@dataclass(frozen=True)
class PushoffResult:
    h: SimplicialMap
    certificate: PushoffCertificate
    stats: dict


def pushoff(problem, budget=12, node_limit=20000):
    """Homotope f rel S' to a map h missing Y; returns a :class:`PushoffResult`.

    h maps a subdivision of S into beta(X).  Stage failures raise a
    :class:`PushoffError` subclass tagged with the stage.
    """
    state = _State(problem)
    stats = {"step1": step1_clear_triangles(state)}
    stats["step2"] = step2_clear_bad_edges(state) if state.dim == 2 else 0
    stats["step3"] = step3_clear_vertices(state, budget, node_limit) if state.dim >= 1 else 0
    h = state.map()
    if any(v in state.yv for v in h.images.values()):
        raise InternalError("push-off finished with a vertex inside Y")
    return PushoffResult(h, PushoffCertificate(tuple(state.moves)), stats)
