"""Sufficient combinatorial checks for the push-off hypotheses.

All checks run in beta(X), where Y becomes full:

* density: no maximal simplex of X lies in Y;
* local connectivity: for each simplex of beta(Y) the open star minus Y is
  non-empty and connected (repeated after further subdivisions);
* local pi_1/pi_2: for each vertex y of beta(Y) the closed star is a cone,
  hence pi_2 = 0, and the link minus Y must be simply connected.  H_1 != 0
  is a certain failure; a trivial H_1 plus an explicit killing of every
  generator is OK; anything in between is UNKNOWN.

Maps of curves only need the punctured link to be non-empty and connected,
which is what ``surface_dim=1`` checks in place of the pi_1 condition.
"""

from dataclasses import dataclass, field

from ..algebra import (GroupPresentation, homology, killed_generators,
                       pi1_presentation)
from ..complex import barycentric_subdivision, complement_dense, skey
from ..filling import nullhomotopy_search
from .steps import punctured_link

OK, FAIL, UNKNOWN = "OK", "FAIL", "UNKNOWN"


@dataclass(frozen=True)
class Status:
    status: str
    evidence: dict = field(default_factory=dict)

    def to_json(self):
        return {"status": self.status, "evidence": self.evidence}


@dataclass(frozen=True)
class HypothesisReport:
    density: bool
    local_connectivity: dict     # simplex of beta(Y) -> Status
    pi2_pi1: dict                # vertex of beta(Y) -> Status
    depth: int = 0

    def statuses(self):
        return list(self.local_connectivity.values()) + list(self.pi2_pi1.values())

    @property
    def ok(self):
        return self.density and all(s.status == OK for s in self.statuses())

    @property
    def failed(self):
        return not self.density or any(s.status == FAIL for s in self.statuses())

    @property
    def verdict(self):
        return FAIL if self.failed else OK if self.ok else UNKNOWN

    def to_json(self):
        return {
            "verdict": self.verdict,
            "density": self.density,
            "depth": self.depth,
            "local_connectivity": [
                {"simplex": list(s), **st.to_json()}
                for s, st in sorted(self.local_connectivity.items(),
                                    key=lambda kv: skey(kv[0]))],
            "pi2_pi1": [
                {"vertex": y, **st.to_json()}
                for y, st in sorted(self.pi2_pi1.items(),
                                    key=lambda kv: skey((kv[0],)))],
        }


def star_minus_y_components(K, YK, sigma):
    """Components of the open star of sigma minus Y, as lists of simplices."""
    ys = YK.simplices
    nodes = [d for d in K.cofaces(sigma) if d not in ys]
    node_set = set(nodes)
    parent = {d: d for d in nodes}

    def find(d):
        while parent[d] != d:
            parent[d] = parent[parent[d]]
            d = parent[d]
        return d

    n = len(sigma)
    for d in nodes:
        if len(d) == n:
            continue
        for i in range(len(d)):
            face = d[:i] + d[i + 1:]
            if face in node_set and set(sigma) <= set(face):
                parent[find(face)] = find(d)
    comps = {}
    for d in nodes:
        comps.setdefault(find(d), []).append(d)
    return sorted((sorted(c, key=skey) for c in comps.values()), key=lambda c: skey(c[0]))


def _local_connectivity(X, Y, depth):
    rec = barycentric_subdivision(X)
    base_y = rec.image_of(Y)
    out = {s: Status(OK, {"levels": depth + 1}) for s in base_y.simplices}
    K, YK = rec.refined, base_y
    carrier = {s: s for s in base_y.simplices}
    for level in range(depth + 1):
        for s in sorted(YK.simplices, key=skey):
            top = carrier[s]
            if out[top].status == FAIL:
                continue
            comps = star_minus_y_components(K, YK, s)
            if len(comps) != 1:
                ev = {"level": level, "refined_simplex": [str(v) for v in s],
                      "components": len(comps),
                      "samples": [list(c[0]) for c in comps][:4]}
                out[top] = Status(FAIL, ev)
        if level == depth:
            break
        nxt = barycentric_subdivision(K)
        ynext = nxt.image_of(YK)
        carrier = {s: carrier[nxt.carrier[s]] for s in ynext.simplices}
        K, YK = nxt.refined, ynext
    return out


def _pi1_status(P, budget, node_limit):
    if not P.vertices:
        return Status(OK, {"punctured_star": "empty"})
    h = homology(P)
    h1 = h[1] if len(h) > 1 else None
    if h1 is not None and not h1.is_trivial:
        return Status(FAIL, {"h1": str(h1), "h1_json": h1.to_json(),
                             "loop": _essential_loop(P)})
    pending = []
    for comp in P.components():
        C = P.full_subcomplex(comp)
        grp = pi1_presentation(C, full=True)
        pres = grp.presentation
        dead = set(killed_generators(pres))
        for g in range(len(pres.generators)):
            if g not in dead:
                pending.append((C, grp.generator_loop(g)))
    unresolved = []
    for C, loop in pending:
        if nullhomotopy_search(loop, C, budget, node_limit=node_limit) is None:
            unresolved.append(loop)
    ev = {"h1": "0", "components": len(P.components()),
          "searched_loops": len(pending)}
    if unresolved:
        ev["unresolved_loop"] = list(unresolved[0])
        return Status(UNKNOWN, ev)
    return Status(OK, ev)


def _pi0_status(P):
    comps = P.components()
    if len(comps) == 1:
        return Status(OK, {"components": 1})
    return Status(FAIL, {"components": len(comps),
                         "samples": [c[0] for c in comps][:4]})


def _essential_loop(P):
    """A generator loop of the edge-path group that survives in H_1."""
    for comp in P.components():
        C = P.full_subcomplex(comp)
        grp = pi1_presentation(C, full=True)
        pres = grp.presentation
        base = pres.abelianization()
        for g in range(len(pres.generators)):
            killed = GroupPresentation(pres.generators, pres.relators + (((g, 1),),))
            if killed.abelianization() != base:
                return list(grp.generator_loop(g))
    return None


def check_hypotheses(X, Y, depth=0, budget=6, node_limit=5000, surface_dim=2):
    """Run the three sufficient checks and return a :class:`HypothesisReport`.

    ``surface_dim`` is the dimension of the domain to be pushed off; for 1
    the local condition is connectivity of the punctured link.
    """
    density = complement_dense(X, Y)
    if not Y.vertices:
        return HypothesisReport(density, {}, {}, depth)
    lc = _local_connectivity(X, Y, depth)
    rec = barycentric_subdivision(X)
    YB = rec.image_of(Y)
    if surface_dim == 1:
        pp = {y: _pi0_status(punctured_link(rec.refined, YB, y)) for y in YB.vertices}
    else:
        pp = {y: _pi1_status(punctured_link(rec.refined, YB, y), budget, node_limit)
              for y in YB.vertices}
    return HypothesisReport(density, lc, pp, depth)
