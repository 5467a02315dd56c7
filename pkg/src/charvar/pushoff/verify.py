"""Independent replay of a push-off certificate."""

from dataclasses import dataclass

from ..complex import (SimplicialComplex, barycentric_subdivision, centric_subdivision,
                       simplex, span)
from ..errors import ValidationError
from ..filling import DiskFilling
from ..surfaces import boundary_cycle_of, check_manifold_near, path_endpoints, same_cycle
from .problem import STAGE_JUSTIFICATION, AuxDisk
from .steps import punctured_link


@dataclass(frozen=True)
class Verification:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


class _Reject(Exception):
    pass


def _need(cond, msg):
    if not cond:
        raise _Reject(msg)


def _region_boundary(tops, dim):
    """Boundary vertices of a disk (dim 2), arc (dim 1) or point region."""
    try:
        if dim == 2:
            return boundary_cycle_of(tops)
        if dim == 1:
            return path_endpoints(tops)
    except ValidationError as exc:
        raise _Reject(str(exc)) from None
    _need(len(tops) == 1, "a 0-dimensional region is a single vertex")
    return []


def _interior(tops, bverts):
    K = SimplicialComplex(tops)
    bv = set(bverts)
    return {s for s in K.simplices if not bv.issuperset(s)}


class _Checker:
    def __init__(self, problem):
        self.problem = problem
        self.rec = barycentric_subdivision(problem.X)
        self.B = self.rec.refined
        self.YB = self.rec.image_of(problem.Y)
        self.yv = set(self.YB.vertices)
        self.dim = problem.S.dim

    def cone_target(self, mv, bverts):
        w = mv.witness
        tt = simplex(w["tau_tilde"])
        X, Y = self.problem.X, self.problem.Y
        _need(tt in X.simplices, "tau_tilde is not a simplex of X")
        _need(tt not in Y.simplices, "tau_tilde lies in Y")
        _need(set(mv.removed) == set(mv.added), "cone-target moves keep the triangulation")
        face = set(tt)
        for imgs in (mv.old_images, mv.new_images):
            for v, x in imgs.items():
                _need(x in self.rec.roles and face.issuperset(self.rec.roles[x][0]),
                      f"image of {v!r} leaves the closed simplex tau_tilde")

    def disk_factorization(self, mv, bverts):
        w = mv.witness
        aux = AuxDisk(int(w["j"]), int(w["m"]))
        D = aux.complex
        p = {k: v for k, v in w["p"]}
        q_old = {k: v for k, v in w["q_old"]}
        q_new = {k: v for k, v in w["q_new"]}
        _need(set(p) == set(D.vertices), "p is not defined on the auxiliary disk")
        for s in D.maximal:
            _need(span(p[v] for v in s) in self.B.simplices, "p is not simplicial")
        for i in range(1, aux.m + 2):
            _need(p[aux.v(i)] not in self.yv, "a waypoint lies in Y")
        for q, tops, imgs in ((q_old, mv.removed, mv.old_images),
                              (q_new, mv.added, mv.new_images)):
            _need(set(q) == set(imgs), "factorization misses a region vertex")
            for s in tops:
                _need(span(q[v] for v in s) in D.simplices, "q is not simplicial")
            for v, x in imgs.items():
                _need(p[q[v]] == x, f"map does not factor through D at {v!r}")
        for v in bverts:
            _need(q_old[v] == q_new[v], f"q and q' differ on boundary vertex {v!r}")

    def star_filling(self, mv, bverts):
        w = mv.witness
        y = w["y"]
        _need(y in self.yv, "star center is not in Y")
        for tops, imgs in ((mv.removed, mv.old_images), (mv.added, mv.new_images)):
            for s in tops:
                _need(span([imgs[v] for v in s] + [y]) in self.B.simplices,
                      "region leaves the closed star of y")
        for v, x in mv.new_images.items():
            _need(x not in self.yv, f"new image of {v!r} lies in Y")
        P = punctured_link(self.B, self.YB, y)
        if self.dim == 2:
            fill = w["filling"]
            df = DiskFilling(tuple(tuple(t) for t in fill["triangles"]),
                             tuple(fill["boundary"]), dict(fill["images"]),
                             tuple(fill["interior"]))
            try:
                df.verify(list(w["loop"]), P)
            except ValidationError as exc:
                raise _Reject(f"filling witness invalid: {exc}") from None
            rename = {k: v for k, v in w["rename"]}
            got = {simplex(rename[v] for v in t) for t in df.triangles}
            _need(got == set(mv.added), "filling witness does not match the new region")
        else:
            path = list(w["path"])
            _need(path and all(span(pr) in P.simplices for pr in zip(path, path[1:]))
                  and path[0] in P.vertices, "path witness leaves the punctured link")


def verify_certificate(f, h, cert, problem):
    """Replay ``cert`` from the centric subdivision of ``f``.

    Returns a :class:`Verification`, truthy on success, with the first
    failing check in ``reason`` otherwise.
    """
    try:
        _replay(f, h, cert, problem)
    except _Reject as exc:
        return Verification(False, str(exc))
    return Verification(True)


def _replay(f, h, cert, problem):
    chk = _Checker(problem)
    _need(f.source == problem.S.complex, "f is not defined on the problem's surface")
    srec, f0 = centric_subdivision(problem.S.complex, f)
    dim = problem.S.dim
    tops = set(srec.refined.of_dim(dim))
    images = dict(f0.images)
    sprime = srec.image_of(problem.S.s_prime)
    handlers = {"cone-target": chk.cone_target,
                "disk-factorization": chk.disk_factorization,
                "star-filling": chk.star_filling}
    for i, mv in enumerate(cert.moves):
        try:
            _check_move(chk, handlers, mv, tops, images, sprime, dim)
        except _Reject as exc:
            raise _Reject(f"move {i} ({mv.stage}): {exc}") from None
        except (KeyError, TypeError, ValueError) as exc:
            raise _Reject(f"move {i} ({mv.stage}): malformed witness ({exc})") from None
        tops.difference_update(mv.removed)
        for v in mv.old_images:
            del images[v]
        tops.update(mv.added)
        images.update(mv.new_images)
    final = SimplicialComplex(tops)
    _need(final == h.source, "replayed triangulation differs from h's domain")
    _need(all(images[v] == h.images.get(v) for v in final.vertices),
          "replayed map differs from h")
    _need(h.target == chk.B, "h does not map into the barycentric subdivision of X")
    _need(not any(h.images[v] in chk.yv for v in final.vertices), "h meets Y")
    _need(sprime.is_subcomplex_of(final), "s_prime is not preserved")
    _need(all(h.images[v] == f0.images[v] for v in sprime.vertices),
          "h differs from f on s_prime")


def _check_move(chk, handlers, mv, tops, images, sprime, dim):
    _need(mv.justification == STAGE_JUSTIFICATION.get(mv.stage),
          f"justification {mv.justification!r} does not match the stage")
    _need(mv.removed and mv.added, "empty region")
    _need(all(len(s) == dim + 1 for s in mv.removed + mv.added),
          "region simplices have the wrong dimension")
    _need(set(mv.removed) <= tops, "removed simplices are not in the current triangulation")
    old_v = {v for s in mv.removed for v in s}
    new_v = {v for s in mv.added for v in s}
    _need(set(mv.old_images) == old_v, "old images do not cover the old region")
    _need(set(mv.new_images) == new_v, "new images do not cover the new region")
    for v in old_v:
        _need(images[v] == mv.old_images[v], f"old image of {v!r} is not the current one")
    b_old = _region_boundary(list(mv.removed), dim)
    b_new = _region_boundary(list(mv.added), dim)
    if dim == 2:
        _need(same_cycle(b_old, b_new), "region boundaries differ")
    else:
        _need(sorted(map(str, b_old)) == sorted(map(str, b_new)), "region boundaries differ")
    for v in b_old:
        _need(mv.old_images[v] == mv.new_images[v], f"boundary vertex {v!r} moved")
    rest = SimplicialComplex(tops - set(mv.removed))
    inner_old = _interior(mv.removed, b_old)
    inner_new = _interior(mv.added, b_old)
    _need(not inner_old & rest.simplices, "old region is not glued along its boundary")
    _need(not inner_new & rest.simplices, "new region is not glued along its boundary")
    _need(not inner_old & sprime.simplices, "region meets s_prime")
    for s in mv.added:
        _need(span(mv.new_images[v] for v in s) in chk.B.simplices,
              f"new map is not simplicial on {list(s)!r}")
    handlers[mv.justification](mv, b_old)
    new_tops = (tops - set(mv.removed)) | set(mv.added)
    try:
        check_manifold_near(new_tops, new_v)
    except ValidationError as exc:
        raise _Reject(f"triangulation breaks: {exc}") from None
