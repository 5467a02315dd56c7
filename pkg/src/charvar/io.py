"""JSON schemas for complexes, subcomplexes, maps, surfaces and problems.

Vertex ids read from JSON are always strings.  Parse failures raise
:class:`SchemaError` carrying line/column (syntax) or a JSON path
(structure).
"""

import json
from contextlib import contextmanager

from .complex import SimplicialComplex, SimplicialMap, skey, vkey
from .errors import SchemaError, ValidationError


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read file ({exc.strerror})", path=path) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(exc.msg, path=path, line=exc.lineno, column=exc.colno) from None


@contextmanager
def located(path):
    """Attach ``path`` to schema errors raised inside the block."""
    try:
        yield
    except SchemaError as exc:
        if exc.path is not None:
            raise
        raise SchemaError(exc.message, path=path, where=exc.where) from None


def read_json(path, parse, *args):
    """Load ``path`` and run ``parse(data, *args)`` with located errors."""
    data = load_json(path)
    with located(path):
        return parse(data, *args)


def dump_json(obj, path=None):
    text = json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def _vertex(x, where):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise SchemaError(f"vertex id must be a string or integer, got {x!r}", where=where)
    return str(x)


def _simplices(data, where):
    if not isinstance(data, list):
        raise SchemaError("expected a list of simplices", where=where)
    out = []
    for i, s in enumerate(data):
        if not isinstance(s, list) or not s:
            raise SchemaError("a simplex is a non-empty list of vertex ids",
                              where=f"{where}[{i}]")
        vs = [_vertex(x, f"{where}[{i}][{j}]") for j, x in enumerate(s)]
        if len(set(vs)) != len(vs):
            raise SchemaError(f"duplicate vertex in simplex {vs!r}", where=f"{where}[{i}]")
        out.append(vs)
    return out


def field(data, key, where):
    if not isinstance(data, dict):
        raise SchemaError("expected an object", where=where)
    if key not in data:
        raise SchemaError(f"missing field {key!r}", where=where)
    return data[key]


def complex_from_json(data, where="$"):
    tops = _simplices(field(data, "maximal_simplices", where), f"{where}.maximal_simplices")
    listed = data.get("vertices")
    K = SimplicialComplex(tops)
    if listed is not None:
        if not isinstance(listed, list):
            raise SchemaError("expected a list", where=f"{where}.vertices")
        names = [_vertex(x, f"{where}.vertices[{i}]") for i, x in enumerate(listed)]
        missing = set(K.vertices) - set(names)
        if missing:
            v = sorted(missing, key=vkey)[0]
            raise SchemaError(f"vertex {v!r} is used but not listed", where=f"{where}.vertices")
        extra = [[v] for v in names if v not in set(K.vertices)]
        if extra:
            K = SimplicialComplex(tops + extra)
    return K


def complex_to_json(K):
    return {"vertices": list(K.vertices),
            "maximal_simplices": [list(s) for s in K.maximal]}


def subcomplex_from_json(data, parent, where="$"):
    if isinstance(data, dict):
        data = field(data, "simplices", where)
        where = f"{where}.simplices"
    sub = SimplicialComplex(_simplices(data, where))
    if not sub.is_subcomplex_of(parent):
        bad = sorted(sub.simplices - parent.simplices, key=skey)[0]
        raise SchemaError(f"simplex {list(bad)!r} is not in the complex", where=where)
    return sub


def subcomplex_to_json(sub):
    return [list(s) for s in sub.maximal]


def map_from_json(data, source, target, where="$"):
    imgs = field(data, "vertex_images", where)
    if not isinstance(imgs, dict):
        raise SchemaError("expected an object", where=f"{where}.vertex_images")
    images = {str(k): _vertex(v, f"{where}.vertex_images.{k}") for k, v in imgs.items()}
    try:
        return SimplicialMap(source, target, images)
    except ValidationError as exc:
        raise SchemaError(str(exc), where=f"{where}.vertex_images") from None


def map_to_json(f, with_domain=False):
    out = {}
    if with_domain:
        out["complex"] = complex_to_json(f.source)
    out["vertex_images"] = {str(v): f.images[v] for v in f.source.vertices}
    return out


def surface_from_json(data, where="$"):
    from .pushoff import SurfaceComplex
    K = complex_from_json(data, where)
    sp = subcomplex_from_json(data.get("s_prime", []), K, f"{where}.s_prime")
    try:
        return SurfaceComplex(K, sp)
    except ValidationError as exc:
        raise SchemaError(str(exc), where=where) from None


def surface_to_json(S):
    out = complex_to_json(S.complex)
    out["s_prime"] = subcomplex_to_json(S.s_prime)
    return out


def make_problem(X, Y, S, f):
    from .pushoff import PushoffProblem
    try:
        return PushoffProblem(X, Y, S, f)
    except ValidationError as exc:
        raise SchemaError(str(exc)) from None


def problem_from_json(data):
    """A bundle {"complex", "subcomplex", "surface", "map"}."""
    X = complex_from_json(field(data, "complex", "$"), "$.complex")
    Y = subcomplex_from_json(field(data, "subcomplex", "$"), X, "$.subcomplex")
    S = surface_from_json(field(data, "surface", "$"), "$.surface")
    f = map_from_json(field(data, "map", "$"), S.complex, X, "$.map")
    return make_problem(X, Y, S, f)


def problem_to_json(problem):
    return {"complex": complex_to_json(problem.X),
            "subcomplex": subcomplex_to_json(problem.Y),
            "surface": surface_to_json(problem.S),
            "map": map_to_json(problem.f)}


def output_map_to_json(h):
    """A push-off result: the subdivided surface and its vertex images."""
    return {"surface": complex_to_json(h.source), **map_to_json(h)}


def output_map_from_json(data, target, where="$"):
    src = complex_from_json(field(data, "surface", where), f"{where}.surface")
    return map_from_json(data, src, target, where)
