"""Data types for the push-off pipeline: surfaces, problems, certificates."""

from dataclasses import dataclass, field

from ..complex import SimplicialComplex, SimplicialMap, simplex, skey, span, vkey
from ..errors import ValidationError
from ..surfaces import check_manifold


@dataclass(frozen=True)
class SurfaceComplex:
    """A triangulated compact manifold of dimension <= 2 with a closed
    subcomplex ``s_prime`` that contains the boundary."""
    complex: SimplicialComplex
    s_prime: SimplicialComplex = field(default_factory=SimplicialComplex)
    boundary: SimplicialComplex = field(default=None, compare=False)

    def __post_init__(self):
        if self.complex.dim < 0:
            raise ValidationError("surface is empty")
        bd = check_manifold(self.complex)
        object.__setattr__(self, "boundary", bd)
        if not self.s_prime.is_subcomplex_of(self.complex):
            raise ValidationError("s_prime is not a subcomplex of the surface")
        if not bd.is_subcomplex_of(self.s_prime):
            raise ValidationError("s_prime must contain the boundary of the surface")

    @property
    def dim(self):
        return self.complex.dim


@dataclass(frozen=True)
class PushoffProblem:
    X: SimplicialComplex
    Y: SimplicialComplex
    S: SurfaceComplex
    f: SimplicialMap

    def __post_init__(self):
        if not self.Y.is_subcomplex_of(self.X):
            raise ValidationError("Y is not a subcomplex of X")
        if self.f.source != self.S.complex:
            raise ValidationError("map source is not the surface")
        if self.f.target != self.X:
            raise ValidationError("map target is not X")
        yv = set(self.Y.vertices)
        for v in self.S.s_prime.vertices:
            if self.f(v) in yv:
                raise ValidationError(f"s_prime vertex {v!r} maps into Y")


@dataclass(frozen=True)
class ReachabilitySequence:
    """Simplices Delta_1..Delta_m around a bad edge's image plus waypoints
    v'_1..v'_{m+1} outside Y."""
    simplices: tuple
    waypoints: tuple

    @property
    def m(self):
        return len(self.simplices)

    def to_json(self):
        return {"simplices": [list(s) for s in self.simplices],
                "waypoints": list(self.waypoints)}


@dataclass(frozen=True)
class AuxDisk:
    """The fan disk D^2_m (vertices w0, v1..v_{m+1}) or the strip ball D^3_m
    (vertices w0, w1, v1..v_{m+1})."""
    j: int
    m: int

    def __post_init__(self):
        if self.j not in (2, 3) or self.m < 1:
            raise ValidationError(f"no auxiliary disk D^{self.j}_{self.m}")

    @property
    def ws(self):
        return ("w0",) if self.j == 2 else ("w0", "w1")

    def v(self, i):
        return f"v{i}"

    @property
    def complex(self):
        return SimplicialComplex(self.ws + (self.v(i), self.v(i + 1))
                                 for i in range(1, self.m + 1))


# -- certificates -------------------------------------------------------

STAGE_JUSTIFICATION = {"step1": "cone-target", "step2": "disk-factorization",
                       "step3": "star-filling"}


def _pairs(d):
    return [[k, d[k]] for k in sorted(d, key=vkey)]


@dataclass(frozen=True)
class Move:
    """One boundary-preserving replacement of a disk (or arc) region."""
    stage: str
    justification: str
    removed: tuple          # top simplices of the old region
    added: tuple            # top simplices of the new region
    old_images: dict        # region vertex -> target vertex, before
    new_images: dict        # region vertex -> target vertex, after
    witness: dict

    def to_json(self):
        return {"stage": self.stage, "justification": self.justification,
                "removed": [list(s) for s in self.removed],
                "added": [list(s) for s in self.added],
                "old_images": _pairs(self.old_images),
                "new_images": _pairs(self.new_images),
                "witness": self.witness}

    @classmethod
    def from_json(cls, data):
        try:
            return cls(str(data["stage"]), str(data["justification"]),
                       tuple(sorted((simplex(s) for s in data["removed"]), key=skey)),
                       tuple(sorted((simplex(s) for s in data["added"]), key=skey)),
                       {k: v for k, v in data["old_images"]},
                       {k: v for k, v in data["new_images"]},
                       dict(data.get("witness", {})))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed certificate move: {exc}") from None


@dataclass(frozen=True)
class PushoffCertificate:
    moves: tuple = ()

    def to_json(self):
        return {"format": "charvar-pushoff-certificate", "version": 1,
                "moves": [m.to_json() for m in self.moves]}

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict) or not isinstance(data.get("moves"), list):
            raise ValidationError("certificate must be an object with a 'moves' list")
        return cls(tuple(Move.from_json(m) for m in data["moves"]))

    def count(self, stage):
        return sum(1 for m in self.moves if m.stage == stage)


class FreshNames:
    """Vertex names that have never been used in the surface."""

    def __init__(self, used):
        self.used = set(used)
        self.counters = {}

    def __call__(self, prefix):
        k = self.counters.get(prefix, 0)
        while f"{prefix}{k}" in self.used:
            k += 1
        name = f"{prefix}{k}"
        self.counters[prefix] = k + 1
        self.used.add(name)
        return name


def image_span(images, s):
    return span(images[v] for v in s)
