"""All-right spherical complexes: simplices, stars, links and validation."""
import json
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from pydantic import BaseModel, Field

from src.utils.errors import ComplexFormatError, ParameterError
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

Simplex = FrozenSet[int]

MAX_VERTICES = 62


def faces(simplex: Iterable[int], include_self: bool = True) -> Iterator[Simplex]:
    """Nonempty faces of a simplex, smallest first."""
    verts = sorted(simplex)
    top = len(verts) if include_self else len(verts) - 1
    for size in range(1, top + 1):
        for sub in combinations(verts, size):
            yield frozenset(sub)


class Violation(BaseModel):
    """One failed validation rule with the offending simplices."""

    rule: str = Field(..., description="face_closure | intersection | duplicate | vertex | edge_length")
    simplices: List[List[int]] = Field(default_factory=list, description="Offending simplices")
    message: str = Field(default="", description="Human-readable description")


class ValidationReport(BaseModel):
    """Outcome of validating a complex."""

    ok: bool = Field(..., description="Whether every rule holds")
    dimension: int = Field(..., description="Largest simplex dimension")
    f_vector: List[int] = Field(default_factory=list, description="Simplex counts by dimension")
    violations: List[Violation] = Field(default_factory=list, description="Failed rules")


@dataclass(frozen=True)
class AllRightComplex:
    """
    A simplicial complex whose simplices are all-right spherical simplices.

    Every simplex with vertices v_0..v_k is the positive orthant piece of the unit
    sphere spanned by the coordinate vectors e_{v_0}..e_{v_k} of R^V, so a point of P is
    a nonnegative unit vector whose support is a simplex. ``simplices`` is kept exactly
    as given; ``validate`` reports when it is not a complex.
    """

    vertices: Tuple[int, ...]
    simplices: FrozenSet[Simplex]
    name: str = "complex"
    listed: Tuple[Tuple[int, ...], ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if len(self.vertices) > MAX_VERTICES:
            raise ComplexFormatError(f"At most {MAX_VERTICES} vertices are supported, got {len(self.vertices)}")

    @classmethod
    def from_simplices(
        cls,
        simplices: Iterable[Sequence[int]],
        vertices: Optional[Iterable[int]] = None,
        name: str = "complex",
    ) -> "AllRightComplex":
        """A complex from an explicit simplex list (no closure)."""
        listed = tuple(tuple(int(v) for v in s) for s in simplices)
        verts = sorted(set(vertices) if vertices is not None else {v for s in listed for v in s})
        return cls(
            vertices=tuple(verts),
            simplices=frozenset(frozenset(s) for s in listed if s),
            name=name,
            listed=listed,
        )

    @classmethod
    def from_facets(
        cls,
        facets: Iterable[Sequence[int]],
        vertices: Optional[Iterable[int]] = None,
        name: str = "complex",
    ) -> "AllRightComplex":
        """The closure under faces of the given simplices."""
        facets = [tuple(int(v) for v in f) for f in facets]
        closed = {face for f in facets for face in faces(f)}
        verts = sorted(set(vertices) if vertices is not None else {v for s in closed for v in s})
        return cls(
            vertices=tuple(verts),
            simplices=frozenset(closed),
            name=name,
            listed=tuple(tuple(sorted(s)) for s in sorted(closed, key=lambda s: (len(s), sorted(s)))),
        )

    @property
    def dim(self) -> int:
        return max((len(s) for s in self.simplices), default=0) - 1

    @property
    def index(self) -> Dict[int, int]:
        """Vertex id -> column of the ambient coordinate space."""
        return {v: i for i, v in enumerate(self.vertices)}

    def simplices_of_dim(self, k: int) -> List[Simplex]:
        return sorted((s for s in self.simplices if len(s) == k + 1), key=sorted)

    def facets(self) -> List[Simplex]:
        """Maximal simplices."""
        return sorted(
            (s for s in self.simplices if not any(s < t for t in self.simplices)),
            key=lambda s: (len(s), sorted(s)),
        )

    def f_vector(self) -> List[int]:
        return [len(self.simplices_of_dim(k)) for k in range(self.dim + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def contains(self, simplex: Iterable[int]) -> bool:
        return frozenset(simplex) in self.simplices

    def mask(self, simplex: Iterable[int]) -> int:
        """Bitmask of a vertex set over the ambient columns."""
        idx = self.index
        return sum(1 << idx[v] for v in simplex)

    def simplex_masks(self) -> FrozenSet[int]:
        return frozenset(self.mask(s) for s in self.simplices)

    def star(self, simplex: Iterable[int]) -> "AllRightComplex":
        """The closed simplicial star: all simplices containing the given one, with their faces."""
        simplex = frozenset(simplex)
        tops = [s for s in self.simplices if simplex <= s]
        return AllRightComplex.from_facets([sorted(s) for s in tops], name=f"Star({sorted(simplex)})")

    def link(self, simplex: Iterable[int]) -> "AllRightComplex":
        """Simplices disjoint from the given one that span a simplex together with it."""
        simplex = frozenset(simplex)
        if simplex not in self.simplices:
            raise ParameterError("simplex", sorted(simplex), f"a simplex of {self.name}")
        members = [t for t in self.simplices if not (t & simplex) and (t | simplex) in self.simplices]
        return AllRightComplex.from_simplices(
            [sorted(t) for t in sorted(members, key=lambda s: (len(s), sorted(s)))],
            name=f"Link({sorted(simplex)}, {self.name})",
        )

    def graph(self) -> nx.Graph:
        """The 1-skeleton."""
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(tuple(s) for s in self.simplices if len(s) == 2)
        return g

    def embedding(self, simplex: Iterable[int]) -> np.ndarray:
        """Unit coordinate vectors of the vertices of a simplex, one per row."""
        idx = self.index
        eye = np.eye(len(self.vertices))
        return eye[[idx[v] for v in sorted(simplex)]]

    def to_json(self) -> str:
        payload = {
            "name": self.name,
            "vertices": list(self.vertices),
            "simplices": [sorted(s) for s in sorted(self.simplices, key=lambda s: (len(s), sorted(s)))],
        }
        return json.dumps(payload, indent=2)


def simplicial_link(simplex: Iterable[int], complex_: AllRightComplex) -> AllRightComplex:
    """Link(simplex, P)."""
    return complex_.link(simplex)


def link_cycle(complex_: AllRightComplex) -> List[int]:
    """
    The cyclic vertex order of a complex that is a single circle.

    Raises:
        ComplexFormatError: If the complex is not a cycle graph
    """
    g = complex_.graph()
    if complex_.dim != 1 or g.number_of_nodes() < 3 or any(d != 2 for _, d in g.degree()) or not nx.is_connected(g):
        raise ComplexFormatError(f"{complex_.name} is not a circle")
    return [u for u, _ in nx.find_cycle(g, source=min(g.nodes))]


def validate(complex_: AllRightComplex) -> ValidationReport:
    """
    Check face closure, the intersection condition and the all-right edge lengths.

    The intersection condition is checked pairwise: two simplices must meet in a listed
    common face (or not at all). Listing the same vertex set twice means two simplices
    share more than a face.
    """
    violations: List[Violation] = []
    known = set(complex_.vertices)
    seen: Dict[Simplex, Tuple[int, ...]] = {}
    for raw in complex_.listed:
        if len(set(raw)) != len(raw) or not set(raw) <= known:
            violations.append(Violation(rule="vertex", simplices=[list(raw)], message="repeated or unknown vertex"))
            continue
        key = frozenset(raw)
        if key in seen:
            violations.append(Violation(
                rule="duplicate",
                simplices=[list(seen[key]), list(raw)],
                message="two simplices on the same vertices",
            ))
        seen[key] = raw

    simplices = sorted(complex_.simplices, key=lambda s: (len(s), sorted(s)))
    for s in simplices:
        for face in faces(s, include_self=False):
            if face not in complex_.simplices:
                violations.append(Violation(
                    rule="face_closure",
                    simplices=[sorted(s), sorted(face)],
                    message=f"face {sorted(face)} of {sorted(s)} is missing",
                ))

    for s, t in combinations(simplices, 2):
        common = s & t
        if common and common not in complex_.simplices:
            violations.append(Violation(
                rule="intersection",
                simplices=[sorted(s), sorted(t)],
                message=f"{sorted(s)} and {sorted(t)} meet in {sorted(common)}, which is not a common face",
            ))

    for s in complex_.facets():
        frame = complex_.embedding(s)
        gram = frame @ frame.T
        lengths = np.arccos(np.clip(gram[np.triu_indices(len(s), 1)], -1.0, 1.0))
        if lengths.size and not np.allclose(lengths, np.pi / 2, atol=1e-15):
            violations.append(Violation(rule="edge_length", simplices=[sorted(s)], message="edge not of length pi/2"))

    report = ValidationReport(
        ok=not violations,
        dimension=complex_.dim,
        f_vector=complex_.f_vector(),
        violations=violations,
    )
    logger.debug("complex validated", name=complex_.name, ok=report.ok, violations=len(violations))
    return report


def load_complex(source: str) -> AllRightComplex:
    """
    Load a complex from a JSON file or a builtin name.

    A JSON document carries ``simplices`` (listed as is) or ``facets`` (closed under
    faces), and optionally ``vertices`` and ``name``.

    Raises:
        ComplexFormatError: If the source is neither a builtin nor a readable document
    """
    from src.complexes.generators import builtin

    path = Path(source)
    if not path.suffix and not path.exists():
        return builtin(source)
    try:
        payload = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ComplexFormatError(f"Cannot read complex from {source}: {e}")
    name = payload.get("name", path.stem)
    vertices = payload.get("vertices")
    if isinstance(vertices, int):
        vertices = range(vertices)
    if "facets" in payload:
        return AllRightComplex.from_facets(payload["facets"], vertices=vertices, name=name)
    if "simplices" in payload:
        return AllRightComplex.from_simplices(payload["simplices"], vertices=vertices, name=name)
    raise ComplexFormatError(f"{source} has neither 'simplices' nor 'facets'")
