"""Builtin all-right complexes."""
from itertools import product

from src.complexes.complex import AllRightComplex
from src.utils.errors import ComplexFormatError, ParameterError


def circle_complex(k_prime: int) -> AllRightComplex:
    """The k'-gon: a circle of k' edges, total length k' pi/2."""
    if k_prime < 3:
        raise ParameterError("k_prime", k_prime, "k' >= 3")
    edges = [(i, (i + 1) % k_prime) for i in range(k_prime)]
    return AllRightComplex.from_facets(edges, name=f"circle{k_prime}")


def simplex_complex(n: int) -> AllRightComplex:
    """A single n-simplex with all of its faces."""
    if n < 0:
        raise ParameterError("n", n, "n >= 0")
    return AllRightComplex.from_facets([tuple(range(n + 1))], name=f"simplex{n}")


def cross_polytope(m: int) -> AllRightComplex:
    """
    The all-right triangulation of S^m by the orthants of R^{m+1}.

    Vertex 2i is +e_i and 2i+1 is -e_i; a facet picks one sign per axis.
    """
    if m < 0:
        raise ParameterError("m", m, "m >= 0")
    facets = [tuple(2 * i + sign for i, sign in enumerate(signs)) for signs in product((0, 1), repeat=m + 1)]
    return AllRightComplex.from_facets(facets, name=f"cross{m}")


def octahedron() -> AllRightComplex:
    """S^2 with 6 vertices and 8 triangles."""
    return AllRightComplex.from_facets(cross_polytope(2).facets(), name="octahedron")


def sixteen_cell() -> AllRightComplex:
    """S^3 with 8 vertices and 16 tetrahedra."""
    return AllRightComplex.from_facets(cross_polytope(3).facets(), name="16-cell")


def polygon_suspension(L: int) -> AllRightComplex:
    """
    The suspension of an L-gon: an S^2 whose two poles have links of length L pi/2.

    Equator vertices are 0..L-1, the poles are L and L+1. L = 4 is the octahedron.
    """
    if L < 4:
        raise ParameterError("L", L, "L >= 4")
    north, south = L, L + 1
    facets = []
    for i in range(L):
        j = (i + 1) % L
        facets.append((i, j, north))
        facets.append((i, j, south))
    return AllRightComplex.from_facets(facets, name=f"suspension{L}")


_BUILTINS = {
    "octahedron": octahedron,
    "16-cell": sixteen_cell,
    "sixteen-cell": sixteen_cell,
}


def builtin(name: str) -> AllRightComplex:
    """
    Resolve a builtin name: octahedron, 16-cell, circle<k'>, suspension<L>, simplex<n>.

    Raises:
        ComplexFormatError: If the name is unknown
    """
    if name in _BUILTINS:
        return _BUILTINS[name]()
    for prefix, make in (("circle", circle_complex), ("suspension", polygon_suspension), ("simplex", simplex_complex)):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            return make(int(name[len(prefix):]))
    raise ComplexFormatError(f"Unknown builtin complex '{name}'")
