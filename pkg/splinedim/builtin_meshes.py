"""Built-in meshes, reference edge numberings and reference value rows."""
import logging
from pathlib import Path
from typing import Dict, Tuple

from .errors import SplineError, UnknownExampleError
from .mesh import Face, SimplicialComplex3, parse_mesh

log = logging.getLogger("builtin_meshes")

BUILTIN_PREFIX = "builtin:"

_CLOUGH_TOCHER = """\
# Clough-Tocher split of the unit tetrahedron at its centroid
tetmesh 1
vertices 5
0 0 0
1 0 0
0 1 0
0 0 1
1/4 1/4 1/4
tets 4
0 1 2 4
0 1 3 4
0 2 3 4
1 2 3 4
"""

_OCTAHEDRON_REGULAR = """\
# regular octahedron coned from the origin; 3 planes through the center
tetmesh 1
vertices 7
1 0 0
-1 0 0
0 1 0
0 -1 0
0 0 1
0 0 -1
0 0 0
tets 8
6 0 2 4
6 0 2 5
6 0 3 4
6 0 3 5
6 1 2 4
6 1 2 5
6 1 3 4
6 1 3 5
"""

# same combinatorics with small integer coordinates; no four of the seven points
# are coplanar and the center lies strictly inside the hull
_OCTAHEDRON_GENERIC = """\
# generic octahedron coned from an interior point; 12 planes through the center
tetmesh 1
vertices 7
5 1 0
-5 0 1
1 5 -1
0 -5 1
1 -1 5
-1 0 -5
0 0 0
tets 8
6 0 2 4
6 0 2 5
6 0 3 4
6 0 3 5
6 1 2 4
6 1 2 5
6 1 3 4
6 1 3 5
"""

EXAMPLES: Dict[str, str] = {
    "clough-tocher": _CLOUGH_TOCHER,
    "octahedron-regular": _OCTAHEDRON_REGULAR,
    "octahedron-generic": _OCTAHEDRON_GENERIC,
}

BUILTIN_NAMES: Tuple[str, ...] = tuple(EXAMPLES)

# edge numberings that reproduce the reference upper bounds
REFERENCE_EDGE_ORDERS: Dict[str, Tuple[Face, ...]] = {
    "clough-tocher": ((0, 4), (1, 4), (2, 4), (3, 4)),
    # center to +x, +y, +z, -x, -y, -z
    "octahedron-generic": ((0, 6), (2, 6), (4, 6), (1, 6), (3, 6), (5, 6)),
    "octahedron-regular": ((0, 6), (2, 6), (4, 6), (1, 6), (3, 6), (5, 6)),
}

# C^2_k on the Clough-Tocher split, k = 1..9, as tabulated. "external_lower"
# comes from an earlier lower bound and is never computed here. The tabulated
# "lower" entry at k = 9 (282) differs from the closed form, which gives 273.
REFERENCE_TABLES: Dict[str, Dict[str, Tuple[int, ...]]] = {
    "clough-tocher": {
        "k": (1, 2, 3, 4, 5, 6, 7, 8, 9),
        "external_lower": (4, 10, 20, 35, 56, 84, 120, 179, 261),
        "lower": (4, 10, 20, 35, 56, 84, 123, 187, 282),
        "upper_free": (4, 10, 20, 36, 58, 90, 136, 200, 286),
    },
}
REFERENCE_R = {"clough-tocher": 2}


def example_text(name: str) -> str:
    try:
        return EXAMPLES[name]
    except KeyError:
        raise UnknownExampleError(f"unknown example {name!r}; choose from {', '.join(BUILTIN_NAMES)}")


def builtin_name(source: str) -> str:
    """Name of a builtin:<name> source, '' for file paths."""
    return source[len(BUILTIN_PREFIX):] if source.startswith(BUILTIN_PREFIX) else ""


def load_mesh_source(source: str) -> SimplicialComplex3:
    name = builtin_name(source)
    if name:
        return parse_mesh(example_text(name))
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise SplineError(f"cannot read mesh {source}: {e}", category="io")
    log.debug("mesh_read", extra={"path": str(path), "bytes": len(text)})
    return parse_mesh(text)
