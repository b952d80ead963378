import pytest

from splinedim.builtin_meshes import example_text
from splinedim.forms import interior_triangle_forms
from splinedim.mesh import SimplicialComplex3, build_face_tables, parse_mesh


class Mesh:
    def __init__(self, complex_):
        self.complex = complex_
        self.tables = build_face_tables(complex_)
        self.forms = interior_triangle_forms(self.tables)


def builtin(name: str) -> Mesh:
    return Mesh(parse_mesh(example_text(name)))


UNIT_TET = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]


@pytest.fixture(scope="session")
def ct():
    return builtin("clough-tocher")


@pytest.fixture(scope="session")
def oct_regular():
    return builtin("octahedron-regular")


@pytest.fixture(scope="session")
def oct_generic():
    return builtin("octahedron-generic")


@pytest.fixture(scope="session")
def single_tet():
    return Mesh(SimplicialComplex3.build(UNIT_TET, [(0, 1, 2, 3)]))


@pytest.fixture(scope="session")
def two_tets():
    # glued along the triangle in z = 0
    return Mesh(SimplicialComplex3.build(UNIT_TET + [(0, 0, -1)], [(0, 1, 2, 3), (0, 1, 2, 4)]))


@pytest.fixture(scope="session")
def builtins(ct, oct_regular, oct_generic):
    return {"clough-tocher": ct, "octahedron-regular": oct_regular, "octahedron-generic": oct_generic}
