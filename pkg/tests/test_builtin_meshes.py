from itertools import combinations

import pytest

from splinedim.builtin_meshes import (
    BUILTIN_NAMES,
    REFERENCE_EDGE_ORDERS,
    REFERENCE_TABLES,
    example_text,
    load_mesh_source,
)
from splinedim.errors import MeshSyntaxError, SplineError, UnknownExampleError
from splinedim.forms import distinct_forms
from splinedim.mesh import orientation


def test_names():
    assert set(BUILTIN_NAMES) == {"clough-tocher", "octahedron-regular", "octahedron-generic"}


def test_unknown_example():
    with pytest.raises(UnknownExampleError) as exc:
        example_text("icosahedron")
    assert exc.value.category == "unknown_example"


def test_generic_octahedron_has_no_four_coplanar_points(oct_generic):
    pts = oct_generic.complex.vertices
    for quad in combinations(range(7), 4):
        assert orientation(*(pts[i] for i in quad)) != 0, quad


def test_generic_octahedron_is_convex_around_its_center(oct_generic):
    # every hull face has the other three hull vertices and the center strictly on one side
    pts = oct_generic.complex.vertices
    for face in oct_generic.tables.boundary_triangles:
        signs = {orientation(*(pts[i] for i in face), pts[p]) > 0 for p in range(7) if p not in face}
        assert len(signs) == 1, face


def test_center_planes(oct_regular, oct_generic):
    assert len(distinct_forms(oct_regular.forms.values())) == 3
    assert len(distinct_forms(oct_generic.forms.values())) == 12


def test_reference_orders_are_interior_edge_permutations(builtins):
    for name, order in REFERENCE_EDGE_ORDERS.items():
        assert sorted(order) == list(builtins[name].tables.interior_edges)


def test_reference_rows_line_up():
    ref = REFERENCE_TABLES["clough-tocher"]
    assert all(len(v) == len(ref["k"]) for v in ref.values())


def test_load_mesh_source(tmp_path):
    c = load_mesh_source("builtin:clough-tocher")
    assert len(c.tets) == 4
    p = tmp_path / "ct.tetmesh"
    p.write_text(example_text("clough-tocher"), encoding="utf-8")
    assert load_mesh_source(str(p)) == c

    with pytest.raises(SplineError) as exc:
        load_mesh_source(str(tmp_path / "missing.tetmesh"))
    assert exc.value.category == "io"

    bad = tmp_path / "bad.tetmesh"
    bad.write_text("tetmesh 1\nvertices two\n", encoding="utf-8")
    with pytest.raises(MeshSyntaxError):
        load_mesh_source(str(bad))


def test_generic_octahedron_keeps_plane_coefficients_small(oct_generic):
    pts = oct_generic.complex.vertices
    assert all(c.denominator == 1 for p in pts for c in p)
    assert max(abs(c) for f in oct_generic.forms.values() for c in f.coeffs) <= 50
