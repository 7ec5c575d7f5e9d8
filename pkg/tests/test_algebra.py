from fractions import Fraction

import pytest

from utils.algebra import (
    Arrow, Quiver, Relation, RelationSet, build_path_algebra, corner_algebra, quotient_algebra,
    two_sided_ideal, vertex_subset,
)
from utils.errors import (
    EmptySubset, FullSubset, InvalidQuiver, InvalidRelation, NotFiniteDimensional, UnknownVertex,
)


def test_path_algebra_a3(a3):
    assert a3.dim == 6
    assert a3.basis == ("e1", "e2", "e3", "a", "b", "a*b")
    assert a3.radical.dim == 3
    assert a3.generators == (0, 1, 2, 3, 4)


def test_products_compose_left_to_right(a3):
    product = a3.multiply(a3.basis_vector(a3.index("a")), a3.basis_vector(a3.index("b")))
    assert product == a3.basis_vector(a3.index("a*b"))
    assert not any(a3.multiply(a3.basis_vector(a3.index("b")), a3.basis_vector(a3.index("a"))))
    assert a3.multiply(a3.unit, a3.basis_vector(3)) == a3.basis_vector(3)


def test_preprojective_a3(p3):
    assert p3.dim == 10
    assert p3.radical.dim == 7
    assert p3.split_radical


def test_small_fixtures(a2, pp2, kronecker):
    assert a2.dim == 3
    assert pp2.dim == 4
    assert kronecker.dim == 4
    assert kronecker.radical.dim == 2


def test_opposite_is_an_involution(p3):
    op = p3.opposite
    assert op.name == "preproj_a3^op"
    assert op.opposite is p3
    a, b = p3.index("a"), p3.index("b")
    assert op.mult[b][a] == p3.mult[a][b]
    assert any(op.mult[b][a])


def test_corner_and_quotient_dimensions(a3, p3):
    corner, embedding = corner_algebra(a3, ["1", "2"])
    assert corner.dim == 3
    assert [a3.basis[b] for b in embedding] == ["e1", "e2", "a"]
    quotient, projection = quotient_algebra(a3, ["1", "2"])
    assert quotient.dim == 1
    assert quotient.vertices == ("3",)
    assert projection.shape == (6, 1)

    assert corner_algebra(p3, ["1", "3"])[0].dim == 4
    assert quotient_algebra(p3, ["1", "3"])[0].dim == 1


def test_two_sided_ideal(a3):
    # A·e1·A is spanned by e1, a and a*b.
    assert two_sided_ideal(a3, [0]).dim == 3


def test_vertex_subset_errors(a3):
    with pytest.raises(EmptySubset):
        vertex_subset(a3, [])
    with pytest.raises(UnknownVertex):
        vertex_subset(a3, ["7"])
    with pytest.raises(FullSubset):
        quotient_algebra(a3, ["1", "2", "3"])


def test_loop_without_relations_is_infinite():
    quiver = Quiver(("1",), (Arrow("x", "1", "1"),))
    with pytest.raises(NotFiniteDimensional):
        build_path_algebra(quiver, length_cap=5)


def test_truncated_loop():
    quiver = Quiver(("1",), (Arrow("x", "1", "1"),))
    relations = RelationSet((Relation(((Fraction(1), ("x", "x", "x")),)),))
    algebra = build_path_algebra(quiver, relations, name="loop")
    assert algebra.basis == ("e1", "x", "x*x")


def test_invalid_quivers_and_relations():
    with pytest.raises(InvalidQuiver):
        Quiver(("1",), (Arrow("a", "1", "2"),))
    quiver = Quiver(("1", "2", "3"), (Arrow("a", "1", "2"), Arrow("b", "2", "3"), Arrow("c", "1", "3")))
    mixed = Relation(((Fraction(1), ("a", "b")), (Fraction(-1), ("c",))))
    with pytest.raises(InvalidRelation):
        build_path_algebra(quiver, RelationSet((mixed,)))


def _square_with_detour():
    quiver = Quiver(
        ("1", "2", "3", "4", "5"),
        (Arrow("a", "1", "2"), Arrow("b", "2", "3"), Arrow("c", "1", "4"), Arrow("d", "4", "5"), Arrow("f", "5", "3")),
    )
    relation = Relation(((Fraction(1), ("a", "b")), (Fraction(-1), ("c", "d", "f"))))
    return quiver, RelationSet((relation,))


def test_relation_with_mixed_path_lengths():
    quiver, relations = _square_with_detour()
    algebra = build_path_algebra(quiver, relations, name="detour")
    # The longer path is the leading term and is rewritten as a*b.
    assert algebra.basis == (
        "e1", "e2", "e3", "e4", "e5", "a", "b", "c", "d", "f", "a*b", "c*d", "d*f",
    )
    ab = algebra.basis_vector(algebra.index("a*b"))
    assert algebra.mult[algebra.index("c*d")][algebra.index("f")] == ab
    assert algebra.mult[algebra.index("c")][algebra.index("d*f")] == ab
    assert algebra.radical.dim == 8


def test_mixed_relation_that_kills_a_power():
    # x*x - x*x*x truncates to x*x = 0 once x*x*x is dropped.
    quiver = Quiver(("1",), (Arrow("x", "1", "1"),))
    relations = RelationSet((Relation(((Fraction(1), ("x", "x")), (Fraction(-1), ("x", "x", "x")))),))
    algebra = build_path_algebra(quiver, relations, name="loop")
    assert algebra.basis == ("e1", "x")
