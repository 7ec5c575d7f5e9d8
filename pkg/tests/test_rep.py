import pytest

from utils.errors import AlgebraMismatch, InvalidModule, UnknownModuleLiteral
from utils.exactla import Matrix, det, inverse
from utils.rep import (
    Module, ModuleMap, cokernel, direct_sum, dualize, hom_space, injective, is_isomorphic, kernel,
    loewy_layers, minimal_presentation, module_from_actions, module_literal, projective,
    projective_cover, radical, regular_module, simple, socle, top, zero_module,
)


def test_standard_modules_a3(a3):
    assert simple(a3, "2").dims == (0, 1, 0)
    assert simple(a3, "2").name == "S2"
    assert [projective(a3, v).dims for v in "123"] == [(1, 1, 1), (0, 1, 1), (0, 0, 1)]
    assert [injective(a3, v).dims for v in "123"] == [(1, 0, 0), (1, 1, 0), (1, 1, 1)]
    assert regular_module(a3).total_dim == a3.dim
    for module in (simple(a3, "1"), projective(a3, "2"), injective(a3, "2")):
        module.check()


def test_injective_of_a3_sink_is_projective_of_source(a3):
    assert is_isomorphic(injective(a3, "3"), projective(a3, "1")) is not None
    assert is_isomorphic(simple(a3, "3"), projective(a3, "3")) is not None
    assert is_isomorphic(simple(a3, "1"), simple(a3, "2")) is None


def test_hom_dimensions(a3):
    p1, s1, s3 = projective(a3, "1"), simple(a3, "1"), simple(a3, "3")
    assert hom_space(p1, s1).dim == 1
    assert hom_space(s3, p1).dim == 1
    assert hom_space(p1, s3).dim == 0
    assert hom_space(p1, p1).dim == 1
    for f in hom_space(projective(a3, "2"), p1).maps:
        assert f.is_homomorphism()


def test_hom_space_coordinates(p3):
    p2 = projective(p3, "2")
    hom = hom_space(p2, p2)
    assert hom.dim == 2
    f = hom.combine([3, -1])
    assert hom.coordinates(f) == (3, -1)


def test_radical_layers(a3, p3):
    p1 = projective(a3, "1")
    assert radical(p1)[0].dims == (0, 1, 1)
    assert top(p1)[0].dims == (1, 0, 0)
    assert socle(p1)[0].dims == (0, 0, 1)
    assert loewy_layers(p1) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert loewy_layers(projective(p3, "2")) == [(0, 1, 0), (1, 0, 1), (0, 1, 0)]


def test_kernel_and_cokernel_of_cover(a3):
    cover, p = projective_cover(simple(a3, "2"))
    assert cover.vertices == (1,)
    assert cover.module.dims == (0, 1, 1)
    assert kernel(p)[0].dims == (0, 0, 1)
    assert cokernel(p)[0].total_dim == 0


def test_minimal_presentation_of_simple(a3):
    presentation = minimal_presentation(simple(a3, "1"))
    assert presentation.p0.vertices == (0,)
    assert presentation.p1.vertices == (1,)
    assert presentation.d.is_homomorphism()
    assert (presentation.d.matrix @ presentation.cover.matrix).is_zero()


def test_direct_sum_inclusions(a3):
    s1, s2 = simple(a3, "1"), simple(a3, "2")
    total = direct_sum([s1, s2])
    assert total.module.dims == (1, 1, 0)
    for s, inclusion in enumerate(total.inclusions):
        assert inclusion @ total.projection(s) == Matrix.identity(1)
    with pytest.raises(InvalidModule):
        direct_sum([])


def test_dual_lives_over_the_opposite(a3):
    dual = dualize(projective(a3, "1"))
    assert dual.algebra is a3.opposite
    assert dual.name == "DP1"
    assert dualize(dual).algebra is a3


def test_module_literals(a3):
    assert module_literal(a3, "P2").dims == (0, 1, 1)
    assert module_literal(a3, " S3 ").dims == (0, 0, 1)
    assert module_literal(a3, "I2").dims == (1, 1, 0)
    for text in ("P9", "Q1", ""):
        with pytest.raises(UnknownModuleLiteral):
            module_literal(a3, text)


def test_actions_must_respect_the_multiplication(a3):
    one, nought = Matrix.from_rows([[1]]), Matrix.from_rows([[0]])
    actions = [one, nought, nought, one, nought, nought]
    with pytest.raises(InvalidModule):
        module_from_actions(a3, actions)
    good = module_from_actions(a3, [one, nought, nought, nought, nought, nought])
    assert good == simple(a3, "1")


def test_maps_and_zero_module(a3):
    p1 = projective(a3, "1")
    assert ModuleMap.identity(p1).is_isomorphism()
    zero = zero_module(a3)
    assert zero.is_zero()
    assert ModuleMap.zero(p1, p1).is_zero()
    assert is_isomorphic(zero, zero_module(a3)) is not None


def test_isomorphism_needs_one_algebra(a3, p3):
    with pytest.raises(AlgebraMismatch):
        is_isomorphic(simple(a3, "1"), simple(p3, "1"))


def _standard_modules(algebra):
    return [make(algebra, v) for v in algebra.vertices for make in (projective, simple, injective)]


def _change_basis(module):
    """The same module after an invertible change of basis inside each vertex block."""
    d = module.total_dim
    rows = [[0] * d for _ in range(d)]
    for v in range(len(module.dims)):
        block = module.vertex_range(v)
        for i in block:
            rows[i][i] = 2 if i == block.start else -1
        if len(block) > 1:
            rows[block.start][block.start + 1] = 1
    t = Matrix.from_rows(rows, cols=d)
    return Module(module.algebra, module.dims, tuple(inverse(t) @ a @ t for a in module.action))


def test_isomorphism_survives_a_change_of_basis(a3, p3):
    for module in _standard_modules(a3) + _standard_modules(p3):
        moved = _change_basis(module).check()
        iso = is_isomorphic(module, moved)
        assert iso is not None
        assert iso.is_homomorphism()
        assert det(iso.matrix) != 0


def test_hom_dimensions_are_preserved_by_duality(a3, p3):
    for algebra in (a3, p3):
        modules = _standard_modules(algebra)
        for m in modules:
            for n in modules:
                assert hom_space(m, n).dim == hom_space(dualize(n), dualize(m)).dim


def test_presentations_recover_the_module(a3, p3):
    for module in _standard_modules(a3) + _standard_modules(p3):
        presentation = minimal_presentation(module)
        assert presentation.d.is_homomorphism()
        recovered, _ = cokernel(presentation.d)
        assert is_isomorphic(recovered, module) is not None
