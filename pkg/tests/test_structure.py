from utils.rep import direct_sum, is_isomorphic, projective, regular_module, simple
from utils.structure import (
    Semibrick, brick_report, decompose, end_radical, is_brick, is_local, is_semibrick,
)


def test_end_radical_of_p2(p3):
    p2 = projective(p3, "2")
    assert end_radical(p2).dim == 1
    assert is_local(p2)
    assert not is_brick(p2)


def test_brick_report(p3, a3):
    report = brick_report(simple(p3, "2"))
    assert report.is_brick
    assert (report.end_dim, report.radical_dim, report.flag) == (1, 0, None)

    report = brick_report(projective(p3, "2"))
    assert not report.is_brick
    assert (report.end_dim, report.radical_dim) == (2, 1)

    # End(S1 ⊕ S1) is a full matrix ring: semisimple, but it splits over the rationals.
    doubled = direct_sum([simple(a3, "1"), simple(a3, "1")]).module
    report = brick_report(doubled)
    assert (report.end_dim, report.radical_dim, report.flag) == (4, 0, None)


def test_semibricks(a3):
    simples = [simple(a3, v) for v in "123"]
    assert is_semibrick(simples)
    assert not is_semibrick([projective(a3, "1"), simple(a3, "1")])
    assert Semibrick.of(simples).is_valid()
    assert Semibrick.of(simples).matches(Semibrick.of(reversed(simples)))
    assert not Semibrick.of(simples[:2]).matches(Semibrick.of(simples[1:]))
    assert len(Semibrick()) == 0


def test_decompose_regular_module(a3, p3):
    parts = decompose(regular_module(a3))
    assert parts.count == 3
    assert parts.is_basic()
    assert [m.dims for m in parts.indecomposables] == [(1, 1, 1), (0, 1, 1), (0, 0, 1)]

    parts = decompose(regular_module(p3))
    assert sorted(m.dims for m in parts.indecomposables) == [(1, 1, 1), (1, 1, 1), (1, 2, 1)]


def test_decompose_with_multiplicities(a3):
    module = direct_sum([simple(a3, "2"), projective(a3, "1"), simple(a3, "2")]).module
    parts = decompose(module)
    assert [(m.dims, k) for m, k in parts.summands] == [((1, 1, 1), 1), ((0, 1, 0), 2)]
    assert not parts.is_basic()
    assert len(parts.parts) == 3
    assert is_isomorphic(parts.reassemble(), module) is not None


def test_indecomposables_stay_whole(p3):
    assert decompose(projective(p3, "2")).count == 1
    assert decompose(simple(p3, "1")).count == 1
