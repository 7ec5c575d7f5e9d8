import pytest

from utils import constants
from utils.errors import InputError, MutationFailed
from utils.rep import direct_sum, injective, is_isomorphic, projective, simple, zero_module
from utils.taumod import (
    SttPair, ar_translate, dual_pair, enumerate_stt, in_fac, is_stt_pair, is_tau_rigid,
    is_tau_tilting_finite, left_mutation, mutate, presentation_criterion, projective_vertex,
    right_mutation, semibrick_of, stt_of_semibrick, transpose,
)


def test_ar_translate_on_a3(a3):
    assert is_isomorphic(ar_translate(simple(a3, "1")), simple(a3, "2")) is not None
    assert is_isomorphic(ar_translate(simple(a3, "2")), simple(a3, "3")) is not None
    for v in "123":
        assert ar_translate(projective(a3, v)).total_dim == 0
    assert transpose(simple(a3, "1")).algebra is a3.opposite


def test_ar_translate_of_injective_nonprojective(a3):
    # τ I2 = τ(1/2) is the simple at the next vertex along the arrow.
    tau = ar_translate(injective(a3, "2"))
    assert is_isomorphic(tau, projective(a3, "2")) is not None


def test_tau_rigidity_criteria_agree(a3, p3):
    for algebra in (a3, p3):
        for v in algebra.vertices:
            for module in (simple(algebra, v), projective(algebra, v), injective(algebra, v)):
                assert is_tau_rigid(module) == presentation_criterion(module)


def test_tau_rigid_examples(a3, p3):
    assert is_tau_rigid(simple(a3, "1"))
    assert is_tau_rigid(projective(a3, "1"))
    assert is_tau_rigid(simple(p3, "2"))
    # τ(S1 ⊕ S2) = S2 ⊕ S3 receives the identity of S2.
    assert not is_tau_rigid(direct_sum([simple(a3, "1"), simple(a3, "2")]).module)


def test_projective_vertex_and_fac(a3):
    assert projective_vertex(projective(a3, "2")) == 1
    assert projective_vertex(simple(a3, "3")) == 2
    assert projective_vertex(simple(a3, "2")) is None
    assert in_fac(simple(a3, "1"), projective(a3, "1"))
    assert not in_fac(simple(a3, "2"), projective(a3, "1"))
    assert in_fac(zero_module(a3), simple(a3, "1"))


def test_stt_pair_validation(a3):
    regular = direct_sum([projective(a3, v) for v in "123"]).module
    assert is_stt_pair(regular, zero_module(a3))
    assert is_stt_pair(zero_module(a3), direct_sum([projective(a3, v) for v in "123"]).module)
    simples = direct_sum([simple(a3, v) for v in "123"]).module
    assert not is_stt_pair(simples, zero_module(a3))
    # Hom(P1, S1) ≠ 0
    assert not is_stt_pair(
        direct_sum([simple(a3, "1"), simple(a3, "3")]).module, projective(a3, "1")
    )
    assert is_stt_pair(direct_sum([simple(a3, "1"), simple(a3, "3")]).module, projective(a3, "2"))


def test_enumeration_a3(a3_graph):
    assert a3_graph.complete
    assert len(a3_graph.nodes) == 14
    assert a3_graph.is_regular()
    assert a3_graph.is_connected()
    first, last = a3_graph.nodes[0], a3_graph.nodes[-1]
    assert first.module.total_dim == 6 and first.projectives == ()
    assert last.summands == () and last.projectives == (0, 1, 2)
    assert len(a3_graph.edges) == 14 * 3 // 2


def test_enumeration_p3(p3_graph):
    assert p3_graph.complete
    assert len(p3_graph.nodes) == 24
    assert p3_graph.is_regular()
    assert p3_graph.to_networkx().number_of_nodes() == 24


def test_enumeration_order_is_canonical(a3_graph):
    keys = [(-n.module.total_dim, n.module.dims) for n in a3_graph.nodes]
    assert keys == sorted(keys)
    certificates = [n.certificate for n in a3_graph.nodes]
    assert len(set(certificates)) == 14
    assert all(len(c) == constants.CERTIFICATE_LENGTH for c in certificates)


def test_small_algebras(a2, pp2):
    assert len(enumerate_stt(a2).nodes) == 5
    assert len(enumerate_stt(pp2).nodes) == 6


def test_kronecker_is_not_finished(kronecker):
    graph = enumerate_stt(kronecker, cap=8)
    assert not graph.complete
    assert len(graph.nodes) == 8
    assert is_tau_tilting_finite(kronecker, cap=8) == constants.FINITE_UNKNOWN


def test_finiteness_check(a3):
    assert is_tau_tilting_finite(a3) == constants.FINITE_YES
    with pytest.raises(InputError):
        enumerate_stt(a3, cap=0)


def test_cap_stops_enumeration(a3):
    graph = enumerate_stt(a3, cap=5)
    assert not graph.complete
    assert len(graph.nodes) == 5


def test_dimension_cap_is_opt_in(a3, a3_graph, kronecker):
    # No summand of A3 has dimension above 3, so a cap of 3 changes nothing.
    capped = enumerate_stt(a3, dim_cap=3)
    assert capped.complete
    assert [n.certificate for n in capped.nodes] == [n.certificate for n in a3_graph.nodes]
    assert capped.edges == a3_graph.edges
    assert not enumerate_stt(a3, dim_cap=2).complete
    chain = enumerate_stt(kronecker, dim_cap=5)
    assert not chain.complete
    assert all(s.total_dim <= 5 for node in chain.nodes for s in node.summands)
    with pytest.raises(InputError):
        enumerate_stt(a3, dim_cap=0)


def test_edges_are_left_mutations(a3_graph):
    nodes = a3_graph.nodes
    for upper, lower, k in a3_graph.edges:
        assert left_mutation(nodes[upper], k).same_as(nodes[lower])


def test_mutation_is_an_involution(a3_graph):
    nodes = a3_graph.nodes
    for upper, lower, _ in a3_graph.edges[:6]:
        below = nodes[lower]
        assert any(mutate(below, j).same_as(nodes[upper]) for j in range(below.size))


def test_mutation_errors(a3_graph):
    bottom = a3_graph.nodes[-1]
    with pytest.raises(MutationFailed):
        left_mutation(bottom, 0)
    with pytest.raises(MutationFailed):
        mutate(bottom, 3)
    top_pair = a3_graph.nodes[0]
    # Every summand of A is projective; it has no right mutation.
    with pytest.raises(MutationFailed):
        right_mutation(top_pair, 0)


def test_dual_pair_swaps_projectives(a3_graph, a3):
    dual, positions = dual_pair(a3_graph.nodes[0])
    assert dual.algebra is a3.opposite
    assert dual.summands == ()
    assert sorted(positions) == [0, 1, 2]
    dual, _ = dual_pair(a3_graph.nodes[-1])
    assert len(dual.summands) == 3 and dual.projectives == ()


def test_semibricks_are_injective(a3_graph, p3_graph):
    for graph in (a3_graph, p3_graph):
        semibricks = [semibrick_of(node) for node in graph.nodes]
        assert all(s.is_valid() for s in semibricks)
        for i, s in enumerate(semibricks):
            for t in semibricks[i + 1:]:
                assert not s.matches(t)


def test_semibrick_of_regular_and_zero(a3_graph):
    top_bricks = semibrick_of(a3_graph.nodes[0])
    assert sorted(b.dims for b in top_bricks) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert len(semibrick_of(a3_graph.nodes[-1])) == 0


def test_stt_of_semibrick_finds_the_node(a3_graph):
    for node in a3_graph.nodes[::3]:
        assert stt_of_semibrick(semibrick_of(node), a3_graph) is node


def test_summands_of_enumerated_pairs_are_tau_rigid(a3_graph, p3_graph):
    for graph in (a3_graph, p3_graph):
        for node in graph.nodes:
            for summand in node.summands:
                assert is_tau_rigid(summand)


def test_pair_constructor_is_canonical(a3):
    one = SttPair.of(a3, [simple(a3, "3"), simple(a3, "1")], [1])
    two = SttPair.of(a3, [simple(a3, "1"), simple(a3, "3")], [1, 1])
    assert one.certificate == two.certificate
    assert one.same_as(two)


def test_mutations_of_the_bottom_pair_have_one_summand(a3_graph, p3_graph):
    for graph in (a3_graph, p3_graph):
        bottom = graph.nodes[-1]
        assert bottom.summands == ()
        for j in range(bottom.size):
            upper = mutate(bottom, j)
            assert len(upper.summands) == 1
            assert any(upper.same_as(node) for node in graph.nodes)
