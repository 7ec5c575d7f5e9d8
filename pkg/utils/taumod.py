"""τ-tilting theory: AR translate, τ-rigidity, support τ-tilting pairs and their mutation."""
from __future__ import annotations

import hashlib
import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import networkx as nx
from cachetools import LRUCache, cached
from cachetools.keys import hashkey

from utils import constants
from utils.algebra import BasedAlgebra
from utils.errors import AmbiguousMatch, CriterionMismatch, InputError, MutationFailed, NoMatch, NotASemibrick
from utils.exactla import ZERO, Matrix, Subspace, format_scalar, vstack
from utils.rep import (
    Module, ModuleMap, cokernel, direct_sum, dualize, hom_space, indecomposable_isomorphism,
    minimal_presentation, projective, projective_sum, quotient, radical_space, zero_module,
)
from utils.structure import Semibrick, decompose, end_radical_maps, is_local, module_key


# --- AR Translate ---

def transpose(module: Module) -> Module:
    """Tr M = coker Hom(d, A) for the minimal presentation d: P1 → P0, as a right A^op-module."""
    algebra = module.algebra
    op = algebra.opposite
    presentation = minimal_presentation(module)
    p0, p1 = presentation.p0, presentation.p1
    # Hom(e_v A, A) = A e_v = e_v A^op, and Hom(d, A) is left multiplication by d_ij in A^op.
    q0 = projective_sum(op, p0.vertices)
    q1 = projective_sum(op, p1.vertices)
    components = [[presentation.component(i, j) for j in range(len(p1.vertices))] for i in range(len(p0.vertices))]
    d0, d1 = q0.module.total_dim, q1.module.total_dim
    entries = [ZERO] * (d0 * d1)
    for i in range(len(p0.vertices)):
        for z, row in q0.coordinates[i].items():
            basis_z = op.basis_vector(z)
            for j in range(len(p1.vertices)):
                if not any(components[i][j]):
                    continue
                image = q1.embed(j, op.multiply(components[i][j], basis_z))
                for c, x in enumerate(image):
                    if x:
                        entries[row * d1 + c] += x
    transposed, _ = cokernel(ModuleMap(q0.module, q1.module, Matrix(d0, d1, tuple(entries))))
    return transposed


_tau_cache = LRUCache(maxsize=constants.TAU_CACHE_SIZE)


@cached(cache=_tau_cache, key=hashkey)
def ar_translate(module: Module) -> Module:
    """τM = D Tr M."""
    tau = dualize(transpose(module))
    logging.debug(f"τ{module.dims} = {tau.dims}")
    return tau.renamed(f"τ{module.name}" if module.name else "")


def presentation_criterion(module: Module) -> bool:
    """Hom(d, M): Hom(P0, M) → Hom(P1, M) is surjective for the minimal presentation d."""
    presentation = minimal_presentation(module)
    p0, p1 = presentation.p0, presentation.p1
    # Hom(e_v A, M) = M e_v; a generator-image m_i at summand i goes to (m_i · d_ij)_j.
    columns = [(j, c) for j, v in enumerate(p1.vertices) for c in module.vertex_range(v)]
    if not columns:
        return True
    rows = []
    for i, v in enumerate(p0.vertices):
        actions = [module.act(presentation.component(i, j)) for j in range(len(p1.vertices))]
        for k in module.vertex_range(v):
            rows.append([actions[j][k, c] for j, c in columns])
    return bool(rows) and Matrix.from_rows(rows, cols=len(columns)).rank() == len(columns)


def is_tau_rigid(module: Module) -> bool:
    by_hom = hom_space(module, ar_translate(module)).dim == 0
    by_presentation = presentation_criterion(module)
    if by_hom != by_presentation:
        raise CriterionMismatch(
            f"{module!r}: Hom(M, τM) = 0 is {by_hom} but the presentation test says {by_presentation}"
        )
    return by_hom


# --- Support τ-Tilting Pairs ---

def projective_vertex(module: Module) -> int | None:
    """v when module ≅ P_v, else None."""
    if module.total_dim == 0:
        return None
    top_dims = [0] * len(module.dims)
    for k in radical_space(module).complement:
        top_dims[module.vertex_of[k]] += 1
    if sum(top_dims) != 1:
        return None
    v = top_dims.index(1)
    return v if projective(module.algebra, v).dims == module.dims else None


def in_fac(x: Module, u: Module) -> bool:
    """x is a quotient of a direct sum of copies of u."""
    if x.total_dim == 0:
        return True
    maps = hom_space(u, x).maps
    if not maps:
        return False
    return Subspace.span(vstack(*[f.matrix for f in maps])).dim == x.total_dim


@dataclass(frozen=True, eq=False)
class SttPair:
    """A basic support τ-tilting pair (M, P): indecomposable summands of M and the vertices of P."""
    algebra: BasedAlgebra
    summands: tuple[Module, ...]
    projectives: tuple[int, ...]

    @classmethod
    def of(cls, algebra: BasedAlgebra, summands: Sequence[Module], projectives: Sequence[int]) -> "SttPair":
        return cls(algebra, tuple(sorted(summands, key=module_key)), tuple(sorted(set(projectives))))

    @cached_property
    def module(self) -> Module:
        return direct_sum(self.summands, self.algebra).module

    @cached_property
    def projective_module(self) -> Module:
        return projective_sum(self.algebra, self.projectives).module

    @property
    def size(self) -> int:
        return len(self.summands) + len(self.projectives)

    @cached_property
    def signature(self) -> tuple:
        return self.projectives, tuple(sorted(s.dims for s in self.summands))

    @cached_property
    def certificate(self) -> str:
        parts = [",".join(map(str, self.projectives))]
        for s in self.summands:
            parts.append(",".join(map(str, s.dims)))
            parts.append(";".join(" ".join(format_scalar(x) for x in m.entries) for m in s.action))
        digest = hashlib.sha256("|".join(parts).encode("utf-8")).hexdigest()
        return digest[:constants.CERTIFICATE_LENGTH]

    def summand(self, k: int) -> Module:
        """Summand k of M, or of P for k ≥ |M|."""
        if k < len(self.summands):
            return self.summands[k]
        return projective(self.algebra, self.projectives[k - len(self.summands)])

    def same_as(self, other: "SttPair") -> bool:
        return self.signature == other.signature and _same_summands(self.summands, other.summands)

    def __repr__(self):
        return f"SttPair(M={[s.dims for s in self.summands]}, P={list(self.projectives)})"


def _same_summands(left: Sequence[Module], right: Sequence[Module]) -> bool:
    if len(left) != len(right):
        return False
    remaining = list(right)
    for x in left:
        for k, y in enumerate(remaining):
            if x.dims == y.dims and indecomposable_isomorphism(x, y) is not None:
                del remaining[k]
                break
        else:
            return False
    return True


def _pair_is_valid(pair: SttPair) -> bool:
    n = len(pair.algebra.vertices)
    if pair.size != n:
        return False
    if any(s.total_dim == 0 or not is_local(s) for s in pair.summands):
        return False
    for i, x in enumerate(pair.summands):
        for y in pair.summands[i + 1:]:
            if x.dims == y.dims and indecomposable_isomorphism(x, y) is not None:
                return False
    # Hom(P_v, M) = M e_v
    if any(pair.module.dims[v] for v in pair.projectives):
        return False
    return is_tau_rigid(pair.module)


def is_stt_pair(module: Module, projective_part: Module) -> bool:
    parts = decompose(module).summands
    if any(k > 1 for _, k in parts):
        return False
    summands = [m for m, _ in parts]
    projectives = []
    for q, k in decompose(projective_part).summands:
        v = projective_vertex(q)
        if v is None or k > 1:
            return False
        projectives.append(v)
    return _pair_is_valid(SttPair.of(module.algebra, summands, projectives))


# --- Mutation ---

def _others_module(pair: SttPair, k: int) -> tuple[list[Module], Module]:
    others = [s for i, s in enumerate(pair.summands) if i != k]
    return others, direct_sum(others, pair.algebra).module if others else zero_module(pair.algebra)


def has_left_mutation(pair: SttPair, k: int) -> bool:
    if k >= len(pair.summands):
        return False
    _, rest = _others_module(pair, k)
    return not in_fac(pair.summands[k], rest)


def _left_approximation(x: Module, others: Sequence[Module]) -> ModuleMap:
    """Minimal left add(others)-approximation of x."""
    chosen: list[tuple[int, Matrix]] = []
    for i, u in enumerate(others):
        hom = hom_space(x, u)
        # Maps x → u that factor through a radical map inside add(others).
        factored = []
        for j, w in enumerate(others):
            if j == i:
                radical = end_radical_maps(u)
            else:
                radical = list(hom_space(w, u).maps)
            for f in hom_space(x, w).maps:
                for g in radical:
                    factored.append(hom.coordinates(f.matrix @ g.matrix))
        span = Subspace.of_vectors(factored, hom.dim) if factored else Subspace.zero(hom.dim)
        chosen.extend((i, hom.maps[c].matrix) for c in span.complement)
    target = direct_sum([others[i] for i, _ in chosen], x.algebra)
    total = target.module.total_dim
    matrix = Matrix.zeros(x.total_dim, total)
    for s, (_, f) in enumerate(chosen):
        matrix = matrix + f @ target.inclusions[s]
    return ModuleMap(x, target.module, matrix)


def _left_mutation(pair: SttPair, k: int) -> SttPair:
    x = pair.summands[k]
    others, rest = _others_module(pair, k)
    if in_fac(x, rest):
        raise MutationFailed(f"{pair!r}: summand {k} lies in Fac of the others; no left mutation")
    approximation = _left_approximation(x, others)
    y, _ = cokernel(approximation)
    if y.total_dim == 0:
        # The new projective summand sits at the one vertex outside supp(U) and P.
        free = [v for v in range(len(pair.algebra.vertices))
                if not rest.dims[v] and v not in pair.projectives]
        if len(free) != 1:
            raise MutationFailed(f"{pair!r}: expected one vertex outside the support, found {free}")
        mutated = SttPair.of(pair.algebra, others, pair.projectives + (free[0],))
    else:
        parts = decompose(y).summands
        if len(parts) != 1 or parts[0][1] != 1:
            raise MutationFailed(f"{pair!r}: cokernel of the approximation is decomposable")
        mutated = SttPair.of(pair.algebra, others + [parts[0][0]], pair.projectives)
    if not _pair_is_valid(mutated):
        raise MutationFailed(f"left mutation of {pair!r} at {k} is not a support τ-tilting pair")
    return mutated


def dual_pair(pair: SttPair) -> tuple[SttPair, list[int]]:
    """(Tr M_np ⊕ P*, M_pr*) over A^op, with the position of each summand in the dual."""
    op = pair.algebra.opposite
    summands, projectives, origin = [], [], []
    for s in pair.summands:
        v = projective_vertex(s)
        if v is None:
            summands.append(transpose(s))
            origin.append(("summand", summands[-1]))
        else:
            projectives.append(v)
            origin.append(("projective", v))
    for v in pair.projectives:
        summands.append(projective(op, v))
        origin.append(("summand", summands[-1]))
    dual = SttPair.of(op, summands, projectives)
    positions = []
    for kind, value in origin:
        if kind == "summand":
            positions.append(next(i for i, s in enumerate(dual.summands) if s is value))
        else:
            positions.append(len(dual.summands) + dual.projectives.index(value))
    return dual, positions


def left_mutation(pair: SttPair, k: int) -> SttPair:
    if k >= len(pair.summands):
        raise MutationFailed(f"{pair!r}: position {k} is a projective summand; no left mutation")
    return _left_mutation(pair, k)


def right_mutation(pair: SttPair, k: int) -> SttPair:
    dual, positions = dual_pair(pair)
    if positions[k] >= len(dual.summands):
        raise MutationFailed(f"{pair!r}: summand {k} is projective; no right mutation")
    mutated = _left_mutation(dual, positions[k])
    back, _ = dual_pair(mutated)
    if not _pair_is_valid(back):
        raise MutationFailed(f"right mutation of {pair!r} at {k} is not a support τ-tilting pair")
    return back


def mutate(pair: SttPair, k: int) -> SttPair:
    """The other support τ-tilting pair sharing every summand but the k-th."""
    if not 0 <= k < pair.size:
        raise MutationFailed(f"{pair!r} has no summand {k}")
    if has_left_mutation(pair, k):
        return _left_mutation(pair, k)
    return right_mutation(pair, k)


# --- Enumeration ---

@dataclass(frozen=True)
class ExchangeGraph:
    algebra: BasedAlgebra
    nodes: tuple[SttPair, ...]
    # (upper node, lower node, position of the mutated summand in the upper node)
    edges: tuple[tuple[int, int, int], ...]
    complete: bool

    def degree(self, i: int) -> int:
        return sum((a == i) + (b == i) for a, b, _ in self.edges)

    def is_regular(self) -> bool:
        n = len(self.algebra.vertices)
        return all(self.degree(i) == n for i in range(len(self.nodes)))

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        for i, node in enumerate(self.nodes):
            graph.add_node(i, certificate=node.certificate, dims=[s.dims for s in node.summands],
                           projectives=list(node.projectives))
        for a, b, k in self.edges:
            graph.add_edge(a, b, summand=k)
        return graph

    def is_connected(self) -> bool:
        return not self.nodes or nx.is_weakly_connected(self.to_networkx())


def _node_key(pair: SttPair) -> tuple:
    return -pair.module.total_dim, pair.module.dims, pair.certificate


def enumerate_stt(
    algebra: BasedAlgebra, cap: int = constants.DEFAULT_NODE_CAP, dim_cap: int | None = None,
) -> ExchangeGraph:
    """Exchange graph by breadth-first left mutation from (A, 0).

    The search stops, leaving the graph incomplete, once it holds `cap` nodes or,
    when `dim_cap` is given, once a mutation produces a summand of larger dimension.
    """
    if cap < 1:
        raise InputError("the node cap must be at least 1")
    if dim_cap is not None and dim_cap < 1:
        raise InputError("the summand dimension cap must be at least 1")
    start = SttPair.of(algebra, [projective(algebra, v) for v in range(len(algebra.vertices))], [])
    nodes = [start]
    index = {start.signature: [0]}
    edges = []
    queue = deque([0])
    complete = True
    while queue:
        i = queue.popleft()
        pair = nodes[i]
        for k in range(len(pair.summands)):
            if not has_left_mutation(pair, k):
                continue
            lower = _left_mutation(pair, k)
            if dim_cap is not None and any(s.total_dim > dim_cap for s in lower.summands):
                logging.warning(f"Summand beyond dimension {dim_cap} in {algebra.name}; stopping enumeration")
                complete = False
                queue.clear()
                break
            j = next((j for j in index.get(lower.signature, []) if nodes[j].same_as(lower)), None)
            if j is None:
                if len(nodes) >= cap:
                    logging.warning(f"Node cap {cap} reached for {algebra.name}; stopping enumeration")
                    complete = False
                    queue.clear()
                    break
                j = len(nodes)
                nodes.append(lower)
                index.setdefault(lower.signature, []).append(j)
                queue.append(j)
            edges.append((i, j, k))

    order = sorted(range(len(nodes)), key=lambda i: _node_key(nodes[i]))
    position = {old: new for new, old in enumerate(order)}
    graph = ExchangeGraph(
        algebra,
        tuple(nodes[i] for i in order),
        tuple(sorted((position[a], position[b], k) for a, b, k in edges)),
        complete,
    )
    logging.info(f"Enumerated {len(graph.nodes)} support τ-tilting pairs of {algebra.name} (complete: {complete})")
    return graph


def is_tau_tilting_finite(algebra: BasedAlgebra, cap: int = constants.DEFAULT_NODE_CAP) -> str:
    complete = enumerate_stt(algebra, cap).complete
    return constants.FINITE_YES if complete else constants.FINITE_UNKNOWN


# --- Semibricks ---

_semibrick_cache = LRUCache(maxsize=constants.TAU_CACHE_SIZE)


@cached(cache=_semibrick_cache, key=hashkey)
def semibrick_of(pair: SttPair) -> Semibrick:
    """ind(M / rad_E M) for E = End(M)."""
    module = pair.module
    if module.total_dim == 0:
        return Semibrick()
    radical_maps = end_radical_maps(module)
    if radical_maps:
        space = Subspace.span(vstack(*[f.matrix for f in radical_maps]))
    else:
        space = Subspace.zero(module.total_dim)
    top_part, _ = quotient(module, space)
    semibrick = Semibrick.of(m for m, _ in decompose(top_part).summands)
    if not semibrick.is_valid():
        raise NotASemibrick(f"M/rad_E M of {pair!r} is not a semibrick")
    return semibrick


def stt_of_semibrick(semibrick: Semibrick, graph: ExchangeGraph) -> SttPair:
    matches = [node for node in graph.nodes if semibrick_of(node).matches(semibrick)]
    if not matches:
        raise NoMatch(f"no support τ-tilting pair of {graph.algebra.name} has this semibrick")
    if len(matches) > 1:
        raise AmbiguousMatch(f"{len(matches)} support τ-tilting pairs share one semibrick")
    return matches[0]
