"""The idempotent recollement mod B/⟨e⟩ ⇄ mod B ⇄ mod eBe and its gluing constructions."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from cachetools import LRUCache, cached
from cachetools.keys import hashkey

from utils import constants
from utils.algebra import BasedAlgebra, vertex_subset, corner_algebra, quotient_algebra
from utils.errors import (
    AlgebraMismatch, CapExceeded, GluingNotSemibrick, ThetaNotWellDefined, VerificationFailed,
)
from utils.exactla import ZERO, Matrix, Subspace, hstack, inverse, nullspace, solve, vstack
from utils.rep import (
    Module, ModuleMap, assemble, hom_space, image, injective, is_isomorphic, minimal_presentation,
    projective, quotient, radical, simple, submodule, top, zero_module,
)
from utils.structure import Semibrick, is_semibrick
from utils.taumod import ExchangeGraph, SttPair, enumerate_stt, semibrick_of, stt_of_semibrick


# --- Functor Data ---

@dataclass(frozen=True, eq=False)
class Tensor:
    """j_!N = N ⊗_{eBe} eB with the passage between tensor and module coordinates."""
    module: Module
    relations: Subspace
    # dim(N)·|eB| × dim(j_!N): tensor coordinates (n, x) to module coordinates
    to_module: Matrix
    # dim(j_!N) × dim(N)·|eB|: a tensor representative of each module basis vector
    from_module: Matrix


@dataclass(frozen=True, eq=False)
class Coinduced:
    """j_*N = Hom_{eBe}(Be, N) with the passage between module coordinates and maps."""
    module: Module
    solutions: Subspace
    free: tuple[int, ...]
    # dim(j_*N) × |Be|·dim(N): the map Be → N represented by each module basis vector
    to_maps: Matrix
    # h × dim(j_*N): solution-basis coordinates to module coordinates
    to_module: Matrix

    def coordinates(self, phi: Sequence) -> tuple:
        if not self.solutions.contains(phi):
            raise ThetaNotWellDefined("map Be → N is not eBe-linear")
        return self.to_module.vecmul(tuple(phi[f] for f in self.free))


_tensor_cache = LRUCache(maxsize=constants.END_CACHE_SIZE)
_coinduced_cache = LRUCache(maxsize=constants.END_CACHE_SIZE)
_theta_cache = LRUCache(maxsize=constants.END_CACHE_SIZE)


@dataclass(frozen=True, eq=False)
class Recollement:
    middle: BasedAlgebra
    subset: tuple[int, ...]
    left: BasedAlgebra
    projection: Matrix
    right: BasedAlgebra
    embedding: tuple[int, ...]

    @classmethod
    def from_idempotent(cls, algebra: BasedAlgebra, subset: Iterable) -> "Recollement":
        positions = vertex_subset(algebra, subset)
        left, projection = quotient_algebra(algebra, positions)
        right, embedding = corner_algebra(algebra, positions)
        logging.info(
            f"Recollement of {algebra.name} at {[algebra.vertices[v] for v in positions]}: "
            f"left dim {left.dim}, right dim {right.dim}"
        )
        return cls(algebra, positions, left, projection, right, embedding)

    # --- Index Data ---

    @cached_property
    def left_lift(self) -> tuple[int, ...]:
        """Middle basis index representing each left basis element."""
        return tuple(self.middle.index(label) for label in self.left.basis)

    @cached_property
    def left_vertices(self) -> tuple[int, ...]:
        return tuple(v for v in range(len(self.middle.vertices)) if v not in self.subset)

    @cached_property
    def e_b(self) -> tuple[int, ...]:
        """Basis of eB: middle basis elements starting in the subset."""
        return tuple(b for b, (s, _) in enumerate(self.middle.blocks) if s in self.subset)

    @cached_property
    def b_e(self) -> tuple[int, ...]:
        """Basis of Be: middle basis elements ending in the subset."""
        return tuple(b for b, (_, t) in enumerate(self.middle.blocks) if t in self.subset)

    def _corner_element(self, vector: Sequence) -> tuple:
        return tuple(vector[b] for b in self.embedding)

    def _expect(self, module: Module, algebra: BasedAlgebra, functor: str):
        if module.algebra is not algebra:
            raise AlgebraMismatch(f"{functor} expects a module over {algebra.name}, got {module.algebra.name}")

    # --- i_*, i^*, i^! ---

    def i_star(self, module: Module) -> Module:
        self._expect(module, self.left, "i_*")
        d = module.total_dim
        actions = tuple(
            _combine(self.projection.row(b), module.action, d) for b in range(self.middle.dim)
        )
        dims = [0] * len(self.middle.vertices)
        for w, v in enumerate(self.left_vertices):
            dims[v] = module.dims[w]
        return Module(self.middle, tuple(dims), actions, module.name)

    def i_star_map(self, f: ModuleMap) -> ModuleMap:
        return ModuleMap(self.i_star(f.source), self.i_star(f.target), f.matrix)

    def _restrict_left(self, module: Module) -> Module:
        """A middle module annihilated by ⟨e⟩, viewed over the left algebra."""
        actions = tuple(module.action[b] for b in self.left_lift)
        dims = tuple(module.dims[v] for v in self.left_vertices)
        return Module(self.left, dims, actions, module.name)

    def _generated_by_e(self, module: Module) -> Subspace:
        """(M·e)·B."""
        d = module.total_dim
        rows = [module.action[module.algebra.vertex_idems[v]] @ module.action[b]
                for v in self.subset for b in range(self.middle.dim)]
        return Subspace.span(vstack(*rows, cols=d)) if d else Subspace.zero(0)

    def i_upper_star(self, module: Module) -> Module:
        self._expect(module, self.middle, "i^*")
        quotient_module, _ = quotient(module, self._generated_by_e(module))
        return self._restrict_left(quotient_module)

    def i_upper_star_map(self, f: ModuleMap) -> ModuleMap:
        source_space = self._generated_by_e(f.source)
        target_space = self._generated_by_e(f.target)
        matrix = f.matrix.select_rows(source_space.complement) @ target_space.projection
        return ModuleMap(self.i_upper_star(f.source), self.i_upper_star(f.target), matrix)

    def _killed_by_e(self, module: Module) -> Subspace:
        """Largest submodule N with N·e = 0."""
        d = module.total_dim
        current = Subspace.of_vectors(
            [[1 if k == c else 0 for k in range(d)]
             for c in range(d) if module.vertex_of[c] not in self.subset],
            d,
        ) if d else Subspace.zero(0)
        while current.dim:
            blocks = [current.basis @ module.action[b] @ current.projection for b in range(self.middle.dim)]
            stacked = hstack(*blocks)
            keep = nullspace(stacked.T)[0]
            if keep.rows == current.dim:
                break
            current = Subspace.span(keep @ current.basis) if keep.rows else Subspace.zero(d)
        return current

    def i_shriek(self, module: Module) -> Module:
        self._expect(module, self.middle, "i^!")
        sub, _ = submodule(module, self._killed_by_e(module))
        return self._restrict_left(sub)

    def i_shriek_map(self, f: ModuleMap) -> ModuleMap:
        source_space = self._killed_by_e(f.source)
        target_space = self._killed_by_e(f.target)
        moved = source_space.basis @ f.matrix
        matrix = Matrix.from_rows([target_space.coordinates(moved.row(t)) for t in range(moved.rows)],
                                  cols=target_space.dim)
        return ModuleMap(self.i_shriek(f.source), self.i_shriek(f.target), matrix)

    # --- j^*, j_!, j_* ---

    def _corner_coordinates(self, module: Module) -> list[int]:
        return [k for k in range(module.total_dim) if module.vertex_of[k] in self.subset]

    def j_upper_star(self, module: Module) -> Module:
        self._expect(module, self.middle, "j^*")
        kept = self._corner_coordinates(module)
        actions = tuple(module.action[b].submatrix(kept, kept) for b in self.embedding)
        dims = tuple(module.dims[v] for v in self.subset)
        return Module(self.right, dims, actions, module.name)

    def j_upper_star_map(self, f: ModuleMap) -> ModuleMap:
        matrix = f.matrix.submatrix(self._corner_coordinates(f.source), self._corner_coordinates(f.target))
        return ModuleMap(self.j_upper_star(f.source), self.j_upper_star(f.target), matrix)

    def tensor(self, module: Module) -> Tensor:
        return _tensor(self, module)

    def j_shriek(self, module: Module) -> Module:
        return self.tensor(module).module

    def j_shriek_map(self, f: ModuleMap) -> ModuleMap:
        source, target = self.tensor(f.source), self.tensor(f.target)
        width = len(self.e_b)
        d_s, d_t = f.source.total_dim, f.target.total_dim
        # n ⊗ x ↦ f(n) ⊗ x
        entries = [ZERO] * (d_s * width * d_t * width)
        for n in range(d_s):
            for n2, c in enumerate(f.matrix.row(n)):
                if c:
                    for x in range(width):
                        entries[(n * width + x) * (d_t * width) + n2 * width + x] = c
        lifted = Matrix(d_s * width, d_t * width, tuple(entries))
        return ModuleMap(source.module, target.module, source.from_module @ lifted @ target.to_module)

    def coinduced(self, module: Module) -> Coinduced:
        return _coinduced(self, module)

    def j_star(self, module: Module) -> Module:
        return self.coinduced(module).module

    def j_star_map(self, f: ModuleMap) -> ModuleMap:
        source, target = self.coinduced(f.source), self.coinduced(f.target)
        width = len(self.b_e)
        rows = []
        for k in range(source.module.total_dim):
            phi = source.to_maps.row(k)
            composed = []
            for y in range(width):
                block = phi[y * f.source.total_dim:(y + 1) * f.source.total_dim]
                composed.extend(f.matrix.vecmul(block))
            rows.append(target.coordinates(composed))
        return ModuleMap(source.module, target.module,
                         Matrix.from_rows(rows, cols=target.module.total_dim))

    # --- Intermediate Extension ---

    def theta(self, module: Module) -> ModuleMap:
        return _theta(self, module)

    def intermediate_extension(self, module: Module) -> Module:
        extension, _ = image(self.theta(module))
        return extension.renamed(module.name)

    def intermediate_extension_map(self, f: ModuleMap) -> ModuleMap:
        source, inclusion = image(self.theta(f.source))
        target, target_inclusion = image(self.theta(f.target))
        moved = inclusion.matrix @ self.j_star_map(f).matrix
        rows = []
        for t in range(moved.rows):
            coordinates = solve(target_inclusion.matrix.T, moved.row(t))
            if coordinates is None:
                raise ThetaNotWellDefined("j_*(f) does not preserve the image of θ")
            rows.append(coordinates)
        return ModuleMap(source, target, Matrix.from_rows(rows, cols=target.total_dim))

    def theta_is_natural(self, f: ModuleMap) -> bool:
        """θ_N' ∘ j_!(f) = j_*(f) ∘ θ_N."""
        left = self.j_shriek_map(f).matrix @ self.theta(f.target).matrix
        right = self.theta(f.source).matrix @ self.j_star_map(f).matrix
        return left == right


def _combine(coefficients: Sequence, matrices: Sequence[Matrix], d: int) -> Matrix:
    acc = Matrix.zeros(d, d)
    for c, m in zip(coefficients, matrices):
        if c:
            acc = acc + m.scale(c)
    return acc


@cached(cache=_tensor_cache, key=hashkey)
def _tensor(rec: Recollement, module: Module) -> Tensor:
    rec._expect(module, rec.right, "j_!")
    middle = rec.middle
    e_b = rec.e_b
    position = {b: k for k, b in enumerate(e_b)}
    width = len(e_b)
    d = module.total_dim
    size = d * width
    if size == 0:
        zero = zero_module(middle)
        return Tensor(zero, Subspace.zero(0), Matrix.zeros(0, 0), Matrix.zeros(0, 0))

    # 1. Balancing relations n·x ⊗ y − n ⊗ x·y for x in eBe, y in eB
    relations = []
    for c, x in enumerate(rec.embedding):
        act = module.action[c]
        for n in range(d):
            for y in e_b:
                v = [ZERO] * size
                for n2, a in enumerate(act.row(n)):
                    if a:
                        v[n2 * width + position[y]] += a
                for z, a in enumerate(middle.mult[x][y]):
                    if a:
                        v[n * width + position[z]] -= a
                if any(v):
                    relations.append(v)
    relation_space = Subspace.of_vectors(relations, size) if relations else Subspace.zero(size)

    # 2. Right B-action on the second factor, then pass to the quotient
    complement = relation_space.complement
    if not complement:
        zero = zero_module(middle)
        return Tensor(zero, relation_space, Matrix.zeros(size, 0), Matrix.zeros(0, size))
    projection = relation_space.projection
    actions = []
    for b in range(middle.dim):
        entries = [ZERO] * (size * size)
        for n in range(d):
            for k, y in enumerate(e_b):
                for z, a in enumerate(middle.mult[y][b]):
                    if a:
                        entries[(n * width + k) * size + n * width + position[z]] += a
        actions.append(Matrix(size, size, tuple(entries)).select_rows(complement) @ projection)
    result, change = assemble(middle, actions, f"j!{module.name}" if module.name else "")
    sections = Matrix.unit_rows(complement, size)
    if change is None:
        return Tensor(result, relation_space, projection, sections)
    return Tensor(result, relation_space, projection @ inverse(change), change @ sections)


@cached(cache=_coinduced_cache, key=hashkey)
def _coinduced(rec: Recollement, module: Module) -> Coinduced:
    rec._expect(module, rec.right, "j_*")
    middle = rec.middle
    b_e = rec.b_e
    position = {b: k for k, b in enumerate(b_e)}
    width = len(b_e)
    d = module.total_dim
    size = width * d
    if size == 0:
        return Coinduced(zero_module(middle), Subspace.zero(0), (), Matrix.zeros(0, 0), Matrix.zeros(0, 0))

    # φ(y·x) = φ(y)·x for y in Be, x in eBe; unknown φ(y)[n] sits at y·d + n
    equations = []
    for c, x in enumerate(rec.embedding):
        act = module.action[c]
        for y in b_e:
            for col in range(d):
                v = [ZERO] * size
                for z, a in enumerate(middle.mult[y][x]):
                    if a:
                        v[position[z] * d + col] += a
                for n in range(d):
                    a = act[n, col]
                    if a:
                        v[position[y] * d + n] -= a
                if any(v):
                    equations.append(v)
    basis, free = nullspace(Matrix.from_rows(equations, cols=size))
    h = basis.rows
    if h == 0:
        return Coinduced(zero_module(middle), Subspace.zero(size), (), Matrix.zeros(0, size), Matrix.zeros(0, 0))
    solutions = Subspace.span(basis)

    # (φ·b)(y) = φ(b·y)
    actions = []
    for b in range(middle.dim):
        rows = []
        for k in range(h):
            phi = basis.row(k)
            moved = [ZERO] * size
            for y in b_e:
                for z, a in enumerate(middle.mult[b][y]):
                    if a:
                        for n in range(d):
                            moved[position[y] * d + n] += a * phi[position[z] * d + n]
            rows.append([moved[f] for f in free])
        actions.append(Matrix.from_rows(rows, cols=h))
    result, change = assemble(middle, actions, f"j*{module.name}" if module.name else "")
    if change is None:
        return Coinduced(result, solutions, free, basis, Matrix.identity(h))
    return Coinduced(result, solutions, free, change @ basis, inverse(change))


@cached(cache=_theta_cache, key=hashkey)
def _theta(rec: Recollement, module: Module) -> ModuleMap:
    """θ(n ⊗ x)(y) = n·(x·y) from j_!N to j_*N."""
    tensor, coinduced = rec.tensor(module), rec.coinduced(module)
    if tensor.module.total_dim == 0 or coinduced.module.total_dim == 0:
        return ModuleMap.zero(tensor.module, coinduced.module)
    middle = rec.middle
    d = module.total_dim
    e_b, b_e = rec.e_b, rec.b_e
    width_out = len(b_e)
    rows = []
    for n in range(d):
        for x in e_b:
            phi = []
            for y in b_e:
                corner = rec._corner_element(middle.mult[x][y])
                phi.extend(module.act(corner).row(n))
            rows.append(phi)
    on_tensors = Matrix.from_rows(rows, cols=width_out * d)
    relations = tensor.relations
    if relations.dim and not (relations.basis @ on_tensors).is_zero():
        raise ThetaNotWellDefined("θ does not vanish on the balancing relations")
    representatives = tensor.from_module @ on_tensors
    matrix = Matrix.from_rows(
        [coinduced.coordinates(representatives.row(k)) for k in range(representatives.rows)],
        cols=coinduced.module.total_dim,
    )
    theta = ModuleMap(tensor.module, coinduced.module, matrix)
    if not theta.is_homomorphism():
        raise ThetaNotWellDefined("θ is not B-linear")
    return theta


# --- Gluing ---

def glue_semibricks(rec: Recollement, left: Semibrick, right: Semibrick) -> Semibrick:
    """i_*(left) ⊔ j_!*(right)."""
    bricks = [rec.i_star(s) for s in left] + [rec.intermediate_extension(t) for t in right]
    glued = Semibrick.of(bricks)
    if len(glued) != len(left) + len(right) or not is_semibrick(glued.bricks):
        raise GluingNotSemibrick("glued set is not a semibrick")
    return glued


@dataclass(frozen=True)
class VariantResult:
    modules: tuple[Module, ...]
    is_semibrick: bool
    # (source index, target index, dim Hom) of the first obstruction
    witness: tuple[int, int, int] | None = None


def glue_variant(rec: Recollement, left: Semibrick, right: Semibrick, mode: str) -> VariantResult:
    """i_*(left) ⊔ j_!(right) or i_*(left) ⊔ j_*(right), verified directly."""
    if mode not in ("shriek", "star"):
        raise ValueError(f"unknown gluing mode '{mode}'")
    extend = rec.j_shriek if mode == "shriek" else rec.j_star
    modules = tuple([rec.i_star(s) for s in left] + [extend(t) for t in right])
    for i, x in enumerate(modules):
        for j, y in enumerate(modules):
            dim = hom_space(x, y).dim
            if (i == j and dim != 1) or (i != j and dim):
                logging.info(f"Gluing via j_{mode} fails: dim Hom(#{i}, #{j}) = {dim}")
                return VariantResult(modules, False, (i, j, dim))
    return VariantResult(modules, True)


def glue_stt(rec: Recollement, left: SttPair, right: SttPair, graph: ExchangeGraph) -> SttPair:
    glued = glue_semibricks(rec, semibrick_of(left), semibrick_of(right))
    return stt_of_semibrick(glued, graph)


@dataclass(frozen=True)
class GlueRow:
    left: SttPair
    right: SttPair
    glued: SttPair | None
    semibrick: Semibrick


@dataclass(frozen=True)
class GlueTable:
    rec: Recollement
    rows: tuple[GlueRow, ...]
    left_graph: ExchangeGraph
    right_graph: ExchangeGraph
    middle_graph: ExchangeGraph | None = None

    @property
    def glued_count(self) -> int:
        return len(self.rows)

    @property
    def nonempty_count(self) -> int:
        return sum(1 for row in self.rows if len(row.semibrick))

    def is_injective(self) -> bool:
        """Distinct (left, right) inputs glue to non-isomorphic semibricks."""
        for i, row in enumerate(self.rows):
            for other in self.rows[i + 1:]:
                if row.semibrick.matches(other.semibrick):
                    return False
        return True


def _complete_graph(algebra: BasedAlgebra, cap: int) -> ExchangeGraph:
    graph = enumerate_stt(algebra, cap)
    if not graph.complete:
        raise CapExceeded(f"enumeration of {algebra.name} did not complete within {cap} nodes")
    return graph


def glue_semibrick_table(rec: Recollement, cap: int = constants.DEFAULT_NODE_CAP) -> GlueTable:
    """Glue every pair of left and right semibricks, without matching in the middle."""
    left_graph = _complete_graph(rec.left, cap)
    right_graph = _complete_graph(rec.right, cap)
    rows = tuple(
        GlueRow(l, r, None, glue_semibricks(rec, semibrick_of(l), semibrick_of(r)))
        for l in left_graph.nodes for r in right_graph.nodes
    )
    return GlueTable(rec, rows, left_graph, right_graph)


def glue_table(rec: Recollement, cap: int = constants.DEFAULT_NODE_CAP) -> GlueTable:
    left_graph = _complete_graph(rec.left, cap)
    right_graph = _complete_graph(rec.right, cap)
    middle_graph = _complete_graph(rec.middle, cap)
    rows = []
    for l in left_graph.nodes:
        for r in right_graph.nodes:
            semibrick = glue_semibricks(rec, semibrick_of(l), semibrick_of(r))
            rows.append(GlueRow(l, r, stt_of_semibrick(semibrick, middle_graph), semibrick))
    logging.info(f"Glued {len(rows)} of {len(middle_graph.nodes)} support τ-tilting pairs of {rec.middle.name}")
    return GlueTable(rec, tuple(rows), left_graph, right_graph, middle_graph)


@dataclass(frozen=True)
class TransferReport:
    middle_complete: bool
    left_complete: bool
    right_complete: bool

    @property
    def holds(self) -> bool:
        return not self.middle_complete or (self.left_complete and self.right_complete)


def transfer_check(rec: Recollement, cap: int = constants.DEFAULT_NODE_CAP) -> TransferReport:
    """τ-tilting finiteness of the middle algebra passes to both sides."""
    return TransferReport(
        enumerate_stt(rec.middle, cap).complete,
        enumerate_stt(rec.left, cap).complete,
        enumerate_stt(rec.right, cap).complete,
    )


# --- Verification ---

@dataclass(frozen=True)
class Check:
    identity: str
    sample: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[Check, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def raise_for_failures(self):
        if not self.passed:
            raise VerificationFailed(f"{len(self.failures)} recollement identities failed", self.failures)


def standard_samples(algebra: BasedAlgebra) -> list[Module]:
    """Indecomposable projectives, injectives and simples."""
    samples = []
    for v in range(len(algebra.vertices)):
        samples.extend([projective(algebra, v), injective(algebra, v), simple(algebra, v)])
    return samples


_sample_cache = LRUCache(maxsize=constants.SAMPLE_CACHE_SIZE)


@cached(cache=_sample_cache, key=hashkey)
def graph_samples(algebra: BasedAlgebra, cap: int = constants.DEFAULT_NODE_CAP) -> tuple[Module, ...]:
    """Standard modules, τ-rigid summands and bricks of the exchange graph, one per isomorphism class."""
    candidates = standard_samples(algebra)
    for node in enumerate_stt(algebra, cap).nodes:
        candidates.extend(node.summands)
        candidates.extend(semibrick_of(node))
    samples: list[Module] = []
    for module in candidates:
        if module.total_dim and not any(is_isomorphic(module, s) is not None for s in samples):
            samples.append(module)
    logging.debug(f"{len(samples)} verification samples for {algebra.name}")
    return tuple(samples)


def glue_simples(rec: Recollement) -> list[Module]:
    """i_*(left simples) followed by j_!*(right simples)."""
    glued = [rec.i_star(simple(rec.left, v)) for v in range(len(rec.left.vertices))]
    glued += [rec.intermediate_extension(simple(rec.right, v)) for v in range(len(rec.right.vertices))]
    return glued


def _are_all_simples(rec: Recollement, modules: Sequence[Module]) -> bool:
    expected = [simple(rec.middle, v) for v in range(len(rec.middle.vertices))]
    if sorted(m.dims for m in modules) != sorted(s.dims for s in expected):
        return False
    return all(any(is_isomorphic(m, s) is not None for s in expected) for m in modules)


def _sample_id(module: Module) -> str:
    label = module.name or "M"
    return f"{module.algebra.name}:{label}{list(module.dims)}"


def _right_exact(f: ModuleMap, g: ModuleMap) -> bool:
    """A → B → C → 0 is exact at B and C."""
    return (
        g.is_surjective() and (f.matrix @ g.matrix).is_zero()
        and f.matrix.rank() == g.source.total_dim - g.target.total_dim
    )


def verify_recollement(
    rec: Recollement, samples: Sequence[Module] | None = None, cap: int = constants.DEFAULT_NODE_CAP,
) -> VerificationReport:
    if samples is None:
        samples = graph_samples(rec.left, cap) + graph_samples(rec.middle, cap) + graph_samples(rec.right, cap)
    lefts = [m for m in samples if m.algebra is rec.left]
    middles = [m for m in samples if m.algebra is rec.middle]
    rights = [m for m in samples if m.algebra is rec.right]
    checks: list[Check] = []

    def record(identity: str, sample: str, passed: bool, detail: str = ""):
        checks.append(Check(identity, sample, bool(passed), detail))

    def iso(x: Module, y: Module) -> bool:
        return is_isomorphic(x, y) is not None

    # 1. Adjunctions (i^*, i_*), (i_*, i^!), (j_!, j^*), (j^*, j_*)
    for m in middles:
        for n in lefts:
            sample = f"{_sample_id(m)} | {_sample_id(n)}"
            a, b = hom_space(rec.i_upper_star(m), n).dim, hom_space(m, rec.i_star(n)).dim
            record("adjunction i^* ⊣ i_*", sample, a == b, f"{a} vs {b}")
            a, b = hom_space(rec.i_star(n), m).dim, hom_space(n, rec.i_shriek(m)).dim
            record("adjunction i_* ⊣ i^!", sample, a == b, f"{a} vs {b}")
        for n in rights:
            sample = f"{_sample_id(m)} | {_sample_id(n)}"
            a, b = hom_space(rec.j_shriek(n), m).dim, hom_space(n, rec.j_upper_star(m)).dim
            record("adjunction j_! ⊣ j^*", sample, a == b, f"{a} vs {b}")
            a, b = hom_space(rec.j_upper_star(m), n).dim, hom_space(m, rec.j_star(n)).dim
            record("adjunction j^* ⊣ j_*", sample, a == b, f"{a} vs {b}")

    # 2. Units and counits
    for n in lefts:
        sample = _sample_id(n)
        record("i^* i_* ≅ id", sample, iso(rec.i_upper_star(rec.i_star(n)), n))
        record("i^! i_* ≅ id", sample, iso(rec.i_shriek(rec.i_star(n)), n))
        record("j^* i_* = 0", sample, rec.j_upper_star(rec.i_star(n)).total_dim == 0)
    for n in rights:
        sample = _sample_id(n)
        record("j^* j_! ≅ id", sample, iso(rec.j_upper_star(rec.j_shriek(n)), n))
        record("j^* j_* ≅ id", sample, iso(rec.j_upper_star(rec.j_star(n)), n))
        extension = rec.intermediate_extension(n)
        record("j^* j_!* ≅ id", sample, iso(rec.j_upper_star(extension), n))

        # 3. Vanishing
        record("i^* j_! = 0", sample, rec.i_upper_star(rec.j_shriek(n)).total_dim == 0)
        record("i^! j_* = 0", sample, rec.i_shriek(rec.j_star(n)).total_dim == 0)
        record("i^* j_!* = 0", sample, rec.i_upper_star(extension).total_dim == 0)
        record("i^! j_!* = 0", sample, rec.i_shriek(extension).total_dim == 0)

    # 4. Im i_* = Ker j^*
    for m in middles:
        if rec.j_upper_star(m).total_dim == 0:
            record("Ker j^* ⊆ Im i_*", _sample_id(m), iso(rec.i_star(rec.i_upper_star(m)), m))

    # 5. Exactness on 0 → rad X → X → top X → 0
    for m in middles:
        _, inclusion = radical(m)
        _, projection = top(m)
        j_in, j_out = rec.j_upper_star_map(inclusion), rec.j_upper_star_map(projection)
        exact = (
            j_in.is_injective() and j_out.is_surjective() and (j_in.matrix @ j_out.matrix).is_zero()
            and j_in.target.total_dim == j_in.source.total_dim + j_out.target.total_dim
        )
        record("j^* exact", _sample_id(m), exact)
    for n in lefts:
        _, inclusion = radical(n)
        _, projection = top(n)
        i_in, i_out = rec.i_star_map(inclusion), rec.i_star_map(projection)
        exact = (
            i_in.is_injective() and i_out.is_surjective() and (i_in.matrix @ i_out.matrix).is_zero()
            and i_in.is_homomorphism() and i_out.is_homomorphism()
        )
        record("i_* exact", _sample_id(n), exact)

    # 6. Exactness on minimal presentations P1 → P0 → X → 0
    for m in middles:
        presentation = minimal_presentation(m)
        record("j^* exact on presentations", _sample_id(m), _right_exact(
            rec.j_upper_star_map(presentation.d), rec.j_upper_star_map(presentation.cover)))
    for n in lefts:
        presentation = minimal_presentation(n)
        record("i_* exact on presentations", _sample_id(n), _right_exact(
            rec.i_star_map(presentation.d), rec.i_star_map(presentation.cover)))

    # 7. Simples glue to simples bijectively
    glued = glue_simples(rec)
    record("simples glue to simples", rec.middle.name, _are_all_simples(rec, glued),
           f"{[m.dims for m in glued]}")

    report = VerificationReport(tuple(sorted(checks, key=lambda c: (c.identity, c.sample))))
    logging.info(f"Verified {len(report.checks)} recollement identities, {len(report.failures)} failed")
    return report
