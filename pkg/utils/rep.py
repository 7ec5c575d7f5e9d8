"""Finite-dimensional right modules over based algebras.

Everything is in row-vector convention: an element of M is a row vector m and
a basis element b acts by m ↦ m·action[b]. Coordinates are sorted by vertex,
so M·e_v is a contiguous block of coordinates. A ModuleMap f: M → N stores a
dim M × dim N matrix F with f(m) = m·F, and "gf" (f first) has matrix F·G.
"""
from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Sequence

from cachetools import LRUCache, cached
from cachetools.keys import hashkey

from utils import constants
from utils.algebra import BasedAlgebra
from utils.errors import AlgebraMismatch, DimensionMismatch, InvalidModule, LiftFailure, UnknownModuleLiteral
from utils.exactla import (
    ONE, ZERO, Matrix, Subspace, det, inverse, left_kernel, linear_combination, nullspace, vstack,
)


def _vertex_projection(dims: Sequence[int], v: int) -> Matrix:
    d = sum(dims)
    block = range(sum(dims[:v]), sum(dims[:v + 1]))
    return Matrix(d, d, tuple(ONE if i == j and i in block else ZERO for i in range(d) for j in range(d)))


# --- Modules ---

@dataclass(frozen=True, eq=False)
class Module:
    algebra: BasedAlgebra
    dims: tuple[int, ...]
    action: tuple[Matrix, ...]
    name: str = ""

    def __post_init__(self):
        algebra = self.algebra
        if len(self.dims) != len(algebra.vertices):
            raise InvalidModule(f"expected {len(algebra.vertices)} vertex dimensions, got {len(self.dims)}")
        if len(self.action) != algebra.dim:
            raise InvalidModule(f"expected {algebra.dim} action matrices, got {len(self.action)}")
        d = sum(self.dims)
        for label, m in zip(algebra.basis, self.action):
            if m.shape != (d, d):
                raise InvalidModule(f"action of '{label}' has shape {m.shape}, expected {(d, d)}")
        for v, e in enumerate(algebra.vertex_idems):
            if self.action[e] != _vertex_projection(self.dims, v):
                raise InvalidModule(f"vertex idempotent '{algebra.basis[e]}' does not act as the vertex projection")

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate((0,) + self.dims[:-1]))

    def vertex_range(self, v: int) -> range:
        return range(self.offsets[v], self.offsets[v] + self.dims[v])

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        return tuple(v for v, d in enumerate(self.dims) for _ in range(d))

    @cached_property
    def _content(self):
        return self.dims, tuple(m.entries for m in self.action)

    @cached_property
    def _hash(self) -> int:
        return hash((id(self.algebra), self._content))

    def __eq__(self, other):
        if not isinstance(other, Module):
            return NotImplemented
        return self is other or (self.algebra is other.algebra and self._content == other._content)

    def __hash__(self):
        return self._hash

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def act(self, element: Sequence) -> Matrix:
        d = self.total_dim
        return linear_combination(element, self.action, d, d)

    def renamed(self, name: str) -> "Module":
        return replace(self, name=name)

    def check(self):
        """Full structure-constant test: A(b_i)·A(b_j) = Σ_k c_ij^k A(b_k)."""
        algebra = self.algebra
        for i in range(algebra.dim):
            for j in range(algebra.dim):
                if self.action[i] @ self.action[j] != self.act(algebra.mult[i][j]):
                    raise InvalidModule(
                        f"action does not respect '{algebra.basis[i]}'·'{algebra.basis[j]}'"
                    )
        return self

    def __repr__(self):
        label = f"{self.name} " if self.name else ""
        return f"Module({label}dims={self.dims} over {self.algebra.name})"


@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: Module
    target: Module
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.source.total_dim, self.target.total_dim):
            raise DimensionMismatch(
                f"map matrix has shape {self.matrix.shape}, expected "
                f"{(self.source.total_dim, self.target.total_dim)}"
            )

    @classmethod
    def identity(cls, module: Module) -> "ModuleMap":
        return cls(module, module, Matrix.identity(module.total_dim))

    @classmethod
    def zero(cls, source: Module, target: Module) -> "ModuleMap":
        return cls(source, target, Matrix.zeros(source.total_dim, target.total_dim))

    def is_homomorphism(self) -> bool:
        if self.source.algebra is not self.target.algebra:
            return False
        return all(
            self.source.action[b] @ self.matrix == self.matrix @ self.target.action[b]
            for b in range(self.source.algebra.dim)
        )

    def then(self, after: "ModuleMap") -> "ModuleMap":
        """The composite after∘self."""
        return ModuleMap(self.source, after.target, self.matrix @ after.matrix)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def rank(self) -> int:
        return self.matrix.rank()

    def is_injective(self) -> bool:
        return self.rank() == self.source.total_dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.total_dim

    def is_isomorphism(self) -> bool:
        return self.source.total_dim == self.target.total_dim and det(self.matrix) != 0


def compose(g: ModuleMap, f: ModuleMap) -> ModuleMap:
    """gf: apply f, then g."""
    return f.then(g)


def assemble(algebra: BasedAlgebra, actions: Sequence[Matrix], name: str = "") -> tuple[Module, Matrix | None]:
    """Rebase raw actions onto vertex-sorted coordinates.

    Returns the module and the change of basis T (rows are the new basis vectors
    in old coordinates), or None when the old coordinates were already sorted.
    """
    d = actions[0].rows
    blocks = []
    dims = []
    for e in algebra.vertex_idems:
        space = Subspace.span(actions[e])
        blocks.append(space.basis)
        dims.append(space.dim)
    if sum(dims) != d:
        raise InvalidModule("vertex idempotents do not decompose the module")
    change = vstack(*blocks, cols=d)
    if change == Matrix.identity(d):
        return Module(algebra, tuple(dims), tuple(actions), name), None
    back = inverse(change)
    return Module(algebra, tuple(dims), tuple(change @ a @ back for a in actions), name), change


def module_from_actions(algebra: BasedAlgebra, actions: Sequence[Matrix], name: str = "") -> Module:
    """Validated module from action matrices in any basis."""
    if len(actions) != algebra.dim:
        raise InvalidModule(f"expected {algebra.dim} action matrices, got {len(actions)}")
    d = actions[0].rows
    if any(a.shape != (d, d) for a in actions):
        raise InvalidModule("action matrices must be square of one size")
    if any(actions[e] @ actions[e] != actions[e] for e in algebra.vertex_idems):
        raise InvalidModule("vertex idempotents must act as idempotents")
    module, _ = assemble(algebra, actions, name)
    return module.check()


def zero_module(algebra: BasedAlgebra) -> Module:
    return Module(algebra, (0,) * len(algebra.vertices), (Matrix.zeros(0, 0),) * algebra.dim, "0")


# --- Standard Modules ---

def simple(algebra: BasedAlgebra, vertex) -> Module:
    v = algebra.vertex_position(vertex)
    dims = tuple(1 if w == v else 0 for w in range(len(algebra.vertices)))
    one, nought = Matrix(1, 1, (ONE,)), Matrix(1, 1, (ZERO,))
    idem = algebra.vertex_idems[v]
    return Module(algebra, dims, tuple(one if b == idem else nought for b in range(algebra.dim)),
                  f"S{algebra.vertices[v]}")


@dataclass(frozen=True, eq=False)
class ProjectiveSum:
    """⊕ e_{v_s}A with the coordinate of each basis path in each summand."""
    module: Module
    vertices: tuple[int, ...]
    coordinates: tuple[dict, ...]

    def generator(self, s: int) -> int:
        return self.coordinates[s][self.module.algebra.vertex_idems[self.vertices[s]]]

    def element(self, vector: Sequence, s: int) -> tuple:
        """The s-th component of a module vector, as an algebra element in e_{v_s}A."""
        out = [ZERO] * self.module.algebra.dim
        for z, coordinate in self.coordinates[s].items():
            out[z] = vector[coordinate]
        return tuple(out)

    def embed(self, s: int, element: Sequence) -> tuple:
        out = [ZERO] * self.module.total_dim
        for z, c in enumerate(element):
            if c:
                out[self.coordinates[s][z]] = c
        return tuple(out)


def projective_sum(algebra: BasedAlgebra, vertices: Sequence[int], name: str = "") -> ProjectiveSum:
    positions = [algebra.vertex_position(v) for v in vertices]
    entries = sorted(
        (target, s, b)
        for s, v in enumerate(positions)
        for b, (source, target) in enumerate(algebra.blocks) if source == v
    )
    coordinates = [dict() for _ in positions]
    for k, (_, s, b) in enumerate(entries):
        coordinates[s][b] = k
    d = len(entries)
    actions = []
    for c in range(algebra.dim):
        out = [ZERO] * (d * d)
        for k, (_, s, b) in enumerate(entries):
            for z, coefficient in enumerate(algebra.mult[b][c]):
                if coefficient:
                    out[k * d + coordinates[s][z]] = coefficient
        actions.append(Matrix(d, d, tuple(out)))
    dims = tuple(sum(1 for t, _, _ in entries if t == v) for v in range(len(algebra.vertices)))
    return ProjectiveSum(Module(algebra, dims, tuple(actions), name), tuple(positions), tuple(coordinates))


def projective(algebra: BasedAlgebra, vertex) -> Module:
    v = algebra.vertex_position(vertex)
    return projective_sum(algebra, [v], f"P{algebra.vertices[v]}").module


def regular_module(algebra: BasedAlgebra) -> Module:
    return projective_sum(algebra, range(len(algebra.vertices)), "A").module


def injective(algebra: BasedAlgebra, vertex) -> Module:
    v = algebra.vertex_position(vertex)
    return dualize(projective(algebra.opposite, v)).renamed(f"I{algebra.vertices[v]}")


@dataclass(frozen=True, eq=False)
class DirectSum:
    module: Module
    inclusions: tuple[Matrix, ...]

    def projection(self, s: int) -> Matrix:
        return self.inclusions[s].T


def direct_sum(modules: Sequence[Module], algebra: BasedAlgebra | None = None, name: str = "") -> DirectSum:
    modules = list(modules)
    if algebra is None:
        if not modules:
            raise InvalidModule("the algebra of an empty direct sum must be given")
        algebra = modules[0].algebra
    if any(m.algebra is not algebra for m in modules):
        raise AlgebraMismatch("direct sum of modules over different algebras")
    entries = sorted((m.vertex_of[k], s, k) for s, m in enumerate(modules) for k in range(m.total_dim))
    position = {(s, k): idx for idx, (_, s, k) in enumerate(entries)}
    d = len(entries)
    actions = []
    for b in range(algebra.dim):
        out = [ZERO] * (d * d)
        for idx, (_, s, k) in enumerate(entries):
            for k2, x in enumerate(modules[s].action[b].row(k)):
                if x:
                    out[idx * d + position[(s, k2)]] = x
        actions.append(Matrix(d, d, tuple(out)))
    dims = tuple(sum(m.dims[v] for m in modules) for v in range(len(algebra.vertices)))
    inclusions = tuple(
        Matrix.unit_rows([position[(s, k)] for k in range(m.total_dim)], d) for s, m in enumerate(modules)
    )
    return DirectSum(Module(algebra, dims, tuple(actions), name), inclusions)


def module_literal(algebra: BasedAlgebra, text: str) -> Module:
    """Parse "P<v>", "S<v>" or "I<v>"."""
    match = re.fullmatch(r"([PSI])(.+)", text.strip())
    if not match or match.group(2) not in algebra.vertices:
        raise UnknownModuleLiteral(f"unknown module literal '{text}'")
    kind, vertex = match.groups()
    build = {"P": projective, "S": simple, "I": injective}[kind]
    return build(algebra, vertex)


# --- Hom ---

@dataclass(frozen=True, eq=False)
class HomSpace:
    """Canonical basis of Hom(source, target) keyed on the free unknowns."""
    source: Module
    target: Module
    maps: tuple[ModuleMap, ...]
    free: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.maps)

    def flatten(self, matrix: Matrix) -> list:
        out = []
        for v in range(len(self.source.dims)):
            for r in self.source.vertex_range(v):
                for c in self.target.vertex_range(v):
                    out.append(matrix[r, c])
        return out

    def coordinates(self, f: ModuleMap | Matrix) -> tuple:
        """Coefficients of a homomorphism in the canonical basis."""
        matrix = f.matrix if isinstance(f, ModuleMap) else f
        flat = self.flatten(matrix)
        return tuple(flat[i] for i in self.free)

    def combine(self, coefficients: Sequence) -> ModuleMap:
        m = linear_combination(coefficients, [f.matrix for f in self.maps],
                               self.source.total_dim, self.target.total_dim)
        return ModuleMap(self.source, self.target, m)


_hom_cache = LRUCache(maxsize=constants.HOM_CACHE_SIZE)


@cached(cache=_hom_cache, key=hashkey)
def hom_space(source: Module, target: Module) -> HomSpace:
    if source.algebra is not target.algebra:
        raise AlgebraMismatch(f"Hom between modules over {source.algebra.name} and {target.algebra.name}")
    algebra = source.algebra
    nv = len(algebra.vertices)
    layout = list(itertools.accumulate([0] + [source.dims[v] * target.dims[v] for v in range(nv)]))
    unknowns = layout[-1]

    def unknown(v, r, c):
        return layout[v] + (r - source.offsets[v]) * target.dims[v] + (c - target.offsets[v])

    # A_M(g)·F = F·A_N(g) for every non-idempotent generator g in e_i A e_j.
    idems = set(algebra.vertex_idems)
    equations = []
    for g in algebra.generators:
        if g in idems:
            continue
        i, j = algebra.blocks[g]
        act_m, act_n = source.action[g], target.action[g]
        for r in source.vertex_range(i):
            for c in target.vertex_range(j):
                row = [ZERO] * unknowns
                touched = False
                for k in source.vertex_range(j):
                    a = act_m[r, k]
                    if a:
                        row[unknown(j, k, c)] += a
                        touched = True
                for l in target.vertex_range(i):
                    a = act_n[l, c]
                    if a:
                        row[unknown(i, r, l)] -= a
                        touched = True
                if touched:
                    equations.append(row)

    basis, free = nullspace(Matrix.from_rows(equations, cols=unknowns))
    d_s, d_t = source.total_dim, target.total_dim
    maps = []
    for k in range(basis.rows):
        solution = basis.row(k)
        entries = [ZERO] * (d_s * d_t)
        for v in range(nv):
            for r in source.vertex_range(v):
                for c in target.vertex_range(v):
                    entries[r * d_t + c] = solution[unknown(v, r, c)]
        maps.append(ModuleMap(source, target, Matrix(d_s, d_t, tuple(entries))))
    logging.debug(f"Hom({source!r}, {target!r}): {len(equations)} equations, dim {len(maps)}")
    return HomSpace(source, target, tuple(maps), free)


def hom_basis(source: Module, target: Module) -> list[ModuleMap]:
    return list(hom_space(source, target).maps)


# --- Kernels, Images, Cokernels ---

def submodule(module: Module, space: Subspace, name: str = "") -> tuple[Module, ModuleMap]:
    """The submodule on an invariant subspace, with its inclusion."""
    if space.dim == 0:
        sub = zero_module(module.algebra)
        return sub, ModuleMap(sub, module, Matrix.zeros(0, module.total_dim))
    basis = space.basis
    actions = []
    for b in range(module.algebra.dim):
        moved = basis @ module.action[b]
        actions.append(Matrix.from_rows([space.coordinates(moved.row(t)) for t in range(space.dim)],
                                        cols=space.dim))
    sub, change = assemble(module.algebra, actions, name)
    inclusion = basis if change is None else change @ basis
    return sub, ModuleMap(sub, module, inclusion)


def quotient(module: Module, space: Subspace, name: str = "") -> tuple[Module, ModuleMap]:
    """module/space with its projection."""
    complement = space.complement
    projection = space.projection
    if not complement:
        zero = zero_module(module.algebra)
        return zero, ModuleMap(module, zero, Matrix.zeros(module.total_dim, 0))
    actions = [module.action[b].select_rows(complement) @ projection for b in range(module.algebra.dim)]
    result, change = assemble(module.algebra, actions, name)
    if change is not None:
        projection = projection @ inverse(change)
    return result, ModuleMap(module, result, projection)


def kernel(f: ModuleMap) -> tuple[Module, ModuleMap]:
    return submodule(f.source, Subspace.span(left_kernel(f.matrix)))


def image(f: ModuleMap) -> tuple[Module, ModuleMap]:
    return submodule(f.target, Subspace.span(f.matrix))


def cokernel(f: ModuleMap) -> tuple[Module, ModuleMap]:
    return quotient(f.target, Subspace.span(f.matrix))


# --- Radical Layers ---

def _radical_actions(module: Module) -> list[Matrix]:
    algebra = module.algebra
    if algebra.split_radical:
        idems = set(algebra.vertex_idems)
        return [module.action[g] for g in algebra.generators if g not in idems]
    return [module.act(algebra.radical.basis.row(t)) for t in range(algebra.radical.dim)]


def radical_space(module: Module, within: Subspace | None = None) -> Subspace:
    """(within)·rad A; within defaults to the whole module."""
    d = module.total_dim
    rows = Matrix.identity(d) if within is None else within.basis
    moved = [rows @ a for a in _radical_actions(module)]
    if not moved:
        return Subspace.zero(d)
    return Subspace.span(vstack(*moved, cols=d))


def radical(module: Module) -> tuple[Module, ModuleMap]:
    return submodule(module, radical_space(module))


def top(module: Module) -> tuple[Module, ModuleMap]:
    return quotient(module, radical_space(module))


def socle(module: Module) -> tuple[Module, ModuleMap]:
    d = module.total_dim
    actions = _radical_actions(module)
    if not actions:
        return submodule(module, Subspace.full(d))
    stacked = Matrix(d, d * len(actions),
                     tuple(x for i in range(d) for a in actions for x in a.row(i)))
    return submodule(module, Subspace.span(left_kernel(stacked)))


def graded_dims(module: Module, space: Subspace) -> tuple[int, ...]:
    """Per-vertex dimensions of a subspace spanned by vertex-homogeneous vectors."""
    counts = [0] * len(module.dims)
    for p in space.pivots:
        counts[module.vertex_of[p]] += 1
    return tuple(counts)


def loewy_layers(module: Module) -> list[tuple[int, ...]]:
    """Dimension vectors of rad^k M / rad^(k+1) M."""
    layers = []
    current = Subspace.full(module.total_dim)
    while current.dim:
        below = radical_space(module, current)
        top_dims = graded_dims(module, current)
        rad_dims = graded_dims(module, below)
        layers.append(tuple(a - b for a, b in zip(top_dims, rad_dims)))
        current = below
    return layers


# --- Covers & Presentations ---

def projective_cover(module: Module) -> tuple[ProjectiveSum, ModuleMap]:
    algebra = module.algebra
    tops = radical_space(module).complement
    cover = projective_sum(algebra, [module.vertex_of[k] for k in tops])
    d_p, d = cover.module.total_dim, module.total_dim
    entries = [ZERO] * (d_p * d)
    for s, k in enumerate(tops):
        for z, coordinate in cover.coordinates[s].items():
            for c, x in enumerate(module.action[z].row(k)):
                if x:
                    entries[coordinate * d + c] = x
    p = ModuleMap(cover.module, module, Matrix(d_p, d, tuple(entries)))
    if not p.is_surjective():
        raise LiftFailure(f"projective cover of {module!r} is not surjective")
    rad_cover = radical_space(cover.module)
    kernel_rows = left_kernel(p.matrix)
    if any(not rad_cover.contains(kernel_rows.row(t)) for t in range(kernel_rows.rows)):
        raise LiftFailure(f"projective cover of {module!r} is not minimal")
    return cover, p


@dataclass(frozen=True, eq=False)
class Presentation:
    p1: ProjectiveSum
    p0: ProjectiveSum
    d: ModuleMap
    cover: ModuleMap

    def component(self, i: int, j: int) -> tuple:
        """d restricted to summand j of P1 and projected to summand i of P0, as an element of e_{v_i}Ae_{v_j}."""
        generator_image = self.d.matrix.row(self.p1.generator(j))
        return self.p0.element(generator_image, i)


def minimal_presentation(module: Module) -> Presentation:
    p0, cover = projective_cover(module)
    syzygy, inclusion = kernel(cover)
    p1, q = projective_cover(syzygy)
    d = ModuleMap(p1.module, p0.module, q.matrix @ inclusion.matrix)
    return Presentation(p1, p0, d, cover)


# --- Duality ---

def dualize(module: Module) -> Module:
    name = f"D{module.name}" if module.name else ""
    return Module(module.algebra.opposite, module.dims, tuple(a.T for a in module.action), name)


def dualize_map(f: ModuleMap) -> ModuleMap:
    return ModuleMap(dualize(f.target), dualize(f.source), f.matrix.T)


# --- Isomorphism ---

def indecomposable_isomorphism(x: Module, y: Module) -> ModuleMap | None:
    """Isomorphism between modules with local endomorphism rings, if any."""
    if x.dims != y.dims:
        return None
    for f in hom_space(x, y).maps:
        if det(f.matrix) != 0:
            return f
    return None


def _candidate_combinations(h: int):
    yield from (tuple(ONE if i == k else ZERO for i in range(h)) for k in range(h))
    patterns = (
        lambda k: k + 1,
        lambda k: (k + 1) ** 2,
        lambda k: 1,
        lambda k: (-1) ** k * (k + 2),
        lambda k: 2 ** k,
        lambda k: (k * 7) % 5 - 2,
    )
    for pattern in patterns:
        yield tuple(pattern(k) for k in range(h))


def is_isomorphic(m: Module, n: Module) -> ModuleMap | None:
    if m.algebra is not n.algebra:
        raise AlgebraMismatch("isomorphism test between modules over different algebras")
    if m.dims != n.dims:
        return None
    if m.total_dim == 0:
        return ModuleMap.zero(m, n)
    forward = hom_space(m, n)
    if forward.dim == 0 or forward.dim != hom_space(n, m).dim or forward.dim != hom_space(m, m).dim:
        return None
    for coefficients in _candidate_combinations(forward.dim):
        f = forward.combine(coefficients)
        if det(f.matrix) != 0:
            return f
    return _isomorphism_from_decompositions(m, n)


def _isomorphism_from_decompositions(m: Module, n: Module) -> ModuleMap | None:
    """Match indecomposable summands one by one and assemble the isomorphism."""
    from utils.structure import decompose

    left, right = decompose(m).parts, decompose(n).parts
    if len(left) != len(right):
        return None
    used = set()
    blocks = []
    for x, _ in left:
        for k, (y, _) in enumerate(right):
            if k in used:
                continue
            phi = indecomposable_isomorphism(x, y)
            if phi is not None:
                used.add(k)
                blocks.append((k, phi.matrix))
                break
        else:
            logging.debug(f"No summand of {n!r} matches a summand of {m!r}")
            return None
    # m = ⊕x_s via T_m, n = ⊕y_t via T_n; iso = T_m^-1 · Φ · T_n.
    t_m = vstack(*[inc for _, inc in left], cols=m.total_dim)
    t_n = vstack(*[inc for _, inc in right], cols=n.total_dim)
    offsets_n = list(itertools.accumulate([0] + [y.total_dim for y, _ in right]))
    d = m.total_dim
    phi = [ZERO] * (d * d)
    row = 0
    for k, block in blocks:
        for i in range(block.rows):
            for j, x in enumerate(block.row(i)):
                phi[(row + i) * d + offsets_n[k] + j] = x
        row += block.rows
    iso = ModuleMap(m, n, inverse(t_m) @ Matrix(d, d, tuple(phi)) @ t_n)
    if not (iso.is_isomorphism() and iso.is_homomorphism()):
        raise LiftFailure("assembled summand isomorphism is not a module isomorphism")
    return iso
