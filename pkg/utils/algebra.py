"""Finite-dimensional based algebras: path algebras modulo relations, corners and quotients."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from utils import constants
from utils.errors import (
    EmptySubset, FullSubset, InvalidAlgebra, InvalidQuiver, InvalidRelation,
    NotFiniteDimensional, RadicalNotNilpotent, UnknownVertex,
)
from utils.exactla import ONE, ZERO, Matrix, Subspace, kernel_basis

PATH_SEPARATOR = "*"


# --- Quivers & Relations ---

@dataclass(frozen=True)
class Arrow:
    label: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidQuiver("vertex labels must be distinct")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise InvalidQuiver("arrow labels must be distinct")
        for arrow in self.arrows:
            for end in (arrow.source, arrow.target):
                if end not in self.vertices:
                    raise InvalidQuiver(f"arrow '{arrow.label}' uses undeclared vertex '{end}'")

    @cached_property
    def arrow_map(self) -> dict[str, Arrow]:
        return {a.label: a for a in self.arrows}


Path = tuple  # arrow labels, first arrow first


@dataclass(frozen=True)
class Relation:
    terms: tuple[tuple[Fraction, Path], ...]


@dataclass(frozen=True)
class RelationSet:
    relations: tuple[Relation, ...] = ()


# --- Based Algebras ---

@dataclass(frozen=True, eq=False)
class BasedAlgebra:
    """Basis, structure constants and a complete set of vertex idempotents.

    mult[i][j] is the coefficient vector of b_i·b_j. Every basis element must be
    block-pure: e_s·b·e_t = b for exactly one pair of vertices (s, t).
    """
    name: str
    vertices: tuple[str, ...]
    basis: tuple[str, ...]
    mult: tuple[tuple[tuple[Fraction, ...], ...], ...]
    vertex_idems: tuple[int, ...]

    def __post_init__(self):
        n = len(self.basis)
        if n == 0:
            raise InvalidAlgebra("an algebra needs a nonempty basis")
        if len(self.vertex_idems) != len(self.vertices):
            raise InvalidAlgebra("one idempotent per vertex is required")
        if len(self.mult) != n or any(len(row) != n or any(len(v) != n for v in row) for row in self.mult):
            raise InvalidAlgebra("structure constants must form a dim × dim × dim table")
        self._check_idempotents()
        self._check_associativity()
        # Touch the block table so impure basis elements fail at construction.
        self.blocks

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def unit(self) -> tuple:
        v = [ZERO] * self.dim
        for i in self.vertex_idems:
            v[i] = ONE
        return tuple(v)

    def basis_vector(self, i: int) -> tuple:
        v = [ZERO] * self.dim
        v[i] = ONE
        return tuple(v)

    def index(self, label: str) -> int:
        try:
            return self.basis.index(label)
        except ValueError:
            raise InvalidAlgebra(f"'{label}' is not a basis element of {self.name}") from None

    def vertex_position(self, vertex) -> int:
        if isinstance(vertex, int) and not isinstance(vertex, bool) and 0 <= vertex < len(self.vertices):
            return vertex
        label = str(vertex)
        if label not in self.vertices:
            raise UnknownVertex(f"'{label}' is not a vertex of {self.name}")
        return self.vertices.index(label)

    def multiply(self, x: Sequence, y: Sequence) -> tuple:
        acc = [ZERO] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.mult[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(row[j]):
                    if c:
                        acc[k] += ab * c
        return tuple(acc)

    # --- Validation ---

    def _check_idempotents(self):
        for i in self.vertex_idems:
            for j in self.vertex_idems:
                expected = self.basis_vector(i) if i == j else (ZERO,) * self.dim
                if self.mult[i][j] != expected:
                    raise InvalidAlgebra("vertex idempotents must be orthogonal idempotents")
        unit = self.unit
        for b in range(self.dim):
            e = self.basis_vector(b)
            if self.multiply(unit, e) != e or self.multiply(e, unit) != e:
                raise InvalidAlgebra("vertex idempotents must sum to the unit")

    def _check_associativity(self):
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.mult[i][j]
                for k in range(self.dim):
                    left = self.multiply(ij, self.basis_vector(k))
                    right = self.multiply(self.basis_vector(i), self.mult[j][k])
                    if left != right:
                        raise InvalidAlgebra(
                            f"structure constants are not associative on "
                            f"({self.basis[i]}, {self.basis[j]}, {self.basis[k]})"
                        )

    # --- Derived Data ---

    @cached_property
    def blocks(self) -> tuple[tuple[int, int], ...]:
        """(source, target) vertex positions of each basis element."""
        result = []
        for b in range(self.dim):
            unit_b = self.basis_vector(b)
            sources = [v for v, e in enumerate(self.vertex_idems) if self.mult[e][b] == unit_b]
            targets = [v for v, e in enumerate(self.vertex_idems) if self.mult[b][e] == unit_b]
            if len(sources) != 1 or len(targets) != 1:
                raise InvalidAlgebra(f"basis element '{self.basis[b]}' is not pure in the vertex idempotents")
            result.append((sources[0], targets[0]))
        return tuple(result)

    @cached_property
    def non_idempotent(self) -> tuple[int, ...]:
        idems = set(self.vertex_idems)
        return tuple(b for b in range(self.dim) if b not in idems)

    @cached_property
    def radical(self) -> Subspace:
        """Jacobson radical via the trace form of the right regular representation."""
        traces = [sum((self.mult[i][m][i] for i in range(self.dim)), ZERO) for m in range(self.dim)]
        gram = Matrix.from_rows(
            [[sum((c * traces[m] for m, c in enumerate(self.mult[k][l]) if c), ZERO) for l in range(self.dim)]
             for k in range(self.dim)],
            cols=self.dim,
        )
        rad = Subspace.span(kernel_basis(gram))
        power = rad
        for _ in range(self.dim + 1):
            if power.dim == 0:
                return rad
            products = [
                self.multiply(power.basis.row(s), rad.basis.row(t))
                for s in range(power.dim) for t in range(rad.dim)
            ]
            power = Subspace.of_vectors(products, self.dim) if products else Subspace.zero(self.dim)
        raise RadicalNotNilpotent(f"trace-form radical of {self.name} is not nilpotent")

    @cached_property
    def split_radical(self) -> bool:
        """True when the non-idempotent basis elements span the radical."""
        return self.radical == Subspace.span(Matrix.unit_rows(self.non_idempotent, self.dim))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Basis indices that generate the algebra: idempotents plus arrow classes."""
        if not self.split_radical:
            logging.debug(f"{self.name}: radical is not spanned by basis elements, using the full basis")
            return tuple(range(self.dim))
        squares = [self.mult[i][j] for i in self.non_idempotent for j in self.non_idempotent]
        rad_squared = Subspace.of_vectors(squares, self.dim) if squares else Subspace.zero(self.dim)
        pivots = set(rad_squared.pivots)
        arrows = tuple(b for b in self.non_idempotent if b not in pivots)
        return tuple(self.vertex_idems) + arrows

    @cached_property
    def right_regular(self) -> tuple[Matrix, ...]:
        """R(b)[i] = b_i·b, the right regular action in row convention."""
        return tuple(
            Matrix.from_rows([self.mult[i][b] for i in range(self.dim)], cols=self.dim)
            for b in range(self.dim)
        )

    @cached_property
    def opposite(self) -> "BasedAlgebra":
        n = self.dim
        mult = tuple(tuple(self.mult[j][i] for j in range(n)) for i in range(n))
        name = self.name[:-3] if self.name.endswith("^op") else f"{self.name}^op"
        op = BasedAlgebra(name, self.vertices, self.basis, mult, self.vertex_idems)
        op.__dict__["opposite"] = self
        return op

    def __repr__(self):
        return f"BasedAlgebra({self.name!r}, dim={self.dim}, vertices={self.vertices})"


def algebra_radical(algebra: BasedAlgebra) -> Matrix:
    return algebra.radical.basis


# --- Path Algebras ---

def _validate_relations(quiver: Quiver, relations: RelationSet):
    arrows = quiver.arrow_map
    for relation in relations.relations:
        if not relation.terms:
            raise InvalidRelation("empty relation")
        endpoints = set()
        for _, path in relation.terms:
            if len(path) < 2:
                raise InvalidRelation(f"path '{PATH_SEPARATOR.join(path)}' is shorter than 2 arrows")
            for label in path:
                if label not in arrows:
                    raise InvalidRelation(f"unknown arrow '{label}'")
            for first, second in zip(path, path[1:]):
                if arrows[first].target != arrows[second].source:
                    raise InvalidRelation(f"path '{PATH_SEPARATOR.join(path)}' is not composable")
            endpoints.add((arrows[path[0]].source, arrows[path[-1]].target))
        if len(endpoints) != 1:
            raise InvalidRelation("relation mixes sources or targets")


def _truncated_ideal(quiver: Quiver, relations: RelationSet, layers: list, index: dict) -> Subspace:
    """Span of p·ρ·q over relations ρ and paths p, q, dropping paths longer than the top layer."""
    arrows = quiver.arrow_map
    level = len(layers)
    ending = {v: [()] for v in quiver.vertices}
    starting = {v: [()] for v in quiver.vertices}
    for layer in layers:
        for path in layer:
            ending[arrows[path[-1]].target].append(path)
            starting[arrows[path[0]].source].append(path)

    vectors = []
    for relation in relations.relations:
        first = relation.terms[0][1]
        source, target = arrows[first[0]].source, arrows[first[-1]].target
        shortest = min(len(path) for _, path in relation.terms)
        for p in ending[source]:
            if len(p) + shortest > level:
                continue
            for q in starting[target]:
                if len(p) + shortest + len(q) > level:
                    continue
                v = [ZERO] * len(index)
                for coefficient, path in relation.terms:
                    full = p + path + q
                    if len(full) <= level:
                        v[index[full]] += coefficient
                if any(v):
                    vectors.append(v)
    return Subspace.of_vectors(vectors, len(index)) if vectors else Subspace.zero(len(index))


def build_path_algebra(
    quiver: Quiver,
    relations: RelationSet = RelationSet(),
    length_cap: int = constants.DEFAULT_LENGTH_CAP,
    name: str = "A",
) -> BasedAlgebra:
    if length_cap < 1:
        raise InvalidRelation("length cap must be at least 1")
    _validate_relations(quiver, relations)
    arrows = sorted(quiver.arrows, key=lambda a: a.label)
    arrow_map = quiver.arrow_map

    # 1. Raise the truncation length until every path of the top length lies in the ideal.
    #    Columns run longest path first, so the pivot of a reduced relation is its leading term.
    layers: list[list[Path]] = []
    while True:
        if layers:
            layer = [p + (a.label,) for p in layers[-1] for a in arrows if arrow_map[p[-1]].target == a.source]
        else:
            layer = [(a.label,) for a in arrows]
        layers.append(sorted(layer))
        paths = [p for layer in reversed(layers) for p in layer]
        index = {p: k for k, p in enumerate(paths)}
        ideal = _truncated_ideal(quiver, relations, layers, index)
        level = len(layers)
        surviving = len(paths) - ideal.dim
        logging.debug(f"{name}: {len(paths)} paths up to length {level}, {surviving} survive")
        if all(ideal.contains(_unit(len(paths), index[p])) for p in layers[-1]):
            break
        if level >= length_cap:
            raise NotFiniteDimensional(
                f"nonzero path classes of length {level} remain at the length cap {length_cap}"
            )

    # 2. Basis: trivial paths, then the non-leading paths by (length, labels)
    survivors = sorted((paths[c] for c in ideal.complement), key=lambda p: (len(p), p))
    basis_paths: list[Path] = [()] * len(quiver.vertices) + survivors
    labels = [f"e{v}" for v in quiver.vertices] + [PATH_SEPARATOR.join(p) for p in survivors]
    sources = list(quiver.vertices) + [arrow_map[p[0]].source for p in survivors]
    targets = list(quiver.vertices) + [arrow_map[p[-1]].target for p in survivors]
    basis_index = {p: k for k, p in enumerate(basis_paths) if p}
    dim = len(basis_paths)

    def normal_form(path: Path) -> tuple:
        v = [ZERO] * dim
        if len(path) > level:
            return tuple(v)
        if path in basis_index:
            v[basis_index[path]] = ONE
            return tuple(v)
        for c, x in enumerate(ideal.reduce(_unit(len(paths), index[path]))):
            if x:
                v[basis_index[paths[c]]] = x
        return tuple(v)

    # 3. Structure constants (paths compose left to right)
    zero = (ZERO,) * dim
    mult = []
    for i in range(dim):
        row = []
        for j in range(dim):
            if targets[i] != sources[j]:
                row.append(zero)
            elif i < len(quiver.vertices):
                row.append(tuple(ONE if k == j else ZERO for k in range(dim)))
            elif j < len(quiver.vertices):
                row.append(tuple(ONE if k == i else ZERO for k in range(dim)))
            else:
                row.append(normal_form(basis_paths[i] + basis_paths[j]))
        mult.append(tuple(row))

    algebra = BasedAlgebra(name, tuple(quiver.vertices), tuple(labels), tuple(mult),
                           tuple(range(len(quiver.vertices))))
    logging.info(f"Built path algebra {name}: dim {dim}, {len(quiver.vertices)} vertices")
    return algebra


def _unit(size: int, k: int) -> tuple:
    v = [ZERO] * size
    v[k] = ONE
    return tuple(v)


# --- Corners & Quotients ---

def vertex_subset(algebra: BasedAlgebra, subset: Iterable) -> tuple[int, ...]:
    positions = sorted({algebra.vertex_position(v) for v in subset})
    if not positions:
        raise EmptySubset("the idempotent subset is empty")
    return tuple(positions)


def corner_algebra(algebra: BasedAlgebra, subset: Iterable) -> tuple[BasedAlgebra, tuple[int, ...]]:
    """eAe for e the sum of the vertex idempotents in subset; returns (eAe, embedding)."""
    chosen = set(vertex_subset(algebra, subset))
    embedding = tuple(b for b, (s, t) in enumerate(algebra.blocks) if s in chosen and t in chosen)
    if len(chosen) == len(algebra.vertices):
        return algebra, embedding
    mult = tuple(
        tuple(tuple(algebra.mult[x][y][z] for z in embedding) for y in embedding)
        for x in embedding
    )
    vertices = tuple(algebra.vertices[v] for v in sorted(chosen))
    idems = tuple(embedding.index(algebra.vertex_idems[v]) for v in sorted(chosen))
    corner = BasedAlgebra(f"e{algebra.name}e", vertices, tuple(algebra.basis[b] for b in embedding), mult, idems)
    logging.info(f"Corner algebra {corner.name}: dim {corner.dim}")
    return corner, embedding


def two_sided_ideal(algebra: BasedAlgebra, positions: Sequence[int]) -> Subspace:
    """The ideal A·e·A for e the sum of the idempotents at positions."""
    vectors = []
    for v in positions:
        into = [x for x, (_, t) in enumerate(algebra.blocks) if t == v]
        out_of = [y for y, (s, _) in enumerate(algebra.blocks) if s == v]
        for x in into:
            for y in out_of:
                vectors.append(algebra.mult[x][y])
    return Subspace.of_vectors(vectors, algebra.dim)


def quotient_algebra(algebra: BasedAlgebra, subset: Iterable) -> tuple[BasedAlgebra, Matrix]:
    """A/AeA; returns (quotient, projection) with projection a dim A × dim Q matrix."""
    positions = vertex_subset(algebra, subset)
    if len(positions) == len(algebra.vertices):
        raise FullSubset("the quotient by the full idempotent is the zero ring")
    ideal = two_sided_ideal(algebra, positions)
    complement = ideal.complement
    remaining = [v for v in range(len(algebra.vertices)) if v not in positions]
    for v in remaining:
        if algebra.vertex_idems[v] not in complement:
            raise InvalidAlgebra(f"idempotent of vertex {algebra.vertices[v]} falls into the ideal")
    projection = ideal.projection
    mult = tuple(
        tuple(projection.vecmul(algebra.mult[x][y]) for y in complement)
        for x in complement
    )
    vertices = tuple(algebra.vertices[v] for v in remaining)
    idems = tuple(complement.index(algebra.vertex_idems[v]) for v in remaining)
    quotient = BasedAlgebra(f"{algebra.name}/<e>", vertices, tuple(algebra.basis[b] for b in complement), mult, idems)
    logging.info(f"Quotient algebra {quotient.name}: dim {quotient.dim} (ideal dim {ideal.dim})")
    return quotient, projection
