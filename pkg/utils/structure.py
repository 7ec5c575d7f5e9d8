"""Endomorphism rings, Krull-Schmidt decomposition, bricks and semibricks."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import sympy
from cachetools import LRUCache, cached
from cachetools.keys import hashkey

from utils import constants
from utils.errors import DecompositionStuck, RadicalNotNilpotent
from utils.exactla import ZERO, Matrix, Subspace, kernel_basis, left_kernel
from utils.rep import (
    HomSpace, Module, ModuleMap, direct_sum, hom_space, indecomposable_isomorphism, submodule,
)

_T = sympy.Symbol("t")


def module_key(module: Module) -> tuple:
    """Deterministic sort key: dimension vector, then the action entries."""
    return module.dims, tuple(m.entries for m in module.action)


# --- Endomorphism Rings ---

_end_cache = LRUCache(maxsize=constants.END_CACHE_SIZE)


@cached(cache=_end_cache, key=hashkey)
def end_radical(module: Module) -> Subspace:
    """rad End(M) in the coordinates of hom_space(M, M).

    An endomorphism x lies in the radical iff tr(x·y) = 0 for every y.
    """
    maps = hom_space(module, module).maps
    h = len(maps)
    gram = Matrix.from_rows(
        [[(maps[k].matrix @ maps[l].matrix).trace() for l in range(h)] for k in range(h)], cols=h
    )
    radical = Subspace.span(kernel_basis(gram))
    d = module.total_dim
    for t in range(radical.dim):
        f = _combine(maps, radical.basis.row(t), d)
        power = f
        for _ in range(d):
            power = power @ f
        if d and not power.is_zero():
            raise RadicalNotNilpotent(f"trace-form radical of End({module!r}) is not nilpotent")
    return radical


def end_radical_maps(module: Module) -> list[ModuleMap]:
    hom = hom_space(module, module)
    radical = end_radical(module)
    return [hom.combine(radical.basis.row(t)) for t in range(radical.dim)]


def _combine(maps: Sequence[ModuleMap], coefficients: Sequence, d: int) -> Matrix:
    acc = Matrix.zeros(d, d)
    for c, f in zip(coefficients, maps):
        if c:
            acc = acc + f.matrix.scale(c)
    return acc


def is_local(module: Module) -> bool:
    """dim End − dim rad End = 1."""
    return hom_space(module, module).dim - end_radical(module).dim == 1


# --- Bricks ---

def is_brick(module: Module) -> bool:
    return hom_space(module, module).dim == 1


@dataclass(frozen=True)
class BrickReport:
    is_brick: bool
    end_dim: int
    radical_dim: int
    flag: str | None = None


def brick_report(module: Module) -> BrickReport:
    end_dim = hom_space(module, module).dim
    radical_dim = end_radical(module).dim
    flag = None
    if end_dim > 1 and radical_dim == 0 and _split_once(module) is None:
        # Semisimple End without a rational splitting: possibly a division algebra.
        flag = constants.INDETERMINATE_DIVISION_ALGEBRA
        logging.warning(f"{module!r}: End has dim {end_dim} and zero radical; treating as non-brick")
    return BrickReport(end_dim == 1, end_dim, radical_dim, flag)


def is_semibrick(modules: Sequence[Module]) -> bool:
    modules = list(modules)
    if not all(is_brick(m) for m in modules):
        return False
    for i, x in enumerate(modules):
        for j, y in enumerate(modules):
            if i != j and hom_space(x, y).dim:
                return False
    return True


@dataclass(frozen=True)
class Semibrick:
    """Pairwise Hom-orthogonal bricks in canonical order."""
    bricks: tuple[Module, ...] = ()

    @classmethod
    def of(cls, modules: Iterable[Module]) -> "Semibrick":
        return cls(tuple(sorted(modules, key=module_key)))

    def __len__(self):
        return len(self.bricks)

    def __iter__(self) -> Iterator[Module]:
        return iter(self.bricks)

    def is_valid(self) -> bool:
        return is_semibrick(self.bricks)

    def matches(self, other: "Semibrick") -> bool:
        """Member-by-member isomorphism."""
        if len(self) != len(other) or sorted(b.dims for b in self) != sorted(b.dims for b in other):
            return False
        remaining = list(other.bricks)
        for brick in self.bricks:
            for k, candidate in enumerate(remaining):
                if indecomposable_isomorphism(brick, candidate) is not None:
                    del remaining[k]
                    break
            else:
                return False
        return True


# --- Decomposition ---

@dataclass(frozen=True)
class Decomposition:
    summands: tuple[tuple[Module, int], ...]
    # Every indecomposable leaf with its inclusion matrix into the input module.
    parts: tuple[tuple[Module, Matrix], ...]

    @property
    def indecomposables(self) -> list[Module]:
        return [m for m, _ in self.summands]

    @property
    def count(self) -> int:
        """Number of pairwise non-isomorphic summands."""
        return len(self.summands)

    def is_basic(self) -> bool:
        return all(k == 1 for _, k in self.summands)

    def reassemble(self) -> Module:
        modules = [m for m, k in self.summands for _ in range(k)]
        algebra = modules[0].algebra if modules else None
        return direct_sum(modules, algebra).module


def _candidates(hom: HomSpace) -> Iterator[tuple]:
    h = hom.dim
    units = [tuple(Fraction(int(i == k)) for i in range(h)) for k in range(h)]
    yield from units
    for i, j in itertools.combinations(range(h), 2):
        for c in constants.CANDIDATE_COEFFICIENTS:
            v = [ZERO] * h
            v[i], v[j] = Fraction(1), Fraction(c)
            yield tuple(v)
    span = sorted({0, *constants.CANDIDATE_COEFFICIENTS})
    for v in itertools.product(span, repeat=h):
        if any(v):
            yield tuple(Fraction(x) for x in v)


def _evaluate(coefficients: Sequence, f: Matrix) -> Matrix:
    """Horner evaluation of a polynomial (leading coefficient first) at f."""
    acc = Matrix.zeros(f.rows, f.cols)
    identity = Matrix.identity(f.rows)
    for c in coefficients:
        acc = acc @ f + identity.scale(c)
    return acc


def _to_fraction(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def _primary_split(f: Matrix) -> tuple[Matrix, Matrix] | None:
    """g(f), h(f) for a coprime factorization χ_f = g·h, or None if χ_f is primary."""
    sym = sympy.Matrix(f.rows, f.cols, [sympy.Rational(x.numerator, x.denominator) for x in f.entries])
    _, factors = sym.charpoly(_T).factor_list()
    if len(factors) < 2:
        return None
    first, k = factors[0]
    g = sympy.Poly(first.as_expr() ** k, _T)
    h = sympy.Poly(sympy.Mul(*(p.as_expr() ** m for p, m in factors[1:])), _T)
    return (
        _evaluate([_to_fraction(c) for c in g.all_coeffs()], f),
        _evaluate([_to_fraction(c) for c in h.all_coeffs()], f),
    )


def _split_once(module: Module) -> tuple[Subspace, Subspace] | None:
    """Two complementary submodule spaces from the first splitting endomorphism found."""
    hom = hom_space(module, module)
    for tried, coefficients in enumerate(_candidates(hom)):
        if tried >= constants.DECOMPOSITION_BUDGET:
            break
        split = _primary_split(hom.combine(coefficients).matrix)
        if split is not None:
            g, h = split
            return Subspace.span(left_kernel(g)), Subspace.span(left_kernel(h))
    return None


def _leaves(module: Module) -> list[tuple[Module, Matrix]]:
    if module.total_dim == 0:
        return []
    if is_local(module):
        return [(module, Matrix.identity(module.total_dim))]
    split = _split_once(module)
    if split is None:
        raise DecompositionStuck(
            f"no splitting endomorphism of {module!r} within {constants.DECOMPOSITION_BUDGET} candidates"
        )
    leaves = []
    for space in split:
        part, inclusion = submodule(module, space)
        for leaf, inner in _leaves(part):
            leaves.append((leaf, inner @ inclusion.matrix))
    return leaves


def decompose(module: Module) -> Decomposition:
    leaves = _leaves(module)
    # 1. Group leaves into isomorphism classes
    classes: list[list[tuple[Module, Matrix]]] = []
    for leaf, inclusion in leaves:
        for members in classes:
            if indecomposable_isomorphism(members[0][0], leaf) is not None:
                members.append((leaf, inclusion))
                break
        else:
            classes.append([(leaf, inclusion)])
    # 2. Larger summands first, ties by dimension vector
    classes.sort(key=lambda members: (-members[0][0].total_dim, tuple(-d for d in members[0][0].dims)))
    summands = tuple((members[0][0], len(members)) for members in classes)
    parts = tuple(item for members in classes for item in members)
    logging.debug(f"Decomposed {module!r} into {[(m.dims, k) for m, k in summands]}")
    return Decomposition(summands, parts)
