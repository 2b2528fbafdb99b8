"""Tensor products of free semimodules, represented as B(X1 x ... x Xn, K).

The product ``B(X, K) (x) B(Y, K)`` is identified with ``B(X x Y, K)``: the pure
tensor of ``phi`` and ``psi`` is the outer product ``(x, y) -> phi(x) * psi(y)``
and ``delta_x (x) delta_y`` is ``delta_(x, y)``.  :class:`PureSum` is the
formal-sum side of that identification.

Direct sums of free modules are free on the tagged disjoint union, with labels
``(block, x)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .freemod import (
    FreeVector,
    IndexMismatch,
    IndexSet,
    index_set,
    vec_sup,
    zero_vector,
)
from .kernelop import Kernel, apply
from .semiring import DomainError, Semiring


def _components(label, n: int) -> tuple:
    return (label,) if n == 1 else label


@dataclass(frozen=True)
class TensorKernel:
    factors: tuple[IndexSet, ...]
    coeffs: FreeVector

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValueError("a tensor needs at least one factor")
        if self.coeffs.index != IndexSet.product(*self.factors):
            raise IndexMismatch("coefficients are not indexed by the product of the factors")

    @property
    def semiring(self) -> Semiring:
        return self.coeffs.semiring

    @property
    def index(self) -> IndexSet:
        return self.coeffs.index

    def __getitem__(self, label):
        return self.coeffs[label]


@dataclass(frozen=True)
class PureSum:
    """Formal sum of ``coeff * delta_x1 (x) ... (x) delta_xn``; labels may repeat."""

    terms: tuple[tuple[object, object], ...] = ()

    def normalized(self, k: Semiring) -> PureSum:
        """Merge repeated labels by ``+`` and drop zero coefficients (sorted by first use)."""
        acc: dict = {}
        for label, c in self.terms:
            acc[label] = k.add(acc.get(label, k.zero), c)
        return PureSum(tuple((lab, c) for lab, c in acc.items() if c != k.zero))


def zero_tensor(factors: Sequence[IndexSet], k: Semiring) -> TensorKernel:
    factors = tuple(index_set(f) for f in factors)
    return TensorKernel(factors, zero_vector(IndexSet.product(*factors), k))


def outer(*vectors: FreeVector) -> TensorKernel:
    """The pure tensor ``phi1 (x) ... (x) phin``."""
    if not vectors:
        raise ValueError("outer needs at least one vector")
    k = vectors[0].semiring
    for v in vectors[1:]:
        if v.semiring != k:
            raise DomainError("outer: semirings differ")
    factors = tuple(v.index for v in vectors)
    values = []
    for combo in itertools.product(*(v.values for v in vectors)):
        acc = k.one
        for c in combo:
            acc = k.mul(acc, c)
        values.append(acc)
    return TensorKernel(factors, FreeVector(IndexSet.product(*factors), k, tuple(values)))


def to_pure_sum(t: TensorKernel) -> PureSum:
    return PureSum(tuple(t.coeffs.items()))


def from_pure_sum(s: PureSum, factors: Sequence[IndexSet], k: Semiring) -> TensorKernel:
    factors = tuple(index_set(f) for f in factors)
    P = IndexSet.product(*factors)
    acc = list(zero_vector(P, k).values)
    for label, c in s.terms:
        i = P.index(label)
        acc[i] = k.add(acc[i], c)
    return TensorKernel(factors, FreeVector(P, k, tuple(acc)))


def tensor_vec_add(s: TensorKernel, t: TensorKernel) -> TensorKernel:
    return TensorKernel(s.factors, vec_sup([s.coeffs, t.coeffs]))


@dataclass(frozen=True)
class GeneratorPolyMap:
    """A b-polylinear map given by its values on tuples of deltas."""

    factors: tuple[IndexSet, ...]
    codomain: IndexSet
    semiring: Semiring
    table: Mapping = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        P = IndexSet.product(*self.factors)
        missing = [x for x in P if x not in self.table]
        if missing:
            raise IndexMismatch(f"generator table is missing {missing[0]!r}")
        for v in self.table.values():
            if v.index != self.codomain:
                raise IndexMismatch("generator value not indexed by the codomain")

    def __call__(self, *vectors: FreeVector) -> FreeVector:
        """Polylinear extension: ``sup over x of phi1(x1) * ... * phin(xn) * table(x)``."""
        if len(vectors) != len(self.factors):
            raise ValueError(f"expected {len(self.factors)} arguments")
        return apply(factorize(self), outer(*vectors).coeffs)


def factorize(f: GeneratorPolyMap) -> Kernel:
    """The linear map on the tensor product through which ``f`` factors."""
    P = IndexSet.product(*f.factors)
    return Kernel(P, f.codomain, f.semiring, tuple(f.table[x].values for x in P))


# -- structural isomorphisms ------------------------------------------------


def direct_sum_index(*blocks: IndexSet) -> IndexSet:
    return IndexSet((a, x) for a, b in enumerate(blocks) for x in b)


@dataclass(frozen=True, eq=False)
class StructuralIso:
    kind: str
    domain: IndexSet
    codomain: IndexSet
    mapping: Mapping  # domain label -> codomain label

    def __post_init__(self):
        image = set(self.mapping.values())
        if (set(self.mapping) != set(self.domain) or len(image) != len(self.mapping)
                or image != set(self.codomain)):
            raise ValueError("mapping is not a bijection onto the codomain")
        object.__setattr__(self, "_inverse", {v: u for u, v in self.mapping.items()})

    def forward(self, v: FreeVector) -> FreeVector:
        if v.index != self.domain:
            raise IndexMismatch(f"{self.kind}: vector not indexed by the domain")
        inv = self._inverse
        return FreeVector(self.codomain, v.semiring, tuple(v[inv[y]] for y in self.codomain))

    def backward(self, v: FreeVector) -> FreeVector:
        if v.index != self.codomain:
            raise IndexMismatch(f"{self.kind}: vector not indexed by the codomain")
        return FreeVector(self.domain, v.semiring,
                          tuple(v[self.mapping[x]] for x in self.domain))

    def kernel(self, k: Semiring) -> Kernel:
        return Kernel.from_function(self.domain, self.codomain, k,
                                    lambda x, y: k.one if self.mapping[x] == y else k.zero)


def structural_iso(kind: str, *shape: IndexSet) -> StructuralIso:
    """Index bijections behind the tensor-algebra isomorphisms.

    ``comm(X, Y)``: ``(x, y) -> (y, x)``.
    ``assoc(X, Y, Z)``: ``((x, y), z) -> (x, (y, z))``.
    ``distr(X, Y, Z)``: ``((a, u), z) -> (a, (u, z))`` from ``(X + Y) x Z`` to
    ``X x Z + Y x Z``.
    """
    shape = tuple(index_set(s) for s in shape)
    if kind == "comm":
        if len(shape) != 2:
            raise ValueError("comm takes two index sets")
        X, Y = shape
        return StructuralIso(kind, IndexSet.product(X, Y), IndexSet.product(Y, X),
                             {(x, y): (y, x) for x in X for y in Y})
    if kind == "assoc":
        if len(shape) != 3:
            raise ValueError("assoc takes three index sets")
        X, Y, Z = shape
        dom = IndexSet.product(IndexSet.product(X, Y), Z)
        cod = IndexSet.product(X, IndexSet.product(Y, Z))
        return StructuralIso(kind, dom, cod,
                             {((x, y), z): (x, (y, z)) for x in X for y in Y for z in Z})
    if kind == "distr":
        if len(shape) != 3:
            raise ValueError("distr takes three index sets")
        X, Y, Z = shape
        dom = IndexSet.product(direct_sum_index(X, Y), Z)
        cod = direct_sum_index(IndexSet.product(X, Z), IndexSet.product(Y, Z))
        return StructuralIso(kind, dom, cod,
                             {((a, u), z): (a, (u, z)) for (a, u) in direct_sum_index(X, Y)
                              for z in Z})
    raise ValueError(f"unknown isomorphism {kind!r}")


# -- direct sums and products -------------------------------------------------


def dsum_inject(blocks: Sequence[IndexSet], alpha: int, v: FreeVector) -> FreeVector:
    blocks = tuple(index_set(b) for b in blocks)
    if not 0 <= alpha < len(blocks):
        raise IndexMismatch(f"block {alpha} out of range")
    if v.index != blocks[alpha]:
        raise IndexMismatch("vector not indexed by the chosen block")
    k = v.semiring
    D = direct_sum_index(*blocks)
    return FreeVector(D, k, tuple(v[x] if a == alpha else k.zero for a, x in D))


def dsum_project(blocks: Sequence[IndexSet], alpha: int, u: FreeVector) -> FreeVector:
    blocks = tuple(index_set(b) for b in blocks)
    if not 0 <= alpha < len(blocks):
        raise IndexMismatch(f"block {alpha} out of range")
    if u.index != direct_sum_index(*blocks):
        raise IndexMismatch("vector not indexed by the direct sum")
    return FreeVector(blocks[alpha], u.semiring, tuple(u[(alpha, x)] for x in blocks[alpha]))


def map_direct_product(maps: Sequence[Kernel]) -> Kernel:
    """``x -> (f_1(x), ..., f_n(x))`` for maps sharing a domain."""
    if not maps:
        raise ValueError("need at least one map")
    X, k = maps[0].domain, maps[0].semiring
    if any(M.domain != X or M.semiring != k for M in maps):
        raise IndexMismatch("maps must share domain and semiring")
    D = direct_sum_index(*(M.codomain for M in maps))
    return Kernel.from_function(X, D, k, lambda x, ay: maps[ay[0]][x, ay[1]])


def map_direct_sum(maps: Sequence[Kernel]) -> Kernel:
    """``(x_1, ..., x_n) -> f_1(x_1) + ... + f_n(x_n)`` for maps sharing a codomain."""
    if not maps:
        raise ValueError("need at least one map")
    Y, k = maps[0].codomain, maps[0].semiring
    if any(M.codomain != Y or M.semiring != k for M in maps):
        raise IndexMismatch("maps must share codomain and semiring")
    D = direct_sum_index(*(M.domain for M in maps))
    return Kernel.from_function(D, Y, k, lambda ax, y: maps[ax[0]][ax[1], y])


def generator_terms(t: TensorKernel) -> Iterable[tuple[object, tuple]]:
    """``(coeff, labels)`` pairs; ``t`` is the sup of ``coeff * outer(deltas at labels)``."""
    n = len(t.factors)
    for label, c in t.coeffs.items():
        yield c, _components(label, n)
