"""b-linear operators B(X, K) -> B(Y, K) stored as kernels.

Entry ``(x, y)`` of a :class:`Kernel` is the coefficient of input ``x`` in
output ``y``, so ``apply(M, phi)(y) = sup_x M(x, y) * phi(x)`` and
``compose(M, N)`` means "first M, then N".

Every kernel is the sup of the rank-1 operators given by its rows, so in the
finite free setting every operator is nuclear; :func:`canonical_p` is the map
from rank-1 terms to operators and :func:`nuclear_decompose` a right inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .freemod import (
    FreeVector,
    IndexMismatch,
    IndexSet,
    delta,
    index_set,
)
from .semiring import DomainError, Semiring


@dataclass(frozen=True)
class Kernel:
    domain: IndexSet
    codomain: IndexSet
    semiring: Semiring
    entries: tuple  # entries[i][j] = K(domain[i], codomain[j])

    def __post_init__(self):
        k = self.semiring
        rows = tuple(tuple(k.check(v) for v in row) for row in self.entries)
        if len(rows) != len(self.domain) or any(len(r) != len(self.codomain) for r in rows):
            raise IndexMismatch(
                f"kernel entries must be {len(self.domain)}x{len(self.codomain)}")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_function(cls, domain, codomain, k: Semiring, fn: Callable) -> Kernel:
        X, Y = index_set(domain), index_set(codomain)
        return cls(X, Y, k, tuple(tuple(fn(x, y) for y in Y) for x in X))

    @classmethod
    def from_rows(cls, domain, codomain, k: Semiring, rows: Sequence[Sequence]) -> Kernel:
        return cls(index_set(domain), index_set(codomain), k, tuple(map(tuple, rows)))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.domain), len(self.codomain)

    def __getitem__(self, xy):
        x, y = xy
        return self.entries[self.domain.index(x)][self.codomain.index(y)]

    def row(self, x) -> FreeVector:
        return FreeVector(self.codomain, self.semiring, self.entries[self.domain.index(x)])

    def __call__(self, phi: FreeVector) -> FreeVector:
        return apply(self, phi)


@dataclass(frozen=True)
class RankOneTerm:
    """The operator ``phi -> functional(phi) * vector``."""

    functional: FreeVector
    vector: FreeVector


def _check_semiring(a: Semiring, b: Semiring) -> None:
    if a != b:
        raise DomainError(f"semirings differ: {a.name} vs {b.name}")


def apply(M: Kernel, phi: FreeVector) -> FreeVector:
    if phi.index != M.domain:
        raise IndexMismatch(f"vector index {phi.index!r} does not match kernel domain "
                            f"{M.domain!r}")
    _check_semiring(M.semiring, phi.semiring)
    k = M.semiring
    out = []
    for j in range(len(M.codomain)):
        out.append(k.sup(k.mul(M.entries[i][j], p) for i, p in enumerate(phi.values)))
    return FreeVector(M.codomain, k, tuple(out))


def identity(index, k: Semiring) -> Kernel:
    X = index_set(index)
    return Kernel.from_function(X, X, k, lambda x, y: k.one if x == y else k.zero)


def zero_kernel(domain, codomain, k: Semiring) -> Kernel:
    return Kernel.from_function(domain, codomain, k, lambda x, y: k.zero)


def extract(f: Callable[[FreeVector], FreeVector], domain, codomain, k: Semiring) -> Kernel:
    """Sample ``f`` on the deltas: ``M(x, y) = f(delta_x)(y)``.

    The result reproduces ``f`` everywhere only when ``f`` is b-linear; use
    :func:`certify` to look for inputs where it does not.
    """
    X, Y = index_set(domain), index_set(codomain)
    rows = []
    for x in X:
        out = f(delta(X, x, k))
        if out.index != Y:
            raise IndexMismatch(f"f(delta_{x}) is not indexed by the codomain")
        rows.append(out.values)
    return Kernel(X, Y, k, tuple(rows))


def certify(M: Kernel, f: Callable[[FreeVector], FreeVector],
            inputs: Iterable[FreeVector]) -> FreeVector | None:
    """Return the first input where ``apply(M, .)`` and ``f`` disagree, else ``None``."""
    for phi in inputs:
        if apply(M, phi) != f(phi):
            return phi
    return None


def compose(M: Kernel, N: Kernel) -> Kernel:
    """The kernel of ``phi -> apply(N, apply(M, phi))``."""
    if M.codomain != N.domain:
        raise IndexMismatch("inner index sets differ")
    _check_semiring(M.semiring, N.semiring)
    k = M.semiring
    rows = []
    for mrow in M.entries:
        rows.append(tuple(
            k.sup(k.mul(m, N.entries[j][z]) for j, m in enumerate(mrow))
            for z in range(len(N.codomain))))
    return Kernel(M.domain, N.codomain, k, tuple(rows))


def rank_one(a: FreeVector, v: FreeVector) -> Kernel:
    _check_semiring(a.semiring, v.semiring)
    k = a.semiring
    return Kernel(a.index, v.index, k, tuple(tuple(k.mul(c, w) for w in v.values)
                                             for c in a.values))


def kernel_sup(kernels: Iterable[Kernel], domain=None, codomain=None,
               semiring: Semiring | None = None) -> Kernel:
    """Entrywise sup; the empty family gives the zero kernel of the given shape."""
    kernels = list(kernels)
    if not kernels:
        if domain is None or codomain is None or semiring is None:
            raise ValueError("sup of no kernels needs domain, codomain and semiring")
        return zero_kernel(domain, codomain, semiring)
    first = kernels[0]
    k = first.semiring
    rows = [list(r) for r in first.entries]
    for M in kernels[1:]:
        if M.domain != first.domain or M.codomain != first.codomain:
            raise IndexMismatch("kernel shapes differ")
        _check_semiring(k, M.semiring)
        for i, row in enumerate(M.entries):
            acc = rows[i]
            for j, v in enumerate(row):
                acc[j] = k.add(acc[j], v)
    return Kernel(first.domain, first.codomain, k, tuple(map(tuple, rows)))


def kernel_scale(c, M: Kernel) -> Kernel:
    k = M.semiring
    return Kernel(M.domain, M.codomain, k,
                  tuple(tuple(k.mul(c, v) for v in row) for row in M.entries))


def nuclear_decompose(M: Kernel) -> list[RankOneTerm]:
    return [RankOneTerm(delta(M.domain, x, M.semiring), M.row(x)) for x in M.domain]


def canonical_p(terms: Iterable[RankOneTerm], domain=None, codomain=None,
                semiring: Semiring | None = None) -> Kernel:
    """Send a finite family of rank-1 terms to the sup of their operators."""
    return kernel_sup((rank_one(t.functional, t.vector) for t in terms),
                      domain=domain, codomain=codomain, semiring=semiring)


def kron(*kernels: Kernel) -> Kernel:
    """Tensor product of operators on product index sets (flat tuple labels)."""
    if not kernels:
        raise ValueError("kron needs at least one kernel")
    k = kernels[0].semiring
    for M in kernels[1:]:
        _check_semiring(k, M.semiring)
    if len(kernels) == 1:
        return kernels[0]
    X = IndexSet.product(*(M.domain for M in kernels))
    Y = IndexSet.product(*(M.codomain for M in kernels))

    def entry(xs, ys):
        acc = k.one
        for M, x, y in zip(kernels, xs, ys):
            acc = k.mul(acc, M[x, y])
        return acc

    return Kernel.from_function(X, Y, k, entry)

