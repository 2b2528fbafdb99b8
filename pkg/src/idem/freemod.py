"""Free semimodules B(X, K) over a finite index set X.

Every function on a finite X is bounded, so a :class:`FreeVector` is simply a
total coefficient table.  The same type stores b-linear functionals: a
functional on B(X, K) is determined by its values on the deltas, and
:func:`functional_apply` evaluates it as the idempotent integral
``sup_x a(x) * phi(x)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Sequence

from .semiring import DomainError, Semiring


class IndexMismatch(DomainError):
    pass


class IndexSet:
    """Finite ordered set of distinct labels (strings or tuples of labels)."""

    __slots__ = ("labels", "_pos")

    def __init__(self, labels: Iterable[Hashable]):
        self.labels = tuple(labels)
        self._pos = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._pos) != len(self.labels):
            raise ValueError("index labels must be unique")

    @classmethod
    def product(cls, *factors: IndexSet) -> IndexSet:
        """Cartesian product with flat tuple labels; a single factor is returned as is."""
        if len(factors) == 1:
            return factors[0]
        labels: list[tuple] = [()]
        for f in factors:
            labels = [t + (x,) for t in labels for x in f.labels]
        return cls(labels)

    def index(self, label) -> int:
        try:
            return self._pos[label]
        except KeyError:
            raise IndexMismatch(f"label {label!r} not in index set") from None

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator:
        return iter(self.labels)

    def __contains__(self, label) -> bool:
        return label in self._pos

    def __eq__(self, other) -> bool:
        return isinstance(other, IndexSet) and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __repr__(self) -> str:
        return f"IndexSet({list(self.labels)!r})"


def index_set(labels: Iterable) -> IndexSet:
    return labels if isinstance(labels, IndexSet) else IndexSet(labels)


@dataclass(frozen=True)
class FreeVector:
    index: IndexSet
    semiring: Semiring
    values: tuple

    def __post_init__(self):
        if len(self.values) != len(self.index):
            raise IndexMismatch(
                f"{len(self.values)} coefficients for {len(self.index)} labels")
        object.__setattr__(self, "values", tuple(self.semiring.check(v) for v in self.values))

    @classmethod
    def from_mapping(cls, index, semiring: Semiring, coeffs: dict) -> FreeVector:
        """Build from a partial mapping; missing labels get the zero."""
        index = index_set(index)
        for lab in coeffs:
            index.index(lab)
        return cls(index, semiring, tuple(coeffs.get(x, semiring.zero) for x in index))

    def __getitem__(self, label):
        return self.values[self.index.index(label)]

    def items(self):
        return zip(self.index.labels, self.values)

    def support(self) -> list:
        z = self.semiring.zero
        return [x for x, v in self.items() if v != z]

    def __repr__(self) -> str:
        k = self.semiring
        body = ", ".join(f"{x}: {k.format(v)}" for x, v in self.items())
        return f"FreeVector[{k.name}]({{{body}}})"


def _same_space(u: FreeVector, v: FreeVector) -> None:
    if u.index != v.index:
        raise IndexMismatch(f"index sets differ: {u.index!r} vs {v.index!r}")
    if u.semiring != v.semiring:
        raise DomainError(f"semirings differ: {u.semiring.name} vs {v.semiring.name}")


def zero_vector(index, k: Semiring) -> FreeVector:
    index = index_set(index)
    return FreeVector(index, k, (k.zero,) * len(index))


def delta(index, x, k: Semiring) -> FreeVector:
    """The indicator with ``1`` at ``x`` and ``0`` elsewhere."""
    index = index_set(index)
    i = index.index(x)
    return FreeVector(index, k, tuple(k.one if j == i else k.zero for j in range(len(index))))


def vec_add(u: FreeVector, v: FreeVector) -> FreeVector:
    _same_space(u, v)
    k = u.semiring
    return FreeVector(u.index, k, tuple(k.add(a, b) for a, b in zip(u.values, v.values)))


def scalar_mul(c, v: FreeVector) -> FreeVector:
    k = v.semiring
    return FreeVector(v.index, k, tuple(k.mul(c, a) for a in v.values))


def vec_sup(vectors: Iterable[FreeVector], index=None, semiring: Semiring | None = None
            ) -> FreeVector:
    """Pointwise sup; the empty family needs ``index`` and ``semiring`` and gives zero."""
    vectors = list(vectors)
    if not vectors:
        if index is None or semiring is None:
            raise ValueError("sup of no vectors needs an index set and a semiring")
        return zero_vector(index, semiring)
    acc = vectors[0]
    if index is not None and acc.index != index_set(index):
        raise IndexMismatch("vector index differs from the requested index set")
    for v in vectors[1:]:
        acc = vec_add(acc, v)
    return acc


def functional_apply(a: FreeVector, phi: FreeVector):
    """Evaluate the functional with coefficient table ``a`` at ``phi``."""
    _same_space(a, phi)
    k = a.semiring
    return k.sup(k.mul(c, p) for c, p in zip(a.values, phi.values))


def generator_expansion(v: FreeVector) -> list[FreeVector]:
    """The terms ``v(x) * delta_x`` whose sup is ``v``."""
    return [scalar_mul(c, delta(v.index, x, v.semiring)) for x, c in v.items()]


def all_vectors(index, k: Semiring) -> Iterator[FreeVector]:
    """Every vector of B(X, K) for a finite semiring, in lexicographic order."""
    index = index_set(index)
    for vals in itertools.product(k.elements(), repeat=len(index)):
        yield FreeVector(index, k, vals)


def vector(labels: Sequence, k: Semiring, values: Sequence) -> FreeVector:
    """Shorthand: ``vector("ab", rmax(), [0, 1])``."""
    return FreeVector(index_set(list(labels)), k, tuple(values))
