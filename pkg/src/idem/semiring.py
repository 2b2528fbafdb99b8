"""Idempotent semirings.

A :class:`Semiring` is an immutable descriptor; elements are plain Python
values.  Finite kinds (``boolean``, ``chain``, ``table``) use carrier indices
``0..n-1``; the real families (``rmax``, ``rmax_top``, ``rmin``,
``rmin_top``) use floats, with ``-inf``/``+inf`` as the adjoined tokens.

All sets handled by this package are finite, so the generalized
distributivity over infinite families is never checked separately: on finite
families it follows from the binary laws.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .report import Check, ValidationReport

NEG_INF = float("-inf")
POS_INF = float("inf")

FINITE_KINDS = ("boolean", "chain", "table")
REAL_KINDS = ("rmax", "rmax_top", "rmin", "rmin_top")


class DomainError(ValueError):
    """A value is not an element of the carrier, or an operation is undefined."""


class UnsupportedSemiring(DomainError):
    """The operation needs a finite semiring."""


@dataclass(frozen=True)
class Semiring:
    kind: str
    size: int = 0
    labels: tuple[str, ...] = ()
    add_table: tuple[tuple[int, ...], ...] = ()
    mul_table: tuple[tuple[int, ...], ...] = ()
    zero_index: int = 0
    one_index: int = 0

    def __post_init__(self):
        if self.kind not in FINITE_KINDS + REAL_KINDS:
            raise ValueError(f"unknown semiring kind {self.kind!r}")
        if self.kind == "table":
            n = len(self.labels)
            if n == 0:
                raise ValueError("table semiring needs at least one element")
            if len(set(self.labels)) != n:
                raise ValueError("duplicate element labels")
            for name, t in (("add", self.add_table), ("mul", self.mul_table)):
                if len(t) != n or any(len(row) != n for row in t):
                    raise ValueError(f"{name} table must be {n}x{n}")
                if any(not 0 <= v < n for row in t for v in row):
                    raise ValueError(f"{name} table has out-of-range entries")
            if not (0 <= self.zero_index < n and 0 <= self.one_index < n):
                raise ValueError("zero/one out of range")
            object.__setattr__(self, "size", n)
        elif self.kind in ("boolean", "chain"):
            if self.size < 1:
                raise ValueError("chain size must be positive")
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.size)))

    # -- identity -------------------------------------------------------

    @property
    def name(self) -> str:
        if self.kind == "chain":
            return f"chain:{self.size}"
        return self.kind

    def __repr__(self) -> str:
        return f"Semiring({self.name})"

    @property
    def is_finite(self) -> bool:
        return self.kind in FINITE_KINDS

    @property
    def zero(self):
        if self.kind in ("rmax", "rmax_top"):
            return NEG_INF
        if self.kind in ("rmin", "rmin_top"):
            return POS_INF
        if self.kind == "table":
            return self.zero_index
        return 0

    @property
    def one(self):
        if self.kind in REAL_KINDS:
            return 0.0
        if self.kind == "table":
            return self.one_index
        return self.size - 1

    @cached_property
    def top(self):
        """Greatest element, or ``None`` when the carrier has none."""
        if self.kind == "rmax_top":
            return POS_INF
        if self.kind == "rmin_top":
            return NEG_INF
        if self.kind in ("rmax", "rmin"):
            return None
        candidate = self.sup(self.elements())
        if all(self.leq(a, candidate) for a in self.elements()):
            return candidate
        return None

    def elements(self) -> range:
        if not self.is_finite:
            raise UnsupportedSemiring(f"{self.name} has an infinite carrier")
        return range(self.size)

    # -- membership -----------------------------------------------------

    def check(self, a):
        """Return ``a`` normalized to the carrier, or raise :class:`DomainError`."""
        if self.is_finite:
            if isinstance(a, bool) or not isinstance(a, int) or not 0 <= a < self.size:
                raise DomainError(f"{a!r} is not an element of {self.name}")
            return a
        if isinstance(a, bool) or not isinstance(a, (int, float)):
            raise DomainError(f"{a!r} is not an element of {self.name}")
        x = float(a) + 0.0  # folds -0.0 into 0.0
        if math.isnan(x):
            raise DomainError(f"NaN is not an element of {self.name}")
        if x == POS_INF and self.kind not in ("rmax_top", "rmin", "rmin_top"):
            raise DomainError(f"+inf is not an element of {self.name}")
        if x == NEG_INF and self.kind not in ("rmax", "rmax_top", "rmin_top"):
            raise DomainError(f"-inf is not an element of {self.name}")
        return x

    def __contains__(self, a) -> bool:
        try:
            self.check(a)
        except DomainError:
            return False
        return True

    # -- operations -----------------------------------------------------

    def add(self, a, b):
        a, b = self.check(a), self.check(b)
        if self.kind == "table":
            return self.add_table[a][b]
        if self.kind in ("boolean", "chain", "rmax", "rmax_top"):
            return max(a, b)
        return min(a, b)

    def mul(self, a, b):
        a, b = self.check(a), self.check(b)
        if self.kind == "table":
            return self.mul_table[a][b]
        if self.kind in ("boolean", "chain"):
            return min(a, b)
        z = self.zero
        if a == z or b == z:
            # 0 absorbs the adjoined infinity as well
            return z
        return a + b

    def leq(self, a, b) -> bool:
        return self.add(a, b) == self.check(b)

    def sup(self, values: Iterable):
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc

    def meet(self, values: Iterable):
        vals = [self.check(v) for v in values]
        if not vals:
            raise DomainError("meet of the empty set is undefined")
        if self.kind in ("boolean", "chain", "rmax", "rmax_top"):
            return min(vals)
        if self.kind in ("rmin", "rmin_top"):
            return max(vals)
        lower = [c for c in self.elements() if all(self.leq(c, v) for v in vals)]
        return self.sup(lower)

    # -- tokens ---------------------------------------------------------

    def parse(self, token: str):
        if self.is_finite:
            try:
                return self.labels.index(token)
            except ValueError:
                raise DomainError(f"{token!r} is not an element of {self.name}") from None
        t = token.strip().lower()
        if t in ("-inf", "-∞"):
            x = NEG_INF
        elif t in ("+inf", "inf", "+∞", "∞"):
            x = POS_INF
        else:
            try:
                x = float(t)
            except ValueError:
                raise DomainError(f"bad numeric token {token!r}") from None
            if not math.isfinite(x):
                raise DomainError(f"bad numeric token {token!r}")
        return self.check(x)

    def format(self, a) -> str:
        a = self.check(a)
        if self.is_finite:
            return self.labels[a]
        if a == NEG_INF:
            return "-inf"
        if a == POS_INF:
            return "+inf"
        if a.is_integer() and abs(a) < 2**53:
            return str(int(a))
        return repr(a)


def boolean() -> Semiring:
    return Semiring("boolean", size=2)


def chain(n: int) -> Semiring:
    """Chain ``{0..n-1}`` with max/min; ``chain(2)`` is the Boolean semiring."""
    return Semiring("chain", size=n)


def rmax() -> Semiring:
    return Semiring("rmax")


def rmax_top() -> Semiring:
    return Semiring("rmax_top")


def rmin() -> Semiring:
    return Semiring("rmin")


def from_tables(elements: Sequence[str], add: Sequence[Sequence[str]],
                mul: Sequence[Sequence[str]], zero: str, one: str) -> Semiring:
    """Build a finite-table semiring from label matrices."""
    labels = tuple(elements)
    pos = {lab: i for i, lab in enumerate(labels)}

    def conv(rows):
        try:
            return tuple(tuple(pos[v] for v in row) for row in rows)
        except KeyError as e:
            raise ValueError(f"unknown label {e.args[0]!r} in table") from None

    if zero not in pos or one not in pos:
        raise ValueError("zero/one label not among elements")
    return Semiring("table", labels=labels, add_table=conv(add), mul_table=conv(mul),
                    zero_index=pos[zero], one_index=pos[one])


def as_table(k: Semiring) -> Semiring:
    """Re-express a finite semiring as an explicit table semiring."""
    els = k.elements()
    return Semiring("table", labels=k.labels,
                    add_table=tuple(tuple(k.add(a, b) for b in els) for a in els),
                    mul_table=tuple(tuple(k.mul(a, b) for b in els) for a in els),
                    zero_index=k.zero, one_index=k.one)


BUILTIN_NAMES = ("boolean", "chain:<n>", "rmax", "rmax_top", "rmin", "rmin_top")


def builtin(name: str) -> Semiring:
    if name == "boolean":
        return boolean()
    if name.startswith("chain:"):
        try:
            n = int(name.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad chain size in {name!r}") from None
        return chain(n)
    if name in REAL_KINDS:
        return Semiring(name)
    raise ValueError(f"unknown semiring {name!r}")


def validate_semiring(k: Semiring) -> ValidationReport:
    """Exhaustively check the idempotent-semiring axioms on a finite carrier.

    The real families are reported as ``assumed``: their laws hold
    analytically and cannot be enumerated.
    """
    names = ("add_idempotent", "add_commutative", "add_associative", "mul_associative",
             "left_distributive", "right_distributive", "zero_neutral", "zero_absorbing",
             "one_neutral", "zero_ne_one")
    if not k.is_finite:
        return ValidationReport(k.name, tuple(Check(n, None) for n in names))

    E = k.elements()
    add = k.add_table if k.kind == "table" else tuple(tuple(k.add(a, b) for b in E) for a in E)
    mul = k.mul_table if k.kind == "table" else tuple(tuple(k.mul(a, b) for b in E) for a in E)
    z, o = k.zero, k.one

    def first(it):
        return next(it, None)

    pairs = lambda: itertools.product(E, E)  # noqa: E731
    triples = lambda: itertools.product(E, E, E)  # noqa: E731
    witnesses = {
        "add_idempotent": first((a,) for a in E if add[a][a] != a),
        "add_commutative": first((a, b) for a, b in pairs() if add[a][b] != add[b][a]),
        "add_associative": first((a, b, c) for a, b, c in triples()
                                 if add[add[a][b]][c] != add[a][add[b][c]]),
        "mul_associative": first((a, b, c) for a, b, c in triples()
                                 if mul[mul[a][b]][c] != mul[a][mul[b][c]]),
        "left_distributive": first((a, b, c) for a, b, c in triples()
                                   if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]),
        "right_distributive": first((a, b, c) for a, b, c in triples()
                                    if mul[add[b][c]][a] != add[mul[b][a]][mul[c][a]]),
        "zero_neutral": first((a,) for a in E if add[a][z] != a or add[z][a] != a),
        "zero_absorbing": first((a,) for a in E if mul[a][z] != z or mul[z][a] != z),
        "one_neutral": first((a,) for a in E if mul[a][o] != a or mul[o][a] != a),
        "zero_ne_one": (z,) if z == o else None,
    }
    checks = []
    for n in names:
        w = witnesses[n]
        detail = " ".join(k.labels[i] for i in w) if w is not None else ""
        checks.append(Check(n, w is None, w, detail))
    return ValidationReport(k.name, tuple(checks))


def is_commutative(k: Semiring) -> bool:
    if not k.is_finite:
        return True
    return all(k.mul(a, b) == k.mul(b, a) for a in k.elements() for b in k.elements())


def complete_top(k: Semiring) -> Semiring:
    """Adjoin a greatest element when the carrier lacks one.

    Finite carriers always have a top (the join of everything), so only the
    real families change: ``rmax -> rmax_top`` and ``rmin -> rmin_top``.
    """
    if k.kind == "rmax":
        return Semiring("rmax_top")
    if k.kind == "rmin":
        return Semiring("rmin_top")
    return k
