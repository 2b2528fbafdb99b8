"""Extensional tensor products of finite semimodules.

A finite semimodule is an explicit set of ``n``-tuples over a finite
commutative semiring.  A tensor in ``V1 (x) ... (x) Vm`` is identified with its
complete representation: a subset ``T`` of the product ``V1 x ... x Vm`` that
contains the zero point and is closed under three rules,

1. *scalar transfer*: if ``k_a(x)`` is in ``T`` for some slot ``a`` then
   ``k_b(x)`` is in ``T`` for every slot ``b``, where ``k_a`` multiplies slot
   ``a`` by ``k`` and ``x`` ranges over the whole product;
2. *fiber sups*: the join of the points of ``T`` lying in one fiber (all slots
   fixed but one) is in ``T`` whenever that intersection is nonempty;
3. *fiber lower sets*: if ``p`` is in ``T`` then so is every point of the same
   fiber below ``p``.

:func:`tau_hull` returns the least such set containing a given one.  Because
rule 1 ranges over all ``x`` and ``0_a(x)`` is the zero tensor's summand, every
point with a zero component lies in every tensor; with a single factor the
zero tensor is just ``{0}``.

Only finite semirings are accepted; the real families are handled by the
free representation in :mod:`idem.freetensor`.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .freemod import FreeVector, IndexSet
from .freetensor import TensorKernel, outer, zero_tensor
from .report import Check, ValidationReport
from .semiring import DomainError, Semiring, UnsupportedSemiring, is_commutative

Element = tuple
ProductPoint = tuple  # tuple of Elements, one per factor


@dataclass(frozen=True)
class FinSemimodule:
    semiring: Semiring
    dim: int
    elements: frozenset

    def __post_init__(self):
        k = self.semiring
        if not k.is_finite:
            raise UnsupportedSemiring("extensional engine requires finite semiring")
        els = frozenset(tuple(e) for e in self.elements)
        for e in els:
            if len(e) != self.dim:
                raise DomainError(f"element {e!r} does not have dimension {self.dim}")
            for c in e:
                k.check(c)
        object.__setattr__(self, "elements", els)

    @property
    def zero(self) -> Element:
        return (self.semiring.zero,) * self.dim

    def add(self, u: Element, v: Element) -> Element:
        k = self.semiring
        return tuple(k.add(a, b) for a, b in zip(u, v))

    def scale(self, c, u: Element) -> Element:
        k = self.semiring
        return tuple(k.mul(c, a) for a in u)

    def leq(self, u: Element, v: Element) -> bool:
        return self.add(u, v) == tuple(v)

    def sup(self, values: Iterable[Element]) -> Element:
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc

    def sorted_elements(self) -> list[Element]:
        return sorted(self.elements)

    def __contains__(self, u) -> bool:
        return tuple(u) in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def format(self, u: Element) -> str:
        return " ".join(self.semiring.format(c) for c in u)


def full_cube(k: Semiring, n: int) -> FinSemimodule:
    return FinSemimodule(k, n, frozenset(itertools.product(k.elements(), repeat=n)))


def span(k: Semiring, n: int, generators: Iterable[Element]) -> FinSemimodule:
    """Least subsemimodule of ``K^n`` containing the generators."""
    m = FinSemimodule(k, n, frozenset())
    found = {m.zero}
    frontier = [tuple(g) for g in generators]
    while frontier:
        new = []
        for u in frontier:
            if u in found:
                continue
            found.add(u)
            new.extend(m.scale(c, u) for c in k.elements())
            new.extend(m.add(u, v) for v in list(found))
        frontier = new
    return FinSemimodule(k, n, frozenset(found))


def direct_product(*modules: FinSemimodule) -> FinSemimodule:
    """``V1 x ... x Vm`` as a semimodule of concatenated tuples."""
    k = _common_semiring(modules)
    els = frozenset(sum(combo, ()) for combo in itertools.product(*(m.elements for m in modules)))
    return FinSemimodule(k, sum(m.dim for m in modules), els)


def lower_set(m: FinSemimodule, w: Element) -> frozenset:
    w = tuple(w)
    if w not in m.elements:
        raise DomainError(f"{w!r} is not an element of the module")
    return frozenset(u for u in m.elements if m.leq(u, w))


def validate_semimodule(m: FinSemimodule) -> ValidationReport:
    k = m.semiring
    E = m.sorted_elements()
    K = list(k.elements())
    fmt = m.format

    def check(name, witness_iter, render):
        w = next(witness_iter, None)
        return Check(name, w is None, w, render(w) if w is not None else "")

    def pair(w):
        return " ; ".join(fmt(u) for u in w)

    checks = [
        Check("contains_zero", m.zero in m.elements, None if m.zero in m.elements else (),
              "" if m.zero in m.elements else fmt(m.zero)),
        check("add_closed", ((u, v) for u, v in itertools.product(E, E)
                             if m.add(u, v) not in m.elements), pair),
        check("scalar_closed", ((c, u) for c in K for u in E if m.scale(c, u) not in m.elements),
              lambda w: f"{k.format(w[0])} ; {fmt(w[1])}"),
        check("one_acts_trivially", ((u,) for u in E if m.scale(k.one, u) != u), pair),
        check("zero_scalar", ((u,) for u in E if m.scale(k.zero, u) != m.zero), pair),
        check("scalar_associative",
              ((a, b, u) for a in K for b in K for u in E
               if m.scale(k.mul(a, b), u) != m.scale(a, m.scale(b, u))),
              lambda w: f"{k.format(w[0])} {k.format(w[1])} ; {fmt(w[2])}"),
        check("scalar_distributes_over_vectors",
              ((c, u, v) for c in K for u in E for v in E
               if m.scale(c, m.add(u, v)) != m.add(m.scale(c, u), m.scale(c, v))),
              lambda w: f"{k.format(w[0])} ; {fmt(w[1])} ; {fmt(w[2])}"),
        check("scalar_distributes_over_scalars",
              ((a, b, u) for a in K for b in K for u in E
               if m.scale(k.add(a, b), u) != m.add(m.scale(a, u), m.scale(b, u))),
              lambda w: f"{k.format(w[0])} {k.format(w[1])} ; {fmt(w[2])}"),
    ]
    return ValidationReport(f"module over {k.name} dim {m.dim}", tuple(checks))


def _common_semiring(modules: Sequence[FinSemimodule]) -> Semiring:
    if not modules:
        raise ValueError("need at least one factor")
    k = modules[0].semiring
    if any(m.semiring != k for m in modules):
        raise DomainError("factors are over different semirings")
    return k


# -- the product space and the closure engine ---------------------------------


class ProductSpace:
    """Enumerated ``V1 x ... x Vm`` with the tables the closure rules need.

    Points are encoded as integers in mixed radix, slot 0 most significant.
    """

    def __init__(self, factors: Sequence[FinSemimodule]):
        self.factors = tuple(factors)
        k = self.semiring = _common_semiring(self.factors)
        if not is_commutative(k):
            raise DomainError("tensor products need a commutative semiring")
        self.m = len(self.factors)
        K = list(k.elements())
        self.els = [m.sorted_elements() for m in self.factors]
        self.pos = [{e: i for i, e in enumerate(els)} for els in self.els]
        self.join, self.scale, self.down, self.pre = [], [], [], []
        for m, els, pos in zip(self.factors, self.els, self.pos):
            n = len(els)
            try:
                self.join.append([[pos[m.add(u, v)] for v in els] for u in els])
                self.scale.append([[pos[m.scale(c, u)] for u in els] for c in K])
            except KeyError:
                raise DomainError("factor is not closed under + and scalars") from None
            self.down.append([[j for j in range(n) if m.leq(els[j], els[i])] for i in range(n)])
            pre = []
            for c in K:
                row = [[] for _ in range(n)]
                for j in range(n):
                    row[self.scale[-1][c][j]].append(j)
                pre.append(row)
            self.pre.append(pre)
        self.sizes = [len(e) for e in self.els]
        self.strides = [1] * self.m
        for a in range(self.m - 2, -1, -1):
            self.strides[a] = self.strides[a + 1] * self.sizes[a + 1]
        self.size = self.strides[0] * self.sizes[0]
        self.scalars = K
        self.zero_id = self.encode(tuple(m.zero for m in self.factors))
        self._succ: dict[int, tuple[int, ...]] = {}

    # encoding
    def comps(self, p: int) -> list[int]:
        out = []
        for s, n in zip(self.strides, self.sizes):
            out.append((p // s) % n)
        return out

    def encode(self, point: ProductPoint) -> int:
        if len(point) != self.m:
            raise DomainError(f"point has {len(point)} components, expected {self.m}")
        p = 0
        for a, (e, s) in enumerate(zip(point, self.strides)):
            try:
                p += self.pos[a][tuple(e)] * s
            except KeyError:
                raise DomainError(f"{tuple(e)!r} is not in factor {a}") from None
        return p

    def decode(self, p: int) -> ProductPoint:
        return tuple(self.els[a][i] for a, i in enumerate(self.comps(p)))

    def replace(self, p: int, slot: int, j: int) -> int:
        s = self.strides[slot]
        return p + (j - (p // s) % self.sizes[slot]) * s

    def fiber_key(self, p: int, slot: int) -> tuple[int, int]:
        return slot, self.replace(p, slot, 0)

    def all_ids(self) -> range:
        return range(self.size)

    # closure rules
    def successors(self, p: int) -> tuple[int, ...]:
        """Points forced into any tensor containing ``p`` by rules 1 and 3."""
        got = self._succ.get(p)
        if got is not None:
            return got
        cs = self.comps(p)
        out = set()
        for a in range(self.m):
            for j in self.down[a][cs[a]]:
                out.add(self.replace(p, a, j))
            for c in self.scalars:
                for u in self.pre[a][c][cs[a]]:
                    x = self.replace(p, a, u)
                    for b in range(self.m):
                        if b != a:
                            xb = (x // self.strides[b]) % self.sizes[b]
                            out.add(self.replace(x, b, self.scale[b][c][xb]))
        out.discard(p)
        got = self._succ[p] = tuple(sorted(out))
        return got

    def hull(self, seed: Iterable[int]) -> frozenset:
        closed: set[int] = set()
        members: dict[tuple[int, int], list[int]] = defaultdict(list)
        queue: list[int] = []

        def push(q):
            if q not in closed:
                closed.add(q)
                queue.append(q)

        push(self.zero_id)
        for q in seed:
            push(q)
        while queue:
            p = queue.pop()
            for q in self.successors(p):
                push(q)
            cs = self.comps(p)
            for a in range(self.m):
                mem = members[self.fiber_key(p, a)]
                ja = self.join[a]
                for r in mem:
                    push(self.replace(p, a, ja[cs[a]][(r // self.strides[a]) % self.sizes[a]]))
                mem.append(p)
        return frozenset(closed)

    def is_closed(self, ids: frozenset) -> bool:
        if self.zero_id not in ids:
            return False
        fibers: dict[tuple[int, int], list[int]] = defaultdict(list)
        for p in ids:
            if any(q not in ids for q in self.successors(p)):
                return False
            for a in range(self.m):
                fibers[self.fiber_key(p, a)].append(p)
        for (a, _), pts in fibers.items():
            ja, s, n = self.join[a], self.strides[a], self.sizes[a]
            top = (pts[0] // s) % n
            for p in pts[1:]:
                top = ja[top][(p // s) % n]
            if self.replace(pts[0], a, top) not in ids:
                return False
        return True


@lru_cache(maxsize=64)
def product_space(factors: tuple[FinSemimodule, ...]) -> ProductSpace:
    return ProductSpace(factors)


@dataclass(frozen=True)
class ExtTensor:
    factors: tuple[FinSemimodule, ...]
    points: frozenset
    canonical: bool = False

    @property
    def space(self) -> ProductSpace:
        return product_space(self.factors)

    def __len__(self) -> int:
        return len(self.points)

    def sorted_points(self) -> list[ProductPoint]:
        return sorted(self.points)


def _space(factors) -> ProductSpace:
    return product_space(tuple(factors))


def _ids(space: ProductSpace, points: Iterable[ProductPoint]) -> list[int]:
    return [space.encode(p) for p in points]


def _tensor(space: ProductSpace, ids: Iterable[int]) -> ExtTensor:
    return ExtTensor(space.factors, frozenset(space.decode(p) for p in ids), True)


def tau_hull(factors: Sequence[FinSemimodule], points: Iterable[ProductPoint]) -> ExtTensor:
    """The least tensor containing ``points``."""
    S = _space(factors)
    return _tensor(S, S.hull(_ids(S, points)))


def canonical_pi(factors: Sequence[FinSemimodule], x: ProductPoint) -> ExtTensor:
    """The pure tensor of the point ``x``."""
    return tau_hull(factors, [x])


def tensors_equal(factors: Sequence[FinSemimodule], X: Iterable[ProductPoint],
                  Y: Iterable[ProductPoint]) -> bool:
    S = _space(factors)
    return S.hull(_ids(S, X)) == S.hull(_ids(S, Y))


def is_tensor(factors: Sequence[FinSemimodule], points: Iterable[ProductPoint]) -> bool:
    S = _space(factors)
    return S.is_closed(frozenset(_ids(S, points)))


def bounded_by(factors: Sequence[FinSemimodule], points: Iterable[ProductPoint],
               x: ProductPoint) -> bool:
    return frozenset(points) <= canonical_pi(factors, x).points


def _check_factors(s: ExtTensor, t: ExtTensor) -> None:
    if s.factors != t.factors:
        raise DomainError("tensors live in different products")


def tensor_add(s: ExtTensor, t: ExtTensor) -> ExtTensor:
    _check_factors(s, t)
    return tau_hull(s.factors, s.points | t.points)


def tensor_sup(tensors: Iterable[ExtTensor], factors: Sequence[FinSemimodule]) -> ExtTensor:
    pts: set = set()
    for t in tensors:
        if t.factors != tuple(factors):
            raise DomainError("tensors live in different products")
        pts |= t.points
    return tau_hull(factors, pts)


def scale_slot(factors: Sequence[FinSemimodule], c, x: ProductPoint, slot: int) -> ProductPoint:
    """``c_slot(x)``: multiply one component by ``c``."""
    if not 0 <= slot < len(factors):
        raise DomainError(f"slot {slot} out of range")
    return tuple(factors[a].scale(c, e) if a == slot else tuple(e) for a, e in enumerate(x))


def tensor_scalar(c, t: ExtTensor, slot: int = 0) -> ExtTensor:
    t.factors[0].semiring.check(c)
    return tau_hull(t.factors, [scale_slot(t.factors, c, p, slot) for p in t.points])


def fiber(factors: Sequence[FinSemimodule], slot: int, through: ProductPoint) -> frozenset:
    """All points agreeing with ``through`` outside ``slot``."""
    if not 0 <= slot < len(factors):
        raise DomainError(f"slot {slot} out of range")
    through = tuple(tuple(e) for e in through)
    return frozenset(through[:slot] + (v,) + through[slot + 1:]
                     for v in factors[slot].elements)


def all_points(factors: Sequence[FinSemimodule]) -> Iterator[ProductPoint]:
    return itertools.product(*(m.sorted_elements() for m in factors))


def zero_point(factors: Sequence[FinSemimodule]) -> ProductPoint:
    return tuple(m.zero for m in factors)


def all_tensors(factors: Sequence[FinSemimodule]) -> list[ExtTensor]:
    """Every tensor, as sups of pure tensors (these generate the product)."""
    S = _space(factors)
    gens = {S.hull([p]) for p in S.all_ids()}
    found = set(gens) | {S.hull([])}
    frontier = list(found)
    while frontier:
        new = []
        for t in frontier:
            for g in gens:
                u = S.hull(t | g)
                if u not in found:
                    found.add(u)
                    new.append(u)
        frontier = new
    return sorted((_tensor(S, ids) for ids in found), key=lambda t: (len(t), t.sorted_points()))


# -- one-step rewrites by the defining identities ------------------------------


def _subsets_with_sup(m: FinSemimodule, target: Element) -> Iterator[tuple[Element, ...]]:
    els = m.sorted_elements()
    below = [e for e in els if m.leq(e, target)]
    for r in range(len(below) + 1):
        for combo in itertools.combinations(below, r):
            if m.sup(combo) == target:
                yield combo


def rewrite_neighbors(factors: Sequence[FinSemimodule], points: Iterable[ProductPoint]
                      ) -> set[frozenset]:
    """Representations reachable from ``points`` by one use of either identity.

    Scalar transfer: a summand ``c_a(x)`` may be replaced by ``c_b(x)``.
    Splitting: a summand whose slot ``a`` equals the join of a finite set ``R``
    may be replaced by the summands obtained by putting each member of ``R``
    in slot ``a`` (``R`` empty when that slot is zero), and conversely.  Each
    replacement is produced both dropping and keeping the rewritten summands,
    since formal addition is idempotent.
    """
    factors = tuple(factors)
    X = frozenset(tuple(tuple(e) for e in p) for p in points)
    k = _common_semiring(factors)
    out: set[frozenset] = set()

    def emit(removed, added):
        out.add((X - removed) | added)
        out.add(X | added)

    for x in all_points(factors):
        for c in k.elements():
            for a in range(len(factors)):
                p = scale_slot(factors, c, x, a)
                if p not in X:
                    continue
                for b in range(len(factors)):
                    if b != a:
                        emit(frozenset([p]), frozenset([scale_slot(factors, c, x, b)]))
    for p in all_points(factors):
        for a, m in enumerate(factors):
            for R in _subsets_with_sup(m, p[a]):
                parts = frozenset(p[:a] + (r,) + p[a + 1:] for r in R)
                if p in X:
                    emit(frozenset([p]), parts)
                if parts <= X:
                    emit(parts, frozenset([p]))
    out.discard(X)
    return out


# -- polylinear maps -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PolyMapTable:
    factors: tuple[FinSemimodule, ...]
    codomain: FinSemimodule
    table: Mapping = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        object.__setattr__(self, "table", {tuple(tuple(e) for e in p): tuple(w)
                                           for p, w in self.table.items()})

    def __call__(self, x: ProductPoint) -> Element:
        try:
            return self.table[tuple(tuple(e) for e in x)]
        except KeyError:
            raise DomainError(f"map undefined at {x!r}") from None

    @classmethod
    def from_function(cls, factors, codomain: FinSemimodule, fn: Callable) -> PolyMapTable:
        factors = tuple(factors)
        return cls(factors, codomain, {p: tuple(fn(p)) for p in all_points(factors)})

    @classmethod
    def from_generators(cls, factors, codomain: FinSemimodule, values: Mapping
                        ) -> PolyMapTable:
        """Polylinear extension from values on tuples of unit vectors.

        Every factor must be a full cube ``K^n``; ``values[(i1, ..., im)]`` is
        the image of ``(e_i1, ..., e_im)``.
        """
        factors = tuple(factors)
        k = _common_semiring(factors)
        for m in factors:
            if len(m) != k.size ** m.dim:
                raise DomainError("generator extension needs full cubes")
        idx = list(itertools.product(*(range(m.dim) for m in factors)))
        missing = [i for i in idx if i not in values]
        if missing:
            raise DomainError(f"no generator value for {missing[0]!r}")

        def fn(x):
            terms = []
            for i in idx:
                c = k.one
                for e, ia in zip(x, i):
                    c = k.mul(c, e[ia])
                terms.append(codomain.scale(c, values[i]))
            return codomain.sup(terms)

        return cls.from_function(factors, codomain, fn)


def validate_polylinear(f: PolyMapTable) -> ValidationReport:
    """Check that ``f`` is total and separately linear in every slot."""
    factors, W = f.factors, f.codomain
    k = _common_semiring(factors)
    pts = list(all_points(factors))
    missing = next((p for p in pts if p not in f.table), None)
    outside = next((p for p in pts if p in f.table and f.table[p] not in W.elements), None)
    checks = [Check("total", missing is None, missing, "" if missing is None else repr(missing)),
              Check("into_codomain", outside is None, outside,
                    "" if outside is None else repr(outside))]
    if missing is not None:
        return ValidationReport("polylinear map", tuple(checks))

    def sub(x, a, v):
        return x[:a] + (v,) + x[a + 1:]

    zero_w = add_w = scal_w = None
    for a, m in enumerate(factors):
        els = m.sorted_elements()
        others = [p for p in pts if p[a] == m.zero]  # one representative per fixing
        for x in others:
            if zero_w is None and f.table[x] != W.zero:
                zero_w = (a, x)
            if add_w is None:
                for u, v in itertools.product(els, els):
                    lhs = f.table[sub(x, a, m.add(u, v))]
                    if lhs != W.add(f.table[sub(x, a, u)], f.table[sub(x, a, v)]):
                        add_w = (a, x, u, v)
                        break
            if scal_w is None:
                for c, u in itertools.product(k.elements(), els):
                    if f.table[sub(x, a, m.scale(c, u))] != W.scale(c, f.table[sub(x, a, u)]):
                        scal_w = (a, x, c, u)
                        break
    for name, w in (("preserves_zero", zero_w), ("preserves_add", add_w),
                    ("preserves_scalars", scal_w)):
        checks.append(Check(name, w is None, w, "" if w is None else repr(w)))
    return ValidationReport("polylinear map", tuple(checks))


def factorize_ext(f: PolyMapTable, t: ExtTensor) -> Element:
    """The linear map on tensors through which ``f`` factors, at ``t``."""
    if t.factors != f.factors:
        raise DomainError("tensor and map have different factors")
    return f.codomain.sup(f(p) for p in t.points)


def preimage_of_lower(f: PolyMapTable, w: Element) -> frozenset:
    W = f.codomain
    return frozenset(p for p, v in f.table.items() if W.leq(v, w))


# -- bridge to the free representation ---------------------------------------


def cube_index(n: int) -> IndexSet:
    return IndexSet(str(i) for i in range(n))


def _require_cubes(factors: Sequence[FinSemimodule]) -> Semiring:
    k = _common_semiring(factors)
    for m in factors:
        if len(m) != k.size ** m.dim:
            raise DomainError("the free bridge needs full cubes K^n")
    return k


def to_free(t: ExtTensor) -> TensorKernel:
    """``T -> sup of outer(p1, ..., pm) over the points p of T``."""
    k = _require_cubes(t.factors)
    idx = [cube_index(m.dim) for m in t.factors]
    acc = zero_tensor(idx, k).coeffs.values
    for p in t.points:
        o = outer(*(FreeVector(I, k, e) for I, e in zip(idx, p))).coeffs.values
        acc = tuple(k.add(a, b) for a, b in zip(acc, o))
    return TensorKernel(tuple(idx), FreeVector(IndexSet.product(*idx), k, acc))


def from_free(tk: TensorKernel, factors: Sequence[FinSemimodule]) -> ExtTensor:
    """``f -> hull of { f(x) * e_x1, e_x2, ..., e_xm }``."""
    factors = tuple(factors)
    k = _require_cubes(factors)
    if tuple(len(I) for I in tk.factors) != tuple(m.dim for m in factors):
        raise DomainError("tensor shape does not match the cube dimensions")
    n = len(factors)

    def unit(dim, i, c):
        return tuple(c if j == i else k.zero for j in range(dim))

    pts = []
    for label, c in tk.coeffs.items():
        labels = (label,) if n == 1 else label
        ix = [I.index(x) for I, x in zip(tk.factors, labels)]
        pts.append(tuple(unit(m.dim, i, c if a == 0 else k.one)
                         for a, (m, i) in enumerate(zip(factors, ix))))
    return tau_hull(factors, pts)
