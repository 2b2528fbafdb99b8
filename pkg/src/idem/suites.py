"""Property suites behind ``idem check``.

Each suite takes a seeded :class:`random.Random` and a size cap and returns
one :class:`PropertyResult` per property.  Exhaustive checks enumerate small
finite instances; randomized checks draw max-plus values from a small grid
of integers and ``-inf`` so that every comparison is exact.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable

from . import exttensor as ext
from .freemod import (
    FreeVector,
    IndexSet,
    all_vectors,
    delta,
    functional_apply,
    generator_expansion,
    scalar_mul,
    vec_add,
    vec_sup,
    zero_vector,
)
from .freetensor import (
    PureSum,
    dsum_inject,
    dsum_project,
    from_pure_sum,
    map_direct_product,
    map_direct_sum,
    outer,
    structural_iso,
    to_pure_sum,
)
from .kernelop import (
    Kernel,
    apply,
    canonical_p,
    compose,
    extract,
    identity,
    kron,
    nuclear_decompose,
)
from .semiring import NEG_INF, Semiring, boolean, chain, rmax, validate_semiring
from .tables import broken_tables, stored_tables

DEFAULT_SEED = 42


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    detail: str = ""


def _labels(n: int, prefix: str = "x") -> IndexSet:
    return IndexSet(f"{prefix}{i}" for i in range(n))


def random_rmax(rng: random.Random, p_zero: float = 0.2):
    return NEG_INF if rng.random() < p_zero else float(rng.randint(-5, 5))


def random_vector(rng, index: IndexSet, k: Semiring) -> FreeVector:
    if k.is_finite:
        return FreeVector(index, k, tuple(rng.choice(k.elements()) for _ in index))
    return FreeVector(index, k, tuple(random_rmax(rng) for _ in index))


def random_kernel(rng, X: IndexSet, Y: IndexSet, k: Semiring) -> Kernel:
    return Kernel(X, Y, k, tuple(random_vector(rng, Y, k).values for _ in X))


def all_kernels(X: IndexSet, Y: IndexSet, k: Semiring):
    for vals in itertools.product(k.elements(), repeat=len(X) * len(Y)):
        rows = tuple(vals[i * len(Y):(i + 1) * len(Y)] for i in range(len(X)))
        yield Kernel(X, Y, k, rows)


def _result(name: str, failure) -> PropertyResult:
    return PropertyResult(name, failure is None, "" if failure is None else repr(failure))


def _first(it):
    return next(iter(it), None)


# -- suites -------------------------------------------------------------------


def suite_semiring(rng, size):
    out = []
    finite = {"boolean": boolean(), **{f"chain:{n}": chain(n) for n in range(2, 6)},
              **stored_tables()}
    for name, k in finite.items():
        r = validate_semiring(k)
        out.append(_result(f"axioms {name}", None if r.ok else r.failures()[0].name))
    for name, k in broken_tables().items():
        r = validate_semiring(k)
        out.append(_result(f"rejects {name}", None if not r.ok else "accepted"))
    for name, k in finite.items():
        E = k.elements()
        bad = _first((a, b) for a, b in itertools.product(E, E)
                     if k.leq(a, b) and k.leq(b, a) and a != b)
        bad = bad or _first((a, b, c) for a, b, c in itertools.product(E, E, E)
                            if k.leq(a, b) and k.leq(b, c) and not k.leq(a, c))
        bad = bad or _first((a, b) for a, b in itertools.product(E, E) if k.add(a, b) != k.sup([a, b]))
        out.append(_result(f"order {name}", bad))
    R = rmax()
    bad = None
    for _ in range(500):
        a, b, c = (random_rmax(rng) for _ in range(3))
        if (R.add(a, b) != R.add(b, a) or R.add(a, a) != a
                or R.mul(a, R.add(b, c)) != R.add(R.mul(a, b), R.mul(a, c))
                or R.mul(R.mul(a, b), c) != R.mul(a, R.mul(b, c))):
            bad = (a, b, c)
            break
    out.append(_result("laws rmax sampled", bad))
    return out


def suite_freemod(rng, size):
    out = []
    for k in (boolean(), chain(3)):
        for n in range(1, min(size, 3) + 1):
            X = _labels(n)
            V = list(all_vectors(X, k))
            bad = _first((u, v, w) for u in V for v in V for w in V
                         if vec_add(vec_add(u, v), w) != vec_add(u, vec_add(v, w)))
            bad = bad or _first((u, v) for u in V for v in V
                                if vec_add(u, v) != vec_add(v, u) or vec_add(u, u) != u)
            bad = bad or _first((c, d, v) for c in k.elements() for d in k.elements() for v in V
                                if scalar_mul(k.mul(c, d), v) != scalar_mul(c, scalar_mul(d, v))
                                or scalar_mul(k.add(c, d), v)
                                != vec_add(scalar_mul(c, v), scalar_mul(d, v)))
            bad = bad or _first((c, u, v) for c in k.elements() for u in V for v in V
                                if scalar_mul(c, vec_add(u, v))
                                != vec_add(scalar_mul(c, u), scalar_mul(c, v)))
            out.append(_result(f"module laws {k.name} |X|={n}", bad))
            bad = _first((a, u, v) for a in V for u in V for v in V
                         if functional_apply(a, vec_add(u, v))
                         != k.add(functional_apply(a, u), functional_apply(a, v)))
            bad = bad or _first((a, c, u) for a in V for c in k.elements() for u in V
                                if functional_apply(a, scalar_mul(c, u))
                                != k.mul(c, functional_apply(a, u)))
            bad = bad or _first(a for a in V
                                if functional_apply(a, zero_vector(X, k)) != k.zero
                                or any(functional_apply(a, delta(X, x, k)) != a[x] for x in X))
            out.append(_result(f"functionals linear {k.name} |X|={n}", bad))
            bad = _first(v for v in V if vec_sup(generator_expansion(v)) != v)
            out.append(_result(f"generator expansion {k.name} |X|={n}", bad))
    R = rmax()
    bad = None
    for _ in range(300):
        X = _labels(rng.randint(1, 4))
        v = random_vector(rng, X, R)
        if vec_sup(generator_expansion(v)) != v:
            bad = v
            break
    out.append(_result("generator expansion rmax sampled", bad))
    return out


def suite_kernel(rng, size):
    out = []
    for k in (boolean(), chain(3)):
        n = min(size, 2)
        X, Y = _labels(n), _labels(n, "y")
        vecs = list(all_vectors(X, k))
        bad = None
        for M in all_kernels(X, Y, k):
            bad = _first((u, v) for u in vecs for v in vecs
                         if apply(M, vec_add(u, v)) != vec_add(apply(M, u), apply(M, v)))
            bad = bad or _first((c, u) for c in k.elements() for u in vecs
                                if apply(M, scalar_mul(c, u)) != scalar_mul(c, apply(M, u)))
            if bad is None and extract(lambda p, M=M: apply(M, p), X, Y, k) != M:
                bad = M
            if bad is not None:
                break
        out.append(_result(f"apply b-linear, extract round-trip {k.name}", bad))
    R = rmax()
    bad = None
    for _ in range(300):
        X, Y, Z, W = (_labels(rng.randint(1, 3), p) for p in "xyzw")
        M, N, P = random_kernel(rng, X, Y, R), random_kernel(rng, Y, Z, R), random_kernel(rng, Z, W, R)
        phi = random_vector(rng, X, R)
        if (compose(compose(M, N), P) != compose(M, compose(N, P))
                or compose(identity(X, R), M) != M or compose(M, identity(Y, R)) != M
                or apply(compose(M, N), phi) != apply(N, apply(M, phi))):
            bad = (M, N, P)
            break
    out.append(_result("compose associative with units", bad))
    bad = None
    for _ in range(200):
        X1, Y1, Z1, X2, Y2, Z2 = (_labels(rng.randint(1, 2), p) for p in "abcdef")
        M, M2 = random_kernel(rng, X1, Y1, R), random_kernel(rng, Y1, Z1, R)
        N, N2 = random_kernel(rng, X2, Y2, R), random_kernel(rng, Y2, Z2, R)
        if kron(compose(M, M2), compose(N, N2)) != compose(kron(M, N), kron(M2, N2)):
            bad = (M, M2, N, N2)
            break
        phi, psi = random_vector(rng, X1, R), random_vector(rng, X2, R)
        if apply(kron(M, N), outer(phi, psi).coeffs) != outer(apply(M, phi), apply(N, psi)).coeffs:
            bad = (M, N, phi, psi)
            break
    out.append(_result("kron functorial", bad))
    return out


def is_linear_table(table: dict, X: IndexSet, k: Semiring) -> bool:
    """Certify b-linearity of a map given on all of B(X, K): zero, binary sups, scalars."""
    inputs = list(table)
    if table[zero_vector(X, k)] != zero_vector(next(iter(table.values())).index, k):
        return False
    for u in inputs:
        for v in inputs:
            if table[vec_add(u, v)] != vec_add(table[u], table[v]):
                return False
        for c in k.elements():
            if table[scalar_mul(c, u)] != scalar_mul(c, table[u]):
                return False
    return True


KERNEL_THEOREM_SHAPES = ((boolean(), 1, 1), (boolean(), 1, 2), (boolean(), 2, 1),
                         (boolean(), 2, 2), (chain(3), 1, 1), (chain(3), 1, 2),
                         (chain(3), 2, 1))


def kernel_theorem_case(k: Semiring, n: int, m: int) -> tuple[int, int]:
    """Enumerate every table map B(X, K) -> B(Y, K) with |X| = n, |Y| = m.

    Returns ``(linear, bad)``: how many pass certification and how many of
    those the extracted kernel fails to reproduce.
    """
    X, Y = _labels(n), _labels(m, "y")
    inputs = list(all_vectors(X, k))
    outputs = list(all_vectors(Y, k))
    linear = bad = 0
    for images in itertools.product(outputs, repeat=len(inputs)):
        table = dict(zip(inputs, images))
        if not is_linear_table(table, X, k):
            continue
        linear += 1
        M = extract(table.__getitem__, X, Y, k)
        if any(apply(M, phi) != table[phi] for phi in inputs):
            bad += 1
    return linear, bad


def suite_kernel_theorem(rng, size):
    out = []
    for k, n, m in KERNEL_THEOREM_SHAPES:
        if n > size or m > size:
            continue
        linear, bad = kernel_theorem_case(k, n, m)
        expected = k.size ** (n * m)
        detail = None if bad == 0 and linear == expected else (linear, expected, bad)
        out.append(_result(f"kernel theorem {k.name} |X|={n} |Y|={m}", detail))
    return out


def _terms(s: PureSum, k: Semiring) -> dict:
    return dict(s.normalized(k).terms)


def suite_prop5(rng, size):
    R = rmax()
    bad_ij = bad_ji = None
    for _ in range(1000):
        X, Y = _labels(rng.randint(1, 4)), _labels(rng.randint(1, 4), "y")
        t = outer(random_vector(rng, X, R), random_vector(rng, Y, R)) if rng.random() < 0.3 \
            else from_pure_sum(PureSum(tuple(((x, y), random_rmax(rng)) for x in X for y in Y)),
                               (X, Y), R)
        if from_pure_sum(to_pure_sum(t), (X, Y), R) != t:
            bad_ij = t
        s = PureSum(tuple(((rng.choice(X.labels), rng.choice(Y.labels)), random_rmax(rng))
                          for _ in range(rng.randint(0, 8))))
        if _terms(to_pure_sum(from_pure_sum(s, (X, Y), R)), R) != _terms(s, R):
            bad_ji = s
    B = boolean()
    X, Y = _labels(2), _labels(2, "y")
    P = IndexSet.product(X, Y)
    for v in all_vectors(P, B):
        t = from_pure_sum(PureSum(tuple(v.items())), (X, Y), B)
        if t.coeffs != v or from_pure_sum(to_pure_sum(t), (X, Y), B) != t:
            bad_ij = v
        if _terms(to_pure_sum(t), B) != _terms(PureSum(tuple(v.items())), B):
            bad_ji = v
    return [_result("ij = id", bad_ij), _result("ji = id", bad_ji)]


def suite_nuclear(rng, size):
    R = rmax()
    bad = None
    for _ in range(1000):
        M = random_kernel(rng, _labels(rng.randint(1, 5)), _labels(rng.randint(1, 5), "y"), R)
        if canonical_p(nuclear_decompose(M)) != M:
            bad = M
            break
    B = boolean()
    X, Y = _labels(2), _labels(2, "y")
    bad = bad or _first(M for M in all_kernels(X, Y, B) if canonical_p(nuclear_decompose(M)) != M)
    return [_result("nuclear recomposition", bad)]


def _boolean_factor_families(max_points: int):
    B = boolean()
    K1, K2 = ext.full_cube(B, 1), ext.full_cube(B, 2)
    C3 = ext.span(B, 2, [(1, 0), (1, 1)])  # three-element chain module
    fams = [(K1,), (K2,), (K1, K1), (K1, C3), (K1, K2), (C3, C3), (K1, K1, K1), (K2, K2)]
    return [f for f in fams if _npoints(f) <= max_points]


def _npoints(factors) -> int:
    n = 1
    for m in factors:
        n *= len(m)
    return n


def suite_closure(rng, size):
    out = []
    cap = 9 if size <= 2 else 16
    for F in _boolean_factor_families(cap):
        S = ext.product_space(F)
        ids = list(S.all_ids())
        hulls = {}
        bad = None
        for r in range(len(ids) + 1):
            for c in itertools.combinations(ids, r):
                X = frozenset(c)
                H = hulls[X] = S.hull(X)
                if not X <= H or S.hull(H) != H:
                    bad = X
        for X, H in hulls.items():
            for p in ids:
                if p not in X and not H <= hulls[X | {p}]:
                    bad = X
        out.append(_result(f"closure operator |V|={len(ids)} factors={len(F)}", bad))
        if len(ids) <= 6:
            tensors = [X for X in hulls if S.is_closed(X)]
            bad = _first(X for X, H in hulls.items()
                         if H != frozenset.intersection(*[T for T in tensors if X <= T]))
            out.append(_result(f"minimality |V|={len(ids)}", bad))
    return out


def suite_prop3(rng, size):
    out = []
    B = boolean()
    fams = _boolean_factor_families(8)
    bad = None
    for _ in range(100):
        F = rng.choice([f for f in fams if len(f) >= 2])
        pts = list(ext.all_points(F))
        X = frozenset(rng.sample(pts, rng.randint(0, min(4, len(pts)))))
        H = ext.tau_hull(F, X).points
        bad = _first(Y for Y in ext.rewrite_neighbors(F, X) if ext.tau_hull(F, Y).points != H)
        if bad is not None:
            break
    out.append(_result("rewrites preserve tau-equality", bad))
    K1 = ext.full_cube(B, 1)
    F = (K1, K1)
    pts = list(ext.all_points(F))
    subsets = [frozenset(c) for r in range(len(pts) + 1) for c in itertools.combinations(pts, r)]
    parent = {s: s for s in subsets}

    def find(s):
        while parent[s] != s:
            s = parent[s]
        return s

    for s in subsets:
        for t in ext.rewrite_neighbors(F, s):
            parent[find(t)] = find(s)
    rw: dict = {}
    tau: dict = {}
    for s in subsets:
        rw.setdefault(find(s), set()).add(s)
        tau.setdefault(ext.tau_hull(F, s).points, set()).add(s)
    same = {frozenset(v) for v in rw.values()} == {frozenset(v) for v in tau.values()}
    out.append(_result("rewrite partition = tau partition", None if same else (len(rw), len(tau))))
    return out


def suite_prop4(rng, size):
    out = []
    B, C = boolean(), chain(3)
    cases = [(B, (ext.full_cube(B, 1), ext.full_cube(B, 2))),
             (C, (ext.full_cube(C, 1), ext.full_cube(C, 1)))]
    for k, F in cases:
        T = ext.all_tensors(F)
        K = list(k.elements())
        add, scal = ext.tensor_add, ext.tensor_scalar
        bad = _first((s, t) for s in T for t in T if add(s, t) != add(t, s))
        bad = bad or _first(t for t in T if add(t, t) != t)
        bad = bad or _first((s, t, u) for s in T for t in T for u in T
                            if add(add(s, t), u) != add(s, add(t, u)))
        bad = bad or _first((c, t) for c in K for t in T
                            if any(scal(c, t, a) != scal(c, t, 0) for a in range(len(F))))
        bad = bad or _first((c, d, t) for c in K for d in K for t in T
                            if scal(k.mul(c, d), t) != scal(c, scal(d, t)))
        bad = bad or _first(t for t in T if scal(k.one, t) != t)
        bad = bad or _first((c, s, t) for c in K for s in T for t in T
                            if scal(c, add(s, t)) != add(scal(c, s), scal(c, t)))
        bad = bad or _first((c, d, t) for c in K for d in K for t in T
                            if scal(k.add(c, d), t) != add(scal(c, t), scal(d, t)))
        out.append(_result(f"tensor semimodule {k.name} {len(T)} tensors", bad))
    return out


def _polymaps(F, W, k, limit=None):
    gens = list(itertools.product(*(range(m.dim) for m in F)))
    wels = W.sorted_elements()
    for n, vals in enumerate(itertools.product(wels, repeat=len(gens))):
        if limit is not None and n >= limit:
            return
        yield ext.PolyMapTable.from_generators(F, W, dict(zip(gens, vals)))


def suite_lemmas(rng, size):
    """Low(w) preimages are tensors, and sup f(X) = sup f(hull X) over every subset of V1 x V2."""
    B = boolean()
    n = max(1, min(size, 2))
    F = (ext.full_cube(B, n), ext.full_cube(B, n))
    W = ext.full_cube(B, 1)
    S = ext.product_space(F)
    N = S.size
    # hull(X + p) = hull(hull(X) + p) for a closure operator, so few hulls are computed
    step: dict = {}
    hull_mask = [0] * (1 << N)
    for p in S.hull(()):
        hull_mask[0] |= 1 << p
    for mask in range(1, 1 << N):
        low = mask & -mask
        key = (hull_mask[mask ^ low], low)
        if key not in step:
            seed = [i for i in range(N) if (key[0] | low) >> i & 1]
            step[key] = sum(1 << q for q in S.hull(seed))
        hull_mask[mask] = step[key]
    bad1 = bad2 = None
    for f in _polymaps(F, W, B):
        for w in W.sorted_elements():
            if not ext.is_tensor(F, ext.preimage_of_lower(f, w)):
                bad1 = (f.table, w)
        vals = [f(S.decode(p)) for p in range(N)]
        sup = [W.zero] * (1 << N)
        for mask in range(1, 1 << N):
            low = mask & -mask
            sup[mask] = W.add(sup[mask ^ low], vals[low.bit_length() - 1])
        # hull(X) always holds the zero point, whose value is zero
        bad = next((m for m in range(1 << N) if sup[m] != sup[hull_mask[m]]), None)
        if bad is not None:
            bad2 = [S.decode(p) for p in range(N) if bad >> p & 1]
    return [_result("Low preimage is a tensor", bad1), _result("sup f(X) = sup f(hull X)", bad2)]


def suite_theorem1(rng, size):
    B = boolean()
    n = max(1, min(size, 2))
    F = (ext.full_cube(B, n), ext.full_cube(B, n))
    W = ext.full_cube(B, 1)
    T = ext.all_tensors(F)
    pos = {t: i for i, t in enumerate(T)}
    add = [[pos[ext.tensor_add(s, t)] for t in T] for s in T]
    scal = [[pos[ext.tensor_scalar(c, t)] for t in T] for c in B.elements()]
    pts = list(ext.all_points(F))
    pis = {x: pos[ext.canonical_pi(F, x)] for x in pts}
    free = [i for i in range(len(T)) if i not in set(pis.values())]
    bad_lin = bad_pi = bad_unique = None
    for f in _polymaps(F, W, B):
        g = [ext.factorize_ext(f, t) for t in T]
        if not _is_linear(g, add, scal, B, W):
            bad_lin = f.table
        if any(g[pis[x]] != f(x) for x in pts):
            bad_pi = f.table
        count = 0
        cand = [None] * len(T)
        for x in pts:
            cand[pis[x]] = f(x)
        for vals in itertools.product(W.sorted_elements(), repeat=len(free)):
            for i, v in zip(free, vals):
                cand[i] = v
            if _is_linear(cand, add, scal, B, W):
                count += 1
                if cand != g:
                    bad_unique = f.table
        if count != 1:
            bad_unique = (f.table, count)
    return [_result("factorization linear", bad_lin), _result("f_tensor . pi = f", bad_pi),
            _result("factorization unique", bad_unique)]


def _is_linear(g, add, scal, k, W) -> bool:
    """``g`` indexed like the tensors; ``add``/``scal`` are their operation tables."""
    n = len(g)
    for s in range(n):
        for t in range(n):
            if g[add[s][t]] != W.add(g[s], g[t]):
                return False
        for c in k.elements():
            if g[scal[c][s]] != W.scale(c, g[s]):
                return False
    return True


def suite_theorem2(rng, size):
    out = []
    B = boolean()
    for dims in ((1, 1), (2, 1), (2, 2))[:2 if size < 2 else 3]:
        F = tuple(ext.full_cube(B, d) for d in dims)
        T = ext.all_tensors(F)
        image = [ext.to_free(t) for t in T]
        bad = None
        if len(set(image)) != len(T) or len(T) != B.size ** (dims[0] * dims[1]):
            bad = ("not bijective", len(set(image)), len(T))
        bad = bad or _first(t for t in T if ext.from_free(ext.to_free(t), F) != t)
        bad = bad or _first((s, t) for s in T for t in T
                            if ext.to_free(ext.tensor_add(s, t)).coeffs
                            != vec_add(ext.to_free(s).coeffs, ext.to_free(t).coeffs))
        bad = bad or _first((c, t) for c in B.elements() for t in T
                            if ext.to_free(ext.tensor_scalar(c, t)).coeffs
                            != scalar_mul(c, ext.to_free(t).coeffs))
        out.append(_result(f"free/extensional isomorphism K^{dims[0]} x K^{dims[1]}", bad))
    return out


def suite_theorem3(rng, size):
    R = rmax()
    bad = None
    for _ in range(1000):
        X, Y, Z = (_labels(rng.randint(1, 3), p) for p in "xyz")
        kind = rng.choice(("comm", "assoc", "distr"))
        iso = structural_iso(kind, *((X, Y) if kind == "comm" else (X, Y, Z)))
        u, v = random_vector(rng, iso.domain, R), random_vector(rng, iso.domain, R)
        c = random_rmax(rng)
        w = random_vector(rng, iso.codomain, R)
        if (iso.backward(iso.forward(u)) != u or iso.forward(iso.backward(w)) != w
                or iso.forward(vec_add(u, v)) != vec_add(iso.forward(u), iso.forward(v))
                or iso.forward(scalar_mul(c, u)) != scalar_mul(c, iso.forward(u))):
            bad = (kind, u, v)
            break
        if kind == "comm":
            phi, psi = random_vector(rng, X, R), random_vector(rng, Y, R)
            if iso.forward(outer(phi, psi).coeffs) != outer(psi, phi).coeffs:
                bad = (kind, phi, psi)
                break
    B = boolean()
    one = _labels(1)
    for kind, shape in (("comm", (one, _labels(1, "y"))),
                        ("assoc", (one, _labels(1, "y"), _labels(1, "z"))),
                        ("distr", (one, _labels(1, "y"), _labels(1, "z")))):
        iso = structural_iso(kind, *shape)
        V = list(all_vectors(iso.domain, B))
        bad = bad or _first((u, v) for u in V for v in V
                            if iso.backward(iso.forward(u)) != u
                            or iso.forward(vec_add(u, v)) != vec_add(iso.forward(u), iso.forward(v)))
    return [_result("structural isomorphisms", bad)] + suite_theorem2(rng, min(size, 1))


def suite_prop1(rng, size):
    out = []
    B = boolean()
    mods = [ext.full_cube(B, 1), ext.full_cube(B, 2), ext.span(B, 2, [(1, 0), (1, 1)])]
    for a, b in itertools.product(mods, mods):
        P = ext.direct_product(a, b)
        r = ext.validate_semimodule(P)
        has_top = P.sup(P.elements) in P
        out.append(_result(f"product dim {a.dim}+{b.dim} ({len(a)}x{len(b)})",
                           None if r.ok and has_top else r.failures()))
    return out


def suite_prop2(rng, size):
    B = boolean()
    out = []
    n = max(1, min(size, 2))
    V, B1, B2 = _labels(n, "v"), _labels(n, "a"), _labels(n, "b")
    blocks = (B1, B2)
    bad = None
    for alpha, blk in enumerate(blocks):
        for v in all_vectors(blk, B):
            u = dsum_inject(blocks, alpha, v)
            if dsum_project(blocks, alpha, u) != v:
                bad = (alpha, v)
            if dsum_project(blocks, 1 - alpha, u) != zero_vector(blocks[1 - alpha], B):
                bad = (alpha, v)
    out.append(_result("projection/injection identities", bad))
    D = IndexSet((a, x) for a, b in enumerate(blocks) for x in b)
    bad = None
    for f1 in all_kernels(V, B1, B):
        for f2 in all_kernels(V, B2, B):
            prod = map_direct_product([f1, f2])
            for phi in all_vectors(V, B):
                img = apply(prod, phi)
                if dsum_project(blocks, 0, img) != apply(f1, phi) \
                        or dsum_project(blocks, 1, img) != apply(f2, phi):
                    bad = (f1, f2, phi)
            if n == 1:
                matches = [g for g in all_kernels(V, D, B)
                           if all(dsum_project(blocks, a, apply(g, phi)) == apply(f, phi)
                                  for a, f in enumerate((f1, f2)) for phi in all_vectors(V, B))]
                if matches != [prod]:
                    bad = ("not unique", f1, f2)
    out.append(_result("factorization through the product", bad))
    bad = None
    for g1 in all_kernels(B1, V, B):
        for g2 in all_kernels(B2, V, B):
            s = map_direct_sum([g1, g2])
            for a, g in enumerate((g1, g2)):
                for x in all_vectors(blocks[a], B):
                    if apply(s, dsum_inject(blocks, a, x)) != apply(g, x):
                        bad = (g1, g2, x)
            for x1 in all_vectors(B1, B):
                x2 = random_vector(rng, B2, B)
                u = vec_add(dsum_inject(blocks, 0, x1), dsum_inject(blocks, 1, x2))
                if apply(s, u) != vec_add(apply(g1, x1), apply(g2, x2)):
                    bad = (g1, g2, u)
    out.append(_result("factorization through the sum", bad))
    return out


SUITES: dict[str, Callable] = {
    "semiring": suite_semiring,
    "freemod": suite_freemod,
    "kernel": suite_kernel,
    "kernel_theorem": suite_kernel_theorem,
    "prop5": suite_prop5,
    "nuclear": suite_nuclear,
    "closure": suite_closure,
    "prop3": suite_prop3,
    "prop4": suite_prop4,
    "lemmas": suite_lemmas,
    "theorem1": suite_theorem1,
    "theorem2": suite_theorem2,
    "theorem3": suite_theorem3,
    "prop1": suite_prop1,
    "prop2": suite_prop2,
}


def run_suite(name: str, seed: int = DEFAULT_SEED, size: int = 2) -> list[PropertyResult]:
    if name == "all":
        results = []
        for n in SUITES:
            results.extend(run_suite(n, seed, size))
        return results
    try:
        fn = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}") from None
    return [PropertyResult(f"{name}: {r.name}", r.passed, r.detail)
            for r in fn(random.Random(seed), size)]
