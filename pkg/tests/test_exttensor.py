import itertools
import random

import pytest

from idem import exttensor as ext
from idem.freemod import IndexSet
from idem.freetensor import TensorKernel
from idem.semiring import DomainError, UnsupportedSemiring, boolean, chain, rmax
from idem.tables import stored_tables

import oracles as O

B = boolean()
K1, K2 = ext.full_cube(B, 1), ext.full_cube(B, 2)
C3 = ext.span(B, 2, [(1, 0), (1, 1)])  # the chain 00 < 10 < 11 inside the square
EXAMPLE = ((1, 0), (0, 1))

# products with at most 9 points, for exhaustive subset scans
SMALL = {
    "K1": (K1,),
    "K2": (K2,),
    "K1xK1": (K1, K1),
    "K1xC3": (K1, C3),
    "K1xK2": (K1, K2),
    "C3xC3": (C3, C3),
    "K1xK1xK1": (K1, K1, K1),
}


def subsets(pts):
    for r in range(len(pts) + 1):
        yield from itertools.combinations(pts, r)


# -- finite semimodules --------------------------------------------------------


def test_engine_refuses_infinite_semirings():
    with pytest.raises(UnsupportedSemiring, match="extensional engine requires finite semiring"):
        ext.FinSemimodule(rmax(), 1, frozenset({(0.0,)}))


def test_validate_semimodule_examples():
    assert ext.validate_semimodule(ext.full_cube(chain(2), 3)).ok
    bad = ext.FinSemimodule(B, 2, frozenset({(0, 0), (1, 0), (0, 1)}))
    report = ext.validate_semimodule(bad)
    check = report["add_closed"]
    assert not check.passed
    u, v = check.witness
    assert bad.add(u, v) == (1, 1)
    for k in (B, chain(3), stored_tables()["diamond"]):
        diag = ext.FinSemimodule(k, 2, frozenset((c, c) for c in k.elements()))
        assert ext.validate_semimodule(diag).ok


def test_span_is_closed():
    assert sorted(C3.elements) == [(0, 0), (1, 0), (1, 1)]
    assert ext.validate_semimodule(ext.span(chain(3), 2, [(2, 1), (0, 2)])).ok


def test_fiber_examples():
    F = (K2, C3)
    assert len(ext.fiber(F, 0, ((0, 0), (1, 0)))) == 4
    zero = ext.zero_point(F)
    assert ext.fiber(F, 1, zero) == {((0, 0), v) for v in C3.elements}
    a = ext.fiber(F, 0, ((0, 0), (1, 0)))
    b = ext.fiber(F, 0, ((0, 0), (1, 1)))
    assert not a & b


def test_lower_set_examples():
    assert ext.lower_set(K2, (0, 0)) == {(0, 0)}
    cube = ext.full_cube(chain(3), 2)
    assert ext.lower_set(cube, (2, 2)) == cube.elements
    assert ext.lower_set(K2, (1, 0)) == {(0, 0), (1, 0)}


# -- the closure -------------------------------------------------------------------


def test_hull_of_nothing():
    assert ext.tau_hull((K2,), []).points == {((0, 0),)}
    assert ext.tau_hull((K1,), []).points == {((0,),)}
    # with two nonzero factors every point with a zero component is forced in
    F = (K2, K2)
    got = ext.tau_hull(F, []).points
    assert got == {p for p in O.product(F) if (0, 0) in p}
    assert len(got) == 7


def test_two_cube_example():
    F = (K2, K2)
    got = ext.tau_hull(F, [EXAMPLE]).points
    assert len(got) == 8
    assert got == O.naive_hull(F, [EXAMPLE])
    assert ext.is_tensor(F, got)
    assert O.brute_is_tensor(F, got)
    four = {EXAMPLE, ((0, 0), (0, 1)), ((1, 0), (0, 0)), ((0, 0), (0, 0))}
    assert four < got
    assert not ext.is_tensor(F, four)
    # scalar transfer with k = 0 from x = ((1,1),(0,1)) forces ((1,1),(0,0))
    assert ((1, 1), (0, 0)) in got


def test_two_cube_example_by_intersection():
    """Least tensor as the intersection of every tensor, tensors enumerated by brute force."""
    F = (K2, K2)
    V = O.product(F)
    forced = {p for p in V if (0, 0) in p}
    rest = [p for p in V if p not in forced]
    canonical = []
    for c in subsets(rest):
        T = forced | set(c)
        if O.brute_is_tensor(F, T):
            canonical.append(frozenset(T))
    assert len(canonical) == 16
    assert O.hull_by_intersection(F, [EXAMPLE], canonical) == ext.tau_hull(F, [EXAMPLE]).points


def test_canonical_set_is_fixed():
    F = (K2, K2)
    t = ext.tau_hull(F, [EXAMPLE])
    assert ext.tau_hull(F, t.points) == t
    assert ext.canonical_pi((K2,), ((0, 0),)).points == {((0, 0),)}
    assert ext.is_tensor((K2,), [((0, 0),)])


@pytest.mark.parametrize("name", list(SMALL))
def test_hull_matches_naive_on_every_subset(name):
    F = SMALL[name]
    pts = O.product(F)
    for X in subsets(pts):
        assert ext.tau_hull(F, X).points == O.naive_hull(F, X)


@pytest.mark.parametrize("name", list(SMALL))
def test_rule_order_does_not_matter(name):
    F = SMALL[name]
    rng = random.Random(1)
    pts = O.product(F)
    for _ in range(40):
        X = rng.sample(pts, rng.randint(0, len(pts)))
        assert O.naive_hull(F, X) == O.naive_hull_reversed(F, X)


@pytest.mark.parametrize("name", list(SMALL))
def test_is_tensor_matches_definition(name):
    F = SMALL[name]
    for X in subsets(O.product(F)):
        assert ext.is_tensor(F, X) == O.brute_is_tensor(F, X)


@pytest.mark.parametrize("name", [n for n, F in SMALL.items() if len(O.product(F)) <= 6])
def test_minimality(name):
    F = SMALL[name]
    canonical = list(O.all_canonical_sets(F))
    for X in subsets(O.product(F)):
        assert ext.tau_hull(F, X).points == O.hull_by_intersection(F, X, canonical)


def test_tensors_equal_examples():
    F = (K2, K1)
    x, x2 = (1, 0), (0, 1)
    assert ext.tensors_equal(F, [(K2.add(x, x2), (1,))], [(x, (1,)), (x2, (1,))])
    X = [((1, 1), (1,))]
    assert ext.tensors_equal(F, X, X + [ext.zero_point(F)])
    k = chain(3)
    A = ext.full_cube(k, 1)
    y = ((2,), (2,))
    assert ext.tensors_equal((A, A), [ext.scale_slot((A, A), 1, y, 0)],
                             [ext.scale_slot((A, A), 1, y, 1)])
    with pytest.raises(DomainError):
        ext.tensors_equal(F, [((1, 1),)], [])


def test_tensor_operations_examples():
    F = (K2, K2)
    t = ext.tau_hull(F, [EXAMPLE])
    assert ext.tensor_add(t, t) == t
    assert ext.tensor_scalar(B.one, t) == t
    assert ext.tensor_scalar(B.zero, t) == ext.tau_hull(F, [])
    rng = random.Random(7)
    k = chain(3)
    G = (ext.full_cube(k, 1), ext.full_cube(k, 2))
    pts = O.product(G)
    for _ in range(30):
        s = ext.tau_hull(G, rng.sample(pts, 3))
        for c in k.elements():
            assert ext.tensor_scalar(c, s, 0) == ext.tensor_scalar(c, s, 1)
    with pytest.raises(DomainError):
        ext.tensor_add(t, ext.tau_hull((K2,), []))


def test_pi_preserves_fiber_sups():
    F = (K2, C3)
    y = (1, 0)
    for R in subsets(sorted(K2.elements)):
        if not R:
            continue
        joined = ext.canonical_pi(F, (K2.sup(R), y))
        parts = ext.tensor_sup([ext.canonical_pi(F, (r, y)) for r in R], F)
        assert joined == parts


def test_bounded_by_top():
    rng = random.Random(2)
    for F in ((K2, K2), (C3, K1), (ext.full_cube(chain(3), 1), ext.full_cube(chain(3), 2))):
        top = tuple(m.sup(m.elements) for m in F)
        pts = O.product(F)
        for _ in range(20):
            X = rng.sample(pts, rng.randint(0, len(pts)))
            assert ext.bounded_by(F, X, top)
    assert not ext.bounded_by((K2, K2), [((1, 1), (1, 1))], EXAMPLE)


# -- rewrites --------------------------------------------------------------------------


def test_rewrites_preserve_tau_equality():
    rng = random.Random(4)
    fams = [(K1, K1), (K1, C3), (K1, K2), (C3, K1)]
    checked = 0
    for _ in range(100):
        F = rng.choice(fams)
        pts = O.product(F)
        X = frozenset(rng.sample(pts, rng.randint(0, 3)))
        H = O.naive_hull(F, X)
        for Y in ext.rewrite_neighbors(F, X):
            assert O.naive_hull(F, Y) == H
            checked += 1
    assert checked > 500


def test_identity_instances_are_rewrites():
    F = (K2, K1)
    X = frozenset({((1, 1), (1,))})
    assert frozenset({((1, 0), (1,)), ((0, 1), (1,))}) in ext.rewrite_neighbors(F, X)


# -- the semimodule of tensors ------------------------------------------------------------


@pytest.mark.parametrize("dims", [(1, 1), (1, 2), (2, 1)])
@pytest.mark.parametrize("k", [B, chain(3)], ids=lambda k: k.name)
def test_all_tensors_counts_and_brute(k, dims):
    F = tuple(ext.full_cube(k, d) for d in dims)
    T = ext.all_tensors(F)
    assert len(T) == k.size ** (dims[0] * dims[1])
    if len(O.product(F)) <= 9:
        assert {t.points for t in T} == set(O.all_canonical_sets(F))


def test_prop4_laws_boolean():
    F = (K1, K2)
    T = ext.all_tensors(F)
    add, scal = ext.tensor_add, ext.tensor_scalar
    for s, t in itertools.product(T, T):
        assert add(s, t) == add(t, s)
        for c in B.elements():
            assert scal(c, add(s, t)) == add(scal(c, s), scal(c, t))
    for t in T:
        for c, d in itertools.product(B.elements(), B.elements()):
            assert scal(B.add(c, d), t) == add(scal(c, t), scal(d, t))
            assert scal(B.mul(c, d), t) == scal(c, scal(d, t))
    # sup over every family (generalized distributivity over finite families)
    for fam in itertools.combinations(T, 3):
        for c in B.elements():
            assert scal(c, ext.tensor_sup(fam, F)) == ext.tensor_sup([scal(c, t) for t in fam], F)


# -- polylinear maps ---------------------------------------------------------------------


def test_validate_polylinear_examples():
    F = (K2, K2)
    P = ext.full_cube(B, 4)
    outer = ext.PolyMapTable.from_function(
        F, P, lambda x: tuple(B.mul(a, b) for a in x[0] for b in x[1]))
    assert ext.validate_polylinear(outer).ok
    const = ext.PolyMapTable.from_function(F, K1, lambda x: (1,))
    report = ext.validate_polylinear(const)
    assert report["preserves_zero"].status == "fail"
    rng = random.Random(9)
    k = chain(3)
    G = (ext.full_cube(k, 2), ext.full_cube(k, 1))
    W = ext.full_cube(k, 2)
    for _ in range(10):
        gens = {i: (rng.randrange(3), rng.randrange(3)) for i in [(0, 0), (1, 0)]}
        f = ext.PolyMapTable.from_generators(G, W, gens)
        assert ext.validate_polylinear(f).ok
        assert f.table == O.polylinear_extension(G, W, gens)


def test_from_generators_needs_full_cubes():
    with pytest.raises(DomainError):
        ext.PolyMapTable.from_generators((C3, K1), K1, {(0, 0): (1,), (1, 0): (0,)})


def test_factorize_ext_examples():
    F = (K2, K2)
    f = ext.PolyMapTable.from_generators(F, K1, {(0, 0): (0,), (0, 1): (1,), (1, 0): (1,),
                                                 (1, 1): (0,)})
    assert ext.factorize_ext(f, ext.tau_hull(F, [])) == (0,)
    for x in O.product(F):
        assert ext.factorize_ext(f, ext.canonical_pi(F, x)) == f(x)


def test_lemma1_preimages_are_tensors():
    F = (K2, K1)
    W = ext.full_cube(B, 2)
    for vals in itertools.product(sorted(W.elements), repeat=2):
        f = ext.PolyMapTable.from_generators(F, W, {(0, 0): vals[0], (1, 0): vals[1]})
        for w in W.elements:
            assert O.brute_is_tensor(F, ext.preimage_of_lower(f, w))


# -- bridge to the free form ------------------------------------------------------------------


@pytest.mark.parametrize("dims", [(1, 1), (2, 1), (1, 2)])
def test_free_bridge_bijective_and_linear(dims):
    F = tuple(ext.full_cube(B, d) for d in dims)
    T = ext.all_tensors(F)
    images = [ext.to_free(t) for t in T]
    assert len(set(images)) == len(T) == 2 ** (dims[0] * dims[1])
    for t in T:
        assert ext.from_free(ext.to_free(t), F) == t
    for s, t in itertools.product(T, T):
        u = ext.to_free(ext.tensor_add(s, t)).coeffs.values
        assert u == tuple(B.add(a, b) for a, b in zip(ext.to_free(s).coeffs.values,
                                                       ext.to_free(t).coeffs.values))


def test_to_free_of_pure_tensor_is_outer():
    F = (K2, K2)
    tk = ext.to_free(ext.canonical_pi(F, EXAMPLE))
    assert isinstance(tk, TensorKernel)
    assert tk.factors == (IndexSet(["0", "1"]), IndexSet(["0", "1"]))
    assert tk.coeffs.values == (0, 1, 0, 0)


def test_product_of_finite_semimodules():
    for a, b in itertools.product((K1, K2, C3), repeat=2):
        P = ext.direct_product(a, b)
        assert ext.validate_semimodule(P).ok
        assert P.sup(P.elements) in P
        assert len(P) == len(a) * len(b)


def test_noncommutative_semiring_rejected():
    k = stored_tables()["diamond"]
    nc = ext.FinSemimodule(k, 1, frozenset((c,) for c in k.elements()))
    ext.tau_hull((nc, nc), [])  # the diamond lattice is commutative
    from idem.semiring import from_tables
    # only commutativity of the product is checked here: x*y = x for nonzero x, y
    m = from_tables(["0", "a", "b"], [["0", "a", "b"], ["a", "a", "a"], ["b", "b", "b"]],
                    [["0", "0", "0"], ["0", "a", "a"], ["0", "b", "b"]], "0", "a")
    M = ext.FinSemimodule(m, 1, frozenset((c,) for c in m.elements()))
    with pytest.raises(DomainError):
        ext.tau_hull((M, M), [])
