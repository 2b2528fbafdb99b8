import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from idem.freemod import IndexMismatch, IndexSet, all_vectors, delta, scalar_mul, vec_sup, vector
from idem.freetensor import outer
from idem.kernelop import (
    Kernel,
    RankOneTerm,
    apply,
    canonical_p,
    certify,
    compose,
    extract,
    identity,
    kernel_scale,
    kernel_sup,
    kron,
    nuclear_decompose,
    rank_one,
    zero_kernel,
)
from idem.semiring import NEG_INF, DomainError, boolean, chain, rmax

from oracles import kernel_apply

R = rmax()
small = st.one_of(st.just(NEG_INF), st.integers(-9, 9).map(float))


@st.composite
def rmax_kernels(draw, rows=None, cols=None):
    n = rows or draw(st.integers(1, 4))
    m = cols or draw(st.integers(1, 4))
    vals = draw(st.lists(st.lists(small, min_size=m, max_size=m), min_size=n, max_size=n))
    return Kernel(IndexSet(f"x{i}" for i in range(n)), IndexSet(f"y{j}" for j in range(m)), R,
                  tuple(map(tuple, vals)))


def kernels_of(X, Y, k):
    for vals in itertools.product(k.elements(), repeat=len(X) * len(Y)):
        yield Kernel(X, Y, k, tuple(vals[i * len(Y):(i + 1) * len(Y)] for i in range(len(X))))


M1234 = Kernel.from_rows(["x0", "x1"], ["y0", "y1"], R, [[1, 2], [3, 4]])


def test_apply_examples():
    phi = vector(["x0", "x1"], R, [5, -2])
    assert apply(identity(phi.index, R), phi) == phi
    assert apply(M1234, vector(["x0", "x1"], R, [0, 0])).values == (3.0, 4.0)
    assert apply(M1234, delta(M1234.domain, "x1", R)) == M1234.row("x1")
    with pytest.raises(IndexMismatch):
        apply(M1234, vector("abc", R, [0, 0, 0]))


def test_apply_matches_direct_formula():
    X, Y = IndexSet("ab"), IndexSet("xyz")
    for M in itertools.islice(kernels_of(X, Y, chain(3)), 0, None, 7):
        for phi in all_vectors(X, chain(3)):
            assert apply(M, phi).values == kernel_apply(M, phi)


def test_extract_examples():
    assert extract(lambda p: apply(M1234, p), M1234.domain, M1234.codomain, R) == M1234
    X = IndexSet("ab")
    assert extract(lambda p: p, X, X, R) == identity(X, R)


def test_certify_finds_nonlinear_input():
    B = boolean()
    X = IndexSet("ab")
    # constant 1 is not linear: it sends 0 to 1
    f = lambda p: vector("ab", B, [1, 1])  # noqa: E731
    M = extract(f, X, X, B)
    assert certify(M, f, all_vectors(X, B)) == vector("ab", B, [0, 0])


def test_compose_examples():
    assert compose(M1234, identity(M1234.codomain, R)) == M1234
    a = Kernel.from_rows(["x"], ["y"], R, [[2]])
    b = Kernel.from_rows(["y"], ["z"], R, [[5]])
    assert compose(a, b).entries == ((7.0,),)
    with pytest.raises(IndexMismatch):
        compose(M1234, M1234)


def test_rank_one_examples():
    B = boolean()
    v = vector("pq", R, [3, -1])
    M = rank_one(delta("ab", "a", R), v)
    assert M.row("a") == v
    assert M.row("b").values == (NEG_INF, NEG_INF)
    assert rank_one(vector("ab", B, [1, 0]), vector("pq", B, [0, 1])).entries == ((0, 1), (0, 0))


def test_nuclear_examples():
    I = identity(IndexSet("ab"), R)
    terms = nuclear_decompose(I)
    assert terms == [RankOneTerm(delta("ab", "a", R), delta("ab", "a", R)),
                     RankOneTerm(delta("ab", "b", R), delta("ab", "b", R))]
    row = Kernel.from_rows(["x"], ["a", "b", "c"], R, [[1, 2, 3]])
    assert len(nuclear_decompose(row)) == 1
    assert canonical_p(nuclear_decompose(row)) == row


def test_kron_examples():
    a = Kernel.from_rows(["x"], ["y"], R, [[2]])
    b = Kernel.from_rows(["u"], ["v"], R, [[3]])
    assert kron(a, b).entries == ((5.0,),)
    X, Y = IndexSet("ab"), IndexSet("xyz")
    assert kron(identity(X, R), identity(Y, R)) == identity(IndexSet.product(X, Y), R)


def test_kernel_sup_examples():
    X, Y = IndexSet("ab"), IndexSet("xy")
    B = boolean()
    assert kernel_sup([], X, Y, B) == zero_kernel(X, Y, B)
    M = Kernel.from_rows(X, Y, B, [[1, 0], [0, 0]])
    N = Kernel.from_rows(X, Y, B, [[0, 0], [1, 1]])
    assert kernel_sup([M]) == M
    assert kernel_sup([M, N]).entries == ((1, 0), (1, 1))
    with pytest.raises(DomainError):
        kernel_sup([M, Kernel.from_rows(X, Y, chain(3), [[0, 0], [0, 0]])])


@pytest.mark.parametrize("k", [boolean(), chain(3)], ids=lambda k: k.name)
def test_apply_linear_exhaustive(k):
    for n, m in ((1, 3), (2, 2), (3, 1)):
        X, Y = IndexSet(range(n)), IndexSet(range(m))
        V = list(all_vectors(X, k))
        for M in itertools.islice(kernels_of(X, Y, k), 0, None, 3):
            for u, v in itertools.product(V, V):
                assert apply(M, vec_sup([u, v])) == vec_sup([apply(M, u), apply(M, v)])
            for c, u in itertools.product(k.elements(), V):
                assert apply(M, scalar_mul(c, u)) == scalar_mul(c, apply(M, u))
            assert extract(M, X, Y, k) == M


@settings(max_examples=200)
@given(rmax_kernels(), st.data())
def test_rmax_kernel_laws(M, data):
    n = len(M.codomain)
    N = data.draw(rmax_kernels(rows=n))
    N = Kernel(M.codomain, N.codomain, R, N.entries)
    P = data.draw(rmax_kernels(rows=len(N.codomain)))
    P = Kernel(N.codomain, IndexSet(f"w{j}" for j in range(len(P.codomain))), R, P.entries)
    assert compose(compose(M, N), P) == compose(M, compose(N, P))
    assert compose(identity(M.domain, R), M) == M
    assert canonical_p(nuclear_decompose(M)) == M
    phi = vector(M.domain.labels, R, data.draw(st.lists(small, min_size=len(M.domain),
                                                       max_size=len(M.domain))))
    assert apply(compose(M, N), phi) == apply(N, apply(M, phi))
    c = data.draw(small)
    assert apply(kernel_scale(c, M), phi) == scalar_mul(c, apply(M, phi))
    assert extract(M, M.domain, M.codomain, R) == M


@settings(max_examples=150)
@given(rmax_kernels(), rmax_kernels(), st.data())
def test_kron_functorial(M, N, data):
    M2 = data.draw(rmax_kernels(rows=len(M.codomain)))
    M2 = Kernel(M.codomain, IndexSet(f"z{j}" for j in range(len(M2.codomain))), R, M2.entries)
    N2 = data.draw(rmax_kernels(rows=len(N.codomain)))
    N2 = Kernel(N.codomain, IndexSet(f"z{j}" for j in range(len(N2.codomain))), R, N2.entries)
    assert kron(compose(M, M2), compose(N, N2)) == compose(kron(M, N), kron(M2, N2))
    phi = vector(M.domain.labels, R, [0.0] * len(M.domain))
    psi = vector(N.domain.labels, R, [1.0] * len(N.domain))
    assert apply(kron(M, N), outer(phi, psi).coeffs) == outer(apply(M, phi), apply(N, psi)).coeffs


def test_nuclear_exhaustive_boolean():
    X = IndexSet("ab")
    for M in kernels_of(X, X, boolean()):
        assert canonical_p(nuclear_decompose(M)) == M
