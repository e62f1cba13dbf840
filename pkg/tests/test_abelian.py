import random
from itertools import combinations, permutations, product
from math import gcd, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cellkit.abelian import (
    AbHom,
    FgAbGroup,
    IntMatrix,
    canonical_factors,
    check_p_prime_torsion_lemma,
    cokernel,
    exterior_square,
    matrix_rank,
    parse_abelian,
    parse_matrix,
    quotient_by_torsion,
    smith_diagonal,
    smith_normal_form,
    tensor_product,
    torsion_part,
    xgcd,
)
from cellkit.errors import IllDefinedHom, NotElementaryAbelianCokernel, NotInjective, ParseError
from cellkit.primes import PrimeSet, factorize, is_prime


def leibniz_det(rows):
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i, j in combinations(range(n), 2) if perm[i] > perm[j])
        total += (-1) ** inv * prod(rows[i][perm[i]] for i in range(n))
    return total


def determinantal_diagonal(rows, m, n):
    """Invariant factors as ratios of gcds of k x k minors."""
    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in combinations(range(m), k):
            for cs in combinations(range(n), k):
                g = gcd(g, leibniz_det([[rows[i][j] for j in cs] for i in rs]))
        if g == 0:
            out += [0] * (min(m, n) - k + 1)
            break
        out.append(g // prev)
        prev = g
    return out


small_matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


# -- IntMatrix ----------------------------------------------------------------


def test_matrix_basics():
    A = IntMatrix.from_rows([[1, 2], [3, 4]])
    assert A.shape == (2, 2)
    assert A[1, 0] == 3
    assert (A @ IntMatrix.identity(2)) == A
    assert A.T.to_lists() == [[1, 3], [2, 4]]
    assert A.det() == -2
    assert (A - A).is_zero()
    assert IntMatrix.zeros(0, 3).shape == (0, 3)
    with pytest.raises(IndexError):
        A[2, 0]


def test_parse_matrix():
    A = parse_matrix("2 3\n1 2 3\n4 5 6\n")
    assert A.to_lists() == [[1, 2, 3], [4, 5, 6]]
    assert parse_matrix("0 0").shape == (0, 0)
    with pytest.raises(ParseError):
        parse_matrix("2 2\n1 2 3")
    with pytest.raises(ParseError):
        parse_matrix("2 x")


# -- Smith normal form ------------------------------------------------------


def test_xgcd():
    for a, b in [(0, 0), (12, 18), (-4, 6), (7, 0), (0, -5)]:
        g, x, y = xgcd(a, b)
        assert g == gcd(a, b) and a * x + b * y == g


@pytest.mark.parametrize(
    "rows, diag",
    [
        ([[2, 4], [6, 8]], [2, 4]),
        ([[1, 0], [0, 1]], [1, 1]),
        ([[2, 0], [0, 3]], [1, 6]),
        ([[0, 0], [0, 0]], [0, 0]),
        ([[4, 6]], [2]),
        ([[2], [4], [6]], [2]),
    ],
)
def test_snf_examples(rows, diag):
    A = IntMatrix.from_rows(rows)
    snf = smith_normal_form(A)
    assert list(snf.diag) == diag
    assert snf.U @ A @ snf.V == snf.D


def test_snf_empty():
    assert smith_normal_form(IntMatrix.zeros(0, 0)).diag == ()
    assert smith_diagonal(IntMatrix.zeros(3, 0)) == ()


@given(small_matrices)
@settings(max_examples=150, deadline=None)
def test_snf_matches_determinantal_divisors(rows):
    m, n = len(rows), len(rows[0])
    A = IntMatrix.from_rows(rows)
    snf = smith_normal_form(A, inverses=True)
    assert list(snf.diag) == determinantal_diagonal(rows, m, n)
    assert snf.U @ A @ snf.V == snf.D
    assert abs(snf.U.det()) == 1 and abs(snf.V.det()) == 1
    assert snf.U @ snf.U_inv == IntMatrix.identity(m)
    assert snf.V @ snf.V_inv == IntMatrix.identity(n)
    assert smith_diagonal(A) == snf.diag


@given(small_matrices)
@settings(max_examples=100, deadline=None)
def test_snf_divisibility_and_rank(rows):
    A = IntMatrix.from_rows(rows)
    d = smith_normal_form(A).diag
    nz = [x for x in d if x]
    assert all(x >= 0 for x in d)
    assert d[: len(nz)] == tuple(nz)  # zeros last
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert matrix_rank(A) == len(nz)


def test_sparse_diagonal_on_wide_matrix():
    rng = random.Random(7)
    rows = [[rng.choice([0, 0, 0, 1, -1, 2]) for _ in range(40)] for _ in range(12)]
    A = IntMatrix.from_rows(rows)
    assert smith_diagonal(A) == smith_normal_form(A).diag


# -- FgAbGroup ----------------------------------------------------------------


def test_canonical_form():
    assert FgAbGroup.from_cyclic_orders([2, 3]) == FgAbGroup(0, (6,))
    assert FgAbGroup.from_cyclic_orders([4, 6]) == FgAbGroup(0, (2, 12))
    assert FgAbGroup.from_cyclic_orders([0, 1, 2]) == FgAbGroup(1, (2,))
    assert canonical_factors([]) == (0, [])
    with pytest.raises(ValueError):
        FgAbGroup(0, (4, 2))
    with pytest.raises(ValueError):
        FgAbGroup(0, (1,))


def test_rendering_roundtrip():
    for A in [FgAbGroup(), FgAbGroup(1), FgAbGroup(3, (2, 4)), FgAbGroup(0, (2, 2, 6))]:
        assert parse_abelian(str(A)) == A
    assert str(FgAbGroup(2, (2, 12))) == "Z^2 x Z/2 x Z/12"
    assert str(FgAbGroup()) == "0"
    assert FgAbGroup(1, (3,)).to_json() == {"free_rank": 1, "invariant_factors": [3], "display": "Z x Z/3"}


def test_order_exponent():
    A = FgAbGroup(0, (2, 12))
    assert A.order == 24 and A.exponent == 12 and A.is_finite
    assert FgAbGroup(1).order is None
    assert A.elementary_divisors() == [2, 3, 4]


def test_cokernel():
    assert cokernel(IntMatrix.from_rows([[2, 0], [0, 3]])) == FgAbGroup(0, (6,))
    assert cokernel(IntMatrix.zeros(2, 0)) == FgAbGroup(2)
    assert cokernel(IntMatrix.from_rows([[1, 2]])) == FgAbGroup()


def test_torsion_part_and_quotient():
    A = FgAbGroup.from_cyclic_orders([0, 4, 6, 9])
    assert torsion_part(A) == FgAbGroup.from_cyclic_orders([4, 6, 9])
    assert torsion_part(A, {2}) == FgAbGroup.from_cyclic_orders([4, 2])
    assert quotient_by_torsion(A, {2}) == FgAbGroup.from_cyclic_orders([0, 3, 9])
    assert quotient_by_torsion(A) == FgAbGroup(1)
    assert quotient_by_torsion(A, PrimeSet.excluding(3)) == FgAbGroup.from_cyclic_orders([0, 3, 9])
    with pytest.raises(ValueError):
        torsion_part(A, PrimeSet.of())


abelian_groups = st.builds(
    lambda r, orders: FgAbGroup.from_cyclic_orders([0] * r + orders),
    st.integers(0, 2),
    st.lists(st.integers(1, 40), max_size=4),
)


@given(abelian_groups, st.sampled_from([2, 3, 5]))
def test_torsion_split(A, p):
    T = torsion_part(A, {p})
    Q = quotient_by_torsion(A, {p})
    assert torsion_part(Q, {p}).is_trivial
    if A.is_finite:
        assert T.order * Q.order == A.order
    assert T.is_P_torsion({p})


@given(abelian_groups, abelian_groups)
def test_tensor_symmetric_and_sum(A, B):
    assert tensor_product(A, B) == tensor_product(B, A)
    assert tensor_product(A, FgAbGroup(1)) == A
    assert (A + B) == (B + A)


def test_exterior_square():
    assert exterior_square(FgAbGroup.from_cyclic_orders([2, 2])) == FgAbGroup(0, (2,))
    assert exterior_square(FgAbGroup.from_cyclic_orders([2, 2, 2])) == FgAbGroup(0, (2, 2, 2))
    assert exterior_square(FgAbGroup.cyclic(7)) == FgAbGroup()
    assert exterior_square(FgAbGroup.from_cyclic_orders([4, 6])) == FgAbGroup(0, (2,))
    assert exterior_square(FgAbGroup(3)) == FgAbGroup(3)


# -- homomorphisms -----------------------------------------------------------


def _elements(orders):
    return product(*[range(d) for d in orders])


def _brute_force(orders_a, orders_b, M):
    """Injectivity and surjectivity by listing every element (finite groups only)."""
    image = set()
    kernel = 0
    for x in _elements(orders_a):
        y = tuple(sum(M[i][j] * x[j] for j in range(len(x))) % orders_b[i] for i in range(len(orders_b)))
        image.add(y)
        kernel += all(v == 0 for v in y)
    return kernel == 1, len(image) == prod(orders_b)


finite_homs = st.tuples(
    st.lists(st.integers(1, 6), min_size=1, max_size=3),
    st.lists(st.integers(1, 6), min_size=1, max_size=3),
).flatmap(
    lambda ab: st.tuples(
        st.just(ab[0]),
        st.just(ab[1]),
        st.lists(st.lists(st.integers(0, 5), min_size=len(ab[0]), max_size=len(ab[0])), min_size=len(ab[1]), max_size=len(ab[1])),
    )
)


@given(finite_homs)
@settings(max_examples=200, deadline=None)
def test_hom_injective_surjective_brute_force(data):
    a, b, M = data
    # force well-definedness: column j may only hit multiples of e_i / gcd(d_j, e_i)
    M = [[M[i][j] * (b[i] // gcd(a[j], b[i])) for j in range(len(a))] for i in range(len(b))]
    f = AbHom(a, b, M)
    inj, surj = _brute_force(a, b, M)
    assert f.is_injective() == inj
    assert f.is_surjective() == surj


def test_ill_defined_hom():
    with pytest.raises(IllDefinedHom):
        AbHom([2], [3], [[1]])
    with pytest.raises(IllDefinedHom):
        AbHom([2], [0], [[1]])
    AbHom([0], [3], [[1]])


def test_free_maps():
    assert AbHom([0], [0], [[1]]).is_isomorphism()
    f = AbHom([0], [0], [[3]])
    assert f.is_injective() and not f.is_surjective()
    assert f.cokernel() == FgAbGroup.cyclic(3)
    assert not AbHom([0, 0], [0], [[1, 1]]).is_injective()


def test_lemma_preconditions():
    with pytest.raises(NotElementaryAbelianCokernel):
        check_p_prime_torsion_lemma(AbHom([0], [0], [[4]]), 2)
    # Z/3 -> 0 has trivial cokernel but is not injective
    with pytest.raises(NotInjective):
        check_p_prime_torsion_lemma(AbHom([3], [1], [[0]]), 2)


def test_lemma_examples():
    v = check_p_prime_torsion_lemma(AbHom([0], [0], [[2]]), 2)
    assert not v.is_isomorphism and not v.induced_is_isomorphism
    v = check_p_prime_torsion_lemma(AbHom([4], [8], [[2]]), 2)
    assert v.cokernel == FgAbGroup.cyclic(2) and v.agree
    v = check_p_prime_torsion_lemma(AbHom([3, 0], [3, 0], [[1, 0], [0, 1]]), 5)
    assert v.is_isomorphism and v.induced_is_isomorphism


# -- primes ------------------------------------------------------------------


def test_primes():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert factorize(1) == {}
    P = PrimeSet.excluding(2)
    assert 3 in P and 2 not in P
    assert P.part(24) == 3
    assert PrimeSet.of(2, 3).supports(12) and not PrimeSet.of(2).supports(6)
    with pytest.raises(ValueError):
        PrimeSet.of(4)


@given(st.integers(1, 10**7))
def test_factorize_roundtrip(n):
    f = factorize(n)
    assert prod(q**e for q, e in f.items()) == n
    assert all(is_prime(q) for q in f)
