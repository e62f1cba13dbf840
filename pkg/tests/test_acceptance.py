"""Acceptance suite; one test per criterion, summarised at the end of the run."""

import random
import time
from math import prod

import pytest

from cellkit.abelian import (
    AbHom,
    FgAbGroup,
    IntMatrix,
    check_p_prime_torsion_lemma,
    exterior_square,
    smith_normal_form,
    tensor_product,
)
from cellkit.cellular import cell_invariants, cell_kernel, check_central_kernel, cover_verdict, torsion_homology_check
from cellkit.groups import (
    STANDARD_NAMES,
    FiniteGroup,
    Subgroup,
    abelian_invariants,
    abelianization,
    cyclic,
    direct_product,
    is_p_generated,
    named,
    p_socle,
    surjections,
)
from cellkit.homology import homology
from cellkit.primes import factorize, is_power_of


def criterion(number, title):
    return pytest.mark.criterion(number, title)


def _report(number, ok, detail=""):
    print(f"AC{number:02d} {'PASS' if ok else 'FAIL'} {detail}")


# -- 1 -----------------------------------------------------------------------


@criterion(1, "SNF: 500 random matrices up to 50x50, exact U*A*V = D, unimodular, divisibility chain, < 30 s")
def test_snf_suite():
    rng = random.Random(20240601)
    start = time.perf_counter()
    failures = []
    for trial in range(500):
        m, n = rng.randint(1, 50), rng.randint(1, 50)
        A = IntMatrix.from_rows([[rng.randint(-20, 20) for _ in range(n)] for _ in range(m)])
        snf = smith_normal_form(A)
        d = snf.diag
        nz = [x for x in d if x]
        ok = (
            snf.U @ A @ snf.V == snf.D
            and snf.D.is_diagonal()
            and abs(snf.U.det()) == 1
            and abs(snf.V.det()) == 1
            and all(x >= 0 for x in d)
            and d[: len(nz)] == tuple(nz)
            and all(b % a == 0 for a, b in zip(nz, nz[1:]))
        )
        if not ok:
            failures.append((trial, m, n))
    elapsed = time.perf_counter() - start
    _report(1, not failures and elapsed < 30, f"{500 - len(failures)}/500 in {elapsed:.1f}s")
    assert not failures
    assert elapsed < 30


# -- 2 -----------------------------------------------------------------------


@criterion(2, "H1 equals the abelianization for every catalogue group of order <= 32")
def test_h1_equals_abelianization():
    start = time.perf_counter()
    groups = [named(n) for n in STANDARD_NAMES]
    groups = [G for G in groups if G.order <= 32]
    assert len(groups) >= 15
    bad = [G.label for G in groups if homology(G, 1) != abelianization(G)]
    elapsed = time.perf_counter() - start
    _report(2, not bad and elapsed < 120, f"{len(groups)} groups in {elapsed:.1f}s")
    assert not bad
    assert elapsed < 120


# -- 3 -----------------------------------------------------------------------


def _partitions(n, largest=None):
    largest = largest or n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def abelian_groups_up_to(order):
    """Every abelian group of order <= ``order`` as a list of prime-power cyclic orders."""
    out = []
    for n in range(1, order + 1):
        choices = [[]]
        for p, e in factorize(n).items():
            choices = [c + [p**k for k in part] for c in choices for part in _partitions(e)]
        out += choices
    return out


def build_abelian(orders):
    G = cyclic(1)
    for d in orders:
        G = direct_product(G, cyclic(d))
    G.label = "x".join(f"C{d}" for d in orders) or "C1"
    return G


@criterion(3, "H2 equals the exterior square for every abelian group of order <= 16")
def test_h2_abelian_exterior_square():
    start = time.perf_counter()
    cases = abelian_groups_up_to(16)
    assert len(cases) == 25
    bad = []
    for orders in cases:
        G = build_abelian(orders)
        assert G.order == prod(orders)
        if homology(G, 2) != exterior_square(FgAbGroup.from_cyclic_orders(orders)):
            bad.append(G.label)
    elapsed = time.perf_counter() - start
    spot = {
        "C2xC2": FgAbGroup(0, (2,)),
        "C2xC2xC2": FgAbGroup(0, (2, 2, 2)),
        "C5": FgAbGroup(),
        "C16": FgAbGroup(),
    }
    for label, expected in spot.items():
        assert homology(build_abelian([int(t[1:]) for t in label.split("x")]), 2) == expected
    _report(3, not bad and elapsed < 120, f"{len(cases)} groups in {elapsed:.1f}s")
    assert not bad
    assert elapsed < 120


# -- 4 -----------------------------------------------------------------------


@criterion(4, "Kunneth at degree 2 for C2xC2, C2xC4, S3xC2")
def test_kunneth():
    bad = []
    for a, b in [("C2", "C2"), ("C2", "C4"), ("S3", "C2")]:
        G, H = named(a), named(b)
        # H2(GxH) = H2 G + H2 H + H1 G (x) H1 H; the Tor terms vanish in this degree
        expected = homology(G, 2) + homology(H, 2) + tensor_product(homology(G, 1), homology(H, 1))
        if homology(named(f"{a}x{b}"), 2) != expected:
            bad.append(f"{a}x{b}")
    _report(4, not bad)
    assert not bad


# -- 5 -----------------------------------------------------------------------


@criterion(5, "A4 at p = 3: socle A4, H2 = Z/2, kernel Z/2, order 24; SL(2,3) -> A4 is a cover")
def test_a4_pipeline():
    start = time.perf_counter()
    A4 = named("A4")
    r = cell_invariants(A4, 3)
    assert r.socle_order == 12
    assert r.h2_socle == FgAbGroup.cyclic(2)
    assert r.kernel == FgAbGroup.cyclic(2)
    assert r.cell_order == 24
    SL = named("SL(2,3)")
    phi = surjections(SL, A4)[0]
    v = cover_verdict(SL, A4, phi)
    assert v.is_cover and v.hom_hh == v.hom_hg
    assert check_central_kernel(phi)
    K = Subgroup(SL, phi.kernel())
    assert K.order == 2
    assert abelian_invariants(K) == r.kernel
    elapsed = time.perf_counter() - start
    _report(5, elapsed < 60, f"{elapsed:.1f}s")
    assert elapsed < 60


# -- 6 -----------------------------------------------------------------------


@criterion(6, "Q8 at p = 2: socle of order 2, kernel trivial, Z/2 -> Q8 is a cover with 2 = 2 homs")
def test_q8_pipeline():
    Q8 = named("Q8")
    r = cell_invariants(Q8, 2)
    assert r.socle_order == 2 and r.kernel.is_trivial
    inc = p_socle(Q8, 2).inclusion()
    v = cover_verdict(inc.source, Q8, inc)
    assert v.is_cover and v.hom_hh == 2 and v.hom_hg == 2
    _report(6, True)


# -- 7 -----------------------------------------------------------------------


@criterion(7, "every p-generated p-group of order <= 32 in the catalogue is Z/p-cellular (p = 2, 3)")
def test_p_generated_p_groups_are_cellular():
    checked, bad = [], []
    for name in STANDARD_NAMES:
        G = named(name)
        for p in (2, 3):
            if G.order > 32 or G.order == 1 or not is_power_of(G.order, p) or not is_p_generated(G, p):
                continue
            checked.append(f"{name}@{p}")
            if not cell_invariants(G, p).is_cellular:
                bad.append(f"{name}@{p}")
    _report(7, not bad, f"{len(checked)} groups: {', '.join(checked)}")
    assert len(checked) >= 10
    assert not bad


# -- 8 -----------------------------------------------------------------------


def _prime_power_orders(G):
    return all(o == 1 or len(factorize(o)) == 1 for o in G.element_orders())


@criterion(8, "H1 and H2 are P-torsion for every catalogue P-torsion group")
def test_torsion_homology():
    checked = []
    for name in STANDARD_NAMES:
        G = named(name)
        if not _prime_power_orders(G):
            continue
        P = set(factorize(G.order)) or {2}
        assert torsion_homology_check(G, P)  # raises TheoremViolation otherwise
        checked.append(name)
    _report(8, True, f"{len(checked)} groups")
    assert len(checked) >= 15


# -- 9 -----------------------------------------------------------------------


def lemma_instance(rng):
    """An injection ``A -> B`` whose cokernel is ``(Z/p)^m``.

    ``B = (A + Z^m) / <(-a_k, p e_k)>`` for random ``a_k`` in ``A``; the
    target is rewritten in Smith coordinates so that it is diagonally presented.
    """
    p = rng.choice([2, 3, 5])
    a_orders = [0] * rng.randint(0, 2) + [rng.randint(2, 12) for _ in range(rng.randint(0, 3))]
    if not a_orders:
        a_orders = [rng.randint(2, 12)]
    n = len(a_orders)
    m = rng.randint(0, 3)
    relations = []
    for j, d in enumerate(a_orders):
        if d:
            relations.append({j: d})
    for k in range(m):
        col = {n + k: p}
        for j, d in enumerate(a_orders):
            v = -rng.randint(0, (d or 10) - 1)
            if v:
                col[j] = v
        relations.append(col)
    R = IntMatrix.from_columns(n + m, relations) if relations else IntMatrix.zeros(n + m, 0)
    snf = smith_normal_form(R)
    orders = list(snf.diag) + [0] * (n + m - len(snf.diag))
    cols = [[snf.U[i, j] for i in range(n + m)] for j in range(n)]
    M = [[cols[j][i] % orders[i] if orders[i] else cols[j][i] for j in range(n)] for i in range(n + m)]
    return AbHom(a_orders, orders, M), p, m


@criterion(9, "200 maps with elementary abelian p-cokernel: isomorphism iff isomorphism away from p-torsion")
def test_p_prime_torsion_lemma():
    rng = random.Random(90210)
    disagreements, m_zero = 0, 0
    for _ in range(200):
        f, p, m = lemma_instance(rng)
        v = check_p_prime_torsion_lemma(f, p)
        assert v.cokernel == FgAbGroup.from_cyclic_orders([p] * m)
        assert v.is_isomorphism == (m == 0)
        m_zero += m == 0
        disagreements += not v.agree
    _report(9, disagreements == 0, f"200 cases, {m_zero} isomorphisms")
    assert disagreements == 0
    assert 0 < m_zero < 200


# -- 10 ----------------------------------------------------------------------


def standalone(G, members):
    """Subgroup as an independent group via its restricted Cayley table."""
    members = sorted(members)
    pos = {x: i for i, x in enumerate(members)}
    table = [[pos[G.mul[x][y]] for y in members] for x in members]
    return FiniteGroup.from_table(table)


@criterion(10, "cell_kernel(G, p) equals cell_kernel of the socle as a standalone group, all catalogue pairs")
def test_socle_coherence():
    pairs, bad = 0, []
    for name in STANDARD_NAMES:
        G = named(name)
        for p in factorize(G.order):
            S = standalone(G, p_socle(G, p).members)
            pairs += 1
            if cell_kernel(G, p) != cell_kernel(S, p):
                bad.append(f"{name}@{p}")
    _report(10, not bad, f"{pairs} pairs")
    assert not bad


# -- 11 ----------------------------------------------------------------------


@pytest.mark.slow
@criterion(11, "stretch: A5 at p = 2, 3 with raised budgets; SL(2,5) -> A5 is a cover")
def test_a5_stretch():
    start = time.perf_counter()
    A5 = named("A5")
    budget = {"basis_budget": 2**18}
    r2 = cell_invariants(A5, 2, **budget)
    assert r2.h2_socle == FgAbGroup.cyclic(2)
    assert r2.kernel.is_trivial and r2.is_cellular
    r3 = cell_invariants(A5, 3, **budget)
    assert r3.kernel == FgAbGroup.cyclic(2) and r3.cell_order == 120
    SL = named("SL(2,5)")
    phi = surjections(SL, A5)[0]
    v = cover_verdict(SL, A5, phi)
    assert v.is_cover and v.kernel_central
    elapsed = time.perf_counter() - start
    _report(11, elapsed < 1800, f"{elapsed:.0f}s")
    assert elapsed < 1800
