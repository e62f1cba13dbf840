"""Z/p-cellularization invariants of finite groups.

Everything is computed through the p-socle ``S`` (subgroup generated by the
elements of order p): the kernel of the cellular cover of ``S`` is
``H_2(S) / T_p H_2(S)`` and the cover itself has order ``|K| * |S|``.
The extension group is not constructed; known covers can be checked
exhaustively with :func:`verify_cellular_cover`.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .abelian import FgAbGroup, quotient_by_torsion, torsion_part
from .errors import NotPTorsionGroup, NotSurjective, TheoremViolation
from .groups import FiniteGroup, GroupHom, Subgroup, enumerate_homs, p_socle
from .groups.homs import DEFAULT_ENUM_BUDGET
from .homology import homology, homology_is_P_torsion
from .primes import PrimeSet, is_power_of, is_prime, prime_divisors

# most specific first
RULES = ("P_GROUP", "TORSION", "DECOM", "FG")

_EXPLANATIONS = {
    "P_GROUP": "H_2 of the socle is a finite p-group, so dividing out its p-torsion leaves nothing: the kernel is trivial",
    "TORSION": "H_2 of the socle is finite, so the kernel is its largest quotient without p-torsion",
    "DECOM": "H_2 of the socle splits as free plus torsion; the kernel is the free part plus the torsion prime to p",
    "FG": "H_2 of the socle is finitely generated, so the kernel is determined by its invariant factors",
}


@dataclass(frozen=True)
class Certificate:
    rule: str
    explanation: str

    def __post_init__(self):
        if self.rule not in RULES:
            raise ValueError(f"unknown certificate rule {self.rule!r}")

    @classmethod
    def for_multiplier(cls, h2: FgAbGroup, p: int) -> "Certificate":
        if h2.is_P_torsion(PrimeSet.of(p)):
            rule = "P_GROUP"
        elif h2.is_torsion:
            rule = "TORSION"
        else:
            rule = "DECOM"  # every f.g. abelian group splits; FG is never the strongest
        return cls(rule, _EXPLANATIONS[rule])

    def to_json(self) -> dict:
        return {"rule": self.rule, "explanation": self.explanation}


@dataclass(frozen=True)
class CellReport:
    group_label: str
    prime: int
    socle_order: int
    p_generated: bool
    h2_socle: FgAbGroup
    kernel: FgAbGroup
    is_cellular: bool
    cell_order: int
    certificate: Certificate

    def to_json(self) -> dict:
        return {
            "group_label": self.group_label,
            "prime": self.prime,
            "socle_order": self.socle_order,
            "p_generated": self.p_generated,
            "h2_socle": self.h2_socle.to_json(),
            "kernel": self.kernel.to_json(),
            "is_cellular": self.is_cellular,
            "cell_order": self.cell_order,
            "certificate": self.certificate.to_json(),
        }

    def render_text(self) -> str:
        rows = [
            ("group", self.group_label),
            ("prime", self.prime),
            ("socle order", self.socle_order),
            ("p-generated", str(self.p_generated).lower()),
            ("H2(socle)", self.h2_socle),
            ("kernel", self.kernel),
            ("cellular", str(self.is_cellular).lower()),
            ("cell order", self.cell_order),
            ("certificate", self.certificate.rule),
        ]
        return "\n".join(f"{k:<12} {v}" for k, v in rows)


def _check_prime(p):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def _socle(G: FiniteGroup, p: int) -> tuple[Subgroup, FiniteGroup]:
    S = p_socle(G, p)
    return S, (G if S.is_whole() else S.as_group(f"S_{p}({G.label})"))


def cell_kernel(G: FiniteGroup, p: int, **budgets) -> FgAbGroup:
    """``H_2(S) / T_p H_2(S)`` for the p-socle ``S`` of ``G``."""
    _check_prime(p)
    _, S = _socle(G, p)
    return quotient_by_torsion(homology(S, 2, **budgets), PrimeSet.of(p))


def is_Zp_cellular(G: FiniteGroup, p: int, **budgets) -> bool:
    _check_prime(p)
    Sub, _ = _socle(G, p)
    return Sub.is_whole() and cell_kernel(G, p, **budgets).is_trivial


def cell_invariants(G: FiniteGroup, p: int, **budgets) -> CellReport:
    _check_prime(p)
    Sub, S = _socle(G, p)
    h2 = homology(S, 2, **budgets)
    kernel = quotient_by_torsion(h2, PrimeSet.of(p))
    if not torsion_part(kernel, PrimeSet.of(p)).is_trivial:
        raise TheoremViolation(f"kernel {kernel} still has {p}-torsion")
    if kernel.order is None:
        raise TheoremViolation(f"H_2 of a finite group came out infinite: {h2}")
    cert = Certificate.for_multiplier(h2, p)
    return CellReport(
        group_label=G.label,
        prime=p,
        socle_order=Sub.order,
        p_generated=Sub.is_whole(),
        h2_socle=h2,
        kernel=kernel,
        is_cellular=Sub.is_whole() and kernel.is_trivial,
        cell_order=kernel.order * Sub.order,
        certificate=cert,
    )


# -- cellular covers ---------------------------------------------------------


@dataclass(frozen=True)
class CoverVerdict:
    is_cover: bool
    hom_hh: int
    hom_hg: int
    injective: bool
    surjective: bool
    kernel_central: bool | None  # None when phi is not surjective


def cover_verdict(
    H: FiniteGroup, G: FiniteGroup, phi: GroupHom, *, budget: int = DEFAULT_ENUM_BUDGET, jobs: int = 1
) -> CoverVerdict:
    """Post-composition ``Hom(H, H) -> Hom(H, G)``, checked element by element."""
    if phi.source is not H or phi.target is not G:
        if phi.source.order != H.order or phi.target.order != G.order:
            raise ValueError("phi does not go from H to G")
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=2) as pool:
            f_hh = pool.submit(enumerate_homs, H, H, budget, jobs)
            f_hg = pool.submit(enumerate_homs, H, G, budget, jobs)
            hh, hg = f_hh.result(), f_hg.result()
    else:
        hh = enumerate_homs(H, H, budget)
        hg = enumerate_homs(H, G, budget)
    composed = [tuple(phi.image[v] for v in f.image) for f in hh]
    images = set(composed)
    injective = len(images) == len(composed)
    surjective = images == {f.image for f in hg}
    central = check_central_kernel(phi) if phi.is_surjective() else None
    return CoverVerdict(injective and surjective, len(hh), len(hg), injective, surjective, central)


def verify_cellular_cover(H: FiniteGroup, G: FiniteGroup, phi: GroupHom, **kw) -> bool:
    return cover_verdict(H, G, phi, **kw).is_cover


def check_central_kernel(phi: GroupHom) -> bool:
    if not phi.is_surjective():
        raise NotSurjective(f"{phi!r} is not surjective")
    H = phi.source
    mul = H.mul
    return all(mul[k][h] == mul[h][k] for k in phi.kernel() for h in range(H.order))


def torsion_homology_check(G: FiniteGroup, primes) -> bool:
    """``H_1`` and ``H_2`` of a P-torsion group are P-torsion.

    Each element order must be a power of a single prime in ``primes``.
    A false outcome contradicts a theorem and is raised as ``TheoremViolation``.
    """
    P = PrimeSet.coerce(primes)
    for x, o in enumerate(G.element_orders()):
        if o == 1:
            continue
        ps = prime_divisors(o)
        if len(ps) != 1 or ps[0] not in P or not is_power_of(o, ps[0]):
            raise NotPTorsionGroup(f"element {G.element_label(x)} has order {o}, not a power of a prime in {P}")
    if not homology_is_P_torsion(G, P, (1, 2)):
        raise TheoremViolation(f"H_1 or H_2 of {G.label} is not {P}-torsion")
    return True
