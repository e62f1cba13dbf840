"""Exhaustive enumeration of homomorphisms between finite groups."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from itertools import product

from ..errors import BudgetExceeded, NoGeneratingTuple
from .finite import FiniteGroup, GroupHom, cayley_edges, closure

DEFAULT_ENUM_BUDGET = 2**24
DEFAULT_K_MAX = 8


def minimal_generating_tuple(G: FiniteGroup, k_max: int = DEFAULT_K_MAX) -> tuple[int, ...]:
    """Smallest generating tuple, first in lexicographic index order among those of that size."""
    n = G.order
    if n == 1:
        return ()

    def search(prefix, reached, k):
        if len(prefix) == k:
            return prefix if len(reached) == n else None
        start = prefix[-1] + 1 if prefix else 1
        for x in range(start, n):
            if x in reached:
                continue  # redundant given the prefix
            got = search(prefix + (x,), closure(G, prefix + (x,)), k)
            if got is not None:
                return got
        return None

    for k in range(1, k_max + 1):
        got = search((), {0}, k)
        if got is not None:
            return got
    raise NoGeneratingTuple(f"{G.label} has no generating tuple of size <= {k_max}")


def _enumerate_chunk(args):
    H_mul, G_mul, edges, order_h, candidates, fixed_first = args
    out = []
    # the heavy inner loop; kept free of attribute lookups
    for rest in product(*candidates[1:]):
        images = (fixed_first,) + rest
        img = [0] * order_h
        ok = True
        for h, k, y, defines in edges:
            v = G_mul[img[h]][images[k]]
            if defines:
                img[y] = v
            elif img[y] != v:
                ok = False
                break
        if ok:
            out.append(tuple(img))
    return out


def _candidates(H, G, gens):
    # a generator of order m can only go to an element whose order divides m
    ho, go = H.element_orders(), G.element_orders()
    return [[y for y in range(G.order) if ho[s] % go[y] == 0] for s in gens]


def enumerate_homs(
    H: FiniteGroup,
    G: FiniteGroup,
    budget: int = DEFAULT_ENUM_BUDGET,
    jobs: int = 1,
    gens: tuple[int, ...] | None = None,
) -> list[GroupHom]:
    """All homomorphisms ``H -> G``, ordered by their generator-image tuples.

    ``budget`` bounds ``|G| ** k`` where ``k`` is the size of the generating
    tuple of ``H`` that is used (minimal by default). Candidate tuples are
    extended along the Cayley graph of ``H`` and dropped on the first
    inconsistency; ``jobs > 1`` splits candidates by first image across
    processes without changing the output.
    """
    if gens is None:
        gens = minimal_generating_tuple(H)
    k = len(gens)
    if G.order**k > budget:
        raise BudgetExceeded(
            f"Hom({H.label}, {G.label}): {G.order}^{k} candidate tuples exceed the enumeration budget {budget}"
        )
    if k == 0:
        return [GroupHom.trivial(H, G)]
    edges = cayley_edges(H, gens)
    cands = _candidates(H, G, gens)
    tasks = [(H.mul, G.mul, edges, H.order, cands, first) for first in cands[0]]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_enumerate_chunk, tasks))
    else:
        chunks = [_enumerate_chunk(t) for t in tasks]
    return [GroupHom(H, G, img, check=False) for chunk in chunks for img in chunk]


def count_homs(H: FiniteGroup, G: FiniteGroup, **kw) -> int:
    return len(enumerate_homs(H, G, **kw))


def surjections(H: FiniteGroup, G: FiniteGroup, **kw) -> list[GroupHom]:
    return [f for f in enumerate_homs(H, G, **kw) if f.is_surjective()]
