"""Finite groups as multiplication tables over BFS-indexed elements."""

from __future__ import annotations

from collections import deque
from typing import Callable, Hashable, Iterable, Sequence

from ..abelian import FgAbGroup
from ..errors import InvalidPermutation, NotAGroup, NotAHomomorphism, OrderCapExceeded, ParseError
from ..primes import factorize

DEFAULT_MAX_ORDER = 128


class FiniteGroup:
    """A finite group on elements ``0 .. order-1`` with identity ``0``.

    ``mul[x][y]`` is the index of ``x*y``. Elements are numbered in breadth
    first order from ``generators``: starting at the identity, each element is
    multiplied on the right by every generator in turn. ``elements`` optionally
    keeps the concrete representatives (permutations, matrices, ...).
    """

    __slots__ = ("mul", "inv", "generators", "label", "elements", "_orders")

    def __init__(self, mul, inv, generators, label="G", elements=None):
        self.mul = tuple(tuple(r) for r in mul)
        self.inv = tuple(inv)
        self.generators = tuple(generators)
        self.label = label
        self.elements = tuple(elements) if elements is not None else None
        self._orders = None

    # -- construction ------------------------------------------------------

    @classmethod
    def from_generators(
        cls,
        gens: Sequence[Hashable],
        multiply: Callable[[Hashable, Hashable], Hashable],
        identity: Hashable,
        label: str = "G",
        max_order: int = DEFAULT_MAX_ORDER,
    ) -> "FiniteGroup":
        """Close ``gens`` under ``multiply`` and tabulate the result."""
        elements = [identity]
        index = {identity: 0}
        queue = deque([identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = multiply(x, g)
                if y not in index:
                    if len(elements) >= max_order:
                        raise OrderCapExceeded(f"{label}: closure exceeds the order cap {max_order}")
                    index[y] = len(elements)
                    elements.append(y)
                    queue.append(y)
        n = len(elements)
        mul = [[index[multiply(x, y)] for y in elements] for x in elements]
        inv = [0] * n
        for x in range(n):
            row = mul[x]
            for y in range(n):
                if row[y] == 0:
                    inv[x] = y
                    break
        gen_idx = []
        for g in gens:
            i = index[g]
            if i != 0 and i not in gen_idx:
                gen_idx.append(i)
        return cls(mul, inv, gen_idx, label, elements)

    @classmethod
    def from_table(
        cls,
        table: Sequence[Sequence[int]],
        generators: Sequence[int] | None = None,
        label: str = "G",
        max_order: int = DEFAULT_MAX_ORDER,
        validate: bool = True,
        elements: Sequence | None = None,
    ) -> "FiniteGroup":
        """Re-index an arbitrary Cayley table in BFS order.

        The identity is located automatically. Without ``generators`` a
        generating set is chosen greedily in input index order.
        """
        n = len(table)
        if n == 0:
            raise NotAGroup("empty table")
        if n > max_order:
            raise OrderCapExceeded(f"{label}: order {n} exceeds the order cap {max_order}")
        rows = [list(r) for r in table]
        if any(len(r) != n for r in rows) or any(not (0 <= v < n) for r in rows for v in r):
            raise NotAGroup("table is not a square array of element indices")
        e = next((x for x in range(n) if rows[x] == list(range(n))), None)
        if e is None or any(rows[x][e] != x for x in range(n)):
            raise NotAGroup("no two-sided identity")
        if validate:
            _check_group_axioms(rows, e)
        if generators is None:
            generators = _greedy_generators(rows, e, range(n))
        for g in generators:
            if not 0 <= g < n:
                raise NotAGroup(f"generator {g} out of range")
        reps = list(elements) if elements is not None else list(range(n))
        G = cls.from_generators(
            [reps[g] for g in generators],
            _table_multiply(rows, reps),
            reps[e],
            label,
            max_order,
        )
        if G.order != n:
            raise NotAGroup(f"generators only reach {G.order} of {n} elements")
        if elements is None:
            G.elements = None
        return G

    @classmethod
    def from_permutations(
        cls,
        degree: int,
        gens: Iterable,
        label: str | None = None,
        max_order: int = DEFAULT_MAX_ORDER,
    ) -> "FiniteGroup":
        """Permutation group on ``{1..degree}``.

        Generators are cycle strings like ``"(1 2 3)(4 5)"`` or image tuples
        (0-based). Products compose left to right: ``x*y`` applies ``x`` first.
        """
        perms = []
        for g in gens:
            p = parse_cycles(g, degree) if isinstance(g, str) else tuple(g)
            _check_permutation(p, degree)
            perms.append(p)
        identity = tuple(range(degree))
        if label is None:
            label = "<" + ", ".join(format_cycles(p) for p in perms) + ">"
        return cls.from_generators(perms, compose, identity, label, max_order)

    # -- basic access ------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.mul)

    identity = 0

    def __len__(self):
        return len(self.mul)

    def __repr__(self):
        return f"FiniteGroup({self.label!r}, order={self.order})"

    def element_label(self, x: int) -> str:
        if self.elements is None:
            return str(x)
        e = self.elements[x]
        if isinstance(e, tuple) and sorted(e) == list(range(len(e))):
            return format_cycles(e)
        return str(e)

    def power(self, x: int, k: int) -> int:
        r = 0
        mul = self.mul
        base = x
        while k:
            if k & 1:
                r = mul[r][base]
            base = mul[base][base]
            k >>= 1
        return r

    def element_orders(self) -> tuple[int, ...]:
        if self._orders is None:
            mul = self.mul
            out = [1] * self.order
            for x in range(1, self.order):
                y, k = x, 1
                while y:
                    y = mul[y][x]
                    k += 1
                out[x] = k
            self._orders = tuple(out)
        return self._orders

    def is_abelian(self) -> bool:
        mul = self.mul
        gens = self.generators
        return all(mul[a][b] == mul[b][a] for a in gens for b in gens)

    def same_table(self, other: "FiniteGroup") -> bool:
        return self.mul == other.mul

    def validate(self) -> None:
        """Exhaustive group-axiom and generation check; raises ``NotAGroup``."""
        _check_group_axioms([list(r) for r in self.mul], 0)
        for x in range(self.order):
            if self.mul[x][self.inv[x]] != 0 or self.mul[self.inv[x]][x] != 0:
                raise NotAGroup(f"bad inverse for {x}")
        if len(closure(self, self.generators)) != self.order:
            raise NotAGroup("generators do not generate")
        # BFS numbering
        G2 = FiniteGroup.from_table(self.mul, self.generators, validate=False, max_order=self.order)
        if not G2.same_table(self):
            raise NotAGroup("elements are not numbered in BFS order from the generators")

    def to_json(self) -> dict:
        return {"order": self.order, "mul": [list(r) for r in self.mul]}


def _table_multiply(rows, reps):
    pos = {r: i for i, r in enumerate(reps)}

    def multiply(a, b):
        return reps[rows[pos[a]][pos[b]]]

    return multiply


def _check_group_axioms(rows, e):
    n = len(rows)
    for x in range(n):
        if sorted(rows[x]) != list(range(n)):
            raise NotAGroup(f"row {x} is not a permutation")
        if not any(rows[x][y] == e for y in range(n)):
            raise NotAGroup(f"{x} has no inverse")
    for x in range(n):
        rx = rows[x]
        for y in range(n):
            rxy = rows[rx[y]]
            ry = rows[y]
            for z in range(n):
                if rxy[z] != rx[ry[z]]:
                    raise NotAGroup(f"not associative at ({x}, {y}, {z})")


def _greedy_generators(rows, e, candidates):
    gens = []
    reached = {e}
    for x in candidates:
        if x not in reached:
            gens.append(x)
            reached = _closure_rows(rows, e, gens)
    return gens


def _closure_rows(rows, e, gens):
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = rows[x][g]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def closure(G: FiniteGroup, gens: Iterable[int]) -> set[int]:
    """Elements of the subgroup generated by ``gens``."""
    return _closure_rows(G.mul, 0, list(gens))


# -- permutations ------------------------------------------------------------


def compose(x: tuple, y: tuple) -> tuple:
    """Apply ``x`` then ``y``."""
    return tuple(y[i] for i in x)


def _check_permutation(p, degree):
    if len(p) != degree or sorted(p) != list(range(degree)):
        raise InvalidPermutation(f"{p} is not a permutation of degree {degree}")


def parse_cycles(text: str, degree: int | None = None) -> tuple[int, ...]:
    """Parse 1-based cycle notation such as ``"(1 2 3)(4 5)"``; ``"()"`` is the identity."""
    s = text.strip()
    cycles = []
    i = 0
    while i < len(s):
        c = s[i]
        if c.isspace():
            i += 1
            continue
        if c != "(":
            raise ParseError(f"expected '(' in cycle notation, found {c!r}", i, text)
        j = s.find(")", i)
        if j < 0:
            raise ParseError("unclosed cycle", i, text)
        body = s[i + 1:j].replace(",", " ").split()
        try:
            cyc = [int(t) for t in body]
        except ValueError:
            raise ParseError(f"non-integer point in cycle {s[i:j + 1]!r}", i, text) from None
        if any(v < 1 for v in cyc) or len(set(cyc)) != len(cyc):
            raise InvalidPermutation(f"bad cycle {s[i:j + 1]!r}")
        cycles.append(cyc)
        i = j + 1
    top = max((v for c in cycles for v in c), default=0)
    if degree is None:
        degree = top
    if top > degree:
        raise InvalidPermutation(f"point {top} exceeds degree {degree}")
    perm = tuple(range(degree))
    for cyc in cycles:
        c = list(range(degree))
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            c[a - 1] = b - 1
        perm = compose(perm, tuple(c))
    return perm


def format_cycles(p: Sequence[int]) -> str:
    seen = set()
    out = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        k = p[start]
        while k != start:
            cyc.append(k)
            seen.add(k)
            k = p[k]
        out.append("(" + " ".join(str(v + 1) for v in cyc) + ")")
    return "".join(out) or "()"


# -- subgroups ---------------------------------------------------------------


class Subgroup:
    """A subgroup stored as its full sorted member set."""

    def __init__(self, parent: FiniteGroup, members: Iterable[int], generators: Sequence[int] = ()):
        self.parent = parent
        self.members = tuple(sorted(set(members)))
        self.generators = tuple(generators)
        self._group = None
        self._embedding = None
        mset = set(self.members)
        if 0 not in mset:
            raise NotAGroup("subgroup must contain the identity")
        mul = parent.mul
        for g in self.generators:
            if g not in mset:
                raise NotAGroup(f"generator {g} not in subgroup")
        for x in self.members:
            if parent.inv[x] not in mset:
                raise NotAGroup("subgroup not closed under inverses")
            row = mul[x]
            for y in self.members:
                if row[y] not in mset:
                    raise NotAGroup("subgroup not closed under multiplication")

    @classmethod
    def generated_by(cls, G: FiniteGroup, gens: Iterable[int]) -> "Subgroup":
        gens = list(gens)
        return cls(G, closure(G, gens), gens)

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x):
        return x in set(self.members)

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent.label})"

    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def as_group(self, label: str | None = None) -> FiniteGroup:
        """Materialize as a standalone group (BFS-reindexed from the subgroup generators)."""
        if self._group is None:
            P = self.parent
            gens = list(self.generators) or _greedy_generators(P.mul, 0, self.members)
            reps = P.elements if P.elements is not None else list(range(P.order))
            if P.elements is not None:
                mult = _table_multiply(P.mul, reps)
            else:
                mult = lambda a, b: P.mul[a][b]  # noqa: E731
            H = FiniteGroup.from_generators(
                [reps[g] for g in gens], mult, reps[0], label or f"{P.label}:sub{self.order}", max_order=self.order
            )
            if P.elements is None:
                emb = list(H.elements)
                H.elements = None
            else:
                pos = {r: i for i, r in enumerate(P.elements)}
                emb = [pos[r] for r in H.elements]
            self._group = H
            self._embedding = tuple(emb)
        return self._group

    def inclusion(self) -> "GroupHom":
        H = self.as_group()
        return GroupHom(H, self.parent, self._embedding)


# -- homomorphisms -----------------------------------------------------------


class GroupHom:
    """A total map ``source -> target`` verified (unless told otherwise) to be a homomorphism."""

    __slots__ = ("source", "target", "image")

    def __init__(self, source: FiniteGroup, target: FiniteGroup, image: Sequence[int], check: bool = True):
        self.source = source
        self.target = target
        self.image = tuple(image)
        if check:
            self._check()

    def _check(self):
        S, T, im = self.source, self.target, self.image
        if len(im) != S.order or any(not (0 <= v < T.order) for v in im):
            raise NotAHomomorphism("image must list one target element per source element")
        if im[0] != 0:
            raise NotAHomomorphism("identity must map to identity")
        tmul = T.mul
        for x in range(S.order):
            row = S.mul[x]
            ix = tmul[im[x]]
            for y in range(S.order):
                if im[row[y]] != ix[im[y]]:
                    raise NotAHomomorphism(f"f({x}*{y}) != f({x})*f({y})")

    @classmethod
    def from_generator_images(cls, source: FiniteGroup, target: FiniteGroup, images: Sequence[int]) -> "GroupHom":
        """Extend images of ``source.generators`` along the Cayley graph."""
        images = list(images)
        if len(images) != len(source.generators):
            raise NotAHomomorphism(f"expected {len(source.generators)} generator images, got {len(images)}")
        if any(not (0 <= v < target.order) for v in images):
            raise NotAHomomorphism("generator image out of range")
        im = extend_images(source, source.generators, target, images)
        if im is None:
            raise NotAHomomorphism("generator images do not satisfy the source relations")
        return cls(source, target, im, check=False)

    @classmethod
    def identity(cls, G: FiniteGroup) -> "GroupHom":
        return cls(G, G, range(G.order), check=False)

    @classmethod
    def trivial(cls, H: FiniteGroup, G: FiniteGroup) -> "GroupHom":
        return cls(H, G, [0] * H.order, check=False)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __eq__(self, other):
        return (
            isinstance(other, GroupHom)
            and self.image == other.image
            and self.source is other.source
            and self.target is other.target
        )

    def __hash__(self):
        return hash(self.image)

    def __repr__(self):
        return f"GroupHom({self.source.label} -> {self.target.label}, {self.image})"

    def then(self, other: "GroupHom") -> "GroupHom":
        """``other o self``."""
        if self.target.order != other.source.order:
            raise ValueError("maps do not compose")
        return GroupHom(self.source, other.target, [other.image[v] for v in self.image], check=False)

    def kernel(self) -> list[int]:
        return [x for x, v in enumerate(self.image) if v == 0]

    def image_set(self) -> set[int]:
        return set(self.image)

    def is_surjective(self) -> bool:
        return len(set(self.image)) == self.target.order

    def is_injective(self) -> bool:
        return len(set(self.image)) == self.source.order


def cayley_edges(H: FiniteGroup, gens: Sequence[int]):
    """BFS edge list ``(h, k, h*gens[k], defines)`` covering every element and generator."""
    mul = H.mul
    seen = {0}
    edges = []
    queue = deque([0])
    while queue:
        h = queue.popleft()
        for k, s in enumerate(gens):
            y = mul[h][s]
            if y in seen:
                edges.append((h, k, y, False))
            else:
                seen.add(y)
                queue.append(y)
                edges.append((h, k, y, True))
    if len(seen) != H.order:
        raise ValueError("given elements do not generate the group")
    return edges


def extend_images(H, gens, G, images, edges=None):
    """Extend generator images to a full image table, or ``None`` at the first inconsistency."""
    if edges is None:
        edges = cayley_edges(H, gens)
    gmul = G.mul
    img = [0] * H.order
    for h, k, y, defines in edges:
        v = gmul[img[h]][images[k]]
        if defines:
            img[y] = v
        elif img[y] != v:
            return None
    return img


# -- subgroup-level operations ----------------------------------------------


def element_order(G: FiniteGroup, x: int) -> int:
    if not 0 <= x < G.order:
        raise IndexError(f"element {x} out of range")
    return G.element_orders()[x]


def p_socle(G: FiniteGroup, p: int) -> Subgroup:
    """Subgroup generated by the elements of order exactly ``p``.

    Generators are picked greedily in index order so the result is deterministic.
    """
    orders = G.element_orders()
    gens = []
    reached = {0}
    for x in range(G.order):
        if orders[x] == p and x not in reached:
            gens.append(x)
            reached = closure(G, gens)
    return Subgroup(G, reached, gens)


def is_p_generated(G: FiniteGroup, p: int) -> bool:
    return p_socle(G, p).order == G.order


def is_normal(G: FiniteGroup, S: Subgroup) -> bool:
    members = set(S.members)
    mul, inv = G.mul, G.inv
    for g in range(G.order):
        row, gi = mul[g], inv[g]
        for s in S.members:
            if mul[row[s]][gi] not in members:
                return False
    return True


def center(G: FiniteGroup) -> Subgroup:
    mul = G.mul
    z = [x for x in range(G.order) if all(mul[x][g] == mul[g][x] for g in G.generators)]
    return Subgroup(G, z, _greedy_generators(mul, 0, z))


def commutator_subgroup(G: FiniteGroup) -> Subgroup:
    mul, inv = G.mul, G.inv
    comms = sorted({mul[mul[inv[x]][inv[y]]][mul[x][y]] for x in range(G.order) for y in range(G.order)})
    members = closure(G, comms)
    return Subgroup(G, members, _greedy_generators(mul, 0, sorted(members)))


def _invariants_by_counting(total: int, count_pow: Callable[[int], int]) -> FgAbGroup:
    """Invariants of a finite abelian group of order ``total`` from ``count_pow(m) = #{x : x^m = 1}``.

    For each prime ``p``, ``log_p count_pow(p^k) - log_p count_pow(p^(k-1))``
    is the number of cyclic p-primary factors of exponent at least ``k``.
    """
    orders = []
    for p, e in factorize(total).items():
        prev, k, at_least = 0, 0, []
        while prev < e:
            k += 1
            if k > e:
                raise ValueError("power counts are inconsistent with an abelian group")
            c = count_pow(p**k)
            lg = 0
            while c > 1:
                c //= p
                lg += 1
            at_least.append(lg - prev)
            prev = lg
        # at_least[k-1] = number of factors with exponent >= k
        for k in range(1, len(at_least) + 1):
            nxt = at_least[k] if k < len(at_least) else 0
            orders += [p**k] * (at_least[k - 1] - nxt)
    return FgAbGroup.from_cyclic_orders(orders)


def abelianization(G: FiniteGroup) -> FgAbGroup:
    """``G / [G, G]`` from the commutator subgroup and power counts in the quotient."""
    N = set(commutator_subgroup(G).members)
    q = G.order // len(N)
    if q == 1:
        return FgAbGroup()

    def count_pow(m):
        return sum(1 for x in range(G.order) if G.power(x, m) in N) // len(N)

    return _invariants_by_counting(q, count_pow)


def abelian_invariants(S: Subgroup) -> FgAbGroup:
    """Invariants of an abelian subgroup (e.g. a central kernel)."""
    G = S.parent
    mul = G.mul
    if any(mul[a][b] != mul[b][a] for a in S.members for b in S.members):
        raise ValueError("subgroup is not abelian")
    if S.order == 1:
        return FgAbGroup()
    return _invariants_by_counting(S.order, lambda m: sum(1 for x in S.members if G.power(x, m) == 0))


def is_perfect(G: FiniteGroup) -> bool:
    return abelianization(G).is_trivial
