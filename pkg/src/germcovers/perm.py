"""Permutations of {1..d} and the finite groups they generate.

Points are 1-based in every printed or parsed form; internally a
permutation stores the 0-based image of each point.  Products compose
left to right: ``p * q`` applies ``p`` first, then ``q``.  This matches the
right action of braids on free groups used elsewhere in the package.

>>> p = Permutation.parse("(1,2,3)", 4)
>>> q = Permutation.parse("(3,4)", 4)
>>> str(p * q)
'(1,2,4,3)'
>>> generate([p, q], 4).order
24
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Sequence

DEFAULT_CAP = 10**6


class CapExceeded(RuntimeError):
    """Raised when a group closure grows past the element cap."""


class NotDegree4(ValueError):
    pass


class NotTransitive(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, d: int) -> Permutation:
        return cls(tuple(range(d)))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> Permutation:
        """Build from 1-based images: ``from_images([2, 1, 3])`` is (1,2)."""
        img = tuple(i - 1 for i in images)
        if sorted(img) != list(range(len(img))):
            raise ValueError(f"not a bijection: {list(images)}")
        return cls(img)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], d: int) -> Permutation:
        img = list(range(d))
        seen: set[int] = set()
        for cyc in cycles:
            pts = [c - 1 for c in cyc]
            for p in pts:
                if not 0 <= p < d or p in seen:
                    raise ValueError(f"bad cycle {tuple(cyc)} for degree {d}")
                seen.add(p)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                img[a] = b
        return cls(tuple(img))

    @classmethod
    def parse(cls, text: str, d: int) -> Permutation:
        """Parse cycle notation such as ``"(1,2,3)(4,5)"`` or ``"()"``."""
        text = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+(\s*,\s*\d+)*)?\s*\))+", text):
            raise ValueError(f"cannot parse permutation {text!r}")
        cycles = []
        for body in re.findall(r"\(([^)]*)\)", text):
            if body.strip():
                cycles.append([int(x) for x in body.split(",")])
        return cls.from_cycles(cycles, d)

    def __call__(self, point: int) -> int:
        return self.images[point - 1] + 1

    def __mul__(self, other: Permutation) -> Permutation:
        b = other.images
        return Permutation(tuple(b[i] for i in self.images))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def __pow__(self, k: int) -> Permutation:
        base = self if k >= 0 else self.inverse()
        result = Permutation.identity(self.d)
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self, g: Permutation) -> Permutation:
        """Return ``g * self * g^-1``."""
        return g * self * g.inverse()

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based, each starting at its least point."""
        seen = [False] * self.d
        out = []
        for start in range(self.d):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(c + 1 for c in cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return cycle_type(self)

    def order(self) -> int:
        return math.lcm(*self.cycle_type())

    def is_even(self) -> bool:
        return sum(c - 1 for c in self.cycle_type()) % 2 == 0

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({self}, d={self.d})"


def cycle_type(p: Permutation) -> tuple[int, ...]:
    """Cycle lengths of ``p`` including fixed points, sorted descending.

    >>> cycle_type(Permutation.parse("(1,2)(3,4)", 4))
    (2, 2)
    >>> cycle_type(Permutation.identity(4))
    (1, 1, 1, 1)
    """
    seen = [False] * p.d
    lengths = []
    for start in range(p.d):
        if seen[start]:
            continue
        n = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = p.images[j]
            n += 1
        lengths.append(n)
    return tuple(sorted(lengths, reverse=True))


def pad_partition(parts: Sequence[int], d: int) -> tuple[int, ...]:
    """Complete a partial cycle type with fixed points up to degree ``d``."""
    parts = [p for p in parts if p > 0]
    rest = d - sum(parts)
    if rest < 0:
        raise ValueError(f"cycle type {tuple(parts)} exceeds degree {d}")
    return tuple(sorted(parts + [1] * rest, reverse=True))


@dataclass(frozen=True)
class PermGroup:
    d: int
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return p in self._element_set

    @property
    def _element_set(self) -> frozenset[Permutation]:
        cached = self.__dict__.get("_set")
        if cached is None:
            cached = frozenset(self.elements)
            object.__setattr__(self, "_set", cached)
        return cached

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    def orbit(self, point: int) -> set[int]:
        return orbit(self.generators, point, self.d)


def orbit(gens: Sequence[Permutation], point: int, d: int) -> set[int]:
    """Orbit of a 1-based point under the group generated by ``gens``."""
    seen = {point - 1}
    todo = [point - 1]
    while todo:
        i = todo.pop()
        for g in gens:
            j = g.images[i]
            if j not in seen:
                seen.add(j)
                todo.append(j)
    return {i + 1 for i in seen}


def generate(gens: Sequence[Permutation], d: int, cap: int = DEFAULT_CAP) -> PermGroup:
    """Breadth-first closure of ``gens`` inside S_d."""
    gens = tuple(gens)
    for g in gens:
        if g.d != d:
            raise ValueError(f"generator {g} has degree {g.d}, expected {d}")
    ident = Permutation.identity(d)
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x * g
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise CapExceeded(f"group closure exceeds {cap} elements")
                queue.append(y)
    return PermGroup(d, gens, tuple(sorted(seen)))


def is_transitive(G: PermGroup | Sequence[Permutation], d: int | None = None) -> bool:
    if isinstance(G, PermGroup):
        gens, d = G.generators, G.d
    else:
        gens = tuple(G)
        if d is None:
            d = gens[0].d
    return len(orbit(gens, 1, d)) == d


def identify_s4_subgroup(G: PermGroup) -> str:
    """Name a transitive subgroup of S_4 up to conjugacy.

    >>> identify_s4_subgroup(generate([Permutation.parse("(1,2,3,4)", 4)], 4))
    'Z4'
    """
    if G.d != 4:
        raise NotDegree4(f"degree {G.d}")
    if not is_transitive(G):
        raise NotTransitive(str([str(g) for g in G.generators]))
    n = G.order
    if n == 4:
        if any(cycle_type(g) == (4,) for g in G.elements):
            return "Z4"
        return "Kl4"
    return {8: "D4", 12: "A4", 24: "S4"}[n]


def describe_group(G: PermGroup) -> str:
    """A short label: the S_4 census for transitive degree-4 groups, else a
    generic name such as ``S5``, ``A5``, ``CYCLIC(3)``, ``S3`` or ``OTHER(8)``."""
    if G.d == 4 and is_transitive(G):
        return identify_s4_subgroup(G)
    n = G.order
    if n == math.factorial(G.d) and G.d > 1:
        return f"S{G.d}"
    if 2 * n == math.factorial(G.d) and G.d > 2:
        return f"A{G.d}"
    if any(g.order() == n for g in G.elements):
        return f"CYCLIC({n})"
    if n == 6 and not G.is_abelian():
        return "S3"
    return f"OTHER({n})"


# ---------------------------------------------------------------------------
# Subgroup lattice of small groups


class _Table:
    """Multiplication table over the element list of a materialized group."""

    def __init__(self, G: PermGroup):
        self.elements = G.elements
        index = {g: i for i, g in enumerate(G.elements)}
        self.index = index
        n = len(G.elements)
        self.mul = [[index[a * b] for b in G.elements] for a in G.elements]
        self.inv = [index[g.inverse()] for g in G.elements]
        self.identity = index[Permutation.identity(G.d)]
        self.n = n

    def closure(self, seed: Iterable[int]) -> frozenset[int]:
        elems = {self.identity}
        gens = list(set(seed))
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul[x][g]
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(elems)

    def conjugate_set(self, H: frozenset[int], g: int) -> frozenset[int]:
        gi = self.inv[g]
        return frozenset(self.mul[self.mul[g][h]][gi] for h in H)


def _all_subgroups(T: _Table) -> set[frozenset[int]]:
    cyclic = {T.closure([g]) for g in range(T.n)}
    subgroups = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for H in frontier:
            for C in cyclic:
                if C <= H:
                    continue
                K = T.closure(H | C)
                if K not in subgroups:
                    new.add(K)
        subgroups |= new
        frontier = new
    return subgroups


def _as_group(T: _Table, H: frozenset[int], d: int) -> PermGroup:
    elems = tuple(sorted(T.elements[i] for i in H))
    return PermGroup(d, elems, elems)


def subgroup_classes(G: PermGroup, cap: int = 5000) -> list[PermGroup]:
    """One representative per conjugacy class of subgroups of ``G``; each
    representative is the class member with lexicographically least sorted
    element list."""
    if G.order > cap:
        raise CapExceeded(f"subgroup lattice of a group of order {G.order}")
    T = _Table(G)
    remaining = _all_subgroups(T)
    reps = []
    while remaining:
        H = next(iter(remaining))
        cls = {T.conjugate_set(H, g) for g in range(T.n)}
        remaining -= cls
        best = min(tuple(sorted(T.elements[i] for i in K)) for K in cls)
        reps.append(PermGroup(G.d, best, best))
    reps.sort(key=lambda K: (-K.order, K.elements))
    return reps


def normal_subgroups(G: PermGroup, cap: int = 5000) -> list[PermGroup]:
    if G.order > cap:
        raise CapExceeded(f"subgroup lattice of a group of order {G.order}")
    T = _Table(G)
    out = []
    for H in _all_subgroups(T):
        if all(T.conjugate_set(H, g) == H for g in range(T.n)):
            out.append(_as_group(T, H, G.d))
    out.sort(key=lambda K: (K.order, K.elements))
    return out


def relatively_simple_subgroups(G: PermGroup, cap: int = 5000) -> list[tuple[PermGroup, int]]:
    """Subgroups containing no nontrivial normal subgroup of ``G``, one per
    conjugacy class, paired with their index.  The indices are the degrees
    of the faithful transitive permutation representations of ``G``.

    >>> a4 = generate([Permutation.parse("(1,2,3)", 4), Permutation.parse("(2,3,4)", 4)], 4)
    >>> sorted({i for _, i in relatively_simple_subgroups(a4)}, reverse=True)
    [12, 6, 4]
    """
    normals = [N for N in normal_subgroups(G, cap) if N.order > 1]
    out = []
    for H in subgroup_classes(G, cap):
        hs = H._element_set
        if not any(all(n in hs for n in N.elements) for N in normals):
            out.append((H, G.order // H.order))
    return out


def coset_action(G: PermGroup, H: PermGroup) -> PermGroup:
    """Permutation action of ``G`` on the right cosets ``Hx`` by right
    multiplication.  Cosets are numbered by their least element, so the
    coset ``H`` itself is point 1."""
    hs = H._element_set
    if not all(h in G for h in hs):
        raise ValueError("H is not a subgroup of G")
    coset_of: dict[Permutation, int] = {}
    reps: list[Permutation] = []
    for x in G.elements:
        if x in coset_of:
            continue
        k = len(reps)
        reps.append(x)
        for h in H.elements:
            coset_of[h * x] = k
    n = len(reps)
    gens = []
    for g in G.generators:
        gens.append(Permutation(tuple(coset_of[r * g] for r in reps)))
    if not gens:
        gens = [Permutation.identity(n)]
    return generate(gens, n)


def symmetric_group(d: int) -> PermGroup:
    elems = tuple(sorted(Permutation(p) for p in permutations(range(d))))
    gens: tuple[Permutation, ...] = ()
    if d > 1:
        gens = (Permutation.from_cycles([range(1, d + 1)], d), Permutation.from_cycles([(1, 2)], d))
    return PermGroup(d, gens, elems)


def is_primitive(gens: Sequence[Permutation], d: int) -> bool:
    """True iff the group generated by ``gens`` is transitive and preserves no
    nontrivial block system.  For each candidate partner ``k`` of point 1
    the finest block system joining 1 and ``k`` is built by union-find."""
    if not is_transitive(gens, d):
        return False
    for k in range(1, d):
        parent = list(range(d))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        pairs = [(0, k)]
        while pairs:
            a, b = pairs.pop()
            ra, rb = find(a), find(b)
            if ra == rb:
                continue
            parent[ra] = rb
            for g in gens:
                pairs.append((g.images[a], g.images[b]))
        if len({find(x) for x in range(d)}) > 1:
            return False
    return True


def _three_cycle_witness(gens: Sequence[Permutation], d: int, budget: int) -> Permutation | None:
    """Search the group breadth-first for an element with a power that is a
    3-cycle; return that 3-cycle or None once ``budget`` elements are seen."""
    ident = Permutation.identity(d)
    seen = {ident}
    queue = deque([ident])
    while queue and len(seen) <= budget:
        x = queue.popleft()
        ct = cycle_type(x)
        threes = [c for c in ct if c % 3 == 0]
        if threes == [3]:
            others = math.lcm(*[c for c in ct if c % 3 != 0])
            return x**others
        for g in gens:
            y = x * g
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return None


def contains_alternating(
    G: PermGroup | Sequence[Permutation], d: int | None = None, cap: int = DEFAULT_CAP
) -> bool:
    """True iff the group contains A_d.

    For d <= 6 the group is materialized and its order compared.  Beyond
    that a primitive group holding a 3-cycle contains A_d (Jordan), so a
    3-cycle is searched for among a bounded ball of elements; the order is
    compared only if that search fails and d!/2 fits under the cap.
    """
    if isinstance(G, PermGroup):
        gens, d = list(G.generators), G.d
        if d < 3:
            return True
        return G.order >= math.factorial(d) // 2
    gens = list(G)
    if d is None:
        d = gens[0].d
    if d < 3:
        return True
    small = math.factorial(d) // 2 <= cap
    if d <= 6:
        return generate(gens, d, cap).order >= math.factorial(d) // 2
    if not is_primitive(gens, d):
        return False
    witness = _three_cycle_witness(gens, d, min(cap, 200_000))
    if witness is not None:
        return True
    if small:
        return generate(gens, d, cap).order >= math.factorial(d) // 2
    raise CapExceeded("no 3-cycle found within the search budget")


class SymmetricTable:
    """Index-based multiplication table of S_d for vectorized evaluation.

    Elements are numbered in lexicographic order of their image tuples, so
    index 0 is the identity.  ``mul[a, b]`` is the index of ``a * b``.
    """

    def __init__(self, d: int):
        import numpy as np

        if d > 7:
            raise CapExceeded(f"symmetric table for degree {d}")
        self.d = d
        self.elements = [Permutation(p) for p in permutations(range(d))]
        self.index = {p: i for i, p in enumerate(self.elements)}
        n = len(self.elements)
        dtype = np.int16 if n < 2**15 else np.int32
        arr = np.array([p.images for p in self.elements], dtype=np.int64)
        codes = np.zeros(n, dtype=np.int64)
        for col in range(d):
            codes = codes * d + arr[:, col]
        lookup = {int(c): i for i, c in enumerate(codes)}
        mul = np.empty((n, n), dtype=dtype)
        for a in range(n):
            comp = arr[:, arr[a]]  # row b holds images of a * b
            c = np.zeros(n, dtype=np.int64)
            for col in range(d):
                c = c * d + comp[:, col]
            mul[a] = [lookup[int(x)] for x in c]
        self.mul = mul
        self.inv = np.array([self.index[p.inverse()] for p in self.elements], dtype=dtype)
        self.cycle_types = [cycle_type(p) for p in self.elements]
        self.size = n

    def of_type(self, ct: Sequence[int]) -> list[int]:
        ct = tuple(ct)
        return [i for i, c in enumerate(self.cycle_types) if c == ct]

    def class_representatives(self) -> list[int]:
        reps: dict[tuple[int, ...], int] = {}
        for i, c in enumerate(self.cycle_types):
            reps.setdefault(c, i)
        return sorted(reps.values())


_TABLES: dict[int, SymmetricTable] = {}


def symmetric_table(d: int) -> SymmetricTable:
    if d not in _TABLES:
        _TABLES[d] = SymmetricTable(d)
    return _TABLES[d]
