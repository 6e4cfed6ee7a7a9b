"""Enumeration of monodromy homomorphisms into S_d and their classification.

A homomorphism from a finitely presented group to S_d is a tuple of
permutations killing every relator.  Tuples are enumerated over the cycle
types prescribed by a dataset, grouped into classes up to simultaneous
conjugation, and optionally merged further by the Hurwitz action of a
caller-supplied set of braids.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .braid import BraidWord, FreeWord, SingLabel, act, braid_monodromy
from .perm import (
    Permutation,
    describe_group,
    generate,
    pad_partition,
    symmetric_table,
)
from .present import Presentation, product_rows, satisfies, zvk_presentation


class UnknownLemma(KeyError):
    pass


class IncompatibleBraid(ValueError):
    pass


@dataclass(frozen=True)
class MonodromyDataset:
    """Cycle types prescribed for the generators; ``None`` entries are wildcards."""

    d: int
    classes: tuple[tuple[int, ...] | None, ...]

    def __post_init__(self):
        for c in self.classes:
            if c is not None and (sum(c) != self.d or any(x < 1 for x in c)):
                raise ValueError(f"{c} is not a partition of {self.d}")

    @classmethod
    def of(cls, d: int, classes: Sequence[Sequence[int] | None]) -> MonodromyDataset:
        return cls(d, tuple(None if c is None else pad_partition(c, d) for c in classes))

    @classmethod
    def parse(cls, text: str, d: int) -> MonodromyDataset:
        """Parse ``"3,1|2,1,1"``; parts are padded with 1s and ``*`` is a wildcard.

        >>> MonodromyDataset.parse("2|2,2", 4).classes
        ((2, 1, 1), (2, 2))
        """
        out: list[tuple[int, ...] | None] = []
        for chunk in text.split("|"):
            chunk = chunk.strip()
            if chunk == "*":
                out.append(None)
            else:
                out.append(tuple(int(x) for x in chunk.split(",")))
        return cls.of(d, out)

    @classmethod
    def wildcard(cls, d: int, m: int) -> MonodromyDataset:
        return cls(d, (None,) * m)

    def __str__(self) -> str:
        return "|".join("*" if c is None else ",".join(map(str, c)) for c in self.classes)


@dataclass(frozen=True, order=True)
class HomTuple:
    images: tuple[Permutation, ...]

    @property
    def d(self) -> int:
        return self.images[0].d

    def group(self):
        return generate(list(self.images), self.d)

    def group_label(self) -> str:
        return describe_group(self.group())

    def dataset(self) -> MonodromyDataset:
        return MonodromyDataset(self.d, tuple(p.cycle_type() for p in self.images))

    def product(self) -> Permutation:
        out = Permutation.identity(self.d)
        for p in self.images:
            out = out * p
        return out

    def conjugate(self, g: Permutation) -> HomTuple:
        return HomTuple(tuple(p.conjugate(g) for p in self.images))

    def __str__(self) -> str:
        return "(" + ", ".join(str(p) for p in self.images) + ")"


@dataclass(frozen=True)
class HomClass:
    representative: HomTuple
    size: int
    mode: str
    members: tuple[HomTuple, ...] = field(repr=False, default=())
    conjugacy_classes: int = 1

    @property
    def label(self) -> str:
        return self.representative.group_label()


def _candidates(T, ct: tuple[int, ...] | None) -> list[int]:
    return list(range(T.size)) if ct is None else T.of_type(ct)


def _transitive_rows(rows: np.ndarray, d: int) -> np.ndarray:
    """Mask of rows whose entries generate a transitive subgroup."""
    T = symmetric_table(d)
    imgs = np.array([p.images for p in T.elements], dtype=np.int8)
    n = rows.shape[0]
    reach = np.zeros((n, d), dtype=bool)
    reach[:, 0] = True
    for _ in range(d):
        new = reach.copy()
        for j in range(rows.shape[1]):
            im = imgs[rows[:, j]]
            src = np.nonzero(reach)
            new[src[0], im[src[0], src[1]]] = True
        if (new == reach).all():
            break
        reach = new
    return reach.all(axis=1)


def enumerate_homs(
    p: Presentation,
    ds: MonodromyDataset,
    transitive_only: bool = True,
) -> list[HomTuple]:
    """All tuples in the prescribed cycle types that satisfy every relator."""
    d = ds.d
    if len(ds.classes) != p.rank:
        raise ValueError("dataset length differs from presentation rank")
    if d > 6:
        raise ValueError("enumeration is limited to d <= 6")
    T = symmetric_table(d)
    choices = [_candidates(T, c) for c in ds.classes]
    if not choices:
        return []
    rest = product_rows(choices[1:])
    found: list[np.ndarray] = []
    for f in choices[0]:
        rows = np.concatenate([np.full((rest.shape[0], 1), f, dtype=np.int32), rest], axis=1)
        rows = rows[satisfies(p, rows, d)]
        if transitive_only and rows.size:
            rows = rows[_transitive_rows(rows, d)]
        if rows.size:
            found.append(rows)
    if not found:
        return []
    allrows = np.concatenate(found)
    out = [HomTuple(tuple(T.elements[i] for i in r)) for r in allrows.tolist()]
    return sorted(out)


def _conj_key(t: HomTuple) -> tuple[int, ...]:
    """Least index-encoding among all simultaneous conjugates of ``t``."""
    T = symmetric_table(t.d)
    idx = np.array([T.index[p] for p in t.images], dtype=np.int64)
    # conjugate g x g^-1 for every g at once
    g = np.arange(T.size)
    conj = T.mul[T.mul[g[:, None], idx[None, :]], T.inv[g][:, None]]
    weights = T.size ** np.arange(len(idx) - 1, -1, -1, dtype=np.int64)
    codes = conj @ weights
    best = int(codes.argmin())
    return tuple(int(x) for x in conj[best])


def classify_conjugacy(tuples: Sequence[HomTuple]) -> list[HomClass]:
    """Orbits of the input under simultaneous conjugation by S_d."""
    if not tuples:
        return []
    T = symmetric_table(tuples[0].d)
    groups: dict[tuple[int, ...], list[HomTuple]] = {}
    for t in tuples:
        groups.setdefault(_conj_key(t), []).append(t)
    out = []
    for key in sorted(groups):
        rep = HomTuple(tuple(T.elements[i] for i in key))
        members = tuple(sorted(set(groups[key])))
        out.append(HomClass(rep, len(members), "CONJUGACY", members, 1))
    return out


def hurwitz_orbits(tuples: Sequence[HomTuple], allowed: Sequence[BraidWord]) -> list[HomClass]:
    """Orbits under the braids in ``allowed`` together with simultaneous conjugation.

    Each braid is applied to a representative of every conjugacy class; an
    image outside the input set raises ``IncompatibleBraid``.
    """
    classes = classify_conjugacy(tuples)
    if not allowed:
        return classes
    keys = [_conj_key(c.representative) for c in classes]
    pos = {k: i for i, k in enumerate(keys)}
    parent = list(range(len(classes)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, c in enumerate(classes):
        for b in allowed:
            if b.strands != len(c.representative.images):
                raise ValueError("braid strand count differs from tuple length")
            img = HomTuple(tuple(act(b, c.representative.images)))
            j = pos.get(_conj_key(img))
            if j is None:
                raise IncompatibleBraid(f"braid {b} moves {c.representative} outside the solution set")
            a, bb = find(i), find(j)
            if a != bb:
                parent[max(a, bb)] = min(a, bb)
    mode = "CONJUGACY+HURWITZ(" + ", ".join(str(b) for b in allowed) + ")"
    merged: dict[int, list[HomClass]] = {}
    for i, c in enumerate(classes):
        merged.setdefault(find(i), []).append(c)
    out = []
    for root in sorted(merged):
        cs = merged[root]
        members = tuple(sorted(m for c in cs for m in c.members))
        out.append(HomClass(cs[0].representative, len(members), mode, members, len(cs)))
    return out


# ---------------------------------------------------------------- lemma registry


@dataclass
class LemmaReport:
    lemma: str
    params: dict
    solutions: int
    classes: int
    orbits: int
    labels: list[str]
    expected: str
    passed: bool
    representatives: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "lemma": self.lemma,
            "params": self.params,
            "solutions": self.solutions,
            "classes": self.classes,
            "orbits": self.orbits,
            "labels": self.labels,
            "expected": self.expected,
            "representatives": self.representatives,
            "pass": self.passed,
        }


def commutator_relation(k: int) -> Presentation:
    """Relation (g1 g2)^k = (g2 g1)^k on two generators."""
    g1, g2 = FreeWord.gen(1), FreeWord.gen(2)
    return Presentation.from_relations(2, [((g1 * g2) ** k, (g2 * g1) ** k)])


def cusp_axis_braids() -> list[BraidWord]:
    return [BraidWord.parse("a1", 3), BraidWord.parse("a2 a1^2 a2", 3)]


def full_br3() -> list[BraidWord]:
    return [BraidWord.parse("a1", 3), BraidWord.parse("a2", 3)]


TRANSPOSITIONS3 = ((2, 1, 1),) * 3


def _run(p: Presentation, ds: MonodromyDataset, allowed: Sequence[BraidWord] = ()):
    sols = enumerate_homs(p, ds, transitive_only=True)
    classes = classify_conjugacy(sols)
    orbits = hurwitz_orbits(sols, allowed) if allowed else classes
    labels = sorted({c.label for c in classes})
    return sols, classes, orbits, labels


def _report(lemma, params, expected, ok, sols, classes, orbits, labels) -> LemmaReport:
    return LemmaReport(
        lemma, params, len(sols), len(classes), len(orbits), labels, expected, ok,
        [str(c.representative) for c in classes],
    )


def _zvk(label: SingLabel) -> Presentation:
    return zvk_presentation(braid_monodromy(label))


def _cl181_label(m: int, n: int) -> SingLabel:
    if n == 0:
        return SingLabel("T3PQ_odd", (8 * m,))
    return SingLabel("T3PQ_even", (4 * m, 2 * n - 1))


_PRESENTATIONS = {
    "PropI2": lambda k: commutator_relation(k),
    "cl7": lambda k, n: _zvk(SingLabel("T3PQ_even", (4 * k + 2, 2 * n))),
    "cl8": lambda m, n: _zvk(SingLabel("T3PQ_even", (4 * m, 2 * n))),
    "cl181": lambda m, n: _zvk(_cl181_label(m, n)),
    "AnD4": lambda n: _zvk(SingLabel("A", (4 * n - 1,))),
    "Lem": lambda k: _zvk(SingLabel("D", (2 * k + 3,))),
    "Lemx": lambda n, beta: _zvk(SingLabel("T3NB", (4 * n + beta, beta))),
}


def lemma_presentation(lemma_id: str, **params: int) -> Presentation:
    """Presentation enumerated by a lemma instance.

    >>> lemma_presentation("PropI2", k=1).total_length()
    4
    """
    if lemma_id not in _PRESENTATIONS:
        raise UnknownLemma(lemma_id)
    return _PRESENTATIONS[lemma_id](**params)


def max_relator_length(p: Presentation) -> int:
    return max((len(r) for r in p.relators), default=0)


def _prop_i2(k: int) -> LemmaReport:
    ds = MonodromyDataset.of(4, [(3,), (2,)])
    sols, classes, orbits, labels = _run(lemma_presentation("PropI2", k=k), ds)
    if k % 4 == 0:
        expected = "one class, S4"
        ok = len(classes) == 1 and labels == ["S4"]
    else:
        expected = "no solutions"
        ok = not sols
    return _report("PropI2", {"k": k}, expected, ok, sols, classes, orbits, labels)


def _cl8(m: int, n: int) -> LemmaReport:
    p = lemma_presentation("cl8", m=m, n=n)
    ds = MonodromyDataset.of(4, TRANSPOSITIONS3)
    sols, classes, orbits, labels = _run(p, ds, cusp_axis_braids())
    if n % 3 == 1:
        expected = "n=3k+1: S4, one orbit"
        ok = labels == ["S4"] and len(orbits) == 1
    else:
        expected = "n!=3k+1: no solutions"
        ok = not sols
    return _report("cl8", {"m": m, "n": n}, expected, ok, sols, classes, orbits, labels)


def _cl181(m: int, n: int) -> LemmaReport:
    allowed = full_br3() if n == 0 else cusp_axis_braids()
    p = lemma_presentation("cl181", m=m, n=n)
    ds = MonodromyDataset.of(4, TRANSPOSITIONS3)
    sols, classes, orbits, labels = _run(p, ds, allowed)
    if n == 0 or n % 3 != 0:
        expected = "S4, one orbit"
        ok = labels == ["S4"] and len(orbits) == 1
    else:
        expected = "S4, at most two orbits"
        ok = labels == ["S4"] and 1 <= len(orbits) <= 2
    return _report("cl181", {"m": m, "n": n}, expected, ok, sols, classes, orbits, labels)


def _cl7(k: int, n: int) -> LemmaReport:
    p = lemma_presentation("cl7", k=k, n=n)
    ds = MonodromyDataset.of(4, TRANSPOSITIONS3)
    sols, classes, orbits, labels = _run(p, ds)
    ok = len(classes) == 1 and labels == ["S4"]
    return _report("cl7", {"k": k, "n": n}, "sole, S4", ok, sols, classes, orbits, labels)


def _and4(n: int) -> LemmaReport:
    p = lemma_presentation("AnD4", n=n)
    ds = MonodromyDataset.of(4, [(2, 2), (2,)])
    sols, classes, orbits, labels = _run(p, ds)
    ok = len(classes) == 1 and labels == ["D4"]
    return _report("AnD4", {"n": n}, "sole, D4", ok, sols, classes, orbits, labels)


def _lem(k: int) -> LemmaReport:
    p = lemma_presentation("Lem", k=k)
    ds = MonodromyDataset.of(4, [(2, 2), (2,), (2,)])
    sols, classes, orbits, labels = _run(p, ds)
    forced = HomTuple(
        (Permutation.parse("(1,2)(3,4)", 4), Permutation.parse("(1,3)", 4), Permutation.parse("(2,4)", 4))
    )
    ok = (
        len(classes) == 1
        and labels == ["D4"]
        and _conj_key(forced) == _conj_key(classes[0].representative)
    )
    return _report("Lem", {"k": k}, "sole, D4, images (1,2)(3,4),(1,3),(2,4)", ok, sols, classes, orbits, labels)


def _lemx(n: int, beta: int) -> LemmaReport:
    p = lemma_presentation("Lemx", n=n, beta=beta)
    ds = MonodromyDataset.of(4, TRANSPOSITIONS3)
    sols, classes, orbits, labels = _run(p, ds)
    ok = len(classes) == 1 and labels == ["S4"]
    return _report("Lemx", {"n": n, "beta": beta}, "sole, S4", ok, sols, classes, orbits, labels)


LEMMAS = {
    "PropI2": (_prop_i2, ("k",)),
    "cl7": (_cl7, ("k", "n")),
    "cl8": (_cl8, ("m", "n")),
    "cl181": (_cl181, ("m", "n")),
    "AnD4": (_and4, ("n",)),
    "Lem": (_lem, ("k",)),
    "Lemx": (_lemx, ("n", "beta")),
}


def verify_lemma(lemma_id: str, **params: int) -> LemmaReport:
    """Run the enumeration instance registered under ``lemma_id``.

    >>> verify_lemma("AnD4", n=1).labels
    ['D4']
    """
    if lemma_id not in LEMMAS:
        raise UnknownLemma(lemma_id)
    fn, names = LEMMAS[lemma_id]
    if set(params) != set(names):
        raise ValueError(f"{lemma_id} takes parameters {names}")
    return fn(**params)


_LEMMA_RANGES = {
    "cl7": ((0, None), (0, None)),
    "cl8": ((1, None), (0, None)),
    "cl181": ((1, None), (0, None)),
    "AnD4": ((1, None),),
    "Lem": ((1, None),),
    "Lemx": ((0, None), (1, 2)),
}


def lemma_instances(max_length: int = 200) -> list[tuple[str, dict]]:
    """All lemma parameter tuples whose longest relator has at most ``max_length`` letters.

    Relator length grows monotonically in every parameter, so each axis is
    scanned until the bound is crossed.
    """
    out: list[tuple[str, dict]] = []

    def fits(lid, kw):
        return max_relator_length(lemma_presentation(lid, **kw)) <= max_length

    for lid, ranges in _LEMMA_RANGES.items():
        names = LEMMAS[lid][1]
        (lo0, _), rest = ranges[0], ranges[1:]
        a = lo0
        while True:
            if not rest:
                kw = {names[0]: a}
                if not fits(lid, kw):
                    break
                out.append((lid, kw))
            else:
                lo1, hi1 = rest[0]
                b, found = lo1, False
                while hi1 is None or b <= hi1:
                    kw = {names[0]: a, names[1]: b}
                    if not fits(lid, kw):
                        break
                    out.append((lid, kw))
                    found = True
                    b += 1
                if not found:
                    break
            a += 1
    return out
