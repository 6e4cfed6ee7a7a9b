"""Zariski-van Kampen presentations and their finite quotients in S_d."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .braid import BraidWord, FreeWord, images
from .perm import Permutation, symmetric_table


@dataclass(frozen=True)
class Presentation:
    rank: int
    relators: tuple[FreeWord, ...]
    dropped: int = 0

    @classmethod
    def from_relations(cls, rank: int, relations: Sequence[tuple[FreeWord, FreeWord]]) -> Presentation:
        """Relations ``lhs = rhs`` become relators ``lhs^-1 rhs``."""
        rels = [lhs.inverse() * rhs for lhs, rhs in relations]
        kept = tuple(r for r in rels if not r.is_trivial())
        return cls(rank, kept, len(rels) - len(kept))

    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def __str__(self) -> str:
        gens = " ".join(f"g{i}" for i in range(1, self.rank + 1))
        rels = ", ".join(str(r.cyclic_reduction()) for r in self.relators)
        return f"< {gens} | {rels} >"


def zvk_presentation(b: BraidWord) -> Presentation:
    """Relators g_i^-1 (g_i)b for i = 1..m; trivial ones are dropped and counted.

    >>> str(zvk_presentation(BraidWord.parse("a1 a1", 2)))
    '< g1 g2 | g2 g1 g2^-1 g1^-1, g2^-1 g1 g2 g1^-1 >'
    """
    imgs = images(b)
    pairs = [(FreeWord.gen(i + 1), w) for i, w in enumerate(imgs)]
    return Presentation.from_relations(b.strands, pairs)


def evaluate(word: FreeWord, tuples: np.ndarray, d: int) -> np.ndarray:
    """Evaluate ``word`` on each row of ``tuples`` (element indices of S_d)."""
    T = symmetric_table(d)
    inv_cols = {}
    state = np.zeros(tuples.shape[0], dtype=T.mul.dtype)
    for letter in word.letters:
        j = abs(letter) - 1
        if letter > 0:
            g = tuples[:, j]
        else:
            if j not in inv_cols:
                inv_cols[j] = T.inv[tuples[:, j]]
            g = inv_cols[j]
        state = T.mul[state, g]
    return state


def satisfies(p: Presentation, tuples: np.ndarray, d: int) -> np.ndarray:
    """Boolean mask of the rows of ``tuples`` that kill every relator."""
    mask = np.ones(tuples.shape[0], dtype=bool)
    for r in p.relators:
        if not mask.any():
            break
        mask &= evaluate(r, tuples, d) == 0
    return mask


def product_rows(choices: Sequence[Sequence[int]]) -> np.ndarray:
    if not choices:
        return np.zeros((1, 0), dtype=np.int32)
    grids = np.meshgrid(*[np.asarray(c, dtype=np.int32) for c in choices], indexing="ij")
    return np.stack([g.reshape(-1) for g in grids], axis=1)


def solution_set(p: Presentation, d: int, reduce_first: bool = True) -> set[tuple[int, ...]]:
    """Relator-satisfying tuples in S_d as tuples of element indices.

    With ``reduce_first`` the first component runs over one element per
    conjugacy class only; the full set is conjugation invariant, so two
    presentations agree on these slices iff they agree everywhere.
    """
    T = symmetric_table(d)
    first = T.class_representatives() if reduce_first else range(T.size)
    rest = product_rows([range(T.size)] * (p.rank - 1))
    out: set[tuple[int, ...]] = set()
    for f in first:
        rows = np.concatenate([np.full((rest.shape[0], 1), f, dtype=np.int32), rest], axis=1)
        ok = rows[satisfies(p, rows, d)]
        out.update(map(tuple, ok.tolist()))
    return out


def hom_set_equivalent(p1: Presentation, p2: Presentation, d: int) -> bool:
    """True iff both presentations have the same generator tuples in S_d."""
    if p1.rank != p2.rank:
        raise ValueError("presentations have different rank")
    if d > 6:
        raise ValueError("hom-set comparison is limited to d <= 6")
    return solution_set(p1, d) == solution_set(p2, d)


def as_permutations(row: Sequence[int], d: int) -> tuple[Permutation, ...]:
    T = symmetric_table(d)
    return tuple(T.elements[i] for i in row)


def tuple_satisfies(p: Presentation, perms: Sequence[Permutation]) -> bool:
    """Direct check of every relator on one tuple (no table of S_d needed)."""
    d = perms[0].d
    ident = Permutation.identity(d)
    inv = [q.inverse() for q in perms]
    for r in p.relators:
        acc = ident
        for x in r.letters:
            acc = acc * (perms[x - 1] if x > 0 else inv[-x - 1])
        if acc != ident:
            return False
    return True


# ---------------------------------------------------------------- explicit presentations
#
# Hand-written relator sets for the closed-form braids; used as an
# independent check of zvk_presentation.  P denotes g1 g2 g3.


def _g(i: int) -> FreeWord:
    return FreeWord.gen(i)


def _P() -> FreeWord:
    return _g(1) * _g(2) * _g(3)


def a_presentation(n: int) -> Presentation:
    """A_n with n = 2k - delta: (g1 g2)^k g1^(1-delta) = (g2 g1)^k g2^(1-delta)."""
    k = (n + 1) // 2
    delta = 2 * k - n
    g1, g2 = _g(1), _g(2)
    lhs = (g1 * g2) ** k * g1 ** (1 - delta)
    rhs = (g2 * g1) ** k * g2 ** (1 - delta)
    return Presentation.from_relations(2, [(lhs, rhs)])


def t3nb_presentation(n: int, beta: int) -> Presentation:
    """Cusp type v^3 = u^(3n+beta) written with conjugation by powers of P."""
    g1, g2, g3, P = _g(1), _g(2), _g(3), _P()
    if beta == 1:
        rels = [(g1, g3.conj(P ** (n + 1))), (g2, g1.conj(P**n)), (g3, g2.conj(P**n))]
    elif beta == 2:
        rels = [(g1, g2.conj(P ** (n + 1))), (g2, g3.conj(P ** (n + 1))), (g3, g1.conj(P**n))]
    else:
        raise ValueError("beta must be 1 or 2")
    return Presentation.from_relations(3, rels)


def tangent_cusp_presentation(e: int, n: int) -> Presentation:
    """Braid Delta^e a1^(2n+1): a cusp and a smooth branch with even contact."""
    g1, g2, g3, P = _g(1), _g(2), _g(3), _P()
    c = (g1 * g2) ** n
    rels = [
        (g1, (g1 * g2 * g1.inverse()).conj(c).conj(P**e)),
        (g2, g1.conj(c).conj(P**e)),
        (g3, g3.conj(P**e)),
    ]
    return Presentation.from_relations(3, rels)


def tangent_lines_presentation(e: int, n: int) -> Presentation:
    """Braid Delta^e a1^(2n): two tangent smooth branches and a third one."""
    g1, g2, g3, P = _g(1), _g(2), _g(3), _P()
    c = (g1 * g2) ** n
    rels = [(g1, g1.conj(c).conj(P**e)), (g2, g2.conj(c).conj(P**e)), (g3, g3.conj(P**e))]
    return Presentation.from_relations(3, rels)


def d_presentation(n: int) -> Presentation:
    """D_n from the braid Delta a2^(n-4), relators written out explicitly."""
    if n < 4:
        raise ValueError("D_n needs n >= 4")
    g1, g2, g3, P = _g(1), _g(2), _g(3), _P()
    j = n - 4
    i, odd = divmod(j, 2)
    c = (g2 * g3) ** i
    if odd:
        r2 = (g2 * g3 * g2.inverse()).conj(c).conj(P)
        r3 = g2.conj(c).conj(P)
    else:
        r2 = g2.conj(c).conj(P)
        r3 = g3.conj(c).conj(P)
    return Presentation.from_relations(3, [(g1, g1.conj(P)), (g2, r2), (g3, r3)])


def d_presentation_printed(k: int, literal: bool = False) -> Presentation:
    """Three-relator form with (g2 g3)^k; ``literal`` uses (g1 g2)^-k in the
    last relator, which does not present any D_n."""
    g1, g2, g3, P = _g(1), _g(2), _g(3), _P()
    c = (g2 * g3) ** k
    last = (g1 * g2) ** (-k) if literal else c.inverse()
    rels = [
        (g1, g1.conj(P)),
        (g2, (g2 * g3 * g2.inverse()).conj(c).conj(P)),
        (g3, P * c * g2 * last * P.inverse()),
    ]
    return Presentation.from_relations(3, rels)


def cusp_axis_presentation(n: int) -> Presentation:
    """Braid (a1 a2 a1)^n: v(v^2 - u^n) = 0."""
    g1, g2, g3, P = _g(1), _g(2), _g(3), _P()
    j, odd = divmod(n, 2)
    if odd:
        h = [(g1 * g2) * g3 * (g1 * g2).inverse(), g1 * g2 * g1.inverse(), g1]
    else:
        h = [g1, g2, g3]
    rels = [(g, w.conj(P**j)) for g, w in zip((g1, g2, g3), h)]
    return Presentation.from_relations(3, rels)
