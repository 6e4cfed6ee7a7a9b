"""Braid words, free-group words and the braid action on generator tuples.

A braid ``a_i`` acts on the free group <g1..gm> on the right:

    (g_i) a_i     = g_i g_{i+1} g_i^-1
    (g_{i+1}) a_i = g_i

and fixes the other generators.  ``act(b, t)`` evaluates ``(g_j) b`` at the
tuple ``t``; on the standard tuple it returns the images of the generators.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence


class UnsupportedLabel(ValueError):
    """No closed-form braid monodromy is known for this singularity label."""


def _reduce(letters: Sequence[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class FreeWord:
    """Freely reduced word in g1, g2, ...; letter ``-i`` is the inverse of g_i."""

    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def gen(cls, i: int) -> FreeWord:
        return cls((i,))

    @classmethod
    def parse(cls, text: str) -> FreeWord:
        """Parse ``"g1 g2^-1 g1^3"``; ``"1"`` or ``""`` is the empty word."""
        letters: list[int] = []
        for tok in text.split():
            if tok == "1":
                continue
            m = re.fullmatch(r"g(\d+)(?:\^(-?\d+))?", tok)
            if not m:
                raise ValueError(f"bad free-group token {tok!r}")
            i, k = int(m.group(1)), int(m.group(2) or 1)
            letters.extend([i if k > 0 else -i] * abs(k))
        return cls(tuple(letters))

    def __mul__(self, other: FreeWord) -> FreeWord:
        return FreeWord(self.letters + other.letters)

    def inverse(self) -> FreeWord:
        return FreeWord(tuple(-x for x in reversed(self.letters)))

    def __pow__(self, k: int) -> FreeWord:
        base = self if k >= 0 else self.inverse()
        return FreeWord(base.letters * abs(k))

    def conj(self, c: FreeWord) -> FreeWord:
        """Return ``c * self * c^-1``."""
        return c * self * c.inverse()

    def __len__(self) -> int:
        return len(self.letters)

    def is_trivial(self) -> bool:
        return not self.letters

    def cyclic_reduction(self) -> FreeWord:
        w = list(self.letters)
        while len(w) > 1 and w[0] == -w[-1]:
            w = w[1:-1]
        return FreeWord(tuple(w))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return _runs(self.letters, "g")


def _runs(letters: Sequence[int], prefix: str) -> str:
    parts = []
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        g, k = abs(letters[i]), (j - i) * (1 if letters[i] > 0 else -1)
        parts.append(f"{prefix}{g}" if k == 1 else f"{prefix}{g}^{k}")
        i = j
    return " ".join(parts)


def standard_tuple(m: int) -> tuple[FreeWord, ...]:
    return tuple(FreeWord.gen(i) for i in range(1, m + 1))


@dataclass(frozen=True)
class BraidWord:
    """Word in the Artin generators a_1..a_{m-1}; stored as written."""

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise ValueError(f"letter a{abs(x)} invalid on {self.strands} strands")

    @classmethod
    def parse(cls, text: str, strands: int) -> BraidWord:
        """Parse ``"a1 a2^-1 a1^3"``.

        >>> str(BraidWord.parse("a1 a1 a2^-1", 3))
        'a1^2 a2^-1'
        """
        letters: list[int] = []
        for tok in text.split():
            m = re.fullmatch(r"a(\d+)(?:\^(-?\d+))?", tok)
            if not m:
                raise ValueError(f"bad braid token {tok!r}")
            i, k = int(m.group(1)), int(m.group(2) or 1)
            letters.extend([i if k > 0 else -i] * abs(k))
        return cls(strands, tuple(letters))

    @classmethod
    def gen(cls, i: int, strands: int, power: int = 1) -> BraidWord:
        return cls(strands, tuple([i if power > 0 else -i] * abs(power)))

    def __mul__(self, other: BraidWord) -> BraidWord:
        if other.strands != self.strands:
            raise ValueError("strand counts differ")
        return BraidWord(self.strands, self.letters + other.letters)

    def __pow__(self, k: int) -> BraidWord:
        base = self if k >= 0 else self.inverse()
        return BraidWord(self.strands, base.letters * abs(k))

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return _runs(self.letters, "a") if self.letters else "1"


def full_twist(m: int) -> BraidWord:
    """The braid (a_1 ... a_{m-1})^m."""
    if m < 2:
        raise ValueError("full twist needs m >= 2")
    return BraidWord(m, tuple(range(1, m)) * m)


def hurwitz_letter(letter: int, t: Sequence):
    """Apply one Artin letter to a tuple of group elements.

    Works for any elements supporting ``*`` and ``inverse()``; used both for
    free words and for permutations.
    """
    i = abs(letter) - 1
    t = list(t)
    x, y = t[i], t[i + 1]
    if letter > 0:
        t[i], t[i + 1] = x * y * x.inverse(), x
    else:
        t[i], t[i + 1] = y, y.inverse() * x * y
    return tuple(t)


def act(b: BraidWord, t: Sequence):
    """Evaluate ``(g_j) b`` at the tuple ``t`` for every j.

    Substituting ``t`` into the images of the generators composes as
    ``act(b1 * b2, t) == act(b1, act(b2, t))``, so letters are applied
    from the right end of the word.
    """
    if len(t) != b.strands:
        raise ValueError(f"tuple of length {len(t)} for a {b.strands}-strand braid")
    out = tuple(t)
    for letter in reversed(b.letters):
        out = hurwitz_letter(letter, out)
    return out


def images(b: BraidWord) -> tuple[FreeWord, ...]:
    """The automorphism induced by ``b`` on the standard generators."""
    return act(b, standard_tuple(b.strands))


def automorphism_equal(b1: BraidWord, b2: BraidWord) -> bool:
    """Equality in the braid group, decided by the faithful free-group action.

    >>> automorphism_equal(BraidWord.parse("a1 a2 a1", 3), BraidWord.parse("a2 a1 a2", 3))
    True
    """
    if b1.strands != b2.strands:
        raise ValueError("strand counts differ")
    return images(b1) == images(b2)


def boundary_word(m: int) -> FreeWord:
    """The product g1 g2 ... gm."""
    return FreeWord(tuple(range(1, m + 1)))


# ---------------------------------------------------------------------------
# Singularity labels


_FAMILIES = ("A", "D", "E6", "E7", "E8", "T3NB", "T3PQ_even", "T3PQ_odd", "T4")


@dataclass(frozen=True, order=True)
class SingLabel:
    """A singularity type from the taxonomy.

    Parameters per family:
      A (n,), D (n,), E6/E7/E8 (), T3NB (n, beta) for v^3 - u^(3n+beta),
      T3PQ_even (k, n) for v((v-u^k)^2 - u^(2k+n+1)),
      T3PQ_odd (n,) for v(v^2 - u^n), T4 (n1, n2) for
      (v^2 - u^(2n1+1))(u^2 - v^(2n2+1)).
    """

    family: str
    params: tuple[int, ...] = ()

    def __post_init__(self):
        f, p = self.family, self.params
        if f not in _FAMILIES:
            raise ValueError(f"unknown family {f}")
        ok = {
            "A": len(p) == 1 and p[0] >= 0,
            "D": len(p) == 1 and p[0] >= 4,
            "E6": p == (),
            "E7": p == (),
            "E8": p == (),
            "T3NB": len(p) == 2 and p[0] >= 0 and p[1] in (1, 2),
            "T3PQ_even": len(p) == 2 and p[0] >= 1 and p[1] >= 0,
            "T3PQ_odd": len(p) == 1 and p[0] >= 2,
            "T4": len(p) == 2 and p[0] >= 1 and p[1] >= 1,
        }[f]
        if not ok:
            raise ValueError(f"parameters {p} out of range for {f}")

    def subscript(self) -> tuple[int, ...] | None:
        """The index pair written after T_3 or T_4 in the taxonomy."""
        f, p = self.family, self.params
        if f == "T3PQ_even":
            k, n = p
            return (2 * k + n, 2 * k)
        if f == "T3PQ_odd":
            return (p[0] - 1, p[0])
        if f == "T4":
            return (2 * p[0], 2 * p[1])
        return None

    def alt_subscript(self) -> tuple[int, int] | None:
        """For v((v-u^k)^2 - u^(2k+n+1)) the subscript read with the equation
        exponent k taken as a quarter of the second index: (4k+n, 4k)."""
        if self.family != "T3PQ_even":
            return None
        k, n = self.params
        return (4 * k + n, 4 * k)

    def __str__(self) -> str:
        f, p = self.family, self.params
        if f in ("A", "D"):
            return f"{f}_{p[0]}"
        if f in ("E6", "E7", "E8"):
            return f"E_{f[1]}"
        if f == "T3NB":
            return f"T3({p[0]},{p[1]})"
        if f == "T3PQ_even":
            a, b = self.subscript()
            return f"T3[{a},{b}]"
        if f == "T3PQ_odd":
            return f"T3[n-1,n:{p[0]}]"
        a, b = self.subscript()
        return f"T4[{a},{b}]"

    @classmethod
    def parse(cls, text: str) -> SingLabel:
        """Inverse of ``str``.

        >>> SingLabel.parse("T3[10,8]").params
        (4, 2)
        """
        s = text.replace(" ", "")
        m = re.fullmatch(r"([AD])_?(\d+)", s)
        if m:
            return cls(m.group(1), (int(m.group(2)),))
        m = re.fullmatch(r"E_?([678])", s)
        if m:
            return cls("E" + m.group(1))
        m = re.fullmatch(r"T3\((\d+),(\d+)\)", s)
        if m:
            return cls("T3NB", (int(m.group(1)), int(m.group(2))))
        m = re.fullmatch(r"T3\[n-1,n:(\d+)\]", s)
        if m:
            return cls("T3PQ_odd", (int(m.group(1)),))
        m = re.fullmatch(r"T3\[(\d+),(\d+)\]", s)
        if m:
            a, b = int(m.group(1)), int(m.group(2))
            if b % 2 == 0 and a >= b:
                return cls("T3PQ_even", (b // 2, a - b))
            if a == b - 1:
                return cls("T3PQ_odd", (b,))
            raise ValueError(f"no T3 family with subscript [{a},{b}]")
        m = re.fullmatch(r"T4\[(\d+),(\d+)\]", s)
        if m:
            a, b = int(m.group(1)), int(m.group(2))
            if a % 2 or b % 2:
                raise ValueError("T4 subscripts are even")
            return cls("T4", (a // 2, b // 2))
        raise ValueError(f"cannot parse singularity label {text!r}")

    def resolved(self) -> SingLabel:
        """Replace the E names by the family member sharing the equation."""
        return {
            "E6": SingLabel("T3PQ_odd", (3,)),
            "E7": SingLabel("T3NB", (1, 1)),
            "E8": SingLabel("T3NB", (1, 2)),
        }.get(self.family, self)


def strand_count(label: SingLabel) -> int:
    return 2 if label.family == "A" else 3


def braid_monodromy(label: SingLabel) -> BraidWord:
    """Closed-form braid monodromy of a singularity type.

    >>> str(braid_monodromy(SingLabel("A", (3,))))
    'a1^4'
    >>> str(braid_monodromy(SingLabel("D", (5,))))
    'a1 a2 a1 a2 a1 a2^2'
    """
    lab = label.resolved()
    f, p = lab.family, lab.params
    if f == "A":
        return BraidWord.gen(1, 2, p[0] + 1)
    delta = full_twist(3)
    if f == "D":
        return delta * BraidWord.gen(2, 3, p[0] - 4)
    if f == "T3NB":
        n, beta = p
        return delta**n * BraidWord.parse("a1 a2", 3) ** beta
    if f == "T3PQ_even":
        k, n = p
        return delta**k * BraidWord.gen(1, 3, n + 1)
    if f == "T3PQ_odd":
        return BraidWord.parse("a1 a2 a1", 3) ** p[0]
    raise UnsupportedLabel(f"no closed-form braid monodromy for {label}")
