"""Equisingularity invariants of plane curve germs and the singularity taxonomy.

A germ is described by its branches, each given by a parametrization
(u(t), v(t)).  The invariant records, for every branch, its multiplicity and
characteristic exponents, plus the matrix of pairwise intersection
multiplicities.  Two germs have the same singularity type iff their
invariants agree, so labels are recognised by comparing invariants.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .braid import SingLabel, UnsupportedLabel
from .series import (
    INFINITE_UP_TO_N,
    Coeff,
    MPoly,
    PuiseuxBranch,
    TruncSeries,
    TruncationTooSmall,
    newton_puiseux,
)


class AmbiguousLabel(RuntimeError):
    pass


# ---------------------------------------------------------------- branches


@dataclass(frozen=True)
class CurveBranch:
    """Primitive branch with coordinate ``x_index`` equal to ``c * s^a`` exactly.

    ``a`` is the multiplicity: the other coordinate has order at least ``a``.
    """

    x_index: int
    a: int
    c: Coeff
    y: TruncSeries

    def pair(self) -> tuple[TruncSeries, TruncSeries]:
        x = TruncSeries.monomial(self.c, self.a)
        return (x, self.y) if self.x_index == 0 else (self.y, x)

    @property
    def precision(self):
        return self.y.prec

    def characteristic(self) -> tuple[int, ...]:
        """Exponents at which the running gcd (starting from ``a``) drops."""
        run = self.a
        chars = []
        for k in self.y.exponents():
            if run == 1:
                break
            g = math.gcd(run, k)
            if g < run:
                chars.append(k)
                run = g
        if run != 1:
            raise TruncationTooSmall("characteristic exponents not resolved below the truncation")
        return tuple(chars)

    def __str__(self) -> str:
        x, y = self.pair()
        return f"({x}, {y})"


def normalize_branch(X: TruncSeries, Y: TruncSeries) -> tuple[CurveBranch, int]:
    """Reparametrize so that the lower-order coordinate is a monomial, then
    remove the largest factor ``delta`` with the map factoring through t^delta.

    Returns the primitive branch and ``delta``.
    """
    ox, oy = X.order_bound(), Y.order_bound()
    if ox == math.inf and oy == math.inf:
        raise ValueError("constant parametrization")
    if ox == 0 or oy == 0:
        raise ValueError("parametrization does not pass through the origin")
    if X.order() is INFINITE_UP_TO_N and Y.order() is INFINITE_UP_TO_N:
        raise TruncationTooSmall("both coordinates vanish below the truncation")
    if Y.order() is INFINITE_UP_TO_N or (X.order() is not INFINITE_UP_TO_N and ox <= oy):
        idx, P, Q = 0, X, Y
    else:
        idx, P, Q = 1, Y, X
    a = P.order()
    c = P[a]
    unit = TruncSeries({k - a: v / c for k, v in P.coeffs.items()}, None if P.prec is None else P.prec - a)
    if unit.is_exact() and unit.coeffs == {0: 1}:
        Qs = Q
    else:
        p = unit.prec
        root = unit.binomial_power(1, a, p)
        s_of_t = root.shift(1)
        t_of_s = s_of_t.reversion(p + 1)
        Qs = Q.compose(t_of_s)
    if Q.order() is INFINITE_UP_TO_N and Q.is_exact():
        delta = a
    else:
        delta = a
        for k in Qs.exponents():
            delta = math.gcd(delta, k)
    if Qs.order() is INFINITE_UP_TO_N and not Qs.is_exact():
        raise TruncationTooSmall("second coordinate vanishes below the truncation")
    b = CurveBranch(idx, a // delta, c, Qs.contract(delta))
    return b, delta


def branch_from_puiseux(b: PuiseuxBranch) -> CurveBranch:
    x, y = b.as_pair()
    cb, delta = normalize_branch(x, y)
    if delta != 1:
        raise ValueError("Puiseux branch is not primitive")
    return cb


def _det(M: list[list[TruncSeries]]) -> TruncSeries:
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    out = TruncSeries({}, None)
    for j in range(n):
        if not M[0][j].coeffs and M[0][j].is_exact():
            continue
        minor = [row[:j] + row[j + 1 :] for row in M[1:]]
        term = M[0][j] * _det(minor)
        out = out + term if j % 2 == 0 else out - term
    return out


def intersection_multiplicity(b1: CurveBranch, b2: CurveBranch):
    """Order along ``b1`` of the norm polynomial of ``b2``.

    Returns ``INFINITE_UP_TO_N`` when the two agree up to the available
    precision (the same branch, or truncation too small to separate them).
    """
    a, c, Y = b2.a, b2.c, b2.y
    pair = b1.pair()
    Xs, Ys = pair[b2.x_index], pair[1 - b2.x_index]
    # Y(s) = sum_r s^r Y_r(x) with x = c s^a
    parts: list[TruncSeries] = []
    for r in range(a):
        coeffs = {}
        for k in Y.exponents():
            if k % a == r:
                coeffs[(k - r) // a] = Y[k] / c ** ((k - r) // a)
        prec = None if Y.prec is None else max(0, -(-(Y.prec - r) // a))
        parts.append(TruncSeries(coeffs, prec))
    subst = [p.compose(Xs) if Xs.order_bound() > 0 else p for p in parts]
    x_over_c = Xs * (Fraction(1) / c)
    zero = TruncSeries({}, None)
    M = [[zero for _ in range(a)] for _ in range(a)]
    for col in range(a):
        for r in range(a):
            row, wrap = (r + col) % a, (r + col) // a
            entry = subst[r] * (x_over_c**wrap) if wrap else subst[r]
            M[row][col] = M[row][col] + entry
    for i in range(a):
        M[i][i] = M[i][i] - Ys
    return _det(M).order()


# ---------------------------------------------------------------- invariant


@dataclass(frozen=True)
class EquisingInvariant:
    branches: tuple[tuple[int, tuple[int, ...]], ...]
    matrix: tuple[tuple[int, ...], ...]

    @classmethod
    def canonical(cls, branches, matrix) -> EquisingInvariant:
        n = len(branches)
        best = None
        for perm in itertools.permutations(range(n)):
            br = tuple(branches[i] for i in perm)
            mx = tuple(tuple(matrix[i][j] for j in perm) for i in perm)
            key = (br, mx)
            if best is None or key < best:
                best = key
        if best is None:
            best = ((), ())
        return cls(*best)

    def magnitude(self) -> int:
        vals = [x for row in self.matrix for x in row]
        vals += [c for _, ch in self.branches for c in ch]
        vals += [e for e, _ in self.branches]
        return max(vals, default=1)

    def to_json(self) -> dict:
        return {
            "branches": [{"e": e, "characteristic": list(ch)} for e, ch in self.branches],
            "intersections": [list(r) for r in self.matrix],
        }

    def __str__(self) -> str:
        br = ", ".join(f"(e={e}; {','.join(map(str, ch)) or '-'})" for e, ch in self.branches)
        mx = " ".join("[" + " ".join(map(str, r)) + "]" for r in self.matrix)
        return f"{{{br}}} {mx}".strip()


def invariant_of(branches: Sequence[CurveBranch]) -> EquisingInvariant:
    """Canonical invariant of a germ given by pairwise distinct primitive branches."""
    data = [(b.a, b.characteristic()) for b in branches]
    n = len(branches)
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = intersection_multiplicity(branches[i], branches[j])
            if v is INFINITE_UP_TO_N:
                raise TruncationTooSmall("branches not separated below the truncation")
            M[i][j] = M[j][i] = v
    return EquisingInvariant.canonical(data, M)


def branches_of_equation(f: MPoly, N: int) -> list[CurveBranch]:
    """Primitive branches of f = 0 at the origin (f square-free)."""
    return [branch_from_puiseux(b) for b in newton_puiseux(f, N, allow_vertical=True)]


# ---------------------------------------------------------------- taxonomy


def defining_equation(label: SingLabel) -> MPoly:
    lab = label.resolved()
    f, p = lab.family, lab.params
    if f == "A":
        text = f"v^2 - u^{p[0] + 1}"
    elif f == "D":
        text = f"u*(v^2 - u^{p[0] - 2})"
    elif f == "T3NB":
        text = f"v^3 - u^{3 * p[0] + p[1]}"
    elif f == "T3PQ_even":
        k, n = p
        text = f"v*((v - u^{k})^2 - u^{2 * k + n + 1})"
    elif f == "T3PQ_odd":
        text = f"v*(v^2 - u^{p[0]})"
    elif f == "T4":
        text = f"(v^2 - u^{2 * p[0] + 1})*(u^2 - v^{2 * p[1] + 1})"
    else:
        raise UnsupportedLabel(str(label))
    return MPoly.parse(text, ("u", "v"))


@dataclass(frozen=True)
class ModelBranch:
    """Exact parametrization of a model branch and the braid strands it carries."""

    u: TruncSeries
    v: TruncSeries
    strands: tuple[int, ...]


def _mono(*pairs) -> TruncSeries:
    out: dict[int, Fraction] = {}
    for c, k in pairs:
        out[k] = out.get(k, 0) + Fraction(c)
    return TruncSeries(out, None)


def model_branches(label: SingLabel) -> list[ModelBranch]:
    """Branches of a representative germ placed so that the projection to u is
    generic, with the strands of the closed-form braid each branch occupies."""
    lab = label.resolved()
    f, p = lab.family, lab.params
    t = _mono((1, 1))
    if f == "A":
        n = p[0]
        if n == 0:
            return [ModelBranch(_mono((1, 2)), t, (1, 2))]
        if n % 2:
            h = (n + 1) // 2
            return [ModelBranch(t, _mono((1, h)), (1,)), ModelBranch(t, _mono((-1, h)), (2,))]
        return [ModelBranch(_mono((1, 2)), _mono((1, n + 1)), (1, 2))]
    if f == "D":
        n = p[0]
        line = ModelBranch(t, _mono((2, 1)), (1,))
        if n % 2 == 0:
            h = (n - 2) // 2
            return [line, ModelBranch(t, _mono((1, h)), (2,)), ModelBranch(t, _mono((-1, h)), (3,))]
        return [line, ModelBranch(_mono((1, 2)), _mono((1, n - 2)), (2, 3))]
    if f == "T3NB":
        n, beta = p
        return [ModelBranch(_mono((1, 3)), _mono((1, 3 * n + beta)), (1, 2, 3))]
    if f == "T3PQ_even":
        k, n = p
        N = 2 * k + n + 1
        axis = ModelBranch(t, TruncSeries({}, None), (3,))
        if n % 2:
            h = N // 2
            return [
                ModelBranch(t, _mono((1, k), (1, h)), (1,)),
                ModelBranch(t, _mono((1, k), (-1, h)), (2,)),
                axis,
            ]
        return [ModelBranch(_mono((1, 2)), _mono((1, 2 * k), (1, N)), (1, 2)), axis]
    if f == "T3PQ_odd":
        n = p[0]
        axis = ModelBranch(t, TruncSeries({}, None), (2,))
        if n % 2 == 0:
            h = n // 2
            return [ModelBranch(t, _mono((1, h)), (1,)), axis, ModelBranch(t, _mono((-1, h)), (3,))]
        return [ModelBranch(_mono((1, 2)), _mono((1, n)), (1, 3)), axis]
    if f == "T4":
        n1, n2 = p
        return [
            ModelBranch(_mono((1, 2)), _mono((1, 2 * n1 + 1)), ()),
            ModelBranch(_mono((1, 2 * n2 + 1)), _mono((1, 2)), ()),
        ]
    raise UnsupportedLabel(str(label))


def model_curve_branches(label: SingLabel) -> list[CurveBranch]:
    return [normalize_branch(m.u, m.v)[0] for m in model_branches(label)]


def predicted_invariant(label: SingLabel) -> EquisingInvariant:
    """Closed-form invariant of a taxonomy label."""
    lab = label.resolved()
    f, p = lab.family, lab.params
    smooth = (1, ())

    def cusp(c):
        return (2, (c,))

    if f == "A":
        n = p[0]
        if n == 0:
            return EquisingInvariant.canonical([smooth], [[0]])
        if n % 2:
            h = (n + 1) // 2
            return EquisingInvariant.canonical([smooth, smooth], [[0, h], [h, 0]])
        return EquisingInvariant.canonical([cusp(n + 1)], [[0]])
    if f == "D":
        n = p[0]
        if n % 2 == 0:
            h = (n - 2) // 2
            return EquisingInvariant.canonical([smooth] * 3, [[0, 1, 1], [1, 0, h], [1, h, 0]])
        return EquisingInvariant.canonical([smooth, cusp(n - 2)], [[0, 2], [2, 0]])
    if f == "T3NB":
        c = 3 * p[0] + p[1]
        if c == 1:
            return EquisingInvariant.canonical([smooth], [[0]])
        if c == 2:
            return EquisingInvariant.canonical([cusp(3)], [[0]])
        return EquisingInvariant.canonical([(3, (c,))], [[0]])
    if f == "T3PQ_even":
        k, n = p
        N = 2 * k + n + 1
        if n % 2:
            h = N // 2
            return EquisingInvariant.canonical([smooth] * 3, [[0, h, k], [h, 0, k], [k, k, 0]])
        return EquisingInvariant.canonical([cusp(N), smooth], [[0, 2 * k], [2 * k, 0]])
    if f == "T3PQ_odd":
        n = p[0]
        if n % 2 == 0:
            h = n // 2
            return EquisingInvariant.canonical([smooth] * 3, [[0, h, h], [h, 0, h], [h, h, 0]])
        return EquisingInvariant.canonical([cusp(n), smooth], [[0, n], [n, 0]])
    if f == "T4":
        n1, n2 = p
        return EquisingInvariant.canonical([cusp(2 * n1 + 1), cusp(2 * n2 + 1)], [[0, 4], [4, 0]])
    raise UnsupportedLabel(str(label))


def reference_model(label: SingLabel, N: int = 64) -> EquisingInvariant:
    """Invariant computed from the defining equation by Newton-Puiseux."""
    return invariant_of(branches_of_equation(defining_equation(label), N))


# family order used to pick the canonical name among labels sharing an invariant
_PRIORITY = {"A": 0, "D": 1, "E6": 2, "E7": 2, "E8": 2, "T3NB": 3, "T3PQ_odd": 4, "T3PQ_even": 5, "T4": 6}


def _proposals(inv: EquisingInvariant) -> set[SingLabel]:
    entries = {x for row in inv.matrix for x in row if x > 0}
    chars = {c for _, ch in inv.branches for c in ch}
    out: set[SingLabel] = set()

    def add(family, *params):
        try:
            out.add(SingLabel(family, tuple(params)))
        except ValueError:
            pass

    add("A", 0)
    for I in entries:
        add("A", 2 * I - 1)
        add("D", 2 * I + 2)
        add("T3PQ_odd", 2 * I)
        add("T3PQ_odd", I)
    for c in chars:
        add("A", c - 1)
        add("D", c + 2)
        add("T3PQ_odd", c)
        for beta in (1, 2):
            if (c - beta) % 3 == 0:
                add("T3NB", (c - beta) // 3, beta)
        if c % 2:
            for c2 in chars:
                if c2 % 2:
                    add("T4", (c - 1) // 2, (c2 - 1) // 2)
    for beta in (1, 2):
        add("T3NB", 0, beta)
    ks = {I for I in entries} | {I // 2 for I in entries if I % 2 == 0}
    Ns = {2 * I for I in entries} | chars
    for k in ks:
        for N in Ns:
            add("T3PQ_even", k, N - 2 * k - 1)
    for e in ("E6", "E7", "E8"):
        add(e)
    return out


@dataclass(frozen=True)
class Classification:
    label: SingLabel | None
    aliases: tuple[SingLabel, ...]

    def names(self) -> set[str]:
        if self.label is None:
            return set()
        return {str(self.label)} | {str(a) for a in self.aliases}

    def matches(self, label: SingLabel) -> bool:
        return self.label is not None and (
            label in (self.label, *self.aliases) or str(label) in self.names()
        )

    def __str__(self) -> str:
        if self.label is None:
            return "UNKNOWN"
        if not self.aliases:
            return str(self.label)
        return f"{self.label} (= {', '.join(map(str, self.aliases))})"


def _swapped_t4(a: SingLabel, b: SingLabel) -> bool:
    # exchanging u and v swaps the two cusps
    return a.family == b.family == "T4" and a.params == b.params[::-1]


def _sort_key(lab: SingLabel):
    return (_PRIORITY[lab.family], lab.params)


def classify(inv: EquisingInvariant) -> Classification:
    """Label(s) whose closed-form invariant equals ``inv``.

    Every match is the same singularity type; the first in family order is
    returned as the label and the rest as aliases.  Two members of one family
    with different parameters matching is an internal error.
    """
    hits = sorted((lab for lab in _proposals(inv) if predicted_invariant(lab) == inv), key=_sort_key)
    if not hits:
        return Classification(None, ())
    fams: dict[str, SingLabel] = {}
    for h in hits:
        if h.family in fams and fams[h.family] != h and not _swapped_t4(fams[h.family], h):
            raise AmbiguousLabel(f"{fams[h.family]} and {h} share an invariant")
        fams[h.family] = h
    return Classification(hits[0], tuple(hits[1:]))


def classify_equation(f: MPoly, N: int = 64) -> tuple[Classification, EquisingInvariant]:
    inv = invariant_of(branches_of_equation(f, N))
    return classify(inv), inv


def classify_stable(f: MPoly, N: int = 32, max_N: int = 512) -> tuple[Classification, EquisingInvariant, int]:
    """Classify at the first truncation whose invariant agrees with N + 4;
    the truncation doubles when the branches are not yet resolved."""
    while N <= max_N:
        try:
            a = invariant_of(branches_of_equation(f, N))
            b = invariant_of(branches_of_equation(f, N + 4))
        except TruncationTooSmall:
            N *= 2
            continue
        if a == b:
            return classify(a), a, N
        N *= 2
    raise TruncationTooSmall(f"no stable invariant up to truncation {max_N}")


@lru_cache(maxsize=None)
def all_labels(bound: int) -> tuple[SingLabel, ...]:
    """Taxonomy labels with every parameter at most ``bound``."""
    out = [SingLabel("A", (n,)) for n in range(0, bound + 1)]
    out += [SingLabel("D", (n,)) for n in range(4, bound + 1)]
    out += [SingLabel(e) for e in ("E6", "E7", "E8")]
    out += [SingLabel("T3NB", (n, b)) for n in range(0, bound + 1) for b in (1, 2)]
    out += [SingLabel("T3PQ_even", (k, n)) for k in range(1, bound + 1) for n in range(0, bound + 1)]
    out += [SingLabel("T3PQ_odd", (n,)) for n in range(2, bound + 1)]
    out += [SingLabel("T4", (a, b)) for a in range(1, bound + 1) for b in range(1, bound + 1)]
    return tuple(out)
