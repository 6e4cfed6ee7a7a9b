"""Registry of explicit cover germs and the branch-curve pipeline.

A germ is a pair (f1, f2) of polynomials in (z, w).  The pipeline runs

    Jacobian -> ramification branches -> image branches -> dataset -> groups

and compares the result with the singularity type and monodromy group
recorded for each family.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .braid import SingLabel, braid_monodromy
from .homenum import MonodromyDataset, classify_conjugacy, enumerate_homs
from .perm import Permutation, describe_group, generate
from .present import Presentation, tuple_satisfies, zvk_presentation
from .series import (
    INFINITE_UP_TO_N,
    MPoly,
    PuiseuxBranch,
    TruncationTooSmall,
    evaluate,
    hessian,
    jacobian,
    newton_puiseux,
    squarefree_factor,
)
from .singclass import (
    Classification,
    CurveBranch,
    EquisingInvariant,
    branch_from_puiseux,
    classify,
    intersection_multiplicity,
    invariant_of,
    model_branches,
    model_curve_branches,
    normalize_branch,
)

VARS = ("z", "w")
MAX_TRUNCATION = 512


class BadParams(ValueError):
    pass


class InconsistentDegrees(ValueError):
    pass


# ---------------------------------------------------------------- data types


@dataclass(frozen=True)
class FamilyId:
    """Family name, integer parameters and (for two families) the variant."""

    name: str
    params: tuple[int, ...] = ()
    variant: str = "proof"

    @classmethod
    def parse(cls, text: str, variant: str = "proof") -> FamilyId:
        """Parse ``"F4_3:n=0,m=1"``, ``"F4_1:n=2@theorem"`` or ``"KLEIN:row=2_2,p=3"``.

        >>> FamilyId.parse("F4_3:n=0,m=1").params
        (0, 1)
        """
        text, at, suffix = text.strip().partition("@")
        if at:
            variant = suffix.strip()
        name, _, rest = text.strip().partition(":")
        if name not in REGISTRY:
            raise BadParams(f"unknown family {name!r}")
        spec = REGISTRY[name]
        given: dict[str, str] = {}
        if rest:
            for chunk in rest.split(","):
                key, eq, val = chunk.partition("=")
                if not eq:
                    raise BadParams(f"malformed parameter {chunk!r}")
                given[key.strip()] = val.strip()
        if name == "KLEIN":
            row = given.pop("row", None)
            if row is None or row not in KLEIN_ROWS:
                raise BadParams("KLEIN needs row=<1..22>")
            keys = KLEIN_ROWS[row].param_names
            try:
                vals = tuple(int(given.pop(k)) for k in keys)
            except KeyError as e:
                raise BadParams(f"missing parameter {e}") from None
            if given:
                raise BadParams(f"unexpected parameters {sorted(given)}")
            return cls(name, (KLEIN_ORDER.index(row),) + vals, variant)
        try:
            vals = tuple(int(given.pop(k)) for k in spec.param_names)
        except KeyError as e:
            raise BadParams(f"missing parameter {e}") from None
        except ValueError:
            raise BadParams(f"non-integer parameter in {text!r}") from None
        if given:
            raise BadParams(f"unexpected parameters {sorted(given)}")
        return cls(name, vals, variant)

    @property
    def klein_row(self) -> str | None:
        return KLEIN_ORDER[self.params[0]] if self.name == "KLEIN" else None

    def param_dict(self) -> dict[str, int | str]:
        if self.name == "KLEIN":
            row = KLEIN_ROWS[self.klein_row]
            return {"row": self.klein_row, **dict(zip(row.param_names, self.params[1:]))}
        return dict(zip(REGISTRY[self.name].param_names, self.params))

    def __str__(self) -> str:
        parts = ",".join(f"{k}={v}" for k, v in self.param_dict().items())
        out = f"{self.name}:{parts}" if parts else self.name
        return out if self.variant == "proof" else f"{out}@{self.variant}"


@dataclass(frozen=True)
class CoverGerm:
    f1: MPoly
    f2: MPoly
    d: int
    family: FamilyId

    def __str__(self) -> str:
        return f"u = {self.f1}, v = {self.f2}"


@dataclass(frozen=True)
class RamBranch:
    """A branch of J = 0; ``delta`` is filled in once the image is known."""

    branch: PuiseuxBranch
    multiplicity: int
    delta: int | None = None

    @property
    def e(self) -> int:
        return self.multiplicity + 1


@dataclass(frozen=True)
class BranchCurve:
    curve: CurveBranch
    contributors: tuple[RamBranch, ...]


# ---------------------------------------------------------------- registry


@dataclass(frozen=True)
class FamilySpec:
    name: str
    param_names: tuple[str, ...]
    minimum: tuple[int, ...]
    build: Callable[[tuple[int, ...], str], tuple[str, str]]
    expected_tb: Callable[[tuple[int, ...]], SingLabel]
    expected_g: Callable[[tuple[int, ...]], str | None]
    variants: tuple[str, ...] = ("proof",)
    allowed: Callable[[tuple[int, ...]], bool] = lambda p: True


def _frac(x: Fraction) -> str:
    return f"({x.numerator}/{x.denominator})"


def _f4_1(p, variant):
    (n,) = p
    if variant == "theorem":
        return "z", f"w^4 + w^3*z^{n}"
    return "z", f"w^4 - z^{n}*w^3"


def _f4_6(p, variant):
    n, m = p
    if variant == "theorem":
        return "z", f"w^4 - (4/3)*z^{m}*(1 + 3*z^{n})*w^3 + 4*z^{2 * m}*(1 + z^{n})*w^2"
    return "z", f"w^4 - (4/3)*z^{m}*(3 + z^{n})*w^3 + 4*z^{2 * m}*(1 + z^{n})*w^2"


def fmnk_polynomial(m: int, n: int, k: int) -> str:
    """Antiderivative in w of w^m (w - z^k)^n, vanishing at w = 0."""
    terms = []
    for i in range(n + 1):
        c = Fraction((-1) ** (n - i) * math.comb(n, i), m + i + 1)
        terms.append(f"{_frac(c)}*z^{k * (n - i)}*w^{m + i + 1}")
    return " + ".join(terms)


def _L(family, *params) -> SingLabel:
    return SingLabel(family, tuple(params))


def _fmnk_group(p) -> str:
    m, n, _ = p
    d = m + n + 1
    return f"A{d}" if m % 2 == 0 and n % 2 == 0 else f"S{d}"


REGISTRY: dict[str, FamilySpec] = {}


def _register(spec: FamilySpec) -> None:
    REGISTRY[spec.name] = spec


_register(FamilySpec("F1_1", (), (), lambda p, v: ("z", "w^4"), lambda p: _L("A", 0), lambda p: "Z4"))
_register(FamilySpec("F2_1", (), (), lambda p, v: ("z^2", "w^2"), lambda p: _L("A", 1), lambda p: "Kl4"))
_register(
    FamilySpec(
        "F3_1", ("n",), (1,),
        lambda p, v: ("z", f"w^4 - 2*z^{p[0]}*w^2"),
        lambda p: _L("A", 4 * p[0] - 1), lambda p: "D4",
    )
)
_register(
    FamilySpec(
        "F3_2", ("n",), (1,),
        lambda p, v: ("z^2", f"w^2 - z^{2 * p[0] + 1}"),
        lambda p: _L("D", 2 * p[0] + 3), lambda p: "D4",
    )
)
_register(
    FamilySpec(
        "F4_1", ("n",), (1,), _f4_1,
        lambda p: _L("A", 8 * p[0] - 1), lambda p: "S4", ("proof", "theorem"),
    )
)
_register(
    FamilySpec(
        "F4_2", ("n", "beta"), (0, 1),
        lambda p, v: ("z", f"w^4 + 4*w*z^{3 * p[0] + p[1]}"),
        lambda p: _L("T3NB", 4 * p[0] + p[1], p[1]), lambda p: "S4",
        allowed=lambda p: p[1] in (1, 2),
    )
)
_register(
    FamilySpec(
        "F4_3", ("n", "m"), (0, 1),
        lambda p, v: ("z", f"w^4 - (8/3)*z^{p[1]}*w^3 + 2*(z^{2 * p[1]} - z^{2 * (p[1] + p[0]) + 1})*w^2"),
        lambda p: _L("T3PQ_even", 4 * p[1], 6 * p[0] + 2), lambda p: "S4",
    )
)
_register(
    FamilySpec(
        "F4_4", ("n", "m"), (0, 1),
        lambda p, v: ("z", f"w^4 + 12*z^{p[1] + p[0] + 1}*w^3 - 2*z^{2 * p[1] + 1}*w^2"),
        lambda p: _L("T3PQ_even", 4 * p[1] + 2, 2 * p[0]), lambda p: "S4",
    )
)
_register(
    FamilySpec(
        "F4_5", ("k", "m"), (1, 1),
        lambda p, v: (
            "z",
            f"w^4 - (8/3)*z^{p[1]}*(1 + 2*z^{p[0]})*w^3"
            f" + 2*z^{2 * p[1]}*(1 + 4*z^{p[0]} + 3*z^{2 * p[0]})*w^2",
        ),
        lambda p: _L("T3PQ_even", 4 * p[1], 6 * p[0] - 1), lambda p: "S4",
    )
)
_register(
    FamilySpec(
        "F4_6", ("n", "m"), (1, 1), _f4_6,
        lambda p: _L("T3PQ_even", 4 * p[1], 2 * p[0] - 1), lambda p: "S4", ("proof", "theorem"),
    )
)
_register(
    FamilySpec(
        "F4_7", ("m",), (1,),
        lambda p, v: ("z", f"w^4 - (16/3)*z^{p[0]}*w^3 + 6*z^{2 * p[0]}*w^2"),
        lambda p: _L("T3PQ_odd", 8 * p[0]), lambda p: "S4",
    )
)
_register(
    FamilySpec(
        "F4_8", ("n1", "n2"), (1, 1),
        lambda p, v: (f"z^2 + w^{2 * p[0] + 1}", f"w^2 + z^{2 * p[1] + 1}"),
        lambda p: _L("T4", p[0], p[1]), lambda p: "S4",
    )
)
_register(
    FamilySpec(
        "Fmnk", ("m", "n", "k"), (1, 1, 1),
        lambda p, v: ("z", fmnk_polynomial(*p)),
        lambda p: _L("A", 2 * p[2] * (p[0] + p[1] + 1) - 1), _fmnk_group,
    )
)

MAIN_ROWS = ("F1_1", "F2_1", "F3_1", "F3_2", "F4_1", "F4_2", "F4_3", "F4_4", "F4_5", "F4_6", "F4_7", "F4_8")


# ---------------------------------------------------------------- Klein forms

# Classical invariant forms of the binary polyhedral groups.
KLEIN_FORMS: dict[str, tuple[str, str, str]] = {
    "tetrahedral": (
        "z^4 + 2*sqrt(-3)*z^2*w^2 + w^4",
        "z^4 - 2*sqrt(-3)*z^2*w^2 + w^4",
        "z*w*(z^4 - w^4)",
    ),
    "octahedral": (
        "z*w*(z^4 - w^4)",
        "z^8 + 14*z^4*w^4 + w^8",
        "z^12 - 33*(z^8*w^4 + z^4*w^8) + w^12",
    ),
    "icosahedral": (
        "z*w*(z^10 + 11*z^5*w^5 - w^10)",
        "-(z^20 + w^20) + 228*(z^15*w^5 - z^5*w^15) - 494*z^10*w^10",
        "(z^30 + w^30) + 522*(z^25*w^5 - z^5*w^25) - 10005*(z^20*w^10 + z^10*w^20)",
    ),
}

# The icosahedral Hessian and Jacobian as they are sometimes misprinted; kept
# to show that the identities single out the classical coefficients.
MISPRINTED_ICOSAHEDRAL = (
    "z*w*(z^10 + 11*z^5*w^5 - w^10)",
    "-(z^20 + w^20) + 288*(z^15*w^5 + z^5*w^15) - 494*z^10*w^10",
    "(z^30 + w^30) + 522*(z^25*w^5 - z^5*w^25) - 1005*(z^20*w^10 + z^10*w^20)",
)


def proportionality(a: MPoly, b: MPoly):
    """The constant c with a = c*b, or None."""
    if b.is_zero():
        return None
    mono, cb = b.leading()
    ca = a.terms.get(mono)
    if ca is None:
        return None
    c = ca / cb
    return c if a == b * MPoly.const(a.vars, c) else None


@dataclass(frozen=True)
class KleinIdentity:
    group: str
    hessian_constant: object
    jacobian_constant: object

    @property
    def ok(self) -> bool:
        return self.hessian_constant not in (None, 0) and self.jacobian_constant not in (None, 0)

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "hessian_constant": None if self.hessian_constant is None else str(self.hessian_constant),
            "jacobian_constant": None if self.jacobian_constant is None else str(self.jacobian_constant),
            "pass": self.ok,
        }


def check_klein_triple(group: str, forms: Sequence[str]) -> KleinIdentity:
    phi, psi, theta = (MPoly.parse(t, VARS) for t in forms)
    return KleinIdentity(group, proportionality(hessian(phi), psi), proportionality(jacobian(phi, psi), theta))


def verify_klein_identities() -> list[KleinIdentity]:
    """Hessian(phi) = c psi and Jacobian(phi, psi) = c' theta for each triple.

    >>> [k.ok for k in verify_klein_identities()]
    [True, True, True]
    """
    return [check_klein_triple(g, f) for g, f in KLEIN_FORMS.items()]


@dataclass(frozen=True)
class KleinRow:
    row: str
    param_names: tuple[str, ...]
    u: str
    v: str
    tb: Callable[[tuple[int, ...]], SingLabel]
    pipeline: Callable[[tuple[int, ...]], bool]
    allowed: Callable[[tuple[int, ...]], bool] = lambda p: True


def _forms(group):
    phi, psi, theta = (f"({t})" for t in KLEIN_FORMS[group])
    return phi, psi, theta


def _klein_rows() -> dict[str, KleinRow]:
    ph4, ps4, th6 = _forms("tetrahedral")
    ph6, ps8, th12 = _forms("octahedral")
    ph12, ps20, th30 = _forms("icosahedral")
    fixed = [
        ("4", ps4, th6, "A_2"),
        ("5", f"{ph4}^3", th6, "A_3"),
        ("6", ph4, f"{ps4}^3", "A_5"),
        ("7", f"{ph4}^3", f"{ps4}^3", "D_4"),
        ("8", ps8, th12, "A_2"),
        ("9", ps8, f"{th12}^2", "A_5"),
        ("10", f"{ps8}^3", th12, "A_3"),
        ("11", f"{ph6}^4", f"{ps8}^3", "D_4"),
        ("12", ph6, ps8, "E_6"),
        ("13", f"{ph6}^2", th12, "E_7"),
        ("14", ph6, f"{th12}^2", "A_7"),
        ("15", f"{ph6}^2", f"{th12}^2", "D_6"),
        ("16", ps20, th30, "A_2"),
        ("17", ps20, f"{th30}^2", "A_5"),
        ("18", f"{ps20}^3", th30, "A_3"),
        ("19", f"{ph12}^5", f"{ps20}^3", "D_4"),
        ("20", ph12, th30, "A_4"),
        ("21", ph12, f"{th30}^2", "A_3"),
        ("22", ph12, ps20, "E_8"),
    ]
    never = lambda p: False  # noqa: E731
    rows = {
        "1": KleinRow("1", (), "z^2 + z*w + w^2", "z^2*w + z*w^2", lambda p: _L("A", 2), lambda p: True),
        "2_1": KleinRow(
            "2_1", ("p", "q"), "z^{pq} + w^{pq}", "z^{q}*w^{q}",
            lambda p: _L("D", p[0] + 2), never, lambda p: p[0] > 1 and p[1] > 1,
        ),
        "2_2": KleinRow(
            "2_2", ("p",), "z^{p} + w^{p}", "z*w",
            lambda p: _L("A", p[0] - 1), lambda p: p[0] <= 4, lambda p: p[0] > 1,
        ),
        "2_3": KleinRow(
            "2_3", ("q",), "z^{q} + w^{q}", "z^{q}*w^{q}",
            lambda p: _L("A", 3), never, lambda p: p[0] > 1,
        ),
        "3": KleinRow(
            "3", ("n1", "n2"), "z^{n1}", "w^{n2}",
            lambda p: _L("A", 1), lambda p: max(p) <= 3, lambda p: min(p) >= 2,
        ),
    }
    for row, u, v, tb in fixed:
        rows[row] = KleinRow(row, (), u, v, (lambda t: lambda p: SingLabel.parse(t))(tb), never)
    return rows


KLEIN_ROWS = _klein_rows()
KLEIN_ORDER = tuple(["1", "2_1", "2_2", "2_3", "3"] + [str(i) for i in range(4, 23)])


def _klein_text(row: KleinRow, params: tuple[int, ...]) -> tuple[str, str]:
    env = dict(zip(row.param_names, params))
    if "p" in env and "q" in env:
        env["pq"] = env["p"] * env["q"]

    def sub(s):
        return re.sub(r"\{(\w+)\}", lambda m: str(env[m.group(1)]), s)

    return sub(row.u), sub(row.v)


_register(
    FamilySpec(
        "KLEIN", ("row",), (0,),
        lambda p, v: _klein_text(KLEIN_ROWS[KLEIN_ORDER[p[0]]], p[1:]),
        lambda p: KLEIN_ROWS[KLEIN_ORDER[p[0]]].tb(p[1:]),
        lambda p: None,
    )
)


def klein_pipeline_enabled(fid: FamilyId) -> bool:
    row = KLEIN_ROWS[fid.klein_row]
    return row.pipeline(fid.params[1:])


# ---------------------------------------------------------------- construction


def _check_params(fid: FamilyId) -> None:
    spec = REGISTRY.get(fid.name)
    if spec is None:
        raise BadParams(f"unknown family {fid.name!r}")
    if fid.variant not in spec.variants and fid.variant != "proof":
        raise BadParams(f"{fid.name} has no {fid.variant!r} variant")
    if fid.name == "KLEIN":
        if not fid.params or not 0 <= fid.params[0] < len(KLEIN_ORDER):
            raise BadParams("unknown Klein row")
        row = KLEIN_ROWS[fid.klein_row]
        rest = fid.params[1:]
        if len(rest) != len(row.param_names) or any(x < 1 for x in rest) or not row.allowed(rest):
            raise BadParams(f"parameters {rest} out of range for row {row.row}")
        return
    if len(fid.params) != len(spec.param_names):
        raise BadParams(f"{fid.name} takes parameters {spec.param_names}")
    if any(x < lo for x, lo in zip(fid.params, spec.minimum)) or not spec.allowed(fid.params):
        raise BadParams(f"parameters {fid.params} out of range for {fid.name}")


def local_degree(f1: MPoly, f2: MPoly, N: int = 32) -> int:
    """Intersection number of f1 = 0 and f2 = 0 at the origin."""
    total = 0
    for p, k in squarefree_factor(f1) if f1.is_rational() else [(f1, 1)]:
        for b in newton_puiseux(p, N, allow_vertical=True):
            o = evaluate(f2, b.as_pair()).order()
            if o is INFINITE_UP_TO_N:
                raise TruncationTooSmall("f2 vanishes along a branch of f1 to the working precision")
            total += k * o
    return total


def build_family(fid: FamilyId) -> CoverGerm:
    """Exact polynomials of a registered family.

    >>> g = build_family(FamilyId("F4_2", (0, 1)))
    >>> str(g.f2), g.d
    ('4*z*w + w^4', 4)
    """
    _check_params(fid)
    spec = REGISTRY[fid.name]
    t1, t2 = spec.build(fid.params, fid.variant)
    f1, f2 = MPoly.parse(t1, VARS), MPoly.parse(t2, VARS)
    if f1.constant_term() != 0 or f2.constant_term() != 0:
        raise BadParams("germ does not fix the origin")
    return CoverGerm(f1, f2, _degree(fid, f1, f2), fid)


def _degree(fid: FamilyId, f1: MPoly, f2: MPoly) -> int:
    if fid.name == "Fmnk":
        return fid.params[0] + fid.params[1] + 1
    if _is_homogeneous(f1) and _is_homogeneous(f2):
        # forms without a common line meet only at the origin
        return _homogeneous_degree(f1) * _homogeneous_degree(f2)
    return local_degree(f1, f2)


def _is_homogeneous(f: MPoly) -> bool:
    return len({sum(m) for m in f.terms}) == 1


def _homogeneous_degree(f: MPoly) -> int:
    degs = {sum(m) for m in f.terms}
    if len(degs) != 1:
        raise BadParams("expected a homogeneous form")
    return degs.pop()


# ---------------------------------------------------------------- pipeline


def default_truncation(g: CoverGerm) -> int:
    return 4 * (1 + max(g.f1.total_degree(), g.f2.total_degree()))


def ramification(g: CoverGerm, N: int) -> list[RamBranch]:
    """Branches of J(f) = 0 at the origin with their multiplicities.

    >>> [(str(r.branch), r.e) for r in ramification(build_family(FamilyId("F2_1")), 8)]
    [('(1*t, 0)', 2), ('(0, 1*t)', 2)]
    """
    J = jacobian(g.f1, g.f2)
    if J.is_zero():
        raise ValueError("Jacobian vanishes identically")
    out = []
    for p, k in squarefree_factor(J):
        for b in newton_puiseux(p, N, allow_vertical=True):
            out.append(RamBranch(b, k))
    return out


def _image(g: CoverGerm, r: RamBranch) -> tuple[CurveBranch, int]:
    pair = r.branch.as_pair()
    return normalize_branch(evaluate(g.f1, pair), evaluate(g.f2, pair))


def branch_images(g: CoverGerm, rams: Sequence[RamBranch], N: int | None = None) -> list[BranchCurve]:
    """Reduced images of the ramification branches; equal images are merged."""
    curves: list[CurveBranch] = []
    groups: list[list[RamBranch]] = []
    for r in rams:
        cb, delta = _image(g, r)
        r = replace(r, delta=delta)
        if delta * r.e > g.d:
            raise InconsistentDegrees(f"delta*e = {delta * r.e} exceeds the degree {g.d}")
        for i, other in enumerate(curves):
            if intersection_multiplicity(cb, other) is INFINITE_UP_TO_N:
                groups[i].append(r)
                break
        else:
            curves.append(cb)
            groups.append([r])
    return [BranchCurve(c, tuple(rs)) for c, rs in zip(curves, groups)]


def monodromy_dataset(g: CoverGerm, images: Sequence[BranchCurve]) -> MonodromyDataset:
    """One cycle type per branch curve: e repeated delta times per contributor."""
    classes = []
    for bc in images:
        parts: list[int] = []
        for r in bc.contributors:
            parts += [r.e] * r.delta
        if sum(parts) > g.d:
            raise InconsistentDegrees(f"sum of delta*e = {sum(parts)} exceeds the degree {g.d}")
        classes.append(sorted(parts, reverse=True))
    return MonodromyDataset.of(g.d, classes)


@dataclass(frozen=True)
class PipelineResult:
    N: int
    rams: tuple[RamBranch, ...]
    images: tuple[BranchCurve, ...]
    dataset: MonodromyDataset
    tb_invariant: EquisingInvariant
    tr_invariant: EquisingInvariant

    def signature(self):
        return (self.dataset, self.tb_invariant, self.tr_invariant)


def _pipeline_once(g: CoverGerm, N: int) -> PipelineResult:
    rams = ramification(g, N)
    images = branch_images(g, rams, N)
    ds = monodromy_dataset(g, images)
    tb = invariant_of([bc.curve for bc in images])
    tr = invariant_of([branch_from_puiseux(r.branch) for r in rams])
    return PipelineResult(N, tuple(rams), tuple(images), ds, tb, tr)


def run_pipeline(g: CoverGerm, N: int | None = None) -> PipelineResult:
    """Pipeline at the first truncation whose result agrees with N + 4."""
    N = N or default_truncation(g)
    while N <= MAX_TRUNCATION:
        try:
            a = _pipeline_once(g, N)
            b = _pipeline_once(g, N + 4)
        except TruncationTooSmall:
            N *= 2
            continue
        if a.signature() == b.signature():
            return a
        N *= 2
    raise TruncationTooSmall(f"no stable result up to truncation {MAX_TRUNCATION}")


# ---------------------------------------------------------------- groups


def _matrix(branches: Sequence[CurveBranch]) -> list[list[int]]:
    n = len(branches)
    M = [[0] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        M[i][j] = M[j][i] = intersection_multiplicity(branches[i], branches[j])
    return M


def strand_datasets(label: SingLabel, images: Sequence[BranchCurve], ds: MonodromyDataset) -> list[MonodromyDataset]:
    """Datasets on the braid strands, one per invariant-preserving matching of
    the computed branches with the model branches of ``label``."""
    models = model_branches(label)
    mcurves = model_curve_branches(label)
    ours = [bc.curve for bc in images]
    if len(ours) != len(mcurves):
        return []
    mdata = [(b.a, b.characteristic()) for b in mcurves]
    odata = [(b.a, b.characteristic()) for b in ours]
    Mm, Mo = _matrix(mcurves), _matrix(ours)
    m = max(s for mb in models for s in mb.strands)
    out: list[MonodromyDataset] = []
    n = len(ours)
    for perm in itertools.permutations(range(n)):
        if any(odata[perm[i]] != mdata[i] for i in range(n)):
            continue
        if any(Mo[perm[i]][perm[j]] != Mm[i][j] for i in range(n) for j in range(n)):
            continue
        classes: list[tuple[int, ...] | None] = [None] * m
        for i, mb in enumerate(models):
            for s in mb.strands:
                classes[s - 1] = ds.classes[perm[i]]
        cand = MonodromyDataset(ds.d, tuple(classes))
        if cand not in out:
            out.append(cand)
    return out


def free_relaxation(images: Sequence[BranchCurve], ds: MonodromyDataset) -> tuple[Presentation, MonodromyDataset]:
    """No relators; each branch contributes as many generators as its multiplicity."""
    classes = []
    for bc, c in zip(images, ds.classes):
        classes += [c] * bc.curve.a
    return Presentation(len(classes), ()), MonodromyDataset(ds.d, tuple(classes))


def _two_cycle_normal_form(e1: int, e2: int, d: int) -> tuple[Permutation, Permutation]:
    """Cycles of lengths e1, e2 on {1..d} sharing exactly the point d."""
    if e1 + e2 - 1 != d:
        raise ValueError("cycles do not overlap in a single point")
    a = list(range(e1 - 1)) + [d - 1]
    b = list(range(e1 - 1, d))
    return _cycle(a, d), _cycle(b, d)


def _cycle(points: Sequence[int], d: int) -> Permutation:
    img = list(range(d))
    for i, x in enumerate(points):
        img[x] = points[(i + 1) % len(points)]
    return Permutation(tuple(img))


@dataclass(frozen=True)
class GroupResult:
    labels: tuple[str, ...]
    solutions: int
    classes: int
    method: str


def monodromy_groups(label: SingLabel, images: Sequence[BranchCurve], ds: MonodromyDataset) -> GroupResult:
    """Monodromy groups compatible with the dataset and the braid of ``label``."""
    if label.family == "T4":
        p, sds = free_relaxation(images, ds)
        return _enumerate(p, [sds], "free")
    sds = strand_datasets(label, images, ds)
    if not sds:
        return GroupResult((), 0, 0, "no-matching")
    p = zvk_presentation(braid_monodromy(label))
    if ds.d <= 6:
        return _enumerate(p, sds, "enumerated")
    return _normal_form_groups(p, images, ds)


def _enumerate(p: Presentation, sds: Sequence[MonodromyDataset], method: str) -> GroupResult:
    sols = sorted({s for sd in sds for s in enumerate_homs(p, sd)})
    classes = classify_conjugacy(sols)
    return GroupResult(tuple(sorted({c.label for c in classes})), len(sols), len(classes), method)


def _normal_form_groups(p: Presentation, images, ds: MonodromyDataset) -> GroupResult:
    # two branches, each image a single cycle: a transitive pair is determined
    # up to conjugation by the overlap of the two cycles
    if len(images) != 2 or p.rank != 2:
        return GroupResult((), 0, 0, "too-large")
    cyc = [[x for x in c if x > 1] for c in ds.classes]
    if any(len(c) != 1 for c in cyc):
        return GroupResult((), 0, 0, "too-large")
    tau, sigma = _two_cycle_normal_form(cyc[0][0], cyc[1][0], ds.d)
    if not tuple_satisfies(p, (tau, sigma)):
        return GroupResult((), 0, 0, "normal-form")
    return GroupResult((describe_group(generate([tau, sigma], ds.d)),), 1, 1, "normal-form")


# ---------------------------------------------------------------- reports


@dataclass
class RowReport:
    family: FamilyId
    germ: CoverGerm
    TR: Classification | None
    TB: Classification | None
    dataset: MonodromyDataset | None
    groups: GroupResult | None
    expected_TB: SingLabel
    expected_G: str | None
    truncation: int | None
    recomputed: bool = True
    tb_invariant: EquisingInvariant | None = None
    extra: dict = field(default_factory=dict)

    @property
    def tb_ok(self) -> bool:
        return self.TB is not None and self.TB.matches(self.expected_TB)

    @property
    def g_ok(self) -> bool:
        if self.expected_G is None:
            return True
        return self.groups is not None and self.groups.labels == (self.expected_G,)

    @property
    def passed(self) -> bool:
        if not self.recomputed:
            return True
        return self.tb_ok and self.g_ok

    def to_json(self) -> dict:
        return {
            "family": self.family.name,
            "params": self.family.param_dict(),
            "variant": self.family.variant,
            "germ": {"u": str(self.germ.f1), "v": str(self.germ.f2), "degree": self.germ.d},
            "TR": None if self.TR is None else str(self.TR),
            "TB": None if self.TB is None else str(self.TB),
            "TB_invariant": None if self.tb_invariant is None else self.tb_invariant.to_json(),
            "dataset": None if self.dataset is None else str(self.dataset),
            "groups": None if self.groups is None else list(self.groups.labels),
            "group_method": None if self.groups is None else self.groups.method,
            "expected_TB": str(self.expected_TB),
            "expected_G": self.expected_G,
            "truncation": self.truncation,
            "recomputed": self.recomputed,
            "pass": self.passed,
        }


def expected_values(fid: FamilyId) -> tuple[SingLabel, str | None]:
    spec = REGISTRY[fid.name]
    return spec.expected_tb(fid.params), spec.expected_g(fid.params)


def verify_row(
    fid: FamilyId,
    N: int | None = None,
    expected: tuple[SingLabel, str | None] | None = None,
) -> RowReport:
    """Run the pipeline on one family member and compare with its recorded
    singularity type and monodromy group.

    >>> verify_row(FamilyId("F3_2", (1,))).to_json()["TB"]
    'D_5 (= T3[2,2])'
    """
    g = build_family(fid)
    exp_tb, exp_g = expected if expected is not None else expected_values(fid)
    if fid.name == "KLEIN" and not klein_pipeline_enabled(fid):
        return RowReport(fid, g, None, None, None, None, exp_tb, exp_g, None, recomputed=False)
    res = run_pipeline(g, N)
    tb = classify(res.tb_invariant)
    tr = classify(res.tr_invariant)
    groups = None
    target = tb.label if tb.label is not None else None
    if target is not None:
        groups = monodromy_groups(target, res.images, res.dataset)
    return RowReport(fid, g, tr, tb, res.dataset, groups, exp_tb, exp_g, res.N, tb_invariant=res.tb_invariant)


def parameter_grid(name: str, max_param: int, two_param_cap: int | None = None) -> list[tuple[int, ...]]:
    """Parameter tuples of a family with every entry at most ``max_param``."""
    spec = REGISTRY[name]
    cap = max_param
    if two_param_cap is not None and len(spec.param_names) == 2:
        cap = min(cap, two_param_cap)
    ranges = [range(lo, cap + 1) for lo in spec.minimum]
    return [p for p in itertools.product(*ranges) if spec.allowed(p)]


def main_items(max_param: int, two_param_cap: int | None = None, variant: str = "proof") -> list[FamilyId]:
    out = []
    for name in MAIN_ROWS:
        spec = REGISTRY[name]
        variants = spec.variants if variant == "both" else (variant if variant in spec.variants else "proof",)
        for p in parameter_grid(name, max_param, two_param_cap):
            for v in variants:
                out.append(FamilyId(name, p, v))
    return out


@lru_cache(maxsize=None)
def klein_pipeline_items() -> tuple[FamilyId, ...]:
    items = [FamilyId("KLEIN", (KLEIN_ORDER.index("1"),))]
    items += [FamilyId("KLEIN", (KLEIN_ORDER.index("2_2"), p)) for p in range(2, 5)]
    items += [
        FamilyId("KLEIN", (KLEIN_ORDER.index("3"), a, b)) for a in range(2, 4) for b in range(2, 4)
    ]
    return tuple(items)
