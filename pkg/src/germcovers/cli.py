"""Command line verification harness.

Every command builds a report ``{command, inputs, items, pass, timing}``
where each item carries its own ``pass`` flag and the report passes iff
every required item does.  Exit codes: 0 pass, 1 mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

from .braid import BraidWord, SingLabel, UnsupportedLabel, automorphism_equal, braid_monodromy, full_twist
from .germs import (
    KLEIN_ORDER,
    KLEIN_ROWS,
    MAIN_ROWS,
    MISPRINTED_ICOSAHEDRAL,
    REGISTRY,
    BadParams,
    FamilyId,
    check_klein_triple,
    expected_values,
    klein_pipeline_items,
    main_items,
    verify_klein_identities,
    verify_row,
)
from .homenum import (
    MonodromyDataset,
    classify_conjugacy,
    cusp_axis_braids,
    enumerate_homs,
    full_br3,
    hurwitz_orbits,
    verify_lemma,
)
from .perm import (
    Permutation,
    contains_alternating,
    describe_group,
    generate,
    relatively_simple_subgroups,
)
from .present import (
    a_presentation,
    cusp_axis_presentation,
    d_presentation,
    d_presentation_printed,
    hom_set_equivalent,
    t3nb_presentation,
    tangent_cusp_presentation,
    tangent_lines_presentation,
    zvk_presentation,
)
from .series import MPoly, ParseError, TruncationTooSmall, UnsupportedCoefficientField
from .singclass import classify_stable

EXPECTED_GROUPS = ("D4", "Kl4", "S4", "Z4")


class UsageError(ValueError):
    pass


def _report(command: str, inputs: dict, items: list[dict], started: float, **extra) -> dict:
    ok = all(it["pass"] for it in items if it.get("required", True))
    out = {"command": command, "inputs": inputs, "items": items, "pass": ok, "timing": round(time.time() - started, 3)}
    out.update(extra)
    return out


# ---------------------------------------------------------------- verify-main


def _row_job(args: tuple[str, tuple[int, ...], str, int | None, tuple | None]) -> dict:
    name, params, variant, N, override = args
    fid = FamilyId(name, params, variant)
    expected = None
    if override is not None:
        expected = (SingLabel.parse(override[0]), override[1])
    item = verify_row(fid, N, expected).to_json()
    item["id"] = str(fid)
    item["required"] = variant == "proof"
    return item


def _run_jobs(fn: Callable, jobs: Sequence, workers: int) -> list:
    if workers <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, jobs))


# negative control: a wrong monodromy group for the Klein-four row
SELF_TEST_ROW = "F2_1"
SELF_TEST_OVERRIDE = ("A_1", "S4")


def _main_items(max_param, N, rows, variant, jobs, self_test, two_param_max):
    if max_param < 1:
        raise UsageError("--max-param must be at least 1")
    fids = main_items(max_param, two_param_max, variant)
    if rows:
        unknown = set(rows) - set(MAIN_ROWS)
        if unknown:
            raise UsageError(f"unknown rows {sorted(unknown)}")
        fids = [f for f in fids if f.name in rows]
    work = []
    for f in fids:
        override = SELF_TEST_OVERRIDE if self_test and f.name == SELF_TEST_ROW else None
        work.append((f.name, f.params, f.variant, N, override))
    return _run_jobs(_row_job, work, jobs)


def cmd_verify_main(
    max_param: int = 3,
    N: int | None = None,
    rows: Sequence[str] = (),
    variant: str = "both",
    jobs: int = 1,
    self_test: bool = False,
    two_param_max: int | None = None,
) -> dict:
    """Every registered row over its parameter grid."""
    t0 = time.time()
    items = _main_items(max_param, N, rows, variant, jobs, self_test, two_param_max)
    inputs = {
        "max_param": max_param,
        "two_param_max": two_param_max,
        "truncation": N,
        "rows": list(rows),
        "variant": variant,
        "self_test": self_test,
    }
    return _report("verify-main", inputs, items, t0, truncations=sorted({it["truncation"] for it in items}))


# ---------------------------------------------------------------- verify-groups


def cmd_verify_groups(max_param: int = 2, N: int | None = None, jobs: int = 1, two_param_max: int | None = None) -> dict:
    """The set of monodromy groups over all rows is {Z4, Kl4, D4, S4}."""
    t0 = time.time()
    rows = _main_items(max_param, N, (), "proof", jobs, False, two_param_max)
    seen = sorted({g for it in rows for g in (it["groups"] or [])})
    items = [
        {
            "id": "group-set",
            "expected": list(EXPECTED_GROUPS),
            "computed": seen,
            "pass": tuple(seen) == EXPECTED_GROUPS,
        },
        {"id": "no-A4", "expected": False, "computed": "A4" in seen, "pass": "A4" not in seen},
    ]
    for k in range(0, 2):
        for n in range(0, 3):
            rep = verify_lemma("cl7", k=k, n=n)
            items.append(
                {
                    "id": f"cl7:k={k},n={n}",
                    "expected": "no A4",
                    "computed": rep.labels,
                    "pass": "A4" not in rep.labels and rep.passed,
                }
            )
    return _report("verify-groups", {"max_param": max_param, "two_param_max": two_param_max}, items, t0, rows=len(rows))


# ---------------------------------------------------------------- verify-perm


def alt_generators(m: int, n: int) -> tuple[Permutation, Permutation]:
    """(1..m, m+n+1) and (m+1..m+n+1) on m+n+1 points."""
    d = m + n + 1
    tau = Permutation.from_cycles([list(range(1, m + 1)) + [d]], d)
    sigma = Permutation.from_cycles([list(range(m + 1, d + 1))], d)
    return tau, sigma


def _parity_odd(p: Permutation) -> bool:
    return sum(c - 1 for c in p.cycle_type()) % 2 == 1


def cmd_verify_perm(M: int = 5) -> dict:
    """Alternating-group containment sweep and relatively simple subgroup checks."""
    if not 1 <= M <= 7:
        raise UsageError("M must lie in 1..7")
    t0 = time.time()
    items = []
    for m in range(1, M + 1):
        for n in range(1, m + 1):
            d = m + n + 1
            tau, sigma = alt_generators(m, n)
            has_alt = contains_alternating([tau, sigma], d)
            odd = _parity_odd(tau) or _parity_odd(sigma)
            computed = (f"S{d}" if odd else f"A{d}") if has_alt else "no alternating subgroup"
            expected = f"S{d}" if m % 2 or n % 2 else f"A{d}"
            item = {"id": f"alt:m={m},n={n}", "expected": expected, "computed": computed, "pass": computed == expected}
            if (m, n) == (2, 2):
                order = generate([tau, sigma], d).order
                item["order"] = order
                item["pass"] = item["pass"] and order == 60
            items.append(item)

    def spot(name, gens, d, expected):
        G = generate([Permutation.parse(g, d) for g in gens], d)
        got = sorted({i for _, i in relatively_simple_subgroups(G)}, reverse=True)
        items.append({"id": f"relatively-simple:{name}", "expected": expected, "computed": got, "pass": got == expected})

    spot("A4", ["(1,2,3)", "(2,3,4)"], 4, [12, 6, 4])
    spot("Q8", ["(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"], 8, [8])
    spot("S3", ["(1,2,3)", "(1,2)"], 3, [6, 3])
    return _report("verify-perm", {"M": M}, items, t0)


# ---------------------------------------------------------------- verify-braid


def _a(i: int, m: int, k: int = 1) -> BraidWord:
    return BraidWord.gen(i, m, k)


def braid_items() -> list[dict]:
    items = []

    def add(name, ok):
        items.append({"id": name, "expected": True, "computed": bool(ok), "pass": bool(ok)})

    for m in range(3, 6):
        for i in range(1, m - 1):
            add(f"braid-relation:m={m},i={i}", automorphism_equal(
                _a(i, m) * _a(i + 1, m) * _a(i, m), _a(i + 1, m) * _a(i, m) * _a(i + 1, m)))
        for i in range(1, m):
            for k in range(i + 2, m):
                add(f"far-commutation:m={m},i={i},k={k}", automorphism_equal(_a(i, m) * _a(k, m), _a(k, m) * _a(i, m)))
    for m in (3, 4):
        D = full_twist(m)
        add(f"central:m={m}", all(
            automorphism_equal(D * _a(i, m, s), _a(i, m, s) * D) for i in range(1, m) for s in (1, -1)))
    x = BraidWord.parse("a2 a1^2 a2", 3)
    add("cusp-axis-twist", automorphism_equal(x * _a(1, 3, 2), full_twist(3)))
    add("cusp-axis-commutes", automorphism_equal(x * _a(1, 3), _a(1, 3) * x))
    add("distinct-generators", not automorphism_equal(_a(1, 3), _a(2, 3)))
    return items


def presentation_items(d: int = 4) -> list[dict]:
    items = []

    def zvk(label):
        return zvk_presentation(braid_monodromy(label))

    def add(name, p1, p2, expected=True):
        got = hom_set_equivalent(p1, p2, d)
        items.append({"id": name, "expected": expected, "computed": got, "pass": got == expected})

    for n in range(0, 10):
        add(f"A_{n}", zvk(SingLabel("A", (n,))), a_presentation(n))
    for n in range(4, 9):
        add(f"D_{n}", zvk(SingLabel("D", (n,))), d_presentation(n))
    for k in (1,):
        add(f"D_{2 * k + 5}:three-relator-form", zvk(SingLabel("D", (2 * k + 5,))), d_presentation_printed(k))
    for n in range(0, 4):
        for beta in (1, 2):
            add(f"T3({n},{beta})", zvk(SingLabel("T3NB", (n, beta))), t3nb_presentation(n, beta))
    for n in range(2, 7):
        add(f"T3[{n - 1},{n}]", zvk(SingLabel("T3PQ_odd", (n,))), cusp_axis_presentation(n))
    for e, n in ((2, 0), (2, 1), (4, 1), (6, 2)):
        lab = SingLabel("T3PQ_even", (e, 2 * n))
        add(f"{lab}:cusp-form", zvk(lab), tangent_cusp_presentation(e, n))
    for e, n in ((4, 1), (4, 2), (8, 1)):
        lab = SingLabel("T3PQ_even", (e, 2 * n - 1))
        add(f"{lab}:line-form", zvk(lab), tangent_lines_presentation(e, n))
    return items


def cmd_verify_braid() -> dict:
    t0 = time.time()
    return _report("verify-braid", {}, braid_items() + presentation_items(), t0)


# ---------------------------------------------------------------- verify-klein


def cmd_verify_klein(N: int | None = None) -> dict:
    t0 = time.time()
    items = []
    for k in verify_klein_identities():
        items.append({"id": f"identities:{k.group}", **k.to_json()})
    bad = check_klein_triple("icosahedral-misprint", MISPRINTED_ICOSAHEDRAL).to_json()
    bad.update(id="identities:icosahedral-misprint", required=False)
    items.append(bad)
    for fid in klein_pipeline_items():
        it = verify_row(fid, N).to_json()
        it["id"] = str(fid)
        items.append(it)
    for row in KLEIN_ORDER:
        spec = KLEIN_ROWS[row]
        if spec.param_names:
            continue
        fid = FamilyId("KLEIN", (KLEIN_ORDER.index(row),))
        if any(f == fid for f in klein_pipeline_items()):
            continue
        items.append(
            {
                "id": str(fid),
                "u": spec.u,
                "v": spec.v,
                "expected_TB": str(expected_values(fid)[0]),
                "recomputed": False,
                "required": False,
                "pass": True,
            }
        )
    return _report("verify-klein", {"truncation": N}, items, t0)


# ---------------------------------------------------------------- classify


def cmd_classify(poly_text: str, N: int = 32, expect: str | None = None) -> dict:
    t0 = time.time()
    try:
        f = MPoly.parse(poly_text, ("u", "v"))
    except ParseError:
        raise
    except (SyntaxError, ValueError) as e:
        raise ParseError(str(e)) from None
    cls, inv, used = classify_stable(f, N)
    item = {
        "id": poly_text,
        "computed": str(cls),
        "names": sorted(cls.names()),
        "invariant": inv.to_json(),
        "truncation": used,
        "pass": True,
    }
    if cls.label is not None and cls.label.family in ("T3PQ_even",):
        item["equation_params"] = {"k": cls.label.params[0], "n": cls.label.params[1]}
        item["alt_subscript"] = list(cls.label.alt_subscript())
    if expect is not None:
        want = SingLabel.parse(expect)
        item["expected"] = expect
        item["pass"] = cls.matches(want)
    return _report("classify", {"polynomial": poly_text, "truncation": N}, [item], t0)


# ---------------------------------------------------------------- enumerate


def default_hurwitz_braids(label: SingLabel) -> list[BraidWord]:
    """Braids commuting with the closed-form monodromy of ``label``."""
    lab = label.resolved()
    if lab.family == "A":
        return [BraidWord.parse("a1", 2)]
    if lab.family == "T3PQ_even":
        return cusp_axis_braids()
    if lab.family == "T3PQ_odd":
        return full_br3()
    if lab.family == "D":
        return [BraidWord.parse("a2", 3), BraidWord.parse("a1 a2^2 a1", 3)]
    if lab.family == "T3NB":
        return [BraidWord.parse("a1 a2", 3)]
    raise UnsupportedLabel(str(label))


def cmd_enumerate(label_text: str, d: int, classes_text: str, hurwitz: bool = False) -> dict:
    t0 = time.time()
    label = SingLabel.parse(label_text)
    if d > 6:
        raise UsageError("enumeration is limited to d <= 6")
    p = zvk_presentation(braid_monodromy(label))
    ds = MonodromyDataset.parse(classes_text, d)
    if len(ds.classes) != p.rank:
        raise UsageError(f"{label} has {p.rank} generators but {len(ds.classes)} classes were given")
    sols = enumerate_homs(p, ds)
    classes = classify_conjugacy(sols) if sols else []
    item = {
        "id": f"{label}:{ds}",
        "solutions": len(sols),
        "classes": [{"representative": str(c.representative), "size": c.size, "label": c.label} for c in classes],
        "labels": sorted({c.label for c in classes}),
        "pass": True,
    }
    if hurwitz and sols:
        allowed = default_hurwitz_braids(label)
        item["hurwitz_braids"] = [str(b) for b in allowed]
        item["orbits"] = len(hurwitz_orbits(sols, allowed))
    return _report("enumerate", {"label": label_text, "d": d, "classes": classes_text, "hurwitz": hurwitz}, [item], t0)


# ---------------------------------------------------------------- output


def _human(report: dict) -> str:
    lines = [f"{report['command']}: {'PASS' if report['pass'] else 'FAIL'} ({report['timing']} s)"]
    for it in report["items"]:
        flag = "ok  " if it["pass"] else "FAIL"
        if not it.get("required", True):
            flag = "info" if it["pass"] else "info-fail"
        detail = []
        for key in ("expected_TB", "TB", "expected_G", "groups", "dataset", "expected", "computed", "solutions", "labels", "orbits"):
            if key in it and it[key] is not None:
                val = it[key]
                if isinstance(val, list) and key == "classes":
                    continue
                detail.append(f"{key}={val}")
        lines.append(f"  [{flag}] {it.get('id', '')}  " + "  ".join(detail))
        for c in it.get("classes", []) if isinstance(it.get("classes"), list) else []:
            lines.append(f"        class {c['representative']} size={c['size']} group={c['label']}")
    return "\n".join(lines)


def _emit(report: dict, as_json: bool) -> int:
    if as_json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print(_human(report))
    return 0 if report["pass"] else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="germcovers", description="Verification harness for cover germs.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, truncation=True):
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        if truncation:
            p.add_argument("--truncation", type=int, default=None, help="initial series truncation order")

    p = sub.add_parser("verify-main", help="run every family row over a parameter grid")
    common(p)
    p.add_argument("--max-param", type=int, default=3)
    p.add_argument("--two-param-max", type=int, default=None, help="tighter bound for two-parameter rows")
    p.add_argument("--rows", default="", help="comma-separated family names")
    p.add_argument("--variant", choices=("theorem", "proof", "both"), default="both")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--self-test", action="store_true", help="inject one wrong expected value")

    p = sub.add_parser("verify-groups", help="collect monodromy groups over all rows")
    common(p)
    p.add_argument("--max-param", type=int, default=2)
    p.add_argument("--two-param-max", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("verify-perm", help="alternating-group sweep and subgroup checks")
    common(p, truncation=False)
    p.add_argument("--max-param", type=int, default=5, help="largest m in the sweep (at most 7)")

    p = sub.add_parser("verify-braid", help="braid relations and presentation checks")
    common(p, truncation=False)

    p = sub.add_parser("verify-klein", help="invariant-form identities and low-degree Galois rows")
    common(p)

    p = sub.add_parser("classify", help="singularity type of a curve in u, v")
    common(p)
    p.add_argument("polynomial")
    p.add_argument("--expect", default=None, help="exit 1 unless the label matches")

    p = sub.add_parser("enumerate", help="monodromy homomorphisms for a label and dataset")
    common(p, truncation=False)
    p.add_argument("label")
    p.add_argument("--degree", "-d", type=int, default=4)
    p.add_argument("--classes", required=True, help='cycle types such as "3,1|2,1,1"; "*" is a wildcard')
    p.add_argument("--hurwitz", action="store_true", help="also count Hurwitz orbits")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if args.command == "verify-main":
            rows = tuple(r for r in args.rows.split(",") if r)
            rep = cmd_verify_main(
                args.max_param, args.truncation, rows, args.variant, args.jobs, args.self_test, args.two_param_max
            )
        elif args.command == "verify-groups":
            rep = cmd_verify_groups(args.max_param, args.truncation, args.jobs, args.two_param_max)
        elif args.command == "verify-perm":
            rep = cmd_verify_perm(args.max_param)
        elif args.command == "verify-braid":
            rep = cmd_verify_braid()
        elif args.command == "verify-klein":
            rep = cmd_verify_klein(args.truncation)
        elif args.command == "classify":
            rep = cmd_classify(args.polynomial, args.truncation or 32, args.expect)
        else:
            rep = cmd_enumerate(args.label, args.degree, args.classes, args.hurwitz)
    except (UsageError, ParseError, BadParams, UnsupportedLabel, UnsupportedCoefficientField, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except TruncationTooSmall as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return _emit(rep, args.json)


if __name__ == "__main__":
    sys.exit(main())
