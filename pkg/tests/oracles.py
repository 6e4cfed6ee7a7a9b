"""Independent numerical oracles used by the test-suite."""

from __future__ import annotations

import cmath

import numpy as np




def roots_in_y(terms: dict[tuple[int, int], complex], x: complex) -> np.ndarray:
    dy = max(j for _, j in terms)
    c = np.zeros(dy + 1, dtype=complex)
    for (i, j), a in terms.items():
        c[dy - j] += complex(a) * x**i
    nz = np.nonzero(np.abs(c) > 0)[0]
    c = c[nz[0]:]
    return np.roots(c)


def local_root_count(terms: dict[tuple[int, int], complex]) -> int:
    """Number of roots y(x) tending to 0 as x -> 0: order of f(0, y)."""
    return min(j for (i, j) in terms if i == 0)


def follow_roots(terms: dict[tuple[int, int], complex], r: float = 1e-2, steps: int = 4000) -> list[int]:
    """Cycle lengths of the monodromy of the small roots around |x| = r.

    Returns the sorted list of cycle lengths; each cycle is one branch and
    its length the ramification index over the x-axis.
    """
    k = local_root_count(terms)

    def small(x):
        rts = roots_in_y(terms, x)
        return rts[np.argsort(np.abs(rts))[:k]]

    start = small(r)
    cur = start.copy()
    for s in range(1, steps + 1):
        x = r * cmath.exp(2j * cmath.pi * s / steps)
        nxt = small(x)
        order = []
        free = list(range(k))
        for y in cur:
            j = min(free, key=lambda q: abs(nxt[q] - y))
            free.remove(j)
            order.append(nxt[j])
        cur = np.array(order)
    perm = [int(np.argmin(np.abs(start - y))) for y in cur]
    seen, cycles = set(), []
    for i in range(k):
        if i in seen:
            continue
        n, j = 0, i
        while j not in seen:
            seen.add(j)
            j = perm[j]
            n += 1
        cycles.append(n)
    return sorted(cycles)


# Small plane curves exercising smooth, cusp, tangent and multi-characteristic
# branches.  None is divisible by z, so every branch is non-vertical.
PUISEUX_CORPUS = (
    "w^2 - z^3",
    "w^3 - z^7",
    "w*((w-z)^2 - z^5)",
    "w^2 - z^2 - z^3",
    "w^4 - z^3",
    "(w^2 - z^3)*(w^2 - 2*z^3)",
    "w^5 - z^2",
    "(w^2 - z^3)^2 - z^7",
    "w^3 - z^4 - z^5",
    "w^2 - z^4 - z^5",
    "(w - z^2)*(w + z^2)*(w - z^3)",
    "w^3 - 3*z^2*w + z^7",
    "w^2 - 3*z^2",
    "(w^2 - z^3)^2 - 4*z^5*w - z^7",
    "w^4 - 2*z^3*w^2 + z^6 - z^7",
    "w^3 + z^2*w - z^5",
    "w^2 + z*w + z^3",
    "w*(w - z)*(w + 2*z)",
    "w^6 - z^5",
    "(w^3 - z^2)^2 - z^5*w",
)


def numeric_terms(f) -> dict[tuple[int, int], complex]:
    """Exponent pair (deg z, deg w) to complex coefficient for a rational MPoly."""
    return {k: complex(float(v)) for k, v in f.terms.items()}
