"""Bounded-degree checks of the structural facts about Der(Q[x1..xn]).

Each check returns a :class:`Check` so the CLI can tabulate them and the
test suite can assert on them.  Every statement is about an
infinite-dimensional object and is verified only on a degree truncation.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, List, Sequence

from .endomorph import PolyEndo, compose, fixes_euler_frame, fixes_partials, is_identity, is_shift
from .liederiv import (
    Derivation,
    centralizer_bounded,
    derivation_basis,
    full_dimension,
    ideal_closure_bounded,
    module_orbit_bounded,
)
from .lndkit import common_kernel_bounded
from .polyalg import monomials_up_to
from .sampling import (
    random_elementary,
    random_nonconstant,
    random_nonzero_derivation,
    random_shift,
    random_tame,
)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


def partials(n: int) -> List[Derivation]:
    return [Derivation.partial(n, i) for i in range(1, n + 1)]


def eulers(n: int) -> List[Derivation]:
    return [Derivation.euler(n, i) for i in range(1, n + 1)]


def check_cartan(n: int, d: int) -> Check:
    """The centralizer of span{H_i} is span{H_i}."""
    C = centralizer_bounded(eulers(n), d, n)
    ok = C.spans_same(eulers(n))
    return Check(f"C(span H_i) = span H_i  (n={n}, deg<={d})", ok, f"dim {C.dim}")


def check_partials_centralizer(n: int, d: int) -> Check:
    """The centralizer of span{d_i} is span{d_i}."""
    C = centralizer_bounded(partials(n), d, n)
    ok = C.spans_same(partials(n))
    return Check(f"C(span d_i) = span d_i  (n={n}, deg<={d})", ok, f"dim {C.dim}")


def check_center(n: int, d: int, generator_degree: int = 2) -> Check:
    """Nothing of degree <= d commutes with every basis derivation of degree <= generator_degree."""
    C = centralizer_bounded(derivation_basis(n, generator_degree), d, n)
    return Check(f"Z(D_n) = 0  (n={n}, deg<={d})", C.dim == 0, f"dim {C.dim}")


def check_simplicity(n: int, d: int, samples: int, rng: random.Random) -> Check:
    """Ideal generated by each random nonzero element fills the degree-<= d space."""
    full = full_dimension(n, d)
    bad = []
    for _ in range(samples):
        a = random_nonzero_derivation(rng, n, d)
        if ideal_closure_bounded(a, d).dim != full:
            bad.append(str(a))
    return Check(f"D_n simple  (n={n}, deg<={d}, {samples} samples)", not bad, "; ".join(bad[:3]))


def check_module_simple(n: int, d: int, samples: int, rng: random.Random) -> Check:
    """Submodule of P_n/Q generated by each random non-constant element is everything."""
    full = len(monomials_up_to(n, d)) - 1
    bad = []
    for _ in range(samples):
        p = random_nonconstant(rng, n, d)
        if len(module_orbit_bounded(p, d)) != full:
            bad.append(str(p))
    return Check(f"P_n/Q simple  (n={n}, deg<={d}, {samples} samples)", not bad, "; ".join(bad[:3]))


def check_common_kernel(n: int, d: int) -> Check:
    ker = common_kernel_bounded(partials(n), d)
    return Check(f"common kernel of partials = Q  (n={n}, deg<={d})", ker.is_trivial(), f"dim {ker.dim}")


def fixator_samples(n: int, samples: int, rng: random.Random) -> List[PolyEndo]:
    """Random tame maps mixed with shifts, shifted tame maps and the identity."""
    out = [PolyEndo.identity(n)]
    for k in range(samples - 1):
        kind = k % 4
        if kind == 0:
            out.append(random_shift(rng, n))
        elif kind == 1:
            out.append(compose(random_shift(rng, n), random_elementary(rng, n)))
        else:
            out.append(random_tame(rng, n))
    return out


def check_fixators(n: int, samples: int, rng: random.Random) -> Check:
    """fixes_partials <=> shift, and fixes d_i and H_i <=> identity, on random maps."""
    bad = []
    for sigma in fixator_samples(n, samples, rng):
        if fixes_partials(sigma) != is_shift(sigma)[0]:
            bad.append(f"partials: {sigma}")
        if fixes_euler_frame(sigma) != is_identity(sigma):
            bad.append(f"frame: {sigma}")
    return Check(f"fixators  (n={n}, {samples} samples)", not bad, "; ".join(bad[:3]))


def lemma_suite(n: int, degree: int = 6, closure_degree: int = 4, samples: int = 5,
                seed: int = 0) -> List[Check]:
    rng = random.Random(seed)
    checks: List[Callable[[], Check]] = [
        lambda: check_cartan(n, degree),
        lambda: check_partials_centralizer(n, degree),
        lambda: check_center(n, degree),
        lambda: check_common_kernel(n, degree),
        lambda: check_simplicity(n, closure_degree, samples, rng),
        lambda: check_module_simple(n, closure_degree, samples, rng),
        lambda: check_fixators(n, 4 * samples, rng),
    ]
    return [c() for c in checks]


def format_table(checks: Sequence[Check]) -> str:
    width = max(len(c.name) for c in checks)
    lines = []
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        lines.append(f"{c.name:<{width}}  {status}" + (f"  ({c.detail})" if c.detail else ""))
    return "\n".join(lines)
