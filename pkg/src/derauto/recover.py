"""Reconstructing a polynomial automorphism from commuting LNDs.

Given commuting locally nilpotent derivations ``D_1..D_n`` of ``Q[x1..xn]``
whose common kernel is ``Q``, :func:`construct_coordinates` finds polynomials
``y_1..y_n`` with ``D_i(y_j) = delta_ij``.  The automorphism ``x_j -> y_j``
then conjugates each partial ``d_i`` to ``D_i``.

The construction is inductive.  At each stage we hold ``r`` derivations
acting on a subalgebra ``R`` (a kernel computed at the previous stage,
represented by a basis of its degree-<= dmax part):

* take a largest proper subset ``I`` of the derivations whose kernels meet
  in more than the constants, with ``A`` that intersection;
* take a slice ``y`` in ``A`` for the last derivation ``D_l`` outside ``I``;
* every other derivation ``D_j`` outside ``I`` acts on ``A = Q[y]`` as a
  scalar multiple of ``d/dy``, so replace it by ``D_j - D_j(y) D_l``
  ("corrected" branch; nothing to correct when ``|I| = r - 1``);
* recurse on ``ker(D_l)`` inside ``R`` with the remaining ``r - 1``.

The corrections accumulate into a unitriangular scalar matrix ``Lam`` with
``(Lam D)(y) = 1``; the final coordinates are ``y Lam``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

from .endomorph import (
    PolyEndo,
    compose,
    conjugate_derivation,
    invert_bounded,
    is_shift,
    normalize_by_shift,
    unit_jacobian,
)
from .errors import (
    CommonKernelTooLarge,
    DegreeBoundExceeded,
    NotCommutingError,
    NonConstantTerminal,
    NotLNDError,
    SeedInKernel,
    VerificationFailed,
)
from .liederiv import Derivation, apply, bracket
from .lndkit import (
    common_kernel_bounded,
    find_slice,
    is_lnd_bounded,
    kernel_in_subspace,
    monomial_space,
    slice_by_solving,
)
from .polyalg import Polynomial

T = TypeVar("T")


@dataclass
class CoordinateSystem:
    coords: Tuple[Polynomial, ...]
    duals: Tuple[Derivation, ...]
    lam: List[List[Fraction]]

    def relation_holds(self) -> bool:
        n = len(self.coords)
        return all(apply(self.duals[i], self.coords[j]) == (1 if i == j else 0)
                   for i in range(n) for j in range(n))


@dataclass
class RecoveryReport:
    sigma: PolyEndo
    coords: CoordinateSystem
    shift_normalized: bool
    degree_bound_used: int
    trace: List[dict] = field(default_factory=list)


def check_hypotheses(ds: Sequence[Derivation], dmax: int, cap: int) -> None:
    """Raise the appropriate ``HypothesisError`` unless ``ds`` qualifies."""
    if not ds:
        raise ValueError("need at least one derivation")
    n = ds[0].nvars
    if len(ds) != n or any(d.nvars != n for d in ds):
        raise ValueError(f"need exactly n={n} derivations of Q[x1..x{n}], got {len(ds)}")
    for i, j in itertools.combinations(range(n), 2):
        if bracket(ds[i], ds[j]):
            raise NotCommutingError(
                f"not commuting: derivations {i + 1} and {j + 1} have nonzero bracket "
                f"{bracket(ds[i], ds[j])}", (i + 1, j + 1))
    for i, d in enumerate(ds):
        if not is_lnd_bounded(d, cap):
            raise NotLNDError(f"not LND within cap {cap}: derivation {i + 1} ({d})", i + 1, cap)
    ker = common_kernel_bounded(ds, dmax)
    if not ker.is_trivial():
        raise CommonKernelTooLarge(
            "common kernel too large: contains "
            + ", ".join(str(b) for b in ker.basis[:6]) + (" ..." if ker.dim > 6 else ""),
            ker.basis)


@dataclass
class _Item:
    label: int                   # 0-based index into the input list
    deriv: Derivation
    row: Dict[int, Fraction]     # deriv == sum(row[l] * ds[l])


def _seeds(space: Sequence[Polynomial], order: str) -> List[Polynomial]:
    seeds = [p for p in space if not p.is_constant()]
    return seeds[::-1] if order == "reverse" else seeds


def _slice_in(d: Derivation, space: Sequence[Polynomial], cap: int, seed_order: str,
              dmax: int, level: int):
    # hypotheses were checked, so a missing slice means the truncation hid it
    try:
        return find_slice(d, cap, _seeds(space, seed_order))
    except (SeedInKernel, NonConstantTerminal) as exc:
        raise DegreeBoundExceeded(
            f"degree bound exceeded: no slice up to degree {dmax} at stage {level} ({exc})", dmax) from exc


def _stage(items: List[_Item], space: List[Polynomial], dmax: int, cap: int, seed_order: str,
           trace: List[dict], rows: Dict[int, Dict[int, Fraction]], level: int) -> Dict[int, Polynomial]:
    # rows collects, per label, the final expression of its derivation in the inputs
    r = len(items)
    if r == 1:
        (it,) = items
        rows[it.label] = it.row
        cert = _slice_in(it.deriv, space, cap, seed_order, dmax, level)
        trace.append({"stage": level, "branch": "base", "labels": [it.label + 1],
                      "slice_for": it.label + 1, "slice": str(cert.slice), "steps": cert.steps})
        return {it.label: cert.slice}

    subset = None
    for size in range(r - 1, 0, -1):
        for I in itertools.combinations(range(r), size):
            A = kernel_in_subspace([items[i].deriv for i in I], space, dmax)
            if not A.is_trivial():
                subset = I
                break
        if subset is not None:
            break
    if subset is None:
        raise DegreeBoundExceeded(
            f"degree bound exceeded: every kernel is trivial up to degree {dmax} at stage {level}", dmax)

    outside = [j for j in range(r) if j not in subset]
    last = items[outside[-1]]
    cert = _slice_in(last.deriv, A.basis, cap, seed_order, dmax, level)
    y = cert.slice

    lambdas = {}
    new_items = []
    for j in range(r):
        if j == outside[-1]:
            continue
        it = items[j]
        if j in subset:
            new_items.append(it)
            continue
        val = apply(it.deriv, y)
        if not val.is_constant():
            raise DegreeBoundExceeded(
                f"degree bound exceeded: derivation {it.label + 1} moves the slice to non-constant {val}", dmax)
        c = val.constant_term()
        lambdas[it.label + 1] = str(c)
        row = dict(it.row)
        for l, v in last.row.items():
            row[l] = row.get(l, 0) - c * v
        new_items.append(_Item(it.label, it.deriv - last.deriv * c, {l: v for l, v in row.items() if v}))

    trace.append({
        "stage": level,
        "branch": "maximal" if len(subset) == r - 1 else "corrected",
        "labels": [it.label + 1 for it in items],
        "subset": [items[i].label + 1 for i in subset],
        "m": len(subset),
        "slice_for": last.label + 1,
        "slice": str(y),
        "steps": cert.steps,
        "lambdas": lambdas,
    })

    rows[last.label] = last.row
    rest_space = kernel_in_subspace([last.deriv], space, dmax).basis
    coords = _stage(new_items, rest_space, dmax, cap, seed_order, trace, rows, level + 1)
    coords[last.label] = y
    return coords


def construct_coordinates(ds: Sequence[Derivation], dmax: int, cap: int,
                          method: str = "proof", seed_order: str = "forward",
                          trace: Optional[List[dict]] = None) -> CoordinateSystem:
    """Coordinates ``y`` with ``ds[i](y[j]) == delta_ij``.

    ``method="proof"`` runs the inductive construction described in the
    module docstring; ``method="direct"`` solves for each ``y_j`` inside the
    common kernel of the other derivations.  Both results are checked.
    """
    ds = list(ds)
    check_hypotheses(ds, dmax, cap)
    n = len(ds)
    trace = [] if trace is None else trace

    if method == "direct":
        coords = []
        for j in range(n):
            others = [ds[i] for i in range(n) if i != j]
            space = common_kernel_bounded(others, dmax).basis if others else monomial_space(n, dmax)
            y = slice_by_solving(ds[j], space)
            if y is None:
                raise DegreeBoundExceeded(
                    f"degree bound exceeded: no slice for derivation {j + 1} up to degree {dmax}", dmax)
            coords.append(y)
        trace.append({"stage": 1, "branch": "direct", "labels": list(range(1, n + 1))})
        lam = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        cs = CoordinateSystem(tuple(coords), tuple(ds), lam)
    elif method == "proof":
        items = [_Item(i, d, {i: Fraction(1)}) for i, d in enumerate(ds)]
        rows: Dict[int, Dict[int, Fraction]] = {}
        ys = _stage(items, monomial_space(n, dmax), dmax, cap, seed_order, trace, rows, 1)
        lam = [[Fraction(rows[i].get(j, 0)) for j in range(n)] for i in range(n)]
        coords = []
        for j in range(n):
            y = Polynomial.zero(n)
            for k in range(n):
                if lam[k][j]:
                    y = y + ys[k].scale(lam[k][j])
            coords.append(y)
        cs = CoordinateSystem(tuple(coords), tuple(ds), lam)
    else:
        raise ValueError(f"unknown method {method!r}")

    if not cs.relation_holds():
        raise VerificationFailed("verification failed: constructed coordinates are not dual to the derivations")
    return cs


def recover_automorphism(ds: Sequence[Derivation], dmax: int, cap: int,
                         method: str = "proof", seed_order: str = "forward") -> RecoveryReport:
    """Automorphism ``sigma`` with ``sigma d_i sigma^-1 == ds[i]``, shift-normalized.

    The result is verified before returning: constant Jacobian, an inverse of
    degree <= dmax, and the conjugation identity for every ``i``.
    """
    trace: List[dict] = []
    cs = construct_coordinates(ds, dmax, cap, method, seed_order, trace)
    n = len(ds)
    sigma, _ = normalize_by_shift(PolyEndo(cs.coords))
    cs = CoordinateSystem(sigma.images, cs.duals, cs.lam)
    if unit_jacobian(sigma) is None:
        raise VerificationFailed("verification failed: recovered map has non-constant Jacobian")
    invert_bounded(sigma, dmax)
    for i in range(n):
        got = conjugate_derivation(sigma, Derivation.partial(n, i + 1))
        if got != ds[i]:
            raise VerificationFailed(
                f"verification failed: conjugate of d{i + 1} is {got}, expected {ds[i]}")
    return RecoveryReport(sigma, cs, True, dmax, trace)


def main_theorem_roundtrip(sigma: PolyEndo, dmax: int, cap: int,
                           method: str = "proof") -> Tuple[bool, RecoveryReport]:
    """Conjugate the partials by ``sigma``, recover ``tau`` from the images alone,
    and check that ``tau^-1 sigma`` is a shift."""
    n = sigma.nvars
    invert_bounded(sigma, dmax)
    ds = [conjugate_derivation(sigma, Derivation.partial(n, i)) for i in range(1, n + 1)]
    report = recover_automorphism(ds, dmax, cap, method)
    rho = compose(invert_bounded(report.sigma, dmax), sigma)
    ok, lam = is_shift(rho)
    report.trace.append({"stage": "roundtrip", "shift": None if lam is None else [str(c) for c in lam]})
    return ok, report


def retry_doubling(fn: Callable[[int], T], dmax: int, retries: int = 2) -> Tuple[T, int]:
    """Call ``fn(dmax)``, doubling ``dmax`` after each ``DegreeBoundExceeded``.

    Returns the result and the bound that succeeded.
    """
    for attempt in range(retries + 1):
        try:
            return fn(dmax), dmax
        except DegreeBoundExceeded:
            if attempt == retries:
                raise
            dmax *= 2
    raise AssertionError("unreachable")
