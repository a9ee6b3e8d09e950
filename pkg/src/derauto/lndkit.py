"""Locally nilpotent derivations: nilpotency, bounded kernels and slices.

Local nilpotency is only semi-decidable; every routine here takes an
explicit cap and reports exceeding it instead of guessing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

from .errors import CapExceeded, NonConstantTerminal, SeedInKernel
from .liederiv import Derivation, apply
from .polyalg import Echelon, Polynomial, grlex_key, monomials_up_to, solve_columns, sparse_nullspace


@dataclass(frozen=True)
class SliceCertificate:
    """Witness that ``d(slice) == 1``: ``d^steps(witness) == constant`` and ``slice = d^(steps-1)(witness) / constant``."""

    slice: Polynomial
    witness: Polynomial
    steps: int
    constant: Fraction

    def check(self, d: Derivation) -> bool:
        q = self.witness
        for _ in range(self.steps):
            q = apply(d, q)
        return (q == self.constant and not apply(d, q)
                and apply(d, self.slice) == 1)


@dataclass
class KernelBasis:
    degree_bound: int
    basis: List[Polynomial] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_trivial(self) -> bool:
        """True when the kernel is just the constants."""
        return self.dim == 1 and self.basis[0].is_constant()


def nilpotency_index(d: Derivation, p: Polynomial, cap: int) -> Optional[int]:
    """Least ``k`` with ``d^k(p) == 0``, or None when ``k > cap``."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    q = p
    for k in range(cap + 1):
        if q.is_zero():
            return k
        if k < cap:
            q = apply(d, q)
    return None


def is_lnd_bounded(d: Derivation, cap: int) -> bool:
    """Generator test: ``d`` is nilpotent on every ``x_i`` within ``cap`` steps.

    Nilpotent elements form a subalgebra (Leibniz), so this certifies local
    nilpotency on the whole ring; False only means "not within cap".
    """
    n = d.nvars
    return all(nilpotency_index(d, Polynomial.var(n, i), cap) is not None for i in range(1, n + 1))


def _kernel_in_span(ds: Sequence[Derivation], space: Sequence[Polynomial]) -> List[Polynomial]:
    """Basis of ``{p in span(space) : d p = 0 for all d in ds}``."""
    columns = []
    for b in space:
        col = {}
        for idx, d in enumerate(ds):
            for a, c in apply(d, b).terms.items():
                col[(idx, a)] = c
        columns.append(col)
    out = []
    for v in sparse_nullspace(columns):
        p = Polynomial.zero(space[0].nvars)
        for j, c in v.items():
            p = p + space[j].scale(c)
        out.append(p)
    return _normalize(out)


def _normalize(polys: Iterable[Polynomial]) -> List[Polynomial]:
    """Reduced echelon basis of the span, ordered so that constants come first."""
    ech = Echelon(p.terms for p in polys if p)
    rows = ech.reduced_rows()
    n = next((len(k) for k in rows), 1)
    out = []
    for piv in sorted(rows, key=grlex_key):
        r = rows[piv]
        out.append(Polynomial(n, {k: Fraction(v, r[piv]) for k, v in r.items()}))
    return out


def monomial_space(n: int, d: int) -> List[Polynomial]:
    return [Polynomial.monomial(a) for a in monomials_up_to(n, d)]


def kernel_basis_bounded(d: Derivation, dmax: int) -> KernelBasis:
    """Exact basis of ``{p : deg p <= dmax, d p = 0}``."""
    return KernelBasis(dmax, _kernel_in_span([d], monomial_space(d.nvars, dmax)))


def common_kernel_bounded(ds: Sequence[Derivation], dmax: int) -> KernelBasis:
    if not ds:
        raise ValueError("need at least one derivation")
    n = ds[0].nvars
    if any(d.nvars != n for d in ds):
        raise ValueError("derivations must share nvars")
    return KernelBasis(dmax, _kernel_in_span(list(ds), monomial_space(n, dmax)))


def kernel_in_subspace(ds: Sequence[Derivation], space: Sequence[Polynomial], dmax: int) -> KernelBasis:
    """Common kernel of ``ds`` restricted to a given subspace of polynomials."""
    return KernelBasis(dmax, _kernel_in_span(list(ds), list(space)))


def default_seeds(n: int, dmax: int) -> List[Polynomial]:
    """Generators ``x_1..x_n`` then the remaining non-constant monomials in grlex order."""
    gens = [Polynomial.var(n, i) for i in range(1, n + 1)]
    rest = [Polynomial.monomial(a) for a in monomials_up_to(n, dmax) if sum(a) >= 2]
    return gens + rest


def local_slice(d: Derivation, seed: Polynomial, cap: int) -> SliceCertificate:
    """Follow ``seed, d(seed), d^2(seed), ...`` to the last nonzero term.

    That term must be a nonzero constant ``c``; the slice is then the term
    before it divided by ``c``.
    """
    first = apply(d, seed)
    if first.is_zero():
        raise SeedInKernel(f"seed in kernel: d({seed}) = 0")
    chain = [seed, first]
    while True:
        nxt = apply(d, chain[-1])
        if nxt.is_zero():
            break
        if len(chain) > cap:
            raise CapExceeded(f"cap exceeded: d^k(seed) nonzero for k <= {cap}", cap)
        chain.append(nxt)
    terminal = chain[-1]
    k = len(chain) - 1
    if not terminal.is_constant():
        raise NonConstantTerminal(
            f"terminal kernel element not constant: d^{k}(seed) = {terminal}", terminal)
    c = terminal.constant_term()
    return SliceCertificate(chain[-2] / c, seed, k, c)


def find_slice(d: Derivation, cap: int, seeds: Sequence[Polynomial]) -> SliceCertificate:
    """First successful :func:`local_slice` over ``seeds``; re-raises the last failure."""
    last: Exception = SeedInKernel("no seeds given")
    for s in seeds:
        try:
            return local_slice(d, s, cap)
        except (SeedInKernel, NonConstantTerminal, CapExceeded) as exc:
            last = exc
    raise last


def slice_by_solving(d: Derivation, space: Sequence[Polynomial]) -> Optional[Polynomial]:
    """Some ``x`` in ``span(space)`` with ``d x == 1``, found by one linear solve."""
    n = d.nvars
    columns = [apply(d, b).terms for b in space]
    sol = solve_columns(columns, {(0,) * n: Fraction(1)})
    if sol is None:
        return None
    x = Polynomial.zero(n)
    for c, b in zip(sol, space):
        if c:
            x = x + b.scale(c)
    return x


def slice_decomposition_holds(d: Derivation, slice_: Polynomial, dmax: int, cap: int) -> bool:
    """Check that every polynomial of degree <= dmax lies in ``ker(d)[slice]``.

    The kernel is computed at ``dmax + (coefficient degree of d) * cap`` so the
    products ``b * slice^m`` reaching down to degree ``dmax`` are not cut off.
    """
    n = d.nvars
    work = dmax + max(d.degree(), 0) * cap
    kernel = kernel_basis_bounded(d, work).basis
    span = Echelon()
    power = Polynomial.one(n)
    for _m in range(work + 1):
        for b in kernel:
            prod = b * power
            if prod.degree() <= work:
                span.add(prod.terms)
        power = power * slice_
        if power.degree() > work:
            break
    return all(Polynomial.monomial(a).terms in span for a in monomials_up_to(n, dmax))
