"""The Lie algebra of derivations of Q[x1, ..., xn].

A derivation ``sum_i a_i d_i`` is stored as its coefficient tuple.  Besides
the module action and the bracket this module provides the Z^n-grading
(``x^alpha d_i`` has weight ``alpha - e_i``) and bounded-degree linear
algebra: centralizers, ideal closures and orbits in ``P_n / Q``.  The
bounded computations only ever see derivations whose coefficients have
degree <= a stated cap.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Mapping, Sequence, Tuple

from .polyalg import (
    Echelon,
    Monomial,
    Polynomial,
    Scalar,
    monomials_up_to,
    partial_derivative,
    sparse_nullspace,
)

DerKey = Tuple[int, Monomial]  # (component index 0-based, exponent) for x^alpha d_{i+1}


class Derivation:
    """``sum_i coeffs[i] * d_{i+1}`` acting on polynomials in ``nvars`` variables."""

    __slots__ = ("nvars", "coeffs", "_hash")

    def __init__(self, coeffs: Sequence[Polynomial]):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("a derivation needs at least one coefficient")
        n = len(coeffs)
        if any(c.nvars != n for c in coeffs):
            raise ValueError("each coefficient must live in as many variables as there are partials")
        self.nvars = n
        self.coeffs = coeffs
        self._hash = None

    @classmethod
    def zero(cls, n: int) -> "Derivation":
        return cls([Polynomial.zero(n)] * n)

    @classmethod
    def partial(cls, n: int, i: int) -> "Derivation":
        """The partial derivative ``d_i`` (1-based)."""
        if not 1 <= i <= n:
            raise IndexError(f"partial index {i} out of range 1..{n}")
        return cls([Polynomial.one(n) if k == i - 1 else Polynomial.zero(n) for k in range(n)])

    @classmethod
    def euler(cls, n: int, i: int) -> "Derivation":
        """``H_i = x_i d_i``."""
        return Polynomial.var(n, i) * cls.partial(n, i)

    @classmethod
    def basis_element(cls, alpha: Sequence[int], i: int, c=1) -> "Derivation":
        """``c * x^alpha d_i`` (``i`` 1-based)."""
        n = len(alpha)
        mono = Polynomial.monomial(alpha, c)
        return cls([mono if k == i - 1 else Polynomial.zero(n) for k in range(n)])

    @classmethod
    def from_vector(cls, n: int, vec: Mapping[DerKey, Fraction]) -> "Derivation":
        parts: List[Dict[Monomial, Fraction]] = [{} for _ in range(n)]
        for (k, alpha), c in vec.items():
            parts[k][alpha] = c
        return cls([Polynomial(n, t) for t in parts])

    def vector(self) -> Dict[DerKey, Fraction]:
        return {(k, a): c for k, p in enumerate(self.coeffs) for a, c in p.terms.items()}

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def degree(self) -> int:
        """Largest coefficient degree; -1 for zero."""
        return max(c.degree() for c in self.coeffs)

    def truncate(self, d: int) -> "Derivation":
        return Derivation([c.truncate(d) for c in self.coeffs])

    def _check(self, other: "Derivation") -> None:
        if other.nvars != self.nvars:
            raise ValueError(f"arity mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        self._check(other)
        return Derivation([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        self._check(other)
        return Derivation([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "Derivation":
        return Derivation([-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (Polynomial,) + Scalar):
            return Derivation([a * other for a in self.coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply(self, p)

    def __str__(self) -> str:
        from .parsing import format_derivation

        return format_derivation(self)

    def __repr__(self) -> str:
        return f"Derivation({str(self)!r})"


def apply(d: Derivation, p: Polynomial) -> Polynomial:
    """``d * p = sum_i a_i dp/dx_i``."""
    if p.nvars != d.nvars:
        raise ValueError(f"arity mismatch: derivation on {d.nvars} variables, polynomial in {p.nvars}")
    out = Polynomial.zero(p.nvars)
    for i, a in enumerate(d.coeffs, start=1):
        if a:
            dp = partial_derivative(p, i)
            if dp:
                out = out + a * dp
    return out


def bracket(d: Derivation, e: Derivation) -> Derivation:
    """Commutator ``de - ed``; coefficient j is ``d(e_j) - e(d_j)``."""
    d._check(e)
    return Derivation([apply(d, b) - apply(e, a) for a, b in zip(d.coeffs, e.coeffs)])


# ---------------------------------------------------------------------------
# grading

def weight(alpha: Sequence[int], i: int) -> Tuple[int, ...]:
    """Weight of ``x^alpha d_i`` (``i`` 1-based)."""
    return tuple(a - (1 if k == i - 1 else 0) for k, a in enumerate(alpha))


def graded_decompose(d: Derivation) -> Dict[Tuple[int, ...], Derivation]:
    n = d.nvars
    parts: Dict[Tuple[int, ...], Dict[DerKey, Fraction]] = {}
    for (k, alpha), c in d.vector().items():
        parts.setdefault(weight(alpha, k + 1), {})[(k, alpha)] = c
    return {w: Derivation.from_vector(n, v) for w, v in sorted(parts.items())}


def is_homogeneous(d: Derivation) -> bool:
    return len(graded_decompose(d)) <= 1


@dataclass(frozen=True)
class GradedComponent:
    weight: Tuple[int, ...]
    basis: Tuple[Derivation, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def graded_component(n: int, beta: Sequence[int], dmax: int | None = None) -> GradedComponent:
    """Basis ``{x^alpha d_i : alpha - e_i = beta}`` of the weight-``beta`` component.

    Every nonzero component consists of coefficients of degree ``|beta| + 1``;
    ``dmax`` (if given) must be at least that.
    """
    beta = tuple(beta)
    if len(beta) != n:
        raise ValueError("weight length must equal n")
    if dmax is not None and sum(beta) + 1 > dmax:
        raise ValueError(f"weight {beta} needs coefficient degree {sum(beta) + 1} > dmax={dmax}")
    basis = []
    for i in range(1, n + 1):
        alpha = tuple(b + (1 if k == i - 1 else 0) for k, b in enumerate(beta))
        if min(alpha) >= 0:
            basis.append(Derivation.basis_element(alpha, i))
    return GradedComponent(beta, tuple(basis))


def expected_component_dim(n: int, beta: Sequence[int]) -> int:
    """Dimension predicted by the support formula: n on N^n, 1 on N^{n,i} - e_i, else 0."""
    if min(beta) >= 0:
        return n
    negative = [k for k, b in enumerate(beta) if b < 0]
    if len(negative) == 1 and beta[negative[0]] == -1:
        return 1
    return 0


def derivation_basis(n: int, d: int) -> List[Derivation]:
    """All ``x^alpha d_i`` with ``|alpha| <= d``, ordered by (degree, i, grlex)."""
    out = []
    for alpha in monomials_up_to(n, d):
        for i in range(1, n + 1):
            out.append(Derivation.basis_element(alpha, i))
    return out


# ---------------------------------------------------------------------------
# bounded subspaces

@dataclass
class DerivationSubspace:
    """Span of ``basis``, all of whose coefficients have degree <= ``degree_bound``."""

    degree_bound: int
    basis: List[Derivation] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, d: Derivation) -> bool:
        if d.degree() > self.degree_bound:
            return False
        ech = Echelon(b.vector() for b in self.basis)
        return d.vector() in ech

    def spans_same(self, others: Iterable[Derivation]) -> bool:
        others = list(others)
        ech = Echelon(b.vector() for b in self.basis)
        if any(o.vector() not in ech for o in others):
            return False
        return Echelon(o.vector() for o in others).rank == ech.rank


def full_dimension(n: int, d: int) -> int:
    return n * len(monomials_up_to(n, d))


def centralizer_bounded(S: Sequence[Derivation], d: int, n: int | None = None) -> DerivationSubspace:
    """``{e : deg e <= d, [e, s] = 0 for all s in S}`` via one nullspace computation."""
    if n is None:
        if not S:
            raise ValueError("cannot infer n from an empty set")
        n = S[0].nvars
    if any(s.nvars != n for s in S):
        raise ValueError("all derivations must share nvars")
    basis = derivation_basis(n, d)
    keys = [next(iter(b.vector())) for b in basis]
    columns = []
    for b in basis:
        col: Dict[Hashable, Fraction] = {}
        for idx, s in enumerate(S):
            for key, c in bracket(b, s).vector().items():
                col[(idx, key)] = c
        columns.append(col)
    null = sparse_nullspace(columns)
    result = [Derivation.from_vector(n, {keys[j]: c for j, c in v.items()}) for v in null]
    return DerivationSubspace(d, result)


def _closure(seed_vecs, step, full_dim) -> Echelon:
    ech = Echelon()
    queue = []
    for v in seed_vecs:
        if ech.add(v):
            queue.append(v)
    while queue and ech.rank < full_dim:
        v = queue.pop()
        for w in step(v):
            if ech.add(w):
                queue.append(w)
                if ech.rank == full_dim:
                    break
    return ech


def _echelon_basis(ech: Echelon) -> List[Dict]:
    rows = ech.reduced_rows()
    return [{k: Fraction(v, r[p]) for k, v in r.items()} for p, r in sorted(rows.items())]


def ideal_closure_bounded(a: Derivation, d: int) -> DerivationSubspace:
    """Truncated ideal generated by ``a``.

    The span of ``a`` is closed under ``ad(x^gamma d_k)`` for ``|gamma| <= d + 1``;
    products of degree > d are discarded.  Iterates to a fixed point (or stops
    once the whole degree-<= d space is reached).
    """
    if a.is_zero():
        raise ValueError("ideal closure of the zero derivation")
    if a.degree() > d:
        raise ValueError(f"input has degree {a.degree()} > {d}")
    n = a.nvars
    gens = derivation_basis(n, d + 1)

    def step(v):
        e = Derivation.from_vector(n, v)
        for g in gens:
            w = bracket(g, e).truncate(d)
            if w:
                yield w.vector()

    ech = _closure([a.vector()], step, full_dimension(n, d))
    return DerivationSubspace(d, [Derivation.from_vector(n, v) for v in _echelon_basis(ech)])


def module_orbit_bounded(p: Polynomial, d: int) -> List[Polynomial]:
    """Basis (constant terms dropped) of the truncated submodule of ``P_n / Q`` generated by ``p``.

    Closes under ``x^gamma d_k`` for ``|gamma| <= d + 1`` and truncates to
    degree <= d.
    """
    if p.is_constant():
        raise ValueError("module orbit of a constant is zero in P_n / Q")
    if p.degree() > d:
        raise ValueError(f"input has degree {p.degree()} > {d}")
    n = p.nvars
    gens = derivation_basis(n, d + 1)
    zero = (0,) * n

    def strip(q: Polynomial) -> Dict[Monomial, Fraction]:
        return {a: c for a, c in q.terms.items() if a != zero and sum(a) <= d}

    def step(v):
        q = Polynomial(n, v)
        for g in gens:
            w = strip(apply(g, q))
            if w:
                yield w

    full = len(monomials_up_to(n, d)) - 1
    ech = _closure([strip(p)], step, full)
    return [Polynomial(n, v) for v in _echelon_basis(ech)]
