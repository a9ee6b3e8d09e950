"""Polynomial endomorphisms of Q[x1, ..., xn] and their action on derivations.

An endomorphism ``sigma`` is given by its images ``sigma(x_i)``.  Composition
follows operator order: ``compose(s, t)(p) == s(t(p))``.  The conjugation
``sigma d sigma^-1`` is computed from the inverse Jacobian matrix, which is
polynomial whenever the Jacobian determinant is a nonzero constant.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DegreeBoundExceeded, NotInvertibleError
from .liederiv import Derivation
from .polyalg import Monomial, Polynomial, mul_truncated, partial_derivative, substitute

PolyMatrix = List[List[Polynomial]]


@dataclass(frozen=True)
class PolyEndo:
    """Algebra endomorphism ``x_i -> images[i-1]``."""

    images: Tuple[Polynomial, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if not images:
            raise ValueError("an endomorphism needs at least one image")
        n = len(images)
        if any(p.nvars != n for p in images):
            raise ValueError("all images must be polynomials in nvars variables")
        object.__setattr__(self, "images", images)

    @property
    def nvars(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "PolyEndo":
        return cls(tuple(Polynomial.var(n, i) for i in range(1, n + 1)))

    @classmethod
    def shift(cls, lam: Sequence) -> "PolyEndo":
        n = len(lam)
        return cls(tuple(Polynomial.var(n, i) + Fraction(c) for i, c in enumerate(lam, start=1)))

    def degree(self) -> int:
        return max(p.degree() for p in self.images)

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply_endo(self, p)

    def __str__(self) -> str:
        return "; ".join(f"x{i} -> {p}" for i, p in enumerate(self.images, start=1))


def apply_endo(sigma: PolyEndo, p: Polynomial) -> Polynomial:
    if p.nvars != sigma.nvars:
        raise ValueError(f"arity mismatch: endomorphism of {sigma.nvars} variables, polynomial in {p.nvars}")
    return substitute(p, sigma.images)


def compose(sigma: PolyEndo, tau: PolyEndo) -> PolyEndo:
    """``sigma o tau`` as algebra maps, i.e. ``p -> sigma(tau(p))``."""
    if sigma.nvars != tau.nvars:
        raise ValueError(f"arity mismatch: {sigma.nvars} vs {tau.nvars}")
    return PolyEndo(tuple(apply_endo(sigma, t) for t in tau.images))


def is_identity(sigma: PolyEndo) -> bool:
    return sigma == PolyEndo.identity(sigma.nvars)


# ---------------------------------------------------------------------------
# Jacobians

def jacobian(sigma: PolyEndo) -> PolyMatrix:
    """``J[i][j] = d sigma(x_j) / d x_i``; column j is the gradient of the j-th image."""
    n = sigma.nvars
    return [[partial_derivative(sigma.images[j], i + 1) for j in range(n)] for i in range(n)]


def determinant(M: PolyMatrix) -> Polynomial:
    """Cofactor expansion along the first row."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    if n == 1:
        return M[0][0]
    nv = M[0][0].nvars
    total = Polynomial.zero(nv)
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * determinant(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def adjugate(M: PolyMatrix) -> PolyMatrix:
    n = len(M)
    nv = M[0][0].nvars
    if n == 1:
        return [[Polynomial.one(nv)]]
    adj = [[Polynomial.zero(nv)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(M) if k != i]
            c = determinant(minor)
            adj[j][i] = c if (i + j) % 2 == 0 else -c
    return adj


def matmul(A: PolyMatrix, B: PolyMatrix) -> PolyMatrix:
    n, m, k = len(A), len(B[0]), len(B)
    nv = A[0][0].nvars
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = Polynomial.zero(nv)
            for t in range(k):
                if A[i][t] and B[t][j]:
                    s = s + A[i][t] * B[t][j]
            row.append(s)
        out.append(row)
    return out


def jacobian_det(sigma: PolyEndo) -> Polynomial:
    return determinant(jacobian(sigma))


def unit_jacobian(sigma: PolyEndo) -> Optional[Fraction]:
    """The Jacobian determinant when it is a nonzero constant, else None."""
    det = jacobian_det(sigma)
    if det.is_constant() and det:
        return det.constant_term()
    return None


def inverse_jacobian(sigma: PolyEndo) -> PolyMatrix:
    """``J(sigma)^-1 = adj(J) / det J``; requires ``det J`` to be a nonzero constant."""
    J = jacobian(sigma)
    det = determinant(J)
    if not (det.is_constant() and det):
        raise NotInvertibleError(f"not invertible: Jacobian determinant {det} is not a nonzero constant")
    c = det.constant_term()
    return [[e / c for e in row] for row in adjugate(J)]


# ---------------------------------------------------------------------------
# inversion

def normalize_by_shift(sigma: PolyEndo) -> Tuple[PolyEndo, Tuple[Fraction, ...]]:
    """Split ``sigma = compose(sigma0, shift(lam))`` with ``sigma0`` free of constant terms."""
    lam = tuple(p.constant_term() for p in sigma.images)
    return PolyEndo(tuple(p - c for p, c in zip(sigma.images, lam))), lam


def invert_bounded(sigma: PolyEndo, dmax: int) -> PolyEndo:
    """Exact inverse of ``sigma`` provided its images have degree <= ``dmax``.

    Unknown images ``t_j`` of the inverse satisfy ``t_j(sigma) = x_j``, which
    is linear in the coefficients of ``t_j``.  After removing the constant
    part of ``sigma`` the system is block lower triangular by degree, and the
    degree-k block is solved by substituting the inverse of the linear part.
    Rows above ``dmax`` are dropped while solving; the candidate is then
    checked by exact composition in both orders.
    """
    n = sigma.nvars
    if unit_jacobian(sigma) is None:
        raise NotInvertibleError(
            f"not invertible: Jacobian determinant {jacobian_det(sigma)} is not a nonzero constant")
    sigma0, lam = normalize_by_shift(sigma)
    identity = PolyEndo.identity(n)

    # linear part L: sigma0_j = sum_i L[i][j] x_i + higher
    lin = [[sigma0.images[j].coeff(_unit(n, i)) for j in range(n)] for i in range(n)]
    lin_inv = _rational_inverse(lin)
    # y_j = sum_i L[i][j] x_i  =>  x_i = sum_j Linv[j][i] y_j
    lin_inv_images = [Polynomial(n, {_unit(n, j): lin_inv[j][i] for j in range(n)}) for i in range(n)]

    powers: Dict[Monomial, Polynomial] = {(0,) * n: Polynomial.one(n)}

    def power(alpha: Monomial) -> Polynomial:
        # sigma0^alpha truncated at dmax
        if alpha not in powers:
            k = max(i for i, a in enumerate(alpha) if a)
            prev = alpha[:k] + (alpha[k] - 1,) + alpha[k + 1:]
            powers[alpha] = mul_truncated(power(prev), sigma0.images[k], dmax)
        return powers[alpha]

    ts = []
    for j in range(n):
        target = Polynomial.var(n, j + 1)
        t: Dict[Monomial, Fraction] = {}
        for k in range(1, dmax + 1):
            resid = target.homogeneous_part(k)
            for alpha, c in t.items():
                part = power(alpha).homogeneous_part(k)
                if part:
                    resid = resid - part.scale(c)
            if resid:
                t.update(substitute(resid, lin_inv_images).terms)
        ts.append(Polynomial(n, t))

    tau0 = PolyEndo(tuple(ts))
    if compose(tau0, sigma0) != identity or compose(sigma0, tau0) != identity:
        raise DegreeBoundExceeded(f"degree bound exceeded: no inverse of degree <= {dmax}", dmax)
    # sigma = sigma0 o shift(lam)  =>  sigma^-1 = shift(-lam) o tau0
    if any(lam):
        back = PolyEndo.shift(tuple(-c for c in lam))
        return compose(back, tau0)
    return tau0


def _unit(n: int, i: int) -> Monomial:
    return tuple(1 if k == i else 0 for k in range(n))


def _rational_inverse(A: List[List[Fraction]]) -> List[List[Fraction]]:
    n = len(A)
    M = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            raise NotInvertibleError("not invertible: linear part is singular")
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [v / piv for v in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [row[n:] for row in M]


# ---------------------------------------------------------------------------
# action on derivations

def conjugate_derivation(sigma: PolyEndo, d: Derivation, dmax: Optional[int] = None) -> Derivation:
    """``sigma d sigma^-1`` without computing ``sigma^-1``.

    With ``d = sum_i a_i d_i`` the result is ``sum_i sigma(a_i) d_i'`` where the
    primed partials are the rows of ``J(sigma)^-1`` applied to ``(d_1..d_n)``.
    ``dmax`` is accepted for interface symmetry and unused: only a constant
    Jacobian determinant is required.
    """
    if d.nvars != sigma.nvars:
        raise ValueError(f"arity mismatch: {sigma.nvars} vs {d.nvars}")
    n = sigma.nvars
    Jinv = inverse_jacobian(sigma)
    out = [Polynomial.zero(n) for _ in range(n)]
    for i, a in enumerate(d.coeffs):
        if not a:
            continue
        sa = apply_endo(sigma, a)
        for j in range(n):
            if Jinv[i][j]:
                out[j] = out[j] + sa * Jinv[i][j]
    return Derivation(out)


def is_shift(sigma: PolyEndo) -> Tuple[bool, Optional[Tuple[Fraction, ...]]]:
    """``(True, lam)`` iff every image is ``x_i + lam_i``."""
    n = sigma.nvars
    lam = []
    for i, p in enumerate(sigma.images, start=1):
        c = p.constant_term()
        if p - c != Polynomial.var(n, i):
            return False, None
        lam.append(c)
    return True, tuple(lam)


def fixes_partials(sigma: PolyEndo) -> bool:
    """True iff ``J(sigma)`` is the identity matrix."""
    n = sigma.nvars
    J = jacobian(sigma)
    return all(J[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))


def fixes_euler_frame(sigma: PolyEndo, dmax: Optional[int] = None) -> bool:
    """True iff conjugation by ``sigma`` fixes every ``d_i`` and every ``x_i d_i``."""
    n = sigma.nvars
    for i in range(1, n + 1):
        for d in (Derivation.partial(n, i), Derivation.euler(n, i)):
            if conjugate_derivation(sigma, d, dmax) != d:
                return False
    return True


def push_matrix(sigma: PolyEndo, M: PolyMatrix) -> PolyMatrix:
    return [[apply_endo(sigma, e) for e in row] for row in M]
