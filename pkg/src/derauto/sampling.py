"""Random test objects: sparse polynomials, derivations and tame automorphisms."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, Optional, Sequence

from .endomorph import PolyEndo, compose
from .liederiv import Derivation
from .polyalg import Monomial, Polynomial


def _random_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    while True:
        c = Fraction(rng.randint(-3, 3), rng.choice((1, 1, 1, 2, 3)))
        if c or not nonzero:
            return c


def random_polynomial(rng: random.Random, n: int, degree: int, terms: int = 3,
                      allowed_vars: Optional[Sequence[int]] = None, constant: bool = True) -> Polynomial:
    """A sparse random polynomial with small rational coefficients.

    ``allowed_vars`` holds 0-based indices of variables that may occur.
    """
    allowed = list(range(n)) if allowed_vars is None else list(allowed_vars)
    out: Dict[Monomial, Fraction] = {}
    for _ in range(terms):
        k = rng.randint(0 if constant else 1, degree)
        alpha = [0] * n
        if allowed:
            for _ in range(k):
                alpha[rng.choice(allowed)] += 1
        elif k:
            continue
        out[tuple(alpha)] = out.get(tuple(alpha), 0) + _random_rational(rng, nonzero=True)
    return Polynomial(n, out)


def random_elementary(rng: random.Random, n: int, degree: int = 3) -> PolyEndo:
    """One of: triangular ``x_i -> x_i + f(other vars)``, a permutation, a scaling."""
    kind = rng.choices(("triangular", "permutation", "scaling"), weights=(3, 1, 1))[0]
    xs = [Polynomial.var(n, i) for i in range(1, n + 1)]
    if kind == "triangular":
        i = rng.randrange(n)
        others = [k for k in range(n) if k != i]
        f = random_polynomial(rng, n, degree, terms=rng.randint(1, 3), allowed_vars=others)
        xs[i] = xs[i] + f
    elif kind == "permutation":
        perm = list(range(n))
        rng.shuffle(perm)
        xs = [xs[p] for p in perm]
    else:
        xs = [x * _random_rational(rng, nonzero=True) if rng.random() < 0.6 else x for x in xs]
    return PolyEndo(tuple(xs))


def random_tame(rng: random.Random, n: int, max_factors: int = 4, degree: int = 3,
                max_total_degree: Optional[int] = 3) -> PolyEndo:
    """Composition of at most ``max_factors`` random elementary maps.

    Each factor has degree <= ``degree``.  A factor that would push the
    composite above ``max_total_degree`` is redrawn (and dropped after a few
    attempts), which keeps inverses small enough to certify.
    """
    sigma = PolyEndo.identity(n)
    for _ in range(rng.randint(1, max_factors)):
        for _attempt in range(6):
            cand = compose(sigma, random_elementary(rng, n, degree))
            if max_total_degree is None or cand.degree() <= max_total_degree:
                sigma = cand
                break
    return sigma


def random_derivation(rng: random.Random, n: int, degree: int, terms: int = 3) -> Derivation:
    """Random derivation; coefficients have degree <= ``degree``."""
    return Derivation([random_polynomial(rng, n, degree, terms=rng.randint(0, terms)) for _ in range(n)])


def random_nonzero_derivation(rng: random.Random, n: int, degree: int, terms: int = 3) -> Derivation:
    while True:
        d = random_derivation(rng, n, degree, terms)
        if d:
            return d


def random_nonconstant(rng: random.Random, n: int, degree: int, terms: int = 3) -> Polynomial:
    while True:
        p = random_polynomial(rng, n, degree, terms)
        if not p.is_constant():
            return p


def random_shift(rng: random.Random, n: int) -> PolyEndo:
    return PolyEndo.shift([_random_rational(rng) for _ in range(n)])
