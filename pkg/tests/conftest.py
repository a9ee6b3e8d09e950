import random
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from derauto.endomorph import PolyEndo
from derauto.liederiv import Derivation
from derauto.polyalg import Polynomial
from derauto.sampling import random_tame

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polynomials(draw, n=2, max_degree=3, max_terms=4):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        alpha = tuple(draw(st.lists(st.integers(0, max_degree), min_size=n, max_size=n)))
        if sum(alpha) > max_degree:
            continue
        terms[alpha] = draw(rationals)
    return Polynomial(n, terms)


@st.composite
def derivations(draw, n=2, max_degree=3, max_terms=3):
    return Derivation([draw(polynomials(n, max_degree, max_terms)) for _ in range(n)])


@st.composite
def tame_maps(draw, n=2, max_total_degree=3):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_tame(random.Random(seed), n, max_total_degree=max_total_degree)


def P(n, terms):
    """Shorthand: P(2, {(1, 0): 1, (0, 2): -1}) is x1 - x2^2."""
    return Polynomial(n, {tuple(a): Fraction(c) for a, c in terms.items()})


def x(n, i):
    return Polynomial.var(n, i)


def d(n, i):
    return Derivation.partial(n, i)


def H(n, i):
    return Derivation.euler(n, i)


def endo(*images):
    return PolyEndo(tuple(images))
