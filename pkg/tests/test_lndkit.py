import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import H, d, rationals, tame_maps, x
from derauto.endomorph import PolyEndo, apply_endo, conjugate_derivation
from derauto.errors import CapExceeded, NonConstantTerminal, SeedInKernel
from derauto.liederiv import apply, bracket
from derauto.lndkit import (
    common_kernel_bounded,
    default_seeds,
    find_slice,
    is_lnd_bounded,
    kernel_basis_bounded,
    local_slice,
    nilpotency_index,
    slice_by_solving,
    slice_decomposition_holds,
)
from derauto.polyalg import Echelon, Polynomial
from derauto.sampling import random_tame

x1, x2 = x(2, 1), x(2, 2)


def test_nilpotency_index_examples():
    assert nilpotency_index(d(1, 1), x(1, 1) ** 3, 10) == 4
    assert nilpotency_index(x1 * d(2, 2), x2, 10) == 2
    assert nilpotency_index(H(1, 1), x(1, 1), 10) is None
    assert nilpotency_index(d(1, 1), Polynomial.zero(1), 10) == 0


def test_is_lnd_examples():
    e = d(2, 1) + x1 * d(2, 2)
    assert [nilpotency_index(e, v, 10) for v in (x1, x2)] == [2, 3]
    assert is_lnd_bounded(e, 32)
    assert not is_lnd_bounded(H(1, 1), 32)
    assert not is_lnd_bounded(x2 * d(2, 1) - x1 * d(2, 2), 32)


def _span_equal(a, b):
    ea, eb = Echelon(p.terms for p in a), Echelon(p.terms for p in b)
    return ea.rank == eb.rank == len(a) == len(b) and all(p.terms in ea for p in b)


def test_kernel_examples():
    k = kernel_basis_bounded(d(2, 1), 2)
    assert k.basis == [Polynomial.one(2), x2, x2 ** 2]
    k = kernel_basis_bounded(d(2, 1) + x1 * d(2, 2), 2)
    assert _span_equal(k.basis, [Polynomial.one(2), x2 - x1 ** 2 / 2])
    assert kernel_basis_bounded(d(1, 1), 3).basis == [Polynomial.one(1)]


def test_common_kernel_examples():
    assert common_kernel_bounded([d(2, 1), d(2, 2)], 4).is_trivial()
    assert common_kernel_bounded([d(2, 1)], 2).basis == [Polynomial.one(2), x2, x2 ** 2]
    assert common_kernel_bounded([d(2, 1), -2 * x2 * d(2, 1) + d(2, 2)], 4).is_trivial()


def test_local_slice_examples():
    cert = local_slice(d(2, 1) + x1 * d(2, 2), x2, 32)
    assert (cert.steps, cert.constant, cert.slice) == (2, 1, x1)
    cert = local_slice(d(2, 1), x1, 32)
    assert (cert.steps, cert.constant, cert.slice) == (1, 1, x1)
    with pytest.raises(SeedInKernel):
        local_slice(d(2, 1), x2, 32)


def test_local_slice_obstructions():
    with pytest.raises(NonConstantTerminal) as info:
        local_slice(x2 * d(2, 1), x1, 32)
    assert info.value.terminal == x2
    with pytest.raises(CapExceeded):
        local_slice(d(1, 1), x(1, 1) ** 10, 3)


def test_default_seeds_order():
    seeds = default_seeds(2, 2)
    assert seeds == [x1, x2, x1 ** 2, x1 * x2, x2 ** 2]


def test_find_slice_skips_bad_seeds():
    cert = find_slice(d(2, 2), 32, default_seeds(2, 2))
    assert cert.slice == x2 and cert.witness == x2


def test_slice_by_solving():
    e = -2 * x2 * d(2, 1) + d(2, 2)
    y = slice_by_solving(e, kernel_basis_bounded(d(2, 1), 3).basis)
    assert y is not None and apply(e, y) == 1 and apply(d(2, 1), y).is_zero()


def test_slice_decomposition():
    assert slice_decomposition_holds(d(2, 1), x1, 3, 2)
    e = d(2, 1) + x1 * d(2, 2)
    assert slice_decomposition_holds(e, x1, 3, 3)
    # x2^3 needs (x2 - x1^2/2)^3 of degree 6: too little headroom hides it
    assert not slice_decomposition_holds(e, x1, 3, 2)


def test_kernel_dimension_of_partials():
    for n in (1, 2, 3):
        for deg in range(7):
            for i in range(1, n + 1):
                assert kernel_basis_bounded(d(n, i), deg).dim == comb(deg + n - 1, n - 1)


def test_kernel_conjugation_invariance_linear():
    s = PolyEndo((x1 + 2 * x2, x2 - x1))
    for i in (1, 2):
        k = kernel_basis_bounded(conjugate_derivation(s, d(2, i)), 3).basis
        image = [apply_endo(s, p) for p in kernel_basis_bounded(d(2, i), 3).basis]
        assert _span_equal(k, image)


@given(tame_maps(n=2))
def test_kernel_conjugation_containment(s):
    deg = s.degree()
    image = [apply_endo(s, p) for p in kernel_basis_bounded(d(2, 1), 2).basis]
    k = kernel_basis_bounded(conjugate_derivation(s, d(2, 1)), 2 * deg)
    ek = Echelon(p.terms for p in k.basis)
    assert all(p.terms in ek for p in image)


@given(tame_maps(n=3), rationals, rationals, rationals)
def test_lnd_linear_combinations(s, a, b, c):
    ds = [conjugate_derivation(s, d(3, i)) for i in (1, 2, 3)]
    assert all(bracket(p, q).is_zero() for p in ds for q in ds)
    combo = ds[0] * a + ds[1] * b + ds[2] * c
    assert is_lnd_bounded(combo, 32)


@given(st.integers(0, 10**6))
def test_slices_are_certified(seed):
    s = random_tame(random.Random(seed), 2)
    e = conjugate_derivation(s, d(2, 1))
    cert = find_slice(e, 32, default_seeds(2, 4))
    assert cert.check(e) and apply(e, cert.slice) == 1
