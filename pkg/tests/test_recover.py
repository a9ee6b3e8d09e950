import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import H, d, endo, tame_maps, x
from derauto.endomorph import PolyEndo, compose, conjugate_derivation, invert_bounded, is_identity, is_shift
from derauto.errors import CommonKernelTooLarge, DegreeBoundExceeded, NotCommutingError, NotLNDError
from derauto.liederiv import apply
from derauto.parsing import parse_endo
from derauto.recover import (
    construct_coordinates,
    main_theorem_roundtrip,
    recover_automorphism,
    retry_doubling,
)
from derauto.sampling import random_tame

x1, x2 = x(2, 1), x(2, 2)


def conjugates(s):
    n = s.nvars
    return [conjugate_derivation(s, d(n, i)) for i in range(1, n + 1)]


def test_coordinates_examples():
    cs = construct_coordinates([d(2, 1), d(2, 2)], 6, 32)
    assert cs.coords == (x1, x2)
    assert cs.lam == [[1, 0], [0, 1]]
    cs = construct_coordinates([d(2, 1), -2 * x2 * d(2, 1) + d(2, 2)], 6, 32)
    assert cs.coords == (x1 + x2 ** 2, x2)
    cs = construct_coordinates([d(2, 1) + d(2, 2), d(2, 2)], 6, 32)
    assert cs.coords == (x1, x2 - x1)
    assert cs.relation_holds()


def test_recover_examples():
    rep = recover_automorphism([d(2, 1), -2 * x2 * d(2, 1) + d(2, 2)], 6, 32)
    assert rep.sigma == endo(x1 + x2 ** 2, x2)
    assert rep.shift_normalized and rep.degree_bound_used == 6
    for n in (1, 2, 3):
        assert is_identity(recover_automorphism([d(n, i) for i in range(1, n + 1)], 4, 32).sigma)
    rep = recover_automorphism([d(1, 1) * 2], 4, 32)
    assert rep.sigma == endo(x(1, 1) * Fraction(1, 2))


def test_roundtrip_examples():
    ok, rep = main_theorem_roundtrip(PolyEndo.identity(2), 4, 32)
    assert ok and is_identity(rep.sigma)
    ok, rep = main_theorem_roundtrip(endo(x1 + x2 ** 2, x2), 6, 32)
    assert ok and rep.trace[-1] == {"stage": "roundtrip", "shift": ["0", "0"]}


def test_roundtrip_with_shift_reports_it():
    s = endo(x1 + x2 ** 2 + 3, x2 - 1)
    ok, rep = main_theorem_roundtrip(s, 6, 32)
    assert ok and rep.trace[-1]["shift"] == ["3", "-1"]


def test_roundtrip_three_elementary_factors():
    rng = random.Random(11)
    for _ in range(5):
        s = random_tame(rng, 3, max_factors=3, degree=2)
        ok, _ = main_theorem_roundtrip(s, 8, 32)
        assert ok


def test_negative_controls():
    with pytest.raises(CommonKernelTooLarge) as info:
        recover_automorphism([d(2, 1), d(2, 1)], 4, 32)
    assert x2 in info.value.basis
    with pytest.raises(NotCommutingError) as info:
        recover_automorphism([d(2, 1), x1 * d(2, 2)], 4, 32)
    assert info.value.pair == (1, 2)
    with pytest.raises(NotLNDError) as info:
        recover_automorphism([H(2, 1), d(2, 2)], 4, 32)
    assert info.value.index == 1


def test_wrong_number_of_derivations():
    with pytest.raises(ValueError):
        recover_automorphism([d(2, 1)], 4, 32)


def test_trace_records_branches():
    s = parse_endo("x1 -> x1 + x2^2 + x3; x2 -> x2 + x3^2", 3)
    rep = recover_automorphism(conjugates(s), 8, 32)
    branches = [t["branch"] for t in rep.trace]
    assert branches == ["maximal", "maximal", "base"]
    assert all(t["m"] == len(t["labels"]) - 1 for t in rep.trace[:-1])


def test_truncation_triggers_correction_then_retry_succeeds():
    # every coordinate has degree 4, but x2 - x3 already lies in ker D1
    s = parse_endo("x1 -> x1 + (x2 - x3)^4; x2 -> x2 + x1^4; x3 -> x3 + x1^4", 3)
    ds = conjugates(s)
    trace = []
    with pytest.raises(DegreeBoundExceeded):
        construct_coordinates(ds, 3, 32, trace=trace)
    assert trace[0]["branch"] == "corrected" and trace[0]["lambdas"] == {2: "-1"}
    # the inverse has degree 16, which verification must reach
    rep, used = retry_doubling(lambda m: recover_automorphism(ds, m, 32), 4)
    assert used == 16
    assert is_shift(compose(invert_bounded(rep.sigma, used), s))[0]


def test_retry_doubling_gives_up():
    calls = []

    def fn(m):
        calls.append(m)
        raise DegreeBoundExceeded("too small", m)

    with pytest.raises(DegreeBoundExceeded):
        retry_doubling(fn, 2, retries=2)
    assert calls == [2, 4, 8]


@given(tame_maps(n=3))
def test_frame_identity(s):
    ds = conjugates(s)
    rep = recover_automorphism(ds, 8, 32)
    assert conjugates(rep.sigma) == ds
    assert all(p.constant_term() == 0 for p in rep.sigma.images)
    assert rep.coords.relation_holds()


@given(tame_maps(n=3))
def test_unique_up_to_shift(s):
    ds = conjugates(s)
    a = recover_automorphism(ds, 8, 32, seed_order="forward").sigma
    b = recover_automorphism(ds, 8, 32, seed_order="reverse").sigma
    c = recover_automorphism(ds, 8, 32, method="direct").sigma
    assert is_shift(compose(invert_bounded(a, 8), b))[0]
    assert is_shift(compose(invert_bounded(a, 8), c))[0]


@settings(max_examples=40)
@given(tame_maps(n=2))
def test_roundtrip_property(s):
    ok, rep = main_theorem_roundtrip(s, 8, 32)
    assert ok
    for i, e in enumerate(rep.coords.duals):
        assert apply(e, rep.sigma.images[i]) == 1


def test_roundtrip_higher_degree():
    rng = random.Random(5)
    for _ in range(4):
        s = random_tame(rng, 2, max_total_degree=9)
        (ok, _), _ = retry_doubling(lambda m: main_theorem_roundtrip(s, m, 32), max(8, s.degree()))
        assert ok
