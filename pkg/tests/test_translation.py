import numpy as np
import pytest
from hypothesis import given, strategies as st

from fockdigits.errors import (GuardViolation, InvalidDigit, OutOfRange, QuadratureUnderResolved,
                               ShiftOutOfRange, SlotOutOfRange)
from fockdigits.fock_core import RegisterSpec, encode_digits
from fockdigits.operator_engine import PureState, apply, materialize
from fockdigits.translation import (T_dagger, T_operator, T_summands, adjoint_matches_transpose,
                                    check_commutator, commutator_classification, delta_projector_eigenvalue,
                                    delta_quadrature, shift_T0_power, shift_all_ops, single_summand_witness,
                                    slot_lower, slot_operator, slot_raise, t_dagger, t_operator,
                                    unitarity_region)

B2Q3 = RegisterSpec(2, 3)


def ket(spec, n, amp=1.0):
    return PureState.basis(spec.dim, n, amp)


@pytest.mark.parametrize("g,b,expected", [(0, 2, None), (1, 2, 0), (9, 10, 8)])
def test_slot_lower(g, b, expected):
    out = slot_lower(g, b)
    assert out == (PureState.zero(b) if expected is None else PureState.basis(b, expected))


@pytest.mark.parametrize("g,b,expected", [(1, 2, None), (9, 10, None), (0, 2, 1), (3, 10, 4)])
def test_slot_raise(g, b, expected):
    out = slot_raise(g, b)
    assert out == (PureState.zero(b) if expected is None else PureState.basis(b, expected))


@pytest.mark.parametrize("b", range(2, 17))
def test_slot_algebra(b):
    S, Sd = slot_operator(b, "lower"), slot_operator(b, "raise")
    for g in range(b):
        psi = PureState.basis(b, g)
        if g >= 1:
            assert apply(Sd, apply(S, psi)) == psi
        else:
            assert apply(S, psi).is_zero()
        if g <= b - 2:
            assert apply(S, apply(Sd, psi)) == psi
        else:
            assert apply(Sd, psi).is_zero()
    assert np.array_equal(materialize(S), materialize(Sd).T)


def test_slot_bad_digit():
    with pytest.raises(InvalidDigit):
        slot_lower(2, 2)
    with pytest.raises(InvalidDigit):
        slot_raise(-1, 3)


def test_delta_examples():
    assert delta_projector_eigenvalue(9, 9) == 1
    assert delta_projector_eigenvalue(3, 9) == 0
    assert delta_projector_eigenvalue(0, 1) == 0
    assert abs(delta_quadrature(0, 1, 8)) < 1e-12
    assert abs(delta_quadrature(3, 9, 40)) < 1e-12
    assert abs(delta_quadrature(9, 9) - 1) < 1e-12


@pytest.mark.parametrize("b", range(2, 17))
def test_delta_quadrature_matches_kronecker(b):
    x = b - 1
    for g in range(b):
        assert abs(delta_quadrature(g, x, 4 * b) - (g == x)) < 1e-12


def test_delta_quadrature_under_resolved():
    with pytest.raises(QuadratureUnderResolved):
        delta_quadrature(0, 9, 9)
    # with M = x the offset x - 0 aliases onto zero frequency
    with pytest.raises(QuadratureUnderResolved):
        delta_quadrature(0, 5, 5)


def test_t_examples():
    assert apply(t_operator(0, B2Q3), ket(B2Q3, 4)).is_zero()
    assert apply(t_operator(1, B2Q3), ket(B2Q3, 7)) == ket(B2Q3, 5)
    assert apply(t_dagger(0, B2Q3), ket(B2Q3, 3)).is_zero()
    with pytest.raises(SlotOutOfRange):
        t_operator(3, B2Q3)


@pytest.mark.parametrize("b,q", [(2, 3), (3, 2), (4, 2), (10, 2)])
def test_t_action_contract(b, q):
    spec = RegisterSpec(b, q)
    for l in range(q):
        t, td = t_operator(l, spec), t_dagger(l, spec)
        for n in range(spec.dim):
            g = encode_digits(n, spec)[l]
            assert t.column(n) == (PureState.zero(spec.dim) if g == 0 else ket(spec, n - b**l))
            assert td.column(n) == (PureState.zero(spec.dim) if g == b - 1 else ket(spec, n + b**l))


def test_T_examples():
    for route in ("borrow", "sum"):
        assert apply(T_operator(0, B2Q3, route), ket(B2Q3, 4)) == ket(B2Q3, 3)
        assert apply(T_operator(2, B2Q3, route), ket(B2Q3, 3)).is_zero()
        assert apply(T_dagger(0, B2Q3, route), ket(B2Q3, 7)).is_zero()


def test_T0_matrix_is_shift():
    M = materialize(T_operator(0, B2Q3, "sum"))
    assert np.array_equal(M, np.eye(8, k=1))


@pytest.mark.parametrize("b,q", [(2, 3), (3, 3), (5, 2), (4, 3)])
def test_T_routes_agree(b, q):
    spec = RegisterSpec(b, q)
    for m in range(q):
        lit, bor = T_operator(m, spec, "sum"), T_operator(m, spec, "borrow")
        assert np.array_equal(materialize(lit), materialize(bor))
        assert np.array_equal(materialize(lit.adjoint()), materialize(bor.adjoint()))
        assert adjoint_matches_transpose(m, spec, "sum")
        n = np.arange(spec.dim)
        down = np.zeros((spec.dim, spec.dim))
        ok = n >= b**m
        down[n[ok] - b**m, n[ok]] = 1
        assert np.array_equal(materialize(bor), down)


def test_summand_count():
    assert len(T_summands(0, B2Q3)) == 3
    assert len(T_summands(2, B2Q3)) == 1


@pytest.mark.parametrize("m,n,k,end", [(0, 1, None, 0), (0, 4, 1, 2), (1, 4, 1, 2), (0, 2, 0, 1)])
def test_witness_examples(m, n, k, end):
    w = single_summand_witness(m, n, B2Q3)
    assert (w.k, w.end_slot) == (k, end)
    assert w.direct == (k is None)


def test_witness_requires_n_at_least_step():
    with pytest.raises(OutOfRange):
        single_summand_witness(2, 3, B2Q3)


@pytest.mark.parametrize("n,w,direction,expected", [(5, 3, "subtract", 2), (2, 5, "add", 7), (6, 0, "add", 6)])
def test_shift_examples(n, w, direction, expected):
    assert shift_all_ops(n, w, B2Q3, direction) == expected
    assert shift_T0_power(n, w, B2Q3, direction) == expected
    assert shift_all_ops(n, w, B2Q3, direction, "sum") == expected


def test_shift_out_of_range():
    with pytest.raises(ShiftOutOfRange):
        shift_all_ops(2, 3, B2Q3, "subtract")
    with pytest.raises(ShiftOutOfRange):
        shift_T0_power(6, 2, B2Q3, "add")


@given(st.sampled_from([(2, 4), (3, 3), (7, 2), (10, 3)]), st.data())
def test_shift_routes(bq, data):
    spec = RegisterSpec(*bq)
    N = spec.capacity
    n = data.draw(st.integers(0, N))
    w = data.draw(st.integers(0, n))
    assert shift_all_ops(n, w, spec, "subtract") == shift_T0_power(n, w, spec, "subtract") == n - w
    w = data.draw(st.integers(0, N - n))
    assert shift_all_ops(n, w, spec, "add") == shift_T0_power(n, w, spec, "add") == n + w


@pytest.mark.parametrize("m,b,q,lv,unitary,rv", [
    (0, 2, 3, (0, 0), (1, 6), (7, 7)),
    (2, 2, 3, (0, 3), None, (4, 7)),
    (0, 3, 2, (0, 0), (1, 7), (8, 8)),
])
def test_region_examples(m, b, q, lv, unitary, rv):
    region = unitarity_region(m, RegisterSpec(b, q))
    assert (region.lv, region.unitary, region.rv) == (lv, unitary, rv)


@given(st.integers(2, 10), st.integers(1, 5), st.data())
def test_region_partition(b, q, data):
    m = data.draw(st.integers(0, q - 1))
    region = unitarity_region(m, RegisterSpec(b, q))
    parts = [region.lv, region.unitary, region.rv]
    covered = [n for p in parts if p for n in range(p[0], p[1] + 1)]
    assert sorted(covered) == list(range(b**q))
    assert (region.unitary is None) == (b == 2 and m == q - 1)


@pytest.mark.parametrize("b,q", [(2, 3), (3, 2), (2, 1), (3, 3)])
def test_commutator_trichotomy(b, q):
    spec = RegisterSpec(b, q)
    for m in range(q):
        region = unitarity_region(m, spec)
        values = commutator_classification(m, spec)
        assert values == {n: region.expected(n) for n in range(spec.dim)}
        assert check_commutator(m, spec, "sum")[1]


def test_region_json():
    region, ok = check_commutator(2, B2Q3)
    assert region.to_json(ok) == {"m": 2, "base": 2, "slots": 3, "LV": [0, 3], "unitary": None,
                                  "RV": [4, 7], "commutator_ok": True}


def test_infinite_register_has_no_right_vacuum():
    spec = RegisterSpec.infinite_for(200, 3)
    for m in range(3):
        region, ok = check_commutator(m, spec)
        assert ok and region.rv is None
        Td = T_dagger(m, spec)
        for n in range(spec.usable_max - 3**m + 1):
            assert apply(Td, ket(spec, n)) == ket(spec, n + 3**m)


def test_infinite_register_guard_violation():
    spec = RegisterSpec.infinite_for(8, 3)  # 2 slots + 2 guard, usable up to 8
    for route in ("borrow", "sum"):
        with pytest.raises(GuardViolation):
            apply(T_dagger(0, spec, route), ket(spec, 8))
        assert apply(T_dagger(0, spec, route), ket(spec, 7)) == ket(spec, 8)
    with pytest.raises(GuardViolation):
        shift_all_ops(5, 4, spec, "add")


@given(st.sampled_from([2, 3, 10]), st.data())
def test_finite_and_infinite_agree(b, data):
    fin = RegisterSpec(b, 4)
    inf = RegisterSpec(b, 6, 2)
    n = data.draw(st.integers(0, fin.capacity))
    m = data.draw(st.integers(0, 3))
    T_f, T_i = T_operator(m, fin), T_operator(m, inf, "sum")
    lhs, rhs = apply(T_f, ket(fin, n)), apply(T_i, ket(inf, n))
    assert [i for i, _ in lhs.items()] == [i for i, _ in rhs.items()]
    if n + b**m <= fin.capacity:
        assert apply(T_f.adjoint(), ket(fin, n)).single() == apply(T_i.adjoint(), ket(inf, n)).single()
