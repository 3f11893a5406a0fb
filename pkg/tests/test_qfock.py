"""Coefficient-model Fock space: Fischer pairing, reproducing kernel,
ladder and phase-space operators, commutator and adjointness."""
import math

import numpy as np
import pytest

import oracles
from qcore import DomainError, QContext, q_factorial, q_number
from qcomplex import BivarPoly, dz, zq_monomial
from qfock import (
    CommutatorReport,
    FockElement,
    adjoint_check,
    annihilation_apply,
    basis_element,
    commutator_check,
    creation_apply,
    derivative_apply,
    fischer_inner,
    kernel_element,
    kernel_eval,
    momentum_apply,
    oscillator_adjoint_gap,
    position_apply,
)


def test_norm_of_ones_vector(ctx05):
    f = FockElement((1.0, 1.0), ctx05)
    assert f.norm_sq() == pytest.approx(2.0, abs=1e-15)


def test_basis_orthogonality_exact(ctx05):
    basis = [basis_element(n, ctx05, 11) for n in range(11)]
    for n, en in enumerate(basis):
        for m, em in enumerate(basis):
            want = q_factorial(n, ctx05) if n == m else 0.0
            assert fischer_inner(en, em) == want


def test_positivity_on_random_elements(ctx05, rng):
    for _ in range(100):
        coeffs = rng.normal(size=9) + 1j * rng.normal(size=9)
        assert FockElement(tuple(coeffs), ctx05).norm_sq() > 0.0


def test_eval_agrees_with_monomial_values(ctx05, rng):
    coeffs = tuple(rng.normal(size=7) + 1j * rng.normal(size=7))
    f = FockElement(coeffs, ctx05)
    for _ in range(5):
        z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        want = sum(c * oracles.zq_product_value(z, n, 0.5) for n, c in enumerate(coeffs))
        assert f.eval(z) == pytest.approx(want, rel=1e-13)


def test_kernel_at_zero_arguments(ctx05):
    assert kernel_eval(0.3 + 0.1j, 0.0, ctx05).value == 1.0 + 0j
    assert kernel_eval(0.0, 0.4j, ctx05).value == 1.0 + 0j


def test_kernel_rejects_outside_domain(ctx05):
    with pytest.raises(DomainError):
        kernel_eval(0.1, 2.5, ctx05)  # |w| beyond 1/(1-q) = 2
    with pytest.raises(DomainError):
        kernel_eval(3.0, 1.0, ctx05)  # |z w| beyond the series radius


def test_kernel_truncation_reports_tail(ctx05):
    ev = kernel_eval(0.8 + 0.5j, 0.9 - 0.7j, ctx05)
    assert ev.truncation > 5
    assert ev.tail_bound < 1e-11 * abs(ev.value)


def test_kernel_hermitian_symmetry(ctx05, rng):
    for _ in range(6):
        z = complex(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9))
        w = complex(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9))
        assert kernel_eval(z, w, ctx05).value == pytest.approx(
            kernel_eval(w, z, ctx05).value.conjugate(), rel=1e-13
        )


def test_kernel_series_matches_direct_sum(ctx05):
    z, w = 0.6 + 0.2j, -0.4 + 0.5j
    direct = sum(
        oracles.zq_product_value(z, n, 0.5)
        * oracles.zq_product_value(w, n, 0.5).conjugate()
        / q_factorial(n, ctx05)
        for n in range(60)
    )
    assert kernel_eval(z, w, ctx05).value == pytest.approx(direct, rel=1e-12)


def test_reproducing_property(ctx05, rng):
    for _ in range(10):
        f = FockElement(tuple(rng.normal(size=9) + 1j * rng.normal(size=9)), ctx05)
        w = complex(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9))
        kw = kernel_element(w, ctx05, 9)
        assert fischer_inner(f, kw) == pytest.approx(f.eval(w), abs=1e-8 * (1 + abs(f.eval(w))))


def test_position_shifts_index_up(ctx05):
    up = position_apply(basis_element(0, ctx05))
    assert up.coeffs == (0 + 0j, 1 + 0j)


def test_position_matches_polynomial_model(ctx05, rng):
    q = ctx05.q
    zfac = BivarPoly({(1, 0): 1.0, (0, 1): 1j})
    for n in range(11):
        zn = zq_monomial(n, ctx05)
        dilated = BivarPoly({(a, b): c * q**b for (a, b), c in zn.items()}, clean=False)
        xpoly = zfac * dilated
        xelem = position_apply(basis_element(n, ctx05))
        for _ in range(4):
            x, y = rng.uniform(-1, 1, 2)
            assert xelem.eval(complex(x, y)) == pytest.approx(xpoly(x, y), abs=1e-12)


def test_momentum_matches_polynomial_model(ctx05, rng):
    for n in range(1, 11):
        ppoly = -1j * dz(zq_monomial(n, ctx05), ctx05)
        pelem = momentum_apply(basis_element(n, ctx05))
        for _ in range(4):
            x, y = rng.uniform(-1, 1, 2)
            assert pelem.eval(complex(x, y)) == pytest.approx(ppoly(x, y), abs=1e-12)


def test_momentum_on_first_mode(ctx05):
    out = momentum_apply(basis_element(1, ctx05))
    assert out.coeffs[0] == pytest.approx(-1j, abs=1e-15)
    assert all(abs(c) == 0.0 for c in out.coeffs[1:])


def test_ladder_operators_compose_to_commutator(ctx05):
    e2 = basis_element(2, ctx05, 6)
    down_up = annihilation_apply(creation_apply(e2))
    up_down = creation_apply(annihilation_apply(e2))
    diff = np.array(down_up.coeffs) - np.array(up_down.coeffs)
    assert diff[2] == pytest.approx(0.25, abs=1e-14)


@pytest.mark.parametrize(
    "n,q,want",
    [(0, 0.5, 1.0), (3, 0.5, 0.125), (10, 0.9, 0.9**10)],
)
def test_commutator_eigenvalue(n, q, want):
    rep = commutator_check(n, QContext(q=q))
    assert isinstance(rep, CommutatorReport)
    assert rep.factor == pytest.approx(want, abs=1e-12)
    assert rep.route_gap < 1e-12
    assert rep.stray < 1e-12


def test_commutator_full_ladder(ctx05):
    for n in range(21):
        rep = commutator_check(n, ctx05)
        assert abs(rep.factor - 0.5**n) < 1e-12


def test_adjoint_pair_hand_case(ctx05):
    R = basis_element(1, ctx05, 3)
    Q = basis_element(0, ctx05, 3)
    lhs = fischer_inner(derivative_apply(R), Q)
    rhs = fischer_inner(R, position_apply(Q))
    assert lhs == 1.0
    assert rhs == 1.0
    assert adjoint_check(R, Q) == 0.0


def test_adjoint_on_constants_is_trivial(ctx05):
    R = basis_element(0, ctx05, 2)
    assert fischer_inner(derivative_apply(R), R) == 0.0
    assert adjoint_check(R, R) == 0.0


def test_adjoint_random_pairs(ctx05, rng):
    for _ in range(20):
        R = FockElement(tuple(rng.normal(size=11) + 1j * rng.normal(size=11)), ctx05)
        Q = FockElement(tuple(rng.normal(size=11) + 1j * rng.normal(size=11)), ctx05)
        assert adjoint_check(R, Q) < 1e-10


def test_adjoint_random_pairs_scale_aware(ctx09, rng):
    for _ in range(10):
        R = FockElement(tuple(rng.normal(size=11) + 1j * rng.normal(size=11)), ctx09)
        Q = FockElement(tuple(rng.normal(size=11) + 1j * rng.normal(size=11)), ctx09)
        scale = abs(fischer_inner(derivative_apply(R), Q))
        assert adjoint_check(R, Q) < 1e-12 * (1 + scale)


def test_oscillator_pair_is_not_adjoint(ctx05):
    gap = oscillator_adjoint_gap(ctx05)
    assert gap > 1e-3
    assert gap == pytest.approx(math.sqrt(2.0), rel=1e-14)


def test_kernel_classical_limit(rng):
    ctx = QContext(q=0.999)
    for _ in range(15):
        z = complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5))
        w = complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5))
        assert abs(kernel_eval(z, w, ctx).value - np.exp(z * w.conjugate())) < 1e-3
