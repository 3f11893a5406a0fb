"""Plane picture: q-analytic monomials, complex q-derivatives, the
z/zbar expansion, complex Hermite polynomials, Gaussian inner products,
dilation grids, elliptic variables."""
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from qcore import QContext, q_number
from qcomplex import (
    BivarPoly,
    EllipticVariable,
    ZBarBasisPoly,
    complex_hermite,
    dz,
    dzbar,
    gaussian_inner,
    hermite_combine,
    hermite_expand,
    mixed_basis_gram,
    modulus_domination_check,
    qgrid_generate,
    zq_conjugate_monomial,
    zq_expansion_coeffs,
    zq_monomial,
    zq_point_values,
)


def test_monomial_base_cases(ctx05):
    z0 = zq_monomial(0, ctx05)
    assert z0.terms == {(0, 0): 1.0 + 0j}
    z1 = zq_monomial(1, ctx05)
    assert z1.terms[(1, 0)] == 1.0
    assert z1.terms[(0, 1)] == 1j


def test_monomial_matches_subset_enumeration(ctx05):
    # every coefficient is a subset sum of q-powers times a power of i
    for n in range(9):
        ref = oracles.zq_subset_coeffs(n, Fraction(1, 2))
        poly = zq_monomial(n, ctx05)
        assert set(poly.terms) == set(ref)
        for key, (re, im) in ref.items():
            want = complex(float(re), float(im))
            assert poly.terms[key] == pytest.approx(want, abs=1e-15)


def test_monomial_point_value_frozen(ctx05):
    assert zq_point_values(1 + 1j, 2, ctx05)[2] == pytest.approx(0.5 + 1.5j, abs=1e-15)


def test_monomial_polynomial_equals_running_product(rng):
    ctx = QContext(q=0.7)
    poly = zq_monomial(5, ctx)
    for _ in range(10):
        x, y = rng.uniform(-2, 2, size=2)
        want = oracles.zq_product_value(complex(x, y), 5, 0.7)
        assert poly(x, y) == pytest.approx(want, rel=1e-12)
        assert zq_point_values(complex(x, y), 5, ctx)[5] == pytest.approx(want, rel=1e-12)


def test_conjugate_monomial_is_coefficientwise_conjugate(ctx05, rng):
    c1 = zq_conjugate_monomial(1, ctx05)
    assert c1.terms[(1, 0)] == 1.0
    assert c1.terms[(0, 1)] == -1j
    c4 = zq_conjugate_monomial(4, ctx05)
    z4 = zq_monomial(4, ctx05)
    for x, y in [(1.0, -1.0), *[tuple(rng.uniform(-2, 2, 2)) for _ in range(5)]]:
        assert c4(x, y) == pytest.approx(z4(x, y).conjugate(), rel=1e-13)


def test_dz_annihilates_constants(ctx05):
    assert dz(BivarPoly.one(), ctx05).max_abs() == 0.0


@pytest.mark.parametrize("q", (0.3, 0.5, 0.9))
def test_derivatives_act_on_monomial_ladder(q):
    ctx = QContext(q=q)
    for n in range(1, 13):
        zn = zq_monomial(n, ctx)
        assert dzbar(zn, ctx).max_abs() <= 1e-13 * zn.max_abs()
        got = dz(zn, ctx)
        ref = q_number(n, ctx) * zq_monomial(n - 1, ctx)
        assert (got - ref).max_abs() <= 1e-13 * ref.max_abs()


def test_dz_linearity_exact(ctx05, rng):
    def rand_poly():
        return BivarPoly(
            {
                (a, b): complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
                for a in range(5)
                for b in range(5 - a)
            },
            clean=False,
        )

    f, g = rand_poly(), rand_poly()
    alpha = 0.7 - 0.2j
    lhs = dz(alpha * f + g, ctx05)
    rhs = alpha * dz(f, ctx05) + dz(g, ctx05)
    assert (lhs - rhs).max_abs() < 1e-13


@settings(max_examples=20, deadline=None)
@given(
    q=st.sampled_from((0.3, 0.5, 0.9)),
    seed=st.integers(min_value=0, max_value=2**31),
)
def test_bivar_zbar_round_trip(q, seed):
    ctx = QContext(q=q)
    gen = np.random.default_rng(seed)
    poly = BivarPoly(
        {
            (a, b): complex(gen.uniform(-1, 1), gen.uniform(-1, 1))
            for a in range(11)
            for b in range(11 - a)
        },
        clean=False,
    )
    back = ZBarBasisPoly.from_bivar(poly).to_bivar()
    assert (back - poly).max_abs() <= 1e-12 * poly.max_abs()


def test_expansion_first_layer_weights(ctx05):
    layer = zq_expansion_coeffs(1, ctx05)
    assert layer.terms[(1, 0)] == pytest.approx(0.75, abs=1e-15)
    assert layer.terms[(0, 1)] == pytest.approx(0.25, abs=1e-15)


def test_expansion_coefficients_sum_to_one(ctx05):
    for n in range(1, 16):
        total = sum(c for _, c in zq_expansion_coeffs(n, ctx05).items())
        assert total == pytest.approx(1.0, abs=1e-13)


def test_expansion_rebuilds_monomial_at_points(rng):
    ctx = QContext(q=0.3)
    for n in range(1, 13):
        layer = zq_expansion_coeffs(n, ctx)
        for _ in range(4):
            z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            direct = zq_point_values(z, n + 1, ctx)[n + 1]
            assert z * layer(z) == pytest.approx(direct, abs=1e-12 * (1 + abs(direct)))


def test_modulus_domination(ctx05, rng):
    rep = modulus_domination_check(2, [(0.0, 1.0)], ctx05)
    assert rep.ok
    assert rep.worst_ratio == pytest.approx(0.5, abs=1e-15)
    samples = [tuple(rng.uniform(-3, 3, 2)) for _ in range(1000)]
    for n in range(1, 11):
        assert modulus_domination_check(n, samples, ctx05).ok


def test_complex_hermite_small_cases():
    assert complex_hermite(0, 0).terms == {(0, 0): 1}
    h11 = complex_hermite(1, 1)
    assert h11.terms == {(1, 1): 1, (0, 0): -1}


def test_complex_hermite_matches_explicit_sum():
    for p in range(6):
        for r in range(6):
            ref = oracles.complex_hermite_coeffs(p, r)
            got = complex_hermite(p, r)
            assert {k: complex(v) for k, v in got.terms.items()} == {
                k: complex(v) for k, v in ref.items()
            }


def test_gaussian_inner_moment_rule():
    z = ZBarBasisPoly({(1, 0): 1})
    assert gaussian_inner(z, z) == pytest.approx(math.pi, rel=1e-15)
    h11 = complex_hermite(1, 1)
    assert gaussian_inner(h11, h11) == pytest.approx(math.pi, rel=1e-15)


def test_gaussian_inner_matches_pairing_oracle(rng):
    for _ in range(5):
        keys = [(int(a), int(b)) for a, b in rng.integers(0, 5, size=(3, 2))]
        f = ZBarBasisPoly({k: complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for k in keys})
        g = ZBarBasisPoly({k: complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for k in keys})
        want = oracles.gaussian_pairing(dict(f.items()), dict(g.items()))
        assert gaussian_inner(f, g) == pytest.approx(want, rel=1e-12, abs=1e-12)


def test_complex_hermite_orthogonality_exact():
    fams = {(p, r): complex_hermite(p, r) for p in range(5) for r in range(5)}
    for (p, r), left in fams.items():
        for (m, n), right in fams.items():
            got = gaussian_inner(left, right)
            want = math.pi * (math.factorial(p) * math.factorial(r)) if (p, r) == (m, n) else 0.0
            assert got == want


def test_hermite_expand_round_trip(ctx05):
    for p in range(7):
        for r in range(7 - p):
            mono = ZBarBasisPoly({(p, r): 1.0})
            back = hermite_combine(hermite_expand(mono))
            assert (back - mono).max_abs() < 1e-10


def test_hermite_expand_of_hermite_is_unit():
    coeffs = hermite_expand(complex_hermite(2, 3))
    assert coeffs.pop((2, 3)) == pytest.approx(1.0, abs=1e-14)
    assert all(abs(c) < 1e-14 for c in coeffs.values())


def test_mixed_gram_degree_one_is_scaled_identity(ctx05):
    rep = mixed_basis_gram(1, ctx05)
    assert rep.labels == ["k=0,h=0", "k=1,h=0", "k=0,h=1"]
    assert np.allclose(rep.matrix, math.pi * np.eye(3), atol=1e-14)


def test_mixed_gram_full_rank(ctx05):
    rep = mixed_basis_gram(4, ctx05)
    assert rep.matrix.shape == (15, 15)
    assert rep.rank == 15
    assert rep.min_eig > 0.0


def test_mixed_gram_classical_limit():
    """Entrywise approach to the undeformed monomial Gram at q near 1.

    The classical pairing of z^k zbar^h against z^m zbar^n under the
    plane Gaussian is pi (k+n)! when k+n = h+m and zero otherwise; at
    q = 0.999 the deformed Gram should sit within 1e-2 of it, measured
    against the largest classical entry.
    """
    rep = mixed_basis_gram(3, QContext(q=0.999))
    pairs = [tuple(int(s.split("=")[1]) for s in lab.split(",")) for lab in rep.labels]
    classical = np.empty(rep.matrix.shape, dtype=complex)
    for a, (k, h) in enumerate(pairs):
        for b, (m, n) in enumerate(pairs):
            classical[a, b] = oracles.gaussian_pairing({(k, h): 1}, {(m, n): 1})
    scale = np.abs(classical).max()
    assert np.abs(rep.matrix - classical).max() < 1e-2 * scale


def test_grid_depth_zero_is_seed(ctx05):
    grid = qgrid_generate([(2.0, 3.0)], 0, ctx05)
    assert tuple(grid.points) == ((2.0, 3.0),)


def test_grid_depth_one_hand_enumeration(ctx05):
    grid = qgrid_generate([(1.0, 1.0)], 1, ctx05)
    assert set(grid.points) == {(1.0, 1.0), (0.5, 1.0), (1.0, 2.0), (0.5, 2.0)}
    assert grid.count_before_dedup == 4


def test_grid_figure_configuration_count():
    seeds = [(x, y) for y in (1.2, 1.0, 0.8) for x in (9.8, 10.0, 10.2)]
    grid = qgrid_generate(seeds, 6, QContext(q=0.6))
    assert grid.count_before_dedup == len(seeds) * 49
    assert len(grid.points) == 441


def test_grid_duplicate_seeds_collapse(ctx05):
    grid = qgrid_generate([(1.0, 1.0), (1.0, 1.0)], 1, ctx05)
    assert grid.count_before_dedup == 8
    assert len(grid.points) == 4


def test_grid_closure_under_both_dilations(ctx05):
    grid = qgrid_generate([(4.0, 4.0)], 3, ctx05)
    pts = set(grid.points)
    for b1 in range(3):
        for b2 in range(3):
            assert (4.0 * 0.5**b1, 4.0 * 2.0**b2) in pts


def test_elliptic_variable_modulus_and_polar():
    ev = EllipticVariable(p=2.0, x=3.0, y=4.0)
    assert ev.modulus == pytest.approx(math.hypot(3.0, 8.0), rel=1e-15)
    r, phi = ev.polar()
    assert r == pytest.approx(ev.modulus)
    assert r * math.cos(phi) == pytest.approx(3.0, rel=1e-12)
    assert r * math.sin(phi) == pytest.approx(8.0, rel=1e-12)
    plain = EllipticVariable(p=1.0, x=1.0, y=1.0)
    assert plain.modulus == pytest.approx(math.sqrt(2.0), rel=1e-15)
