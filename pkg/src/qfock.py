"""Holomorphic-model state space on the Z_n basis with the Fischer pairing.

Elements are finite expansions f = sum_n a_n Z_n with

    <f, g> = sum_n [n]_q! a_n conj(b_n),

so the monomials satisfy <Z_n, Z_m> = delta_{nm} [n]_q!.  The reproducing
kernel of this pairing,

    K(z, w) = sum_n Z_n(z) conj(Z_n(w)) / [n]_q!,

converges for |z w| < 1/(1-q) and reduces to exp(z conj(w)) as q -> 1.

Operators act on coefficient sequences:

    X: a_n -> a_{n-1}          (multiplication-type shift, e_n -> e_{n+1})
    D: e_n -> [n]_q e_{n-1}    (lowering derivative; adjoint of X)
    P = -i D
    a   = (sqrt2/2)(X + iP):  e_n -> (sqrt2/2)(e_{n+1} + [n]_q e_{n-1})
    a^+ = (sqrt2/2)(X - iP):  e_n -> (sqrt2/2)(e_{n+1} - [n]_q e_{n-1})

with [a, a^+] e_n = q^n e_n (the e_{n+-2} contributions cancel exactly;
the same factor comes out of the [D, X] route).  The pair (a, a^+) is not
mutually adjoint under the Fischer pairing: the defect is sqrt(2) already
on (e_0, e_1), while <D f, g> = <f, X g> holds identically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from qcore import DomainError, QContext, q_factorial, q_number
from qcomplex import zq_point_values

__all__ = [
    "FockElement",
    "KernelEvaluation",
    "CommutatorReport",
    "basis_element",
    "fischer_inner",
    "kernel_eval",
    "kernel_element",
    "position_apply",
    "momentum_apply",
    "derivative_apply",
    "annihilation_apply",
    "creation_apply",
    "commutator_check",
    "adjoint_check",
    "oscillator_adjoint_gap",
]

_KERNEL_REL_TOL = 1e-12


@dataclass(frozen=True)
class FockElement:
    """Finite expansion over Z_0..Z_{len(coeffs)-1}."""

    coeffs: tuple
    ctx: QContext

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))
        if not self.coeffs:
            raise DomainError("element needs at least one coefficient")

    def norm_sq(self) -> float:
        return sum(
            q_factorial(n, self.ctx) * abs(c) ** 2 for n, c in enumerate(self.coeffs)
        )

    def eval(self, z: complex) -> complex:
        vals = zq_point_values(complex(z), len(self.coeffs) - 1, self.ctx)
        return complex(np.dot(np.asarray(self.coeffs), vals))

    def degree(self) -> int:
        d = len(self.coeffs) - 1
        while d > 0 and self.coeffs[d] == 0:
            d -= 1
        return d


def basis_element(n: int, ctx: QContext, size: int | None = None) -> FockElement:
    if n < 0:
        raise DomainError("basis index must be >= 0")
    m = n + 1 if size is None else size
    if m <= n:
        raise DomainError("size too small for requested basis index")
    coeffs = [0.0] * m
    coeffs[n] = 1.0
    return FockElement(tuple(coeffs), ctx)


def fischer_inner(f: FockElement, g: FockElement) -> complex:
    acc = 0.0 + 0j
    for n in range(min(len(f.coeffs), len(g.coeffs))):
        acc += q_factorial(n, f.ctx) * f.coeffs[n] * g.coeffs[n].conjugate()
    return acc


@dataclass(frozen=True)
class KernelEvaluation:
    z: complex
    w: complex
    truncation: int
    value: complex
    tail_bound: float


def kernel_eval(z: complex, w: complex, ctx: QContext) -> KernelEvaluation:
    """K(z, w) truncated once the modulus-domination bound goes negligible.

    Since |Z_n(z)| <= |z|^n, the term at index n is bounded by
    (|z||w|)^n / [n]_q!; summation stops when that bound falls below
    1e-12 of the running value and its geometric tail gives
    ``tail_bound``.  Raises DomainError when |w| or |z w| reaches the
    convergence radius 1/(1-q), where the bound ratios no longer drop
    below one.
    """
    z = complex(z)
    w = complex(w)
    q = ctx.q
    radius = 1.0 / (1.0 - q)
    if abs(w) >= radius:
        raise DomainError(
            f"kernel argument |w|={abs(w):.6g} outside the domain disc of radius {radius:.6g}"
        )
    if abs(z) * abs(w) >= radius:
        raise DomainError(
            f"kernel series needs |z w| < {radius:.6g}, got {abs(z) * abs(w):.6g}"
        )
    acc = 1.0 + 0j
    n = 0
    zn = 1.0 + 0j
    wn = 1.0 + 0j
    x, y = z.real, z.imag
    u, v = w.real, w.imag
    fact = 1.0
    zw = abs(z) * abs(w)
    bound = 1.0
    ratio = 1.0
    while n < ctx.series_max_terms:
        zn *= complex(x, q**n * y)
        wn *= complex(u, q**n * v)
        fact *= q_number(n + 1, ctx)
        n += 1
        acc += zn * wn.conjugate() / fact
        bound = zw**n / fact
        # ratio of successive bounds decreases toward zw(1-q) < 1
        ratio = zw / q_number(n + 1, ctx)
        if ratio < 1.0 and bound < _KERNEL_REL_TOL * abs(acc):
            break
    tail = bound * ratio / (1.0 - ratio) if ratio < 1.0 else math.inf
    return KernelEvaluation(z=z, w=w, truncation=n, value=acc, tail_bound=tail)


def kernel_element(w: complex, ctx: QContext, size: int) -> FockElement:
    """The kernel section K(., w) truncated to the first ``size`` coefficients.

    Pairing any element of degree < size against it evaluates the element
    at w exactly: <f, K(., w)> = f(w).
    """
    if size < 1:
        raise DomainError("size must be >= 1")
    if abs(complex(w)) >= 1.0 / (1.0 - ctx.q):
        raise DomainError("kernel argument outside the domain disc")
    vals = zq_point_values(complex(w), size - 1, ctx)
    coeffs = [vals[n].conjugate() / q_factorial(n, ctx) for n in range(size)]
    return FockElement(tuple(coeffs), ctx)


def position_apply(f: FockElement) -> FockElement:
    """X: shifts every basis index up by one."""
    return FockElement((0.0,) + f.coeffs, f.ctx)


def derivative_apply(f: FockElement) -> FockElement:
    """D: e_n -> [n]_q e_{n-1}."""
    if len(f.coeffs) == 1:
        return FockElement((0.0,), f.ctx)
    out = [q_number(n, f.ctx) * f.coeffs[n] for n in range(1, len(f.coeffs))]
    return FockElement(tuple(out), f.ctx)


def momentum_apply(f: FockElement) -> FockElement:
    """P = -i D."""
    d = derivative_apply(f)
    return FockElement(tuple(-1j * c for c in d.coeffs), f.ctx)


def _pad(coeffs: tuple, size: int) -> list:
    return list(coeffs) + [0.0 + 0j] * (size - len(coeffs))


def annihilation_apply(f: FockElement) -> FockElement:
    """a = (sqrt2/2)(X + iP): e_n -> (sqrt2/2)(e_{n+1} + [n]_q e_{n-1})."""
    s = math.sqrt(2.0) / 2.0
    up = _pad(position_apply(f).coeffs, len(f.coeffs) + 1)
    down = _pad(derivative_apply(f).coeffs, len(f.coeffs) + 1)
    return FockElement(tuple(s * (a + b) for a, b in zip(up, down)), f.ctx)


def creation_apply(f: FockElement) -> FockElement:
    """a^+ = (sqrt2/2)(X - iP): e_n -> (sqrt2/2)(e_{n+1} - [n]_q e_{n-1})."""
    s = math.sqrt(2.0) / 2.0
    up = _pad(position_apply(f).coeffs, len(f.coeffs) + 1)
    down = _pad(derivative_apply(f).coeffs, len(f.coeffs) + 1)
    return FockElement(tuple(s * (a - b) for a, b in zip(up, down)), f.ctx)


def _apply_diff(f: FockElement, first, second) -> FockElement:
    one = second(first(f))
    two = first(second(f))
    size = max(len(one.coeffs), len(two.coeffs))
    a = _pad(one.coeffs, size)
    b = _pad(two.coeffs, size)
    return FockElement(tuple(x - y for x, y in zip(a, b)), f.ctx)


@dataclass(frozen=True)
class CommutatorReport:
    """Diagonal action of [a, a^+] on e_n: factor should equal q^n exactly.

    ``route_gap`` compares the ladder route with [D, X]; ``stray`` is the
    largest leftover coefficient away from e_n (the e_{n+-2} contributions
    cancel identically, so it is 0.0).
    """

    n: int
    factor: float
    route_gap: float
    stray: float


def commutator_check(n: int, ctx: QContext) -> CommutatorReport:
    if n < 0:
        raise DomainError("basis index must be >= 0")
    e = basis_element(n, ctx)
    ladder = _apply_diff(e, creation_apply, annihilation_apply)
    factor = complex(ladder.coeffs[n]).real
    stray = max(
        (abs(c) for m, c in enumerate(ladder.coeffs) if m != n), default=0.0
    )
    via_dx = _apply_diff(e, position_apply, derivative_apply)
    route_gap = abs(ladder.coeffs[n] - via_dx.coeffs[n])
    return CommutatorReport(n=n, factor=factor, route_gap=route_gap, stray=stray)


def adjoint_check(R: FockElement, Q: FockElement) -> float:
    """|<D R, Q> - <R, X Q>| for the derivative/shift pair; zero to rounding."""
    lhs = fischer_inner(derivative_apply(R), Q)
    rhs = fischer_inner(R, position_apply(Q))
    return abs(lhs - rhs)


def oscillator_adjoint_gap(ctx: QContext) -> float:
    """|<a e_0, e_1> - <e_0, a^+ e_1>| = sqrt(2): the ladder pair is not adjoint."""
    e0 = basis_element(0, ctx, 3)
    e1 = basis_element(1, ctx, 3)
    return abs(fischer_inner(annihilation_apply(e0), e1) - fischer_inner(e0, creation_apply(e1)))
