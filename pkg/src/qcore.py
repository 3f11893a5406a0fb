"""Scalar q-calculus: brackets, factorials, q-exponentials, Jackson sums, q-Gamma.

Conventions
-----------
Throughout, ``q`` is a real deformation parameter in (0, 1) and

    [a]_q = (1 - q^a) / (1 - q),

so ``[n]_q = 1 + q + ... + q^{n-1}`` for integer n and ``[n]_q -> n`` as
``q -> 1``.  Two exponential series appear:

    E(x) = sum_k x^k / [k]!                       (radius 1/(1-base)),
    e(x) = sum_j base^{j(j-1)/2} x^j / [j]!       (entire),

mutually inverse via ``E(t) e(-t) = 1``.  ``e`` has real zeros at
``base^{-k} / (base - 1)`` for k >= 0.

The orthogonality weight used downstream is ``W(t) = e(-t^2)`` with base
``q^2``.  A mixed-base reading of that series (prefactor base q^2 but
factorial base q) is also constructible via :class:`QExpVariant`; it fails
the dilation identity

    D^q_t W(t) = -(q+1) t W(q t)

by O(1e-1), while the all-q^2 ("substitution") variant satisfies it to
~1e-13, so the substitution variant is canonical.  The selection is
re-verified in the test suite rather than assumed.

All types are immutable values; every operation is a pure function of its
inputs, safe for concurrent use.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

__all__ = [
    "DomainError",
    "QContext",
    "QExpVariant",
    "JacksonQuadrature",
    "GramReport",
    "q_number",
    "q_factorial",
    "q_binomial",
    "q_bracket_gap",
    "q_derivative",
    "q_dilate",
    "big_e_variant",
    "small_e_variant",
    "weight_variant",
    "weight_variant_mixed",
    "weight_dilation_residual",
    "q_exp",
    "jackson_integral",
    "support_halfwidth",
    "q_gamma",
    "q_gamma_moment_check",
    "MomentIdentityReport",
]

# Absolute floor below which further Jackson nodes are discarded.
_QUAD_TERM_FLOOR = 1e-18
# Leading nodes can vanish legitimately (weights with an endpoint zero), so
# the early-stop rule only kicks in after this many nodes.
_QUAD_MIN_NODES = 8


class DomainError(ValueError):
    """An argument left the domain on which the operation is defined."""


@dataclass(frozen=True)
class QContext:
    """Deformation parameter plus the truncation policy for series and sums.

    Parameters
    ----------
    q : float
        Deformation parameter, strictly between 0 and 1.
    series_max_terms : int
        Hard cap on the number of terms of any infinite series.
    series_term_tol : float
        Relative tail tolerance: a series stops once the current term drops
        below this fraction of the accumulated sum.
    quad_max_level : int
        Node depth J of Jackson sums; nodes are ``c q^k`` for k <= J.
    default_tol : float
        Comparison tolerance used by verification helpers.
    """

    q: float
    series_max_terms: int = 600
    series_term_tol: float = 1e-18
    quad_max_level: int = 400
    default_tol: float = 1e-9

    def __post_init__(self) -> None:
        if not (0.0 < self.q < 1.0):
            raise DomainError(f"q must lie in (0, 1), got {self.q}")
        if self.series_max_terms < 1:
            raise DomainError("series_max_terms must be >= 1")
        if self.quad_max_level < 1:
            raise DomainError("quad_max_level must be >= 1")
        if self.series_term_tol <= 0.0 or self.default_tol <= 0.0:
            raise DomainError("tolerances must be positive")

    def with_q(self, q: float) -> "QContext":
        return replace(self, q=q)


def q_number(alpha: float, ctx: QContext) -> float:
    """The bracket [alpha]_q = (1 - q^alpha)/(1 - q)."""
    q = ctx.q
    return (1.0 - q**alpha) / (1.0 - q)


def q_factorial(n: int, ctx: QContext) -> float:
    """[n]_q! = prod_{m=1..n} [m]_q, with [0]_q! = 1."""
    if n < 0:
        raise DomainError("q-factorial needs n >= 0")
    out = 1.0
    for m in range(1, n + 1):
        out *= q_number(m, ctx)
    return out


def q_binomial(n: int, k: int, ctx: QContext) -> float:
    """Gaussian binomial [n]_q! / ([n-k]_q! [k]_q!)."""
    if k < 0 or k > n:
        raise DomainError(f"q-binomial needs 0 <= k <= n, got n={n}, k={k}")
    return q_factorial(n, ctx) / (q_factorial(n - k, ctx) * q_factorial(k, ctx))


def q_bracket_gap(n: int, ctx: QContext) -> float:
    """[n+1]_q - [n]_q, which equals q^n."""
    if n < 0:
        raise DomainError("bracket gap needs n >= 0")
    return q_number(n + 1, ctx) - q_number(n, ctx)


def q_derivative(f, x: float, ctx: QContext) -> float:
    """Difference quotient (f(qx) - f(x)) / ((q-1) x).

    Raises
    ------
    DomainError
        At x = 0, where the defining quotient is singular.  Polynomial
        callers should use the exact coefficient rule in the bivariate
        polynomial module instead.
    """
    if x == 0:
        raise DomainError("q-derivative quotient is singular at x = 0")
    q = ctx.q
    return (f(q * x) - f(x)) / ((q - 1.0) * x)


def q_dilate(f, x: float, ctx: QContext) -> float:
    """Dilation operator: f evaluated at q x."""
    return f(ctx.q * x)


_BIG_E = "E"
_SMALL_E = "e"


@dataclass(frozen=True)
class QExpVariant:
    """Selector for one of the two q-exponential series.

    ``kind`` is "E" (finite radius) or "e" (entire, triangular prefactor).
    ``base`` drives the prefactor ``base^{j(j-1)/2}``; ``factorial_base``
    drives the bracket factorials in the denominator and defaults to
    ``base``.  Having them differ reproduces the mixed-base weight reading
    (see module docstring); it exists for comparison, not for use as the
    canonical weight.
    """

    kind: str
    base: float
    factorial_base: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in (_BIG_E, _SMALL_E):
            raise DomainError(f"unknown q-exponential kind {self.kind!r}")
        if not (0.0 < self.base < 1.0):
            raise DomainError("q-exponential base must lie in (0, 1)")
        fb = self.factorial_base
        if fb is not None and not (0.0 < fb < 1.0):
            raise DomainError("factorial base must lie in (0, 1)")

    @property
    def fbase(self) -> float:
        return self.base if self.factorial_base is None else self.factorial_base


def big_e_variant(base: float) -> QExpVariant:
    return QExpVariant(_BIG_E, base)


def small_e_variant(base: float, factorial_base: float | None = None) -> QExpVariant:
    return QExpVariant(_SMALL_E, base, factorial_base)


def weight_variant(q: float) -> QExpVariant:
    """The canonical weight series: all-q^2 substitution variant."""
    return small_e_variant(q * q)


def weight_variant_mixed(q: float) -> QExpVariant:
    """Mixed-base reading (prefactor base q^2, factorial base q).

    Kept constructible for comparison; fails the dilation identity and the
    endpoint zero, so it is never used as the orthogonality weight.
    """
    return small_e_variant(q * q, factorial_base=q)


def q_exp(variant: QExpVariant, x: float, ctx: QContext) -> float:
    """Evaluate the selected q-exponential series at x.

    Truncation follows ctx policy: stop when the term falls below
    ``series_term_tol`` relative to the partial sum, or at
    ``series_max_terms``.

    Raises
    ------
    DomainError
        For kind "E" outside its disc of convergence |x| < 1/(1-base).
    """
    b = variant.base
    fb = variant.fbase
    if variant.kind == _BIG_E:
        radius = 1.0 / (1.0 - b)
        if abs(x) >= radius:
            raise DomainError(
                f"E-series diverges for |x| >= 1/(1-base) = {radius:.6g}, got |x| = {abs(x):.6g}"
            )
        acc = 1.0
        term = 1.0
        for k in range(1, ctx.series_max_terms):
            bracket = (1.0 - fb**k) / (1.0 - fb)
            term *= x / bracket
            acc += term
            if abs(term) <= ctx.series_term_tol * (1.0 + abs(acc)):
                break
        return acc
    acc = 1.0
    term = 1.0
    for j in range(1, ctx.series_max_terms):
        bracket = (1.0 - fb**j) / (1.0 - fb)
        term *= b ** (j - 1) * x / bracket
        acc += term
        if abs(term) <= ctx.series_term_tol * (1.0 + abs(acc)):
            break
    return acc


def weight_dilation_residual(variant: QExpVariant, ctx: QContext, points) -> float:
    """Max residual of D^q_t W(t) + (q+1) t W(q t) over the points, W(t) = variant(-t^2).

    The canonical weight variant satisfies this identity to rounding; the
    mixed-base variant does not.  Used by the selection test.
    """

    def w(t: float) -> float:
        return q_exp(variant, -t * t, ctx)

    worst = 0.0
    q = ctx.q
    for t in points:
        if t == 0:
            continue
        lhs = q_derivative(w, t, ctx)
        rhs = -(q + 1.0) * t * w(q * t)
        worst = max(worst, abs(lhs - rhs))
    return worst


@dataclass(frozen=True)
class JacksonQuadrature:
    """Geometric node rule on [a, b]: nodes c q^k, weights (1-q) c q^k per endpoint."""

    a: float
    b: float
    level: int
    ctx: QContext

    def __post_init__(self) -> None:
        if self.level < 1:
            raise DomainError("quadrature level must be >= 1")

    @classmethod
    def on(cls, a: float, b: float, ctx: QContext, level: int | None = None) -> "JacksonQuadrature":
        return cls(a, b, ctx.quad_max_level if level is None else level, ctx)


def _half_line_sum(f, c: float, level: int, ctx: QContext) -> float:
    # (1-q) c sum_k q^k f(c q^k), ascending k, with the absolute-floor early stop.
    if c == 0.0:
        return 0.0
    q = ctx.q
    scale = (1.0 - q) * abs(c)
    acc = 0.0
    qk = 1.0
    for k in range(level + 1):
        term = qk * f(c * qk)
        acc += term
        if k >= _QUAD_MIN_NODES and scale * abs(term) < _QUAD_TERM_FLOOR:
            break
        qk *= q
    return (1.0 - q) * c * acc


def jackson_integral(f, quad: JacksonQuadrature) -> float:
    """Jackson sum of f over [a, b], evaluated as the [0,b] sum minus the [0,a] sum."""
    ctx = quad.ctx
    return _half_line_sum(f, quad.b, quad.level, ctx) - _half_line_sum(f, quad.a, quad.level, ctx)


def support_halfwidth(ctx: QContext) -> float:
    """lambda = 1/sqrt(1 - q^2), the half-width of the symmetric node set."""
    return 1.0 / math.sqrt(1.0 - ctx.q * ctx.q)


def q_gamma(t: float, ctx: QContext) -> float:
    """q-Gamma via its infinite product.

    Gamma_q(t) = (1-q)^{1-t} prod_{k>=1} (1 - q^k) / prod_{k>=0} (1 - q^{t+k}),
    satisfying Gamma_q(t+1) = [t]_q Gamma_q(t) and Gamma_q(1) = 1.

    Raises
    ------
    DomainError
        For t <= 0 (no analytic continuation attempted).
    """
    if t <= 0.0:
        raise DomainError("q-Gamma product formula requires t > 0")
    q = ctx.q
    # Factors are negligible once q^k < 1e-17; log1p keeps the long products
    # stable near q -> 1 where hundreds of thousands of factors contribute.
    terms = max(16, int(math.log(1e-17) / math.log(q)) + 1)
    total = 0.0
    chunk = 1 << 20
    for start in range(0, terms, chunk):
        ks = np.arange(start, min(start + chunk, terms), dtype=float)
        total += float(np.sum(np.log1p(-(q ** (ks + 1.0))) - np.log1p(-(q ** (t + ks)))))
    return (1.0 - q) ** (1.0 - t) * math.exp(total)


@dataclass(frozen=True)
class MomentIdentityReport:
    """Both sides of the symmetric-interval moment identity and their gap."""

    nu: int
    lhs: float
    rhs: float
    rel_gap: float
    parity_skipped: bool
    note: str


def q_gamma_moment_check(nu: int, ctx: QContext) -> MomentIdentityReport:
    """Check the moment identity on [-lambda, lambda] for integer nu >= 1.

    The identity states that the symmetric Jackson sum of
    ``t^{nu-1} W(t)``, with W the canonical weight, equals
    ``(2/(q+1)) q^nu Gamma_{q^2}(nu/2)``.

    For even nu the integrand is odd and the symmetric sum vanishes
    identically, so the check is skipped with a note rather than reported
    as a residual.  Non-integer nu is rejected: t^{nu-1} is not real on
    the negative half of the node set.
    """
    if nu != int(nu) or nu < 1:
        raise DomainError("moment check needs a positive integer exponent")
    nu = int(nu)
    q = ctx.q
    lam = support_halfwidth(ctx)
    rhs = (2.0 / (q + 1.0)) * q**nu * q_gamma(nu / 2.0, ctx.with_q(q * q))
    if nu % 2 == 0:
        return MomentIdentityReport(
            nu=nu,
            lhs=0.0,
            rhs=rhs,
            rel_gap=0.0,
            parity_skipped=True,
            note="even exponent: integrand is odd, symmetric Jackson sum vanishes; check restricted to odd exponents",
        )
    wv = weight_variant(q)

    def integrand(t: float) -> float:
        return t ** (nu - 1) * q_exp(wv, -t * t, ctx)

    lhs = jackson_integral(integrand, JacksonQuadrature.on(-lam, lam, ctx))
    return MomentIdentityReport(
        nu=nu,
        lhs=lhs,
        rhs=rhs,
        rel_gap=abs(lhs - rhs) / abs(rhs),
        parity_skipped=False,
        note="",
    )


class GramReport:
    """A labeled matrix of inner products with deviation diagnostics.

    Parameters
    ----------
    labels : list of str
        Row/column labels, in matrix order.
    matrix : ndarray
        The Gram matrix.
    target : str
        Human-readable description of the expected matrix.
    target_matrix : ndarray, optional
        When given, ``max_dev`` is the max absolute entrywise deviation.
    """

    def __init__(self, labels, matrix, target, target_matrix=None):
        self.labels = list(labels)
        self.matrix = np.asarray(matrix)
        self.target = target
        herm = np.allclose(self.matrix, self.matrix.conj().T, rtol=0.0, atol=1e-30) or bool(
            np.max(np.abs(self.matrix - self.matrix.conj().T)) <= 1e-10 * (1.0 + np.max(np.abs(self.matrix)))
        )
        self.trace = float(np.real(np.trace(self.matrix)))
        if herm:
            eigs = np.linalg.eigvalsh((self.matrix + self.matrix.conj().T) / 2.0)
            self.min_eig = float(eigs[0])
            self.rank = int(np.sum(eigs > 1e-12 * max(self.trace, 1.0)))
        else:
            self.min_eig = float("nan")
            self.rank = -1
        if target_matrix is not None:
            self.max_dev = float(np.max(np.abs(self.matrix - np.asarray(target_matrix))))
        else:
            self.max_dev = float("nan")

    def max_offdiag(self) -> float:
        m = self.matrix.copy()
        np.fill_diagonal(m, 0.0)
        return float(np.max(np.abs(m))) if m.size else 0.0

    def to_json_dict(self) -> dict:
        return {
            "labels": self.labels,
            "matrix_re": np.real(self.matrix).tolist(),
            "matrix_im": np.imag(self.matrix).tolist(),
            "target": self.target,
            "trace": self.trace,
            "min_eig": self.min_eig,
            "max_dev": None if math.isnan(self.max_dev) else self.max_dev,
        }

    def to_csv_rows(self) -> list[list[str]]:
        rows = [["label", *self.labels]]
        for lab, row in zip(self.labels, self.matrix):
            cells = []
            for v in row:
                z = complex(v)
                cells.append(repr(z.real) if z.imag == 0.0 else f"{z.real!r}+{z.imag!r}i")
            rows.append([lab, *cells])
        return rows
