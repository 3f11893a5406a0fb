"""Transform between weighted node functions and the holomorphic model.

Functions live on the symmetric node ladder {+-lambda q^j}, lambda =
1/sqrt(1-q^2), with the plain symmetric Jackson pairing

    <f, g> = (1-q) lambda sum_j q^j (f(+lambda q^j) conj(g(+..))
                                     + f(-lambda q^j) conj(g(-..))),

summed ascending in j, plus branch before minus branch.  The normalized
Hermite functions h_n = H_n sqrt(W) / sqrt(Lambda_n) are orthonormal under
this pairing, and the transform

    (B f)_n = <f, h_n> / sqrt([n]_q!)

sends h_m to Z_m / sqrt([m]_q!), an orthonormal set under the Fischer
pairing, so B is an isometry on the truncated span.  The coherent state
at z is the kernel section

    Phi_z = sum_n Z_n(z) h_n / sqrt([n]_q!),

whose pairwise overlaps reproduce the Fock kernel: <Phi_z, Phi_w> =
K(z, w).  The two-variable transform applies the same contraction on each
axis and reports coefficients against the normalized tensor basis, so a
product input h_k (x) h_h maps to the single unit entry (k, h).

Every operation accepts either a QContext (a default table is built and
cached) or a prebuilt BargmannKernelTable.  Mode counts are clamped to
the float64 representability ceiling of the normalized family (see
qhermite.mode_ceiling); requesting more modes silently yields the
ceiling, recorded in ``BargmannKernelTable.modes``.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from qcore import DomainError, GramReport, QContext, q_factorial, support_halfwidth
from qcomplex import zq_point_values
from qfock import FockElement, fischer_inner
from qhermite import mode_ceiling, qhermite_function

__all__ = [
    "JacksonFunction",
    "BargmannKernelTable",
    "TensorFockElement",
    "build_kernel_table",
    "bargmann_forward",
    "bargmann_basis_image",
    "bargmann_unitarity_gram",
    "coherent_state",
    "coherent_overlap",
    "tensor_basis",
    "tensor_forward",
    "tensor_unitarity_gram",
]


@dataclass(frozen=True)
class JacksonFunction:
    """Values on the node ladder: ``values[0, j]`` at +lambda q^j, ``[1, j]`` at -."""

    values: np.ndarray
    ctx: QContext

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.ndim != 2 or v.shape[0] != 2:
            raise DomainError("node values must have shape (2, J+1)")
        object.__setattr__(self, "values", np.asarray(v, dtype=complex))

    @property
    def level(self) -> int:
        return self.values.shape[1] - 1

    def inner(self, other: "JacksonFunction") -> complex:
        if other.values.shape != self.values.shape:
            raise DomainError("node sets differ")
        q = self.ctx.q
        lam = support_halfwidth(self.ctx)
        acc = 0.0 + 0j
        f, g = self.values, other.values
        qj = 1.0
        for j in range(self.values.shape[1]):
            acc += qj * (f[0, j] * g[0, j].conjugate() + f[1, j] * g[1, j].conjugate())
            qj *= q
        return (1.0 - q) * lam * acc

    def norm_sq(self) -> float:
        return self.inner(self).real

    def __add__(self, other: "JacksonFunction") -> "JacksonFunction":
        if other.values.shape != self.values.shape:
            raise DomainError("node sets differ")
        return JacksonFunction(self.values + other.values, self.ctx)

    def scaled(self, c: complex) -> "JacksonFunction":
        return JacksonFunction(c * self.values, self.ctx)


@dataclass(frozen=True)
class BargmannKernelTable:
    """Precomputed normalized-Hermite node values backing the transform.

    ``hvals[n]`` holds h_n on the ladder with shape (2, J+1); ``modes`` is
    the effective mode count after the representability clamp;
    ``inv_sqrt_fact[n]`` is 1/sqrt([n]_q!).  Treat instances as read-only:
    they are shared through a cache.
    """

    ctx: QContext
    modes: int
    level: int
    hvals: np.ndarray
    inv_sqrt_fact: np.ndarray

    def weights(self) -> np.ndarray:
        q = self.ctx.q
        lam = support_halfwidth(self.ctx)
        return (1.0 - q) * lam * q ** np.arange(self.level + 1)

    def mode_function(self, n: int) -> JacksonFunction:
        if not 0 <= n <= self.modes:
            raise DomainError("mode index exceeds the table's range")
        return JacksonFunction(self.hvals[n], self.ctx)


def build_kernel_table(ctx: QContext, modes: int | None = None, level: int | None = None) -> BargmannKernelTable:
    ceiling = mode_ceiling(ctx)
    eff = ceiling if modes is None else min(modes, ceiling)
    if eff < 0:
        raise DomainError("mode count must be >= 0")
    J = ctx.quad_max_level if level is None else level
    node_ctx = QContext(q=ctx.q, quad_max_level=J)
    hv = np.empty((eff + 1, 2, J + 1))
    for n in range(eff + 1):
        hv[n] = qhermite_function(n, node_ctx).values
    isf = np.array([1.0 / math.sqrt(q_factorial(n, ctx)) for n in range(eff + 1)])
    return BargmannKernelTable(ctx=ctx, modes=eff, level=J, hvals=hv, inv_sqrt_fact=isf)


@functools.lru_cache(maxsize=8)
def _cached_table(ctx: QContext, modes: int | None) -> BargmannKernelTable:
    return build_kernel_table(ctx, modes=modes)


def _ensure_table(ctx_or_table, modes: int | None = None) -> BargmannKernelTable:
    if isinstance(ctx_or_table, BargmannKernelTable):
        return ctx_or_table
    if isinstance(ctx_or_table, QContext):
        return _cached_table(ctx_or_table, modes)
    raise DomainError("expected a QContext or a BargmannKernelTable")


def _as_node_function(f, table: BargmannKernelTable) -> JacksonFunction:
    if isinstance(f, JacksonFunction):
        if f.level != table.level:
            raise DomainError("node sets differ between function and table")
        return f
    return JacksonFunction(np.asarray(f), table.ctx)


def bargmann_forward(f, ctx_or_table) -> FockElement:
    """Coefficients b_n = <f, h_n> / sqrt([n]_q!) for n = 0..modes."""
    table = _ensure_table(ctx_or_table)
    fn = _as_node_function(f, table)
    coeffs = []
    for n in range(table.modes + 1):
        coeffs.append(fn.inner(table.mode_function(n)) * table.inv_sqrt_fact[n])
    return FockElement(tuple(coeffs), table.ctx)


def bargmann_basis_image(m: int, ctx_or_table) -> FockElement:
    """Transform of h_m; exact answer is the single monomial Z_m / sqrt([m]_q!)."""
    table = _ensure_table(ctx_or_table)
    if not 0 <= m <= table.modes:
        raise DomainError("basis index exceeds the table's mode range")
    return bargmann_forward(table.mode_function(m), table)


def bargmann_unitarity_gram(M: int, ctx_or_table) -> GramReport:
    """Fischer Gram of the transformed basis images, target identity.

    ``M`` is clamped to the table's mode range.
    """
    table = _ensure_table(ctx_or_table)
    m_eff = min(M, table.modes)
    imgs = [bargmann_basis_image(m, table) for m in range(m_eff + 1)]
    n = m_eff + 1
    mat = np.empty((n, n), dtype=complex)
    for a in range(n):
        for b in range(n):
            mat[a, b] = fischer_inner(imgs[a], imgs[b])
    labels = [f"h{m}" for m in range(n)]
    return GramReport(labels, mat, target="identity", target_matrix=np.eye(n))


def coherent_state(z: complex, ctx_or_table) -> JacksonFunction:
    """Kernel section Phi_z = sum_n Z_n(z) h_n / sqrt([n]_q!), truncated.

    Pairing h_n against Phi_z recovers conj(Z_n(z)) / sqrt([n]_q!), and
    <Phi_z, Phi_w> reproduces the Fock kernel K(z, w).  The parameter must
    satisfy |z| < 1/(1-q), the kernel's domain disc.
    """
    table = _ensure_table(ctx_or_table)
    z = complex(z)
    radius = 1.0 / (1.0 - table.ctx.q)
    if abs(z) >= radius:
        raise DomainError(
            f"coherent parameter |z|={abs(z):.6g} outside the domain disc of radius {radius:.6g}"
        )
    zn = zq_point_values(z, table.modes, table.ctx)
    vals = np.zeros((2, table.level + 1), dtype=complex)
    for n in range(table.modes + 1):
        vals += (zn[n] * table.inv_sqrt_fact[n]) * table.hvals[n]
    return JacksonFunction(vals, table.ctx)


def coherent_overlap(z: complex, w: complex, ctx_or_table) -> complex:
    """<Phi_z, Phi_w> under the node pairing; equals K(z, w) up to truncation."""
    table = _ensure_table(ctx_or_table)
    return coherent_state(z, table).inner(coherent_state(w, table))


@dataclass(frozen=True)
class TensorFockElement:
    """Coefficients against the normalized tensor basis Z_k Z_h / sqrt([k]![h]!).

    The squared norm is the plain sum of squared moduli (the basis is
    orthonormal in the two-variable pairing).
    """

    matrix: np.ndarray
    ctx: QContext

    def __post_init__(self):
        object.__setattr__(self, "matrix", np.asarray(self.matrix, dtype=complex))

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.matrix) ** 2))

    def inner(self, other: "TensorFockElement") -> complex:
        if other.matrix.shape != self.matrix.shape:
            raise DomainError("shapes differ")
        return complex(np.sum(self.matrix * other.matrix.conjugate()))


def tensor_basis(a: int, b: int, ctx_or_table) -> np.ndarray:
    """Node values of h_a (x) h_b with shape (2, J+1, 2, J+1)."""
    table = _ensure_table(ctx_or_table)
    if not (0 <= a <= table.modes and 0 <= b <= table.modes):
        raise DomainError("basis index exceeds the table's mode range")
    return np.einsum("sj,tk->sjtk", table.hvals[a], table.hvals[b])


def tensor_forward(F: np.ndarray, ctx_or_table) -> TensorFockElement:
    """Double Jackson contraction of F against h_k (x) h_h on both axes.

    ``F[s, j, t, k]`` is the value at (sign_s lambda q^j, sign_t lambda q^k);
    the output entry (k, h) is <<F, h_k (x) h_h>>, so product inputs
    h_k (x) h_h map to a single unit entry.
    """
    table = _ensure_table(ctx_or_table)
    F = np.asarray(F, dtype=complex)
    J = table.level
    if F.shape != (2, J + 1, 2, J + 1):
        raise DomainError("tensor values must have shape (2, J+1, 2, J+1)")
    w = table.weights()
    proj = table.hvals * w[np.newaxis, np.newaxis, :]  # (modes+1, 2, J+1)
    half = np.tensordot(proj, F, axes=([1, 2], [0, 1]))  # (modes+1, 2, J+1)
    full = np.tensordot(half, proj, axes=([1, 2], [1, 2]))  # (modes+1, modes+1)
    return TensorFockElement(matrix=full, ctx=table.ctx)


def tensor_unitarity_gram(kmax: int, ctx_or_table) -> GramReport:
    """Gram of transformed tensor basis elements h_a (x) h_b, a, b <= kmax."""
    table = _ensure_table(ctx_or_table)
    k_eff = min(kmax, table.modes)
    pairs = [(a, b) for a in range(k_eff + 1) for b in range(k_eff + 1)]
    imgs = [tensor_forward(tensor_basis(a, b, table), table) for a, b in pairs]
    n = len(pairs)
    mat = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            mat[i, j] = imgs[i].inner(imgs[j])
    labels = [f"h{a}xh{b}" for a, b in pairs]
    return GramReport(labels, mat, target="identity", target_matrix=np.eye(n))
