"""Exact bivariate polynomial machinery for the plane picture.

Carries the q-analytic monomials ``Z_n(x, y) = prod_{l<n} (x + i q^l y)``,
the complex q-derivatives, the z/zbar expansion layer, complex Hermite
polynomials with their Gaussian inner product, (q, 1/q)-dilation grids, and
elliptic complex variables.

Polynomials are sparse maps from exponent pairs to complex coefficients.
After every product, coefficients below 1e-14 of the largest one are
dropped so that identities that should give the zero polynomial actually
do.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

import numpy as np

from qcore import DomainError, QContext, q_number

__all__ = [
    "BivarPoly",
    "ZBarBasisPoly",
    "QGrid",
    "EllipticVariable",
    "DominationReport",
    "zq_monomial",
    "zq_conjugate_monomial",
    "zq_point_values",
    "dz",
    "dzbar",
    "zq_expansion_coeffs",
    "modulus_domination_check",
    "complex_hermite",
    "gaussian_inner",
    "hermite_expand",
    "hermite_combine",
    "mixed_basis_gram",
    "qgrid_generate",
]

_CLEAN = 1e-14

Pair = Tuple[int, int]


class _PairPoly:
    """Sparse polynomial keyed by exponent pairs; shared arithmetic core."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Pair, complex] | None = None, clean: bool = True):
        self.terms: Dict[Pair, complex] = {}
        if terms:
            for key, c in terms.items():
                if c != 0:
                    a, b = key
                    if a < 0 or b < 0:
                        raise DomainError("exponents must be nonnegative")
                    self.terms[(int(a), int(b))] = complex(c)
        if clean:
            self._drop_small()

    def _drop_small(self) -> None:
        if not self.terms:
            return
        cap = max(abs(c) for c in self.terms.values())
        if cap == 0.0:
            self.terms.clear()
            return
        for key in [k for k, c in self.terms.items() if abs(c) <= _CLEAN * cap]:
            del self.terms[key]

    def max_abs(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def items(self):
        return self.terms.items()

    def __len__(self) -> int:
        return len(self.terms)

    def _binop(self, other, sign: int):
        if not isinstance(other, type(self)):
            return NotImplemented
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0.0) + sign * c
        return type(self)(out, clean=False)

    def __add__(self, other):
        return self._binop(other, +1)

    def __sub__(self, other):
        return self._binop(other, -1)

    def __neg__(self):
        return type(self)({k: -c for k, c in self.terms.items()}, clean=False)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            if other == 0:
                return type(self)()
            return type(self)({k: c * other for k, c in self.terms.items()}, clean=False)
        if not isinstance(other, type(self)):
            return NotImplemented
        out: Dict[Pair, complex] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0.0) + c1 * c2
        return type(self)(out)

    __rmul__ = __mul__

    def conjugate(self):
        return type(self)({k: c.conjugate() for k, c in self.terms.items()}, clean=False)

    def degree(self) -> int:
        return max((a + b for (a, b) in self.terms), default=0)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.terms!r})"


class BivarPoly(_PairPoly):
    """Polynomial in the real coordinates (x, y); key (a, b) means x^a y^b."""

    def __call__(self, x: float, y: float) -> complex:
        return sum(c * x**a * y**b for (a, b), c in self.terms.items()) + 0j

    @staticmethod
    def one() -> "BivarPoly":
        return BivarPoly({(0, 0): 1.0})


class ZBarBasisPoly(_PairPoly):
    """Polynomial in (z, zbar); key (i, j) means z^i zbar^j."""

    def __call__(self, z: complex) -> complex:
        zb = z.conjugate()
        return sum(c * z**i * zb**j for (i, j), c in self.terms.items()) + 0j

    @staticmethod
    def one() -> "ZBarBasisPoly":
        return ZBarBasisPoly({(0, 0): 1.0})

    def to_bivar(self) -> BivarPoly:
        """Substitute z = x + iy, zbar = x - iy."""
        zgen = BivarPoly({(1, 0): 1.0, (0, 1): 1j})
        wgen = BivarPoly({(1, 0): 1.0, (0, 1): -1j})
        return _substitute(self, zgen, wgen, BivarPoly)

    @staticmethod
    def from_bivar(p: BivarPoly) -> "ZBarBasisPoly":
        """Substitute x = (z + zbar)/2, y = (z - zbar)/(2i)."""
        xgen = ZBarBasisPoly({(1, 0): 0.5, (0, 1): 0.5})
        ygen = ZBarBasisPoly({(1, 0): -0.5j, (0, 1): 0.5j})
        return _substitute(p, xgen, ygen, ZBarBasisPoly)


def _substitute(src: _PairPoly, first: _PairPoly, second: _PairPoly, out_cls):
    # Powers are cached per call; degrees here are small (<= ~30).
    pow1: List[_PairPoly] = [out_cls.one()]
    pow2: List[_PairPoly] = [out_cls.one()]

    def power(table: List[_PairPoly], gen: _PairPoly, n: int) -> _PairPoly:
        while len(table) <= n:
            table.append(table[-1] * gen)
        return table[n]

    acc = out_cls()
    for (a, b), c in src.items():
        acc = acc + c * (power(pow1, first, a) * power(pow2, second, b))
    return acc


def zq_monomial(n: int, ctx: QContext) -> BivarPoly:
    """Z_n = prod_{l=0..n-1} (x + i q^l y), expanded exactly.

    Built with the cleaning filter off: the coefficients are same-sign
    subset sums of q-powers spanning hundreds of decades at small q, and
    the complex derivatives rescale the y-degree-b term by q^(1-b)[b],
    so even relatively tiny terms carry meaning.
    """
    if n < 0:
        raise DomainError("monomial index must be >= 0")
    q = ctx.q
    terms = {(0, 0): 1.0 + 0j}
    for l in range(n):
        iq = 1j * q**l
        nxt = {}
        for (a, b), c in terms.items():
            nxt[(a + 1, b)] = nxt.get((a + 1, b), 0.0) + c
            nxt[(a, b + 1)] = nxt.get((a, b + 1), 0.0) + c * iq
        terms = nxt
    return BivarPoly(terms, clean=False)


def zq_conjugate_monomial(n: int, ctx: QContext) -> BivarPoly:
    """The conjugate family prod (x - i q^l y); coefficientwise conjugate of Z_n."""
    return zq_monomial(n, ctx).conjugate()


def zq_point_values(z: complex, n: int, ctx: QContext) -> np.ndarray:
    """Values Z_0(z), ..., Z_n(z) at one point by the running product."""
    if n < 0:
        raise DomainError("monomial index must be >= 0")
    q = ctx.q
    out = np.empty(n + 1, dtype=complex)
    acc = 1.0 + 0j
    out[0] = acc
    x, y = z.real, z.imag
    for l in range(n):
        acc *= complex(x, q**l * y)
        out[l + 1] = acc
    return out


def _complex_derivative(poly: BivarPoly, sign: float, ctx: QContext) -> BivarPoly:
    # Monomial action of (1/2)(D^q_x +- i D^{1/q}_y); the y-bracket with base
    # 1/q equals q^{1-b} [b]_q.
    q = ctx.q
    out: Dict[Pair, complex] = {}
    for (a, b), c in poly.items():
        if a:
            key = (a - 1, b)
            out[key] = out.get(key, 0.0) + 0.5 * q_number(a, ctx) * c
        if b:
            key = (a, b - 1)
            out[key] = out.get(key, 0.0) + sign * 0.5j * q ** (1 - b) * q_number(b, ctx) * c
    # no cleaning: a two-term sum that nearly cancels is the very residual
    # the annihilation checks measure
    return BivarPoly(out, clean=False)


def dz(poly: BivarPoly, ctx: QContext) -> BivarPoly:
    """Holomorphic-side complex q-derivative; annihilates the conjugate family."""
    return _complex_derivative(poly, -1.0, ctx)


def dzbar(poly: BivarPoly, ctx: QContext) -> BivarPoly:
    """Antiholomorphic-side complex q-derivative; annihilates Z_n."""
    return _complex_derivative(poly, +1.0, ctx)


def zq_expansion_coeffs(n: int, ctx: QContext) -> ZBarBasisPoly:
    """Coefficients C_{i,j} with Z_{n+1} = z * sum_{i+j=n} C_{i,j} z^i zbar^j.

    Built by convolving the factors (A_l z + B_l zbar), A_l = (1+q^l)/2,
    B_l = (1-q^l)/2, in O(n^2); the 2^n subset enumeration is only a test
    oracle.
    """
    if n < 1:
        raise DomainError("expansion layer needs n >= 1")
    q = ctx.q
    layer: Dict[Pair, complex] = {(0, 0): 1.0}
    for l in range(1, n + 1):
        a_l = (1.0 + q**l) / 2.0
        b_l = (1.0 - q**l) / 2.0
        nxt: Dict[Pair, complex] = {}
        for (i, j), c in layer.items():
            nxt[(i + 1, j)] = nxt.get((i + 1, j), 0.0) + a_l * c
            nxt[(i, j + 1)] = nxt.get((i, j + 1), 0.0) + b_l * c
        layer = nxt
    return ZBarBasisPoly(layer, clean=False)


@dataclass(frozen=True)
class DominationReport:
    ok: bool
    worst_ratio: float
    n: int
    samples_checked: int


def modulus_domination_check(n: int, samples: Iterable[Tuple[float, float]], ctx: QContext) -> DominationReport:
    """Check |Z_n(x, y)| <= (x^2 + y^2)^{n/2} on the given sample points."""
    poly = zq_monomial(n, ctx)
    worst = 0.0
    count = 0
    for x, y in samples:
        count += 1
        r2 = x * x + y * y
        if r2 == 0.0:
            continue
        ratio = abs(poly(x, y)) / r2 ** (n / 2.0)
        worst = max(worst, ratio)
    return DominationReport(ok=worst <= 1.0 + 1e-12, worst_ratio=worst, n=n, samples_checked=count)


def complex_hermite(p: int, r: int) -> ZBarBasisPoly:
    """H_{p,r}(z, zbar) = p! r! sum_k (-1)^k / k! * z^{p-k}/(p-k)! * zbar^{r-k}/(r-k)!.

    Coefficients are exact integers.
    """
    if p < 0 or r < 0:
        raise DomainError("indices must be >= 0")
    terms: Dict[Pair, complex] = {}
    for k in range(min(p, r) + 1):
        c = (-1) ** k * math.factorial(p) * math.factorial(r) // (
            math.factorial(k) * math.factorial(p - k) * math.factorial(r - k)
        )
        terms[(p - k, r - k)] = complex(c)
    return ZBarBasisPoly(terms, clean=False)


def _as_exact_int(c: complex):
    re, im = c.real, c.imag
    ri, ii = round(re), round(im)
    if abs(re - ri) < 1e-9 and abs(im - ii) < 1e-9:
        return int(ri), int(ii)
    return None


def gaussian_inner(f: ZBarBasisPoly, g: ZBarBasisPoly) -> complex:
    """Gaussian-plane inner product, evaluated analytically.

    Uses the monomial moment rule: the Gaussian integral of
    ``z^alpha zbar^beta`` is ``pi * alpha!`` when alpha == beta and zero
    otherwise, so ``<z^a zbar^b, z^c zbar^d> = pi (a+d)! [a+d == b+c]``.
    When every coefficient is integral the accumulation runs in exact
    Python integers and pi multiplies last; the factorial products
    otherwise exceed the float integer window and lose ~6e-6 relative.
    """
    fi = [(k, _as_exact_int(c)) for k, c in f.items()]
    gi = [(k, _as_exact_int(c)) for k, c in g.items()]
    exact = all(v is not None for _, v in fi) and all(v is not None for _, v in gi)
    if exact:
        acc_re = 0
        acc_im = 0
        for (a, b), (fr, fim) in fi:
            for (c, d), (gr, gim) in gi:
                if a + d != b + c:
                    continue
                m = math.factorial(a + d)
                # (fr + i fim) * (gr - i gim)
                acc_re += (fr * gr + fim * gim) * m
                acc_im += (fim * gr - fr * gim) * m
        return complex(acc_re, acc_im) * math.pi
    acc = 0.0 + 0j
    for (a, b), cf in f.items():
        for (c, d), cg in g.items():
            if a + d == b + c:
                acc += cf * cg.conjugate() * math.factorial(a + d)
    return acc * math.pi


def hermite_expand(poly: ZBarBasisPoly) -> Dict[Pair, complex]:
    """Coefficients of poly against {H_{p,r}}.

    Rests on the inversion z^p zbar^r = sum_k C(p,k) C(r,k) k! H_{p-k,r-k}.
    """
    out: Dict[Pair, complex] = {}
    for (p, r), c in poly.items():
        for k in range(min(p, r) + 1):
            w = math.comb(p, k) * math.comb(r, k) * math.factorial(k)
            key = (p - k, r - k)
            out[key] = out.get(key, 0.0) + c * w
    return {k: v for k, v in out.items() if v != 0}


def hermite_combine(coeffs: Dict[Pair, complex]) -> ZBarBasisPoly:
    """Sum of coeff * H_{p,r}; inverse of hermite_expand."""
    acc = ZBarBasisPoly()
    for (p, r), c in coeffs.items():
        acc = acc + c * complex_hermite(p, r)
    return acc


def mixed_basis_gram(N: int, ctx: QContext):
    """Gram of {Z_k conj(Z)_h : k+h <= N} under the Gaussian inner product.

    Returns a GramReport carrying the minimum eigenvalue, trace, and rank;
    nonsingularity of this matrix is the computable form of the basis
    property of the mixed family.
    """
    from qcore import GramReport

    if N < 1:
        raise DomainError("degree cap must be >= 1")
    fam = []
    labels = []
    for total in range(N + 1):
        for k in range(total, -1, -1):
            h = total - k
            fam.append(ZBarBasisPoly.from_bivar(zq_monomial(k, ctx) * zq_conjugate_monomial(h, ctx)))
            labels.append(f"k={k},h={h}")
    m = len(fam)
    gram = np.zeros((m, m), dtype=complex)
    for i in range(m):
        for j in range(i, m):
            v = gaussian_inner(fam[i], fam[j])
            gram[i, j] = v
            gram[j, i] = v.conjugate()
    return GramReport(labels, gram, target="nonsingular (positive definite)")


@dataclass(frozen=True)
class QGrid:
    """Dilation grid: every seed spawns (q^{b1} x, q^{-b2} y), b1,b2 in 0..depth.

    Deduplication is by exact (seed, b1, b2) bookkeeping, never by floating
    comparison; distinct seeds are collapsed only when exactly equal.
    """

    seeds: tuple
    depth: int
    points: tuple
    index: tuple  # (seed_position, b1, b2) per point
    count_before_dedup: int


def qgrid_generate(seeds, depth: int, ctx: QContext) -> QGrid:
    if depth < 0:
        raise DomainError("depth must be >= 0")
    seeds = [(float(x), float(y)) for (x, y) in seeds]
    if not seeds:
        raise DomainError("need at least one seed")
    q = ctx.q
    uniq = []
    for s in seeds:
        if s not in uniq:
            uniq.append(s)
    points = []
    index = []
    for si, (x, y) in enumerate(uniq):
        for b1 in range(depth + 1):
            for b2 in range(depth + 1):
                points.append((q**b1 * x, q ** (-b2) * y))
                index.append((si, b1, b2))
    return QGrid(
        seeds=tuple(seeds),
        depth=depth,
        points=tuple(points),
        index=tuple(index),
        count_before_dedup=len(seeds) * (depth + 1) ** 2,
    )


@dataclass(frozen=True)
class EllipticVariable:
    """w = x + i p y with anisotropic modulus sqrt(x^2 + p^2 y^2), p > 0."""

    p: float
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (self.p > 0.0 and math.isfinite(self.p)):
            raise DomainError("axis ratio p must be positive and finite")

    @property
    def modulus(self) -> float:
        return math.hypot(self.x, self.p * self.y)

    @property
    def value(self) -> complex:
        return complex(self.x, self.p * self.y)

    def polar(self) -> Tuple[float, float]:
        return self.modulus, math.atan2(self.p * self.y, self.x)
