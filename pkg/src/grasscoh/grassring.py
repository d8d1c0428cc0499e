"""Rational cohomology of the complex Grassmannian CG_{n,k} in the Schubert basis.

The quotient Q[c_1..c_k]/<h_{n-k+1},...,h_n> is realized by truncating
Schur expansions to partitions inside the k x (n-k) box.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .chernpoly import ChernPolynomial
from .linalg import RatMatrix
from .partitions import (
    BoxShape,
    Partition,
    as_partition,
    complement,
    conjugate,
    fits,
    format_partition,
    lr_coefficients,
    partitions_in_box,
    pieri_e,
)


@dataclass(frozen=True)
class RingContext:
    n: int
    k: int

    def __post_init__(self):
        if not 0 < self.k < self.n:
            raise ValueError(f"need 0 < k < n, got n={self.n}, k={self.k}")

    @property
    def box(self) -> BoxShape:
        return BoxShape(self.k, self.n - self.k)

    @property
    def d(self) -> int:
        return self.k * (self.n - self.k)

    @property
    def top(self) -> Partition:
        return (self.n - self.k,) * self.k

    def basis(self, weight: int) -> List[Partition]:
        """Schubert basis of H^{2*weight}."""
        return _basis(self.n, self.k, weight)

    def slice_dim(self, degree: int) -> int:
        if degree % 2:
            return 0
        return len(self.basis(degree // 2))


@lru_cache(maxsize=None)
def _basis(n: int, k: int, weight: int) -> List[Partition]:
    return partitions_in_box(BoxShape(k, n - k), weight)


@lru_cache(maxsize=None)
def _index(n: int, k: int, weight: int) -> Dict[Partition, int]:
    return {lam: i for i, lam in enumerate(_basis(n, k, weight))}


def _sort_key(lam: Partition):
    return (sum(lam), lam)


class GrassClass:
    """Sparse rational combination of Schubert classes, possibly mixed-degree."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: RingContext, coeffs: Dict[Partition, object] = None):
        self.ctx = ctx
        clean = {}
        for lam, c in (coeffs or {}).items():
            lam = tuple(lam)
            if not fits(lam, ctx.box):
                raise ValueError(f"{format_partition(lam)} does not fit the {ctx.k}x{ctx.n - ctx.k} box")
            c = Fraction(c)
            if c:
                clean[lam] = clean.get(lam, 0) + c
                if not clean[lam]:
                    del clean[lam]
        self.coeffs = clean

    # -- ring structure ------------------------------------------------
    def one(self) -> "GrassClass":
        return GrassClass(self.ctx, {(): 1})

    def zero(self) -> "GrassClass":
        return GrassClass(self.ctx)

    def _check(self, other: "GrassClass"):
        if not isinstance(other, GrassClass):
            raise TypeError(f"expected GrassClass, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ValueError(f"context mismatch: {self.ctx} vs {other.ctx}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.one().scale(other)
        self._check(other)
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            out[lam] = out.get(lam, 0) + c
        return GrassClass(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.one().scale(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, q) -> "GrassClass":
        q = Fraction(q)
        return GrassClass(self.ctx, {lam: c * q for lam, c in self.coeffs.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.one().scale(other)
        if not isinstance(other, GrassClass):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    # -- grading -------------------------------------------------------
    def degrees(self) -> set:
        return {2 * sum(lam) for lam in self.coeffs}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        """Degree of a nonzero homogeneous class."""
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError(f"class {self} is not homogeneous and nonzero")
        return degs.pop()

    def component(self, degree: int) -> "GrassClass":
        return GrassClass(self.ctx, {lam: c for lam, c in self.coeffs.items() if 2 * sum(lam) == degree})

    def coefficient(self, lam: Partition) -> Fraction:
        return self.coeffs.get(tuple(lam), Fraction(0))

    def vector(self, degree: int) -> List[Fraction]:
        """Coordinates of the degree-``degree`` component in the Schubert basis."""
        if degree % 2 or degree < 0:
            return []
        return [self.coeffs.get(lam, Fraction(0)) for lam in self.ctx.basis(degree // 2)]

    @classmethod
    def from_vector(cls, ctx: RingContext, degree: int, vec: Sequence) -> "GrassClass":
        if degree % 2 or degree < 0:
            if any(vec):
                raise ValueError("odd-degree Grassmannian slice is zero")
            return cls(ctx)
        return cls(ctx, dict(zip(ctx.basis(degree // 2), vec)))

    # -- text ----------------------------------------------------------
    def __str__(self):
        return format_terms(self.coeffs)

    def __repr__(self):
        return f"GrassClass(n={self.ctx.n}, k={self.ctx.k}, {self})"


def format_terms(coeffs: Dict[Partition, Fraction]) -> str:
    if not coeffs:
        return "0"
    pieces = []
    for lam in sorted(coeffs, key=_sort_key, reverse=True):
        c = coeffs[lam]
        mag = abs(c)
        if not lam:
            body = str(mag)
        elif mag == 1:
            body = "s" + format_partition(lam)
        else:
            body = f"{mag}*s{format_partition(lam)}"
        if not pieces:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append((" - " if c < 0 else " + ") + body)
    return "".join(pieces)


def sigma(ctx: RingContext, lam: Sequence[int]) -> GrassClass:
    lam = as_partition(lam)
    if not fits(lam, ctx.box):
        raise ValueError(f"{format_partition(lam)} does not fit the {ctx.k}x{ctx.n - ctx.k} box")
    return GrassClass(ctx, {lam: 1})


def chern_class(ctx: RingContext, i: int) -> GrassClass:
    """c_i = sigma_{(1^i)}; c_0 = 1 and c_i = 0 for i > k."""
    if i == 0:
        return sigma(ctx, ())
    if i < 0 or i > ctx.k:
        return GrassClass(ctx)
    return sigma(ctx, (1,) * i)


@lru_cache(maxsize=None)
def _truncated_lr(lam: Partition, mu: Partition, k: int, cols: int) -> Tuple[Tuple[Partition, int], ...]:
    return tuple(lr_coefficients(lam, mu, max_rows=k, max_cols=cols).items())


def multiply(a: GrassClass, b: GrassClass) -> GrassClass:
    """Product in the quotient: LR expansion truncated to the box."""
    a._check(b)
    ctx = a.ctx
    out: Dict[Partition, Fraction] = {}
    for lam, ca in a.coeffs.items():
        for mu, cb in b.coeffs.items():
            if sum(lam) + sum(mu) > ctx.d:
                continue
            x, y = (lam, mu) if lam >= mu else (mu, lam)
            for nu, c in _truncated_lr(x, y, ctx.k, ctx.n - ctx.k):
                out[nu] = out.get(nu, 0) + ca * cb * c
    return GrassClass(ctx, out)


@lru_cache(maxsize=None)
def _chern_monomial(n: int, k: int, exps: Tuple[int, ...]) -> Tuple[Tuple[Partition, int], ...]:
    box = BoxShape(k, n - k)
    if not any(exps):
        return (((), 1),)
    # peel one factor c_i off and reuse the cached smaller monomial
    i = max(j for j, a in enumerate(exps) if a)
    smaller = list(exps)
    smaller[i] -= 1
    out: Dict[Partition, int] = {}
    for lam, c in _chern_monomial(n, k, tuple(smaller)):
        for mu in pieri_e(lam, i + 1, row_limit=k):
            if fits(mu, box):
                out[mu] = out.get(mu, 0) + c
    return tuple((lam, c) for lam, c in out.items() if c)


def from_chern_monomial(ctx: RingContext, exponents: Sequence[int]) -> GrassClass:
    """Reduce c_1^{a_1} ... c_k^{a_k} to Schubert form by iterated Pieri."""
    exps = tuple(int(a) for a in exponents)
    if len(exps) != ctx.k or any(a < 0 for a in exps):
        raise ValueError(f"need {ctx.k} nonnegative exponents, got {exponents}")
    return GrassClass(ctx, dict(_chern_monomial(ctx.n, ctx.k, exps)))


def reduce(ctx: RingContext, poly: ChernPolynomial) -> GrassClass:
    """Canonical Schubert form of a u-free Chern polynomial."""
    if poly.k != ctx.k:
        raise ValueError(f"polynomial has {poly.k} variables, context needs {ctx.k}")
    if not poly.u_free():
        raise ValueError("polynomial involves u; reduce it in the product ring")
    out: Dict[Partition, Fraction] = {}
    for (exps, _), coef in poly.terms.items():
        for lam, c in _chern_monomial(ctx.n, ctx.k, exps):
            out[lam] = out.get(lam, 0) + coef * c
    return GrassClass(ctx, out)


@lru_cache(maxsize=None)
def h_polynomial(k: int, r: int) -> ChernPolynomial:
    """h_r in c_1..c_k from h_0 = 1, h_r = -sum_{i=1}^{min(r,k)} (-1)^i c_i h_{r-i}."""
    if r < 0:
        return ChernPolynomial(k)
    if r == 0:
        return ChernPolynomial.constant(k)
    out = ChernPolynomial(k)
    for i in range(1, min(r, k) + 1):
        out = out - ChernPolynomial.c(k, i) * h_polynomial(k, r - i) * ((-1) ** i)
    return out


def h_and_cbar(ctx: RingContext, r: int) -> Tuple[ChernPolynomial, GrassClass]:
    """The relation polynomial h_r and the reduced class cbar_r = (-1)^r h_r."""
    if r < 1:
        raise ValueError("r must be positive")
    h = h_polynomial(ctx.k, r)
    return h, reduce(ctx, h).scale((-1) ** r)


def relations(ctx: RingContext) -> List[Tuple[int, ChernPolynomial]]:
    """The defining relations h_{n-k+1}, ..., h_n."""
    return [(r, h_polynomial(ctx.k, r)) for r in range(ctx.n - ctx.k + 1, ctx.n + 1)]


def _determinant(entries: List[List[ChernPolynomial]], k: int) -> ChernPolynomial:
    size = len(entries)
    memo: Dict[Tuple[int, frozenset], ChernPolynomial] = {}

    # Laplace expansion along rows, memoized on the set of used columns
    def rec(row: int, used: frozenset) -> ChernPolynomial:
        if row == size:
            return ChernPolynomial.constant(k)
        key = (row, used)
        if key in memo:
            return memo[key]
        total = ChernPolynomial(k)
        free = [j for j in range(size) if j not in used]
        for pos, j in enumerate(free):
            e = entries[row][j]
            if e.is_zero():
                continue
            # sign of the column among remaining columns
            minor = rec(row + 1, used | {j})
            if minor.is_zero():
                continue
            term = e * minor
            total = total - term if pos % 2 else total + term
        memo[key] = total
        return total

    return rec(0, frozenset())


@lru_cache(maxsize=None)
def _jacobi_trudi(k: int, lam: Partition) -> ChernPolynomial:
    conj = conjugate(lam)
    size = len(conj)
    if size == 0:
        return ChernPolynomial.constant(k)
    entries = [[ChernPolynomial.c(k, conj[i] - i + j) for j in range(size)] for i in range(size)]
    return _determinant(entries, k)


def schur_polynomial(k: int, lam: Sequence[int]) -> ChernPolynomial:
    """Dual Jacobi-Trudi determinant det(c_{lam'_i - i + j}) for any partition."""
    return _jacobi_trudi(k, as_partition(lam))


def jacobi_trudi(ctx: RingContext, lam: Sequence[int]) -> ChernPolynomial:
    """Chern polynomial representing sigma_lam; lam must fit the box."""
    lam = as_partition(lam)
    if not fits(lam, ctx.box):
        raise ValueError(f"{format_partition(lam)} does not fit the {ctx.k}x{ctx.n - ctx.k} box")
    return _jacobi_trudi(ctx.k, lam)


def poincare_dual(ctx: RingContext, lam: Sequence[int]) -> Partition:
    return complement(as_partition(lam), ctx.box)


def pairing(ctx: RingContext, lam: Partition, mu: Partition) -> Fraction:
    """Coefficient of the top class in sigma_lam * sigma_mu."""
    return multiply(sigma(ctx, lam), sigma(ctx, mu)).coefficient(ctx.top)


def pairing_matrix(ctx: RingContext, weight: int) -> RatMatrix:
    rows = ctx.basis(weight)
    cols = ctx.basis(ctx.d - weight)
    return RatMatrix([[pairing(ctx, a, b) for b in cols] for a in rows], len(cols))


def total_chern_class(ctx: RingContext) -> GrassClass:
    out = GrassClass(ctx)
    for i in range(ctx.k + 1):
        out = out + chern_class(ctx, i)
    return out


def cbar_total(ctx: RingContext) -> GrassClass:
    """Total class cbar = c^{-1} = sum_r (-1)^r sigma_(r)."""
    out = GrassClass(ctx)
    for r in range(0, ctx.n - ctx.k + 1):
        out = out + (sigma(ctx, (r,) if r else ())).scale((-1) ** r)
    return out
