"""H*(S^m x CG_{n,k}; Q) = H*_CG (+) u H*_CG, the involution theta* and its fixed subring.

The Grassmannian factor is evenly graded and u squares to zero, so no Koszul
signs ever arise: (a + u b)(a' + u b') = a a' + u (a b' + a' b).
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .grassring import GrassClass, RingContext, chern_class, format_terms
from .linalg import RatMatrix, rank
from .partitions import Partition


@dataclass(frozen=True)
class ProductContext:
    m: int
    inner: RingContext

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"sphere dimension must be positive, got m={self.m}")

    @classmethod
    def of(cls, m: int, n: int, k: int) -> "ProductContext":
        return cls(m, RingContext(n, k))

    @property
    def n(self) -> int:
        return self.inner.n

    @property
    def k(self) -> int:
        return self.inner.k

    @property
    def d(self) -> int:
        return self.inner.d

    @property
    def dim(self) -> int:
        """Real dimension m + 2d of the product manifold."""
        return self.m + 2 * self.inner.d

    def basis(self, degree: int) -> List[Tuple[Partition, int]]:
        """Canonical basis of the degree slice as (partition, u-flag) pairs.

        Grassmannian classes sigma_lam come first, then u * sigma_lam.
        """
        out = []
        if degree >= 0 and degree % 2 == 0:
            out += [(lam, 0) for lam in self.inner.basis(degree // 2)]
        rest = degree - self.m
        if rest >= 0 and rest % 2 == 0:
            out += [(lam, 1) for lam in self.inner.basis(rest // 2)]
        return out

    def slice_dim(self, degree: int) -> int:
        return len(self.basis(degree))


class ProductClass:
    """An element a + u*b with a, b Grassmannian classes."""

    __slots__ = ("ctx", "even", "upart")

    def __init__(self, ctx: ProductContext, even: GrassClass = None, upart: GrassClass = None):
        self.ctx = ctx
        self.even = even if even is not None else GrassClass(ctx.inner)
        self.upart = upart if upart is not None else GrassClass(ctx.inner)
        if self.even.ctx != ctx.inner or self.upart.ctx != ctx.inner:
            raise ValueError("Grassmannian parts live in a different context")

    @classmethod
    def grass(cls, ctx: ProductContext, a: GrassClass) -> "ProductClass":
        return cls(ctx, a, None)

    @classmethod
    def u_times(cls, ctx: ProductContext, b: GrassClass) -> "ProductClass":
        return cls(ctx, None, b)

    def one(self) -> "ProductClass":
        return unit(self.ctx)

    def zero(self) -> "ProductClass":
        return ProductClass(self.ctx)

    def _check(self, other):
        if not isinstance(other, ProductClass):
            raise TypeError(f"expected ProductClass, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ValueError(f"context mismatch: {self.ctx} vs {other.ctx}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.one().scale(other)
        self._check(other)
        return ProductClass(self.ctx, self.even + other.even, self.upart + other.upart)

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

    def scale(self, q) -> "ProductClass":
        return ProductClass(self.ctx, self.even.scale(q), self.upart.scale(q))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.one().scale(other)
        if not isinstance(other, ProductClass):
            return NotImplemented
        return self.ctx == other.ctx and self.even == other.even and self.upart == other.upart

    def __hash__(self):
        return hash((self.ctx, self.even, self.upart))

    def is_zero(self) -> bool:
        return self.even.is_zero() and self.upart.is_zero()

    def degrees(self) -> set:
        return self.even.degrees() | {d + self.ctx.m for d in self.upart.degrees()}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError(f"class {self} is not homogeneous and nonzero")
        return degs.pop()

    def component(self, degree: int) -> "ProductClass":
        return ProductClass(self.ctx, self.even.component(degree), self.upart.component(degree - self.ctx.m))

    def vector(self, degree: int) -> List[Fraction]:
        """Coordinates of the degree component in the canonical basis."""
        out = []
        for lam, flag in self.ctx.basis(degree):
            part = self.upart if flag else self.even
            out.append(part.coefficient(lam))
        return out

    @classmethod
    def from_vector(cls, ctx: ProductContext, degree: int, vec: Sequence) -> "ProductClass":
        basis = ctx.basis(degree)
        if len(vec) != len(basis):
            raise ValueError("vector length does not match slice dimension")
        even, upart = {}, {}
        for (lam, flag), c in zip(basis, vec):
            (upart if flag else even)[lam] = c
        return cls(ctx, GrassClass(ctx.inner, even), GrassClass(ctx.inner, upart))

    def __str__(self):
        if self.upart.is_zero():
            return str(self.even)
        u_text = "u*(" + format_terms(self.upart.coeffs) + ")"
        if self.even.is_zero():
            return u_text
        return f"{self.even} + {u_text}"

    def __repr__(self):
        c = self.ctx
        return f"ProductClass(m={c.m}, n={c.n}, k={c.k}, {self})"


def unit(ctx: ProductContext) -> ProductClass:
    return ProductClass(ctx, GrassClass(ctx.inner, {(): 1}))


def u_class(ctx: ProductContext) -> ProductClass:
    return ProductClass(ctx, None, GrassClass(ctx.inner, {(): 1}))


def c_class(ctx: ProductContext, i: int) -> ProductClass:
    return ProductClass(ctx, chern_class(ctx.inner, i))


def basis_element(ctx: ProductContext, lam: Partition, flag: int) -> ProductClass:
    g = GrassClass(ctx.inner, {lam: 1})
    return ProductClass(ctx, None, g) if flag else ProductClass(ctx, g)


def multiply(x: ProductClass, y: ProductClass) -> ProductClass:
    x._check(y)
    return ProductClass(x.ctx, x.even * y.even, x.even * y.upart + y.even * x.upart)


def _theta_sign(ctx: ProductContext, lam: Partition, flag: int) -> int:
    sign = (-1) ** sum(lam)
    if flag and ctx.m % 2 == 0:
        sign = -sign
    return sign


def theta_star(x: ProductClass) -> ProductClass:
    """The involution c_i -> (-1)^i c_i, u -> u (m odd) or -u (m even)."""
    ctx = x.ctx
    even = GrassClass(ctx.inner, {lam: c * _theta_sign(ctx, lam, 0) for lam, c in x.even.coeffs.items()})
    upart = GrassClass(ctx.inner, {lam: c * _theta_sign(ctx, lam, 1) for lam, c in x.upart.coeffs.items()})
    return ProductClass(ctx, even, upart)


def theta_eigenvalues(ctx: ProductContext, degree: int) -> List[int]:
    return [_theta_sign(ctx, lam, flag) for lam, flag in ctx.basis(degree)]


def fixed_subring_basis(ctx: ProductContext, degree: int) -> List[ProductClass]:
    """Basis of the +1 eigenspace of theta* in the given degree.

    theta* is diagonal in the canonical basis, so the fixed basis is the set
    of canonical basis vectors with eigenvalue +1.
    """
    return [
        basis_element(ctx, lam, flag)
        for lam, flag in ctx.basis(degree)
        if _theta_sign(ctx, lam, flag) == 1
    ]


def anti_fixed_basis(ctx: ProductContext, degree: int) -> List[ProductClass]:
    return [
        basis_element(ctx, lam, flag)
        for lam, flag in ctx.basis(degree)
        if _theta_sign(ctx, lam, flag) == -1
    ]


def dold_generators(ctx: ProductContext) -> List[ProductClass]:
    """Generators of Fix(theta*) = H*(P(m,n,k); Q) as listed for Dold spaces.

    m even: u c_{2p-1}, c_{2j}, c_{2p-1} c_{2q-1};
    m odd:  u,          c_{2j}, c_{2p-1} c_{2q-1}.
    """
    k = ctx.k
    odd = [i for i in range(1, k + 1) if i % 2]
    even = [i for i in range(1, k + 1) if i % 2 == 0]
    gens = []
    if ctx.m % 2:
        gens.append(u_class(ctx))
    else:
        gens += [u_class(ctx) * c_class(ctx, i) for i in odd]
    gens += [c_class(ctx, j) for j in even]
    gens += [c_class(ctx, p) * c_class(ctx, q) for a, p in enumerate(odd) for q in odd[a:]]
    return [g for g in gens if not g.is_zero()]


def subalgebra_span_dims(generators: Sequence[ProductClass], max_degree: int, ctx: ProductContext = None) -> List[int]:
    """Degreewise dimensions of the unital subalgebra generated by ``generators``.

    Degree q of the subalgebra is spanned by g * s with g a generator of
    degree e > 0 and s in degree q - e, closed up to ``max_degree``.
    """
    gens = [g for g in generators if not g.is_zero()]
    if ctx is None:
        if not generators:
            raise ValueError("need generators or a context")
        ctx = generators[0].ctx
    graded = []
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError(f"generator {g} is not homogeneous")
        graded.append((g.degree(), g))
    one = unit(ctx)
    spans: List[List[ProductClass]] = []
    dims = []
    for q in range(max_degree + 1):
        candidates = [one] if q == 0 else []
        for e, g in graded:
            if e == 0:
                continue
            if e <= q:
                candidates += [g * s for s in spans[q - e]]
        basis = _independent(candidates, q)
        spans.append(basis)
        dims.append(len(basis))
    return dims


def _independent(classes: List[ProductClass], degree: int) -> List[ProductClass]:
    chosen: List[ProductClass] = []
    vecs: List[List[Fraction]] = []
    current = 0
    for c in classes:
        v = c.vector(degree)
        if not any(v):
            continue
        trial = RatMatrix(vecs + [v], len(v))
        r = rank(trial)
        if r > current:
            chosen.append(c)
            vecs.append(v)
            current = r
    return chosen
