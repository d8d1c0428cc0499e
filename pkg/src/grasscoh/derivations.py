"""Degree-lowering derivations of H*(CG_{n,k}; Q).

A derivation is determined by the images D(c_j), and it descends to the
quotient iff D(h_r) = sum_j (dh_r/dc_j) D(c_j) vanishes for every defining
relation.  That condition is linear in the coefficients of the D(c_j), so
the derivation space is the nullspace of an assembled rational matrix.
Relations h_r with r > n follow from h_{n-k+1..n}, so they are not needed.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

from .chernpoly import ChernPolynomial
from .grassring import GrassClass, RingContext, jacobi_trudi, reduce, relations, sigma
from .linalg import RatMatrix, nullspace, rank
from .partitions import Partition


@dataclass
class LinearSystem:
    unknowns: List[Tuple[int, Partition]]  # (generator index j, basis partition of D(c_j))
    equations: List[Tuple[int, Partition]]  # (relation index r, basis partition of the residue)
    matrix: RatMatrix
    rank: int
    nullspace: List[List[Fraction]]


def assemble_system(ctx: RingContext, drop: int, jacobian) -> LinearSystem:
    """Linear conditions on D(c_1..c_k) in H^{2j-drop} killing every relation.

    ``jacobian(r, j)`` returns the reduced class multiplying D(c_j) in D(h_r).
    """
    unknowns = []
    for j in range(1, ctx.k + 1):
        deg = 2 * j - drop
        if deg >= 0 and deg % 2 == 0:
            unknowns += [(j, lam) for lam in ctx.basis(deg // 2)]
    equations = []
    rel_blocks = []
    for r, _ in relations(ctx):
        deg = 2 * r - drop
        if deg < 0 or deg % 2:
            continue
        basis = ctx.basis(deg // 2)
        if not basis:
            continue
        equations += [(r, lam) for lam in basis]
        rel_blocks.append((r, deg))
    columns = []
    for j, lam in unknowns:
        col = []
        for r, deg in rel_blocks:
            col += (jacobian(r, j) * sigma(ctx, lam)).vector(deg)
        columns.append(col)
    matrix = RatMatrix.from_columns(columns, len(equations)) if unknowns else RatMatrix.zeros(len(equations), 0)
    return LinearSystem(unknowns, equations, matrix, rank(matrix), nullspace(matrix))


def images_from_vector(ctx: RingContext, unknowns, vec: Sequence) -> Tuple[GrassClass, ...]:
    images = [dict() for _ in range(ctx.k)]
    for (j, lam), c in zip(unknowns, vec):
        images[j - 1][lam] = c
    return tuple(GrassClass(ctx, img) for img in images)


@dataclass
class DerivationSpace:
    ctx: RingContext
    drop: int
    dimension: int
    basis: List[Tuple[GrassClass, ...]] = field(default_factory=list)
    system: LinearSystem = None

    def certificate(self) -> dict:
        s = self.system
        return {
            "n": self.ctx.n,
            "k": self.ctx.k,
            "drop": self.drop,
            "unknowns": len(s.unknowns),
            "equations": len(s.equations),
            "rank": s.rank,
            "nullity": len(s.unknowns) - s.rank,
            "dimension": self.dimension,
        }


def derivation_space(ctx: RingContext, drop: int) -> DerivationSpace:
    """Space of Q-derivations of H*(CG_{n,k}) lowering degree by ``drop``."""
    if drop <= 0:
        raise ValueError(f"drop must be positive, got {drop}")
    partials = {}

    def jacobian(r, j):
        key = (r, j)
        if key not in partials:
            h = dict(relations(ctx))[r]
            partials[key] = reduce(ctx, h.partial_derivative(j))
        return partials[key]

    system = assemble_system(ctx, drop, jacobian)
    basis = [images_from_vector(ctx, system.unknowns, v) for v in system.nullspace]
    return DerivationSpace(ctx, drop, len(basis), basis, system)


def apply_derivation(ctx: RingContext, images: Sequence[GrassClass], x: GrassClass) -> GrassClass:
    """Extend generator images by the Leibniz rule through Jacobi-Trudi lifts.

    Only meaningful when the images define a derivation of the quotient.
    """
    out = GrassClass(ctx)
    for lam, coef in x.coeffs.items():
        poly: ChernPolynomial = jacobi_trudi(ctx, lam)
        for j in range(1, ctx.k + 1):
            dp = poly.partial_derivative(j)
            if dp.is_zero() or images[j - 1].is_zero():
                continue
            out = out + (reduce(ctx, dp) * images[j - 1]).scale(coef)
    return out


def leibniz_defect(ctx: RingContext, images: Sequence[GrassClass], x: GrassClass, y: GrassClass) -> GrassClass:
    """D(xy) - D(x) y - x D(y); zero for every pair iff the images define a derivation."""
    return apply_derivation(ctx, images, x * y) - apply_derivation(ctx, images, x) * y - x * apply_derivation(ctx, images, y)
