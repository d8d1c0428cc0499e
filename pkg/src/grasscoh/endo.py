"""Graded endomorphisms of H*_x = H*(S^m x CG_{n,k}; Q).

An endomorphism is stored by the images of the generators c_1..c_k and u.
It extends to the whole ring exactly when every defining relation
(h_{n-k+1}, ..., h_n and u^2) maps to zero, and is applied to a Schubert
class by evaluating its Jacobi-Trudi polynomial on the generator images.
"""
import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .chernpoly import ChernPolynomial, evaluate
from .derivations import assemble_system, images_from_vector
from .grassring import GrassClass, RingContext, h_and_cbar, jacobi_trudi, reduce, relations, sigma
from .linalg import RatMatrix, rank
from .partitions import Partition
from .productring import (
    ProductClass,
    ProductContext,
    basis_element,
    c_class,
    theta_star,
    u_class,
    unit,
)


class CounterexampleWarning(UserWarning):
    """A well-defined endomorphism escaped every family of the classification."""


def homer_hypothesis(n: int, k: int) -> bool:
    """k <= 3 and n > 2k, or k > 3 and n > 2k^2 - 1."""
    return (k <= 3 and n > 2 * k) or (k > 3 and n > 2 * k * k - 1)


class GradedEndo:
    """Generator images of a graded endomorphism; immutable after construction."""

    __slots__ = ("ctx", "c_images", "u_image", "_memo")

    def __init__(self, ctx: ProductContext, c_images: Sequence[ProductClass], u_image: ProductClass):
        c_images = tuple(c_images)
        if len(c_images) != ctx.k:
            raise ValueError(f"need {ctx.k} images for c_1..c_k, got {len(c_images)}")
        for i, img in enumerate(c_images, start=1):
            if img.ctx != ctx:
                raise ValueError("generator image lives in another context")
            if not img.is_zero() and img.degrees() != {2 * i}:
                raise ValueError(f"image of c_{i} must be homogeneous of degree {2 * i}, got {img}")
        if u_image.ctx != ctx:
            raise ValueError("image of u lives in another context")
        if not u_image.is_zero() and u_image.degrees() != {ctx.m}:
            raise ValueError(f"image of u must be homogeneous of degree {ctx.m}, got {u_image}")
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "c_images", c_images)
        object.__setattr__(self, "u_image", u_image)
        object.__setattr__(self, "_memo", {})

    def __setattr__(self, name, value):
        raise AttributeError("GradedEndo is immutable")

    def __eq__(self, other):
        if not isinstance(other, GradedEndo):
            return NotImplemented
        return (self.ctx, self.c_images, self.u_image) == (other.ctx, other.c_images, other.u_image)

    def __hash__(self):
        return hash((self.ctx, self.c_images, self.u_image))

    def __repr__(self):
        imgs = ", ".join(f"c{i + 1} -> {img}" for i, img in enumerate(self.c_images))
        return f"GradedEndo({imgs}, u -> {self.u_image})"

    def to_json(self) -> dict:
        return {"c": [str(img) for img in self.c_images], "u": str(self.u_image)}


# -- constructors -------------------------------------------------------

def from_images(ctx: ProductContext, c_images: Sequence[ProductClass], u_image: ProductClass) -> GradedEndo:
    return GradedEndo(ctx, c_images, u_image)


def make_adams(ctx: ProductContext, lam, mu) -> GradedEndo:
    """c_i -> lam^i c_i and u -> mu u."""
    lam, mu = Fraction(lam), Fraction(mu)
    return GradedEndo(ctx, [c_class(ctx, i).scale(lam ** i) for i in range(1, ctx.k + 1)], u_class(ctx).scale(mu))


def identity(ctx: ProductContext) -> GradedEndo:
    return make_adams(ctx, 1, 1)


def make_complement(ctx: ProductContext, lam, mu) -> GradedEndo:
    """c_i -> (-lam)^i (c^{-1})_i and u -> mu u.

    (c^{-1})_i is cbar_i = (-1)^i h_i, so the image reduces to lam^i sigma_(i).
    """
    lam, mu = Fraction(lam), Fraction(mu)
    images = []
    for i in range(1, ctx.k + 1):
        _, cbar = h_and_cbar(ctx.inner, i)
        images.append(ProductClass(ctx, cbar.scale((-lam) ** i)))
    return GradedEndo(ctx, images, u_class(ctx).scale(mu))


def make_u_family(ctx: ProductContext, P: Sequence[GrassClass], Q: ProductClass) -> GradedEndo:
    """c_i -> u P_i and u -> Q, with Q = a u or a square-zero Grassmannian class."""
    if len(P) != ctx.k:
        raise ValueError(f"need {ctx.k} classes P_i, got {len(P)}")
    for i, p in enumerate(P, start=1):
        if not p.is_zero() and p.degrees() != {2 * i - ctx.m}:
            raise ValueError(f"P_{i} must have degree {2 * i - ctx.m}, got {p}")
    if not Q.even.is_zero():
        if not Q.upart.is_zero():
            raise ValueError("Q must be a multiple of u or a Grassmannian class, not a mixture")
        if not (Q * Q).is_zero():
            raise ValueError(f"Q^2 != 0 (Q = {Q}); phi(u)^2 must vanish")
    images = [ProductClass.u_times(ctx, p) for p in P]
    return GradedEndo(ctx, images, Q)


def theta_endo(ctx: ProductContext) -> GradedEndo:
    """The involution theta* as an endomorphism."""
    return GradedEndo(
        ctx,
        [theta_star(c_class(ctx, i)) for i in range(1, ctx.k + 1)],
        theta_star(u_class(ctx)),
    )


# -- well-definedness ---------------------------------------------------

@dataclass
class EndoVerdict:
    well_defined: bool
    failing_relation: Optional[str] = None
    residue: Optional[ProductClass] = None
    residues: Dict[str, ProductClass] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "well_defined": self.well_defined,
            "failing_relation": self.failing_relation,
            "residue": None if self.residue is None else str(self.residue),
        }


def relation_residues(phi: GradedEndo) -> Dict[str, ProductClass]:
    """Images of each defining relation under phi."""
    out = {}
    for r, h in relations(phi.ctx.inner):
        out[f"h_{r}"] = evaluate(h, phi.c_images, phi.u_image)
    out["u^2"] = phi.u_image * phi.u_image
    return out


def is_well_defined(phi: GradedEndo) -> EndoVerdict:
    if "verdict" in phi._memo:
        return phi._memo["verdict"]
    residues = relation_residues(phi)
    verdict = EndoVerdict(True, residues=residues)
    for name, res in residues.items():
        if not res.is_zero():
            verdict = EndoVerdict(False, name, res, residues)
            break
    phi._memo["verdict"] = verdict
    return verdict


# -- application --------------------------------------------------------

def _schubert_image(phi: GradedEndo, lam: Partition) -> ProductClass:
    cache = phi._memo.setdefault("schubert", {})
    if lam not in cache:
        poly = jacobi_trudi(phi.ctx.inner, lam)
        cache[lam] = evaluate(poly, phi.c_images, phi.u_image, one=unit(phi.ctx))
    return cache[lam]


def apply(phi: GradedEndo, x: ProductClass) -> ProductClass:
    """phi(x) for any class; undefined behaviour if phi is not well defined."""
    if x.ctx != phi.ctx:
        raise ValueError(f"context mismatch: {x.ctx} vs {phi.ctx}")
    out = ProductClass(phi.ctx)
    for lam, c in x.even.coeffs.items():
        out = out + _schubert_image(phi, lam).scale(c)
    if not x.upart.is_zero():
        tail = ProductClass(phi.ctx)
        for lam, c in x.upart.coeffs.items():
            tail = tail + _schubert_image(phi, lam).scale(c)
        out = out + phi.u_image * tail
    return out


def apply_poly(phi: GradedEndo, poly: ChernPolynomial) -> ProductClass:
    return evaluate(poly, phi.c_images, phi.u_image, one=unit(phi.ctx))


def compose(phi: GradedEndo, psi: GradedEndo) -> GradedEndo:
    """phi o psi (psi applied first)."""
    if phi.ctx != psi.ctx:
        raise ValueError("cannot compose endomorphisms of different rings")
    return GradedEndo(phi.ctx, [apply(phi, img) for img in psi.c_images], apply(phi, psi.u_image))


def matrix_of(phi: GradedEndo, degree: int) -> RatMatrix:
    """Matrix on the degree slice; column j is the image of basis vector j."""
    cache = phi._memo.setdefault("matrix", {})
    if degree not in cache:
        ctx = phi.ctx
        basis = ctx.basis(degree)
        cols = [apply(phi, basis_element(ctx, lam, flag)).vector(degree) for lam, flag in basis]
        cache[degree] = RatMatrix.from_columns(cols, len(basis)) if basis else RatMatrix.zeros(0, 0)
    return cache[degree]


def is_automorphism(phi: GradedEndo) -> bool:
    """Degreewise invertibility (needs phi well defined)."""
    for q in range(phi.ctx.dim + 1):
        mat = matrix_of(phi, q)
        if rank(mat) != mat.rows:
            return False
    return True


def restricts_to_fixed(phi: GradedEndo) -> bool:
    """True iff phi commutes with theta*, hence preserves Fix(theta*)."""
    th = theta_endo(phi.ctx)
    return compose(th, phi) == compose(phi, th)


def preserves_grassmannian(phi: GradedEndo) -> bool:
    """phi(H*_CG) is contained in H*_CG."""
    return all(img.upart.is_zero() for img in phi.c_images)


# -- classification -----------------------------------------------------

@dataclass
class Classification:
    kind: str  # adams | complement | u_family | sphere_to_grass | unclassified
    lam: Optional[Fraction] = None
    u_kind: str = "zero"  # scalar | grass_square_zero | zero
    mu: Optional[Fraction] = None
    relies_on_homer: bool = False
    homer_holds: Optional[bool] = None
    witness: Optional[str] = None

    def label(self) -> str:
        if self.kind == "adams":
            return f"adams({self.lam})"
        if self.kind == "complement":
            return f"complement({-self.lam})"
        return self.kind

    def u_label(self) -> str:
        return f"scalar({self.mu})" if self.u_kind == "scalar" else self.u_kind

    def __str__(self):
        return f"{self.label()}, u: {self.u_label()}"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "label": self.label(),
            "lambda": None if self.lam is None else str(self.lam),
            "u_kind": self.u_kind,
            "u_label": self.u_label(),
            "mu": None if self.mu is None else str(self.mu),
            "relies_on_homer": self.relies_on_homer,
            "homer_holds": self.homer_holds,
            "witness": self.witness,
        }


def _classify_u(phi: GradedEndo) -> Tuple[str, Optional[Fraction]]:
    img = phi.u_image
    if img.is_zero():
        return "zero", None
    if img.even.is_zero():
        # degree m forces the u-part to be a multiple of the unit
        return "scalar", img.upart.coefficient(())
    return "grass_square_zero", None


def classify(phi: GradedEndo) -> Classification:
    verdict = is_well_defined(phi)
    if not verdict.well_defined:
        raise ValueError(f"endomorphism is not well defined: {verdict.failing_relation} -> {verdict.residue}")
    ctx = phi.ctx
    u_kind, mu = _classify_u(phi)
    homer = homer_hypothesis(ctx.n, ctx.k)

    if all(img.even.is_zero() for img in phi.c_images):
        if all(img.is_zero() for img in phi.c_images) and u_kind == "grass_square_zero":
            return Classification("sphere_to_grass", None, u_kind, mu, True, homer)
        return Classification("u_family", None, u_kind, mu, True, homer)

    lam = phi.c_images[0].even.coefficient((1,))
    if lam != 0:
        adams = make_adams(ctx, lam, 0).c_images
        if all(a == b for a, b in zip(phi.c_images, adams)):
            return Classification("adams", lam, u_kind, mu)
        comp = make_complement(ctx, lam, 0).c_images
        if all(a == b for a, b in zip(phi.c_images, comp)):
            return Classification("complement", lam, u_kind, mu)
        bad = next(i for i, (a, b) in enumerate(zip(phi.c_images, adams), start=1) if a != b)
        witness = f"c_{bad} -> {phi.c_images[bad - 1]}, expected {adams[bad - 1]} (Adams) or {comp[bad - 1]} (complement)"
    else:
        witness = f"c_1 -> {phi.c_images[0]} is neither a nonzero multiple of c_1 nor in Q u"
    warnings.warn(f"well-defined endomorphism outside every family: {witness}", CounterexampleWarning, stacklevel=2)
    return Classification("unclassified", None, u_kind, mu, witness=witness)


# -- extension nullspace ------------------------------------------------

@dataclass
class ExtensionResult:
    ctx: ProductContext
    lam: Fraction
    dimension: int
    basis: List[Tuple[GrassClass, ...]]
    unknowns: int
    equations: int
    rank: int

    def to_json(self) -> dict:
        return {
            "m": self.ctx.m,
            "n": self.ctx.n,
            "k": self.ctx.k,
            "lambda": str(self.lam),
            "unknowns": self.unknowns,
            "equations": self.equations,
            "rank": self.rank,
            "dimension": self.dimension,
            "basis": [[str(p) for p in sol] for sol in self.basis],
        }


def extension_nullspace(ctx: ProductContext, lam) -> ExtensionResult:
    """Solutions (P_1..P_k) making c_i -> lam^i c_i + u P_i well defined.

    Because u^2 = 0, phi(h_r) = lam^r h_r + u sum_j (dh_r/dc_j)(lam c) P_j and
    the first term already vanishes, so the conditions are linear in the P_j.
    """
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    inner = ctx.inner
    scales = [lam ** i for i in range(1, ctx.k + 1)]
    rel = dict(relations(inner))
    partials = {}

    def jacobian(r, j):
        if (r, j) not in partials:
            dh = rel[r].partial_derivative(j).substitute_scaled(scales)
            partials[(r, j)] = reduce(inner, dh)
        return partials[(r, j)]

    system = assemble_system(inner, ctx.m, jacobian)
    basis = [images_from_vector(inner, system.unknowns, v) for v in system.nullspace]
    return ExtensionResult(ctx, lam, len(basis), basis, len(system.unknowns), len(system.equations), system.rank)


def extension_endo(ctx: ProductContext, lam, P: Sequence[GrassClass], mu=1) -> GradedEndo:
    """c_i -> lam^i c_i + u P_i, u -> mu u."""
    lam = Fraction(lam)
    images = [
        ProductClass(ctx, c_class(ctx, i).even.scale(lam ** i), P[i - 1])
        for i in range(1, ctx.k + 1)
    ]
    return GradedEndo(ctx, images, u_class(ctx).scale(mu))


# -- JSON ---------------------------------------------------------------

def endo_from_json(ctx: ProductContext, data) -> GradedEndo:
    """Build an endomorphism from ``{"c": [<class>, ...], "u": <class>}``."""
    from .expr import parse_class

    if isinstance(data, str):
        data = json.loads(data)
    if "c" not in data or "u" not in data:
        raise ValueError('endomorphism JSON needs "c" and "u" keys')
    images = [parse_class(text, ctx) for text in data["c"]]
    return GradedEndo(ctx, images, parse_class(data["u"], ctx))
