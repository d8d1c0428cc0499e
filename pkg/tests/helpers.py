"""Shared hypothesis strategies for ring elements."""
from fractions import Fraction

from hypothesis import strategies as st

from grasscoh.grassring import GrassClass, RingContext
from grasscoh.productring import ProductClass, ProductContext

coefficients = st.fractions(min_value=-6, max_value=6, max_denominator=5)

SMALL_CONTEXTS = [(n, k) for n in range(2, 7) for k in range(1, n)]


@st.composite
def contexts(draw, pairs=SMALL_CONTEXTS):
    n, k = draw(st.sampled_from(pairs))
    return RingContext(n, k)


@st.composite
def grass_classes(draw, ctx, weight=None):
    weights = [weight] if weight is not None else range(ctx.d + 1)
    coeffs = {}
    for w in weights:
        for lam in ctx.basis(w):
            if draw(st.booleans()):
                coeffs[lam] = draw(coefficients)
    return GrassClass(ctx, coeffs)


@st.composite
def product_classes(draw, ctx, degree=None):
    if degree is None:
        return ProductClass(ctx, draw(grass_classes(ctx.inner)), draw(grass_classes(ctx.inner)))
    even = grass_classes(ctx.inner, degree // 2) if degree % 2 == 0 else st.just(GrassClass(ctx.inner))
    rest = degree - ctx.m
    upart = grass_classes(ctx.inner, rest // 2) if rest >= 0 and rest % 2 == 0 else st.just(GrassClass(ctx.inner))
    return ProductClass(ctx, draw(even), draw(upart))


def hook_product(rows, cols):
    out = 1
    for i in range(rows):
        for j in range(cols):
            out *= (rows - i - 1) + (cols - j - 1) + 1
    return out


def frac(x):
    return Fraction(x)
