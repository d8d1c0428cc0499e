import pytest
from hypothesis import given, settings, strategies as st

from grasscoh.grassring import GrassClass, sigma
from grasscoh.productring import (
    ProductClass,
    ProductContext,
    anti_fixed_basis,
    basis_element,
    c_class,
    dold_generators,
    fixed_subring_basis,
    subalgebra_span_dims,
    theta_eigenvalues,
    theta_star,
    u_class,
    unit,
)

from helpers import product_classes


def test_context_validation():
    with pytest.raises(ValueError):
        ProductContext.of(0, 4, 2)
    ctx = ProductContext.of(2, 4, 2)
    assert ctx.dim == 10
    assert ctx.basis(2) == [((1,), 0), ((), 1)]
    assert ctx.slice_dim(4) == 3


def test_u_squares_to_zero():
    ctx = ProductContext.of(3, 4, 2)
    u = u_class(ctx)
    assert (u * u).is_zero()
    x = unit(ctx) + u
    assert x * (unit(ctx) - u) == unit(ctx)


def test_printing():
    ctx = ProductContext.of(2, 4, 2)
    x = c_class(ctx, 1) + u_class(ctx) * c_class(ctx, 1).scale(3)
    assert str(x) == "s[1] + u*(3*s[1])"
    assert str(u_class(ctx)) == "u*(1)"


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_theta_is_an_involutive_ring_map(m):
    ctx = ProductContext.of(m, 4, 2)
    for q in range(ctx.dim + 1):
        for lam, flag in ctx.basis(q):
            x = basis_element(ctx, lam, flag)
            assert theta_star(theta_star(x)) == x
    c1, u = c_class(ctx, 1), u_class(ctx)
    assert theta_star(c1) == -c1
    assert theta_star(u) == (u if m % 2 else -u)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_theta_multiplicative(data):
    ctx = ProductContext.of(data.draw(st.integers(1, 4)), 5, 2)
    x = data.draw(product_classes(ctx))
    y = data.draw(product_classes(ctx))
    assert theta_star(x * y) == theta_star(x) * theta_star(y)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_vector_round_trip(data):
    ctx = ProductContext.of(data.draw(st.integers(1, 4)), 5, 2)
    q = data.draw(st.integers(0, ctx.dim))
    x = data.draw(product_classes(ctx, q))
    assert ProductClass.from_vector(ctx, q, x.vector(q)) == x


def test_fixed_and_anti_bases_partition_each_slice():
    ctx = ProductContext.of(2, 5, 2)
    for q in range(ctx.dim + 1):
        fixed = fixed_subring_basis(ctx, q)
        anti = anti_fixed_basis(ctx, q)
        assert len(fixed) + len(anti) == ctx.slice_dim(q)
        assert len(fixed) == theta_eigenvalues(ctx, q).count(1)
        for b in fixed:
            assert theta_star(b) == b


def test_dold_generators_are_fixed():
    for m in (1, 2, 3, 4):
        ctx = ProductContext.of(m, 6, 3)
        for g in dold_generators(ctx):
            assert theta_star(g) == g


def test_span_dims_example():
    # CP^3 with m = 1: Q[u, b]/(u^2, b^2), b = c_1^2 in degree 4
    ctx = ProductContext.of(1, 4, 1)
    dims = subalgebra_span_dims(dold_generators(ctx), ctx.dim, ctx)
    assert dims == [1, 1, 0, 0, 1, 1, 0, 0]


def test_product_rejects_other_context():
    a = ProductContext.of(2, 4, 2)
    b = ProductContext.of(2, 5, 2)
    with pytest.raises(ValueError):
        unit(a) * unit(b)
    with pytest.raises(ValueError):
        ProductClass(a, GrassClass(b.inner))
