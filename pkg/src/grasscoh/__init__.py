"""Exact rational cohomology of complex Grassmannians, S^m x CG_{n,k} and
generalized Dold spaces, with graded endomorphisms and Lefschetz
coincidence numbers."""
from .coincidence import (
    betti,
    coincidence_criteria,
    euler_real,
    lefschetz_closed_grass,
    lefschetz_closed_product,
    lefschetz_trace,
    nonvanishing_certificate,
    weighted_sum,
)
from .derivations import derivation_space
from .endo import (
    GradedEndo,
    classify,
    compose,
    extension_nullspace,
    is_well_defined,
    make_adams,
    make_complement,
    make_u_family,
    matrix_of,
)
from .expr import parse, parse_class
from .grassring import GrassClass, RingContext, jacobi_trudi, reduce, sigma
from .partitions import gaussian_binomial, lr_coefficients
from .productring import ProductClass, ProductContext, theta_star

__version__ = "0.1.0"
