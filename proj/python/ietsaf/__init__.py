"""Exact interval exchange transformations: SAF invariant, G_per / G_1 membership,
rotation factorization and first-return induction."""

from ._ietsaf import (  # noqa: F401
    Context,
    IetError,
    Iet,
    Scalar,
    WedgeElement,
    compose,
    conjugate_affine,
    factor,
    find_g1_inducing_subinterval,
    in_K_of,
    induce,
    inverse,
    keane_check,
    member_g1,
    member_gper,
    order,
    rank,
    rotation_with_saf,
    saf,
    saf_3iet_closed_form,
    set_precision_cap,
    to_cells,
    wedge,
)

__version__ = "0.1.0"
