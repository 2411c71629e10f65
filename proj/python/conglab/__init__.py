"""Exact N-congruence tests for elliptic curves and the Z(12,r) surfaces.

All rationals cross the boundary as "p/q" strings so nothing is ever rounded.
"""

from ._core import (  # noqa: F401
    BadParameterError,
    ChainPoleError,
    DegenerateJError,
    NotASquareError,
    UnsupportedError,
    __version__,
    ap,
    ap_scan,
    family_pair,
    hecke_membership,
    invariants,
    is_square,
    jpair,
    non_isogeny_witness,
    on_surface,
    quadratic_twist,
    resolve_twist,
    search,
    surface_value,
    test_congruence,
    verify_biinvariance,
    verify_jmap,
    verify_klein,
    verify_square_class,
    verify_surfaces,
)
