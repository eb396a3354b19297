"""Exact spin-correlation and permutation-statistics kernels.

Exact results come back as ``fractions.Fraction``; radicals as strings such
as ``"1/2*sqrt(2)"``. Angles accept strings (``"2pi/3"``), ints or Fractions
(multiples of pi) and floats (radians).
"""

from ._core import (
    SCHEMA_VERSION,
    Ket,
    SpinstatError,
    antisymmetrize,
    bell_grid_search,
    bell_inequality,
    cg_table,
    chi_square,
    classify_expansion,
    classify_ket,
    compare_with_cg,
    conditional_given_total,
    invariance_signature,
    is_isc,
    is_rotationally_invariant,
    joint_distribution,
    ket,
    make_state,
    photon_table,
    run_cli,
    simulate_beam,
    spinor,
    symmetrize,
    verify_rescaled_algebra,
    wigner_argument,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "1.0.0"
