"""Measure-space Lp machinery: Fourier-Stieltjes transforms, dual norms,
and inequality verification suites (python bindings over the C++ core)."""

from _mustar import (  # noqa: F401
    BVFunction,
    GridFunction,
    IndexSet,
    Measure,
    NumericalIntegrityError,
    SpecParseError,
    build_limiting_operator,
    cantor_product,
    cantor_staircase,
    check_hausdorff_young,
    check_holder,
    check_young,
    convolve,
    fourier_function,
    fourier_stieltjes,
    hat_norm,
    integrate,
    leading_term,
    lp_norm,
    measure_annihilation_check,
    no_double_support,
    op_norm,
    remainder_l1,
    restricted_star_norm,
    run_suite,
    sinc_constant,
    star_norm,
    star_norm_lower,
    theorem_main_report,
    unitary_dft,
    vp_star_norm,
)

__all__ = [name for name in dir() if not name.startswith("_")]
