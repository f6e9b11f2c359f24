"""Exact Fourier tables of Siegel Eisenstein series, semi-ordinary
p-stabilization, and Iwasawa-algebra interpolation (C++ core)."""

try:
    from ._siegeleis import *  # noqa: F401,F403  (installed wheel layout)
    from ._siegeleis import __doc__ as _core_doc  # noqa: F401
except ImportError:  # pragma: no cover - build-tree layout
    from _siegeleis import *  # noqa: F401,F403

__all__ = [
    "enumerate_indices",
    "classical_table",
    "stabilized_table",
    "stabilize_via_operator_table",
    "siegel_series",
    "lambda_coefficient_json",
    "kronecker",
    "bernoulli",
    "l_value",
    "smith_normal_form",
    "verify_suite",
]
