"""Exact rigidity verdicts for Lie subalgebras of vector fields and their foliations."""

from .cecoh import CEComplex, cohomology_dims, family_closure_check, rigidity_verdict
from .forms import DiffForm, defining_one_form, exterior_derivative, frobenius_check, kupka_classify
from .geom import PolyVectorField, bracket_vf, generic_orbit_dim, linear_field, tangent_algebra
from .liecore import GModule, LieAlgebra, Subalgebra, sl, sl2_sym_power, validate
from .poly import MultiPoly, parse_poly
from .qlinalg import QMatrix, kernel_basis, rank

__version__ = "0.1.0"

__all__ = [
    "CEComplex",
    "DiffForm",
    "GModule",
    "LieAlgebra",
    "MultiPoly",
    "PolyVectorField",
    "QMatrix",
    "Subalgebra",
    "bracket_vf",
    "cohomology_dims",
    "defining_one_form",
    "exterior_derivative",
    "family_closure_check",
    "frobenius_check",
    "generic_orbit_dim",
    "kernel_basis",
    "kupka_classify",
    "linear_field",
    "parse_poly",
    "rank",
    "rigidity_verdict",
    "sl",
    "sl2_sym_power",
    "tangent_algebra",
    "validate",
]
