"""Exact sphere inner products on polynomial spaces, small-height orthogonal
integer bases, and spherical design checks."""

__version__ = "0.1.0"

from .combinatorics import IndexBasis, dimension, double_factorial, enumerate_multiindices, even_pair_half
from .designs import PointSet, design_check, design_defect, integrate_over_sphere, reference_configuration
from .gram import GramForm, build_form, check_positive_definite, form_height, inner_product
from .heights import (
    SquaredHeight,
    Subspace,
    coordinate_hyperplane,
    dual_hyperplane_height,
    subspace_degree,
    subspace_height,
)
from .moments import (
    moment_coeff,
    moment_gamma_oracle,
    monte_carlo_moment,
    normalized_monomial_moment,
    sphere_area,
)
from .orthogonalizer import (
    OrthogonalCertificate,
    orthogonal_basis,
    orthogonal_basis_sphere,
    radical,
    siegel_basis,
    verify_certificate,
)
from .polynomial import Polynomial, coefficient_vector, height, parse_polynomial, serialize_polynomial
