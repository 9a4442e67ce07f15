"""Cohomology of discriminantal arrangement complements: Orlik-Solomon
complexes, Fox-calculus resolutions of the complement group, and rank-one
local systems."""

from .combinatorics import ArrangementParams, ParameterError, dims, enumerate_basis, hyperplane_pairs, weight_vector
from .cohomology import (
    local_betti,
    os_betti,
    resonance_membership,
    resonance_scan,
    sandwich_check,
    tangent_cone_probe,
    verify_linearization,
)
from .orlik_solomon import mu, mu_closed_form, mu_naive
from .resolution import assemble_boundary_group, boundary_derivative, boundary_eval, cochain_matrix

__version__ = "0.1.0"
