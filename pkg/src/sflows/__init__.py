"""Counting nowhere-zero Z_q-flows on pure simplicial complexes."""

from .boundary import BoundaryMatrix, boundary_matrix, cone_ordering
from .complex import SimplicialComplex, cone_apex, cone_over, deletion, link, load_complex, parse_complex, ridges
from .fixtures import fixture_names, load_fixture
from .flows import (
    FlowCount,
    brute_force_count,
    degree_check,
    flow_polynomial,
    inclusion_exclusion_count,
    kernel_profile,
    verify_flow,
)
from .homology import betti_top, classify_manifold, manifold_flow_count, top_homology_mod_q, top_homology_Z
from .matroid import BivariatePolynomial, column_matroid, tg_evaluate, tutte
from .quasipoly import Quasipolynomial, coprime_agreement, fit

__version__ = "0.1.0"
