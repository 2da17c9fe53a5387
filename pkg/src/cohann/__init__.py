"""Exact computation of stable and cohomology annihilators for hypersurface singularities."""

from .annihilator import (HomotopyCertificate, cohomology_annihilator_catalog, element_test, ext2_annihilator,
                          jacobian_containment_check, stable_annihilator)
from .catalog import a_n_catalog, determinantal_catalog, load_catalog
from .ideal import TruncatedIdeal, ideal_from_generators, minimal_generators, power_containment
from .invariants import (InvariantReport, SemigroupCurve, delta_invariant, frobenius_number, milnor_jung_check,
                         milnor_number, semigroup_gaps, suspension_report)
from .mf import MatrixFactorization, adjugate_partner, knorrer_cover, mf_validate
from .ring import Polynomial, TruncatedLocalAlgebra, build_algebra, normal_form, poly_parse

__version__ = "0.1.0"
