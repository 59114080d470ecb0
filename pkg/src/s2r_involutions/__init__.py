"""Free involutions on the closed S^2 x R 3-manifolds and their Borsuk-Ulam Z/2-index."""

from .buindex import IndexDecision, Witness, bu_index, closed_form_index, cross_check, factors_through_Z
from .covers import (
    CoveringRecord,
    ManifoldModel,
    equivalence_orbits,
    identify_cover,
    reidemeister_schreier_index2,
    verify_stated_kernel,
)
from .pipeline import load_catalog
from .pipeline.classify import run_classification

__version__ = "0.1.0"
