"""Catalog loading, classification runs and report output."""

from .catalog import (
    Catalog,
    CatalogParseError,
    CatalogValidationError,
    InvolutionLabel,
    OutsideCatalogWarning,
    load_catalog,
    parse_catalog,
)
from .classify import ClassificationReport, run_classification
from .report import emit_reports
