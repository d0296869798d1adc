"""Exact desk-scale computations in coarse geometry on finitely generated groups."""

from .groups import BudgetExceededError, GroupSpec
from .metrics import (
    HORIZON,
    Entry12Pseudometric,
    InducedMetric,
    MaxEntryMetric,
    MaxEntryNorm,
    QuotientWordMetric,
    ScaledMetric,
    WordMetric,
    WordNorm,
    bornologicity_probe,
    is_horizon,
    max_entry_distance,
    properness_probe,
    rho_plus_truncated,
)
from .bornology import (
    Explicit,
    FullBasis,
    GeneratedBasis,
    GeometricSeed,
    MetricBallsBasis,
    MinimalBasis,
    basis_ops,
    finite_diameter_sets_match,
    member,
    metric_from_basis,
)
from .coarse import (
    BoundedByMetric,
    Entourage,
    EntourageFamily,
    LeftBornological,
    RightBornological,
    bounded_set_check,
    closeness_probe,
    coarse_map_probe,
    compose,
    controlled_probe,
    diagonal,
    invert,
    left_shadow,
    left_translation_invariance_check,
    right_shadow,
    theta_image,
)
from .scenarios import SCENARIOS, ScenarioReport, run_scenario

__version__ = "0.1.0"
