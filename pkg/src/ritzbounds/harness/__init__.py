from .campaign import (
    ANGLE_MODELS,
    INVARIANCE_MODES,
    SPECTRUM_MODELS,
    CampaignReport,
    FuzzConfig,
    Instance,
    generate_instance,
    persist_findings,
    replay,
    run_campaign,
)
from .properties import SUITES, property_suites
from .repro import (
    intermediate_instance,
    repro_intermediate_counterexample,
    repro_sharp,
    sharp_instance,
)
from .shrink import ShrinkResult, shrink

__all__ = [
    "ANGLE_MODELS", "INVARIANCE_MODES", "SPECTRUM_MODELS", "CampaignReport", "FuzzConfig",
    "Instance", "generate_instance", "persist_findings", "replay", "run_campaign", "SUITES",
    "property_suites", "intermediate_instance", "repro_intermediate_counterexample",
    "repro_sharp", "sharp_instance", "ShrinkResult", "shrink",
]
