from libanyon.contextuality.braiding import braiding_projectors, contextuality_from_braiding, projector_family_model
from libanyon.contextuality.empirical import EmpiricalModel, empirical_from_state
from libanyon.contextuality.kcbs import (
    KCBSConstruction,
    classical_bound,
    functional_value,
    kcbs_functional,
    kcbs_projectors_fibonacci,
    kcbs_value,
    max_state_value,
    uniform_noise_model,
)
from libanyon.contextuality.model_io import dump_model, load_model, model_from_dict, model_to_dict
from libanyon.contextuality.noncontextual import (
    ContextualityVerdict,
    LPCertificate,
    classify_hierarchy,
    global_assignments,
    noncontextual_lp,
)
from libanyon.contextuality.scenario import (
    ContextualityError,
    MeasurementScenario,
    ProjectorSet,
    scenario_from_projectors,
)

__all__ = [
    "ContextualityError",
    "MeasurementScenario",
    "ProjectorSet",
    "scenario_from_projectors",
    "EmpiricalModel",
    "empirical_from_state",
    "global_assignments",
    "LPCertificate",
    "ContextualityVerdict",
    "noncontextual_lp",
    "classify_hierarchy",
    "KCBSConstruction",
    "kcbs_projectors_fibonacci",
    "kcbs_functional",
    "functional_value",
    "kcbs_value",
    "max_state_value",
    "classical_bound",
    "uniform_noise_model",
    "braiding_projectors",
    "contextuality_from_braiding",
    "projector_family_model",
    "load_model",
    "dump_model",
    "model_from_dict",
    "model_to_dict",
]
