"""
Model files
===========

JSON layout::

    {
      "measurements": ["a0", "a1", ...],
      "outcomes": {"a0": ["0", "1"], ...},
      "contexts": [["a0", "b0"], ...],
      "tables": {"0": {"0,0": 0.5, "1,1": 0.5}, ...}
    }

Outcome tuples are comma-joined in the context's measurement order; tuples
that are not listed have probability zero.
"""

import json
import logging
from pathlib import Path
from typing import Optional, Union

from libanyon.contextuality.empirical import EmpiricalModel, model_from_events, table_events
from libanyon.contextuality.scenario import MeasurementScenario
from libanyon.specs import ModelSpecs

logger = logging.getLogger(__name__)


def model_from_dict(data: dict) -> EmpiricalModel:
    """Validate with :class:`~libanyon.specs.ModelSpecs` and build the model."""
    specs = ModelSpecs.parse_obj(data)
    scenario = MeasurementScenario(
        measurements=tuple(specs.measurements),
        contexts=tuple(tuple(ctx) for ctx in specs.contexts),
        outcomes={m: tuple(outs) for m, outs in specs.outcomes.items()},
    )
    return model_from_events(scenario, specs.tables)


def model_to_dict(model: EmpiricalModel) -> dict:
    scenario = model.scenario
    return {
        "measurements": list(scenario.measurements),
        "outcomes": {m: list(scenario.outcomes[m]) for m in scenario.measurements},
        "contexts": [list(ctx) for ctx in scenario.contexts],
        "tables": {str(ci): table_events(model, ci) for ci in range(len(scenario.contexts))},
    }


def dump_model(model: EmpiricalModel, path: Optional[Union[str, Path]] = None) -> str:
    """Serialize; also write to ``path`` when given. Returns the text."""
    text = json.dumps(model_to_dict(model), indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text)
        logger.info(f"Wrote model to {path}")
    return text


def load_model(path: Union[str, Path]) -> EmpiricalModel:
    with open(path, "r") as f:
        data = json.load(f)
    logger.debug(f"Loaded model file {path}")
    return model_from_dict(data)
