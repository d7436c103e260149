import json
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import tomli
import yaml
from pydantic import BaseConfig, BaseModel, root_validator, validator

from libanyon.message_numbers import TRACE_NORMALIZATIONS
from libanyon.utils.specs_checkers import (
    BUILTIN_NAME_RE,
    _check_category_source,
    _check_contextuality_mode,
    _check_fusion_entries,
    _check_label_ids,
    _check_model_structure,
    _check_scenario_source,
    _check_symbol_keys,
)

_UNRECOGNIZED_ERR = "Unrecognized field. Check closely for typos, or libAnyon's DESIGN.md for the file formats"
_BUILTIN_ERR = "Unknown builtin category. Use 'fibonacci', 'ising', or 'su2k:<k>'"
_POSITIVE_ERR = "Tolerances must be positive"
_FORMAT_ERR = "Output format must be 'text' or 'json'"
_NORMALIZATION_ERR = "Normalization must be one of " + ", ".join(TRACE_NORMALIZATIONS)

BaseConfig.arbitrary_types_allowed = True
BaseConfig.allow_population_by_field_name = True
BaseConfig.extra = "forbid"
BaseConfig.error_msg_templates = {
    "value_error.extra": _UNRECOGNIZED_ERR,
}
BaseConfig.validate_assignment = True

__all__ = ["LabelSpecs", "FEntry", "REntry", "TwistEntry", "CategorySpecs", "ModelSpecs", "RunConfig"]


class LabelSpecs(BaseModel):
    """One simple object of a category file"""

    id: int
    name: str
    dual: int


class FEntry(BaseModel):
    """[F^{abc}_d]_{ef} as a re/im pair"""

    a: int
    b: int
    c: int
    d: int
    e: int
    f: int
    re: float
    im: float


class REntry(BaseModel):
    """R^{ab}_c as a re/im pair"""

    a: int
    b: int
    c: int
    re: float
    im: float


class TwistEntry(BaseModel):
    a: int
    re: float
    im: float


class CategorySpecs(BaseModel):
    """
    Category JSON file. Fusion entries are ``[a, b, c, N]`` quadruples with
    zeros omitted; F, R and twist values are ``{re, im}`` pairs. When
    ``twists`` is empty the twists are derived from the R-symbols.
    """

    name: Optional[str] = None
    labels: List[LabelSpecs]
    unit: int
    fusion: List[Tuple[int, int, int, int]]
    F: List[FEntry] = []
    R: List[REntry] = []
    twists: List[TwistEntry] = []

    @root_validator(skip_on_failure=True)
    def check_label_ids(cls, values):
        return _check_label_ids(values)

    @root_validator(skip_on_failure=True)
    def check_fusion_entries(cls, values):
        return _check_fusion_entries(values)

    @root_validator(skip_on_failure=True)
    def check_symbol_keys(cls, values):
        return _check_symbol_keys(values)


class ModelSpecs(BaseModel):
    """
    Scenario/model JSON file. ``tables`` maps a context index to
    ``{"o1,o2,...": probability}`` with outcomes in the context's order;
    outcome tuples not listed have probability zero.
    """

    measurements: List[str]
    outcomes: Dict[str, List[str]]
    contexts: List[List[str]]
    tables: Dict[int, Dict[str, float]]

    @root_validator(skip_on_failure=True)
    def check_model_structure(cls, values):
        return _check_model_structure(values)


class RunConfig(BaseModel):
    """
    One CLI invocation. Built from parsed arguments, optionally on top of a
    ``--config`` file (YAML, TOML or JSON) whose keys are these field names.
    """

    command: str
    subcommand: Optional[str] = None

    builtin: Optional[str] = None
    """Builtin category: ``fibonacci``, ``ising`` or ``su2k:<k>``"""

    file: Optional[Path] = None
    """Category file (category/rep commands, contextuality --braiding) or model file"""

    output: Optional[Path] = None
    """Where ``category dump`` writes; stdout when unset"""

    config: Optional[Path] = None

    tol: float = 1e-10
    """Axiom, relation and unitarity tolerance"""

    lp_tol: float = 1e-7
    """Noncontextuality LP tolerance on the total-variation distance"""

    support_tol: float = 1e-9
    """Probabilities above this are in the support"""

    compat_tol: float = 1e-9
    """Marginal agreement required on context overlaps"""

    commute_tol: float = 1e-8
    """Commutator max-entry bound for commutation-graph edges"""

    format: str = "text"
    seed: int = 0

    n: Optional[int] = None
    """Number of strands (leaves)"""

    total: Optional[str] = None
    leaf: Optional[str] = None
    word: str = ""
    words: List[str] = []
    """Braid words generating the projector family of contextuality --braiding"""

    base: int = 0
    """Fusion basis vector the base projector of contextuality --braiding projects on"""

    kcbs_fibonacci: bool = False
    braiding: bool = False
    normalization: str = "unknot"
    log_level: str = "INFO"
    log_file: Optional[Path] = None

    @validator("builtin")
    def check_builtin_name(cls, value):
        if value is not None and not BUILTIN_NAME_RE.match(value):
            raise ValueError(_BUILTIN_ERR)
        return value

    @validator("tol", "lp_tol", "support_tol", "compat_tol", "commute_tol")
    def check_positive(cls, value):
        if not value > 0:
            raise ValueError(_POSITIVE_ERR)
        return value

    @validator("format")
    def check_format(cls, value):
        if value not in ("text", "json"):
            raise ValueError(_FORMAT_ERR)
        return value

    @validator("normalization")
    def check_normalization(cls, value):
        if value not in TRACE_NORMALIZATIONS:
            raise ValueError(_NORMALIZATION_ERR)
        return value

    @validator("n")
    def check_strands(cls, value):
        if value is not None and value < 1:
            raise ValueError("Number of strands must be at least 1")
        return value

    @root_validator(skip_on_failure=True)
    def check_category_source(cls, values):
        return _check_category_source(values)

    @root_validator(skip_on_failure=True)
    def check_contextuality_mode(cls, values):
        return _check_contextuality_mode(values)

    @root_validator(skip_on_failure=True)
    def check_scenario_source(cls, values):
        return _check_scenario_source(values)

    @classmethod
    def from_args(cls, parsed: dict) -> "RunConfig":
        """Merge explicit CLI values over an optional --config file."""
        given = {k: v for k, v in parsed.items() if v is not None}
        if given.get("config"):
            loaded = load_config_file(given["config"])
            given = {**loaded, **given}
        return cls.parse_obj(given)


def load_config_file(file_path: str) -> dict:
    """Read run defaults from a ``.yaml``/``.yml``, ``.toml`` or ``.json`` file"""
    suffix = Path(file_path).suffix.lower()
    if suffix in (".yaml", ".yml"):
        with open(file_path, "r") as f:
            loaded = yaml.safe_load(f)
    elif suffix == ".toml":
        with open(file_path, "rb") as f:
            loaded = tomli.load(f)
    elif suffix == ".json":
        with open(file_path, "rb") as f:
            loaded = json.load(f)
    else:
        raise ValueError(f"Unsupported config file type {suffix!r}; use yaml, toml or json")
    if not isinstance(loaded, dict):
        raise ValueError(f"Config file {file_path} must hold a mapping of option names to values")
    return {k.replace("-", "_"): v for k, v in loaded.items()}
