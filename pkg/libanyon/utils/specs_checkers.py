"""
Validation helpers for the models in specs.py, kept here to keep that
module readable. Assertion failures surface as pydantic validation errors.
"""

import logging
import re

logger = logging.getLogger(__name__)

MAX_LABELS = 16
BUILTIN_NAME_RE = re.compile(r"^(fibonacci|ising|su2k:(\d+))$")

# Commands that need a category source
CATEGORY_COMMANDS = ("category", "rep")


def _check_label_ids(values: dict) -> dict:
    labels = values.get("labels")
    if labels is None:
        return values
    n = len(labels)
    assert 1 <= n <= MAX_LABELS, f"Categories need 1 to {MAX_LABELS} labels, got {n}"
    assert [lab.id for lab in labels] == list(range(n)), "Label ids must be 0..n-1 in order"
    for lab in labels:
        assert 0 <= lab.dual < n, f"Dual {lab.dual} of label {lab.id} is out of range"
    unit = values.get("unit")
    assert unit is not None and 0 <= unit < n, f"Unit {unit} is not a label id"
    return values


def _check_fusion_entries(values: dict) -> dict:
    labels = values.get("labels")
    fusion = values.get("fusion")
    if labels is None or fusion is None:
        return values
    n = len(labels)
    seen = set()
    for a, b, c, mult in fusion:
        assert all(0 <= x < n for x in (a, b, c)), f"Fusion entry {[a, b, c, mult]} references an unknown label"
        assert mult >= 0, f"Fusion multiplicity must be non-negative in {[a, b, c, mult]}"
        assert mult <= 1, f"non-multiplicity-free fusion entry {[a, b, c, mult]} is unsupported"
        assert (a, b, c) not in seen, f"Duplicate fusion entry for {(a, b, c)}"
        seen.add((a, b, c))
    return values


def _check_symbol_keys(values: dict) -> dict:
    labels = values.get("labels")
    if labels is None:
        return values
    n = len(labels)
    for entry in values.get("F") or []:
        key = (entry.a, entry.b, entry.c, entry.d, entry.e, entry.f)
        assert all(0 <= x < n for x in key), f"F entry {key} references an unknown label"
    for entry in values.get("R") or []:
        key = (entry.a, entry.b, entry.c)
        assert all(0 <= x < n for x in key), f"R entry {key} references an unknown label"
    for entry in values.get("twists") or []:
        assert 0 <= entry.a < n, f"Twist entry {entry.a} references an unknown label"
    return values


def _check_model_structure(values: dict) -> dict:
    measurements = values.get("measurements")
    outcomes = values.get("outcomes")
    contexts = values.get("contexts")
    tables = values.get("tables")
    if None in (measurements, outcomes, contexts, tables):
        return values
    assert len(set(measurements)) == len(measurements), "Measurement names must be unique"
    assert set(outcomes) == set(measurements), "Every measurement needs an outcome set (and only those)"
    for m, outs in outcomes.items():
        assert outs, f"Measurement {m} has no outcomes"
        assert len(set(outs)) == len(outs), f"Measurement {m} has duplicate outcomes"
        assert all("," not in o for o in outs), f"Outcome labels of {m} must not contain commas"
    for ctx in contexts:
        assert ctx, "Contexts must be non-empty"
        for m in ctx:
            assert m in outcomes, f"Context {ctx} references unknown measurement {m}"
    for ci, table in tables.items():
        assert 0 <= ci < len(contexts), f"Table key {ci} is not a context index"
        ctx = contexts[ci]
        for key, prob in table.items():
            parts = key.split(",") if key else []
            assert len(parts) == len(ctx), f"Outcome tuple {key!r} does not match context {ctx}"
            for m, o in zip(ctx, parts):
                assert o in outcomes[m], f"Outcome {o!r} is not an outcome of {m}"
            assert prob >= 0, f"Negative probability {prob} for {key!r} in context {ci}"
    return values


def _check_category_source(values: dict) -> dict:
    command = values.get("command")
    builtin, file = values.get("builtin"), values.get("file")
    if command in CATEGORY_COMMANDS or values.get("braiding"):
        assert (builtin is None) != (file is None), "Give exactly one category source: --builtin NAME or --file PATH"
    return values


def _check_contextuality_mode(values: dict) -> dict:
    if values.get("command") != "contextuality":
        return values
    kcbs, braiding, file = values.get("kcbs_fibonacci"), values.get("braiding"), values.get("file")
    modes = [bool(kcbs), bool(braiding), bool(file) and not braiding]
    assert sum(modes) == 1, "Choose one of --kcbs-fibonacci, --file MODEL or --braiding"
    return values


def _check_scenario_source(values: dict) -> dict:
    if values.get("command") == "scenario":
        assert values.get("file") is not None, "scenario check needs --file MODEL"
    return values
