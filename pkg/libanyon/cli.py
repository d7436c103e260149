"""
Command-line front-end
======================

``libanyon <command> [subcommand] [options]``. Every handler returns a
:class:`CommandResult` whose text lines and JSON data carry the same
numbers (12 significant digits). Exit codes are in
:mod:`libanyon.message_numbers`: a contextual verdict is a successful
analysis and exits 0.
"""

import json
import logging
import sys
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
import yaml
from pydantic import ValidationError

from libanyon import logger as anyon_logger
from libanyon.braid_rep import (
    apply_word,
    build_rep,
    commutant_dimension,
    lie_closure,
    verify_braid_relations,
    verify_determinants,
    verify_unitarity,
    verify_word_inverses,
)
from libanyon.braid_word import BraidError, parse_braid_word
from libanyon.categories import (
    CategoryData,
    CategoryError,
    EmptyFusionSpaceError,
    category_from_builtin,
    category_to_dict,
    dump_category,
    global_dimension,
    load_category,
    quantum_dimensions,
    s_matrix,
    verify_category,
)
from libanyon.contextuality import (
    ContextualityError,
    EmpiricalModel,
    braiding_projectors,
    classical_bound,
    classify_hierarchy,
    functional_value,
    kcbs_functional,
    kcbs_projectors_fibonacci,
    load_model,
    max_state_value,
    projector_family_model,
)
from libanyon.contextuality.noncontextual import event_labels, event_vector
from libanyon.contextuality.scenario import BINARY_OUTCOMES
from libanyon.invariants import (
    ORACLE_MAX_CROSSINGS,
    InvariantError,
    LinkDiagramFromBraid,
    jones_at_fibonacci_root,
    kauffman_bracket_oracle,
    markov_trace,
)
from libanyon.message_numbers import EXIT_CHECK_FAILED, EXIT_INPUT_ERROR, EXIT_OK, verdict_strings
from libanyon.specs import RunConfig
from libanyon.tools.parse_args import parse_args
from libanyon.utils.logs import cli_logging_config
from libanyon.utils.reports import complex_value, fmt_complex, fmt_matrix, fmt_real, matrix_rows, real_value

logger = logging.getLogger(__name__)

JONES_AGREEMENT_TOL = 1e-8


class UsageError(Exception):
    """Raised when options are valid on their own but not for the chosen command"""


@dataclass
class CommandResult:
    code: int
    lines: List[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)


# ==================== Shared helpers ===========================


def _category(config: RunConfig) -> CategoryData:
    if config.builtin is not None:
        return category_from_builtin(config.builtin)
    return load_category(config.file)


def _default_leaf(cat: CategoryData) -> int:
    for lab in cat.labels:
        if not lab.is_unit:
            return lab.id
    raise UsageError(f"Category {cat.name} has no non-unit label to use as a leaf")


def _strands(cat: CategoryData, config: RunConfig, min_strands: int = 2):
    """(leaves, total) from -n, --leaf and --total."""
    if config.n is None:
        raise UsageError(f"{config.command} needs -n (number of strands)")
    if config.n < min_strands:
        raise UsageError(f"{config.command} needs at least {min_strands} strands, got {config.n}")
    leaf = cat.label_id(config.leaf) if config.leaf is not None else _default_leaf(cat)
    total = cat.label_id(config.total) if config.total is not None else leaf
    return (leaf,) * config.n, total


def _number(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return fmt_real(x)


def _json_number(x):
    if isinstance(x, (int, np.integer)):
        return int(x)
    return real_value(x)


def _checks_result(header: List[str], reports, data: dict) -> CommandResult:
    passed = all(r.passed for r in reports)
    lines = header + [r.summary() for r in reports]
    for r in reports:
        lines += [f"  note ({r.name}): {note}" for note in r.notes]
    lines.append(f"result: {'pass' if passed else 'FAIL'}")
    data.update({"checks": [r.as_dict() for r in reports], "passed": passed})
    return CommandResult(EXIT_OK if passed else EXIT_CHECK_FAILED, lines, data)


# ==================== category ===========================


def cmd_category_verify(config: RunConfig) -> CommandResult:
    cat = _category(config)
    reports = verify_category(cat, config.tol)
    return _checks_result([f"category: {cat.name}"], reports, {"command": "category verify", "category": cat.name})


def cmd_category_info(config: RunConfig) -> CommandResult:
    cat = _category(config)
    dims = quantum_dimensions(cat)
    S = s_matrix(cat)
    lines = [f"category: {cat.name}", f"global dimension: {fmt_real(global_dimension(cat))}", "labels:"]
    labels = []
    for lab in cat.labels:
        lines.append(
            f"  {lab.id} {lab.name}: dual {cat.name_of(lab.dual)}, d {fmt_real(dims[lab.id])}, "
            f"theta {fmt_complex(cat.twist(lab.id))}"
        )
        labels.append(
            {
                "id": lab.id,
                "name": lab.name,
                "dual": lab.dual,
                "dimension": real_value(dims[lab.id]),
                "twist": complex_value(cat.twist(lab.id)),
            }
        )
    lines.append("fusion:")
    fusion = []
    for a in range(cat.n_labels):
        for b in range(a, cat.n_labels):
            channels = [cat.name_of(c) for c in cat.channels(a, b)]
            lines.append(f"  {cat.name_of(a)} x {cat.name_of(b)} = {' + '.join(channels)}")
            fusion.append({"a": cat.name_of(a), "b": cat.name_of(b), "channels": channels})
    lines.append("S (unnormalized):")
    lines += fmt_matrix(S)
    data = {
        "command": "category info",
        "category": cat.name,
        "global_dimension": real_value(global_dimension(cat)),
        "labels": labels,
        "fusion": fusion,
        "S": matrix_rows(S),
    }
    return CommandResult(EXIT_OK, lines, data)


def cmd_category_dump(config: RunConfig) -> CommandResult:
    cat = _category(config)
    text = dump_category(cat, config.output)
    data = {"command": "category dump", "category": cat.name}
    if config.output is not None:
        data["output"] = str(config.output)
        return CommandResult(EXIT_OK, [f"wrote {cat.name} to {config.output}"], data)
    data["data"] = category_to_dict(cat)
    return CommandResult(EXIT_OK, text.rstrip("\n").split("\n"), data)


# ==================== rep ===========================


def _rep(config: RunConfig):
    cat = _category(config)
    leaves, total = _strands(cat, config)
    return cat, build_rep(cat, leaves, total)


def _rep_header(rep) -> List[str]:
    cat = rep.cat
    return [
        f"category: {cat.name}",
        f"leaves: {rep.n_strands} x {cat.name_of(rep.leaves[0])}, total {cat.name_of(rep.total)}, dimension {rep.dim}",
    ]


def _rep_data(command: str, rep) -> dict:
    cat = rep.cat
    return {
        "command": command,
        "category": cat.name,
        "n": rep.n_strands,
        "leaf": cat.name_of(rep.leaves[0]),
        "total": cat.name_of(rep.total),
        "dimension": rep.dim,
    }


def cmd_rep_build(config: RunConfig) -> CommandResult:
    cat, rep = _rep(config)
    lines = _rep_header(rep) + ["basis:"] + ["  " + row for row in rep.basis.table(cat)]
    data = _rep_data("rep build", rep)
    data["basis"] = [[cat.name_of(c) for c in tree.internal] for tree in rep.basis]
    data["generators"] = {}
    for i, g in enumerate(rep.generators, start=1):
        lines.append(f"s{i}:")
        lines += fmt_matrix(g)
        data["generators"][f"s{i}"] = matrix_rows(g)
    return CommandResult(EXIT_OK, lines, data)


def cmd_rep_check(config: RunConfig) -> CommandResult:
    _, rep = _rep(config)
    rng = np.random.default_rng(config.seed)
    reports = [
        verify_braid_relations(rep, config.tol),
        verify_unitarity(rep, config.tol),
        verify_determinants(rep, config.tol),
        verify_word_inverses(rep, rng=rng, tol=config.tol),
    ]
    return _checks_result(_rep_header(rep), reports, _rep_data("rep check", rep))


def cmd_rep_apply(config: RunConfig) -> CommandResult:
    _, rep = _rep(config)
    w = parse_braid_word(config.word, rep.n_strands)
    m = apply_word(rep, w)
    lines = _rep_header(rep) + [f"word: {w}" if len(w) else "word: (identity)"] + fmt_matrix(m)
    data = _rep_data("rep apply", rep)
    data.update({"word": str(w), "matrix": matrix_rows(m)})
    return CommandResult(EXIT_OK, lines, data)


def cmd_rep_density(config: RunConfig) -> CommandResult:
    _, rep = _rep(config)
    report = lie_closure(rep.generators)
    commutant = commutant_dimension(rep.generators)
    lines = _rep_header(rep) + [
        f"closure {report.dimension} of {report.max_dimension}",
        f"commutant dimension: {commutant}",
        f"irreducible: {'yes' if commutant == 1 else 'no'}",
    ]
    lines += [f"note: {note}" for note in report.notes]
    data = _rep_data("rep density", rep)
    data.update(
        {
            "closure": report.dimension,
            "max_dimension": report.max_dimension,
            "full": report.is_full,
            "commutant_dimension": commutant,
            "irreducible": commutant == 1,
            "notes": list(report.notes),
        }
    )
    return CommandResult(EXIT_OK, lines, data)


# ==================== jones ===========================


def _infer_strands(text: str) -> int:
    indices = [int(tok[1:].split("^")[0]) for tok in text.split() if tok[1:].split("^")[0].isdigit()]
    return max(indices, default=0) + 1


def cmd_jones(config: RunConfig) -> CommandResult:
    n = config.n if config.n is not None else _infer_strands(config.word)
    w = parse_braid_word(config.word, n)
    diagram = LinkDiagramFromBraid(w)
    jones = jones_at_fibonacci_root(w)
    lines = [
        f"word: {w}" if len(w) else "word: (identity)",
        f"strands: {n}",
        f"writhe: {diagram.writhe}",
        f"components: {diagram.components}",
        f"jones: {fmt_complex(jones)}",
    ]
    data = {
        "command": "jones",
        "word": str(w),
        "strands": n,
        "writhe": diagram.writhe,
        "components": diagram.components,
        "jones": complex_value(jones),
    }
    code = EXIT_OK
    if diagram.crossings <= ORACLE_MAX_CROSSINGS:
        oracle = kauffman_bracket_oracle(w)
        difference = abs(jones - oracle)
        lines += [f"oracle: {fmt_complex(oracle)}", f"difference: {fmt_real(difference)}"]
        data.update({"oracle": complex_value(oracle), "difference": real_value(difference)})
        if difference > JONES_AGREEMENT_TOL:
            logger.check_warning(f"Jones value and Kauffman oracle differ by {difference:.3e}")
            code = EXIT_CHECK_FAILED
    else:
        lines.append(f"oracle: skipped ({diagram.crossings} crossings > {ORACLE_MAX_CROSSINGS})")

    if config.builtin is not None or config.file is not None:
        cat = _category(config)
        leaves, _ = _strands(cat, config.copy(update={"n": n}), min_strands=1)
        trace = markov_trace(cat, leaves, w, config.normalization)
        lines.append(f"markov trace ({cat.name}, {config.normalization}): {fmt_complex(trace)}")
        data["markov_trace"] = {
            "category": cat.name,
            "normalization": config.normalization,
            "value": complex_value(trace),
        }
    return CommandResult(code, lines, data)


# ==================== contextuality / scenario ===========================


def _is_binary(model: EmpiricalModel) -> bool:
    return all(tuple(model.scenario.outcomes[m]) == BINARY_OUTCOMES for m in model.scenario.measurements)


def _respects_exclusivity(model: EmpiricalModel, support_tol: float) -> bool:
    """No support event has two measurements of one context both at 1."""
    for (ci, key), p in zip(event_labels(model.scenario), event_vector(model)):
        if p > support_tol and key.split(",").count("1") > 1:
            return False
    return True


def _compatibility_failure(model: EmpiricalModel, report, command: str) -> CommandResult:
    i, j, shared = report.worst
    lines = [
        report.summary(),
        f"error: signalling model: contexts {i} and {j} disagree on {shared} by {fmt_real(report.residual)}",
    ]
    data = {"command": command, "compatibility": report.as_dict(), "passed": False}
    return CommandResult(EXIT_CHECK_FAILED, lines, data)


def _contextuality_source(config: RunConfig):
    """(source name, model, projectors or None)."""
    if config.kcbs_fibonacci:
        construction = kcbs_projectors_fibonacci()
        return "kcbs-fibonacci", construction.model(), construction.projectors
    if config.braiding:
        if not config.words:
            raise UsageError("contextuality --braiding needs at least one --word")
        cat = _category(config)
        leaves, total = _strands(cat, config)
        projectors = braiding_projectors(cat, leaves, total, config.words, base_index=config.base)
        model = projector_family_model(projectors, commute_tol=config.commute_tol)
        return f"braiding ({cat.name})", model, projectors
    return str(config.file), load_model(config.file), None


def cmd_contextuality(config: RunConfig) -> CommandResult:
    source, model, projectors = _contextuality_source(config)
    scenario = model.scenario
    compat = model.check_compatibility(config.compat_tol)
    if not compat.passed:
        return _compatibility_failure(model, compat, "contextuality")

    verdict = classify_hierarchy(model, config.lp_tol, config.support_tol, config.compat_tol)
    cert = verdict.certificate
    replayed = verdict.replay(model)
    n_assign = scenario.n_global_assignments()

    lines = [
        f"source: {source}",
        f"measurements: {len(scenario.measurements)}",
        "contexts: " + " ".join("{" + ",".join(ctx) + "}" for ctx in scenario.contexts),
        compat.summary(),
    ]
    data = {
        "command": "contextuality",
        "source": source,
        "measurements": list(scenario.measurements),
        "contexts": [list(ctx) for ctx in scenario.contexts],
        "compatibility": compat.as_dict(),
    }

    if _is_binary(model):
        functional = kcbs_functional(scenario)
        value = functional_value(model, functional)
        bound = classical_bound(scenario, functional)
        exclusive = _respects_exclusivity(model, config.support_tol)
        lines += [f"value: {fmt_real(value)}", f"exclusive: {'yes' if exclusive else 'no'}"]
        data.update({"value": real_value(value), "exclusive": exclusive})
        # The sum-of-clicks bound only constrains models whose support is exclusive.
        if exclusive:
            lines += [f"classical bound: {_number(bound)}", f"functional violation: {fmt_real(value - bound)}"]
            data.update({"classical_bound": _json_number(bound), "functional_violation": real_value(value - bound)})
        else:
            lines.append("classical bound: n/a (support is not exclusive)")
            data.update({"classical_bound": None, "functional_violation": None})
        if projectors is not None:
            quantum = max_state_value(projectors)
            lines.append(f"max state value: {fmt_real(quantum)}")
            data["max_state_value"] = real_value(quantum)

    lines += [
        f"lp distance: {fmt_real(cert.distance)}",
        f"certificate: value {fmt_real(cert.value)}, bound {fmt_real(cert.bound)}, "
        f"violation {fmt_real(cert.violation)}, duality gap {fmt_real(cert.duality_gap)}",
        f"consistent assignments: {verdict.consistent_assignments} of {n_assign}",
        "unextendable events: " + (" ".join(f"{ci}:{key}" for ci, key in verdict.unextendable) or "none"),
        f"tolerances: lp {fmt_real(verdict.lp_tol)}, support {fmt_real(verdict.support_tol)}, "
        f"compatibility {fmt_real(config.compat_tol)}",
        f"replay: {'ok' if replayed else 'FAILED'}",
        f"verdict: {verdict.classification}",
        f"  {verdict_strings[verdict.classification]}",
    ]
    data.update(
        {
            "lp_distance": real_value(cert.distance),
            "certificate": {
                "value": real_value(cert.value),
                "bound": real_value(cert.bound),
                "violation": real_value(cert.violation),
                "duality_gap": real_value(cert.duality_gap),
            },
            "consistent_assignments": verdict.consistent_assignments,
            "global_assignments": n_assign,
            "unextendable": [f"{ci}:{key}" for ci, key in verdict.unextendable],
            "tolerances": {
                "lp": real_value(verdict.lp_tol),
                "support": real_value(verdict.support_tol),
                "compatibility": real_value(config.compat_tol),
            },
            "replay": replayed,
            "verdict": verdict.classification,
        }
    )
    return CommandResult(EXIT_OK if replayed else EXIT_CHECK_FAILED, lines, data)


def cmd_scenario_check(config: RunConfig) -> CommandResult:
    model = load_model(config.file)
    scenario = model.scenario
    report = model.check_compatibility(config.compat_tol)
    lines = [f"measurements: {len(scenario.measurements)}"]
    lines += [f"  {m}: {' '.join(scenario.outcomes[m])}" for m in scenario.measurements]
    lines.append(f"contexts: {len(scenario.contexts)}")
    lines += [f"  {ci}: {{{','.join(ctx)}}}" for ci, ctx in enumerate(scenario.contexts)]
    lines.append(f"global assignments: {scenario.n_global_assignments()}")
    lines.append(report.summary())
    data = {
        "command": "scenario check",
        "measurements": {m: list(scenario.outcomes[m]) for m in scenario.measurements},
        "contexts": [list(ctx) for ctx in scenario.contexts],
        "global_assignments": scenario.n_global_assignments(),
        "compatibility": report.as_dict(),
        "passed": report.passed,
    }
    if not report.passed:
        i, j, shared = report.worst
        lines.append(f"error: signalling model: contexts {i} and {j} disagree on {shared}")
    return CommandResult(EXIT_OK if report.passed else EXIT_CHECK_FAILED, lines, data)


HANDLERS: Dict[tuple, Callable[[RunConfig], CommandResult]] = {
    ("category", "verify"): cmd_category_verify,
    ("category", "info"): cmd_category_info,
    ("category", "dump"): cmd_category_dump,
    ("rep", "build"): cmd_rep_build,
    ("rep", "check"): cmd_rep_check,
    ("rep", "apply"): cmd_rep_apply,
    ("rep", "density"): cmd_rep_density,
    ("jones", None): cmd_jones,
    ("contextuality", None): cmd_contextuality,
    ("scenario", "check"): cmd_scenario_check,
}


# ==================== entry point ===========================


def _emit(result: CommandResult, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(result.data, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(result.lines) + "\n")


def _fail(message: str, code: int) -> int:
    sys.stderr.write(f"libanyon: error: {message}\n")
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command; returns the exit code."""
    try:
        parsed = parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_INPUT_ERROR

    try:
        config = RunConfig.from_args(parsed)
    except (ValueError, OSError, yaml.YAMLError) as e:
        return _fail(str(e), EXIT_INPUT_ERROR)

    anyon_logger.set_level(config.log_level)
    command = " ".join(filter(None, (config.command, config.subcommand)))
    exit_logger = cli_logging_config(command, filename=config.log_file)
    handler = HANDLERS[(config.command, config.subcommand)]
    try:
        result = handler(config)
    except EmptyFusionSpaceError as e:
        logger.info(f"{command} stopped: {e}")
        return _fail(str(e), EXIT_CHECK_FAILED)
    except (
        CategoryError,
        BraidError,
        InvariantError,
        ContextualityError,
        UsageError,
        ValidationError,
        ValueError,
        OSError,
    ) as e:
        logger.debug(f"{command} rejected its input: {e}")
        return _fail(str(e), EXIT_INPUT_ERROR)
    finally:
        exit_logger()

    _emit(result, config.format)
    return result.code


def run() -> None:
    """console_scripts entry point."""
    sys.exit(main())


if __name__ == "__main__":
    run()
