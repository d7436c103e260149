"""
Projector families from braiding: P_k = rho(w_k) P_base rho(w_k)^dagger.
"""

import logging
from typing import Optional, Sequence, Union

import numpy as np

from libanyon.braid_rep import apply_word, build_rep
from libanyon.braid_word import BraidWord, parse_braid_word
from libanyon.categories.core import CategoryData, LabelRef
from libanyon.contextuality.empirical import EmpiricalModel, empirical_from_state, optional_state
from libanyon.contextuality.scenario import COMMUTE_TOL, ContextualityError, ProjectorSet, scenario_from_projectors

logger = logging.getLogger(__name__)

WordLike = Union[BraidWord, str]


def _as_word(w: WordLike, n_strands: int) -> BraidWord:
    return w if isinstance(w, BraidWord) else parse_braid_word(w, n_strands)


def braiding_projectors(
    cat: CategoryData,
    leaves: Sequence[LabelRef],
    total: LabelRef,
    words: Sequence[WordLike],
    base_index: int = 0,
) -> ProjectorSet:
    """Conjugates of the projector onto basis vector ``base_index``, labelled ``P<k>[<word>]``."""
    if not words:
        raise ContextualityError("At least one braid word is needed")
    rep = build_rep(cat, leaves, total)
    if not 0 <= base_index < rep.dim:
        raise ContextualityError(f"Base index {base_index} out of range for dimension {rep.dim}")
    base = np.zeros((rep.dim, rep.dim), dtype=complex)
    base[base_index, base_index] = 1.0
    projectors, labels = [], []
    for k, w in enumerate(words, start=1):
        w = _as_word(w, rep.n_strands)
        u = apply_word(rep, w)
        projectors.append(u @ base @ u.conj().T)
        labels.append(f"P{k}[{w}]")
    return ProjectorSet(projectors, labels)


def contextuality_from_braiding(
    cat: CategoryData,
    leaves: Sequence[LabelRef],
    total: LabelRef,
    words: Sequence[WordLike],
    base_index: int = 0,
    state: Optional[np.ndarray] = None,
    commute_tol: float = COMMUTE_TOL,
) -> EmpiricalModel:
    """Born-rule model of the braided projector family; the state defaults to the first basis vector."""
    ps = braiding_projectors(cat, leaves, total, words, base_index)
    return projector_family_model(ps, state, commute_tol)


def projector_family_model(
    ps: ProjectorSet, state: Optional[np.ndarray] = None, commute_tol: float = COMMUTE_TOL
) -> EmpiricalModel:
    """Born-rule model on the commutation-clique scenario of ``ps``."""
    scenario = scenario_from_projectors(ps, commute_tol)
    logger.info(f"Family of {len(ps)} projectors has {len(scenario.contexts)} contexts")
    return empirical_from_state(optional_state(state, ps.dim), ps, scenario, commute_tol)
