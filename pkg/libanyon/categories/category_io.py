"""
Category files
==============

JSON layout::

    {
      "name": "fibonacci",
      "labels": [{"id": 0, "name": "1", "dual": 0}, ...],
      "unit": 0,
      "fusion": [[a, b, c, 1], ...],
      "F": [{"a": .., "b": .., "c": .., "d": .., "e": .., "f": .., "re": .., "im": ..}, ...],
      "R": [{"a": .., "b": .., "c": .., "re": .., "im": ..}, ...],
      "twists": [{"a": .., "re": .., "im": ..}, ...]
    }

:func:`dump_category` writes entries in sorted order with two-space
indentation, so loading a dumped file and dumping it again reproduces it
byte for byte.
"""

import json
import logging
from pathlib import Path
from typing import Optional, Union

import numpy as np

from libanyon.categories.core import CategoryData, FSymbolTable, FusionRules, Label, RSymbolTable
from libanyon.categories.modular import ribbon_twists
from libanyon.specs import CategorySpecs

logger = logging.getLogger(__name__)


def category_from_dict(data: dict, name: Optional[str] = None) -> CategoryData:
    """Validate with :class:`~libanyon.specs.CategorySpecs` and build the category."""
    specs = CategorySpecs.parse_obj(data)
    n = len(specs.labels)
    labels = tuple(Label(lab.id, lab.name, lab.dual, is_unit=(lab.id == specs.unit)) for lab in specs.labels)
    N = np.zeros((n, n, n), dtype=int)
    for a, b, c, mult in specs.fusion:
        N[a, b, c] = mult
    rules = FusionRules(N)
    f = FSymbolTable({(e.a, e.b, e.c, e.d, e.e, e.f): complex(e.re, e.im) for e in specs.F})
    r = RSymbolTable({(e.a, e.b, e.c): complex(e.re, e.im) for e in specs.R})
    if specs.twists:
        twists = np.zeros(n, dtype=complex)
        for entry in specs.twists:
            twists[entry.a] = complex(entry.re, entry.im)
    else:
        logger.info("No twists in category file; deriving them from the R-symbols")
        twists = ribbon_twists(rules, r, specs.unit)
    return CategoryData(
        name=name or specs.name or "custom",
        labels=labels,
        rules=rules,
        f=f,
        r=r,
        twists=twists,
    )


def category_to_dict(cat: CategoryData) -> dict:
    return {
        "name": cat.name,
        "labels": [{"id": lab.id, "name": lab.name, "dual": lab.dual} for lab in cat.labels],
        "unit": cat.unit,
        "fusion": [list(q) for q in cat.rules.quadruples()],
        "F": [
            dict(zip("abcdef", key), re=value.real, im=value.imag)
            for key, value in sorted(cat.f.items())
        ],
        "R": [dict(zip("abc", key), re=value.real, im=value.imag) for key, value in sorted(cat.r.items())],
        "twists": [{"a": a, "re": float(t.real), "im": float(t.imag)} for a, t in enumerate(cat.twists)],
    }


def dumps_category(cat: CategoryData) -> str:
    return json.dumps(category_to_dict(cat), indent=2, sort_keys=True) + "\n"


def dump_category(cat: CategoryData, path: Optional[Union[str, Path]] = None) -> str:
    """Serialize; also write to ``path`` when given. Returns the text."""
    text = dumps_category(cat)
    if path is not None:
        Path(path).write_text(text)
        logger.info(f"Wrote category {cat.name} to {path}")
    return text


def load_category(path: Union[str, Path]) -> CategoryData:
    """Load a category file. Malformed files raise pydantic or JSON errors."""
    with open(path, "r") as f:
        data = json.load(f)
    logger.debug(f"Loaded category file {path}")
    return category_from_dict(data)
