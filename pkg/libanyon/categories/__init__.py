from .axioms import (
    verify_category,
    verify_f_unitarity,
    verify_fusion_rules,
    verify_hexagon,
    verify_pentagon,
    verify_r_phases,
)
from .builtin import category_from_builtin, fibonacci_category, ising_category, su2k_category
from .category_io import category_from_dict, category_to_dict, dump_category, load_category
from .core import (
    CategoryData,
    CategoryError,
    EmptyFusionSpaceError,
    FSymbolTable,
    FusionRules,
    Label,
    RSymbolTable,
)
from .modular import (
    global_dimension,
    quantum_dimensions,
    ribbon_twists,
    s_matrix,
    verify_modularity,
    verify_ribbon,
)

__all__ = [
    "CategoryData",
    "CategoryError",
    "EmptyFusionSpaceError",
    "FSymbolTable",
    "FusionRules",
    "Label",
    "RSymbolTable",
    "category_from_builtin",
    "category_from_dict",
    "category_to_dict",
    "dump_category",
    "fibonacci_category",
    "global_dimension",
    "ising_category",
    "load_category",
    "quantum_dimensions",
    "ribbon_twists",
    "s_matrix",
    "su2k_category",
    "verify_category",
    "verify_f_unitarity",
    "verify_fusion_rules",
    "verify_hexagon",
    "verify_modularity",
    "verify_pentagon",
    "verify_r_phases",
    "verify_ribbon",
]
