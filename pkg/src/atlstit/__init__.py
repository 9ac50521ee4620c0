"""ATL model checking over concurrent game structures, bounded stit-style
unraveling, and an empirical harness for the embedding of the one into the
other."""

from .atl import OracleSizeError, eval_atl, eval_atl_oracle, pre
from .bridge import (
    CorrespondenceReport,
    ProofError,
    SpotcheckReport,
    SweepReport,
    axiom_sweep,
    check_proof,
    correspondence_check,
    default_instantiations,
    is_tautology,
    load_proof,
    sample_lassos,
    soundness_spotcheck,
    spotcheck_formulas,
)
from .cgs import Cgs, CgsError, load_cgs, random_cgs
from .schemas import SCHEMA_NAMES, SchemaError, instantiate_schema
from .stit import (
    LassoError,
    LassoHistory,
    SxIndex,
    UnsupportedFragmentError,
    canonical_lasso,
    check_moment_determined,
    eval_sx,
    holds_strategically,
    lasso_pool,
    lasso_suffix,
    validate_lasso,
)
from .syntax import (
    FALSE,
    TRUE,
    And,
    Atom,
    Box,
    CoalG,
    CoalU,
    CoalX,
    Formula,
    FormulaSyntaxError,
    Globally,
    Next,
    Not,
    Stit,
    StratAbility,
    Until,
    disj,
    iff,
    implies,
    parse_atl,
    parse_sx,
    print_formula,
    substitute,
    translate,
)
from .unravel import (
    BdtFragment,
    UnravelSizeError,
    export_fragment,
    unravel,
    verify_frame,
)

__all__ = [
    "And",
    "Atom",
    "BdtFragment",
    "Box",
    "Cgs",
    "CgsError",
    "CoalG",
    "CoalU",
    "CoalX",
    "CorrespondenceReport",
    "FALSE",
    "Formula",
    "FormulaSyntaxError",
    "Globally",
    "LassoError",
    "LassoHistory",
    "Next",
    "Not",
    "OracleSizeError",
    "ProofError",
    "SCHEMA_NAMES",
    "SchemaError",
    "SpotcheckReport",
    "Stit",
    "StratAbility",
    "SweepReport",
    "SxIndex",
    "TRUE",
    "UnravelSizeError",
    "UnsupportedFragmentError",
    "Until",
    "axiom_sweep",
    "canonical_lasso",
    "check_moment_determined",
    "check_proof",
    "correspondence_check",
    "default_instantiations",
    "disj",
    "eval_atl",
    "eval_atl_oracle",
    "eval_sx",
    "export_fragment",
    "holds_strategically",
    "iff",
    "implies",
    "instantiate_schema",
    "is_tautology",
    "lasso_pool",
    "lasso_suffix",
    "load_cgs",
    "load_proof",
    "parse_atl",
    "parse_sx",
    "pre",
    "print_formula",
    "random_cgs",
    "sample_lassos",
    "soundness_spotcheck",
    "spotcheck_formulas",
    "substitute",
    "translate",
    "unravel",
    "validate_lasso",
    "verify_frame",
]
