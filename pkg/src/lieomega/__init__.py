"""Exact Groebner-Shirshov computations in free Lie algebras with operators."""

from .words import (
    Alphabet,
    ArityMismatch,
    Generator,
    Letter,
    OmegaWord,
    OperatorSymbol,
    OpWord,
    STAR,
    STAR_WORD,
    StarWord,
    Weight,
    breadth,
    cmp_dl,
    cmp_lex,
    concat,
    degree,
    depth,
    EQ,
    GT,
    LT,
    has_occurrence,
    occurrences,
    overlaps,
    substitute,
    weight,
    words_by_degree,
)
from .lyndon import (
    BracketNode,
    Leaf,
    MarkedTree,
    NotAlsw,
    OpNode,
    SLOT,
    alsw_by_degree,
    factorize,
    is_alsw,
    relative_bracket,
    standard_split,
    std_bracket,
    tree_word,
)
from .liepoly import (
    AssocPoly,
    LambdaPoly,
    LiePoly,
    NonConstantLeadingCoefficient,
    NotLieElement,
    ZeroPolynomial,
    apply_op,
    bracket,
    expand,
    from_tree,
    normalize_monic,
    specialize,
    to_nlsw,
)
from .gsb import (
    Ambiguity,
    CompositionReport,
    INCLUSION,
    INTERSECTION,
    NonMonicRule,
    PresetKind,
    Rule,
    RuleSet,
    ambiguities,
    assoc_check,
    check_gsb,
    complete,
    composition,
    dim_oracle,
    irr_enumerate,
    preset_rules,
    reduce,
    special_normal_word,
)
from .cli import SessionConfig, ParseError, parse_poly, parse_tree, parse_word, poly_str

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
