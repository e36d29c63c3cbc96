"""Exact Hoffman-algebra computations and high-precision multiple zeta (star) values."""

from .algebra import (
    INHOMOGENEOUS,
    NcPoly,
    composition_from_word,
    dmap,
    dmap_via_key_identity,
    gamma,
    parse_composition,
    weight,
    word_from_composition,
    z,
)
from .errors import (
    CapExceededError,
    DivergentEvaluationError,
    InvalidCompositionError,
    InvalidJVectorError,
    InvalidWordError,
    NotInH0Error,
    NotInH1Error,
    PrecisionInsufficientError,
    UndefinedWeightError,
    ZetaStarError,
)
from .numerics import (
    DEFAULT_CONFIG,
    Evaluator,
    HighPrecReal,
    PrecisionConfig,
    ValueCache,
    eval_poly,
    mzsv,
    mzv_fast,
    mzv_oracle,
    mzsv_oracle,
)
from .products import harmonic, reg_shuffle, shuffle, tilde
from .reconstruct import ReconstructionResult, reconstruct_pi_power

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
