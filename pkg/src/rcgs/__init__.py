"""Explicit-state ATL model checking over concurrent game structures with roles."""

from rcgs.checker import (
    CheckStats,
    RcgsStrategy,
    check_by_strategy_enumeration,
    enforce,
    mcheck,
    pre,
)
from rcgs.cgs import CgsModel, cgs_mcheck, check_lemma1, check_lemma2, translate
from rcgs.formula import parse_formula, render_formula
from rcgs.generators import GenParams, gen_h1, gen_h2, gen_h3, gen_random
from rcgs.kernels import BACKEND
from rcgs.model import (
    RcgsModel,
    apply_transition,
    coalition_profiles,
    complete_profiles,
    enumerate_votes,
    ext,
    force,
    profile_leq,
    succ,
    validate,
)
from rcgs.modelfile import read_cgs, read_model, write_cgs, write_model
from rcgs.sizing import check_bounds, model_size, multichoose, profile_count

__all__ = [
    "BACKEND",
    "CgsModel",
    "CheckStats",
    "GenParams",
    "RcgsModel",
    "RcgsStrategy",
    "apply_transition",
    "cgs_mcheck",
    "check_bounds",
    "check_by_strategy_enumeration",
    "check_lemma1",
    "check_lemma2",
    "coalition_profiles",
    "complete_profiles",
    "enforce",
    "enumerate_votes",
    "ext",
    "force",
    "gen_h1",
    "gen_h2",
    "gen_h3",
    "gen_random",
    "mcheck",
    "model_size",
    "multichoose",
    "parse_formula",
    "pre",
    "profile_count",
    "profile_leq",
    "read_cgs",
    "read_model",
    "render_formula",
    "succ",
    "translate",
    "validate",
    "write_cgs",
    "write_model",
]
