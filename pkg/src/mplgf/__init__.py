"""Exact bilinear realizations and numerical evaluation of generating
functions of (possibly non-periodic) multiple polylogarithms."""

from .words import (Composition, GeneralizedComposition, Word, EMPTY_WORD,
                    X0, X1, composition_to_word, word_to_composition,
                    left_shift, full_word, parse_composition, parse_generalized)
from .ratseries import (ThetaPoly, LinearRepresentation, coeff_pattern,
                        coeff_repr, repr_equals_pattern)
from .realize import (Realization, NumericRealization, SeriesExpr,
                      build_periodic, build_general, instantiate)
from .simulate import (IntegratorConfig, EvalResult, IntegrationError,
                       vector_field, integrate, evaluate_at, sweep_theta)
from .oracle import (TruncationSpec, li_truncated, gen_fun_truncated,
                     zeta_closed_form, li_tseries, fuchs_check, shuffle_check)
from .verify import (IdentitySpec, IdentityTerm, ResidualReport,
                     builtin_identity, run_identity, cross_validate)

__all__ = [name for name in dir() if not name.startswith("_")]
