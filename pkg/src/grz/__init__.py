"""Sequent calculi for the Grzegorczyk modal logic: a finite calculus with the
Grz box rule, a non-well-founded calculus, cut elimination for both, and the
translations between them."""

from .cutelim import eliminate, eliminate_main_fragment, identity, iterate, step
from .errors import (BudgetExceeded, ContextMismatch, CutFound, GrzError, InapplicableRule, InvalidProof,
                     MultisetError, NotInP1, ParseError, ShapeError)
from .formula import (BOT, Atom, Box, Formula, Implies, Multiset, Sequent, conj, diamond, disj, lambda_star,
                      modal_depth, neg, parse_formula, parse_sequent, print_formula, subformulas, top)
from .proofs import (CyclicProof, Distance, FiniteProof, Hole, InfProof, RuleInstance, ValidationReport,
                     check_cyclic, check_finite, check_inf, cut_profile, distance, expand, in_P_n,
                     local_height, main_fragment, sim_n, unfold)
from .reduction import ReductionRequest, reduce
from .search import SearchResult, prove_inf, prove_seq
from .transforms import TransformSpec, apply_transform, weaken
from .translate import (TranslationContext, ax_expand, cutelim_grzseq, grz_schema, inf_to_seq, seq_to_inf,
                        weak_seq)

__version__ = "0.1.0"
