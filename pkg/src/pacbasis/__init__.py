"""Exact and probably approximately correct implication bases of formal contexts."""

from .context import (AttributeSet, AttributeUniverse, FormalContext, close_attributes, derive_attributes,
                      derive_objects, enumerate_intents, is_intent)
from .datagen import GenSpec, corpus, generate_corpus, random_context, star_alliance
from .errors import (CapacityError, ContextParseError, GenerationExhaustedError, InvalidArgumentError,
                     PacBasisError, ProtocolError)
from .estimator import CanonicalBasis, PacBasis
from .implications import (Implication, ImplicationList, canonical_basis, closure, entails,
                           enumerate_models, equivalent, format_implications, is_model, is_valid_in,
                           parse_implications)
from .io import parse_context, read_context, write_context
from .learning import (EquivalenceOracle, MembershipOracle, PacParams, RunStats, SubsetSampler,
                       biased_sampler, context_membership_oracle, exact_equivalence_oracle, horn1,
                       make_sampling_equivalence_oracle, pac_basis, pac_basis_of_context, sample_count,
                       uniform_sampler)
from .metrics import EvalReport, evaluate, horn_distance, horn_distance_sampled, precision, recall

__version__ = "0.1.0"
