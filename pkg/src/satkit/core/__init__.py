"""Finite-algebra data model and the congruence toolbox."""
from .algebra import (DEFAULT_MAX_ARITY, FiniteAlgebra, Homomorphism, Signature, SubUniverse,
                      algebra_from_functions, is_subuniverse, product_algebra)
from .congruence import (ShiftingResult, all_congruences, all_subuniverses, check_shifting_lemma,
                         congruence_generated, congruence_join, congruence_witness, is_congruence,
                         kernel, partition_meet, preimage_congruence, principal_congruence,
                         quotient_algebra, subuniverse_generated)
from .io import format_algebra, load_algebra, parse_algebra, parse_algebras, save_algebra, validate_algebra
from .morphisms import are_isomorphic, find_isomorphism, generating_set
from .partition import Partition, canonical_labels, format_partition, parse_partition
