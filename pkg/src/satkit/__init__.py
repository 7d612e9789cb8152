"""satkit: syntactic congruences, saturation and centralizers on finite algebras."""
from .core import *  # noqa: F401,F403
from .saturation import (SaturationProblem, extend_from, forall, forall_u, is_normal_to,
                         is_saturated, largest_below_pair, largest_congruence_below, normal_sup,
                         restrict_congruence, syntactic_congruence, unit_class)

__version__ = "0.1.0"
