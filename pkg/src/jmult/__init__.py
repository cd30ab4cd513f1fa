"""Multiplicity sequences, special fiber rings and dual-variety degrees over prime fields."""

from .errors import (ExponentOverflowError, JMultError, NonGenericError, NotEquigeneratedError,
                     ParseError, RingMismatchError, VerdictError)
from .fiber import (FiberReport, analytic_spread, check_equation7, dual_variety_degree, fiber_ideal,
                    fiber_report, jacobian_ideal, reduction_number_bound)
from .groebner import GroebnerBasis, groebner_basis, ideal_membership, is_groebner, normal_form
from .hilbert import HilbertData, hf_bruteforce, hilbert_data, hilbert_samuel_bruteforce
from .ideals import (IdealHandle, QuotientRing, colon, eliminate, ideal_power, ideal_product,
                     ideal_sum, intersect, minors, saturate)
from .multseq import (agreed_multiplicity_sequence, check_equation3, multiplicity_sequence,
                      residual_chain)
from .ring import DEGREVLEX, LEX, MonomialOrder, PolyRing, Polynomial, PrimeField, elimination_order

__version__ = "0.1.0"
