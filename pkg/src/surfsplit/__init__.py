"""surfsplit: split/simple classification of abelian surfaces over finite
fields, with the elliptic-curve class-number machinery and weighted genus-2
censuses behind it."""

__version__ = "0.1.0"

from .weilquartic import (Classification, SplitClass, WeilQuartic, classify,
                          base_extend, elliptic_admissible,
                          is_geometrically_split, quartic_from_counts,
                          res_scalars_quartic)
from .numth import (cee, dee, factorize, kronecker_symbol, psi, psi_sieve,
                    sum_psi, sum_psi_over_n)
from .quadorders import (class_number, class_number_forms,
                         hurwitz_weighted_h, kronecker_class_number)
from .ellipt import (EllipticCurve, count_anti_isometries, enumerate_curves,
                     frobenius_matrix, hurwitz_weighted_count, point_count,
                     relative_conductor, strata, sum_relcond_closed_form,
                     symplectic_type, torsion_aut_size, weil_pairing)
from .genus2 import (CensusResult, Genus2Curve, MumfordDivisor, cantor_add,
                     enumerate_genus2_weighted, exact_cq, genus2_count,
                     jacobian_order, monte_carlo_cq, split_census,
                     weil_coeffs)
from .driver import (FitResult, RationalGenus2, SurveyRow, fit_counting,
                     good_primes, pisplit, run_survey)
