"""Exact-arithmetic lower-bound certificates for Waring and cactus rank of
small determinants and permanents, via syzygies of annihilator ideals."""

__version__ = "0.1.0"

from .scalars import (QQ, C6, QLAM, FP, Cyclotomic6, PrimeFieldElement,
                      UniRationalFunction, evaluate_rational_function,
                      domain_by_name)
from .polyring import (Poly, LinearChange, contract, det_poly, per_poly,
                       power_of_linear_form, substitute, matrix_substitute)
from .apolar import (catalecticant, hilbert_function, apolar_generators,
                     is_concise, essential_variable_count,
                     catalecticant_lower_bound, verify_shafiei_generators)
from .graded import (GradedAlgebra, BettiTable, algebra_from_apolar,
                     algebra_from_monomial_quotient, algebra_from_points,
                     koszul_strand_betti, betti_table,
                     parametric_strand_betti, ParametricFamily,
                     ParametricStrandResult, strand_cross_check)
from .lexmac import (HVector, LexIdeal, macaulay_next, enumerate_hvectors,
                     lex_segment_ideal, ek_betti, peeva_lower_bound,
                     strand_threshold, threshold_report)
from .witness import (PowerSumDecomposition, ProductDecomposition,
                      verify_decomposition, glynn_decomposition,
                      monomial_expansion, krishna_makam_witness,
                      normalize_linear_form, char_obstruction_check,
                      det3_eighteen_cubes)
from .certify import (Certificate, build_rank14_certificate,
                      build_rank15_certificate, run_betti, run_points,
                      run_upper_bounds)
