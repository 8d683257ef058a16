"""Verification toolkit for the modular quintic threefold over Q(sqrt 5).

Point counts over F_q, Frobenius traces through the fixed-point formula,
quartic L-factor splitting, 2-torsion class-field certification of the
test prime set, and the congruence driver comparing the geometric traces
with a Hilbert eigenvalue table.
"""

from .classfield import galois_class, test_set, t_prime_subset
from .lfunction import QuarticLPoly, ideal_trace, l_poly, split_l_poly
from .pointcount import CountReport, count_and_extract, count_resolved_X
from .quadfield import OMEGA, PrimeIdeal, QElem, parse_ideal_label, splitting_type
from .sturm import required_prime_ideals, sturm_trace_bound
from .verify import EigenTable, bundled_table, livne_verify, load_eigen_table

__version__ = "0.1.0"

__all__ = [
    "CountReport",
    "EigenTable",
    "OMEGA",
    "PrimeIdeal",
    "QElem",
    "QuarticLPoly",
    "bundled_table",
    "count_and_extract",
    "count_resolved_X",
    "galois_class",
    "ideal_trace",
    "l_poly",
    "livne_verify",
    "load_eigen_table",
    "parse_ideal_label",
    "required_prime_ideals",
    "split_l_poly",
    "splitting_type",
    "sturm_trace_bound",
    "t_prime_subset",
    "test_set",
    "__version__",
]
