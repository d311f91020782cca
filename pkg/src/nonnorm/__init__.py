"""Cyclic extensions with a non-norm base prime, and the space-time codes built on them."""
from .construct import ExtensionPlan, find_modulus, generate_table, plan_extension
from .periods import CyclotomicInt, PeriodOrbit, galois_orbit, vandermonde
from .quadring import QuadInt, Ring
from .stbc import CodeSpec, build_codeword, code_metrics, det_norm, energy, min_det_bruteforce
from .verify import EISENSTEIN, GAUSSIAN, certify_route_A, certify_route_B, check_prop1, verify_entry

__version__ = "0.1.0"
