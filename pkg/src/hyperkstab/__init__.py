"""Exact K-stability of log Fano hyperplane arrangements."""

from .arrangement import Arrangement, LinearForm, make_arrangement, normalize_form, total_degree
from .lattice import Flat, Lattice, all_flats, closure_of, flat_weight, is_snc, lc_centers
from .stability import Classification, Verdict, beta_hat_blowup, classify, lct, scale_to_cy

__version__ = "0.1.0"
