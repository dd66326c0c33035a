"""Exact computation in finite-rank symmetric inverse semigroups and related
finite semigroups: ideal series, stabilizer certificates, Green's relations
and the neighbourhood-base identities of their semitopological extensions."""

__version__ = "0.1.0"

from .enumeration import ElementSet, RankStratum, closure_of, enumerate_inverse_semigroup, stratify_by_rank
from .green import GreenStructure, compute_green, d_class_factorize, find_inverse
from .ideals import (IdealSeries, check_unstable_witness, inverse_rank_series, rank_series,
                     tightness_report, unstability_certificate, verify_ideal_series)
from .pinj import PartialInjection, compose, identity_on, invert, is_idempotent, natural_leq, parse, rank, render
from .products import Homomorphism, ProductElement, fiber_sizes, product_series, pullback_series
from .pt import BlockMap, BlockStructure, check_regular, compose_blockmaps, enumerate_pt, index_homomorphism
from .topology import build_cover_theorem12, density_witness_example5, verify_example5, verify_example6
