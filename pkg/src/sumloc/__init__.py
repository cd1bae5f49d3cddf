"""Exact computations on sumsets, covers by generalised progressions, and locality.

All quantities are rational (``fractions.Fraction``) or certified real
enclosures; no floating point enters a comparison.
"""
from .brunn_minkowski import (HybridSet, Inequality, PreconditionError, addition_bounds, bigstep, bm_separated,
                              compress, compress_all, cube_bm, fiber_compress, fiber_compress_box, freiman3k4,
                              projection_sum, secondorder)
from .construct import (BoxLocality, IntervalLocality, NoClosePair, boosted_snap, merge_step, ruzsa_cover,
                        ruzsa_report, separation_gamma, snap)
from .core_sets import (FiberedSet, IntervalUnion, LatticeSet, Polycube, doubling, hulls, is_separated,
                        iterated_sumset, measure, sumset, thickness)
from .covering import (INF, ap_cover, co11, co_t_1d, cover_chain, gap_cover, gap_cover_exhaustive, nondeg_check,
                       t_references)
from .locality import coco_upper, maxconv
from .progressions import Box, ConvexProgression, Gap, enumerate_gap, freiman_violation, is_full, is_proper, lift

__version__ = "0.1.0"

__all__ = [
    "Box", "BoxLocality", "ConvexProgression", "FiberedSet", "Gap", "HybridSet", "INF", "Inequality",
    "IntervalLocality", "IntervalUnion", "LatticeSet", "NoClosePair", "Polycube", "PreconditionError",
    "addition_bounds", "ap_cover", "bigstep", "bm_separated", "boosted_snap", "co11", "co_t_1d", "coco_upper",
    "compress", "compress_all", "cover_chain", "cube_bm", "doubling", "enumerate_gap", "fiber_compress",
    "fiber_compress_box", "freiman3k4", "freiman_violation", "gap_cover", "gap_cover_exhaustive", "hulls",
    "is_full", "is_proper", "is_separated", "iterated_sumset", "lift", "maxconv", "measure", "merge_step",
    "nondeg_check", "projection_sum", "ruzsa_cover", "ruzsa_report", "secondorder", "separation_gamma", "snap",
    "sumset", "t_references", "thickness",
]
