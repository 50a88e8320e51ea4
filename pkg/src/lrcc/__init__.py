"""Locally repairable codes, stable global-merge conversions, and exact
conversion-bandwidth bound checking over GF(2^w)."""

from .galois import FieldSpec, field, field_from_size, gf_mul, gf_inv, rank, solve
from .lrc import (LrcParams, LrcCode, NodeIndex, NodeKind, DistanceReport,
                  construct_pyramid, encode, decode_erasures, verify_distance,
                  locality_sets)
from .conversion import (MergeSpec, ConvertiblePair, DownloadPlan,
                         ConversionProcedure, BandwidthReport,
                         build_merge_pair, classify_nodes,
                         default_reencode_procedure, merge_optimal_procedure,
                         execute)
from .bounds import (BoundReport, read_bandwidth_bound, construction_cost,
                     download_constraint_lhs, download_constraint_rhs,
                     gap_report)
from .entropy_oracle import (LinearView, entropy, conditional_entropy,
                      mutual_information, check_total_entropy,
                      check_group_uniformity, check_global_parity_support,
                      check_erasure_entropy, check_mi_bound,
                      check_subset_entropy_bound)

__version__ = "0.1.0"
