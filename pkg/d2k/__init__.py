__version__ = '2026.1a0'

from .exceptions import BaseError, D2kError, DomainError, GridCellError, InternalError, LengthMismatchError, \
    ModelError, ResourceError, SequenceParseError, UsageError
from .model import LetterDistribution, MatchParams, Sequence, gc_count, hamming, p_moment, strand_symmetric
from .binomial import G, DistanceDistribution, distance_distribution, g, h, log_g
from .counting import classify_pair, count_crabgrass_pairs, d2k, d2k_fast, d2k_naive, y_indicator
from .moments import MomentReport, crabgrass_cov, ey_bounds, ey_exact, f_t_value, janson_diagnostic, \
    mean_bounds, mean_exact, mismatch_distribution, regime_classify, var_lower_dominant, var_lower_k0_general, \
    var_upper
from .kolmogorov import kolmogorov_pvalue, ks_statistic, ks_test
from .simulation import SimConfig, cell_seed, ks_grid, run_cell, sample_d2k
