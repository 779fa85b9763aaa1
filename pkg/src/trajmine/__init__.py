"""Encode anonymized activity trajectories on a grid and mine top-k relevant patterns."""
from .errors import (EmptyEncodingError, InfeasibleError, InvalidArgumentError, ParseError,
                     PreconditionError, SizeLimitError, TrajmineError, ValidationError)
from .grid import AnonymousTrajectory, CellGrid, Mbr, Region, build_grid, encode_database, encode_region
from .miner import VARIANTS, MiningConfig, MiningMetrics, TopKList, mine_topk
from .model import (PatternTerm, TrajectoryPattern, WlasDatabase, WlasSequence, WlasTerm,
                    find_exact_matches, pivot_match, projected_subsequence)
from .oracle import brute_topk, enumerate_patterns
from .relevance import db_relevance, max_relevance, msr, ptr, sequence_relevance

__version__ = "0.1.0"
