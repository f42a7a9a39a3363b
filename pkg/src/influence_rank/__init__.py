"""Influence ranking on directed fan graphs.

Edge ``i -> j`` means ``i`` is a fan of ``j``.  The package scores nodes with
geodesic, Markov and path-counting centralities, estimates empirical
influence from vote logs, and measures how well each centrality predicts it.
"""

__version__ = "0.1.0"

from .errors import (ConvergenceError, DomainError, GraphParseError, InfluenceRankError,
                     InputError, SeriesDivergenceError, UndefinedCorrelationError,
                     VoteLogError)
from .graph import (DirectedGraph, Ranking, ScoreVector, in_degree_centrality,
                    load_edge_list, out_degree_centrality, parse_edge_list, read_edge_list,
                    scores_to_ranking, write_edge_list)
from .geodesic import (betweenness_brandes, closeness_lin, closeness_sabidussi,
                       closeness_wasserman_faust, geodesic_summary, graph_centrality)
from .spectral import (AlphaConfig, AlphaSweepResult, SpectralSummary, alpha_centrality,
                       alpha_sweep, dominant_eigenpair, eigenvector_centrality, hubbell, katz,
                       normalized_alpha_centrality, pagerank, sender_rank, verify_theorems)
from .empirics import (FanVoteObservation, InfluenceEstimate, StoryRecord, WeibullFit,
                       chance_probability, count_fan_votes, empirical_influence, eval_weibull,
                       fit_weibull, hypergeometric_pmf, load_vote_log)
from .flowsim import CascadeConfig, CascadeResult, simulate_duplication_cascade, simulate_markov_mass
from .evaluate import ComparisonReport, pearson_rank_correlation, recall_top, sweep_correlation

