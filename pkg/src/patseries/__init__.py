"""Pattern-based decomposition and online estimation of time series."""

from .base import EstimationReport, OnlineForecaster
from .baselines import LinearForecaster, PsfForecaster, lp_run_online, psf_run_online
from .bench import BenchConfig, BenchResult, mse, persistence_mse, run_bench
from .data import downsample, iid_gaussian, load_csv, mackey_glass, random_walk, save_csv
from .decomposition import (
    BetaNormalParams,
    PatternDistribution,
    beta_fn,
    beta_normal_pdf,
    dynamic_pattern_mixture,
    dynamic_pattern_prob_recursive,
    enumerate_exact,
    exact_pattern_mixture,
    mixture_pdf_curve,
    psi,
    psi_weighted,
    static_pattern_pdf,
    static_pattern_prob,
    up_probability,
)
from .patterns import PatternBits, all_patterns, extract_dynamic, extract_static, pattern_index
from .tree import EstimateDecision, PatternTree, PatternTreeForecaster, run_online

__version__ = "0.1.0"

__all__ = [
    "BenchConfig",
    "BenchResult",
    "BetaNormalParams",
    "EstimateDecision",
    "EstimationReport",
    "LinearForecaster",
    "OnlineForecaster",
    "PatternBits",
    "PatternDistribution",
    "PatternTree",
    "PatternTreeForecaster",
    "PsfForecaster",
    "all_patterns",
    "beta_fn",
    "beta_normal_pdf",
    "downsample",
    "dynamic_pattern_mixture",
    "dynamic_pattern_prob_recursive",
    "enumerate_exact",
    "exact_pattern_mixture",
    "extract_dynamic",
    "extract_static",
    "iid_gaussian",
    "load_csv",
    "lp_run_online",
    "mackey_glass",
    "mixture_pdf_curve",
    "mse",
    "pattern_index",
    "persistence_mse",
    "psf_run_online",
    "psi",
    "psi_weighted",
    "random_walk",
    "run_bench",
    "run_online",
    "save_csv",
    "static_pattern_pdf",
    "static_pattern_prob",
    "up_probability",
]
