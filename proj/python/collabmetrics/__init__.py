"""Collaboration-aware bibliometrics: fractional/individual citation counting,
power-law scaling fits versus collaboration size, and a synthetic
collaboration model for validating the pipeline."""

from ._core import (
    BinnedCurve,
    BinSummary,
    Category,
    CitationIndex,
    Corpus,
    EntityProfile,
    EquilibriumSolution,
    ExponentDecomposition,
    LogNormalFit,
    PaperCounts,
    PaperRecord,
    PaperStats,
    ParseResult,
    ParseWarning,
    RejectedLine,
    ScalingFit,
    ScalingPoint,
    SynthCollaboration,
    SynthConfig,
    TheoreticalExponents,
    all_author_profiles,
    all_collaboration_profiles,
    author_profile,
    build_citation_index,
    classify_category,
    cli_run,
    collaboration_profile,
    decompose_exponents,
    fit_lognormal,
    fit_power_law,
    fractional_weight,
    generate,
    group_official_collaborations,
    h_index,
    load_citation_sidecar,
    log_bin,
    parse_corpus,
    profile_from_paper_stats,
    profiles_csv,
    render_curve_svg,
    render_histogram_svg,
    solve_equilibrium_s,
    synthetic_corpus_with_sidecar,
    synthetic_corpus_with_stubs,
    theoretical_exponents,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
