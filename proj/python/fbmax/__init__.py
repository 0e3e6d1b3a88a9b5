"""Bounds and Monte Carlo estimators for the expected maximum of fractional
Brownian motion on uniform grids."""

from ._fbmax import (  # noqa: F401
    BETA_BM,
    MH_UPPER_COEF,
    PICKANDS_COEF,
    BoundReport,
    ChatterjeeCheck,
    Condition,
    DeltaFBound,
    DeltaProxy,
    IidMaxEstimate,
    IncrementEstimate,
    McEstimate,
    MhDerivation,
    ValidityRegion,
    __version__,
    alpha_star,
    bm_max_mean,
    chatterjee_bound,
    cov_matrix,
    covariance,
    delta_f_exp,
    delta_f_generic,
    delta_f_pow,
    delta_lower,
    delta_proxy,
    delta_upper,
    delta_upper_lerch,
    delta_upper_old,
    empirical_chatterjee,
    estimate_increment,
    estimate_max_iid_normals,
    estimate_mn,
    fgn_autocovariance,
    gamma_k_bound,
    increment_variance,
    l_constant,
    mh_lower,
    mh_upper,
    mh_upper_derivation,
    mh_upper_derivation_at,
    mn_upper,
    pickands_from_mh,
    pickands_ours,
    pickands_shao,
    refinement_dtables,
    sample_path,
    sample_paths,
    validity_region,
)
