//! Linear coded-caching schemes over small prime fields.
//!
//! A scheme places N documents of F symbols each into K user caches
//! and answers demand vectors with broadcast subspaces; user j decodes
//! document d_j exactly when W_{d_j} ⊆ Z_j + X_d. This module carries
//! the scheme model and verifier, a text format, the seven built-in
//! schemes, symmetrization, cache decomposition into pure scheme
//! types, ratio extraction, rate bound audits, and a minimal-broadcast
//! search. All rate arithmetic is exact rational.

mod analysis;
mod format;
mod scheme;

pub use analysis::{
    analyze_scheme, bound_report, canonical_split, discoord_audit, is_separated, ratios,
    tian_rank_audit, z_decompose, z_decompose_in, BoundRow, DiscoordAudit, DocSplit, RatioReport,
    SchemeAnalysis, TianRankAudit, ZDecomposition,
};
pub use format::{parse_family, parse_scheme, serialize_family, serialize_scheme};
pub use scheme::{
    builtin, search_min_x, CachingScheme, Demand, Rational, RateReport, SearchMode, VerifyFailure,
    VerifyReport, BUILTIN_NAMES, SEARCH_ELEMENT_LIMIT,
};
