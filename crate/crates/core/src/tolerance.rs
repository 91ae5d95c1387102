//! Tolerance table shared by every check and report.

/// Version tag written into run manifests; bump when any value changes.
pub const TABLE_VERSION: &str = "tol-1";

/// Comparisons where both sides come from closed forms.
pub const CLOSED_FORM: f64 = 1e-9;

/// Comparisons where one side comes from the convex-roof optimizer.
pub const OPTIMIZER: f64 = 5e-3;

/// Residual threshold above which the classifier reports genuine
/// tripartite entanglement.
pub const CLASSIFIER: f64 = 1e-7;

/// Reduced-state purity `Tr ρ² > 1 - PURITY` counts as a pure reduction.
pub const PURITY: f64 = 1e-8;

/// Strictness flag for reversed (α ≤ 0) inequalities.
pub const STRICT: f64 = 1e-12;

/// Pairwise concurrences below this are dropped from α ≤ 0 sums.
pub const ZERO_CONCURRENCE: f64 = 1e-9;

/// Negative eigenvalues above `-PSD_CLAMP` are treated as zero.
pub const PSD_CLAMP: f64 = 1e-10;

/// Internal normalization tolerance for states and density matrices.
pub const NORM: f64 = 1e-10;

/// Normalization tolerance for hand-written state files.
pub const FILE_NORM: f64 = 1e-6;

/// Slack allowed when clamping arguments of `H` and `f` into `[0, 1]`.
pub const DOMAIN: f64 = 1e-12;

/// Rank cut-off for density matrix eigenvalues.
pub const RANK: f64 = 1e-10;
