//! Exact integer linear algebra: Smith and Hermite forms, cellular
//! cohomology, induced maps and direct-limit analysis.

mod cohomology;
mod hermite;
mod limit;
mod matrix;
mod smith;

pub use cohomology::{
    cohomology, cohomology_in_degree, induced_cohomology_map, AbelianGroupPresentation, AlgebraError, Cohomology,
    GroupInvariants, GroupMap,
};
pub use hermite::{hermite_normal_form, HermiteForm};
pub use limit::{
    analyze_tower, integer_eigenvalues, Classification, DirectLimitPresentation, LimitError, TowerLevel,
    DEFAULT_STAB_WINDOW,
};
pub use matrix::IntMatrix;
pub use smith::{smith_normal_form, SmithForm};
