//! Exact asymptotic-density functionals: partial densities, window extrema,
//! the limsup-difference checker, Beatty sets and conditional-density
//! embeddings.

mod beatty;
mod embed;
mod limsup;
mod sequence;
mod series;

pub use beatty::beatty_set;
pub use embed::{audit_identity, embed, Embedded, Embedding, IdentityAudit};
pub use limsup::{check_limsup_difference, LimsupDifferenceReport};
pub use sequence::RationalSequence;
pub(crate) use series::extremum;
pub use series::{density_series, prefix_density, window_extrema, DensitySeries, WindowExtrema};
