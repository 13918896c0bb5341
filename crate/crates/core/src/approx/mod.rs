//! Finite-horizon limit-computable approximations and their Ershov
//! classification by mind-change counting.

mod bound;
mod classify;
mod set;
mod table;

pub use bound::{BoundFunction, BoundKind};
pub use classify::{
    classify, limit_set, mind_changes, BoundCheck, Classification, LimitSet, MindChangeProfile,
};
pub use set::SetPrefix;
pub use table::ApproxTable;
