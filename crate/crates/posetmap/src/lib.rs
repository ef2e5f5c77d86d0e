//! Exact computation in the monoid of monotone injective partial selfmaps
//! of `N^n` (componentwise order) with cofinite domain and image.

pub mod algebra;
pub mod chains;
pub mod diffcon;
pub mod doc;
pub mod error;
pub mod oracle;
pub mod perm;
pub mod pmap;
pub mod point;
pub mod region;
pub mod rule;
