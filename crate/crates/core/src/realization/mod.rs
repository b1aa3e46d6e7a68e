//! Vector realizations of orthologics and the built-in catalog.

mod catalog;
mod rays;
mod search;

use thiserror::Error;

pub use catalog::{catalog, catalog_names, CatalogEntry, CATALOG_NAMES};
pub use rays::{
    check_realization, contexts_from_rays, rays_from_components, Ray, RealizationReport,
};
pub use search::{penalty, search_realization, RealizationResult, SearchConfig, FOUND_RESIDUAL};

use crate::logic::LogicError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizationError {
    #[error("a ray needs at least 2 components, found {0}")]
    RayDimension(usize),
    #[error("the zero vector does not span a ray")]
    ZeroRay,
    #[error("ray components must not exceed 2^30 in magnitude")]
    ComponentTooLarge,
    #[error("ray {index} has dimension {found}, expected {expected}")]
    MixedDimensions {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("rays {first} and {second} are parallel")]
    ParallelRays { first: usize, second: usize },
    #[error("context arity {arity} is not possible in dimension {dim}")]
    BadArity { arity: usize, dim: usize },
    #[error("expected {expected} rays (one per atom), found {found}")]
    RayCount { expected: usize, found: usize },
    #[error("search dimension {dim} is smaller than the largest context ({arity} atoms)")]
    DimensionTooSmall { dim: usize, arity: usize },
    #[error(transparent)]
    Logic(#[from] LogicError),
}
