//! Fully augmented links on surfaces: diagram validation and component
//! resolution, embeddings, cusp tilings, volume bounds and circle packings.
//!
//! ```
//! use falkit::diagram::{resolve_components, samples};
//! use falkit::volume::lower_bound;
//!
//! let d = samples::borromean();
//! let link = resolve_components(&d).unwrap();
//! assert_eq!(link.components.len(), 3);
//! assert!((lower_bound(&d).unwrap() - 7.3277248).abs() < 1e-6);
//! ```

pub mod cusp;
pub mod diagram;
pub mod embedding;
pub mod format;
pub mod packing;
pub mod report;
pub mod svg;
pub mod volume;
