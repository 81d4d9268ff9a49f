//! Nerves of white regions and Euclidean circle packings realizing them.

mod nerve;
mod solve;

pub use nerve::{nerve_from_diagram, Nerve, NerveError, NerveKind};
pub use solve::{
    angle_at, solve_packing, solve_packing_with, Packing, PackingError, PackingOptions,
    DEFAULT_MAX_SWEEPS, DEFAULT_TOLERANCE,
};
