//! Exact certification of the elimination argument showing that hypersurfaces of
//! `Q^3_eps x R` with three distinct constant principal curvatures have constant
//! angle function, plus numeric verification of the model hypersurfaces.

pub mod algebra;
pub mod elimination;
pub mod geometry;
