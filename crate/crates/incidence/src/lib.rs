//! Exact-arithmetic verification of linear incidence theorems via bicolored
//! quadrilateral tilings of closed oriented surfaces.

pub mod io;
pub mod linalg;
pub mod projective;
pub mod mobius;
pub mod polygons;
pub mod rng;
pub mod scalar;
pub mod surface;
pub mod verifier;
