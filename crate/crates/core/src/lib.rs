//! Exact heights, Weil functions, distributive constants, Chow forms and the
//! explicit constants of the quantitative subspace theorem over Q.
//!
//! ```
//! use subspace::heights::{proj_height, ProjPoint};
//! use subspace::qarith::int;
//!
//! let p = ProjPoint::from_i64(&[1, 2, 4])?;
//! assert_eq!(proj_height(&p).mult(), &int(4));
//! # Ok::<(), subspace::Error>(())
//! ```
//!
//! The guide in `book/` walks through each module.

pub mod audit;
pub mod bounds;
pub mod chow;
pub mod error;
pub mod geometry;
pub mod groebner;
pub mod heights;
pub mod polyalg;
pub mod qarith;

pub use error::{Error, Result};
