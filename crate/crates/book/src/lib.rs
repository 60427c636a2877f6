//! Every chapter of the guide in `book/src` is included here as module
//! documentation, so `cargo test --doc` compiles and runs its code blocks
//! against the current library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/places-and-heights.md")]
pub mod places_and_heights {}
#[doc = include_str!("../../../book/src/weil-functions.md")]
pub mod weil_functions {}
#[doc = include_str!("../../../book/src/groebner.md")]
pub mod groebner {}
#[doc = include_str!("../../../book/src/distributive-constants.md")]
pub mod distributive_constants {}
#[doc = include_str!("../../../book/src/chow.md")]
pub mod chow {}
#[doc = include_str!("../../../book/src/constants-and-audits.md")]
pub mod constants_and_audits {}
