//! Compiles every code listing in `book/src` as a doctest so the guide stays
//! in sync with the library. One module per chapter keeps failures traceable.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/streams.md")]
pub mod streams {}
#[doc = include_str!("../../../book/src/indices.md")]
pub mod indices {}
#[doc = include_str!("../../../book/src/edgebank.md")]
pub mod edgebank {}
#[doc = include_str!("../../../book/src/negative-sampling.md")]
pub mod negative_sampling {}
#[doc = include_str!("../../../book/src/metrics.md")]
pub mod metrics {}
#[doc = include_str!("../../../book/src/plots.md")]
pub mod plots {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
