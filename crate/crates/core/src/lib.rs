//! Maps of tournaments: generation, exact distances, centrality profiles,
//! winner analysis, and planar embeddings for complete directed graphs.
//!
//! A tournament records one decisive game per pair of players. This crate
//! builds datasets of tournaments (statistical models, exhaustive
//! enumeration, sports and election ingestion), compares them with exact
//! graph edit distance or centrality-profile distances, places them on a
//! 2-D map by stress majorization, and analyzes winners under classical
//! tournament solutions. Every seeded operation is bit-reproducible: the
//! same parameters and seed always produce the same output.

pub mod canon;
pub mod centrality;
pub mod dataset;
pub mod distance;
pub mod embedding;
pub mod error;
pub mod generators;
pub mod ingest;
pub mod solutions;
pub mod tournament;

pub use canon::{canonical_code, is_isomorphic, CanonicalCode};
pub use dataset::{Dataset, DatasetEntry};
pub use error::{Error, Result};
pub use tournament::{ord_rps, ordered, rps, rps_ord, Tournament};
