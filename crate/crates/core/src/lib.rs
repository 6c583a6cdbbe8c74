//! Budgeted graph sampling with neighborhood-aware estimators.
//!
//! The crate is organised around an immutable [`Graph`] that is only ever
//! observed through [`access::Crawler`] queries. Each query returns a
//! [`NodeReply`] whose neighbor attributes are gated by a [`Visibility`]
//! level and charged to a [`CostLedger`]. Samplers (UNI, RW, FS, WRW) turn
//! queries into a [`SampleStream`]; estimators turn streams into label
//! densities.
//!
//! Monte Carlo work runs on rayon when the `parallel` feature is enabled
//! (the default) and falls back to a sequential loop otherwise. Results are
//! identical in both modes.

pub mod access;
pub mod datasets;
pub mod detection;
pub mod edge_est;
pub mod error;
pub mod eval;
pub mod graph;
pub mod node_est;
pub mod par;
pub mod sampling;
pub mod seed;
pub mod shortpath;

pub use access::{CostLedger, Crawler, NeighborInfo, NodeReply, UniCharging, Visibility};
pub use error::{Error, Result};
pub use graph::{EdgeLabel, EdgeLabeler, Graph, LabelTable, NodeId};
pub use node_est::DensityEstimate;
pub use edge_est::EdgeDensityEstimate;
pub use sampling::{PiHatRule, SampleStream, SamplingMethod};
