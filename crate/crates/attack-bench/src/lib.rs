//! Quantifies the robustness of networks under edge-attack strategies.
//!
//! The pipeline: load or generate a network ([`io`], [`gen`]), build an
//! attack plan for one of three strategies and run it to a performance
//! curve ([`attack`]), then score the curve against the 1 - r baseline
//! with the invulnerability index I_q ([`index`]). [`runner`] drives
//! network x strategy x replicate grids and writes CSV results, including
//! matched G(n, m) control networks.

#![forbid(unsafe_code)]

pub mod attack;
pub mod gen;
pub mod graph;
pub mod index;
pub mod io;
pub mod runner;

pub use attack::{AttackPlan, Measure, PerformanceCurve, Strategy};
pub use graph::{ComponentSummary, Graph};
pub use index::IndexReport;
pub use runner::ExperimentConfig;
