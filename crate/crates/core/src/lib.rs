//! Simulation toolkit for amplify–learn search: dense states, amplitude
//! amplification, circuit learning, resource ledgers, no-signaling checks
//! and sample-complexity bounds.

pub mod complexity;
pub mod error;
pub mod learner;
pub mod nosignal;
pub mod protocol;
pub mod qcore;
pub mod search;

pub use error::{Error, Result};
pub use learner::{AnsatzLayout, AnsatzParams, LearnReport, LearnerConfig, LearnerMode, Shots};
pub use qcore::{DensityMatrix, Ensemble, PureState, C64};
pub use search::{Oracle, SearchTrajectory};
