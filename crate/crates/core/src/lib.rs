//! Partial covering on graphs: partial vertex cover with group profit
//! thresholds, partial edge cover with per-group vertex requirements, and
//! the supporting LP, matching and brute-force machinery.

pub mod hardness;
pub mod io;
pub mod lp;
pub mod model;
pub mod number;
pub mod matching;
pub mod two_approx;
pub mod bicriteria;
pub mod pec;
pub mod oracle;
pub mod report;
pub mod cli;
