//! Generic strength and slice rank of forms, numerically.
//!
//! * [`series`]: exact truncated power series and the `P_k` / `P_inf` calculus.
//! * [`formulas`]: generic slice rank, join-dimension bounds, the objective
//!   `F`, and the differences `A..E`.
//! * [`oracle`]: join dimensions measured over `F_p` via Macaulay matrices.
//! * [`verifier`]: exhaustive sweeps of the inequalities, with counterexamples.
//! * [`cli`]: the `strength` command-line tool.

pub mod cli;
pub mod error;
pub mod formulas;
pub mod oracle;
pub mod series;
pub mod verifier;

pub use error::{Error, Int, Result};
pub use formulas::{AbcdeRecord, JoinProfile};
pub use series::TruncatedSeries;
