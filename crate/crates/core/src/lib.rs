//! Combinatorics of the small resolution of the space of quasimaps into the
//! flag variety of `SL_n` by the space of quasiflags.
//!
//! * [`roots`]: type `A_{n-1}` coroots and weights.
//! * [`partition`]: coroot partitions, vector partitions and the
//!   `kappa/nu/mu` triangles.
//! * [`poly`]: the Lusztig `t`-analogue of the Kostant partition function.
//! * [`strata`]: strata dimensions, the smallness inequality and IC stalks.
//! * [`oracle`]: brute-force `F_q` point counts of simple fibers.
//! * [`cli`]: the command-line front end.

pub mod cli;
pub mod error;
pub mod limits;
pub mod oracle;
pub mod partition;
pub mod poly;
pub mod roots;
pub mod strata;

pub use error::{Error, Result};
pub use limits::Limits;
pub use partition::{
    enumerate_gamma_partitions, enumerate_kappa, enumerate_mu, kappa_to_mu, kappa_to_nu,
    mu_to_kappa, nu_to_mu, GammaPartition, KappaPartition, TriangleArray, TriangleKind,
};
pub use poly::{fiber_poincare, kostant_poly, kostant_poly_via_strata, IntPolynomial};
pub use roots::{GammaVec, Interval, Rank};
pub use strata::{
    enumerate_strata, ic_stalk_table, moduli_dim, parity_check, smallness_report, ICStalkTable,
    SmallnessReport, StratumRecord, Verdict,
};
