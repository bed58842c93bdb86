//! Indirect measurement models in the Heisenberg picture and the
//! error–disturbance relations evaluated on them.
//!
//! - [`qalg`]: dense complex linear algebra, pure states, Haar sampling.
//! - [`model`]: system–probe measurement models, Heisenberg evolution, noise
//!   and disturbance statistics, and the canonical qubit/CNOT scenarios.
//! - [`bounds`]: Robertson, Ozawa, Branciard, the sum-of-squares relation with
//!   its witness strategies, the product relation, and per-model reports.

pub mod bounds;
pub mod model;
pub mod qalg;
