//! Forced superlinear oscillators x'' + a(x) x^{2n+1} + p(t) x^{2m+1} = 0:
//! action-angle charts for the unforced core, event-driven integration in
//! both coordinate systems, construction of a continuous positive 1-periodic
//! forcing whose action-pumping cycles drive a solution to finite-time
//! escape, and empirical verification of the scaling laws plus the
//! small-amplitude stability picture near the origin.

pub mod action_angle;
pub mod builder;
pub mod cheb;
pub mod error;
pub mod escape;
pub mod fit;
pub mod flow;
pub mod forcing;
pub mod interp;
pub mod ode;
pub mod params;
pub mod potential;
pub mod quad;
pub mod real;
pub mod stability;

pub use error::{Error, Result};
pub use params::EquationParams;
pub use real::Real;

// Concrete f64 aliases; the generic types live in their modules.
// pub type Potential = potential::PotentialModel<f64>;
// pub type Chart = action_angle::ActionAngleChart<f64>;
// pub type Profile = forcing::ForcingProfile<f64>;
// pub type Segment = forcing::Segment<f64>;
// pub type AngleActionState = flow::AngleActionState<f64>;
// pub type PhaseState = flow::PhaseState<f64>;
// pub type IntegratorConfig = flow::IntegratorConfig<f64>;
// pub type ScheduleParams = builder::ScheduleParams<f64>;
