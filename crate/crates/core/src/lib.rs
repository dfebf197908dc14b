//! Double-power nonlinearities `f(u) = -ω·u + u^p - u^q`: existence and
//! uniqueness thresholds, triple-power sign classification, the tilde
//! transform, and a radial shooting solver for ground states of
//! `Δu + f(u) = 0`.

pub mod cli;
pub mod nonlinearity;
pub mod ode;
pub mod roots;
pub mod shooting;
