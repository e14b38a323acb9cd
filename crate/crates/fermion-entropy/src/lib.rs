pub mod asymptotics;
pub mod cli;
pub mod curve;
pub mod error;
pub mod exact_engine;
pub mod model;
pub mod quad;
pub mod rh_verify;
pub mod symbol;
pub mod theta;
