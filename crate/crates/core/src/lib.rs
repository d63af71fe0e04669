pub mod baselines;
pub mod corpus;
pub mod error;
pub mod fcm;
pub mod fixture;
pub mod fpgrowth;
pub mod metrics;
pub mod pipeline;
pub mod porter;
pub mod text;

pub use error::{Error, Result};
