pub mod covering;
pub mod decompose;
pub mod error;
pub mod group;
pub mod json;
pub mod oracle;
pub mod pwaffine;
pub mod script;
pub mod setalg;

pub use error::{Error, Result};
