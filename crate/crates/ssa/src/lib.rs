pub mod cli;
pub mod dot;
pub mod json;
pub mod report;
