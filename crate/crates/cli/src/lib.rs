//! Front end for the distribution calculus: an expression DSL, elaboration
//! into core values, command dispatch, and report rendering.

pub mod commands;
pub mod elaborate;
pub mod error;
pub mod expr;
pub mod render;
